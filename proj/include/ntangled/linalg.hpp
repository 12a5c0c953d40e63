#pragma once

#include <complex>
#include <vector>

namespace ntangled {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major. Only used for small problems
/// (reduced states, gate matrices, test oracles); state vectors never touch it.
struct CMatrix {
    int dim = 0;
    std::vector<cdouble> a;

    CMatrix() = default;
    explicit CMatrix(int d) : dim(d), a(static_cast<size_t>(d) * d) {}

    cdouble& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const cdouble& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

    static CMatrix identity(int d);
};

CMatrix matmul(const CMatrix& x, const CMatrix& y);
CMatrix adjoint(const CMatrix& x);
CMatrix conjugate(const CMatrix& x);
cdouble trace(const CMatrix& x);

struct HermitianEig {
    std::vector<double> values; // ascending
    CMatrix vectors;            // columns are eigenvectors
};

/// Cyclic Jacobi for complex Hermitian matrices. Plenty for the dims used
/// here (<= 64 in tests, 4 in the concurrence path).
HermitianEig hermitian_eig(CMatrix a);

std::vector<double> hermitian_eigenvalues(const CMatrix& a);

/// Matrix square root of a PSD Hermitian matrix; small negative eigenvalues
/// (roundoff) are clipped to zero.
CMatrix psd_sqrt(const CMatrix& a);

} // namespace ntangled
