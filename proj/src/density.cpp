#include "ntangled/density.hpp"

#include <bit>
#include <cstring>
#include <cmath>
#include <stdexcept>

namespace ntangled {

uint32_t subset_mask(const std::vector<int>& subset, int n_qubits) {
    uint32_t mask = 0;
    for (int q : subset) {
        if (q < 0 || q >= n_qubits) {
            throw std::out_of_range("subset qubit index out of range");
        }
        mask |= uint32_t{1} << q;
    }
    return mask;
}

namespace {

#if defined(__GNUC__) && defined(__SIZEOF_INT128__)
#define NTANGLED_HAVE_V4D 1
using v4d = double __attribute__((vector_size(32)));

inline v4d v4d_load(const double* p) {
    v4d v;
    std::memcpy(&v, p, sizeof(v));
    return v;
}

inline double v4d_sum(v4d v) {
    return (v[0] + v[1]) + (v[2] + v[3]);
}
#endif

// Conjugate inner product sum_c conj(b[c]) * a[c] over split re/im layout,
// with per-lane partial accumulators so the reduction vectorizes.
inline void cdot_split(const double* ar, const double* ai, const double* br, const double* bi,
                       uint64_t len, double& out_re, double& out_im) {
    double re_acc = 0.0, im_acc = 0.0;
    uint64_t c = 0;
#ifdef NTANGLED_HAVE_V4D
    if (len >= 4) {
        v4d re = {0, 0, 0, 0}, im = {0, 0, 0, 0};
        for (; c + 4 <= len; c += 4) {
            v4d x = v4d_load(ar + c), y = v4d_load(ai + c);
            v4d u = v4d_load(br + c), v = v4d_load(bi + c);
            re += x * u + y * v;
            im += y * u - x * v;
        }
        re_acc = v4d_sum(re);
        im_acc = v4d_sum(im);
    }
#endif
    for (; c < len; ++c) {
        re_acc += ar[c] * br[c] + ai[c] * bi[c];
        im_acc += ai[c] * br[c] - ar[c] * bi[c];
    }
    out_re = re_acc;
    out_im = im_acc;
}

inline uint64_t amp_bit_mask(uint32_t qubit_mask, int n) {
    uint64_t amp_mask = 0;
    for (int q = 0; q < n; ++q) {
        if (qubit_mask & (uint32_t{1} << q)) {
            amp_mask |= uint64_t{1} << (n - 1 - q);
        }
    }
    return amp_mask;
}

} // namespace

double subset_purity_mask(const StateVector& s, uint32_t qubit_mask) {
    const int n = s.n_qubits;
    if (qubit_mask >> n) {
        throw std::out_of_range("subset qubit index out of range");
    }
    uint64_t amp_mask = amp_bit_mask(qubit_mask, n);
    const uint64_t full = s.dim() - 1;
    int k = std::popcount(amp_mask);
    if (k == 0 || k == n) {
        return 1.0; // rho_empty := 1; the full set mirrors it for pure states
    }
    if (2 * k > n) { // reduce over the smaller side, Tr[rho_a^2] = Tr[rho_a^c^2]
        amp_mask = full ^ amp_mask;
        k = n - k;
    }
    const uint64_t comp_mask = full ^ amp_mask;
    const uint64_t rows = uint64_t{1} << k;
    const uint64_t cols = uint64_t{1} << (n - k);

    thread_local std::vector<double> re_buf, im_buf;
    re_buf.resize(rows * cols);
    im_buf.resize(rows * cols);

    // Fill M[r][c] = amps[scatter(r, amp_mask) | scatter(c, comp_mask)] by
    // enumerating submasks in increasing order.
    uint64_t ro = 0;
    for (uint64_t r = 0; r < rows; ++r) {
        double* rr = re_buf.data() + r * cols;
        double* ri = im_buf.data() + r * cols;
        uint64_t co = 0;
        for (uint64_t c = 0; c < cols; ++c) {
            const cdouble a = s.amps[ro | co];
            rr[c] = a.real();
            ri[c] = a.imag();
            co = (co - comp_mask) & comp_mask;
        }
        ro = (ro - amp_mask) & amp_mask;
    }

    // Tr[(M M^dagger)^2] = sum_{r,s} |<M_r, M_s>|^2, using Hermitian symmetry.
    // Four b-rows per pass so the a-row is loaded once per four inner products.
    double total = 0.0;
    for (uint64_t r = 0; r < rows; ++r) {
        const double* ar = re_buf.data() + r * cols;
        const double* ai = im_buf.data() + r * cols;
        double gre, gim;
        cdot_split(ar, ai, ar, ai, cols, gre, gim);
        total += gre * gre;
        uint64_t t = r + 1;
#ifdef NTANGLED_HAVE_V4D
        for (; t + 4 <= rows && cols >= 4; t += 4) {
            const double* b0r = re_buf.data() + t * cols;
            const double* b0i = im_buf.data() + t * cols;
            const double* b1r = b0r + cols;
            const double* b1i = b0i + cols;
            const double* b2r = b1r + cols;
            const double* b2i = b1i + cols;
            const double* b3r = b2r + cols;
            const double* b3i = b2i + cols;
            v4d re0 = {0, 0, 0, 0}, im0 = re0, re1 = re0, im1 = re0;
            v4d re2 = re0, im2 = re0, re3 = re0, im3 = re0;
            for (uint64_t c = 0; c < cols; c += 4) {
                const v4d x = v4d_load(ar + c), y = v4d_load(ai + c);
                v4d u = v4d_load(b0r + c), v = v4d_load(b0i + c);
                re0 += x * u + y * v;
                im0 += y * u - x * v;
                u = v4d_load(b1r + c);
                v = v4d_load(b1i + c);
                re1 += x * u + y * v;
                im1 += y * u - x * v;
                u = v4d_load(b2r + c);
                v = v4d_load(b2i + c);
                re2 += x * u + y * v;
                im2 += y * u - x * v;
                u = v4d_load(b3r + c);
                v = v4d_load(b3i + c);
                re3 += x * u + y * v;
                im3 += y * u - x * v;
            }
            const double g0r = v4d_sum(re0), g0i = v4d_sum(im0);
            const double g1r = v4d_sum(re1), g1i = v4d_sum(im1);
            const double g2r = v4d_sum(re2), g2i = v4d_sum(im2);
            const double g3r = v4d_sum(re3), g3i = v4d_sum(im3);
            total += 2.0 * (g0r * g0r + g0i * g0i + g1r * g1r + g1i * g1i +
                            g2r * g2r + g2i * g2i + g3r * g3r + g3i * g3i);
        }
#endif
        for (; t < rows; ++t) {
            const double* br = re_buf.data() + t * cols;
            const double* bi = im_buf.data() + t * cols;
            cdot_split(ar, ai, br, bi, cols, gre, gim);
            total += 2.0 * (gre * gre + gim * gim);
        }
    }
    return total;
}

double subset_purity(const StateVector& s, const std::vector<int>& subset) {
    return subset_purity_mask(s, subset_mask(subset, s.n_qubits));
}

DensityMatrix reduced_density(const StateVector& s, const std::vector<int>& subset) {
    const int n = s.n_qubits;
    const uint32_t qubit_mask = subset_mask(subset, n);
    const int k = std::popcount(qubit_mask);
    if (static_cast<size_t>(k) != subset.size()) {
        throw std::invalid_argument("reduced_density: duplicate subset indices");
    }
    const uint64_t amp_mask = amp_bit_mask(qubit_mask, n);
    const uint64_t comp_mask = (s.dim() - 1) ^ amp_mask;
    const uint64_t rows = uint64_t{1} << k;
    const uint64_t cols = s.dim() >> k;

    std::vector<uint64_t> row_off(rows), col_off(cols);
    uint64_t m = 0;
    for (uint64_t r = 0; r < rows; ++r) {
        row_off[r] = m;
        m = (m - amp_mask) & amp_mask;
    }
    m = 0;
    for (uint64_t c = 0; c < cols; ++c) {
        col_off[c] = m;
        m = (m - comp_mask) & comp_mask;
    }

    DensityMatrix rho;
    rho.n_qubits = k;
    rho.m = CMatrix(static_cast<int>(rows));
    for (uint64_t r = 0; r < rows; ++r) {
        for (uint64_t t = 0; t < rows; ++t) {
            cdouble acc = 0.0;
            for (uint64_t c = 0; c < cols; ++c) {
                acc += s.amps[row_off[r] | col_off[c]] * std::conj(s.amps[row_off[t] | col_off[c]]);
            }
            rho.m.at(static_cast<int>(r), static_cast<int>(t)) = acc;
        }
    }
    return rho;
}

double purity(const DensityMatrix& rho) {
    cdouble acc = 0.0;
    const int d = rho.dim();
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            acc += rho.m.at(r, c) * rho.m.at(c, r);
        }
    }
    return acc.real();
}

bool is_valid_density(const DensityMatrix& rho, double tol) {
    const int d = rho.dim();
    cdouble tr = trace(rho.m);
    if (std::abs(tr - cdouble{1.0, 0.0}) > tol) {
        return false;
    }
    for (int r = 0; r < d; ++r) {
        for (int c = r; c < d; ++c) {
            if (std::abs(rho.m.at(r, c) - std::conj(rho.m.at(c, r))) > tol) {
                return false;
            }
        }
    }
    for (double lambda : hermitian_eigenvalues(rho.m)) {
        if (lambda < -tol) {
            return false;
        }
    }
    return true;
}

} // namespace ntangled
