#include "ntangled/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ntangled {

CMatrix CMatrix::identity(int d) {
    CMatrix m(d);
    for (int i = 0; i < d; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) {
        throw std::invalid_argument("matmul: dimension mismatch");
    }
    CMatrix out(x.dim);
    for (int r = 0; r < x.dim; ++r) {
        for (int k = 0; k < x.dim; ++k) {
            cdouble v = x.at(r, k);
            if (v == cdouble{0.0, 0.0}) {
                continue;
            }
            for (int c = 0; c < x.dim; ++c) {
                out.at(r, c) += v * y.at(k, c);
            }
        }
    }
    return out;
}

CMatrix adjoint(const CMatrix& x) {
    CMatrix out(x.dim);
    for (int r = 0; r < x.dim; ++r) {
        for (int c = 0; c < x.dim; ++c) {
            out.at(c, r) = std::conj(x.at(r, c));
        }
    }
    return out;
}

CMatrix conjugate(const CMatrix& x) {
    CMatrix out(x.dim);
    for (size_t i = 0; i < x.a.size(); ++i) {
        out.a[i] = std::conj(x.a[i]);
    }
    return out;
}

cdouble trace(const CMatrix& x) {
    cdouble t = 0.0;
    for (int i = 0; i < x.dim; ++i) {
        t += x.at(i, i);
    }
    return t;
}

HermitianEig hermitian_eig(CMatrix a) {
    const int n = a.dim;
    CMatrix v = CMatrix::identity(n);

    auto off_diag_norm = [&]() {
        double s = 0.0;
        for (int r = 0; r < n; ++r) {
            for (int c = r + 1; c < n; ++c) {
                s += std::norm(a.at(r, c));
            }
        }
        return s;
    };

    const double tol = 1e-30;
    for (int sweep = 0; sweep < 100 && off_diag_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cdouble apq = a.at(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) {
                    continue;
                }
                cdouble phase = apq / mag;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cdouble sp = s * phase;

                // rows/cols p and q: A <- J^dagger A J with
                // J[p][p]=c, J[p][q]=sp, J[q][p]=-conj(sp), J[q][q]=c
                for (int k = 0; k < n; ++k) {
                    cdouble akp = a.at(k, p);
                    cdouble akq = a.at(k, q);
                    a.at(k, p) = c * akp - std::conj(sp) * akq;
                    a.at(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    cdouble apk = a.at(p, k);
                    cdouble aqk = a.at(q, k);
                    a.at(p, k) = c * apk - sp * aqk;
                    a.at(q, k) = std::conj(sp) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    cdouble vkp = v.at(k, p);
                    cdouble vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - std::conj(sp) * vkq;
                    v.at(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    HermitianEig out;
    out.values.resize(n);
    out.vectors = CMatrix(n);
    for (int c = 0; c < n; ++c) {
        out.values[c] = a.at(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) {
            out.vectors.at(r, c) = v.at(r, order[c]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
    return hermitian_eig(a).values;
}

CMatrix psd_sqrt(const CMatrix& a) {
    HermitianEig eig = hermitian_eig(a);
    const int n = a.dim;
    CMatrix out(n);
    for (int k = 0; k < n; ++k) {
        double lambda = std::max(0.0, eig.values[k]);
        double root = std::sqrt(lambda);
        for (int r = 0; r < n; ++r) {
            cdouble vr = eig.vectors.at(r, k);
            for (int c = 0; c < n; ++c) {
                out.at(r, c) += root * vr * std::conj(eig.vectors.at(c, k));
            }
        }
    }
    return out;
}

} // namespace ntangled
