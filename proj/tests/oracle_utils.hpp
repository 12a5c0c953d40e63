// Independent reference implementations used only by tests. Everything here
// recomputes results from first principles (dense matrices, explicit index
// loops, its own gate matrices) so that agreement with the library is a real
// cross-check rather than a tautology.
#pragma once

#include "ntangled/gates.hpp"
#include "ntangled/linalg.hpp"
#include "ntangled/rng.hpp"
#include "ntangled/state.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

using ntangled::cdouble;
using ntangled::CMatrix;
using ntangled::Circuit;
using ntangled::Gate;
using ntangled::GateKind;
using ntangled::StateVector;

// Local gate matrices written out from the stated conventions, on purpose not
// calling ntangled::single_qubit_matrix.
inline CMatrix local_gate_matrix(const Gate& g) {
    auto I = cdouble{0.0, 1.0};
    switch (g.kind) {
        case GateKind::RY: {
            CMatrix m(2);
            double c = std::cos(g.p0 / 2), s = std::sin(g.p0 / 2);
            m.at(0, 0) = c;
            m.at(0, 1) = -s;
            m.at(1, 0) = s;
            m.at(1, 1) = c;
            return m;
        }
        case GateKind::RZ: {
            CMatrix m(2);
            m.at(0, 0) = std::exp(-I * (g.p0 / 2));
            m.at(1, 1) = std::exp(I * (g.p0 / 2));
            return m;
        }
        case GateKind::U3: {
            // e^{i(b+c)/2} Rz(b) Ry(a) Rz(c)
            Gate rzb = Gate::rz(0, g.p1);
            Gate rya = Gate::ry(0, g.p0);
            Gate rzc = Gate::rz(0, g.p2);
            CMatrix m = ntangled::matmul(ntangled::matmul(local_gate_matrix(rzb), local_gate_matrix(rya)),
                                         local_gate_matrix(rzc));
            cdouble phase = std::exp(I * ((g.p1 + g.p2) / 2));
            for (auto& v : m.a) {
                v *= phase;
            }
            return m;
        }
        case GateKind::H: {
            CMatrix m(2);
            double r = 1.0 / std::sqrt(2.0);
            m.at(0, 0) = r;
            m.at(0, 1) = r;
            m.at(1, 0) = r;
            m.at(1, 1) = -r;
            return m;
        }
        case GateKind::CNOT: {
            CMatrix m(4); // basis |control target>
            m.at(0, 0) = 1;
            m.at(1, 1) = 1;
            m.at(2, 3) = 1;
            m.at(3, 2) = 1;
            return m;
        }
        case GateKind::CZ: {
            CMatrix m(4);
            m.at(0, 0) = 1;
            m.at(1, 1) = 1;
            m.at(2, 2) = 1;
            m.at(3, 3) = -1;
            return m;
        }
        case GateKind::CSWAP: {
            CMatrix m(8); // basis |control t0 t1>
            for (int x = 0; x < 8; ++x) {
                int y = x;
                if ((x & 4) != 0) { // control set: swap t0, t1 bits
                    int b0 = (x >> 1) & 1, b1 = x & 1;
                    y = (x & 4) | (b1 << 1) | b0;
                }
                m.at(y, x) = 1;
            }
            return m;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

// Full 2^n x 2^n unitary of one gate, by explicit basis-index bookkeeping.
inline CMatrix full_gate_matrix(const Gate& g, int n) {
    const int arity = g.arity();
    const int qs[3] = {g.q0, g.q1, g.q2};
    CMatrix local = local_gate_matrix(g);
    const uint64_t dim = uint64_t{1} << n;
    CMatrix full(static_cast<int>(dim));
    for (uint64_t x = 0; x < dim; ++x) {
        int lx = 0;
        for (int i = 0; i < arity; ++i) {
            lx = (lx << 1) | static_cast<int>((x >> (n - 1 - qs[i])) & 1);
        }
        for (int ly = 0; ly < local.dim; ++ly) {
            cdouble v = local.at(ly, lx);
            if (v == cdouble{0.0, 0.0}) {
                continue;
            }
            uint64_t y = x;
            for (int i = 0; i < arity; ++i) {
                uint64_t bit = (static_cast<uint64_t>(ly) >> (arity - 1 - i)) & 1;
                uint64_t pos = uint64_t{1} << (n - 1 - qs[i]);
                y = (y & ~pos) | (bit ? pos : 0);
            }
            full.at(static_cast<int>(y), static_cast<int>(x)) += v;
        }
    }
    return full;
}

inline CMatrix full_circuit_matrix(const Circuit& c) {
    CMatrix u = CMatrix::identity(1 << c.n_qubits);
    for (const Gate& g : c.ops) {
        u = ntangled::matmul(full_gate_matrix(g, c.n_qubits), u);
    }
    return u;
}

inline StateVector matrix_apply(const CMatrix& u, const StateVector& s) {
    StateVector out = s;
    for (int r = 0; r < u.dim; ++r) {
        cdouble acc = 0.0;
        for (int c = 0; c < u.dim; ++c) {
            acc += u.at(r, c) * s.amps[c];
        }
        out.amps[r] = acc;
    }
    return out;
}

// Brute-force reduced density matrix straight from the definition. Subset
// qubits sorted ascending; the smallest index is the most significant bit of
// the reduced index.
inline CMatrix brute_reduced_density(const StateVector& s, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    const int n = s.n_qubits;
    const int k = static_cast<int>(subset.size());
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (std::find(subset.begin(), subset.end(), q) == subset.end()) {
            rest.push_back(q);
        }
    }
    auto extract = [&](uint64_t x, const std::vector<int>& qubits) {
        uint64_t v = 0;
        for (int q : qubits) {
            v = (v << 1) | ((x >> (n - 1 - q)) & 1);
        }
        return v;
    };
    CMatrix rho(1 << k);
    const uint64_t dim = s.dim();
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t y = 0; y < dim; ++y) {
            if (extract(x, rest) != extract(y, rest)) {
                continue;
            }
            rho.at(static_cast<int>(extract(x, subset)), static_cast<int>(extract(y, subset))) +=
                s.amps[x] * std::conj(s.amps[y]);
        }
    }
    return rho;
}

inline double brute_purity(const CMatrix& rho) {
    cdouble acc = 0.0;
    for (int r = 0; r < rho.dim; ++r) {
        for (int c = 0; c < rho.dim; ++c) {
            acc += rho.at(r, c) * rho.at(c, r);
        }
    }
    return acc.real();
}

inline double brute_subset_purity(const StateVector& s, const std::vector<int>& subset) {
    if (subset.empty()) {
        return 1.0;
    }
    return brute_purity(brute_reduced_density(s, subset));
}

// CE straight from the definition: every one of the 2^n subsets, each via the
// dense partial trace above.
inline double brute_ce(const StateVector& s) {
    const int n = s.n_qubits;
    double total = 0.0;
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
        std::vector<int> subset;
        for (int q = 0; q < n; ++q) {
            if (mask & (uint32_t{1} << q)) {
                subset.push_back(q);
            }
        }
        total += brute_subset_purity(s, subset);
    }
    return 1.0 - total / std::exp2(n);
}

// Characteristic polynomial by Faddeev-LeVerrier, roots by Durand-Kerner:
// an eigenvalue oracle for small non-Hermitian matrices (rho * rho_tilde).
inline std::vector<cdouble> dense_eigenvalues(const CMatrix& a) {
    const int n = a.dim;
    // c[0] x^n + c[1] x^(n-1) + ... + c[n], c[0] = 1
    std::vector<cdouble> c(n + 1);
    c[0] = 1.0;
    CMatrix m = CMatrix::identity(n); // M_0
    for (int k = 1; k <= n; ++k) {
        m = ntangled::matmul(a, m);
        cdouble ck = -ntangled::trace(m) / static_cast<double>(k);
        c[k] = ck;
        for (int i = 0; i < n; ++i) {
            m.at(i, i) += ck;
        }
    }
    auto eval = [&](cdouble x) {
        cdouble acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            acc = acc * x + c[k];
        }
        return acc;
    };
    std::vector<cdouble> roots(n);
    for (int i = 0; i < n; ++i) {
        roots[i] = std::pow(cdouble{0.4, 0.9}, i + 1); // standard distinct starters
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            cdouble denom = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    denom *= roots[i] - roots[j];
                }
            }
            cdouble step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved += std::abs(step);
        }
        if (moved < 1e-14) {
            break;
        }
    }
    return roots;
}

// --- named states -----------------------------------------------------------

inline StateVector ghz(int n) {
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(uint64_t{1} << n, cdouble{0.0, 0.0});
    s.amps.front() = 1.0 / std::sqrt(2.0);
    s.amps.back() = 1.0 / std::sqrt(2.0);
    return s;
}

inline StateVector w_state(int n) {
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(uint64_t{1} << n, cdouble{0.0, 0.0});
    double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) {
        s.amps[uint64_t{1} << q] = a;
    }
    return s;
}

inline StateVector random_state(int n, ntangled::Rng& rng) {
    StateVector s;
    s.n_qubits = n;
    s.amps.resize(uint64_t{1} << n);
    double sq = 0.0;
    for (auto& amp : s.amps) {
        amp = cdouble{rng.gaussian(), rng.gaussian()};
        sq += std::norm(amp);
    }
    for (auto& amp : s.amps) {
        amp *= 1.0 / std::sqrt(sq);
    }
    return s;
}

inline Gate random_gate(int n, ntangled::Rng& rng) {
    int kind = static_cast<int>(rng.below(7));
    int a = static_cast<int>(rng.below(n));
    int b = (a + 1 + static_cast<int>(rng.below(n - 1))) % n;
    int c = 0;
    if (n >= 3) {
        do {
            c = static_cast<int>(rng.below(n));
        } while (c == a || c == b);
    }
    switch (kind) {
        case 0: return Gate::ry(a, rng.angle());
        case 1: return Gate::rz(a, rng.angle());
        case 2: return Gate::u3(a, rng.angle(), rng.angle(), rng.angle());
        case 3: return Gate::h(a);
        case 4: return Gate::cnot(a, b);
        case 5: return Gate::cz(a, b);
        default:
            if (n >= 3) {
                return Gate::cswap(a, b, c);
            }
            return Gate::cnot(a, b);
    }
}

} // namespace oracle
