#include "ntangled/entanglement.hpp"

#include "ntangled/gates.hpp"
#include "ntangled/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ntangled {

namespace {

// All subsets of {0..n-1} of size k, as qubit masks in increasing order
// (Gosper's hack).
void append_combinations(int n, int k, std::vector<uint32_t>& out) {
    if (k == 0) {
        out.push_back(0);
        return;
    }
    uint32_t v = (uint32_t{1} << k) - 1;
    const uint32_t limit = uint32_t{1} << n;
    while (v < limit) {
        out.push_back(v);
        uint32_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
}

// The half of the power set that the CE sweep actually visits: every subset
// with |a| < n/2, plus (for even n) the size-n/2 subsets containing qubit 0.
// Each contributes twice (itself and its complement), covering all 2^n.
std::vector<uint32_t> ce_sweep_masks(int n) {
    std::vector<uint32_t> masks;
    masks.reserve(uint64_t{1} << (n - 1));
    for (int k = 0; 2 * k <= n; ++k) {
        if (2 * k < n) {
            append_combinations(n, k, masks);
        } else {
            std::vector<uint32_t> half;
            append_combinations(n, k, half);
            for (uint32_t m : half) {
                if (m & 1u) {
                    masks.push_back(m);
                }
            }
        }
    }
    return masks;
}

} // namespace

double ce_max(int n_qubits) {
    return 1.0 - std::exp2(1 - n_qubits);
}

CEReport ce_report(const StateVector& s, bool with_purities) {
    const int n = s.n_qubits;
    if (n > 14) {
        throw std::invalid_argument("concentratable_entanglement: guarded to n <= 14");
    }
    const std::vector<uint32_t> masks = ce_sweep_masks(n);
    std::vector<double> purities(masks.size());

    auto eval = [&](size_t i) { purities[i] = subset_purity_mask(s, masks[i]); };
    if (n >= 10) {
        parallel_for(masks.size(), eval);
    } else {
        for (size_t i = 0; i < masks.size(); ++i) {
            eval(i);
        }
    }

    double total = 0.0; // fixed summation order, independent of thread count
    for (double p : purities) {
        total += 2.0 * p;
    }

    CEReport report;
    report.ce = 1.0 - std::ldexp(total, -n);
    if (with_purities) {
        const uint32_t full = (uint32_t{1} << n) - 1;
        report.per_subset_purities.reserve(uint64_t{1} << n);
        for (size_t i = 0; i < masks.size(); ++i) {
            report.per_subset_purities.emplace_back(masks[i], purities[i]);
            report.per_subset_purities.emplace_back(full ^ masks[i], purities[i]);
        }
        std::sort(report.per_subset_purities.begin(), report.per_subset_purities.end());
    }
    return report;
}

double concentratable_entanglement(const StateVector& s) {
    return ce_report(s, false).ce;
}

double n_tangle(const StateVector& s) {
    const int n = s.n_qubits;
    if (n % 2 != 0) {
        throw std::invalid_argument("n_tangle: defined for even qubit counts only");
    }
    const uint64_t dim = s.dim();
    const uint64_t full = dim - 1;
    cdouble overlap = 0.0;
    for (uint64_t y = 0; y < dim; ++y) {
        // (-1)^{weight(~y)} = (-1)^{weight(y)} for even n
        double sign = (std::popcount(y) & 1) ? -1.0 : 1.0;
        overlap += sign * std::conj(s.amps[y]) * std::conj(s.amps[full ^ y]);
    }
    return std::norm(overlap);
}

SwapTestResult swap_test_oracle(const StateVector& s) {
    const int n = s.n_qubits;
    if (n > 5) {
        throw std::invalid_argument("swap_test_oracle: guarded to n <= 5 (simulates 3n qubits)");
    }
    StateVector reg = kron(kron(basis_state_index(n, 0), s), s);
    for (int i = 0; i < n; ++i) {
        apply_gate_inplace(reg, Gate::h(i));
    }
    for (int i = 0; i < n; ++i) {
        apply_gate_inplace(reg, Gate::cswap(i, n + i, 2 * n + i));
    }
    for (int i = 0; i < n; ++i) {
        apply_gate_inplace(reg, Gate::h(i));
    }

    const uint64_t block = uint64_t{1} << (2 * n); // amplitudes per ancilla pattern
    SwapTestResult result;
    for (uint64_t x = 0; x < block; ++x) {
        result.p_all_zero += std::norm(reg.amps[x]);
    }
    const uint64_t last = reg.dim() - block;
    for (uint64_t x = 0; x < block; ++x) {
        result.p_all_one += std::norm(reg.amps[last + x]);
    }
    return result;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("concurrence: expects a two-qubit density matrix");
    }
    if (!is_valid_density(rho, 1e-8)) {
        throw std::invalid_argument("concurrence: input is not a density matrix");
    }

    // Y = sigma_y (x) sigma_y
    CMatrix y(4);
    y.at(0, 3) = -1.0;
    y.at(1, 2) = 1.0;
    y.at(2, 1) = 1.0;
    y.at(3, 0) = -1.0;

    CMatrix rho_tilde = matmul(matmul(y, conjugate(rho.m)), y);
    CMatrix root = psd_sqrt(rho.m);
    CMatrix inner = matmul(matmul(root, rho_tilde), root);

    std::vector<double> evals = hermitian_eigenvalues(inner); // ascending
    double lambda[4];
    for (int i = 0; i < 4; ++i) {
        lambda[i] = std::sqrt(std::max(0.0, evals[3 - i]));
    }
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double ce_continuity_bound(int n_qubits) {
    return 4.0 - std::exp2(3 - n_qubits);
}

bool is_genuine_multipartite_3q(double ce) {
    return ce > 0.25;
}

double haar_average_purity(int subsystem_qubits) {
    return std::exp2(subsystem_qubits + 1) / (1.0 + std::exp2(2 * subsystem_qubits));
}

} // namespace ntangled
