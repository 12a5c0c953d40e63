#pragma once

#include "ntangled/density.hpp"

#include <cstdint>
#include <vector>

namespace ntangled {

struct CEReport {
    double ce = 0.0;
    /// Subset-mask -> Tr[rho_a^2] over the full power set (only filled on request).
    std::vector<std::pair<uint32_t, double>> per_subset_purities;
};

/// Concentratable entanglement 1 - 2^-n * sum_a Tr[rho_a^2], the sum running
/// over the full power set of qubits. Purities are only evaluated for subsets
/// with |a| <= n/2 and mirrored onto their complements. Guarded to n <= 14.
double concentratable_entanglement(const StateVector& s);

CEReport ce_report(const StateVector& s, bool with_purities = false);

/// Upper end of the CE range: 1 - 2^(1-n).
double ce_max(int n_qubits);

/// n-Tangle |<psi|sigma_y^n|psi*>|^2, defined for even qubit counts.
double n_tangle(const StateVector& s);

struct SwapTestResult {
    double p_all_zero = 0.0;
    double p_all_one = 0.0;
};

/// Simulates the controlled-swap test on two copies of the state (3n qubits:
/// n ancillas + both copies) and returns the exact probabilities of the
/// all-zero / all-one ancilla outcomes. CE = 1 - p(0), tangle = 2^n * p(1).
/// Guarded to n <= 5.
SwapTestResult swap_test_oracle(const StateVector& s);

/// Wootters concurrence of a two-qubit density matrix: lambda_i are the
/// square roots of the eigenvalues of rho * (sy (x) sy) rho^* (sy (x) sy),
/// sorted descending; returns max(0, l1 - l2 - l3 - l4).
double concurrence(const DensityMatrix& rho);

/// Lipschitz constant of CE w.r.t. trace distance: 4 - 2^(3-n).
double ce_continuity_bound(int n_qubits);

/// Three-qubit witness: CE above 1/4 certifies genuine multipartite
/// entanglement (the two-qubit ceiling is exactly 1/4).
bool is_genuine_multipartite_3q(double ce);

/// Mean Tr[rho^2] of an m-qubit subsystem of a Haar-random pure state on 2m
/// qubits: 2^(m+1) / (1 + 2^(2m)).
double haar_average_purity(int subsystem_qubits);

} // namespace ntangled
