#pragma once

#include "ntangled/state.hpp"

#include <cstdint>
#include <vector>

namespace ntangled {

/// Dense density matrix for small subsystems (reduced states, concurrence).
struct DensityMatrix {
    int n_qubits = 0;
    CMatrix m;

    int dim() const { return m.dim; }
};

/// Qubit-subset bitmask: bit i (1 << i) selects qubit i.
uint32_t subset_mask(const std::vector<int>& subset, int n_qubits);

/// Partial trace over the complement of `subset`. Subset qubits keep their
/// relative order: the smallest index becomes the most significant bit of the
/// reduced basis index.
DensityMatrix reduced_density(const StateVector& s, const std::vector<int>& subset);

/// Tr[rho^2] of the reduced state on `subset` (convention: empty subset -> 1).
/// Never materializes a density matrix: the state is reshaped into a
/// 2^k x 2^(n-k) matrix M over the smaller of subset/complement and the
/// squared Frobenius norm of M M^dagger is accumulated directly.
double subset_purity(const StateVector& s, const std::vector<int>& subset);
double subset_purity_mask(const StateVector& s, uint32_t qubit_mask);

double purity(const DensityMatrix& rho);

/// Hermitian within tol, trace 1 within tol, eigenvalues >= -tol.
bool is_valid_density(const DensityMatrix& rho, double tol = 1e-10);

} // namespace ntangled
