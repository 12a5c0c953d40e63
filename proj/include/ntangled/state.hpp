#pragma once

#include "ntangled/linalg.hpp"

#include <string_view>
#include <vector>

namespace ntangled {

/// Pure n-qubit state as 2^n amplitudes. Qubit 0 is the most significant bit
/// of the basis index, so |q0 q1 ... q(n-1)> lives at index
/// q0*2^(n-1) + ... + q(n-1).
struct StateVector {
    int n_qubits = 0;
    std::vector<cdouble> amps;

    size_t dim() const { return amps.size(); }
};

StateVector basis_state(int n, std::string_view bits);
StateVector basis_state_index(int n, uint64_t index);

/// Kronecker product of single-qubit factors; the first factor becomes qubit 0.
StateVector product_state(const std::vector<StateVector>& factors);

/// Kronecker product of two arbitrary states (a's qubits first).
StateVector kron(const StateVector& a, const StateVector& b);

cdouble inner_product(const StateVector& a, const StateVector& b); // <a|b>
double norm(const StateVector& s);

/// sqrt(1 - |<a|b>|^2); the trace distance between the two pure-state
/// projectors, exact for pure states.
double trace_distance_pure(const StateVector& a, const StateVector& b);

/// Rebuilds the state so that bit perm[i] of the new basis index carries what
/// bit i carried before (qubit i moves to position perm[i]).
StateVector permute_qubits(const StateVector& s, const std::vector<int>& perm);

/// Applies an arbitrary 2x2 matrix (row-major) to one qubit. Used by samplers
/// and the fused circuit evaluator; gate-level application lives in gates.hpp.
void apply_single_qubit_matrix_inplace(StateVector& s, int qubit, const cdouble m[4]);

/// Applies an arbitrary 4x4 matrix to the ordered qubit pair (qa, qb), where
/// qa indexes the more significant bit of the local 2-bit index.
void apply_two_qubit_matrix_inplace(StateVector& s, int qa, int qb, const cdouble m[16]);

} // namespace ntangled
