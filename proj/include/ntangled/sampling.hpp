#pragma once

#include "ntangled/rng.hpp"
#include "ntangled/state.hpp"

#include <string>
#include <vector>

namespace ntangled {

enum class InputKind { COMPUTATIONAL_BASIS, HAAR_PRODUCT, EPSILON_BALL };

std::string to_string(InputKind kind);
InputKind input_kind_from_string(const std::string& name);

/// Serializable description of the input-state distribution a model was
/// trained on. `seed` fully determines the sample stream.
struct InputDistribution {
    InputKind kind = InputKind::HAAR_PRODUCT;
    int n_qubits = 0;
    size_t size = 0;          // training-set size
    uint64_t seed = 0;
    double epsilon = 0.0;     // EPSILON_BALL only
    bool random_basis = false; // COMPUTATIONAL_BASIS: seeded draw instead of the canonical list
};

/// Canonical training basis set: |0...0> followed by the weight-1 strings in
/// qubit order; sizes beyond n+1 extend with seeded draws (no replacement)
/// from the remaining strings.
std::vector<StateVector> training_basis_set(int n, size_t size, Rng& rng);

/// Fully seeded alternative: `size` distinct basis states drawn uniformly.
std::vector<StateVector> training_basis_set_random(int n, size_t size, Rng& rng);

/// Haar-random product state: per qubit, two standard complex Gaussians
/// normalized, then the n factors tensored together.
StateVector sample_haar_product(int n, Rng& rng);

/// Haar-random full n-qubit state (analysis/test helper, not a training
/// distribution).
StateVector sample_haar_state(int n, Rng& rng);

/// A state within trace distance eps/2 of `reference`, so any two samples sit
/// within eps of each other. Small random single-qubit rotations, rescaled
/// until the distance bound holds.
StateVector sample_epsilon_ball(const StateVector& reference, double eps, Rng& rng);

/// Draws the training set described by `dist` (stream: derive_stream(seed, i)
/// for sample i where the distribution is continuous).
std::vector<StateVector> draw_training_set(const InputDistribution& dist);

/// One test-time draw from the continuous part of a distribution; for the
/// computational-basis kind this returns a uniformly random basis state.
StateVector sample_input(const InputDistribution& dist, Rng& rng);

} // namespace ntangled
