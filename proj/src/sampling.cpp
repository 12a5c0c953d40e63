#include "ntangled/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace ntangled {

std::string to_string(InputKind kind) {
    switch (kind) {
        case InputKind::COMPUTATIONAL_BASIS: return "computational_basis";
        case InputKind::HAAR_PRODUCT: return "haar_product";
        case InputKind::EPSILON_BALL: return "epsilon_ball";
    }
    return "?";
}

InputKind input_kind_from_string(const std::string& name) {
    if (name == "computational_basis" || name == "basis") return InputKind::COMPUTATIONAL_BASIS;
    if (name == "haar_product" || name == "product") return InputKind::HAAR_PRODUCT;
    if (name == "epsilon_ball") return InputKind::EPSILON_BALL;
    throw std::invalid_argument("unknown input distribution: " + name);
}

std::vector<StateVector> training_basis_set(int n, size_t size, Rng& rng) {
    const uint64_t dim = uint64_t{1} << n;
    if (size > dim) {
        throw std::invalid_argument("training_basis_set: size exceeds 2^n");
    }
    std::vector<uint64_t> indices;
    indices.push_back(0);
    for (int q = 0; q < n && indices.size() < size; ++q) {
        indices.push_back(uint64_t{1} << (n - 1 - q)); // weight-1 string flipping qubit q
    }
    if (indices.size() > size) {
        indices.resize(size);
    }
    std::unordered_set<uint64_t> used(indices.begin(), indices.end());
    while (indices.size() < size) {
        uint64_t candidate = rng.below(dim);
        if (used.insert(candidate).second) {
            indices.push_back(candidate);
        }
    }
    std::vector<StateVector> out;
    out.reserve(indices.size());
    for (uint64_t idx : indices) {
        out.push_back(basis_state_index(n, idx));
    }
    return out;
}

std::vector<StateVector> training_basis_set_random(int n, size_t size, Rng& rng) {
    const uint64_t dim = uint64_t{1} << n;
    if (size > dim) {
        throw std::invalid_argument("training_basis_set_random: size exceeds 2^n");
    }
    std::unordered_set<uint64_t> used;
    std::vector<StateVector> out;
    out.reserve(size);
    while (out.size() < size) {
        uint64_t candidate = rng.below(dim);
        if (used.insert(candidate).second) {
            out.push_back(basis_state_index(n, candidate));
        }
    }
    return out;
}

StateVector sample_haar_product(int n, Rng& rng) {
    std::vector<StateVector> factors;
    factors.reserve(n);
    for (int q = 0; q < n; ++q) {
        cdouble a{rng.gaussian(), rng.gaussian()};
        cdouble b{rng.gaussian(), rng.gaussian()};
        double inv = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
        StateVector f;
        f.n_qubits = 1;
        f.amps = {a * inv, b * inv};
        factors.push_back(std::move(f));
    }
    return product_state(factors);
}

StateVector sample_haar_state(int n, Rng& rng) {
    StateVector s;
    s.n_qubits = n;
    s.amps.resize(uint64_t{1} << n);
    double sq = 0.0;
    for (auto& amp : s.amps) {
        amp = cdouble{rng.gaussian(), rng.gaussian()};
        sq += std::norm(amp);
    }
    double inv = 1.0 / std::sqrt(sq);
    for (auto& amp : s.amps) {
        amp *= inv;
    }
    return s;
}

StateVector sample_epsilon_ball(const StateVector& reference, double eps, Rng& rng) {
    if (eps <= 0.0) {
        throw std::invalid_argument("sample_epsilon_ball: eps must be positive");
    }
    const int n = reference.n_qubits;

    // random rotation axes and angles; angles shrink until within eps/2
    std::vector<double> axis(3 * n), theta(n);
    for (int q = 0; q < n; ++q) {
        double x, y, z, norm_sq;
        do {
            x = rng.gaussian();
            y = rng.gaussian();
            z = rng.gaussian();
            norm_sq = x * x + y * y + z * z;
        } while (norm_sq < 1e-12);
        double inv = 1.0 / std::sqrt(norm_sq);
        axis[3 * q] = x * inv;
        axis[3 * q + 1] = y * inv;
        axis[3 * q + 2] = z * inv;
        theta[q] = rng.uniform(0.0, std::min(eps, M_PI));
    }

    for (;;) {
        StateVector candidate = reference;
        for (int q = 0; q < n; ++q) {
            // exp(-i theta/2 n.sigma) = cos(theta/2) I - i sin(theta/2) n.sigma
            double c = std::cos(theta[q] / 2), s = std::sin(theta[q] / 2);
            double nx = axis[3 * q], ny = axis[3 * q + 1], nz = axis[3 * q + 2];
            cdouble m[4] = {cdouble{c, -s * nz}, cdouble{-s * ny, -s * nx},
                            cdouble{s * ny, -s * nx}, cdouble{c, s * nz}};
            apply_single_qubit_matrix_inplace(candidate, q, m);
        }
        if (trace_distance_pure(reference, candidate) <= eps / 2) {
            return candidate;
        }
        for (double& t : theta) {
            t *= 0.5;
        }
    }
}

std::vector<StateVector> draw_training_set(const InputDistribution& dist) {
    std::vector<StateVector> out;
    switch (dist.kind) {
        case InputKind::COMPUTATIONAL_BASIS: {
            Rng rng = derive_stream(dist.seed, 0);
            return dist.random_basis ? training_basis_set_random(dist.n_qubits, dist.size, rng)
                                     : training_basis_set(dist.n_qubits, dist.size, rng);
        }
        case InputKind::HAAR_PRODUCT: {
            out.reserve(dist.size);
            for (size_t i = 0; i < dist.size; ++i) {
                Rng rng = derive_stream(dist.seed, i);
                out.push_back(sample_haar_product(dist.n_qubits, rng));
            }
            return out;
        }
        case InputKind::EPSILON_BALL: {
            Rng ref_rng = derive_stream(dist.seed, 0);
            StateVector reference = sample_haar_product(dist.n_qubits, ref_rng);
            out.reserve(dist.size);
            for (size_t i = 0; i < dist.size; ++i) {
                Rng rng = derive_stream(dist.seed, i + 1);
                out.push_back(sample_epsilon_ball(reference, dist.epsilon, rng));
            }
            return out;
        }
    }
    throw std::invalid_argument("unknown input distribution kind");
}

StateVector sample_input(const InputDistribution& dist, Rng& rng) {
    switch (dist.kind) {
        case InputKind::COMPUTATIONAL_BASIS:
            return basis_state_index(dist.n_qubits, rng.below(uint64_t{1} << dist.n_qubits));
        case InputKind::HAAR_PRODUCT:
            return sample_haar_product(dist.n_qubits, rng);
        case InputKind::EPSILON_BALL: {
            Rng ref_rng = derive_stream(dist.seed, 0);
            StateVector reference = sample_haar_product(dist.n_qubits, ref_rng);
            return sample_epsilon_ball(reference, dist.epsilon, rng);
        }
    }
    throw std::invalid_argument("unknown input distribution kind");
}

} // namespace ntangled
