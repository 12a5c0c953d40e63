#pragma once

#include "ntangled/state.hpp"

#include <array>
#include <vector>

namespace ntangled {

enum class GateKind { RY, RZ, U3, H, CNOT, CZ, CSWAP };

/// One gate instance. Conventions:
///   RZ(t) = diag(e^{-it/2}, e^{it/2})
///   RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
///   U3(a,b,c) = e^{i(b+c)/2} RZ(b) RY(a) RZ(c)   (global phase kept)
///   CNOT(control, target), CZ symmetric, CSWAP(control; t0, t1).
struct Gate {
    GateKind kind = GateKind::RY;
    int q0 = -1, q1 = -1, q2 = -1;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;

    static Gate ry(int q, double theta);
    static Gate rz(int q, double theta);
    static Gate u3(int q, double alpha, double beta, double gamma);
    static Gate h(int q);
    static Gate cnot(int control, int target);
    static Gate cz(int a, int b);
    static Gate cswap(int control, int t0, int t1);

    int arity() const;
    /// Exact inverse gate (U3 includes its global phase).
    Gate inverse() const;
};

/// 2x2 matrix of a single-qubit gate (RY/RZ/U3/H only).
std::array<cdouble, 4> single_qubit_matrix(const Gate& g);

void apply_gate_inplace(StateVector& s, const Gate& g);
StateVector apply_gate(const StateVector& s, const Gate& g);

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> ops;

    /// Reversed sequence of inverse gates.
    Circuit inverse() const;
};

/// Reference path: gates applied strictly one by one, in order.
StateVector apply_circuit(const StateVector& s, const Circuit& c);
void apply_circuit_inplace(StateVector& s, const Circuit& c);

/// Fast path: consecutive gates that fit on a shared pair of qubits are fused
/// into one 4x4 (or 2x2) matrix before touching the state vector. Agreement
/// with the gate-by-gate path is pinned by tests; training and dataset
/// generation run through this.
class CompiledCircuit {
  public:
    CompiledCircuit() = default;
    explicit CompiledCircuit(const Circuit& c);

    int n_qubits() const { return n_qubits_; }
    size_t block_count() const { return blocks_.size(); }

    void apply_inplace(StateVector& s) const;
    StateVector apply(const StateVector& s) const;

  private:
    enum class BlockKind { ONE_Q, TWO_Q, RAW };
    struct Block {
        BlockKind kind;
        int qa = -1, qb = -1;          // TWO_Q: qa more significant
        std::array<cdouble, 16> m{};   // ONE_Q uses m[0..3]
        Gate raw{};                    // RAW (CSWAP)
    };

    int n_qubits_ = 0;
    std::vector<Block> blocks_;
};

} // namespace ntangled
