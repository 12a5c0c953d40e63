#include "ntangled/ansatz.hpp"

#include <stdexcept>

namespace ntangled {

std::string to_string(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::HWE: return "hwe";
        case AnsatzKind::SEA: return "sea";
        case AnsatzKind::CONV: return "conv";
        case AnsatzKind::DEPTH_HWE: return "depth_hwe";
        case AnsatzKind::QCNN: return "qcnn";
    }
    return "?";
}

AnsatzKind ansatz_from_string(const std::string& name) {
    if (name == "hwe") return AnsatzKind::HWE;
    if (name == "sea") return AnsatzKind::SEA;
    if (name == "conv") return AnsatzKind::CONV;
    if (name == "depth_hwe") return AnsatzKind::DEPTH_HWE;
    if (name == "qcnn") return AnsatzKind::QCNN;
    throw std::invalid_argument("unknown ansatz kind: " + name);
}

std::vector<size_t> ansatz_param_shape(AnsatzKind kind, int n, int layers,
                                       bool independent_second_round) {
    const size_t L = static_cast<size_t>(layers);
    const size_t nq = static_cast<size_t>(n);
    switch (kind) {
        case AnsatzKind::HWE:
            if (independent_second_round) {
                return {L, 2, nq, 3};
            }
            return {L, nq, 3};
        case AnsatzKind::SEA:
            return {L, nq, 3};
        case AnsatzKind::CONV:
            return {L, 30 * (nq / 2)};
        case AnsatzKind::DEPTH_HWE:
            return {L + 1, nq, 3};
        case AnsatzKind::QCNN:
            return {qcnn_param_count(n)};
    }
    return {};
}

size_t ansatz_param_count(AnsatzKind kind, int n, int layers, bool independent_second_round) {
    size_t count = 1;
    for (size_t d : ansatz_param_shape(kind, n, layers, independent_second_round)) {
        count *= d;
    }
    return count;
}

namespace {

void check_param_count(std::span<const double> params, size_t expected, const char* what) {
    if (params.size() != expected) {
        throw std::invalid_argument(std::string(what) + ": parameter count mismatch");
    }
}

void check_layout(int n, int layers) {
    if (n < 2) {
        throw std::invalid_argument("ansatz needs at least 2 qubits");
    }
    if (layers < 1) {
        throw std::invalid_argument("ansatz needs at least 1 layer");
    }
}

} // namespace

void append_2qu(std::vector<Gate>& ops, int i, int j, std::span<const double> p) {
    if (i == j) {
        throw std::invalid_argument("2QU: qubits must be distinct");
    }
    check_param_count(p, 15, "2QU");
    ops.push_back(Gate::u3(i, p[0], p[1], p[2]));
    ops.push_back(Gate::u3(j, p[3], p[4], p[5]));
    ops.push_back(Gate::cnot(j, i));
    ops.push_back(Gate::rz(i, p[6]));
    ops.push_back(Gate::ry(j, p[7]));
    ops.push_back(Gate::cnot(i, j));
    ops.push_back(Gate::ry(j, p[8]));
    ops.push_back(Gate::cnot(j, i));
    ops.push_back(Gate::u3(i, p[9], p[10], p[11]));
    ops.push_back(Gate::u3(j, p[12], p[13], p[14]));
}

std::vector<Gate> build_2qu(int i, int j, std::span<const double> p15) {
    std::vector<Gate> ops;
    ops.reserve(10);
    append_2qu(ops, i, j, p15);
    return ops;
}

Circuit build_hwe(int n, int layers, std::span<const double> params,
                  bool independent_second_round) {
    check_layout(n, layers);
    check_param_count(params, ansatz_param_count(AnsatzKind::HWE, n, layers, independent_second_round),
                      "hwe");
    Circuit c;
    c.n_qubits = n;
    const size_t per_layer = independent_second_round ? 2 * n * 3 : n * 3;
    for (int d = 0; d < layers; ++d) {
        const double* layer = params.data() + static_cast<size_t>(d) * per_layer;
        for (int i = 0; i < n; ++i) {
            c.ops.push_back(Gate::u3(i, layer[3 * i], layer[3 * i + 1], layer[3 * i + 2]));
        }
        for (int i = 0; 2 * i + 1 < n; ++i) {
            c.ops.push_back(Gate::cnot(2 * i, 2 * i + 1));
        }
        const double* second = independent_second_round ? layer + static_cast<size_t>(n) * 3 : layer;
        for (int i = 0; i < n; ++i) {
            c.ops.push_back(Gate::u3(i, second[3 * i], second[3 * i + 1], second[3 * i + 2]));
        }
        for (int i = 0; 2 * i + 2 < n; ++i) {
            c.ops.push_back(Gate::cnot(2 * i + 1, 2 * i + 2));
        }
    }
    return c;
}

Circuit build_sea(int n, int layers, std::span<const double> params) {
    check_layout(n, layers);
    check_param_count(params, ansatz_param_count(AnsatzKind::SEA, n, layers), "sea");
    Circuit c;
    c.n_qubits = n;
    for (int d = 0; d < layers; ++d) {
        const double* layer = params.data() + static_cast<size_t>(d) * n * 3;
        for (int i = 0; i < n; ++i) {
            c.ops.push_back(Gate::u3(i, layer[3 * i], layer[3 * i + 1], layer[3 * i + 2]));
        }
        for (int i = 0; i < n; ++i) {
            c.ops.push_back(Gate::cnot(i, (i + 1) % n));
        }
    }
    return c;
}

Circuit build_conv(int n, int layers, std::span<const double> params) {
    check_layout(n, layers);
    check_param_count(params, ansatz_param_count(AnsatzKind::CONV, n, layers), "conv");
    Circuit c;
    c.n_qubits = n;
    const size_t per_layer = 30 * (static_cast<size_t>(n) / 2);
    for (int d = 0; d < layers; ++d) {
        const double* layer = params.data() + static_cast<size_t>(d) * per_layer;
        size_t j = 0;
        for (int i = 0; 2 * i + 1 < n; ++i) {
            append_2qu(c.ops, 2 * i, 2 * i + 1, std::span<const double>(layer + j, 15));
            j += 15;
        }
        for (int i = 0; i < n / 2; ++i) {
            append_2qu(c.ops, 2 * i + 1, (2 * i + 2) % n, std::span<const double>(layer + j, 15));
            j += 15;
        }
    }
    return c;
}

Circuit build_depth_ansatz(int n, int layers, std::span<const double> params) {
    if (n < 2) {
        throw std::invalid_argument("ansatz needs at least 2 qubits");
    }
    if (layers < 0) {
        throw std::invalid_argument("depth ansatz needs layers >= 0");
    }
    check_param_count(params, ansatz_param_count(AnsatzKind::DEPTH_HWE, n, layers), "depth_hwe");
    Circuit c;
    c.n_qubits = n;
    auto u3_layer = [&](int d) {
        const double* layer = params.data() + static_cast<size_t>(d) * n * 3;
        for (int i = 0; i < n; ++i) {
            c.ops.push_back(Gate::u3(i, layer[3 * i], layer[3 * i + 1], layer[3 * i + 2]));
        }
    };
    u3_layer(0);
    for (int d = 1; d <= layers; ++d) {
        for (int i = 0; 2 * i + 1 < n; ++i) {
            c.ops.push_back(Gate::cnot(2 * i, 2 * i + 1));
        }
        for (int i = 0; 2 * i + 2 < n; ++i) {
            c.ops.push_back(Gate::cnot(2 * i + 1, 2 * i + 2));
        }
        u3_layer(d);
    }
    return c;
}

namespace {

// Shared walk over the QCNN stage schedule. emit_block is called once per 2QU
// with the qubit pair; pooling updates the active list in place.
template <typename EmitBlock>
std::vector<int> qcnn_schedule(int n_total, int keep, EmitBlock&& emit_block) {
    if (n_total < 2) {
        throw std::invalid_argument("qcnn needs at least 2 qubits");
    }
    if (keep < 1) {
        throw std::invalid_argument("qcnn keep must be >= 1");
    }
    std::vector<int> active(n_total);
    for (int i = 0; i < n_total; ++i) {
        active[i] = i;
    }
    for (;;) {
        // convolution: brick pattern over adjacent active pairs
        for (size_t i = 0; i + 1 < active.size(); i += 2) {
            emit_block(active[i], active[i + 1]);
        }
        for (size_t i = 1; i + 1 < active.size(); i += 2) {
            emit_block(active[i], active[i + 1]);
        }
        if (static_cast<int>(active.size()) <= keep) {
            break;
        }
        // pooling: disjoint adjacent pairs, first of each pair goes inactive
        std::vector<int> survivors;
        survivors.reserve((active.size() + 1) / 2);
        size_t i = 0;
        for (; i + 1 < active.size(); i += 2) {
            emit_block(active[i], active[i + 1]);
            survivors.push_back(active[i + 1]);
        }
        if (i < active.size()) {
            survivors.push_back(active[i]);
        }
        active = std::move(survivors);
    }
    return active;
}

} // namespace

size_t qcnn_param_count(int n_total, int keep) {
    size_t blocks = 0;
    qcnn_schedule(n_total, keep, [&](int, int) { ++blocks; });
    return blocks * 15;
}

QcnnCircuit build_qcnn(int n_total, std::span<const double> params, int keep) {
    check_param_count(params, qcnn_param_count(n_total, keep), "qcnn");
    QcnnCircuit out;
    out.circuit.n_qubits = n_total;
    size_t offset = 0;
    out.measured_qubits = qcnn_schedule(n_total, keep, [&](int a, int b) {
        append_2qu(out.circuit.ops, a, b, params.subspan(offset, 15));
        offset += 15;
    });
    return out;
}

std::vector<std::pair<int, int>> qcnn_block_pairs(int n_total, int keep) {
    std::vector<std::pair<int, int>> pairs;
    qcnn_schedule(n_total, keep, [&](int a, int b) { pairs.emplace_back(a, b); });
    return pairs;
}

std::array<cdouble, 16> two_qubit_block_matrix(int i, int j, std::span<const double> p15) {
    // build the block on two local qubits, role i on the min(i,j) slot,
    // then read the matrix off basis columns
    Circuit local;
    local.n_qubits = 2;
    append_2qu(local.ops, i < j ? 0 : 1, i < j ? 1 : 0, p15);
    std::array<cdouble, 16> m{};
    for (uint64_t col = 0; col < 4; ++col) {
        StateVector e = basis_state_index(2, col);
        apply_circuit_inplace(e, local);
        for (int row = 0; row < 4; ++row) {
            m[static_cast<size_t>(row) * 4 + col] = e.amps[row];
        }
    }
    return m;
}

Circuit build_ansatz(AnsatzKind kind, int n, int layers, std::span<const double> params,
                     bool independent_second_round) {
    switch (kind) {
        case AnsatzKind::HWE:
            return build_hwe(n, layers, params, independent_second_round);
        case AnsatzKind::SEA:
            return build_sea(n, layers, params);
        case AnsatzKind::CONV:
            return build_conv(n, layers, params);
        case AnsatzKind::DEPTH_HWE:
            return build_depth_ansatz(n, layers, params);
        case AnsatzKind::QCNN:
            throw std::invalid_argument("qcnn circuits come from build_qcnn");
    }
    throw std::invalid_argument("unknown ansatz kind");
}

} // namespace ntangled
