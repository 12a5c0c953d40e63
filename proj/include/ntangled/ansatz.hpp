#pragma once

#include "ntangled/gates.hpp"

#include <span>
#include <string>
#include <vector>

namespace ntangled {

enum class AnsatzKind { HWE, SEA, CONV, DEPTH_HWE, QCNN };

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_from_string(const std::string& name);

/// Parameter tensor shape per ansatz, row-major (layer, then qubit/block,
/// then angle): HWE/SEA (L,n,3), HWE with independent second rotation round
/// (L,2,n,3), CONV (L, 30*floor(n/2)), DEPTH_HWE (L+1,n,3).
std::vector<size_t> ansatz_param_shape(AnsatzKind kind, int n, int layers,
                                       bool independent_second_round = false);
size_t ansatz_param_count(AnsatzKind kind, int n, int layers,
                          bool independent_second_round = false);

/// 15-parameter decomposition of an arbitrary two-qubit unitary
/// (3 CNOTs + single-qubit rotations), appended to `ops`.
void append_2qu(std::vector<Gate>& ops, int i, int j, std::span<const double> p15);
std::vector<Gate> build_2qu(int i, int j, std::span<const double> p15);

/// Per layer: U3 on every qubit, CNOT(2i,2i+1) ladder, the same U3 round
/// again (parameters reused unless independent_second_round), CNOT(2i+1,2i+2)
/// ladder.
Circuit build_hwe(int n, int layers, std::span<const double> params,
                  bool independent_second_round = false);

/// Per layer: U3 on every qubit, then the wrapping CNOT ladder
/// CNOT(i, (i+1) mod n) for i = 0..n-1.
Circuit build_sea(int n, int layers, std::span<const double> params);

/// Per layer: 2QU on even pairs (2i, 2i+1), then on odd pairs
/// (2i+1, (2i+2) mod n), 15 parameters each.
Circuit build_conv(int n, int layers, std::span<const double> params);

/// Initial U3 product layer from params[0], then per layer d = 1..L the CNOT
/// brick ladders followed by a U3 layer from params[d].
Circuit build_depth_ansatz(int n, int layers, std::span<const double> params);

struct QcnnCircuit {
    Circuit circuit;
    std::vector<int> measured_qubits; // active (never pooled away) qubits, ascending
};

/// Alternating convolution and pooling stages. Convolution: 2QU blocks on
/// adjacent active pairs in a brick pattern (even pairs, then odd pairs).
/// Pooling: 2QU on disjoint adjacent active pairs, then the first qubit of
/// each pair goes inactive. Pooling repeats while more than `keep` qubits
/// remain active; a final convolution acts on the surviving qubits.
QcnnCircuit build_qcnn(int n_total, std::span<const double> params, int keep = 2);
size_t qcnn_param_count(int n_total, int keep = 2);

/// The (i, j) qubit pair of every 2QU block in emission order; block k
/// consumes params [15k, 15k+15). Lets callers update one block at a time.
std::vector<std::pair<int, int>> qcnn_block_pairs(int n_total, int keep = 2);

/// Dense 4x4 of one 2QU block on the ordered pair (i, j), expressed in the
/// (min, max) qubit ordering used by apply_two_qubit_matrix_inplace.
std::array<cdouble, 16> two_qubit_block_matrix(int i, int j, std::span<const double> p15);

/// Dispatch used by training and model files (QCNN excluded; it has its own
/// entry points).
Circuit build_ansatz(AnsatzKind kind, int n, int layers, std::span<const double> params,
                     bool independent_second_round = false);

} // namespace ntangled
