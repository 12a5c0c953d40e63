#include "ntangled/ansatz.hpp"

#include "ntangled/density.hpp"
#include "ntangled/entanglement.hpp"

#include "oracle_utils.hpp"

#include <doctest.h>

using namespace ntangled;

namespace {

std::vector<double> random_params(size_t count, uint64_t seed) {
    Rng rng(seed);
    std::vector<double> p(count);
    for (double& v : p) {
        v = rng.angle();
    }
    return p;
}

bool same_gates(const std::vector<Gate>& a, const std::vector<Gate>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].kind != b[i].kind || a[i].q0 != b[i].q0 || a[i].q1 != b[i].q1 ||
            a[i].q2 != b[i].q2 || a[i].p0 != b[i].p0 || a[i].p1 != b[i].p1 || a[i].p2 != b[i].p2) {
            return false;
        }
    }
    return true;
}

double unitarity_defect(const CMatrix& u) {
    CMatrix prod = matmul(adjoint(u), u);
    double worst = 0.0;
    for (int r = 0; r < u.dim; ++r) {
        for (int c = 0; c < u.dim; ++c) {
            cdouble expect = r == c ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
            worst = std::max(worst, std::abs(prod.at(r, c) - expect));
        }
    }
    return worst;
}

} // namespace

TEST_SUITE_BEGIN("ansatz");

TEST_CASE("2QU at zero angles is a SWAP (dense matrix oracle)") {
    Circuit c;
    c.n_qubits = 2;
    std::vector<double> zeros(15, 0.0);
    append_2qu(c.ops, 0, 1, zeros);
    CMatrix u = oracle::full_circuit_matrix(c);
    // the three alternating CNOTs survive the identity rotations
    CMatrix swap(4);
    swap.at(0, 0) = swap.at(1, 2) = swap.at(2, 1) = swap.at(3, 3) = 1.0;
    cdouble overlap = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            overlap += std::conj(swap.at(r, col)) * u.at(r, col);
        }
    }
    CHECK(std::abs(overlap) / 4.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("2QU with random angles is unitary and deterministic") {
    auto p = random_params(15, 3);
    Circuit c;
    c.n_qubits = 2;
    append_2qu(c.ops, 0, 1, p);
    CHECK(unitarity_defect(oracle::full_circuit_matrix(c)) < 1e-12);

    CHECK(same_gates(build_2qu(0, 1, p), build_2qu(0, 1, p)));
    auto q = random_params(15, 4);
    CHECK_FALSE(same_gates(build_2qu(0, 1, p), build_2qu(0, 1, q)));

    CHECK_THROWS_AS(build_2qu(0, 0, p), std::invalid_argument);
    CHECK_THROWS_AS(build_2qu(0, 1, std::vector<double>(14, 0.0)), std::invalid_argument);
}

TEST_CASE("HWE: zero-parameter layer fixes |0000> and the printed gate order") {
    std::vector<double> zeros(ansatz_param_count(AnsatzKind::HWE, 4, 1), 0.0);
    Circuit c = build_hwe(4, 1, zeros);
    StateVector out = apply_circuit(basis_state(4, "0000"), c);
    CHECK(std::abs(out.amps[0] - cdouble{1.0, 0.0}) < 1e-12);

    std::vector<std::pair<int, int>> cnots;
    for (const Gate& g : c.ops) {
        if (g.kind == GateKind::CNOT) {
            cnots.emplace_back(g.q0, g.q1);
        }
    }
    CHECK(cnots == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {1, 2}});
}

TEST_CASE("HWE circuit equals its dense gate-matrix product") {
    auto p = random_params(ansatz_param_count(AnsatzKind::HWE, 3, 1), 29);
    Circuit c = build_hwe(3, 1, p);
    StateVector in = basis_state(3, "000");
    StateVector fast = apply_circuit(in, c);
    StateVector dense = oracle::matrix_apply(oracle::full_circuit_matrix(c), in);
    CHECK(norm(fast) == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < in.dim(); ++i) {
        CHECK(std::abs(fast.amps[i] - dense.amps[i]) < 1e-12);
    }
    StateVector again = apply_circuit(in, build_hwe(3, 1, p));
    CHECK(fast.amps == again.amps);
}

TEST_CASE("HWE gate count: L * (3n - 1)") {
    CHECK(build_hwe(3, 2, std::vector<double>(18, 0.0)).ops.size() == 16);
    for (int n = 2; n <= 8; ++n) {
        for (int L = 1; L <= 6; ++L) {
            auto p = random_params(ansatz_param_count(AnsatzKind::HWE, n, L), 17 * n + L);
            CHECK(build_hwe(n, L, p).ops.size() ==
                  static_cast<size_t>(L) * (2 * n + n / 2 + (n - 1) / 2));
        }
    }
    CHECK_THROWS_AS(build_hwe(3, 2, std::vector<double>(17, 0.0)), std::invalid_argument);
}

TEST_CASE("HWE reuses the layer parameters in the second rotation round") {
    auto p = random_params(ansatz_param_count(AnsatzKind::HWE, 3, 1), 5);
    Circuit c = build_hwe(3, 1, p);
    // gates: 3x U3, 1 CNOT, 3x U3, 1 CNOT; rounds identical
    for (int i = 0; i < 3; ++i) {
        const Gate& first = c.ops[i];
        const Gate& second = c.ops[4 + i];
        CHECK(first.p0 == second.p0);
        CHECK(first.p1 == second.p1);
        CHECK(first.p2 == second.p2);
    }

    auto p2 = random_params(ansatz_param_count(AnsatzKind::HWE, 3, 1, true), 6);
    Circuit c2 = build_hwe(3, 1, p2, true);
    REQUIRE(c2.ops.size() == 8);
    bool all_equal = true;
    for (int i = 0; i < 3; ++i) {
        all_equal = all_equal && c2.ops[i].p0 == c2.ops[4 + i].p0;
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("SEA wraps its CNOT ladder") {
    auto p = random_params(ansatz_param_count(AnsatzKind::SEA, 3, 1), 7);
    Circuit c = build_sea(3, 1, p);
    CHECK(c.ops.size() == 6); // 3 U3 + 3 CNOT

    std::vector<double> zeros(ansatz_param_count(AnsatzKind::SEA, 3, 1), 0.0);
    StateVector out = apply_circuit(basis_state(3, "000"), build_sea(3, 1, zeros));
    CHECK(std::abs(out.amps[0] - cdouble{1.0, 0.0}) < 1e-12);

    Circuit c2 = build_sea(2, 1, random_params(6, 8));
    REQUIRE(c2.ops.size() == 4);
    CHECK(c2.ops[2].kind == GateKind::CNOT);
    CHECK(c2.ops[2].q0 == 0);
    CHECK(c2.ops[2].q1 == 1);
    CHECK(c2.ops[3].q0 == 1);
    CHECK(c2.ops[3].q1 == 0);

    for (int n = 2; n <= 8; ++n) {
        for (int L = 1; L <= 6; ++L) {
            auto q = random_params(ansatz_param_count(AnsatzKind::SEA, n, L), 31 * n + L);
            CHECK(build_sea(n, L, q).ops.size() == static_cast<size_t>(2 * n * L));
        }
    }
}

TEST_CASE("CONV block layout and parameter budget") {
    CHECK(ansatz_param_count(AnsatzKind::CONV, 4, 1) == 60);
    auto p = random_params(60, 9);
    Circuit c = build_conv(4, 1, p);
    CHECK(c.ops.size() == 40); // 4 blocks of 10 gates

    // second-round pairs for n=4 are (1,2) and (3,0)
    CHECK(c.ops[20].kind == GateKind::U3);
    CHECK(c.ops[20].q0 == 1);
    CHECK(c.ops[21].q0 == 2);
    CHECK(c.ops[30].q0 == 3);
    CHECK(c.ops[31].q0 == 0);

    CHECK(unitarity_defect(oracle::full_circuit_matrix(build_conv(4, 1, std::vector<double>(60, 0.0)))) <
          1e-12);

    for (int n = 2; n <= 8; ++n) {
        for (int L = 1; L <= 6; ++L) {
            auto q = random_params(ansatz_param_count(AnsatzKind::CONV, n, L), 41 * n + L);
            CHECK(build_conv(n, L, q).ops.size() == static_cast<size_t>(L) * (n / 2) * 2 * 10);
        }
    }
}

TEST_CASE("depth ansatz layer structure") {
    auto p0 = random_params(ansatz_param_count(AnsatzKind::DEPTH_HWE, 4, 0), 10);
    Circuit c0 = build_depth_ansatz(4, 0, p0);
    CHECK(c0.ops.size() == 4); // product-state preparation only
    for (const Gate& g : c0.ops) {
        CHECK(g.kind == GateKind::U3);
    }

    auto p1 = random_params(ansatz_param_count(AnsatzKind::DEPTH_HWE, 4, 1), 11);
    CHECK(build_depth_ansatz(4, 1, p1).ops.size() == 11);

    for (int n = 2; n <= 8; ++n) {
        for (int L = 0; L <= 6; ++L) {
            auto q = random_params(ansatz_param_count(AnsatzKind::DEPTH_HWE, n, L), 53 * n + L);
            CHECK(build_depth_ansatz(n, L, q).ops.size() ==
                  static_cast<size_t>(n) + static_cast<size_t>(L) * (2 * n - 1));
        }
    }
}

TEST_CASE("depth ansatz light cone: ends stay unentangled at L=1, n=6") {
    auto p = random_params(ansatz_param_count(AnsatzKind::DEPTH_HWE, 6, 1), 12);
    StateVector out = apply_circuit(basis_state(6, "000000"), build_depth_ansatz(6, 1, p));
    double c = concurrence(reduced_density(out, {0, 5}));
    CHECK(c < 1e-10);
}

TEST_CASE("QCNN schedule, parameter count and measured qubits") {
    CHECK(qcnn_param_count(2) == 15);
    {
        auto p = random_params(15, 13);
        QcnnCircuit q = build_qcnn(2, p);
        CHECK(q.circuit.ops.size() == 10);
        CHECK(q.measured_qubits == std::vector<int>{0, 1});
    }
    {
        auto p = random_params(qcnn_param_count(6), 14);
        QcnnCircuit q = build_qcnn(6, p);
        CHECK(q.measured_qubits.size() == 2); // 6 -> 3 -> 2 pooling schedule
        CHECK(unitarity_defect(oracle::full_circuit_matrix(q.circuit)) < 1e-12);
    }
    CHECK_THROWS_AS(build_qcnn(6, std::vector<double>(7, 0.0)), std::invalid_argument);
}

TEST_CASE("two_qubit_block_matrix equals gate-by-gate 2QU application") {
    Rng rng(59);
    for (auto [i, j] : {std::pair<int, int>{1, 3}, {3, 1}, {0, 2}}) {
        auto p = random_params(15, 60 + i + 4 * j);
        StateVector psi = oracle::random_state(4, rng);

        Circuit full;
        full.n_qubits = 4;
        append_2qu(full.ops, i, j, p);
        StateVector by_gates = apply_circuit(psi, full);

        StateVector by_matrix = psi;
        auto m = two_qubit_block_matrix(i, j, p);
        apply_two_qubit_matrix_inplace(by_matrix, std::min(i, j), std::max(i, j), m.data());

        for (size_t x = 0; x < psi.dim(); ++x) {
            CHECK(std::abs(by_gates.amps[x] - by_matrix.amps[x]) < 1e-13);
        }
    }
}

TEST_CASE("qcnn_block_pairs matches the emitted circuit") {
    auto pairs = qcnn_block_pairs(6);
    CHECK(pairs.size() * 15 == qcnn_param_count(6));
    // first convolution row starts with the even brick pairs
    CHECK(pairs[0] == std::pair<int, int>{0, 1});
    CHECK(pairs[1] == std::pair<int, int>{2, 3});
    CHECK(pairs[2] == std::pair<int, int>{4, 5});
}

TEST_CASE("builders are pure: same inputs, same gates") {
    auto p = random_params(ansatz_param_count(AnsatzKind::SEA, 4, 2), 15);
    CHECK(same_gates(build_sea(4, 2, p).ops, build_sea(4, 2, p).ops));
    auto c = random_params(ansatz_param_count(AnsatzKind::CONV, 6, 2), 16);
    CHECK(same_gates(build_conv(6, 2, c).ops, build_conv(6, 2, c).ops));
}

TEST_CASE("circuit followed by its inverse is the identity, for every builder") {
    Rng rng(77);
    auto check_roundtrip = [&](const Circuit& c) {
        StateVector psi = oracle::random_state(c.n_qubits, rng);
        StateVector round = apply_circuit(apply_circuit(psi, c), c.inverse());
        for (size_t i = 0; i < psi.dim(); ++i) {
            CHECK(std::abs(round.amps[i] - psi.amps[i]) < 1e-10);
        }
    };
    check_roundtrip(build_hwe(4, 2, random_params(ansatz_param_count(AnsatzKind::HWE, 4, 2), 18)));
    check_roundtrip(build_sea(5, 2, random_params(ansatz_param_count(AnsatzKind::SEA, 5, 2), 19)));
    check_roundtrip(build_conv(4, 2, random_params(ansatz_param_count(AnsatzKind::CONV, 4, 2), 20)));
    check_roundtrip(
        build_depth_ansatz(5, 3, random_params(ansatz_param_count(AnsatzKind::DEPTH_HWE, 5, 3), 21)));
    check_roundtrip(build_qcnn(6, random_params(qcnn_param_count(6), 22)).circuit);
}

TEST_CASE("parameter shapes flatten to the parameter count") {
    for (AnsatzKind kind : {AnsatzKind::HWE, AnsatzKind::SEA, AnsatzKind::CONV,
                            AnsatzKind::DEPTH_HWE}) {
        for (int n = 2; n <= 6; ++n) {
            for (int L = 1; L <= 4; ++L) {
                size_t prod = 1;
                for (size_t d : ansatz_param_shape(kind, n, L)) {
                    prod *= d;
                }
                CHECK(prod == ansatz_param_count(kind, n, L));
            }
        }
    }
    CHECK(ansatz_param_shape(AnsatzKind::HWE, 3, 2) == std::vector<size_t>{2, 3, 3});
    CHECK(ansatz_param_shape(AnsatzKind::HWE, 3, 2, true) == std::vector<size_t>{2, 2, 3, 3});
    CHECK(ansatz_param_shape(AnsatzKind::DEPTH_HWE, 3, 2) == std::vector<size_t>{3, 3, 3});
}

TEST_CASE("ansatz names round trip") {
    for (AnsatzKind kind : {AnsatzKind::HWE, AnsatzKind::SEA, AnsatzKind::CONV,
                            AnsatzKind::DEPTH_HWE, AnsatzKind::QCNN}) {
        CHECK(ansatz_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(ansatz_from_string("nope"), std::invalid_argument);
}

TEST_SUITE_END();
