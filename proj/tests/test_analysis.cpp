#include "ntangled/analysis.hpp"

#include "ntangled/ansatz.hpp"
#include "ntangled/datasets.hpp"
#include "ntangled/entanglement.hpp"
#include "ntangled/sampling.hpp"

#include "oracle_utils.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ntangled;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("histogram: counts, density normalization, degenerate data") {
    std::vector<double> same(25, 0.42);
    Histogram h = make_histogram(same, 10, 0.0, 1.0);
    size_t nonzero = 0, total = 0;
    for (size_t b = 0; b < h.counts.size(); ++b) {
        nonzero += h.counts[b] > 0;
        total += h.counts[b];
    }
    CHECK(nonzero == 1);
    CHECK(total == 25);

    double integral = 0.0;
    for (size_t b = 0; b < h.density.size(); ++b) {
        integral += h.density[b] * (h.edges[b + 1] - h.edges[b]);
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(make_histogram({}, 10, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_histogram(same, 0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("ce_histogram of product states piles onto the zero bin") {
    Rng rng(3);
    std::vector<StateVector> states;
    for (int i = 0; i < 30; ++i) {
        states.push_back(sample_haar_product(3, rng));
    }
    Histogram h = ce_histogram(states, 25);
    CHECK(h.counts[0] == 30);
    CHECK(h.edges.back() == doctest::Approx(ce_max(3)));
}

TEST_CASE("single-qubit purity samples: frozen values") {
    std::vector<StateVector> products;
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
        products.push_back(sample_haar_product(3, rng));
    }
    for (const auto& per_qubit : single_qubit_purity_samples(products)) {
        for (double p : per_qubit) {
            CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    std::vector<StateVector> ghzs = {oracle::ghz(4)};
    for (const auto& per_qubit : single_qubit_purity_samples(ghzs)) {
        CHECK(per_qubit[0] == doctest::Approx(0.5).epsilon(1e-12));
    }

    std::vector<StateVector> ws = {oracle::w_state(3)};
    for (const auto& per_qubit : single_qubit_purity_samples(ws)) {
        CHECK(per_qubit[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
    }
}

TEST_CASE("distance-averaged concurrence: Bell pair on a 3-qubit chain") {
    // (|00> + |11>)/sqrt(2) (x) |0>
    Circuit prep;
    prep.n_qubits = 3;
    prep.ops = {Gate::h(0), Gate::cnot(0, 1)};
    std::vector<StateVector> states = {apply_circuit(basis_state(3, "000"), prep)};

    auto rows = distance_averaged_concurrence(states);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].distance == 1);
    CHECK(rows[0].mean == doctest::Approx(0.5).epsilon(1e-9)); // (1 + 0) / 2
    CHECK(rows[1].distance == 2);
    CHECK(rows[1].mean == doctest::Approx(0.0).epsilon(1e-9));

    Rng rng(7);
    std::vector<StateVector> products;
    for (int i = 0; i < 4; ++i) {
        products.push_back(sample_haar_product(4, rng));
    }
    for (const auto& row : distance_averaged_concurrence(products)) {
        CHECK(row.mean == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("half-chain purity: frozen values and the odd-n error") {
    Rng rng(9);
    std::vector<StateVector> products;
    for (int i = 0; i < 4; ++i) {
        products.push_back(sample_haar_product(4, rng));
    }
    CHECK(halfchain_purity_average(products) == doctest::Approx(1.0).epsilon(1e-10));

    std::vector<StateVector> ghzs = {oracle::ghz(4)};
    CHECK(halfchain_purity_average(ghzs) == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<StateVector> odd = {oracle::ghz(3)};
    CHECK_THROWS_AS(halfchain_purity_average(odd), std::invalid_argument);
}

TEST_CASE("shallow chains entangle neighbours more than distant pairs") {
    DepthDatasetSpec spec;
    spec.n_qubits = 6;
    spec.classes = {{1, 0, 40}};
    spec.seed = 11;
    spec.resample_per_state = true;
    LabeledStateSet shallow = generate_depth_dataset(spec);

    auto rows = distance_averaged_concurrence(shallow.states);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].mean > rows[4].mean);
    CHECK(rows[4].mean < 0.01); // beyond the light cone
}

TEST_CASE("neighbour concurrence decays as the circuits deepen") {
    auto batch = [](int layers) {
        DepthDatasetSpec spec;
        spec.n_qubits = 6;
        spec.classes = {{layers, 0, 80}};
        spec.seed = 13;
        spec.resample_per_state = true;
        LabeledStateSet set = generate_depth_dataset(spec);
        return distance_averaged_concurrence(set.states)[0].mean; // l = 1
    };
    double shallow = batch(1);
    double deep = batch(6);
    CHECK(shallow > deep + 0.02); // monogamy spreads it thin at depth
}

TEST_CASE("csv emitters write the documented columns") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ntangled_analysis_csv";
    fs::create_directories(dir);

    std::vector<double> values = {0.1, 0.2, 0.2, 0.7};
    Histogram h = make_histogram(values, 4, 0.0, 1.0);
    write_histogram_csv(h, (dir / "hist.csv").string());
    {
        std::ifstream in(dir / "hist.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "bin_lo,bin_hi,count,density");
        size_t rows = 0;
        std::string line;
        while (std::getline(in, line)) {
            ++rows;
        }
        CHECK(rows == 4);
    }

    std::vector<DistanceConcurrence> rows = {{1, 0.5, 0.01, 40}, {2, 0.1, 0.02, 20}};
    write_concurrence_csv(rows, (dir / "conc.csv").string());
    {
        std::ifstream in(dir / "conc.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "distance,mean_concurrence,std_error,samples");
    }

    std::vector<std::vector<double>> purities = {{1.0, 0.9}, {0.8, 0.7}};
    write_purity_csv(purities, (dir / "purity.csv").string());
    {
        std::ifstream in(dir / "purity.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "qubit,state_index,purity");
        size_t count = 0;
        std::string line;
        while (std::getline(in, line)) {
            ++count;
        }
        CHECK(count == 4);
    }
    fs::remove_all(dir);
}

TEST_SUITE_END();
