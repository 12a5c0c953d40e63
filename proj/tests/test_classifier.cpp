#include "ntangled/classifier.hpp"

#include "oracle_utils.hpp"

#include <doctest.h>

#include <cmath>

using namespace ntangled;

namespace {

ClassifierModel fresh_model(int n_qubits, int copies, uint64_t seed) {
    ClassifierModel model;
    model.n_qubits = n_qubits;
    model.copies = copies;
    const int width = n_qubits * copies;
    const size_t q_dim = qcnn_param_count(width);
    Rng rng(seed);
    model.qcnn_params.resize(q_dim);
    for (double& p : model.qcnn_params) {
        p = rng.angle();
    }
    model.measured_qubits = build_qcnn(width, model.qcnn_params).measured_qubits;
    model.weights.assign(size_t{1} << model.measured_qubits.size(), 0.0);
    model.bias = 0.0;
    return model;
}

} // namespace

TEST_SUITE_BEGIN("classifier");

TEST_CASE("forward: sigmoid head behavior") {
    ClassifierModel model = fresh_model(3, 2, 1);
    Rng rng(2);
    StateVector psi = oracle::random_state(3, rng);

    // all-zero head: exactly 0.5 for every state
    CHECK(forward(model, psi) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(classify(model, psi) == 1); // ties go to label 1

    // saturated bias
    model.bias = 50.0;
    CHECK(forward(model, psi) > 1.0 - 1e-9);
    model.bias = -50.0;
    CHECK(forward(model, psi) < 1e-9);
    CHECK(classify(model, psi) == 0);

    model.bias = std::log(0.4999 / 0.5001); // yhat = 0.4999
    CHECK(forward(model, psi) == doctest::Approx(0.4999).epsilon(1e-9));
    CHECK(classify(model, psi) == 0);

    CHECK_THROWS_AS(forward(model, oracle::random_state(4, rng)), std::invalid_argument);
}

TEST_CASE("measurement probabilities are a normalized distribution") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        ClassifierModel model = fresh_model(3, 2, seed);
        Rng rng(seed + 10);
        StateVector psi = oracle::random_state(3, rng);
        auto p = measurement_probabilities(model, psi);
        CHECK(p.size() == 4);
        double total = 0.0;
        for (double v : p) {
            CHECK(v >= -1e-15);
            total += v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("marginalization agrees with an explicit reordered sum") {
    ClassifierModel model = fresh_model(2, 2, 3);
    Rng rng(4);
    StateVector psi = oracle::random_state(2, rng);
    auto p = measurement_probabilities(model, psi);

    // recompute from the raw output register, enumerating unmeasured qubits
    // in the opposite order
    StateVector reg = kron(psi, psi);
    CompiledCircuit(build_qcnn(4, model.qcnn_params).circuit).apply_inplace(reg);
    const int width = 4;
    const auto& mq = model.measured_qubits;
    std::vector<int> rest;
    for (int q = width - 1; q >= 0; --q) {
        if (std::find(mq.begin(), mq.end(), q) == mq.end()) {
            rest.push_back(q); // descending, unlike the library path
        }
    }
    std::vector<double> alt(p.size(), 0.0);
    for (uint64_t z = 0; z < p.size(); ++z) {
        for (uint64_t u = 0; u < (uint64_t{1} << rest.size()); ++u) {
            uint64_t x = 0;
            for (size_t j = 0; j < mq.size(); ++j) {
                x |= ((z >> (mq.size() - 1 - j)) & 1) << (width - 1 - mq[j]);
            }
            for (size_t j = 0; j < rest.size(); ++j) {
                x |= ((u >> j) & 1) << (width - 1 - rest[j]);
            }
            alt[z] += std::norm(reg.amps[x]);
        }
    }
    for (size_t z = 0; z < p.size(); ++z) {
        CHECK(p[z] == doctest::Approx(alt[z]).epsilon(1e-12));
    }
}

TEST_CASE("clf_loss: frozen values and lasso additivity") {
    ClassifierModel model = fresh_model(3, 2, 5);
    Rng rng(6);
    LabeledStateSet set;
    for (int i = 0; i < 4; ++i) {
        set.states.push_back(oracle::random_state(3, rng));
        set.labels.push_back(i % 2);
    }

    // all-0.5 predictor on balanced labels
    CHECK(clf_loss(model, set) == doctest::Approx(0.25).epsilon(1e-12));

    // perfect predictor surrogate: extreme bias on a single-class set
    LabeledStateSet ones = set;
    ones.labels = {1, 1, 1, 1};
    ClassifierModel saturated = model;
    saturated.bias = 60.0;
    CHECK(clf_loss(saturated, ones) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(accuracy(saturated, ones) == doctest::Approx(1.0));
    CHECK(accuracy(saturated, set) == doctest::Approx(0.5));

    // lasso adds exactly lambda * sum |w|
    ClassifierModel reg = model;
    reg.weights = {0.5, -1.5, 0.0, 2.0};
    double base = clf_loss(reg, set);
    reg.lambda = 0.1;
    CHECK(clf_loss(reg, set) == doctest::Approx(base + 0.1 * 4.0).epsilon(1e-12));

    LabeledStateSet empty;
    CHECK_THROWS_AS(clf_loss(model, empty), std::invalid_argument);
    CHECK_THROWS_AS(accuracy(model, empty), std::invalid_argument);
}

TEST_CASE("classical head gradient matches finite differences") {
    ClassifierModel model = fresh_model(3, 2, 7);
    model.weights = {0.3, -0.8, 0.2, 1.1};
    model.bias = -0.4;
    model.lambda = 0.05;

    Rng rng(8);
    LabeledStateSet set;
    for (int i = 0; i < 6; ++i) {
        set.states.push_back(oracle::random_state(3, rng));
        set.labels.push_back(i % 2);
    }

    auto [dw, db] = head_gradient(model, set);
    const double h = 1e-6;
    for (size_t z = 0; z < model.weights.size(); ++z) {
        ClassifierModel up = model, down = model;
        up.weights[z] += h;
        down.weights[z] -= h;
        double fd = (clf_loss(up, set) - clf_loss(down, set)) / (2 * h);
        CHECK(std::abs(dw[z] - fd) < 1e-8);
    }
    ClassifierModel up = model, down = model;
    up.bias += h;
    down.bias -= h;
    double fd_b = (clf_loss(up, set) - clf_loss(down, set)) / (2 * h);
    CHECK(std::abs(db - fd_b) < 1e-8);
}

TEST_CASE("training separates two singleton classes perfectly") {
    LabeledStateSet class0, class1;
    class0.states.push_back(basis_state(3, "000"));
    class0.labels.push_back(0);
    class1.states.push_back(oracle::ghz(3));
    class1.labels.push_back(1);

    ClassifierConfig config;
    config.n_qubits = 3;
    config.copies = 2;
    config.epochs = 40;
    config.restarts = 2;
    config.seed = 5;
    config.lr = 0.1;
    config.train_fraction = 1.0; // singletons: train on both, test on both

    LabeledStateSet both;
    both.states = {class0.states[0], class1.states[0]};
    both.labels = {0, 1};
    TrainedClassifier t = train_classifier_presplit(config, both, both);
    CHECK(t.train_accuracy == doctest::Approx(1.0));
    CHECK(t.loss_history.size() == 41);
    CHECK(t.train_acc_history.size() == 41);
}

TEST_CASE("untrained classifier sits near chance on balanced labels") {
    Rng rng(9);
    LabeledStateSet train, test;
    for (int i = 0; i < 60; ++i) {
        train.states.push_back(oracle::random_state(2, rng));
        train.labels.push_back(i % 2);
    }
    test = train;

    ClassifierConfig config;
    config.n_qubits = 2;
    config.copies = 1;
    config.epochs = 0;
    config.restarts = 1;
    config.seed = 3;
    TrainedClassifier t = train_classifier_presplit(config, train, test);
    CHECK(t.train_accuracy > 0.25);
    CHECK(t.train_accuracy < 0.75);
}

TEST_CASE("the trainer's cached finite differences match the black-box path") {
    // one ADAM epoch through the trainer must equal a step assembled from the
    // generic grad_fd over full-circuit simulations plus the analytic head
    Rng rng(77);
    LabeledStateSet train;
    for (int i = 0; i < 8; ++i) {
        train.states.push_back(oracle::random_state(2, rng));
        train.labels.push_back(i % 2);
    }

    ClassifierConfig config;
    config.n_qubits = 2;
    config.copies = 2;
    config.epochs = 1;
    config.restarts = 1;
    config.seed = 31;
    config.lr = 0.05;
    TrainedClassifier stepped = train_classifier_presplit(config, train, train);

    // reproduce the restart initialization
    const int width = 4;
    const size_t q_dim = qcnn_param_count(width);
    Rng init = derive_stream(mix_seed(config.seed, 0x636c6673ull), 0);
    ClassifierModel model;
    model.n_qubits = 2;
    model.copies = 2;
    model.qcnn_params.resize(q_dim);
    for (double& p : model.qcnn_params) {
        p = init.angle();
    }
    model.measured_qubits = build_qcnn(width, model.qcnn_params).measured_qubits;
    model.weights.resize(4);
    for (double& w : model.weights) {
        w = init.uniform(-1.0, 1.0);
    }
    model.bias = 0.0;

    LossFn quantum_loss = [&](std::span<const double> qp) {
        ClassifierModel probe = model;
        probe.qcnn_params.assign(qp.begin(), qp.end());
        double acc = 0.0;
        for (size_t i = 0; i < train.states.size(); ++i) {
            double d = forward(probe, train.states[i]) - train.labels[i];
            acc += d * d;
        }
        return acc / static_cast<double>(train.states.size());
    };
    std::vector<double> grad(q_dim + 4 + 1);
    std::vector<double> q_grad = grad_fd(quantum_loss, model.qcnn_params, config.fd_step);
    std::copy(q_grad.begin(), q_grad.end(), grad.begin());
    auto [dw, db] = head_gradient(model, train);
    std::copy(dw.begin(), dw.end(), grad.begin() + q_dim);
    grad[q_dim + 4] = db;

    std::vector<double> joint(q_dim + 4 + 1);
    std::copy(model.qcnn_params.begin(), model.qcnn_params.end(), joint.begin());
    std::copy(model.weights.begin(), model.weights.end(), joint.begin() + q_dim);
    joint[q_dim + 4] = model.bias;
    AdamState adam = AdamState::init(joint.size(), config.lr);
    adam_step_inplace(adam, joint, grad);

    // ADAM's first step is lr * g / (|g| + eps); where |g| ~ eps the step
    // amplifies 1e-12-scale float-order differences between the two FD paths
    // by ~1e6, so the comparison is loose-ish. A wrong block or prefix would
    // show up at the full step size (5e-2).
    for (size_t k = 0; k < q_dim; ++k) {
        CHECK(std::abs(stepped.model.qcnn_params[k] - joint[k]) < 1e-4);
    }
    for (size_t z = 0; z < 4; ++z) {
        CHECK(std::abs(stepped.model.weights[z] - joint[q_dim + z]) < 1e-9);
    }
    CHECK(std::abs(stepped.model.bias - joint[q_dim + 4]) < 1e-9);
}

TEST_CASE("split_labeled is deterministic and respects the fraction") {
    Rng rng(10);
    LabeledStateSet class0, class1;
    for (int i = 0; i < 10; ++i) {
        class0.states.push_back(oracle::random_state(2, rng));
        class0.labels.push_back(0);
        class1.states.push_back(oracle::random_state(2, rng));
        class1.labels.push_back(1);
    }
    auto [train_a, test_a] = split_labeled(class0, class1, 0.7, 99);
    auto [train_b, test_b] = split_labeled(class0, class1, 0.7, 99);
    CHECK(train_a.states.size() == 14);
    CHECK(test_a.states.size() == 6);
    CHECK(train_a.labels == train_b.labels);
    for (size_t i = 0; i < train_a.states.size(); ++i) {
        CHECK(train_a.states[i].amps == train_b.states[i].amps);
    }
}

TEST_SUITE_END();
