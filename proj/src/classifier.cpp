#include "ntangled/classifier.hpp"

#include "ntangled/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ntangled {

namespace {

double sigmoid(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

StateVector m_copies(const StateVector& state, int m) {
    StateVector out = state;
    for (int i = 1; i < m; ++i) {
        out = kron(out, state);
    }
    return out;
}

// p(z) over the measured qubits of an already-widened register.
void marginals(const StateVector& reg, const std::vector<int>& measured, std::vector<double>& p) {
    const int width = reg.n_qubits;
    const int r = static_cast<int>(measured.size());
    p.assign(size_t{1} << r, 0.0);
    for (uint64_t x = 0; x < reg.dim(); ++x) {
        uint64_t z = 0;
        for (int j = 0; j < r; ++j) {
            z = (z << 1) | ((x >> (width - 1 - measured[j])) & 1);
        }
        p[z] += std::norm(reg.amps[x]);
    }
}

double head(const std::vector<double>& weights, double bias, const std::vector<double>& p) {
    double acc = bias;
    for (size_t z = 0; z < p.size(); ++z) {
        acc += weights[z] * p[z];
    }
    return sigmoid(acc);
}

void check_model(const ClassifierModel& model, const StateVector& state) {
    if (state.n_qubits != model.n_qubits) {
        throw std::invalid_argument("classifier: state width mismatch");
    }
    if (model.weights.size() != (size_t{1} << model.measured_qubits.size())) {
        throw std::invalid_argument("classifier: weight count mismatch");
    }
}

} // namespace

std::vector<double> measurement_probabilities(const ClassifierModel& model,
                                              const StateVector& state) {
    check_model(model, state);
    QcnnCircuit qcnn = build_qcnn(model.n_qubits * model.copies, model.qcnn_params);
    StateVector reg = m_copies(state, model.copies);
    CompiledCircuit(qcnn.circuit).apply_inplace(reg);
    std::vector<double> p;
    marginals(reg, model.measured_qubits, p);
    return p;
}

double forward(const ClassifierModel& model, const StateVector& state) {
    return head(model.weights, model.bias, measurement_probabilities(model, state));
}

int classify(const ClassifierModel& model, const StateVector& state) {
    return forward(model, state) >= 0.5 ? 1 : 0;
}

double clf_loss(const ClassifierModel& model, const LabeledStateSet& set) {
    if (set.states.empty()) {
        throw std::invalid_argument("clf_loss: empty set");
    }
    double mse = 0.0;
    for (size_t i = 0; i < set.states.size(); ++i) {
        double d = forward(model, set.states[i]) - set.labels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(set.states.size());
    double l1 = 0.0;
    for (double w : model.weights) {
        l1 += std::abs(w);
    }
    return mse + model.lambda * l1;
}

double accuracy(const ClassifierModel& model, const LabeledStateSet& set) {
    if (set.states.empty()) {
        throw std::invalid_argument("accuracy: empty set");
    }
    size_t hits = 0;
    for (size_t i = 0; i < set.states.size(); ++i) {
        hits += classify(model, set.states[i]) == set.labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(set.states.size());
}

namespace {

// d/dw and d/db of MSE(yhat, y) + lambda*||w||_1 given cached probabilities.
void accumulate_head_gradient(const std::vector<std::vector<double>>& probs,
                              const std::vector<double>& yhat, const std::vector<int>& labels,
                              const std::vector<double>& weights, double lambda,
                              std::vector<double>& dw, double& db) {
    const size_t w_dim = weights.size();
    dw.assign(w_dim, 0.0);
    db = 0.0;
    const double inv_n = 1.0 / static_cast<double>(yhat.size());
    for (size_t i = 0; i < yhat.size(); ++i) {
        double factor = 2.0 * (yhat[i] - labels[i]) * yhat[i] * (1.0 - yhat[i]) * inv_n;
        for (size_t z = 0; z < w_dim; ++z) {
            dw[z] += factor * probs[i][z];
        }
        db += factor;
    }
    for (size_t z = 0; z < w_dim; ++z) {
        if (weights[z] > 0) {
            dw[z] += lambda;
        } else if (weights[z] < 0) {
            dw[z] -= lambda;
        }
    }
}

} // namespace

std::pair<std::vector<double>, double> head_gradient(const ClassifierModel& model,
                                                     const LabeledStateSet& set) {
    if (set.states.empty()) {
        throw std::invalid_argument("head_gradient: empty set");
    }
    std::vector<std::vector<double>> probs(set.states.size());
    std::vector<double> yhat(set.states.size());
    for (size_t i = 0; i < set.states.size(); ++i) {
        probs[i] = measurement_probabilities(model, set.states[i]);
        yhat[i] = head(model.weights, model.bias, probs[i]);
    }
    std::vector<double> dw;
    double db = 0.0;
    accumulate_head_gradient(probs, yhat, set.labels, model.weights, model.lambda, dw, db);
    return {std::move(dw), db};
}

namespace {

// Training works on pre-widened registers so the m-fold kron happens once.
struct PreparedSet {
    std::vector<StateVector> regs;
    std::vector<int> labels;
};

PreparedSet prepare(const LabeledStateSet& set, int copies) {
    PreparedSet out;
    out.regs.reserve(set.states.size());
    for (const auto& s : set.states) {
        out.regs.push_back(m_copies(s, copies));
    }
    out.labels = set.labels;
    return out;
}

struct EvalCache {
    std::vector<std::vector<double>> probs; // per state
    std::vector<double> yhat;
};

double mse_of(const EvalCache& cache, const std::vector<int>& labels) {
    double acc = 0.0;
    for (size_t i = 0; i < cache.yhat.size(); ++i) {
        double d = cache.yhat[i] - labels[i];
        acc += d * d;
    }
    return acc / static_cast<double>(cache.yhat.size());
}

double acc_of(const EvalCache& cache, const std::vector<int>& labels) {
    size_t hits = 0;
    for (size_t i = 0; i < cache.yhat.size(); ++i) {
        hits += (cache.yhat[i] >= 0.5 ? 1 : 0) == labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(cache.yhat.size());
}

struct RestartOutcome {
    ClassifierModel model;
    std::vector<double> loss_history, train_acc_history, test_acc_history;
    double train_accuracy = 0.0, test_accuracy = 0.0, final_loss = 0.0;
};

RestartOutcome run_restart(const ClassifierConfig& config, const PreparedSet& train,
                           const PreparedSet& test, int restart) {
    const int width = config.n_qubits * config.copies;
    const std::vector<std::pair<int, int>> pairs = qcnn_block_pairs(width, config.keep);
    const size_t n_blocks = pairs.size();
    const size_t q_dim = n_blocks * 15;

    ClassifierModel model;
    model.n_qubits = config.n_qubits;
    model.copies = config.copies;
    model.lambda = config.lambda;
    {
        QcnnCircuit probe = build_qcnn(width, std::vector<double>(q_dim, 0.0), config.keep);
        model.measured_qubits = probe.measured_qubits;
    }
    const size_t w_dim = size_t{1} << model.measured_qubits.size();

    Rng rng = derive_stream(mix_seed(config.seed, 0x636c6673ull /* clfs */),
                            static_cast<uint64_t>(restart));
    model.qcnn_params.resize(q_dim);
    for (double& p : model.qcnn_params) {
        p = rng.angle();
    }
    model.weights.resize(w_dim);
    for (double& w : model.weights) {
        w = rng.uniform(-1.0, 1.0);
    }
    model.bias = 0.0;

    AdamState adam = AdamState::init(q_dim + w_dim + 1, config.lr);
    std::vector<double> joint(q_dim + w_dim + 1);

    RestartOutcome out;
    EvalCache train_cache, test_cache;

    // prefix[b][i] = train state i after blocks 0..b-1. A finite-difference
    // probe of one parameter re-enters the circuit at its own block instead
    // of re-simulating the whole QCNN.
    std::vector<std::array<cdouble, 16>> mats(n_blocks);
    std::vector<std::vector<StateVector>> prefix(n_blocks + 1);

    auto apply_block = [&](StateVector& reg, size_t b, const cdouble* m) {
        apply_two_qubit_matrix_inplace(reg, std::min(pairs[b].first, pairs[b].second),
                                       std::max(pairs[b].first, pairs[b].second), m);
    };

    auto refresh_caches = [&]() {
        for (size_t b = 0; b < n_blocks; ++b) {
            mats[b] = two_qubit_block_matrix(
                pairs[b].first, pairs[b].second,
                std::span<const double>(model.qcnn_params).subspan(15 * b, 15));
        }
        prefix[0] = train.regs;
        for (size_t b = 0; b < n_blocks; ++b) {
            prefix[b + 1] = prefix[b];
            for (auto& reg : prefix[b + 1]) {
                apply_block(reg, b, mats[b].data());
            }
        }
        const size_t n_train = train.regs.size();
        train_cache.probs.resize(n_train);
        train_cache.yhat.resize(n_train);
        for (size_t i = 0; i < n_train; ++i) {
            marginals(prefix[n_blocks][i], model.measured_qubits, train_cache.probs[i]);
            train_cache.yhat[i] = head(model.weights, model.bias, train_cache.probs[i]);
        }
        const size_t n_test = test.regs.size();
        test_cache.probs.resize(n_test);
        test_cache.yhat.resize(n_test);
        for (size_t i = 0; i < n_test; ++i) {
            StateVector reg = test.regs[i];
            for (size_t b = 0; b < n_blocks; ++b) {
                apply_block(reg, b, mats[b].data());
            }
            marginals(reg, model.measured_qubits, test_cache.probs[i]);
            test_cache.yhat[i] = head(model.weights, model.bias, test_cache.probs[i]);
        }
    };

    auto record = [&]() {
        double l1 = 0.0;
        for (double w : model.weights) {
            l1 += std::abs(w);
        }
        out.loss_history.push_back(mse_of(train_cache, train.labels) + config.lambda * l1);
        out.train_acc_history.push_back(acc_of(train_cache, train.labels));
        out.test_acc_history.push_back(acc_of(test_cache, test.labels));
    };

    // probe loss for theta[k] -> theta[k] + delta, from the cached prefixes
    auto probe_loss = [&](size_t k, double delta) {
        const size_t b = k / 15;
        std::array<double, 15> block_params;
        for (int t = 0; t < 15; ++t) {
            block_params[t] = model.qcnn_params[15 * b + t];
        }
        block_params[k % 15] += delta;
        std::array<cdouble, 16> pert =
            two_qubit_block_matrix(pairs[b].first, pairs[b].second, block_params);
        double acc = 0.0;
        std::vector<double> p;
        for (size_t i = 0; i < train.regs.size(); ++i) {
            StateVector reg = prefix[b][i];
            apply_block(reg, b, pert.data());
            for (size_t bb = b + 1; bb < n_blocks; ++bb) {
                apply_block(reg, bb, mats[bb].data());
            }
            marginals(reg, model.measured_qubits, p);
            double d = head(model.weights, model.bias, p) - train.labels[i];
            acc += d * d;
        }
        return acc / static_cast<double>(train.regs.size());
        // the lasso term is constant in the quantum parameters
    };

    for (int epoch = 0;; ++epoch) {
        refresh_caches();
        record();
        if (epoch == config.epochs) {
            break;
        }

        std::vector<double> grad(q_dim + w_dim + 1, 0.0);
        std::vector<double> probes(2 * q_dim);
        parallel_for(2 * q_dim, [&](size_t idx) {
            size_t k = idx / 2;
            double sign = (idx % 2 == 0) ? 1.0 : -1.0;
            probes[idx] = probe_loss(k, sign * config.fd_step);
        });
        for (size_t k = 0; k < q_dim; ++k) {
            grad[k] = (probes[2 * k] - probes[2 * k + 1]) / (2.0 * config.fd_step);
        }

        std::vector<double> dw;
        double db = 0.0;
        accumulate_head_gradient(train_cache.probs, train_cache.yhat, train.labels, model.weights,
                                 config.lambda, dw, db);
        std::copy(dw.begin(), dw.end(), grad.begin() + q_dim);
        grad[q_dim + w_dim] = db;

        std::copy(model.qcnn_params.begin(), model.qcnn_params.end(), joint.begin());
        std::copy(model.weights.begin(), model.weights.end(), joint.begin() + q_dim);
        joint[q_dim + w_dim] = model.bias;
        adam_step_inplace(adam, joint, grad);
        std::copy(joint.begin(), joint.begin() + q_dim, model.qcnn_params.begin());
        std::copy(joint.begin() + q_dim, joint.begin() + q_dim + w_dim, model.weights.begin());
        model.bias = joint[q_dim + w_dim];
    }

    out.model = std::move(model);
    out.train_accuracy = out.train_acc_history.back();
    out.test_accuracy = out.test_acc_history.back();
    out.final_loss = out.loss_history.back();
    return out;
}

} // namespace

TrainedClassifier train_classifier_presplit(const ClassifierConfig& config,
                                            const LabeledStateSet& train,
                                            const LabeledStateSet& test) {
    if (train.states.empty() || test.states.empty()) {
        throw std::invalid_argument("train_classifier: empty split");
    }
    auto has_both = [](const LabeledStateSet& s) {
        bool zero = false, one = false;
        for (int label : s.labels) {
            (label ? one : zero) = true;
        }
        return zero && one;
    };
    if (!has_both(train)) {
        throw std::invalid_argument("train_classifier: training split needs both classes");
    }

    PreparedSet prepared_train = prepare(train, config.copies);
    PreparedSet prepared_test = prepare(test, config.copies);

    std::vector<RestartOutcome> outcomes(config.restarts);
    parallel_for(static_cast<size_t>(config.restarts), [&](size_t r) {
        outcomes[r] = run_restart(config, prepared_train, prepared_test, static_cast<int>(r));
    });

    int best = 0;
    for (int r = 1; r < config.restarts; ++r) {
        const auto& a = outcomes[r];
        const auto& b = outcomes[best];
        if (a.train_accuracy > b.train_accuracy ||
            (a.train_accuracy == b.train_accuracy && a.final_loss < b.final_loss)) {
            best = r;
        }
    }

    TrainedClassifier out;
    out.model = std::move(outcomes[best].model);
    out.loss_history = std::move(outcomes[best].loss_history);
    out.train_acc_history = std::move(outcomes[best].train_acc_history);
    out.test_acc_history = std::move(outcomes[best].test_acc_history);
    out.train_accuracy = outcomes[best].train_accuracy;
    out.test_accuracy = outcomes[best].test_accuracy;
    out.restart_index = best;
    return out;
}

std::pair<LabeledStateSet, LabeledStateSet> split_labeled(const LabeledStateSet& class0,
                                                          const LabeledStateSet& class1,
                                                          double train_fraction, uint64_t seed) {
    LabeledStateSet train, test;
    train.provenance = class0.provenance + " | " + class1.provenance;
    test.provenance = train.provenance;

    auto add = [&](const LabeledStateSet& cls, int which) {
        const size_t n = cls.states.size();
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        Rng rng = derive_stream(mix_seed(seed, 0x73706c74ull /* splt */),
                                static_cast<uint64_t>(which));
        for (size_t i = n; i > 1; --i) { // Fisher-Yates
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        size_t cut = static_cast<size_t>(std::ceil(train_fraction * static_cast<double>(n)));
        for (size_t i = 0; i < n; ++i) {
            auto& dst = i < cut ? train : test;
            dst.states.push_back(cls.states[order[i]]);
            dst.labels.push_back(cls.labels[order[i]]);
        }
    };
    add(class0, 0);
    add(class1, 1);
    return {std::move(train), std::move(test)};
}

TrainedClassifier train_classifier(const ClassifierConfig& config, const LabeledStateSet& class0,
                                   const LabeledStateSet& class1) {
    auto [train, test] = split_labeled(class0, class1, config.train_fraction, config.seed);
    return train_classifier_presplit(config, train, test);
}

} // namespace ntangled
