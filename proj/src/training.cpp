#include "ntangled/training.hpp"

#include "ntangled/entanglement.hpp"
#include "ntangled/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace ntangled {

AdamState AdamState::init(size_t dim, double lr, double beta1, double beta2, double eps) {
    AdamState s;
    s.m.assign(dim, 0.0);
    s.v.assign(dim, 0.0);
    s.lr = lr;
    s.beta1 = beta1;
    s.beta2 = beta2;
    s.eps = eps;
    return s;
}

void adam_step_inplace(AdamState& state, std::vector<double>& params,
                       std::span<const double> grad) {
    if (params.size() != state.m.size() || grad.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: dimension mismatch");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (size_t k = 0; k < params.size(); ++k) {
        state.m[k] = state.beta1 * state.m[k] + (1.0 - state.beta1) * grad[k];
        state.v[k] = state.beta2 * state.v[k] + (1.0 - state.beta2) * grad[k] * grad[k];
        double m_hat = state.m[k] / bc1;
        double v_hat = state.v[k] / bc2;
        params[k] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

std::pair<AdamState, std::vector<double>> adam_step(const AdamState& state,
                                                    std::span<const double> params,
                                                    std::span<const double> grad) {
    AdamState next = state;
    std::vector<double> p(params.begin(), params.end());
    adam_step_inplace(next, p, grad);
    return {std::move(next), std::move(p)};
}

std::vector<double> grad_fd(const LossFn& loss, std::span<const double> params, double h) {
    if (h <= 0.0) {
        throw std::invalid_argument("grad_fd: step must be positive");
    }
    const size_t dim = params.size();
    std::vector<double> values(2 * dim);
    parallel_for(2 * dim, [&](size_t idx) {
        size_t k = idx / 2;
        double sign = (idx % 2 == 0) ? 1.0 : -1.0;
        std::vector<double> p(params.begin(), params.end());
        p[k] += sign * h;
        values[idx] = loss(p);
    });
    std::vector<double> grad(dim);
    for (size_t k = 0; k < dim; ++k) {
        grad[k] = (values[2 * k] - values[2 * k + 1]) / (2.0 * h);
    }
    return grad;
}

double circuit_ce_loss(const CompiledCircuit& circuit, std::span<const StateVector> inputs,
                       double xi, double c1, double c2) {
    if (inputs.empty()) {
        throw std::invalid_argument("circuit_ce_loss: empty training set");
    }
    double total = 0.0;
    for (const StateVector& in : inputs) {
        StateVector out = in;
        circuit.apply_inplace(out);
        double diff = concentratable_entanglement(out) - xi;
        total += c1 * diff * diff;
        if (c2 != 0.0) {
            total += c2 * n_tangle(out);
        }
    }
    return total / static_cast<double>(inputs.size());
}

static CompiledCircuit compile_generator(const GenTrainConfig& config,
                                         std::span<const double> params) {
    return CompiledCircuit(build_ansatz(config.ansatz, config.n_qubits, config.layers, params,
                                        config.independent_second_round));
}

double gen_loss(std::span<const double> params, const GenTrainConfig& config,
                std::span<const StateVector> train_states) {
    return circuit_ce_loss(compile_generator(config, params), train_states, config.target_ce,
                           1.0, 0.0);
}

double gen_loss_tangle(std::span<const double> params, const GenTrainConfig& config,
                       std::span<const StateVector> train_states) {
    if (config.c2 != 0.0 && config.n_qubits % 2 != 0) {
        throw std::invalid_argument("gen_loss_tangle: tangle penalty needs an even qubit count");
    }
    return circuit_ce_loss(compile_generator(config, params), train_states, config.target_ce,
                           config.c1, config.c2);
}

namespace {

struct RestartResult {
    std::vector<double> params;
    double final_loss = 0.0;
    std::vector<double> loss_history;
};

RestartResult run_restart(const GenTrainConfig& config, std::span<const StateVector> train,
                          int restart) {
    const size_t dim = ansatz_param_count(config.ansatz, config.n_qubits, config.layers,
                                          config.independent_second_round);
    Rng rng = derive_stream(config.seed, static_cast<uint64_t>(restart));
    RestartResult r;
    r.params.resize(dim);
    for (double& p : r.params) {
        p = rng.angle();
    }

    const bool with_tangle = config.c2 != 0.0;
    auto loss_at = [&](std::span<const double> p) {
        return with_tangle ? gen_loss_tangle(p, config, train) : gen_loss(p, config, train);
    };

    AdamState adam = AdamState::init(dim, config.lr);
    double loss = loss_at(r.params);
    r.loss_history.push_back(loss);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.stop_below_loss > 0.0 && loss <= config.stop_below_loss) {
            break;
        }
        std::vector<double> grad = grad_fd(loss_at, r.params, config.fd_step);
        adam_step_inplace(adam, r.params, grad);
        loss = loss_at(r.params);
        r.loss_history.push_back(loss);
    }
    r.final_loss = loss;
    return r;
}

} // namespace

TrainedGenerator train_generator(const GenTrainConfig& config) {
    if (config.restarts < 1) {
        throw std::invalid_argument("train_generator: needs at least one restart");
    }
    std::vector<StateVector> train = draw_training_set(config.inputs);

    std::vector<RestartResult> results(config.restarts);
    parallel_for(static_cast<size_t>(config.restarts), [&](size_t r) {
        results[r] = run_restart(config, train, static_cast<int>(r));
    });

    int best = 0;
    for (int r = 1; r < config.restarts; ++r) {
        if (results[r].final_loss < results[best].final_loss) {
            best = r;
        }
    }

    TrainedGenerator out;
    out.config = config;
    out.params = std::move(results[best].params);
    out.final_loss = results[best].final_loss;
    out.loss_history = std::move(results[best].loss_history);
    out.restart_index = best;
    return out;
}

GenEvalReport evaluate_generator(const TrainedGenerator& model, const InputDistribution& test_dist,
                                 size_t count, double delta) {
    if (count < 1) {
        throw std::invalid_argument("evaluate_generator: count must be >= 1");
    }
    CompiledCircuit circuit = compile_generator(model.config, model.params);
    const uint64_t eval_seed = mix_seed(test_dist.seed, 0x65766c75ull); // "evlu"

    GenEvalReport report;
    report.ce_values.resize(count);
    parallel_for(count, [&](size_t i) {
        Rng rng = derive_stream(eval_seed, i);
        StateVector out = sample_input(test_dist, rng);
        circuit.apply_inplace(out);
        report.ce_values[i] = concentratable_entanglement(out);
    });

    size_t hits = 0;
    double mean = 0.0;
    for (double ce : report.ce_values) {
        if (std::abs(ce - model.config.target_ce) <= delta) {
            ++hits;
        }
        mean += ce;
    }
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (double ce : report.ce_values) {
        var += (ce - mean) * (ce - mean);
    }
    report.success_fraction = static_cast<double>(hits) / static_cast<double>(count);
    report.ce_mean = mean;
    report.ce_std = std::sqrt(var / static_cast<double>(count));
    return report;
}

} // namespace ntangled
