#pragma once

#include "ntangled/ansatz.hpp"
#include "ntangled/sampling.hpp"

#include <functional>
#include <span>
#include <vector>

namespace ntangled {

struct AdamState {
    std::vector<double> m, v;
    long t = 0;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(size_t dim, double lr = 0.01, double beta1 = 0.9,
                          double beta2 = 0.999, double eps = 1e-8);
};

/// Standard ADAM update with bias correction, in place.
void adam_step_inplace(AdamState& state, std::vector<double>& params,
                       std::span<const double> grad);

/// Pure version returning (state', params').
std::pair<AdamState, std::vector<double>> adam_step(const AdamState& state,
                                                    std::span<const double> params,
                                                    std::span<const double> grad);

using LossFn = std::function<double(std::span<const double>)>;

/// Central finite differences, one coordinate at a time:
/// (loss(p + h e_k) - loss(p - h e_k)) / (2h). The 2P evaluations run in
/// parallel; the result is independent of the thread count.
std::vector<double> grad_fd(const LossFn& loss, std::span<const double> params, double h);

struct GenTrainConfig {
    AnsatzKind ansatz = AnsatzKind::HWE;
    int n_qubits = 3;
    int layers = 1;
    bool independent_second_round = false;
    double target_ce = 0.0;     // xi
    double delta = 0.1;         // success half-width
    double c1 = 1.0, c2 = 0.0;  // loss weights; c2 != 0 adds the tangle penalty
    InputDistribution inputs;
    int epochs = 300;
    int restarts = 50;
    uint64_t seed = 0;
    double fd_step = 1e-4;
    double lr = 0.01;
    /// When > 0, a restart stops stepping once its training loss drops below
    /// this (the winner is still the minimum over all restarts).
    double stop_below_loss = 0.0;
};

/// Mean over the training set of c1*(CE(out) - xi)^2 + c2*tangle(out) for the
/// given circuit. The losses and the trainer all route through here.
double circuit_ce_loss(const CompiledCircuit& circuit, std::span<const StateVector> inputs,
                       double xi, double c1, double c2);

/// Mean squared CE error (c1 = 1, c2 = 0).
double gen_loss(std::span<const double> params, const GenTrainConfig& config,
                std::span<const StateVector> train_states);

/// CE error plus n-Tangle penalty; requires even n when c2 != 0.
double gen_loss_tangle(std::span<const double> params, const GenTrainConfig& config,
                       std::span<const StateVector> train_states);

struct TrainedGenerator {
    GenTrainConfig config;
    std::vector<double> params;
    double final_loss = 0.0;
    std::vector<double> loss_history; // winning restart, length epochs_run + 1
    int restart_index = -1;
};

/// Multi-restart ADAM on gen_loss (or gen_loss_tangle when c2 != 0). Restart
/// r initializes its parameters uniformly in [0, 2pi) from
/// derive_stream(seed, r); the restart with the smallest final training loss
/// wins (ties: lowest index). Restarts run concurrently; the result does not
/// depend on the thread count.
TrainedGenerator train_generator(const GenTrainConfig& config);

struct GenEvalReport {
    double success_fraction = 0.0;
    std::vector<double> ce_values;
    double ce_mean = 0.0;
    double ce_std = 0.0;
};

/// Samples `count` fresh inputs from `test_dist` (streams
/// derive_stream(mix_seed(seed,"eval"), i)), runs them through the trained
/// circuit and scores |CE - xi| <= delta.
GenEvalReport evaluate_generator(const TrainedGenerator& model, const InputDistribution& test_dist,
                                 size_t count, double delta);

} // namespace ntangled
