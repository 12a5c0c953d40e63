#pragma once

#include "ntangled/ansatz.hpp"
#include "ntangled/training.hpp"

#include <span>
#include <string>
#include <vector>

namespace ntangled {

/// Supervised model: QCNN over m copies of the input state, exact
/// computational-basis probabilities on the surviving qubits, then a single
/// sigmoid node over those probabilities.
struct ClassifierModel {
    int n_qubits = 0; // per copy
    int copies = 2;   // m
    std::vector<double> qcnn_params;
    std::vector<int> measured_qubits; // ascending, from the QCNN schedule
    std::vector<double> weights;      // one per measured bitstring (2^r)
    double bias = 0.0;
    double lambda = 0.0; // lasso weight on `weights`
};

struct LabeledStateSet {
    std::vector<StateVector> states;
    std::vector<int> labels; // 0/1
    std::string provenance;
};

/// Exact marginal p(z) over the measured qubits for one input copy-state
/// (the m-fold tensor power is built internally).
std::vector<double> measurement_probabilities(const ClassifierModel& model,
                                              const StateVector& state);

/// sig(sum_z w_z p(z) + b), in (0, 1).
double forward(const ClassifierModel& model, const StateVector& state);

/// Label 1 iff forward >= 0.5.
int classify(const ClassifierModel& model, const StateVector& state);

/// Mean squared error plus lambda * ||w||_1.
double clf_loss(const ClassifierModel& model, const LabeledStateSet& set);

double accuracy(const ClassifierModel& model, const LabeledStateSet& set);

/// Exact gradient of clf_loss with respect to (weights, bias), lasso
/// subgradient included (sign(0) taken as 0). The trainer uses this same
/// path for the classical head.
std::pair<std::vector<double>, double> head_gradient(const ClassifierModel& model,
                                                     const LabeledStateSet& set);

struct ClassifierConfig {
    int n_qubits = 3;
    int copies = 2;
    int keep = 2; // qubits surviving the QCNN pooling
    double lambda = 0.0;
    int epochs = 60;
    int restarts = 15;
    uint64_t seed = 0;
    double lr = 0.05;
    double fd_step = 1e-4;
    double train_fraction = 0.7;
};

struct TrainedClassifier {
    ClassifierModel model;
    std::vector<double> loss_history;      // training loss per epoch (incl. epoch 0)
    std::vector<double> train_acc_history; // same indexing
    std::vector<double> test_acc_history;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    int restart_index = -1;
};

/// Joint ADAM over (qcnn params, w, b): quantum parameters by central finite
/// differences, the classical head by its exact gradient. The restart with
/// the highest final training accuracy wins (ties: lower loss, then index).
TrainedClassifier train_classifier_presplit(const ClassifierConfig& config,
                                            const LabeledStateSet& train,
                                            const LabeledStateSet& test);

/// Convenience wrapper over the two class sets: each class is shuffled by the
/// run seed and split train_fraction/(1 - train_fraction), then merged.
TrainedClassifier train_classifier(const ClassifierConfig& config, const LabeledStateSet& class0,
                                   const LabeledStateSet& class1);

/// Seeded per-class split used by train_classifier, exposed for the CLI.
std::pair<LabeledStateSet, LabeledStateSet> split_labeled(const LabeledStateSet& class0,
                                                          const LabeledStateSet& class1,
                                                          double train_fraction, uint64_t seed);

} // namespace ntangled
