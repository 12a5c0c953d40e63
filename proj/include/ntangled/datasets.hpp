#pragma once

#include "ntangled/classifier.hpp"
#include "ntangled/training.hpp"

#include <string>
#include <vector>

namespace ntangled {

/// On-disk description of a generator: circuit recipe + trained parameters +
/// enough provenance to regenerate every reported metric. Parameters are
/// stored as decimal strings with 17 significant digits so the round trip is
/// exact.
struct GeneratorModelFile {
    int format_version = 1;
    std::string kind = "ntangled"; // "ntangled" | "depth"
    AnsatzKind ansatz = AnsatzKind::HWE;
    int n_qubits = 0;
    int layers = 0;
    bool independent_second_round = false;
    std::vector<size_t> param_shape;
    std::vector<double> params;
    double target_ce = 0.0;
    double delta = 0.1;
    InputDistribution inputs;
    uint64_t seed = 0;
    // achieved metrics
    double final_loss = 0.0;
    int restart_index = -1;
    double success_rate = 0.0;
    double ce_mean = 0.0;
    double ce_std = 0.0;
};

void save_model(const GeneratorModelFile& model, const std::string& path);
GeneratorModelFile load_model(const std::string& path);

GeneratorModelFile model_from_trained(const TrainedGenerator& trained, const GenEvalReport& eval);
TrainedGenerator trained_from_model(const GeneratorModelFile& model);

/// Draws `count` inputs from `dist` (streams derive_stream(mix_seed(dist.seed,
/// "gen"), i)), pushes them through the model circuit and pairs each output
/// with its CE.
std::vector<std::pair<StateVector, double>> generate_ntangled(const GeneratorModelFile& model,
                                                              const InputDistribution& dist,
                                                              size_t count);

struct DepthClass {
    int depth = 1;   // layers L
    int label = 0;   // binary label after binning
    size_t count = 0;
};

/// Depth-based dataset: per class the layer parameters are drawn once from
/// the class stream and fixed; each sample only redraws the initial product
/// layer. resample_per_state redraws the layer parameters per sample too.
struct DepthDatasetSpec {
    int n_qubits = 0;
    std::vector<DepthClass> classes;
    uint64_t seed = 0;
    bool resample_per_state = false;
};

LabeledStateSet generate_depth_dataset(const DepthDatasetSpec& spec);

enum class StateFileFormat { AMPLITUDES_BINARY, CSV };

/// Binary layout: u32 little-endian qubit count, u32 little-endian state
/// count, then per state 2^n little-endian (re, im) float64 pairs.
/// CSV: header re_0,im_0,..., one state per row.
void export_states(std::span<const StateVector> states, const std::string& path,
                   StateFileFormat format);
std::vector<StateVector> import_states(const std::string& path);

} // namespace ntangled
