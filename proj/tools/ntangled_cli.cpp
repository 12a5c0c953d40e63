// Command-line front end: seeded, config-driven, file-in/file-out runs over
// the library. Every command writes its resolved configuration and a manifest
// of produced artifacts next to its outputs.

#include "ntangled/analysis.hpp"
#include "ntangled/classifier.hpp"
#include "ntangled/datasets.hpp"
#include "ntangled/density.hpp"
#include "ntangled/entanglement.hpp"
#include "ntangled/parallel.hpp"
#include "ntangled/training.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace ntangled;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct OutputDir {
    fs::path dir;
    std::vector<std::string> artifacts;

    explicit OutputDir(const std::string& out) : dir(out) {
        fs::create_directories(dir);
    }

    std::string file(const std::string& name) {
        artifacts.push_back(name);
        return (dir / name).string();
    }

    void write_json(const std::string& name, const json& j) {
        std::ofstream f(file(name));
        if (!f) {
            throw std::runtime_error("cannot write " + name);
        }
        f << j.dump(2) << "\n";
    }

    void finish() {
        json manifest;
        manifest["artifacts"] = artifacts;
        std::ofstream f((dir / "manifest.json").string());
        f << manifest.dump(2) << "\n";
    }
};

json distribution_json(const InputDistribution& d) {
    json j;
    j["kind"] = to_string(d.kind);
    j["n_qubits"] = d.n_qubits;
    j["size"] = d.size;
    j["seed"] = d.seed;
    if (d.kind == InputKind::EPSILON_BALL) {
        j["epsilon"] = d.epsilon;
    }
    if (d.kind == InputKind::COMPUTATIONAL_BASIS) {
        j["random_basis"] = d.random_basis;
    }
    return j;
}

void write_ce_csv(const std::string& path, std::span<const double> values) {
    std::ofstream f(path);
    f << "index,ce\n";
    for (size_t i = 0; i < values.size(); ++i) {
        f << i << "," << values[i] << "\n";
    }
}

StateFileFormat format_from_string(const std::string& name) {
    if (name == "binary") {
        return StateFileFormat::AMPLITUDES_BINARY;
    }
    if (name == "csv") {
        return StateFileFormat::CSV;
    }
    throw CLI::ValidationError("--format", "expected binary or csv");
}

LabeledStateSet load_class(const std::string& path, int label) {
    LabeledStateSet set;
    set.states = import_states(path);
    set.labels.assign(set.states.size(), label);
    set.provenance = path;
    return set;
}

// ---------------------------------------------------------------------------

struct TrainGeneratorArgs {
    std::string ansatz = "hwe";
    int qubits = 3;
    int layers = 1;
    double target_ce = 0.25;
    double delta = 0.1;
    std::string inputs = "product";
    int train_size = -1; // default depends on the distribution
    int epochs = 300;
    int restarts = 50;
    uint64_t seed = 0;
    double lr = 0.05;
    double fd_step = 1e-4;
    double c1 = 1.0, c2 = 0.0;
    double stop_loss = 1e-5;
    double epsilon = 0.1;
    bool independent_second_round = false;
    std::string test_inputs = "product";
    int eval_count = 500;
    std::string out = "out";
};

int run_train_generator(const TrainGeneratorArgs& a) {
    GenTrainConfig config;
    config.ansatz = ansatz_from_string(a.ansatz);
    config.n_qubits = a.qubits;
    config.layers = a.layers;
    config.independent_second_round = a.independent_second_round;
    config.target_ce = a.target_ce;
    config.delta = a.delta;
    config.c1 = a.c1;
    config.c2 = a.c2;
    config.inputs.kind = input_kind_from_string(a.inputs);
    config.inputs.n_qubits = a.qubits;
    config.inputs.epsilon = a.epsilon;
    config.inputs.seed = a.seed;
    if (a.train_size > 0) {
        config.inputs.size = static_cast<size_t>(a.train_size);
    } else if (config.inputs.kind == InputKind::COMPUTATIONAL_BASIS) {
        config.inputs.size = static_cast<size_t>(a.qubits) + 1;
    } else {
        config.inputs.size = static_cast<size_t>(a.qubits) * a.qubits + 1;
    }
    config.epochs = a.epochs;
    config.restarts = a.restarts;
    config.seed = a.seed;
    config.lr = a.lr;
    config.fd_step = a.fd_step;
    config.stop_below_loss = a.stop_loss;

    OutputDir out(a.out);
    json resolved;
    resolved["command"] = "train-generator";
    resolved["ansatz"] = a.ansatz;
    resolved["qubits"] = a.qubits;
    resolved["layers"] = a.layers;
    resolved["target_ce"] = a.target_ce;
    resolved["delta"] = a.delta;
    resolved["c1"] = a.c1;
    resolved["c2"] = a.c2;
    resolved["inputs"] = distribution_json(config.inputs);
    resolved["epochs"] = a.epochs;
    resolved["restarts"] = a.restarts;
    resolved["seed"] = a.seed;
    resolved["lr"] = a.lr;
    resolved["fd_step"] = a.fd_step;
    resolved["stop_loss"] = a.stop_loss;
    resolved["independent_second_round"] = a.independent_second_round;
    resolved["test_inputs"] = a.test_inputs;
    resolved["eval_count"] = a.eval_count;
    resolved["threads"] = max_threads();
    out.write_json("resolved_config.json", resolved);

    TrainedGenerator trained = train_generator(config);

    InputDistribution test_dist = config.inputs;
    test_dist.kind = input_kind_from_string(a.test_inputs);
    GenEvalReport eval = evaluate_generator(trained, test_dist, a.eval_count, a.delta);

    GeneratorModelFile model = model_from_trained(trained, eval);
    save_model(model, out.file("model.json"));

    json report;
    report["final_loss"] = trained.final_loss;
    report["restart_index"] = trained.restart_index;
    report["epochs_run"] = trained.loss_history.size() - 1;
    report["loss_history"] = trained.loss_history;
    report["success"] = eval.success_fraction;
    report["ce_mean"] = eval.ce_mean;
    report["ce_std"] = eval.ce_std;
    report["test_inputs"] = a.test_inputs;
    report["eval_count"] = a.eval_count;
    out.write_json("report.json", report);
    out.finish();

    std::cout << "success=" << eval.success_fraction << " final_loss=" << trained.final_loss
              << " model=" << (fs::path(a.out) / "model.json").string() << "\n";
    return 0;
}

int run_eval_generator(const std::string& model_path, int count, double delta_override,
                       const std::string& test_inputs, uint64_t seed, const std::string& outp) {
    GeneratorModelFile model = load_model(model_path);
    TrainedGenerator trained = trained_from_model(model);
    double delta = delta_override >= 0 ? delta_override : model.delta;

    InputDistribution dist = model.inputs;
    dist.kind = input_kind_from_string(test_inputs);
    dist.seed = seed;

    GenEvalReport eval = evaluate_generator(trained, dist, count, delta);

    OutputDir out(outp);
    json resolved;
    resolved["command"] = "eval-generator";
    resolved["model"] = model_path;
    resolved["count"] = count;
    resolved["delta"] = delta;
    resolved["test_inputs"] = test_inputs;
    resolved["seed"] = seed;
    out.write_json("resolved_config.json", resolved);

    json report;
    report["success"] = eval.success_fraction;
    report["ce_mean"] = eval.ce_mean;
    report["ce_std"] = eval.ce_std;
    out.write_json("report.json", report);
    write_ce_csv(out.file("ce_values.csv"), eval.ce_values);
    out.finish();

    std::cout << "success=" << eval.success_fraction << " ce_mean=" << eval.ce_mean << "\n";
    return 0;
}

int run_gen_dataset(const std::string& model_path, int count, uint64_t seed,
                    const std::string& format, const std::string& outp) {
    GeneratorModelFile model = load_model(model_path);
    InputDistribution dist = model.inputs;
    dist.seed = seed;
    auto pairs = generate_ntangled(model, dist, count);

    std::vector<StateVector> states;
    std::vector<double> ces;
    states.reserve(pairs.size());
    for (auto& [s, ce] : pairs) {
        states.push_back(std::move(s));
        ces.push_back(ce);
    }

    OutputDir out(outp);
    json resolved;
    resolved["command"] = "gen-dataset";
    resolved["model"] = model_path;
    resolved["count"] = count;
    resolved["seed"] = seed;
    resolved["format"] = format;
    out.write_json("resolved_config.json", resolved);

    StateFileFormat fmt = format_from_string(format);
    export_states(states, out.file(fmt == StateFileFormat::CSV ? "states.csv" : "states.bin"), fmt);
    write_ce_csv(out.file("ce_values.csv"), ces);
    out.finish();

    std::cout << "wrote " << states.size() << " states\n";
    return 0;
}

int run_depth_dataset(int qubits, const std::vector<int>& depths, const std::vector<int>& labels,
                      const std::vector<int>& counts, uint64_t seed, bool resample,
                      const std::string& format, const std::string& outp) {
    if (depths.size() != counts.size() || (!labels.empty() && labels.size() != depths.size())) {
        throw CLI::ValidationError("--depths/--labels/--counts", "lists must have equal length");
    }
    DepthDatasetSpec spec;
    spec.n_qubits = qubits;
    spec.seed = seed;
    spec.resample_per_state = resample;
    for (size_t i = 0; i < depths.size(); ++i) {
        int label = labels.empty() ? static_cast<int>(i != 0) : labels[i];
        spec.classes.push_back({depths[i], label, static_cast<size_t>(counts[i])});
    }

    LabeledStateSet set = generate_depth_dataset(spec);

    OutputDir out(outp);
    json resolved;
    resolved["command"] = "depth-dataset";
    resolved["qubits"] = qubits;
    resolved["depths"] = depths;
    resolved["counts"] = counts;
    resolved["seed"] = seed;
    resolved["resample_per_state"] = resample;
    resolved["format"] = format;
    out.write_json("resolved_config.json", resolved);

    StateFileFormat fmt = format_from_string(format);
    const char* ext = fmt == StateFileFormat::CSV ? "csv" : "bin";
    size_t offset = 0;
    for (size_t i = 0; i < spec.classes.size(); ++i) {
        const auto& cls = spec.classes[i];
        std::span<const StateVector> slice(set.states.data() + offset, cls.count);
        export_states(slice, out.file("class_L" + std::to_string(cls.depth) + "." + ext), fmt);
        offset += cls.count;
    }
    {
        std::ofstream f(out.file("labels.csv"));
        f << "index,depth,label\n";
        size_t idx = 0;
        for (const auto& cls : spec.classes) {
            for (size_t k = 0; k < cls.count; ++k) {
                f << idx++ << "," << cls.depth << "," << cls.label << "\n";
            }
        }
    }
    out.finish();

    std::cout << "wrote " << set.states.size() << " states in " << spec.classes.size()
              << " classes\n";
    return 0;
}

int run_train_classifier(const std::string& class0_path, const std::string& class1_path,
                         int copies, int keep, int epochs, int restarts, double lr, double lambda,
                         double fd_step, double train_fraction, uint64_t seed,
                         const std::string& outp) {
    LabeledStateSet class0 = load_class(class0_path, 0);
    LabeledStateSet class1 = load_class(class1_path, 1);
    if (class0.states.empty() || class1.states.empty()) {
        throw std::runtime_error("both class files must contain states");
    }

    ClassifierConfig config;
    config.n_qubits = class0.states[0].n_qubits;
    config.copies = copies;
    config.keep = keep;
    config.lambda = lambda;
    config.epochs = epochs;
    config.restarts = restarts;
    config.seed = seed;
    config.lr = lr;
    config.fd_step = fd_step;
    config.train_fraction = train_fraction;

    OutputDir out(outp);
    json resolved;
    resolved["command"] = "train-classifier";
    resolved["class0"] = class0_path;
    resolved["class1"] = class1_path;
    resolved["n_qubits"] = config.n_qubits;
    resolved["copies"] = copies;
    resolved["keep"] = keep;
    resolved["epochs"] = epochs;
    resolved["restarts"] = restarts;
    resolved["lr"] = lr;
    resolved["lambda"] = lambda;
    resolved["fd_step"] = fd_step;
    resolved["train_fraction"] = train_fraction;
    resolved["seed"] = seed;
    out.write_json("resolved_config.json", resolved);

    TrainedClassifier trained = train_classifier(config, class0, class1);

    json model_json;
    model_json["format_version"] = 1;
    model_json["kind"] = "classifier";
    model_json["n_qubits"] = trained.model.n_qubits;
    model_json["copies"] = trained.model.copies;
    model_json["measured_qubits"] = trained.model.measured_qubits;
    {
        json params = json::array();
        char buf[40];
        for (double p : trained.model.qcnn_params) {
            std::snprintf(buf, sizeof(buf), "%.17g", p);
            params.push_back(std::string(buf));
        }
        model_json["qcnn_params"] = std::move(params);
        json weights = json::array();
        for (double w : trained.model.weights) {
            std::snprintf(buf, sizeof(buf), "%.17g", w);
            weights.push_back(std::string(buf));
        }
        model_json["weights"] = std::move(weights);
        std::snprintf(buf, sizeof(buf), "%.17g", trained.model.bias);
        model_json["bias"] = std::string(buf);
    }
    model_json["lambda"] = trained.model.lambda;
    model_json["seed"] = seed;
    model_json["metrics"] = {{"train_accuracy", trained.train_accuracy},
                             {"test_accuracy", trained.test_accuracy},
                             {"restart_index", trained.restart_index}};
    out.write_json("classifier.json", model_json);

    {
        std::ofstream f(out.file("history.csv"));
        f << "epoch,train_loss,train_accuracy,test_accuracy\n";
        for (size_t e = 0; e < trained.loss_history.size(); ++e) {
            f << e << "," << trained.loss_history[e] << "," << trained.train_acc_history[e] << ","
              << trained.test_acc_history[e] << "\n";
        }
    }
    json report;
    report["train_accuracy"] = trained.train_accuracy;
    report["test_accuracy"] = trained.test_accuracy;
    report["restart_index"] = trained.restart_index;
    out.write_json("report.json", report);
    out.finish();

    std::cout << "train_acc=" << trained.train_accuracy << " test_acc=" << trained.test_accuracy
              << "\n";
    return 0;
}

int run_analyze(const std::string& states_path, const std::string& what, int bins,
                const std::string& outp) {
    std::vector<StateVector> states = import_states(states_path);
    if (states.empty()) {
        throw std::runtime_error("state file is empty");
    }

    OutputDir out(outp);
    json resolved;
    resolved["command"] = "analyze";
    resolved["states"] = states_path;
    resolved["what"] = what;
    resolved["bins"] = bins;
    out.write_json("resolved_config.json", resolved);

    if (what == "ce-hist") {
        write_histogram_csv(ce_histogram(states, bins), out.file("ce_histogram.csv"));
    } else if (what == "purity") {
        write_purity_csv(single_qubit_purity_samples(states), out.file("purity.csv"));
    } else if (what == "concurrence") {
        auto rows = distance_averaged_concurrence(states);
        write_concurrence_csv(rows, out.file("concurrence_by_distance.csv"));
    } else if (what == "halfpurity") {
        double mean = halfchain_purity_average(states);
        json j;
        j["mean_halfchain_purity"] = mean;
        j["haar_reference"] = haar_average_purity(states[0].n_qubits / 2);
        j["samples"] = states.size();
        out.write_json("halfchain_purity.json", j);
        std::cout << "mean_halfchain_purity=" << mean << "\n";
    } else {
        throw CLI::ValidationError("--what",
                                   "expected one of ce-hist, purity, concurrence, halfpurity");
    }
    out.finish();
    return 0;
}

// Replays a run from the resolved_config.json another run wrote.
int run_rerun(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        throw std::runtime_error("cannot open config: " + config_path);
    }
    json j;
    in >> j;
    const std::string command = j.at("command").get<std::string>();
    const std::string out = fs::path(config_path).parent_path().string();

    if (command == "train-generator") {
        TrainGeneratorArgs a;
        a.ansatz = j.at("ansatz").get<std::string>();
        a.qubits = j.at("qubits").get<int>();
        a.layers = j.at("layers").get<int>();
        a.target_ce = j.at("target_ce").get<double>();
        a.delta = j.at("delta").get<double>();
        a.c1 = j.at("c1").get<double>();
        a.c2 = j.at("c2").get<double>();
        const auto& inputs = j.at("inputs");
        a.inputs = inputs.at("kind").get<std::string>();
        a.train_size = static_cast<int>(inputs.at("size").get<size_t>());
        a.epsilon = inputs.value("epsilon", 0.1);
        a.epochs = j.at("epochs").get<int>();
        a.restarts = j.at("restarts").get<int>();
        a.seed = j.at("seed").get<uint64_t>();
        a.lr = j.at("lr").get<double>();
        a.fd_step = j.at("fd_step").get<double>();
        a.stop_loss = j.at("stop_loss").get<double>();
        a.independent_second_round = j.at("independent_second_round").get<bool>();
        a.test_inputs = j.at("test_inputs").get<std::string>();
        a.eval_count = j.at("eval_count").get<int>();
        a.out = out;
        return run_train_generator(a);
    }
    if (command == "eval-generator") {
        return run_eval_generator(j.at("model").get<std::string>(), j.at("count").get<int>(),
                                  j.at("delta").get<double>(),
                                  j.at("test_inputs").get<std::string>(),
                                  j.at("seed").get<uint64_t>(), out);
    }
    if (command == "gen-dataset") {
        return run_gen_dataset(j.at("model").get<std::string>(), j.at("count").get<int>(),
                               j.at("seed").get<uint64_t>(), j.at("format").get<std::string>(),
                               out);
    }
    if (command == "depth-dataset") {
        return run_depth_dataset(j.at("qubits").get<int>(),
                                 j.at("depths").get<std::vector<int>>(), {},
                                 j.at("counts").get<std::vector<int>>(),
                                 j.at("seed").get<uint64_t>(),
                                 j.at("resample_per_state").get<bool>(),
                                 j.at("format").get<std::string>(), out);
    }
    if (command == "train-classifier") {
        return run_train_classifier(
            j.at("class0").get<std::string>(), j.at("class1").get<std::string>(),
            j.at("copies").get<int>(), j.at("keep").get<int>(), j.at("epochs").get<int>(),
            j.at("restarts").get<int>(), j.at("lr").get<double>(), j.at("lambda").get<double>(),
            j.at("fd_step").get<double>(), j.at("train_fraction").get<double>(),
            j.at("seed").get<uint64_t>(), out);
    }
    if (command == "analyze") {
        return run_analyze(j.at("states").get<std::string>(), j.at("what").get<std::string>(),
                           j.at("bins").get<int>(), out);
    }
    throw std::runtime_error("config does not describe a rerunnable command: " + command);
}

json measure_record(const StateVector& s) {
    json j;
    j["n_qubits"] = s.n_qubits;
    j["ce"] = concentratable_entanglement(s);
    if (s.n_qubits % 2 == 0) {
        j["ntangle"] = n_tangle(s);
        std::vector<StateVector> one = {s};
        j["halfpurity"] = halfchain_purity_average(one);
    } else {
        j["ntangle"] = nullptr;
        j["halfpurity"] = nullptr;
    }
    if (s.n_qubits >= 2) {
        double nn = 0.0;
        for (int q = 0; q + 1 < s.n_qubits; ++q) {
            nn += concurrence(reduced_density(s, {q, q + 1}));
        }
        j["concurrence"] = nn / (s.n_qubits - 1); // mean over neighbouring pairs
    } else {
        j["concurrence"] = nullptr;
    }
    return j;
}

int run_measure(const std::string& states_path, const std::string& outp) {
    std::vector<StateVector> states = import_states(states_path);
    if (states.empty()) {
        throw std::runtime_error("state file is empty");
    }
    json record;
    if (states.size() == 1) {
        record = measure_record(states[0]);
    } else {
        record["count"] = states.size();
        json per = json::array();
        double mean_ce = 0.0;
        for (const auto& s : states) {
            json r = measure_record(s);
            mean_ce += r["ce"].get<double>();
            per.push_back(std::move(r));
        }
        record["mean_ce"] = mean_ce / static_cast<double>(states.size());
        record["per_state"] = std::move(per);
    }
    std::cout << record.dump(2) << "\n";
    if (!outp.empty()) {
        OutputDir out(outp);
        json resolved;
        resolved["command"] = "measure";
        resolved["states"] = states_path;
        out.write_json("resolved_config.json", resolved);
        out.write_json("measure.json", record);
        out.finish();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NTangled entangled-state datasets: generate, measure, classify, analyze"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (default: NTANGLED_THREADS or all)");

    // train-generator
    TrainGeneratorArgs tg;
    auto* cmd_tg = app.add_subcommand("train-generator", "train a CE-targeting generator circuit");
    cmd_tg->add_option("--ansatz", tg.ansatz, "hwe | sea | conv")
        ->check(CLI::IsMember({"hwe", "sea", "conv"}));
    cmd_tg->add_option("--qubits", tg.qubits)->required();
    cmd_tg->add_option("--layers", tg.layers)->required();
    cmd_tg->add_option("--target-ce", tg.target_ce)->required();
    cmd_tg->add_option("--delta", tg.delta, "success half-width");
    cmd_tg->add_option("--inputs", tg.inputs, "basis | product | epsilon_ball")
        ->check(CLI::IsMember({"basis", "product", "epsilon_ball"}));
    cmd_tg->add_option("--train-size", tg.train_size, "default: n+1 basis, n^2+1 product");
    cmd_tg->add_option("--epochs", tg.epochs);
    cmd_tg->add_option("--restarts", tg.restarts);
    cmd_tg->add_option("--seed", tg.seed);
    cmd_tg->add_option("--lr", tg.lr);
    cmd_tg->add_option("--fd-step", tg.fd_step);
    cmd_tg->add_option("--c1", tg.c1, "CE loss weight");
    cmd_tg->add_option("--c2", tg.c2, "n-Tangle penalty weight (even n only)");
    cmd_tg->add_option("--stop-loss", tg.stop_loss, "per-restart early stop, 0 disables");
    cmd_tg->add_option("--epsilon", tg.epsilon, "epsilon-ball radius");
    cmd_tg->add_flag("--independent-second-round", tg.independent_second_round,
                     "fresh parameters for the second HWE rotation round");
    cmd_tg->add_option("--test-inputs", tg.test_inputs, "distribution for the held-out report")
        ->check(CLI::IsMember({"basis", "product", "epsilon_ball"}));
    cmd_tg->add_option("--eval-count", tg.eval_count);
    cmd_tg->add_option("--out", tg.out)->required();

    // eval-generator
    std::string eg_model, eg_inputs = "product", eg_out = "out";
    int eg_count = 500;
    double eg_delta = -1;
    uint64_t eg_seed = 0;
    auto* cmd_eg = app.add_subcommand("eval-generator", "score a saved generator on fresh draws");
    cmd_eg->add_option("--model", eg_model)->required();
    cmd_eg->add_option("--count", eg_count);
    cmd_eg->add_option("--delta", eg_delta, "default: the model's delta");
    cmd_eg->add_option("--inputs", eg_inputs)->check(CLI::IsMember({"basis", "product", "epsilon_ball"}));
    cmd_eg->add_option("--seed", eg_seed);
    cmd_eg->add_option("--out", eg_out)->required();

    // gen-dataset
    std::string gd_model, gd_format = "binary", gd_out = "out";
    int gd_count = 500;
    uint64_t gd_seed = 0;
    auto* cmd_gd = app.add_subcommand("gen-dataset", "sample states from a saved generator");
    cmd_gd->add_option("--model", gd_model)->required();
    cmd_gd->add_option("--count", gd_count);
    cmd_gd->add_option("--seed", gd_seed);
    cmd_gd->add_option("--format", gd_format, "binary | csv")->check(CLI::IsMember({"binary", "csv"}));
    cmd_gd->add_option("--out", gd_out)->required();

    // depth-dataset
    int dd_qubits = 4;
    std::vector<int> dd_depths, dd_labels, dd_counts;
    uint64_t dd_seed = 0;
    bool dd_resample = false;
    std::string dd_format = "binary", dd_out = "out";
    auto* cmd_dd = app.add_subcommand("depth-dataset", "states from fixed-depth random circuits");
    cmd_dd->add_option("--qubits", dd_qubits)->required();
    cmd_dd->add_option("--depths", dd_depths, "layer count per class")->required()->delimiter(',');
    cmd_dd->add_option("--labels", dd_labels, "binary label per class (default 0,1,...)")
        ->delimiter(',');
    cmd_dd->add_option("--counts", dd_counts, "samples per class")->required()->delimiter(',');
    cmd_dd->add_option("--seed", dd_seed);
    cmd_dd->add_flag("--resample-per-state", dd_resample,
                     "redraw circuit parameters for every sample");
    cmd_dd->add_option("--format", dd_format, "binary | csv")->check(CLI::IsMember({"binary", "csv"}));
    cmd_dd->add_option("--out", dd_out)->required();

    // train-classifier
    std::string tc_class0, tc_class1, tc_out = "out";
    int tc_copies = 2, tc_keep = 2, tc_epochs = 60, tc_restarts = 15;
    double tc_lr = 0.05, tc_lambda = 0.0, tc_fd = 1e-4, tc_fraction = 0.7;
    uint64_t tc_seed = 0;
    auto* cmd_tc = app.add_subcommand("train-classifier", "train the two-copy QCNN classifier");
    cmd_tc->add_option("--class0", tc_class0, "state file, label 0")->required();
    cmd_tc->add_option("--class1", tc_class1, "state file, label 1")->required();
    cmd_tc->add_option("--copies", tc_copies, "input copies m");
    cmd_tc->add_option("--keep", tc_keep, "qubits surviving pooling");
    cmd_tc->add_option("--epochs", tc_epochs);
    cmd_tc->add_option("--restarts", tc_restarts);
    cmd_tc->add_option("--lr", tc_lr);
    cmd_tc->add_option("--lambda", tc_lambda, "lasso weight");
    cmd_tc->add_option("--fd-step", tc_fd);
    cmd_tc->add_option("--train-fraction", tc_fraction);
    cmd_tc->add_option("--seed", tc_seed);
    cmd_tc->add_option("--out", tc_out)->required();

    // analyze
    std::string an_states, an_what = "ce-hist", an_out = "out";
    int an_bins = 50;
    uint64_t an_seed = 0;
    auto* cmd_an = app.add_subcommand("analyze", "CSV summaries of a state file");
    cmd_an->add_option("--states", an_states)->required();
    cmd_an->add_option("--what", an_what, "ce-hist | purity | concurrence | halfpurity")
        ->check(CLI::IsMember({"ce-hist", "purity", "concurrence", "halfpurity"}));
    cmd_an->add_option("--bins", an_bins);
    cmd_an->add_option("--seed", an_seed, "accepted for interface uniformity");
    cmd_an->add_option("--out", an_out)->required();

    // measure
    std::string me_states, me_out;
    uint64_t me_seed = 0;
    auto* cmd_me = app.add_subcommand("measure", "print a JSON record of entanglement measures");
    cmd_me->add_option("--states", me_states)->required();
    cmd_me->add_option("--seed", me_seed, "accepted for interface uniformity");
    cmd_me->add_option("--out", me_out, "also write the record under this directory");

    // rerun
    std::string rr_config;
    auto* cmd_rr = app.add_subcommand("rerun", "replay a run from its resolved_config.json");
    cmd_rr->add_option("--config", rr_config)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    set_max_threads(threads);

    try {
        if (cmd_tg->parsed()) {
            return run_train_generator(tg);
        }
        if (cmd_eg->parsed()) {
            return run_eval_generator(eg_model, eg_count, eg_delta, eg_inputs, eg_seed, eg_out);
        }
        if (cmd_gd->parsed()) {
            return run_gen_dataset(gd_model, gd_count, gd_seed, gd_format, gd_out);
        }
        if (cmd_dd->parsed()) {
            return run_depth_dataset(dd_qubits, dd_depths, dd_labels, dd_counts, dd_seed,
                                     dd_resample, dd_format, dd_out);
        }
        if (cmd_tc->parsed()) {
            return run_train_classifier(tc_class0, tc_class1, tc_copies, tc_keep, tc_epochs,
                                        tc_restarts, tc_lr, tc_lambda, tc_fd, tc_fraction, tc_seed,
                                        tc_out);
        }
        if (cmd_an->parsed()) {
            return run_analyze(an_states, an_what, an_bins, an_out);
        }
        if (cmd_me->parsed()) {
            return run_measure(me_states, me_out);
        }
        if (cmd_rr->parsed()) {
            return run_rerun(rr_config);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
