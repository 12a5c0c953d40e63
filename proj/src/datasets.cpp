#include "ntangled/datasets.hpp"

#include "ntangled/entanglement.hpp"
#include "ntangled/parallel.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntangled {

namespace {

using nlohmann::json;

std::string double_to_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double string_to_double(const std::string& s) {
    return std::stod(s);
}

json distribution_to_json(const InputDistribution& dist) {
    json j;
    j["kind"] = to_string(dist.kind);
    j["n_qubits"] = dist.n_qubits;
    j["size"] = dist.size;
    j["seed"] = dist.seed;
    if (dist.kind == InputKind::EPSILON_BALL) {
        j["epsilon"] = dist.epsilon;
    }
    if (dist.kind == InputKind::COMPUTATIONAL_BASIS) {
        j["random_basis"] = dist.random_basis;
    }
    return j;
}

InputDistribution distribution_from_json(const json& j) {
    InputDistribution dist;
    dist.kind = input_kind_from_string(j.at("kind").get<std::string>());
    dist.n_qubits = j.at("n_qubits").get<int>();
    dist.size = j.at("size").get<size_t>();
    dist.seed = j.at("seed").get<uint64_t>();
    dist.epsilon = j.value("epsilon", 0.0);
    dist.random_basis = j.value("random_basis", false);
    return dist;
}

} // namespace

void save_model(const GeneratorModelFile& model, const std::string& path) {
    json j;
    j["format_version"] = model.format_version;
    j["kind"] = model.kind;
    j["ansatz"] = to_string(model.ansatz);
    j["n_qubits"] = model.n_qubits;
    j["layers"] = model.layers;
    j["independent_second_round"] = model.independent_second_round;
    j["param_shape"] = model.param_shape;
    json params = json::array();
    for (double p : model.params) {
        params.push_back(double_to_string(p));
    }
    j["params"] = std::move(params);
    j["target_ce"] = model.target_ce;
    j["delta"] = model.delta;
    j["inputs"] = distribution_to_json(model.inputs);
    j["seed"] = model.seed;
    j["metrics"] = {
        {"final_loss", double_to_string(model.final_loss)},
        {"restart_index", model.restart_index},
        {"success_rate", model.success_rate},
        {"ce_mean", model.ce_mean},
        {"ce_std", model.ce_std},
    };

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

GeneratorModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed model file " + path + ": " + e.what());
    }

    GeneratorModelFile model;
    model.format_version = j.at("format_version").get<int>();
    if (model.format_version != 1) {
        throw std::runtime_error("unsupported model format_version in " + path);
    }
    model.kind = j.at("kind").get<std::string>();
    if (model.kind != "ntangled" && model.kind != "depth") {
        throw std::runtime_error("unknown model kind in " + path);
    }
    model.ansatz = ansatz_from_string(j.at("ansatz").get<std::string>());
    model.n_qubits = j.at("n_qubits").get<int>();
    model.layers = j.at("layers").get<int>();
    model.independent_second_round = j.value("independent_second_round", false);
    model.param_shape = j.at("param_shape").get<std::vector<size_t>>();
    for (const auto& entry : j.at("params")) {
        model.params.push_back(string_to_double(entry.get<std::string>()));
    }
    size_t expected = 1;
    for (size_t d : model.param_shape) {
        expected *= d;
    }
    if (model.params.size() != expected) {
        throw std::runtime_error("param count does not match declared shape in " + path);
    }
    model.target_ce = j.at("target_ce").get<double>();
    model.delta = j.at("delta").get<double>();
    model.inputs = distribution_from_json(j.at("inputs"));
    model.seed = j.at("seed").get<uint64_t>();
    const auto& metrics = j.at("metrics");
    model.final_loss = string_to_double(metrics.at("final_loss").get<std::string>());
    model.restart_index = metrics.at("restart_index").get<int>();
    model.success_rate = metrics.at("success_rate").get<double>();
    model.ce_mean = metrics.at("ce_mean").get<double>();
    model.ce_std = metrics.at("ce_std").get<double>();
    return model;
}

GeneratorModelFile model_from_trained(const TrainedGenerator& trained, const GenEvalReport& eval) {
    const auto& c = trained.config;
    GeneratorModelFile model;
    model.kind = c.ansatz == AnsatzKind::DEPTH_HWE ? "depth" : "ntangled";
    model.ansatz = c.ansatz;
    model.n_qubits = c.n_qubits;
    model.layers = c.layers;
    model.independent_second_round = c.independent_second_round;
    model.param_shape =
        ansatz_param_shape(c.ansatz, c.n_qubits, c.layers, c.independent_second_round);
    model.params = trained.params;
    model.target_ce = c.target_ce;
    model.delta = c.delta;
    model.inputs = c.inputs;
    model.seed = c.seed;
    model.final_loss = trained.final_loss;
    model.restart_index = trained.restart_index;
    model.success_rate = eval.success_fraction;
    model.ce_mean = eval.ce_mean;
    model.ce_std = eval.ce_std;
    return model;
}

TrainedGenerator trained_from_model(const GeneratorModelFile& model) {
    TrainedGenerator t;
    t.config.ansatz = model.ansatz;
    t.config.n_qubits = model.n_qubits;
    t.config.layers = model.layers;
    t.config.independent_second_round = model.independent_second_round;
    t.config.target_ce = model.target_ce;
    t.config.delta = model.delta;
    t.config.inputs = model.inputs;
    t.config.seed = model.seed;
    t.params = model.params;
    t.final_loss = model.final_loss;
    t.restart_index = model.restart_index;
    return t;
}

std::vector<std::pair<StateVector, double>> generate_ntangled(const GeneratorModelFile& model,
                                                              const InputDistribution& dist,
                                                              size_t count) {
    CompiledCircuit circuit(build_ansatz(model.ansatz, model.n_qubits, model.layers, model.params,
                                         model.independent_second_round));
    const uint64_t gen_seed = mix_seed(dist.seed, 0x67656e64ull); // "gend"
    std::vector<std::pair<StateVector, double>> out(count);
    parallel_for(count, [&](size_t i) {
        Rng rng = derive_stream(gen_seed, i);
        StateVector s = sample_input(dist, rng);
        circuit.apply_inplace(s);
        double ce = concentratable_entanglement(s);
        out[i] = {std::move(s), ce};
    });
    return out;
}

LabeledStateSet generate_depth_dataset(const DepthDatasetSpec& spec) {
    if (spec.n_qubits < 2) {
        throw std::invalid_argument("depth dataset needs at least 2 qubits");
    }
    LabeledStateSet out;
    std::ostringstream prov;
    prov << "depth_dataset n=" << spec.n_qubits << " seed=" << spec.seed;
    for (size_t ci = 0; ci < spec.classes.size(); ++ci) {
        const DepthClass& cls = spec.classes[ci];
        if (cls.count < 1) {
            throw std::invalid_argument("depth class count must be >= 1");
        }
        const int n = spec.n_qubits;
        const size_t layer_params = static_cast<size_t>(n) * 3;
        const size_t total_params = (static_cast<size_t>(cls.depth) + 1) * layer_params;
        const uint64_t class_seed = mix_seed(spec.seed, ci);

        // fixed circuit layers for the whole class
        std::vector<double> fixed(total_params - layer_params);
        {
            Rng rng = derive_stream(class_seed, 0);
            for (double& p : fixed) {
                p = rng.angle();
            }
        }

        std::vector<StateVector> states(cls.count);
        parallel_for(cls.count, [&](size_t i) {
            Rng rng = derive_stream(class_seed, i + 1);
            std::vector<double> params(total_params);
            for (size_t k = 0; k < layer_params; ++k) {
                params[k] = rng.angle(); // fresh product-state preparation layer
            }
            if (spec.resample_per_state) {
                for (size_t k = layer_params; k < total_params; ++k) {
                    params[k] = rng.angle();
                }
            } else {
                std::copy(fixed.begin(), fixed.end(), params.begin() + layer_params);
            }
            StateVector s = basis_state_index(n, 0);
            CompiledCircuit(build_depth_ansatz(n, cls.depth, params)).apply_inplace(s);
            states[i] = std::move(s);
        });
        for (auto& s : states) {
            out.states.push_back(std::move(s));
            out.labels.push_back(cls.label);
        }
        prov << " class(L=" << cls.depth << ",label=" << cls.label << ",count=" << cls.count << ")";
    }
    out.provenance = prov.str();
    return out;
}

namespace {

void write_u32(std::ostream& out, uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) {
        buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(buf), 4);
}

uint32_t read_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<uint32_t>(buf[i]) << (8 * i);
    }
    return v;
}

void write_f64(std::ostream& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) {
        buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(buf), 8);
}

double read_f64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<uint64_t>(buf[i]) << (8 * i);
    }
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

bool looks_like_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    char head[3] = {0, 0, 0};
    in.read(head, 3);
    return head[0] == 'r' && head[1] == 'e' && head[2] == '_';
}

} // namespace

void export_states(std::span<const StateVector> states, const std::string& path,
                   StateFileFormat format) {
    if (states.empty()) {
        throw std::invalid_argument("export_states: empty state list");
    }
    const int n = states[0].n_qubits;
    for (const auto& s : states) {
        if (s.n_qubits != n) {
            throw std::invalid_argument("export_states: mixed qubit counts");
        }
    }

    if (format == StateFileFormat::AMPLITUDES_BINARY) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + path);
        }
        write_u32(out, static_cast<uint32_t>(n));
        write_u32(out, static_cast<uint32_t>(states.size()));
        for (const auto& s : states) {
            for (const auto& amp : s.amps) {
                write_f64(out, amp.real());
                write_f64(out, amp.imag());
            }
        }
        if (!out) {
            throw std::runtime_error("write failed: " + path);
        }
        return;
    }

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    const uint64_t dim = states[0].dim();
    for (uint64_t i = 0; i < dim; ++i) {
        out << (i ? "," : "") << "re_" << i << ",im_" << i;
    }
    out << "\n";
    for (const auto& s : states) {
        for (uint64_t i = 0; i < dim; ++i) {
            out << (i ? "," : "") << double_to_string(s.amps[i].real()) << ","
                << double_to_string(s.amps[i].imag());
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::vector<StateVector> import_states(const std::string& path) {
    if (looks_like_csv(path)) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open state file: " + path);
        }
        std::string line;
        if (!std::getline(in, line)) {
            throw std::runtime_error("empty state file: " + path);
        }
        std::vector<StateVector> out;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            std::vector<double> vals;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                vals.push_back(string_to_double(cell));
            }
            if (vals.size() % 2 != 0 || vals.empty()) {
                throw std::runtime_error("malformed CSV state row in " + path);
            }
            StateVector s;
            s.n_qubits = static_cast<int>(std::llround(std::log2(vals.size() / 2)));
            if ((uint64_t{1} << s.n_qubits) != vals.size() / 2) {
                throw std::runtime_error("CSV row length is not a power of two in " + path);
            }
            s.amps.resize(vals.size() / 2);
            for (size_t i = 0; i < s.amps.size(); ++i) {
                s.amps[i] = cdouble{vals[2 * i], vals[2 * i + 1]};
            }
            out.push_back(std::move(s));
        }
        return out;
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open state file: " + path);
    }
    uint32_t n = read_u32(in);
    uint32_t count = read_u32(in);
    if (!in || n < 1 || n > 30) {
        throw std::runtime_error("malformed state file header: " + path);
    }
    std::vector<StateVector> out;
    out.reserve(count);
    for (uint32_t k = 0; k < count; ++k) {
        StateVector s;
        s.n_qubits = static_cast<int>(n);
        s.amps.resize(uint64_t{1} << n);
        for (auto& amp : s.amps) {
            double re = read_f64(in);
            double im = read_f64(in);
            amp = cdouble{re, im};
        }
        if (!in) {
            throw std::runtime_error("truncated state file: " + path);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace ntangled
