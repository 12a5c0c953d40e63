#include "ntangled/analysis.hpp"

#include "ntangled/density.hpp"
#include "ntangled/entanglement.hpp"
#include "ntangled/parallel.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ntangled {

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi) {
    if (bins < 1) {
        throw std::invalid_argument("histogram needs at least one bin");
    }
    if (values.empty()) {
        throw std::invalid_argument("histogram of an empty sample");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("histogram range must be increasing");
    }
    Histogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) {
        h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    }
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / bins;
    for (double v : values) {
        int b = static_cast<int>(std::floor((v - lo) / width));
        b = std::max(0, std::min(bins - 1, b)); // clamp boundary/roundoff cases
        h.counts[b] += 1;
    }
    h.density.resize(bins);
    const double total = static_cast<double>(values.size());
    for (int b = 0; b < bins; ++b) {
        h.density[b] = static_cast<double>(h.counts[b]) / (total * width);
    }
    return h;
}

static std::vector<double> ce_values_of(std::span<const StateVector> states) {
    std::vector<double> ce(states.size());
    parallel_for(states.size(), [&](size_t i) {
        ce[i] = concentratable_entanglement(states[i]);
    });
    return ce;
}

Histogram ce_histogram(std::span<const StateVector> states, int bins, double lo, double hi) {
    if (states.empty()) {
        throw std::invalid_argument("ce_histogram: empty state list");
    }
    return make_histogram(ce_values_of(states), bins, lo, hi);
}

Histogram ce_histogram(std::span<const StateVector> states, int bins) {
    if (states.empty()) {
        throw std::invalid_argument("ce_histogram: empty state list");
    }
    return ce_histogram(states, bins, 0.0, ce_max(states[0].n_qubits));
}

std::vector<std::vector<double>> single_qubit_purity_samples(std::span<const StateVector> states) {
    if (states.empty()) {
        return {};
    }
    const int n = states[0].n_qubits;
    std::vector<std::vector<double>> out(n, std::vector<double>(states.size()));
    parallel_for(states.size(), [&](size_t i) {
        for (int q = 0; q < n; ++q) {
            out[q][i] = subset_purity_mask(states[i], uint32_t{1} << q);
        }
    });
    return out;
}

std::vector<DistanceConcurrence> distance_averaged_concurrence(
    std::span<const StateVector> states) {
    if (states.empty()) {
        return {};
    }
    const int n = states[0].n_qubits;
    if (n < 2) {
        throw std::invalid_argument("distance_averaged_concurrence: needs n >= 2");
    }

    // per-state sums per distance, then a deterministic reduction
    std::vector<std::vector<double>> samples(n); // samples[l] = all concurrences at distance l
    std::vector<std::vector<double>> per_state(states.size());
    parallel_for(states.size(), [&](size_t i) {
        std::vector<double>& row = per_state[i];
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                row.push_back(concurrence(reduced_density(states[i], {a, b})));
            }
        }
    });
    for (size_t i = 0; i < states.size(); ++i) {
        size_t k = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                samples[b - a].push_back(per_state[i][k++]);
            }
        }
    }

    std::vector<DistanceConcurrence> out;
    for (int l = 1; l < n; ++l) {
        DistanceConcurrence row;
        row.distance = l;
        row.samples = samples[l].size();
        double mean = 0.0;
        for (double c : samples[l]) {
            mean += c;
        }
        mean /= static_cast<double>(row.samples);
        double var = 0.0;
        for (double c : samples[l]) {
            var += (c - mean) * (c - mean);
        }
        row.mean = mean;
        row.std_error = row.samples > 1
                            ? std::sqrt(var / static_cast<double>(row.samples - 1)) /
                                  std::sqrt(static_cast<double>(row.samples))
                            : 0.0;
        out.push_back(row);
    }
    return out;
}

double halfchain_purity_average(std::span<const StateVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("halfchain_purity_average: empty state list");
    }
    const int n = states[0].n_qubits;
    if (n % 2 != 0) {
        throw std::invalid_argument("halfchain_purity_average: needs an even qubit count");
    }
    const uint32_t mask = (uint32_t{1} << (n / 2)) - 1; // qubits 0..n/2-1
    std::vector<double> purities(states.size());
    parallel_for(states.size(), [&](size_t i) {
        purities[i] = subset_purity_mask(states[i], mask);
    });
    double mean = 0.0;
    for (double p : purities) {
        mean += p;
    }
    return mean / static_cast<double>(states.size());
}

void write_histogram_csv(const Histogram& hist, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "bin_lo,bin_hi,count,density\n";
    for (size_t b = 0; b < hist.counts.size(); ++b) {
        out << hist.edges[b] << "," << hist.edges[b + 1] << "," << hist.counts[b] << ","
            << hist.density[b] << "\n";
    }
}

void write_concurrence_csv(std::span<const DistanceConcurrence> rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "distance,mean_concurrence,std_error,samples\n";
    for (const auto& row : rows) {
        out << row.distance << "," << row.mean << "," << row.std_error << "," << row.samples
            << "\n";
    }
}

void write_purity_csv(const std::vector<std::vector<double>>& per_qubit, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "qubit,state_index,purity\n";
    for (size_t q = 0; q < per_qubit.size(); ++q) {
        for (size_t i = 0; i < per_qubit[q].size(); ++i) {
            out << q << "," << i << "," << per_qubit[q][i] << "\n";
        }
    }
}

} // namespace ntangled
