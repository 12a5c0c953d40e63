#pragma once

#include "ntangled/state.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ntangled {

struct Histogram {
    std::vector<double> edges;   // bins+1 uniform edges
    std::vector<size_t> counts;
    std::vector<double> density; // integrates to 1
};

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi);

/// Density histogram of per-state CE values; default range is the full
/// theoretical CE range for that qubit count.
Histogram ce_histogram(std::span<const StateVector> states, int bins);
Histogram ce_histogram(std::span<const StateVector> states, int bins, double lo, double hi);

/// result[q][i] = Tr[rho_q^2] of state i.
std::vector<std::vector<double>> single_qubit_purity_samples(std::span<const StateVector> states);

struct DistanceConcurrence {
    int distance = 0;
    double mean = 0.0;
    double std_error = 0.0;
    size_t samples = 0;
};

/// Concurrence of every two-qubit reduced state, averaged over the pairs at
/// the same chain distance l = |i - j| (no wraparound), across all states.
std::vector<DistanceConcurrence> distance_averaged_concurrence(std::span<const StateVector> states);

/// Mean Tr[rho^2] of the first n/2 qubits across the states (n even).
double halfchain_purity_average(std::span<const StateVector> states);

void write_histogram_csv(const Histogram& hist, const std::string& path);
void write_concurrence_csv(std::span<const DistanceConcurrence> rows, const std::string& path);
void write_purity_csv(const std::vector<std::vector<double>>& per_qubit, const std::string& path);

} // namespace ntangled
