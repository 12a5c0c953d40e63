#include "ntangled/state.hpp"

#include <cmath>
#include <stdexcept>

namespace ntangled {

static void check_qubit_count(int n) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("qubit count out of range");
    }
}

StateVector basis_state(int n, std::string_view bits) {
    check_qubit_count(n);
    if (static_cast<int>(bits.size()) != n) {
        throw std::invalid_argument("bitstring length does not match qubit count");
    }
    uint64_t index = 0;
    for (char b : bits) {
        if (b != '0' && b != '1') {
            throw std::invalid_argument("bitstring must contain only 0/1");
        }
        index = (index << 1) | static_cast<uint64_t>(b == '1');
    }
    return basis_state_index(n, index);
}

StateVector basis_state_index(int n, uint64_t index) {
    check_qubit_count(n);
    if (index >= (uint64_t{1} << n)) {
        throw std::invalid_argument("basis index out of range");
    }
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(uint64_t{1} << n, cdouble{0.0, 0.0});
    s.amps[index] = 1.0;
    return s;
}

StateVector kron(const StateVector& a, const StateVector& b) {
    StateVector out;
    out.n_qubits = a.n_qubits + b.n_qubits;
    out.amps.resize(a.dim() * b.dim());
    size_t k = 0;
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < b.dim(); ++j) {
            out.amps[k++] = a.amps[i] * b.amps[j];
        }
    }
    return out;
}

StateVector product_state(const std::vector<StateVector>& factors) {
    if (factors.empty()) {
        throw std::invalid_argument("product_state: empty factor list");
    }
    for (const auto& f : factors) {
        if (f.n_qubits != 1) {
            throw std::invalid_argument("product_state: factors must be single qubits");
        }
    }
    StateVector out = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) {
        out = kron(out, factors[i]);
    }
    return out;
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    cdouble acc = 0.0;
    for (size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amps[i]) * b.amps[i];
    }
    return acc;
}

double norm(const StateVector& s) {
    double acc = 0.0;
    for (const auto& amp : s.amps) {
        acc += std::norm(amp);
    }
    return std::sqrt(acc);
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
    double overlap = std::norm(inner_product(a, b));
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

StateVector permute_qubits(const StateVector& s, const std::vector<int>& perm) {
    const int n = s.n_qubits;
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permute_qubits: permutation size mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) {
            throw std::invalid_argument("permute_qubits: not a permutation");
        }
        seen[p] = true;
    }
    StateVector out;
    out.n_qubits = n;
    out.amps.assign(s.dim(), cdouble{0.0, 0.0});
    for (uint64_t x = 0; x < s.dim(); ++x) {
        uint64_t y = 0;
        for (int q = 0; q < n; ++q) {
            uint64_t bit = (x >> (n - 1 - q)) & 1;
            y |= bit << (n - 1 - perm[q]);
        }
        out.amps[y] = s.amps[x];
    }
    return out;
}

void apply_single_qubit_matrix_inplace(StateVector& s, int qubit, const cdouble m[4]) {
    const int n = s.n_qubits;
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("qubit index out of range");
    }
    const uint64_t stride = uint64_t{1} << (n - 1 - qubit);
    const uint64_t dim = s.dim();
    for (uint64_t base = 0; base < dim; base += 2 * stride) {
        for (uint64_t offset = 0; offset < stride; ++offset) {
            uint64_t i0 = base + offset;
            uint64_t i1 = i0 + stride;
            cdouble a0 = s.amps[i0];
            cdouble a1 = s.amps[i1];
            s.amps[i0] = m[0] * a0 + m[1] * a1;
            s.amps[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_two_qubit_matrix_inplace(StateVector& s, int qa, int qb, const cdouble m[16]) {
    const int n = s.n_qubits;
    if (qa < 0 || qa >= n || qb < 0 || qb >= n || qa == qb) {
        throw std::out_of_range("qubit pair out of range");
    }
    const uint64_t sa = uint64_t{1} << (n - 1 - qa); // local bit 1 (more significant)
    const uint64_t sb = uint64_t{1} << (n - 1 - qb); // local bit 0
    const uint64_t dim = s.dim();
    const uint64_t mask = sa | sb;
    for (uint64_t x = 0; x < dim; ++x) {
        if (x & mask) {
            continue; // visit each 4-group once, at its 00 member
        }
        cdouble a0 = s.amps[x];
        cdouble a1 = s.amps[x | sb];
        cdouble a2 = s.amps[x | sa];
        cdouble a3 = s.amps[x | mask];
        s.amps[x] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
        s.amps[x | sb] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
        s.amps[x | sa] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
        s.amps[x | mask] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
    }
}

} // namespace ntangled
