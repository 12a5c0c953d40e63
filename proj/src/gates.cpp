#include "ntangled/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace ntangled {

Gate Gate::ry(int q, double theta) {
    Gate g;
    g.kind = GateKind::RY;
    g.q0 = q;
    g.p0 = theta;
    return g;
}

Gate Gate::rz(int q, double theta) {
    Gate g;
    g.kind = GateKind::RZ;
    g.q0 = q;
    g.p0 = theta;
    return g;
}

Gate Gate::u3(int q, double alpha, double beta, double gamma) {
    Gate g;
    g.kind = GateKind::U3;
    g.q0 = q;
    g.p0 = alpha;
    g.p1 = beta;
    g.p2 = gamma;
    return g;
}

Gate Gate::h(int q) {
    Gate g;
    g.kind = GateKind::H;
    g.q0 = q;
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.q0 = control;
    g.q1 = target;
    return g;
}

Gate Gate::cz(int a, int b) {
    Gate g;
    g.kind = GateKind::CZ;
    g.q0 = a;
    g.q1 = b;
    return g;
}

Gate Gate::cswap(int control, int t0, int t1) {
    Gate g;
    g.kind = GateKind::CSWAP;
    g.q0 = control;
    g.q1 = t0;
    g.q2 = t1;
    return g;
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::U3:
        case GateKind::H:
            return 1;
        case GateKind::CNOT:
        case GateKind::CZ:
            return 2;
        case GateKind::CSWAP:
            return 3;
    }
    return 0;
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::RY:
        case GateKind::RZ:
            g.p0 = -p0;
            break;
        case GateKind::U3:
            // U3(a,b,c)^-1 = U3(-a,-c,-b), global phase included
            g.p0 = -p0;
            g.p1 = -p2;
            g.p2 = -p1;
            break;
        case GateKind::H:
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CSWAP:
            break;
    }
    return g;
}

std::array<cdouble, 4> single_qubit_matrix(const Gate& g) {
    switch (g.kind) {
        case GateKind::RY: {
            double c = std::cos(g.p0 / 2), s = std::sin(g.p0 / 2);
            return {cdouble{c, 0}, cdouble{-s, 0}, cdouble{s, 0}, cdouble{c, 0}};
        }
        case GateKind::RZ: {
            cdouble lo = std::polar(1.0, -g.p0 / 2);
            cdouble hi = std::polar(1.0, g.p0 / 2);
            return {lo, cdouble{0, 0}, cdouble{0, 0}, hi};
        }
        case GateKind::U3: {
            double c = std::cos(g.p0 / 2), s = std::sin(g.p0 / 2);
            return {cdouble{c, 0}, -s * std::polar(1.0, g.p2),
                    s * std::polar(1.0, g.p1), c * std::polar(1.0, g.p1 + g.p2)};
        }
        case GateKind::H: {
            double r = 1.0 / std::sqrt(2.0);
            return {cdouble{r, 0}, cdouble{r, 0}, cdouble{r, 0}, cdouble{-r, 0}};
        }
        default:
            throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
    }
}

static void check_gate_indices(const StateVector& s, const Gate& g) {
    const int n = s.n_qubits;
    const int qs[3] = {g.q0, g.q1, g.q2};
    const int arity = g.arity();
    for (int i = 0; i < arity; ++i) {
        if (qs[i] < 0 || qs[i] >= n) {
            throw std::out_of_range("gate qubit index out of range");
        }
        for (int j = i + 1; j < arity; ++j) {
            if (qs[i] == qs[j]) {
                throw std::invalid_argument("gate qubit indices must be distinct");
            }
        }
    }
}

void apply_gate_inplace(StateVector& s, const Gate& g) {
    check_gate_indices(s, g);
    const int n = s.n_qubits;
    const uint64_t dim = s.dim();
    switch (g.kind) {
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::U3:
        case GateKind::H: {
            auto m = single_qubit_matrix(g);
            apply_single_qubit_matrix_inplace(s, g.q0, m.data());
            return;
        }
        case GateKind::CNOT: {
            const uint64_t cbit = uint64_t{1} << (n - 1 - g.q0);
            const uint64_t tbit = uint64_t{1} << (n - 1 - g.q1);
            for (uint64_t x = 0; x < dim; ++x) {
                if ((x & cbit) && !(x & tbit)) {
                    std::swap(s.amps[x], s.amps[x | tbit]);
                }
            }
            return;
        }
        case GateKind::CZ: {
            const uint64_t mask = (uint64_t{1} << (n - 1 - g.q0)) | (uint64_t{1} << (n - 1 - g.q1));
            for (uint64_t x = 0; x < dim; ++x) {
                if ((x & mask) == mask) {
                    s.amps[x] = -s.amps[x];
                }
            }
            return;
        }
        case GateKind::CSWAP: {
            const uint64_t cbit = uint64_t{1} << (n - 1 - g.q0);
            const uint64_t abit = uint64_t{1} << (n - 1 - g.q1);
            const uint64_t bbit = uint64_t{1} << (n - 1 - g.q2);
            for (uint64_t x = 0; x < dim; ++x) {
                if ((x & cbit) && (x & abit) && !(x & bbit)) {
                    std::swap(s.amps[x], s.amps[x ^ abit ^ bbit]);
                }
            }
            return;
        }
    }
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
    StateVector out = s;
    apply_gate_inplace(out, g);
    return out;
}

Circuit Circuit::inverse() const {
    Circuit inv;
    inv.n_qubits = n_qubits;
    inv.ops.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        inv.ops.push_back(it->inverse());
    }
    return inv;
}

void apply_circuit_inplace(StateVector& s, const Circuit& c) {
    if (s.n_qubits != c.n_qubits) {
        throw std::invalid_argument("apply_circuit: qubit count mismatch");
    }
    for (const Gate& g : c.ops) {
        apply_gate_inplace(s, g);
    }
}

StateVector apply_circuit(const StateVector& s, const Circuit& c) {
    StateVector out = s;
    apply_circuit_inplace(out, c);
    return out;
}

// ---------------------------------------------------------------------------
// CompiledCircuit

namespace {

using Mat4 = std::array<cdouble, 16>;

Mat4 mat4_identity() {
    Mat4 m{};
    m[0] = m[5] = m[10] = m[15] = 1.0;
    return m;
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 4; ++k) {
            cdouble v = a[r * 4 + k];
            if (v == cdouble{0.0, 0.0}) {
                continue;
            }
            for (int c = 0; c < 4; ++c) {
                out[r * 4 + c] += v * b[k * 4 + c];
            }
        }
    }
    return out;
}

// Embed a 2x2 on the more significant (slot 0) or less significant (slot 1)
// qubit of the pair.
Mat4 embed_one_qubit(const std::array<cdouble, 4>& m, int slot) {
    Mat4 out{};
    if (slot == 0) { // m (x) I
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out[(2 * r) * 4 + 2 * c] = m[r * 2 + c];
                out[(2 * r + 1) * 4 + 2 * c + 1] = m[r * 2 + c];
            }
        }
    } else { // I (x) m
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out[r * 4 + c] = m[r * 2 + c];
                out[(r + 2) * 4 + c + 2] = m[r * 2 + c];
            }
        }
    }
    return out;
}

Mat4 two_qubit_gate_matrix(const Gate& g, int qa) {
    Mat4 m = mat4_identity();
    if (g.kind == GateKind::CZ) {
        m[15] = -1.0;
        return m;
    }
    // CNOT: local index = bit(qa)*2 + bit(qb)
    m = Mat4{};
    auto set = [&](int r, int c) { m[r * 4 + c] = 1.0; };
    if (g.q0 == qa) { // control on the significant slot: 10 <-> 11
        set(0, 0);
        set(1, 1);
        set(2, 3);
        set(3, 2);
    } else { // control on the low slot: 01 <-> 11
        set(0, 0);
        set(1, 3);
        set(2, 2);
        set(3, 1);
    }
    return m;
}

} // namespace

CompiledCircuit::CompiledCircuit(const Circuit& c) : n_qubits_(c.n_qubits) {
    bool pending = false;
    Block cur{};

    auto flush = [&]() {
        if (pending) {
            blocks_.push_back(cur);
            pending = false;
        }
    };
    auto start_one = [&](int q, const std::array<cdouble, 4>& m) {
        cur = Block{};
        cur.kind = BlockKind::ONE_Q;
        cur.qa = q;
        for (int i = 0; i < 4; ++i) {
            cur.m[i] = m[i];
        }
        pending = true;
    };
    auto promote_to_pair = [&](int other) {
        // current ONE_Q on cur.qa joins qubit `other`
        int qa = std::min(cur.qa, other);
        int qb = std::max(cur.qa, other);
        std::array<cdouble, 4> m2 = {cur.m[0], cur.m[1], cur.m[2], cur.m[3]};
        Mat4 m4 = embed_one_qubit(m2, cur.qa == qa ? 0 : 1);
        cur.kind = BlockKind::TWO_Q;
        cur.qa = qa;
        cur.qb = qb;
        cur.m = m4;
    };

    for (const Gate& g : c.ops) {
        const int arity = g.arity();
        const int qs[3] = {g.q0, g.q1, g.q2};
        for (int i = 0; i < arity; ++i) {
            if (qs[i] < 0 || qs[i] >= c.n_qubits) {
                throw std::out_of_range("gate qubit index out of range");
            }
            for (int j = i + 1; j < arity; ++j) {
                if (qs[i] == qs[j]) {
                    throw std::invalid_argument("gate qubit indices must be distinct");
                }
            }
        }

        if (g.kind == GateKind::CSWAP) {
            flush();
            Block b{};
            b.kind = BlockKind::RAW;
            b.raw = g;
            blocks_.push_back(b);
            continue;
        }

        if (arity == 1) {
            auto m2 = single_qubit_matrix(g);
            if (pending && cur.kind == BlockKind::ONE_Q && cur.qa == g.q0) {
                std::array<cdouble, 4> prod;
                prod[0] = m2[0] * cur.m[0] + m2[1] * cur.m[2];
                prod[1] = m2[0] * cur.m[1] + m2[1] * cur.m[3];
                prod[2] = m2[2] * cur.m[0] + m2[3] * cur.m[2];
                prod[3] = m2[2] * cur.m[1] + m2[3] * cur.m[3];
                for (int i = 0; i < 4; ++i) {
                    cur.m[i] = prod[i];
                }
            } else if (pending && cur.kind == BlockKind::TWO_Q &&
                       (cur.qa == g.q0 || cur.qb == g.q0)) {
                Mat4 m4 = embed_one_qubit(m2, g.q0 == cur.qa ? 0 : 1);
                cur.m = mat4_mul(m4, cur.m);
            } else if (pending && cur.kind == BlockKind::ONE_Q && cur.qa != g.q0) {
                promote_to_pair(g.q0);
                Mat4 m4 = embed_one_qubit(m2, g.q0 == cur.qa ? 0 : 1);
                cur.m = mat4_mul(m4, cur.m);
            } else {
                flush();
                start_one(g.q0, m2);
            }
            continue;
        }

        // two-qubit CNOT/CZ
        int ga = std::min(g.q0, g.q1);
        int gb = std::max(g.q0, g.q1);
        if (pending && cur.kind == BlockKind::TWO_Q && cur.qa == ga && cur.qb == gb) {
            cur.m = mat4_mul(two_qubit_gate_matrix(g, cur.qa), cur.m);
        } else if (pending && cur.kind == BlockKind::ONE_Q && (cur.qa == ga || cur.qa == gb)) {
            promote_to_pair(cur.qa == ga ? gb : ga);
            cur.m = mat4_mul(two_qubit_gate_matrix(g, cur.qa), cur.m);
        } else {
            flush();
            cur = Block{};
            cur.kind = BlockKind::TWO_Q;
            cur.qa = ga;
            cur.qb = gb;
            cur.m = two_qubit_gate_matrix(g, ga);
            pending = true;
        }
    }
    flush();
}

void CompiledCircuit::apply_inplace(StateVector& s) const {
    if (s.n_qubits != n_qubits_) {
        throw std::invalid_argument("CompiledCircuit: qubit count mismatch");
    }
    for (const Block& b : blocks_) {
        switch (b.kind) {
            case BlockKind::ONE_Q: {
                cdouble m2[4] = {b.m[0], b.m[1], b.m[2], b.m[3]};
                apply_single_qubit_matrix_inplace(s, b.qa, m2);
                break;
            }
            case BlockKind::TWO_Q:
                apply_two_qubit_matrix_inplace(s, b.qa, b.qb, b.m.data());
                break;
            case BlockKind::RAW:
                apply_gate_inplace(s, b.raw);
                break;
        }
    }
}

StateVector CompiledCircuit::apply(const StateVector& s) const {
    StateVector out = s;
    apply_inplace(out);
    return out;
}

} // namespace ntangled
