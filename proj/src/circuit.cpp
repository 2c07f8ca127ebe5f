#include "stabrw/circuit.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace stabrw {

int gate_arity(GateKind k) {
    switch (k) {
    case GateKind::Cnot:
    case GateKind::Swap: return 2;
    default: return 1;
    }
}

bool gate_creates(GateKind k) { return k == GateKind::Prep0 || k == GateKind::PrepPlus; }
bool gate_destroys(GateKind k) { return k == GateKind::Post0 || k == GateKind::PostPlus; }
bool gate_has_phase(GateKind k) { return k == GateKind::RotX || k == GateKind::RotZ; }

std::string gate_name(GateKind k) {
    switch (k) {
    case GateKind::Cnot: return "cnot";
    case GateKind::Swap: return "swap";
    case GateKind::Prep0: return "prep0";
    case GateKind::PrepPlus: return "prepplus";
    case GateKind::Post0: return "post0";
    case GateKind::PostPlus: return "postplus";
    case GateKind::RotX: return "rx";
    case GateKind::RotZ: return "rz";
    case GateKind::H: return "h";
    }
    return "?";
}

Circuit::Circuit(std::vector<std::string> inputs, std::vector<Gate> gates,
                 std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), gates_(std::move(gates)) {
    validate();
}

void Circuit::validate() const {
    std::unordered_set<std::string> live;
    std::unordered_set<std::string> ever;
    for (const auto& w : inputs_) {
        if (!ever.insert(w).second) {
            throw Error("duplicate input label '" + w + "'");
        }
        live.insert(w);
    }
    for (const auto& g : gates_) {
        if (static_cast<int>(g.wires.size()) != gate_arity(g.kind)) {
            throw Error("gate '" + gate_name(g.kind) + "' has wrong wire count");
        }
        if (g.kind == GateKind::Cnot && g.wires[0] == g.wires[1]) {
            throw Error("cnot control and target must differ");
        }
        if (g.kind == GateKind::Swap && g.wires[0] == g.wires[1]) {
            throw Error("swap wires must differ");
        }
        if (gate_has_phase(g.kind)) {
            if (g.phase < 0 || g.phase > 3) {
                throw Error("rotation phase must be in 0..3 (quarter turns)");
            }
        } else if (g.phase != 0) {
            throw Error("gate '" + gate_name(g.kind) + "' carries no phase");
        }
        if (gate_creates(g.kind)) {
            const auto& w = g.wires[0];
            if (!ever.insert(w).second) {
                throw Error("wire '" + w + "' created more than once");
            }
            live.insert(w);
        } else {
            for (const auto& w : g.wires) {
                if (live.find(w) == live.end()) {
                    throw Error(ever.count(w) != 0
                                    ? "wire '" + w + "' used after destruction"
                                    : "wire '" + w + "' used before creation");
                }
            }
            if (gate_destroys(g.kind)) {
                live.erase(g.wires[0]);
            }
        }
    }
    std::unordered_set<std::string> outs;
    for (const auto& w : outputs_) {
        if (!outs.insert(w).second) {
            throw Error("duplicate output label '" + w + "'");
        }
        if (live.find(w) == live.end()) {
            throw Error("output wire '" + w + "' is not live at the end");
        }
        live.erase(w);
    }
    if (!live.empty()) {
        throw Error("wire '" + *live.begin() + "' is never destroyed");
    }
}

std::map<std::string, std::vector<std::pair<int, int>>> Circuit::wire_touches() const {
    std::map<std::string, std::vector<std::pair<int, int>>> m;
    for (const auto& w : inputs_) {
        m[w];
    }
    for (int gi = 0; gi < static_cast<int>(gates_.size()); ++gi) {
        const auto& g = gates_[gi];
        for (int p = 0; p < static_cast<int>(g.wires.size()); ++p) {
            m[g.wires[p]].emplace_back(gi, p);
        }
    }
    return m;
}

namespace {

const std::unordered_map<std::string, GateKind>& mnemonic_table() {
    static const std::unordered_map<std::string, GateKind> table = {
        {"cnot", GateKind::Cnot},     {"swap", GateKind::Swap},
        {"prep0", GateKind::Prep0},   {"prepplus", GateKind::PrepPlus},
        {"post0", GateKind::Post0},   {"postplus", GateKind::PostPlus},
        {"rx", GateKind::RotX},       {"rz", GateKind::RotZ},
        {"h", GateKind::H},
    };
    return table;
}

bool valid_label(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

} // namespace

Circuit parse_circuit(const std::string& text) {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Gate> gates;
    bool seen_gate = false;
    bool seen_output = false;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const auto column = raw.find(tok[0]) + 1;
        const std::string& op = tok[0];
        if (op == "input") {
            if (seen_gate || seen_output) {
                throw ParseError("'input' lines must precede gates", lineno, column);
            }
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!valid_label(tok[i])) {
                    throw ParseError("invalid wire label '" + tok[i] + "'", lineno, column);
                }
                inputs.push_back(tok[i]);
            }
            continue;
        }
        if (op == "output") {
            seen_output = true;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!valid_label(tok[i])) {
                    throw ParseError("invalid wire label '" + tok[i] + "'", lineno, column);
                }
                outputs.push_back(tok[i]);
            }
            continue;
        }
        if (seen_output) {
            throw ParseError("gates may not follow 'output' lines", lineno, column);
        }
        const auto it = mnemonic_table().find(op);
        if (it == mnemonic_table().end()) {
            throw ParseError("unknown instruction '" + op + "'", lineno, column);
        }
        seen_gate = true;
        Gate g;
        g.kind = it->second;
        const int arity = gate_arity(g.kind);
        const std::size_t expect = 1 + static_cast<std::size_t>(arity) + (gate_has_phase(g.kind) ? 1 : 0);
        if (tok.size() != expect) {
            throw ParseError("wrong argument count for '" + op + "'", lineno, column);
        }
        for (int p = 0; p < arity; ++p) {
            if (!valid_label(tok[1 + p])) {
                throw ParseError("invalid wire label '" + tok[1 + p] + "'", lineno, column);
            }
            g.wires.push_back(tok[1 + p]);
        }
        if (gate_has_phase(g.kind)) {
            const std::string& ph = tok.back();
            std::size_t pos = 0;
            long v = 0;
            try {
                v = std::stol(ph, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != ph.size()) {
                throw ParseError("invalid phase '" + ph + "'", lineno, column);
            }
            g.phase = static_cast<int>(((v % 4) + 4) % 4);
        }
        gates.push_back(std::move(g));
    }
    try {
        return Circuit(std::move(inputs), std::move(gates), std::move(outputs));
    } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 1);
    }
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdULL;
}

std::string letters(std::size_t i) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i = i / 26;
    } while (i-- > 0);
    return s;
}

// Iterated port-labelled refinement over the wire DAG; inputs/outputs anchor
// the signatures so that canonical order is stable across relabelings.
struct CanonicalOrder {
    std::vector<int> gate_order;          // canonical schedule (gate indices)
    std::map<std::string, std::string> rename;
};

CanonicalOrder canonical_order(const Circuit& c) {
    const auto touches = c.wire_touches();
    const int n = static_cast<int>(c.gates().size());

    struct Link { bool is_io; int io_index; int gate; int port; };
    // Per gate port: the previous and next toucher on that wire.
    std::vector<std::vector<Link>> pred(n);
    std::vector<std::vector<Link>> succ(n);
    for (int gi = 0; gi < n; ++gi) {
        const int a = gate_arity(c.gates()[gi].kind);
        pred[gi].assign(a, Link{true, -1, -1, -1});
        succ[gi].assign(a, Link{true, -1, -1, -1});
    }
    std::unordered_map<std::string, int> input_index;
    for (int i = 0; i < c.num_inputs(); ++i) {
        input_index[c.inputs()[i]] = i;
    }
    std::unordered_map<std::string, int> output_index;
    for (int i = 0; i < c.num_outputs(); ++i) {
        output_index[c.outputs()[i]] = i;
    }
    for (const auto& [w, seq] : touches) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const auto [gi, port] = seq[i];
            if (i == 0) {
                const auto it = input_index.find(w);
                pred[gi][port] = Link{true, it == input_index.end() ? -1 : it->second, -1, -1};
            } else {
                pred[gi][port] = Link{false, -1, seq[i - 1].first, seq[i - 1].second};
            }
            if (i + 1 == seq.size()) {
                const auto it = output_index.find(w);
                succ[gi][port] = Link{true, it == output_index.end() ? -1 : it->second, -1, -1};
            } else {
                succ[gi][port] = Link{false, -1, seq[i + 1].first, seq[i + 1].second};
            }
        }
    }

    std::vector<std::uint64_t> sig(n);
    for (int gi = 0; gi < n; ++gi) {
        const auto& g = c.gates()[gi];
        sig[gi] = mix(static_cast<std::uint64_t>(g.kind) + 1, static_cast<std::uint64_t>(g.phase) + 1);
    }
    const int rounds = n + 2;
    std::vector<std::uint64_t> next(n);
    for (int round = 0; round < rounds; ++round) {
        for (int gi = 0; gi < n; ++gi) {
            const bool symmetric = c.gates()[gi].kind == GateKind::Swap;
            std::uint64_t h = mix(sig[gi], 0x5bf03635ULL);
            std::uint64_t acc = 0;
            // Ports of a SWAP are interchangeable; neighbours must not see them.
            auto port_key = [&](int gate, int port) {
                return c.gates()[gate].kind == GateKind::Swap ? 1ULL
                                                              : static_cast<std::uint64_t>(port + 1);
            };
            for (int p = 0; p < gate_arity(c.gates()[gi].kind); ++p) {
                std::uint64_t hp = 17;
                const auto& pr = pred[gi][p];
                hp = mix(hp, pr.is_io ? mix(1, static_cast<std::uint64_t>(pr.io_index + 2))
                                      : mix(2, mix(sig[pr.gate], port_key(pr.gate, pr.port))));
                const auto& su = succ[gi][p];
                hp = mix(hp, su.is_io ? mix(3, static_cast<std::uint64_t>(su.io_index + 2))
                                      : mix(4, mix(sig[su.gate], port_key(su.gate, su.port))));
                if (symmetric) {
                    acc += hp;
                } else {
                    h = mix(h, hp);
                }
            }
            next[gi] = symmetric ? mix(h, acc) : h;
        }
        sig.swap(next);
    }

    // Kahn schedule, smallest signature first.
    std::vector<int> remaining_preds(n, 0);
    for (int gi = 0; gi < n; ++gi) {
        for (const auto& pr : pred[gi]) {
            if (!pr.is_io) {
                ++remaining_preds[gi];
            }
        }
    }
    auto key = [&](int gi) { return std::make_pair(sig[gi], gi); };
    std::set<std::pair<std::uint64_t, int>> ready;
    for (int gi = 0; gi < n; ++gi) {
        if (remaining_preds[gi] == 0) {
            ready.insert(key(gi));
        }
    }
    CanonicalOrder result;
    while (!ready.empty()) {
        const int gi = ready.begin()->second;
        ready.erase(ready.begin());
        result.gate_order.push_back(gi);
        for (int p = 0; p < gate_arity(c.gates()[gi].kind); ++p) {
            const auto& su = succ[gi][p];
            if (!su.is_io && --remaining_preds[su.gate] == 0) {
                ready.insert(key(su.gate));
            }
        }
    }

    std::size_t counter = 0;
    for (const auto& w : c.inputs()) {
        result.rename[w] = letters(counter++);
    }
    for (const int gi : result.gate_order) {
        for (const auto& w : c.gates()[gi].wires) {
            if (result.rename.find(w) == result.rename.end()) {
                result.rename[w] = letters(counter++);
            }
        }
    }
    for (const auto& w : c.outputs()) {
        if (result.rename.find(w) == result.rename.end()) {
            result.rename[w] = letters(counter++);
        }
    }
    return result;
}

} // namespace

std::string print_circuit(const Circuit& c) {
    const auto ord = canonical_order(c);
    std::ostringstream os;
    os << "input";
    for (const auto& w : c.inputs()) {
        os << " " << ord.rename.at(w);
    }
    os << "\n";
    for (const int gi : ord.gate_order) {
        const auto& g = c.gates()[gi];
        std::vector<std::string> ws;
        ws.reserve(g.wires.size());
        for (const auto& w : g.wires) {
            ws.push_back(ord.rename.at(w));
        }
        if (g.kind == GateKind::Swap && ws[1] < ws[0]) {
            std::swap(ws[0], ws[1]);
        }
        os << gate_name(g.kind);
        for (const auto& w : ws) {
            os << " " << w;
        }
        if (gate_has_phase(g.kind)) {
            os << " " << g.phase;
        }
        os << "\n";
    }
    os << "output";
    for (const auto& w : c.outputs()) {
        os << " " << ord.rename.at(w);
    }
    os << "\n";
    return os.str();
}

bool circuits_structurally_equal(const Circuit& c1, const Circuit& c2) {
    if (c1.num_inputs() != c2.num_inputs() || c1.num_outputs() != c2.num_outputs()) {
        return false;
    }
    return print_circuit(c1) == print_circuit(c2);
}

ExactMatrix gate_matrix(GateKind kind, int phase) {
    using S = CliffordScalar;
    ExactMatrix m;
    switch (kind) {
    case GateKind::Cnot:
        m = ExactMatrix(2, 2);
        m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = S::one();
        return m;
    case GateKind::Swap:
        m = ExactMatrix(2, 2);
        m.at(0, 0) = m.at(1, 2) = m.at(2, 1) = m.at(3, 3) = S::one();
        return m;
    case GateKind::Prep0:
        m = ExactMatrix(1, 0);
        m.at(0, 0) = S::sqrt2();
        return m;
    case GateKind::PrepPlus:
        m = ExactMatrix(1, 0);
        m.at(0, 0) = m.at(1, 0) = S::one();
        return m;
    case GateKind::Post0:
        m = ExactMatrix(0, 1);
        m.at(0, 0) = S::sqrt2();
        return m;
    case GateKind::PostPlus:
        m = ExactMatrix(0, 1);
        m.at(0, 0) = m.at(0, 1) = S::one();
        return m;
    case GateKind::RotX:
        m = ExactMatrix(1, 1);
        m.at(0, 0) = m.at(1, 1) = S::cos_pi4(phase);
        m.at(0, 1) = m.at(1, 0) = -(S::i() * S::sin_pi4(phase));
        return m;
    case GateKind::RotZ:
        m = ExactMatrix(1, 1);
        m.at(0, 0) = S::omega_pow(-phase);
        m.at(1, 1) = S::omega_pow(phase);
        return m;
    case GateKind::H:
        m = ExactMatrix(1, 1);
        m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = S::one();
        m.at(1, 1) = S::integer(-1);
        return m;
    }
    throw Error("unreachable gate kind");
}

namespace {

// Running slice state: rows indexed by the live wires (position 0 is the most
// significant bit), columns fixed to the circuit inputs.
struct SliceState {
    std::vector<std::string> live;
    std::size_t cols = 1;
    std::vector<CliffordScalar> rows; // rows.size() == 2^live.size() * cols

    std::size_t pos(const std::string& w) const {
        for (std::size_t i = 0; i < live.size(); ++i) {
            if (live[i] == w) {
                return i;
            }
        }
        throw Error("internal: wire not live");
    }
    std::size_t mask(std::size_t p) const { return std::size_t{1} << (live.size() - 1 - p); }
    CliffordScalar* row(std::size_t r) { return rows.data() + r * cols; }
};

void check_width(std::size_t width) {
    if (width > ExactMatrix::kMaxQubits) {
        throw Error("arity overflow: more than 12 live wires in a slice");
    }
}

void apply_gate(SliceState& st, const Gate& g) {
    using S = CliffordScalar;
    const std::size_t n_rows = (std::size_t{1} << st.live.size());
    switch (g.kind) {
    case GateKind::Prep0:
    case GateKind::PrepPlus: {
        check_width(st.live.size() + 1);
        std::vector<CliffordScalar> next(n_rows * 2 * st.cols, S::zero());
        const S top = g.kind == GateKind::Prep0 ? S::sqrt2() : S::one();
        const S bot = g.kind == GateKind::Prep0 ? S::zero() : S::one();
        for (std::size_t r = 0; r < n_rows; ++r) {
            for (std::size_t c = 0; c < st.cols; ++c) {
                const auto& v = st.rows[r * st.cols + c];
                if (v.is_zero()) {
                    continue;
                }
                next[(r * 2) * st.cols + c] = top * v;
                next[(r * 2 + 1) * st.cols + c] = bot * v;
            }
        }
        st.rows = std::move(next);
        st.live.push_back(g.wires[0]);
        return;
    }
    case GateKind::Post0:
    case GateKind::PostPlus: {
        const std::size_t p = st.pos(g.wires[0]);
        const std::size_t m = st.mask(p);
        const S w0 = g.kind == GateKind::Post0 ? S::sqrt2() : S::one();
        const S w1 = g.kind == GateKind::Post0 ? S::zero() : S::one();
        std::vector<CliffordScalar> next((n_rows / 2) * st.cols, S::zero());
        for (std::size_t r = 0; r < n_rows; ++r) {
            const bool hi = (r & m) != 0;
            const std::size_t stripped = ((r >> 1) & ~(m - 1)) | (r & (m - 1));
            const S& weight = hi ? w1 : w0;
            if (weight.is_zero()) {
                continue;
            }
            for (std::size_t c = 0; c < st.cols; ++c) {
                const auto& v = st.rows[r * st.cols + c];
                if (!v.is_zero()) {
                    next[stripped * st.cols + c] = next[stripped * st.cols + c] + weight * v;
                }
            }
        }
        st.rows = std::move(next);
        st.live.erase(st.live.begin() + static_cast<std::ptrdiff_t>(p));
        return;
    }
    case GateKind::Cnot: {
        const std::size_t mc = st.mask(st.pos(g.wires[0]));
        const std::size_t mt = st.mask(st.pos(g.wires[1]));
        for (std::size_t r = 0; r < n_rows; ++r) {
            if ((r & mc) != 0 && (r & mt) == 0) {
                for (std::size_t c = 0; c < st.cols; ++c) {
                    std::swap(st.rows[r * st.cols + c], st.rows[(r | mt) * st.cols + c]);
                }
            }
        }
        return;
    }
    case GateKind::Swap: {
        const std::size_t ma = st.mask(st.pos(g.wires[0]));
        const std::size_t mb = st.mask(st.pos(g.wires[1]));
        for (std::size_t r = 0; r < n_rows; ++r) {
            if ((r & ma) != 0 && (r & mb) == 0) {
                const std::size_t s = (r ^ ma) | mb;
                for (std::size_t c = 0; c < st.cols; ++c) {
                    std::swap(st.rows[r * st.cols + c], st.rows[s * st.cols + c]);
                }
            }
        }
        return;
    }
    case GateKind::RotZ: {
        const std::size_t m = st.mask(st.pos(g.wires[0]));
        const S lo = S::omega_pow(-g.phase);
        const S hi = S::omega_pow(g.phase);
        for (std::size_t r = 0; r < n_rows; ++r) {
            const S& f = (r & m) != 0 ? hi : lo;
            for (std::size_t c = 0; c < st.cols; ++c) {
                auto& v = st.rows[r * st.cols + c];
                if (!v.is_zero()) {
                    v = v * f;
                }
            }
        }
        return;
    }
    case GateKind::RotX:
    case GateKind::H: {
        const std::size_t m = st.mask(st.pos(g.wires[0]));
        S a, b, c2, d;
        if (g.kind == GateKind::H) {
            a = S::one();
            b = S::one();
            c2 = S::one();
            d = S::integer(-1);
        } else {
            a = S::cos_pi4(g.phase);
            b = -(S::i() * S::sin_pi4(g.phase));
            c2 = b;
            d = a;
        }
        for (std::size_t r = 0; r < n_rows; ++r) {
            if ((r & m) != 0) {
                continue;
            }
            const std::size_t s = r | m;
            for (std::size_t c = 0; c < st.cols; ++c) {
                const S v0 = st.rows[r * st.cols + c];
                const S v1 = st.rows[s * st.cols + c];
                st.rows[r * st.cols + c] = a * v0 + b * v1;
                st.rows[s * st.cols + c] = c2 * v0 + d * v1;
            }
        }
        return;
    }
    }
}

} // namespace

ExactMatrix circuit_to_matrix(const Circuit& c) {
    check_width(c.inputs().size());
    SliceState st;
    st.live = c.inputs();
    st.cols = std::size_t{1} << c.inputs().size();
    st.rows.assign(st.cols * st.cols, CliffordScalar::zero());
    for (std::size_t i = 0; i < st.cols; ++i) {
        st.rows[i * st.cols + i] = CliffordScalar::one();
    }

    // Greedy schedule: prefer gates that shrink the live set, defer preps.
    const int n = static_cast<int>(c.gates().size());
    const auto touches = c.wire_touches();
    std::vector<int> remaining(n, 0);
    std::vector<std::vector<int>> succs(n);
    for (const auto& [w, seq] : touches) {
        (void)w;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            succs[seq[i - 1].first].push_back(seq[i].first);
            ++remaining[seq[i].first];
        }
    }
    auto priority = [&](int gi) {
        const GateKind k = c.gates()[gi].kind;
        if (gate_destroys(k)) {
            return 0;
        }
        if (gate_creates(k)) {
            return 2;
        }
        return 1;
    };
    std::set<std::tuple<int, int>> ready;
    for (int gi = 0; gi < n; ++gi) {
        if (remaining[gi] == 0) {
            ready.insert({priority(gi), gi});
        }
    }
    while (!ready.empty()) {
        const int gi = std::get<1>(*ready.begin());
        ready.erase(ready.begin());
        apply_gate(st, c.gates()[gi]);
        for (const int s : succs[gi]) {
            if (--remaining[s] == 0) {
                ready.insert({priority(s), s});
            }
        }
    }

    // Permute live wires into declared output order.
    const std::size_t n_out = c.outputs().size();
    ExactMatrix result(static_cast<int>(n_out), static_cast<int>(c.inputs().size()));
    std::vector<std::size_t> cur_mask(n_out);
    for (std::size_t p = 0; p < n_out; ++p) {
        cur_mask[p] = st.mask(st.pos(c.outputs()[p]));
    }
    for (std::size_t r = 0; r < result.rows(); ++r) {
        std::size_t src = 0;
        for (std::size_t p = 0; p < n_out; ++p) {
            if ((r >> (n_out - 1 - p)) & 1) {
                src |= cur_mask[p];
            }
        }
        for (std::size_t col = 0; col < st.cols; ++col) {
            result.at(r, col) = st.rows[src * st.cols + col];
        }
    }
    return result;
}

namespace {

Circuit rename_apart(const Circuit& c, const std::string& suffix) {
    auto ren = [&](const std::string& w) { return w + suffix; };
    std::vector<std::string> ins;
    std::vector<std::string> outs;
    std::vector<Gate> gs;
    for (const auto& w : c.inputs()) {
        ins.push_back(ren(w));
    }
    for (const auto& w : c.outputs()) {
        outs.push_back(ren(w));
    }
    for (auto g : c.gates()) {
        for (auto& w : g.wires) {
            w = ren(w);
        }
        gs.push_back(std::move(g));
    }
    return Circuit(std::move(ins), std::move(gs), std::move(outs));
}

} // namespace

Circuit circuit_compose(const Circuit& f, const Circuit& g) {
    if (f.num_outputs() != g.num_inputs()) {
        throw Error("circuit_compose: arity mismatch (" + std::to_string(f.num_outputs()) +
                    " outputs vs " + std::to_string(g.num_inputs()) + " inputs)");
    }
    const Circuit fa = rename_apart(f, ".f");
    const Circuit ga = rename_apart(g, ".g");
    std::unordered_map<std::string, std::string> splice;
    for (int i = 0; i < ga.num_inputs(); ++i) {
        splice[ga.inputs()[i]] = fa.outputs()[i];
    }
    auto ren = [&](const std::string& w) {
        const auto it = splice.find(w);
        return it == splice.end() ? w : it->second;
    };
    std::vector<Gate> gs = fa.gates();
    for (auto gg : ga.gates()) {
        for (auto& w : gg.wires) {
            w = ren(w);
        }
        gs.push_back(std::move(gg));
    }
    std::vector<std::string> outs;
    for (const auto& w : ga.outputs()) {
        outs.push_back(ren(w));
    }
    return Circuit(fa.inputs(), std::move(gs), std::move(outs));
}

Circuit circuit_tensor(const Circuit& f, const Circuit& g) {
    const Circuit fa = rename_apart(f, ".l");
    const Circuit ga = rename_apart(g, ".r");
    std::vector<std::string> ins = fa.inputs();
    ins.insert(ins.end(), ga.inputs().begin(), ga.inputs().end());
    std::vector<Gate> gs = fa.gates();
    gs.insert(gs.end(), ga.gates().begin(), ga.gates().end());
    std::vector<std::string> outs = fa.outputs();
    outs.insert(outs.end(), ga.outputs().begin(), ga.outputs().end());
    return Circuit(std::move(ins), std::move(gs), std::move(outs));
}

} // namespace stabrw
