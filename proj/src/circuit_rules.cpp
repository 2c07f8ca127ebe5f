#include "stabrw/circuit_rules.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace stabrw {

namespace {

Gate g1(GateKind k, const std::string& w, int phase = 0) { return Gate{k, phase, {w}}; }
Gate g2(GateKind k, const std::string& a, const std::string& b) { return Gate{k, 0, {a, b}}; }

Circuit make(std::vector<std::string> ins, std::vector<Gate> gates, std::vector<std::string> outs) {
    return Circuit(std::move(ins), std::move(gates), std::move(outs));
}

Circuit bare_wire() { return make({"w"}, {}, {"w"}); }

int norm4(int x) { return ((x % 4) + 4) % 4; }

// Z-basis ladder realizing an (n_in, n_out) Z spider with phase alpha: merges
// fold extra inputs into the spine with CNOT + <0|, copies fan out with |0> +
// CNOT. Stub order puts the spine first on each side.
Circuit z_ladder(int n, int m, int alpha) {
    std::vector<std::string> ins;
    std::vector<std::string> outs;
    std::vector<Gate> gates;
    const std::string s = "s";
    if (n >= 1) {
        ins.push_back(s);
    } else {
        gates.push_back(g1(GateKind::PrepPlus, s));
    }
    for (int i = 1; i < n; ++i) {
        const std::string w = "i" + std::to_string(i);
        ins.push_back(w);
        gates.push_back(g2(GateKind::Cnot, s, w));
        gates.push_back(g1(GateKind::Post0, w));
    }
    if (alpha != 0) {
        gates.push_back(g1(GateKind::RotZ, s, alpha));
    }
    if (m >= 1) {
        outs.push_back(s);
    }
    for (int j = 1; j < m; ++j) {
        const std::string w = "o" + std::to_string(j);
        gates.push_back(g1(GateKind::Prep0, w));
        gates.push_back(g2(GateKind::Cnot, s, w));
        outs.push_back(w);
    }
    if (m == 0) {
        gates.push_back(g1(GateKind::PostPlus, s));
    }
    return make(std::move(ins), std::move(gates), std::move(outs));
}

// X-basis ladder: the colour mirror (CNOT + <+| merges, |+> + CNOT copies).
Circuit x_ladder(int n, int m, int alpha) {
    std::vector<std::string> ins;
    std::vector<std::string> outs;
    std::vector<Gate> gates;
    const std::string s = "s";
    if (n >= 1) {
        ins.push_back(s);
    } else {
        gates.push_back(g1(GateKind::Prep0, s));
    }
    for (int i = 1; i < n; ++i) {
        const std::string w = "i" + std::to_string(i);
        ins.push_back(w);
        gates.push_back(g2(GateKind::Cnot, w, s));
        gates.push_back(g1(GateKind::PostPlus, w));
    }
    if (alpha != 0) {
        gates.push_back(g1(GateKind::RotX, s, alpha));
    }
    if (m >= 1) {
        outs.push_back(s);
    }
    for (int j = 1; j < m; ++j) {
        const std::string w = "o" + std::to_string(j);
        gates.push_back(g1(GateKind::PrepPlus, w));
        gates.push_back(g2(GateKind::Cnot, w, s));
        outs.push_back(w);
    }
    if (m == 0) {
        gates.push_back(g1(GateKind::Post0, s));
    }
    return make(std::move(ins), std::move(gates), std::move(outs));
}

Circuit with_h_on_stubs(const Circuit& c) {
    std::vector<Gate> gates;
    for (const auto& w : c.inputs()) {
        gates.push_back(g1(GateKind::H, w));
    }
    gates.insert(gates.end(), c.gates().begin(), c.gates().end());
    for (const auto& w : c.outputs()) {
        gates.push_back(g1(GateKind::H, w));
    }
    return make(c.inputs(), std::move(gates), c.outputs());
}

// Ccirc "caps" form: |0>/H caps around a spine controlling k crossings equal
// |+> caps around the bare spine.
Circuit ccirc_caps(int k, int alpha, bool x_capped) {
    std::vector<std::string> ins;
    std::vector<std::string> outs;
    std::vector<Gate> gates;
    const std::string s = "s";
    gates.push_back(g1(x_capped ? GateKind::Prep0 : GateKind::PrepPlus, s));
    if (x_capped) {
        gates.push_back(g1(GateKind::H, s));
    }
    if (alpha != 0) {
        gates.push_back(g1(GateKind::RotZ, s, alpha));
    }
    for (int i = 0; i < k; ++i) {
        const std::string t = "t" + std::to_string(i);
        ins.push_back(t);
        outs.push_back(t);
        gates.push_back(g2(GateKind::Cnot, s, t));
    }
    if (x_capped) {
        gates.push_back(g1(GateKind::H, s));
    }
    gates.push_back(g1(x_capped ? GateKind::Post0 : GateKind::PostPlus, s));
    return make(std::move(ins), std::move(gates), std::move(outs));
}

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw Error(msg);
    }
}

} // namespace

CircuitRule circ_rule_catalog(const std::string& id, int variant, const CircRuleParams& params) {
    CircuitRule r;
    r.id = id;
    r.variant = variant;
    r.params = params;
    const int a = norm4(params.alpha);
    const int b = norm4(params.beta);

    if (id == "S1circ") {
        require(variant >= 0 && variant < 4, "S1circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"q"}, {g1(GateKind::Prep0, "p1"), g1(GateKind::Prep0, "p2"),
                                 g2(GateKind::Cnot, "q", "p2"), g2(GateKind::Cnot, "p2", "p1")},
                         {"p1", "p2", "q"});
            r.rhs = make({"q"}, {g1(GateKind::Prep0, "p2"), g1(GateKind::Prep0, "p3"),
                                 g2(GateKind::Cnot, "q", "p2"), g2(GateKind::Cnot, "p2", "p3")},
                         {"q", "p2", "p3"});
        } else if (variant == 1) {
            r.lhs = make({"q"}, {g1(GateKind::PrepPlus, "p1"), g1(GateKind::PrepPlus, "p2"),
                                 g2(GateKind::Cnot, "p2", "q"), g2(GateKind::Cnot, "p1", "p2")},
                         {"p1", "p2", "q"});
            r.rhs = make({"q"}, {g1(GateKind::PrepPlus, "p2"), g1(GateKind::PrepPlus, "p3"),
                                 g2(GateKind::Cnot, "p2", "q"), g2(GateKind::Cnot, "p3", "p2")},
                         {"q", "p2", "p3"});
        } else if (variant == 2) {
            // postselected mirror pair; both layouts coincide as wire DAGs
            r.lhs = make({"a", "b", "c"},
                         {g2(GateKind::Cnot, "b", "a"), g2(GateKind::Cnot, "c", "b"),
                          g1(GateKind::PostPlus, "a"), g1(GateKind::PostPlus, "b")},
                         {"c"});
            r.rhs = r.lhs;
        } else {
            r.lhs = make({"a", "b", "c"},
                         {g2(GateKind::Cnot, "a", "b"), g2(GateKind::Cnot, "b", "c"),
                          g1(GateKind::Post0, "a"), g1(GateKind::Post0, "b")},
                         {"c"});
            r.rhs = r.lhs;
        }
        return r;
    }

    if (id == "S2circ") {
        require(variant >= 0 && variant < 4, "S2circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"a", "c"}, {g1(GateKind::Prep0, "b"), g2(GateKind::Cnot, "c", "b"),
                                      g2(GateKind::Cnot, "b", "a"), g1(GateKind::Post0, "a")},
                         {"b", "c"});
            r.rhs = make({"a", "b"}, {g2(GateKind::Cnot, "b", "a"), g1(GateKind::Prep0, "c"),
                                      g2(GateKind::Cnot, "b", "c"), g1(GateKind::Post0, "a")},
                         {"b", "c"});
        } else if (variant == 1) {
            r.lhs = make({"a", "c"}, {g1(GateKind::PrepPlus, "b"), g2(GateKind::Cnot, "b", "c"),
                                      g2(GateKind::Cnot, "a", "b"), g1(GateKind::PostPlus, "a")},
                         {"b", "c"});
            r.rhs = make({"a", "b"}, {g2(GateKind::Cnot, "a", "b"), g1(GateKind::PrepPlus, "c"),
                                      g2(GateKind::Cnot, "c", "b"), g1(GateKind::PostPlus, "a")},
                         {"b", "c"});
        } else if (variant == 2) {
            r.lhs = make({"b", "c"}, {g1(GateKind::PrepPlus, "a"), g2(GateKind::Cnot, "b", "a"),
                                      g2(GateKind::Cnot, "c", "b"), g1(GateKind::PostPlus, "b")},
                         {"a", "c"});
            r.rhs = make({"c", "b"}, {g1(GateKind::PrepPlus, "a"), g2(GateKind::Cnot, "b", "c"),
                                      g2(GateKind::Cnot, "b", "a"), g1(GateKind::PostPlus, "c")},
                         {"a", "b"});
        } else {
            r.lhs = make({"b", "c"}, {g1(GateKind::Prep0, "a"), g2(GateKind::Cnot, "a", "b"),
                                      g2(GateKind::Cnot, "b", "c"), g1(GateKind::Post0, "b")},
                         {"a", "c"});
            r.rhs = make({"c", "b"}, {g1(GateKind::Prep0, "a"), g2(GateKind::Cnot, "c", "b"),
                                      g2(GateKind::Cnot, "a", "b"), g1(GateKind::Post0, "c")},
                         {"a", "b"});
        }
        return r;
    }

    if (id == "S3circ") {
        require(variant >= 0 && variant < 4, "S3circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"q"}, {g1(GateKind::Prep0, "p"), g2(GateKind::Cnot, "q", "p")}, {"p", "q"});
            r.rhs = make({"q"}, {g1(GateKind::Prep0, "p"), g2(GateKind::Cnot, "q", "p"),
                                 g2(GateKind::Swap, "p", "q")},
                         {"p", "q"});
        } else if (variant == 1) {
            r.lhs = make({"q"}, {g1(GateKind::PrepPlus, "p"), g2(GateKind::Cnot, "p", "q")},
                         {"p", "q"});
            r.rhs = make({"q"}, {g1(GateKind::PrepPlus, "p"), g2(GateKind::Cnot, "p", "q"),
                                 g2(GateKind::Swap, "p", "q")},
                         {"p", "q"});
        } else if (variant == 2) {
            r.lhs = make({"p", "q"}, {g2(GateKind::Cnot, "q", "p"), g1(GateKind::Post0, "p")}, {"q"});
            r.rhs = make({"p", "q"}, {g2(GateKind::Swap, "p", "q"), g2(GateKind::Cnot, "q", "p"),
                                      g1(GateKind::Post0, "p")},
                         {"q"});
        } else {
            r.lhs = make({"p", "q"}, {g2(GateKind::Cnot, "p", "q"), g1(GateKind::PostPlus, "p")},
                         {"q"});
            r.rhs = make({"p", "q"}, {g2(GateKind::Swap, "p", "q"), g2(GateKind::Cnot, "p", "q"),
                                      g1(GateKind::PostPlus, "p")},
                         {"q"});
        }
        return r;
    }

    if (id == "S4circ") {
        require(variant >= 0 && variant < 3, "S4circ variant out of range");
        const Circuit plus_form = make(
            {"q"}, {g1(GateKind::PrepPlus, "p"), g2(GateKind::Cnot, "p", "q"), g1(GateKind::Post0, "q")},
            {"p"});
        const Circuit zero_form = make(
            {"q"}, {g1(GateKind::Prep0, "p"), g2(GateKind::Cnot, "q", "p"), g1(GateKind::PostPlus, "q")},
            {"p"});
        if (variant == 0) {
            r.lhs = plus_form;
            r.rhs = zero_form;
        } else if (variant == 1) {
            r.lhs = plus_form;
            r.rhs = bare_wire();
        } else {
            r.lhs = zero_form;
            r.rhs = bare_wire();
        }
        return r;
    }

    if (id == "S5circ") {
        require(variant >= 0 && variant < 3, "S5circ variant out of range");
        const Circuit zero_form =
            make({"q"}, {g1(GateKind::Prep0, "p"), g2(GateKind::Cnot, "q", "p"),
                         g2(GateKind::Cnot, "q", "p"), g1(GateKind::Post0, "p")},
                 {"q"});
        const Circuit plus_form =
            make({"q"}, {g1(GateKind::PrepPlus, "p"), g2(GateKind::Cnot, "p", "q"),
                         g2(GateKind::Cnot, "p", "q"), g1(GateKind::PostPlus, "p")},
                 {"q"});
        if (variant == 0) {
            r.lhs = zero_form;
            r.rhs = plus_form;
        } else if (variant == 1) {
            r.lhs = plus_form;
            r.rhs = bare_wire();
        } else {
            r.lhs = zero_form;
            r.rhs = bare_wire();
        }
        return r;
    }

    if (id == "S6circ") {
        require(variant >= 0 && variant < 2, "S6circ variant out of range");
        const GateKind rot = variant == 0 ? GateKind::RotZ : GateKind::RotX;
        r.lhs = make({"w"}, {g1(rot, "w", a), g1(rot, "w", b)}, {"w"});
        const int sum = norm4(a + b);
        r.rhs = sum == 0 ? bare_wire() : make({"w"}, {g1(rot, "w", sum)}, {"w"});
        return r;
    }

    if (id == "B1circ") {
        require(variant >= 0 && variant < 4, "B1circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"t"}, {g1(GateKind::Prep0, "c"), g2(GateKind::Cnot, "c", "t")}, {"c", "t"});
            r.rhs = make({"t"}, {g1(GateKind::Prep0, "c")}, {"c", "t"});
        } else if (variant == 1) {
            r.lhs = make({"c"}, {g1(GateKind::PrepPlus, "t"), g2(GateKind::Cnot, "c", "t")},
                         {"c", "t"});
            r.rhs = make({"c"}, {g1(GateKind::PrepPlus, "t")}, {"c", "t"});
        } else if (variant == 2) {
            r.lhs = make({"c", "t"}, {g2(GateKind::Cnot, "c", "t"), g1(GateKind::Post0, "c")}, {"t"});
            r.rhs = make({"c", "t"}, {g1(GateKind::Post0, "c")}, {"t"});
        } else {
            r.lhs = make({"c", "t"}, {g2(GateKind::Cnot, "c", "t"), g1(GateKind::PostPlus, "t")},
                         {"c"});
            r.rhs = make({"c", "t"}, {g1(GateKind::PostPlus, "t")}, {"c"});
        }
        return r;
    }

    if (id == "B2circ") {
        require(variant >= 0 && variant < 2, "B2circ variant out of range");
        const Circuit c1 =
            make({"a", "b"}, {g2(GateKind::Cnot, "a", "b"), g2(GateKind::Cnot, "b", "a")}, {"a", "b"});
        const Circuit c2 =
            make({"a", "b"}, {g2(GateKind::Cnot, "b", "a"), g2(GateKind::Swap, "a", "b")}, {"a", "b"});
        const Circuit c3 =
            make({"a", "b"}, {g2(GateKind::Swap, "a", "b"), g2(GateKind::Cnot, "a", "b")}, {"a", "b"});
        if (variant == 0) {
            r.lhs = c1;
            r.rhs = c2;
        } else {
            r.lhs = c2;
            r.rhs = c3;
        }
        return r;
    }

    if (id == "K1circ") {
        require(variant >= 0 && variant < 4, "K1circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"t"}, {g1(GateKind::Prep0, "c"), g1(GateKind::RotX, "c", 2),
                                 g2(GateKind::Cnot, "c", "t")},
                         {"c", "t"});
            r.rhs = make({"t"}, {g1(GateKind::Prep0, "c"), g1(GateKind::RotX, "c", 2),
                                 g1(GateKind::RotX, "t", 2)},
                         {"c", "t"});
        } else if (variant == 1) {
            r.lhs = make({"c"}, {g1(GateKind::PrepPlus, "t"), g1(GateKind::RotZ, "t", 2),
                                 g2(GateKind::Cnot, "c", "t")},
                         {"c", "t"});
            r.rhs = make({"c"}, {g1(GateKind::PrepPlus, "t"), g1(GateKind::RotZ, "t", 2),
                                 g1(GateKind::RotZ, "c", 2)},
                         {"c", "t"});
        } else if (variant == 2) {
            r.lhs = make({"c", "t"}, {g2(GateKind::Cnot, "c", "t"), g1(GateKind::RotX, "c", 2),
                                      g1(GateKind::Post0, "c")},
                         {"t"});
            r.rhs = make({"c", "t"}, {g1(GateKind::RotX, "t", 2), g1(GateKind::RotX, "c", 2),
                                      g1(GateKind::Post0, "c")},
                         {"t"});
        } else {
            r.lhs = make({"c", "t"}, {g2(GateKind::Cnot, "c", "t"), g1(GateKind::RotZ, "t", 2),
                                      g1(GateKind::PostPlus, "t")},
                         {"c"});
            r.rhs = make({"c", "t"}, {g1(GateKind::RotZ, "c", 2), g1(GateKind::RotZ, "t", 2),
                                      g1(GateKind::PostPlus, "t")},
                         {"c"});
        }
        return r;
    }

    if (id == "K2circ") {
        require(variant >= 0 && variant < 2, "K2circ variant out of range");
        if (variant == 0) {
            r.lhs = make({"w"}, {g1(GateKind::RotZ, "w", 2), g1(GateKind::RotX, "w", a)}, {"w"});
            r.rhs = make({"w"}, {g1(GateKind::RotX, "w", norm4(-a)), g1(GateKind::RotZ, "w", 2)},
                         {"w"});
        } else {
            r.lhs = make({"w"}, {g1(GateKind::RotX, "w", 2), g1(GateKind::RotZ, "w", a)}, {"w"});
            r.rhs = make({"w"}, {g1(GateKind::RotZ, "w", norm4(-a)), g1(GateKind::RotX, "w", 2)},
                         {"w"});
        }
        return r;
    }

    if (id == "Hcirc") {
        require(variant == 0, "Hcirc has a single variant");
        r.lhs = make({"w"}, {g1(GateKind::H, "w")}, {"w"});
        r.rhs = make({"w"}, {g1(GateKind::RotZ, "w", 1), g1(GateKind::RotX, "w", 1),
                             g1(GateKind::RotZ, "w", 1)},
                     {"w"});
        return r;
    }

    if (id == "Ccirc") {
        require(variant >= 0 && variant < 2, "Ccirc variant out of range");
        if (variant == 0) {
            require(params.n_in >= 0 && params.n_out >= 0 && params.n_in + params.n_out >= 1,
                    "Ccirc ladder needs at least one leg");
            r.lhs = x_ladder(params.n_in, params.n_out, a);
            r.rhs = with_h_on_stubs(z_ladder(params.n_in, params.n_out, a));
        } else {
            require(params.k >= 1, "Ccirc caps needs k >= 1");
            r.lhs = ccirc_caps(params.k, a, true);
            r.rhs = ccirc_caps(params.k, a, false);
        }
        return r;
    }

    throw Error("unknown circuit rule id '" + id + "'");
}

std::vector<CircRuleKey> circ_catalog_sweep(int ccirc_max) {
    std::vector<CircRuleKey> keys;
    auto add = [&](const std::string& id, int variant, CircRuleParams p = {}) {
        keys.push_back({id, variant, p});
    };
    for (int v = 0; v < 4; ++v) {
        add("S1circ", v);
        add("S2circ", v);
        add("S3circ", v);
        add("B1circ", v);
        add("K1circ", v);
    }
    for (int v = 0; v < 3; ++v) {
        add("S4circ", v);
        add("S5circ", v);
    }
    for (int v = 0; v < 2; ++v) {
        for (int alpha = 0; alpha < 4; ++alpha) {
            for (int beta = 0; beta < 4; ++beta) {
                CircRuleParams p;
                p.alpha = alpha;
                p.beta = beta;
                add("S6circ", v, p);
            }
            CircRuleParams p;
            p.alpha = alpha;
            add("K2circ", v, p);
        }
        add("B2circ", v);
    }
    add("Hcirc", 0);
    for (int n = 0; n <= ccirc_max; ++n) {
        for (int m = 0; m + n <= ccirc_max; ++m) {
            if (n + m == 0) {
                continue;
            }
            for (int alpha = 0; alpha < 4; ++alpha) {
                CircRuleParams p;
                p.n_in = n;
                p.n_out = m;
                p.alpha = alpha;
                add("Ccirc", 0, p);
            }
        }
    }
    for (int k = 1; k <= 3; ++k) {
        for (int alpha = 0; alpha < 4; ++alpha) {
            CircRuleParams p;
            p.k = k;
            p.alpha = alpha;
            add("Ccirc", 1, p);
        }
    }
    return keys;
}

// ---- wiring model -------------------------------------------------------

namespace {

struct Wiring {
    // source -> sink, one entry per wire segment
    std::map<Conn, Conn> next;

    static bool has_out_side(const Gate& g, int port) {
        (void)port;
        return !gate_destroys(g.kind);
    }
    static bool has_in_side(const Gate& g, int port) {
        (void)port;
        return !gate_creates(g.kind);
    }
};

Wiring host_wiring(const Circuit& c) {
    Wiring w;
    const auto touches = c.wire_touches();
    std::map<std::string, int> in_pos;
    for (int i = 0; i < c.num_inputs(); ++i) {
        in_pos[c.inputs()[i]] = i;
    }
    std::map<std::string, int> out_pos;
    for (int i = 0; i < c.num_outputs(); ++i) {
        out_pos[c.outputs()[i]] = i;
    }
    for (const auto& [wire, seq] : touches) {
        Conn src;
        if (const auto it = in_pos.find(wire); it != in_pos.end()) {
            src = Conn{Conn::Kind::HostInput, it->second, 0};
        } else {
            // created by its first touch (a prep)
            src = Conn{Conn::Kind::PortOut, seq.front().first, seq.front().second};
        }
        std::size_t start = in_pos.count(wire) != 0 ? 0 : 1;
        for (std::size_t i = start; i < seq.size(); ++i) {
            const auto [gi, port] = seq[i];
            w.next[src] = Conn{Conn::Kind::PortIn, gi, port};
            if (gate_destroys(c.gates()[gi].kind)) {
                src = Conn{Conn::Kind::HostInput, -1, -1}; // terminated
                break;
            }
            src = Conn{Conn::Kind::PortOut, gi, port};
        }
        if (const auto it = out_pos.find(wire); it != out_pos.end()) {
            w.next[src] = Conn{Conn::Kind::HostOutput, it->second, 0};
        }
    }
    return w;
}

} // namespace

std::string CircuitBinding::key() const {
    std::ostringstream os;
    for (int g : gate_map) {
        os << g << ",";
    }
    os << "|";
    for (bool f : swap_flipped) {
        os << (f ? 1 : 0);
    }
    os << "|";
    auto conn = [&](const Conn& c) {
        os << static_cast<int>(c.kind) << ":" << c.a << ":" << c.b << ";";
    };
    for (const auto& c : stub_in_src) {
        conn(c);
    }
    os << "|";
    for (const auto& c : stub_out_sink) {
        conn(c);
    }
    return os.str();
}

namespace {

struct MatchContext {
    const Circuit& host;
    const Circuit& pat;
    std::map<std::string, std::vector<std::pair<int, int>>> host_touches;
    std::map<std::string, std::vector<std::pair<int, int>>> pat_touches;
    Wiring wiring;
    std::vector<std::vector<bool>> reach; // host gate reachability
};

std::vector<std::vector<bool>> reachability(const Circuit& c) {
    const int n = static_cast<int>(c.gates().size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    const auto touches = c.wire_touches();
    std::vector<std::vector<int>> succ(n);
    for (const auto& [w, seq] : touches) {
        (void)w;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            succ[seq[i - 1].first].push_back(seq[i].first);
        }
    }
    // gates are already topologically ordered in the instruction list
    for (int g = n - 1; g >= 0; --g) {
        for (int s : succ[g]) {
            reach[g][s] = true;
            for (int t = 0; t < n; ++t) {
                if (reach[s][t]) {
                    reach[g][t] = true;
                }
            }
        }
    }
    return reach;
}

bool gates_compatible(const Gate& pg, const Gate& hg) {
    return pg.kind == hg.kind && pg.phase == hg.phase;
}

// Check one wire binding: the pattern touches on `pw` must map to a
// consecutive run of the host touches on `hw`, with creation/destruction
// alignment. Returns {run_start, run_end} on success.
std::optional<std::pair<int, int>> check_wire_run(const MatchContext& ctx, const std::string& pw,
                                                  const std::string& hw,
                                                  const std::vector<int>& gate_map,
                                                  const std::vector<bool>& flipped) {
    const auto& pseq = ctx.pat_touches.at(pw);
    const auto& hseq = ctx.host_touches.at(hw);
    if (pseq.empty()) {
        return std::make_pair(0, 0);
    }
    std::vector<std::pair<int, int>> mapped;
    for (const auto& [pg, pport] : pseq) {
        int hport = pport;
        if (ctx.pat.gates()[pg].kind == GateKind::Swap && flipped[pg]) {
            hport = 1 - pport;
        }
        mapped.emplace_back(gate_map[pg], hport);
    }
    // find the mapped run inside hseq (gate map is injective, so the first
    // element can occur at exactly one place)
    int start = -1;
    for (int i = 0; i < static_cast<int>(hseq.size()); ++i) {
        if (hseq[i] == mapped.front()) {
            start = i;
            break;
        }
    }
    if (start < 0) {
        return std::nullopt;
    }
    if (start + mapped.size() > hseq.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        if (hseq[start + i] != mapped[i]) {
            return std::nullopt;
        }
    }
    const int end = start + static_cast<int>(mapped.size());
    const bool p_created = gate_creates(ctx.pat.gates()[pseq.front().first].kind);
    const bool p_destroyed = gate_destroys(ctx.pat.gates()[pseq.back().first].kind);
    if (p_created && start != 0) {
        return std::nullopt;
    }
    if (p_destroyed && end != static_cast<int>(hseq.size())) {
        return std::nullopt;
    }
    // A pattern stub must not cut through nothing it can reattach: stubs are
    // fine anywhere, but a pattern wire that is neither created nor a stub-in
    // cannot exist (validation guarantees it is one of the two).
    return std::make_pair(start, end);
}

} // namespace

std::vector<CircuitBinding> find_circ_matches(const Circuit& host, const CircuitRule& rule,
                                              Direction dir) {
    const Circuit& pat = dir == Direction::LR ? rule.lhs : rule.rhs;
    MatchContext ctx{host, pat, host.wire_touches(), pat.wire_touches(), host_wiring(host),
                     reachability(host)};

    const int np = static_cast<int>(pat.gates().size());
    std::vector<int> gate_map(np, -1);
    std::vector<bool> flipped(np, false);
    std::vector<bool> used(host.gates().size(), false);
    std::map<std::string, std::string> wire_map; // pattern wire -> host wire
    std::map<std::string, std::string> wire_rev;
    std::vector<CircuitBinding> out;
    std::set<std::string> seen_keys;

    std::map<std::string, int> pat_in_pos;
    for (int i = 0; i < pat.num_inputs(); ++i) {
        pat_in_pos[pat.inputs()[i]] = i;
    }
    std::map<std::string, int> pat_out_pos;
    for (int i = 0; i < pat.num_outputs(); ++i) {
        pat_out_pos[pat.outputs()[i]] = i;
    }
    std::vector<std::string> bare_wires; // pattern wires with no touches
    for (const auto& [pw, seq] : ctx.pat_touches) {
        if (seq.empty()) {
            bare_wires.push_back(pw);
        }
    }

    auto try_bind_wire = [&](const std::string& pw, const std::string& hw) -> bool {
        const auto it = wire_map.find(pw);
        if (it != wire_map.end()) {
            return it->second == hw;
        }
        if (wire_rev.count(hw) != 0) {
            return false;
        }
        wire_map[pw] = hw;
        wire_rev[hw] = pw;
        return true;
    };

    auto finish_candidate = [&]() {
        // full wire-run validation
        std::map<std::string, std::pair<int, int>> runs;
        for (const auto& [pw, hw] : wire_map) {
            const auto run = check_wire_run(ctx, pw, hw, gate_map, flipped);
            if (!run) {
                return;
            }
            runs[pw] = *run;
        }
        // convexity: no host path leaving the matched set and re-entering
        std::vector<int> matched(gate_map.begin(), gate_map.end());
        for (int u : matched) {
            for (int v : matched) {
                if (u == v || !ctx.reach[u][v]) {
                    continue;
                }
                for (int w = 0; w < static_cast<int>(host.gates().size()); ++w) {
                    if (!used[w] && ctx.reach[u][w] && ctx.reach[w][v]) {
                        return;
                    }
                }
            }
        }
        // enumerate segments for bare pattern wires on yet-unbound host wires
        std::vector<std::vector<std::pair<std::string, int>>> seg_choices;
        for (std::size_t bw = 0; bw < bare_wires.size(); ++bw) {
            std::vector<std::pair<std::string, int>> choices;
            for (const auto& [hw, hseq] : ctx.host_touches) {
                if (wire_rev.count(hw) != 0) {
                    continue;
                }
                const bool host_is_input =
                    std::find(host.inputs().begin(), host.inputs().end(), hw) != host.inputs().end();
                for (int pos = 0; pos <= static_cast<int>(hseq.size()); ++pos) {
                    // the cut must land on a live stretch of the wire
                    if (pos == 0 && !host_is_input) {
                        continue;
                    }
                    if (pos == static_cast<int>(hseq.size()) && !hseq.empty() &&
                        gate_destroys(host.gates()[hseq.back().first].kind)) {
                        continue;
                    }
                    if (pos > 0 && gate_destroys(host.gates()[hseq[pos - 1].first].kind)) {
                        continue;
                    }
                    choices.emplace_back(hw, pos);
                }
            }
            if (choices.empty()) {
                return;
            }
            seg_choices.push_back(std::move(choices));
        }
        // iterate the cartesian product of segment choices
        std::vector<std::size_t> idx(bare_wires.size(), 0);
        for (;;) {
            // distinct host wires across bare assignments
            std::set<std::string> taken;
            bool ok = true;
            for (std::size_t i = 0; i < bare_wires.size(); ++i) {
                if (!taken.insert(seg_choices[i][idx[i]].first).second) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                CircuitBinding b;
                b.gate_map = gate_map;
                b.swap_flipped = flipped;
                b.stub_in_src.resize(pat.num_inputs());
                b.stub_out_sink.resize(pat.num_outputs());
                auto source_at = [&](const std::string& hw, int pos) -> Conn {
                    const auto& hseq = ctx.host_touches.at(hw);
                    if (pos == 0) {
                        const auto& ins = host.inputs();
                        const auto it = std::find(ins.begin(), ins.end(), hw);
                        if (it != ins.end()) {
                            return Conn{Conn::Kind::HostInput,
                                        static_cast<int>(it - ins.begin()), 0};
                        }
                        throw Error("internal: cut before creation");
                    }
                    return Conn{Conn::Kind::PortOut, hseq[pos - 1].first, hseq[pos - 1].second};
                };
                auto sink_at = [&](const std::string& hw, int pos) -> Conn {
                    const auto& hseq = ctx.host_touches.at(hw);
                    if (pos == static_cast<int>(hseq.size())) {
                        const auto& outs = host.outputs();
                        const auto it = std::find(outs.begin(), outs.end(), hw);
                        if (it != outs.end()) {
                            return Conn{Conn::Kind::HostOutput,
                                        static_cast<int>(it - outs.begin()), 0};
                        }
                        throw Error("internal: cut after destruction");
                    }
                    return Conn{Conn::Kind::PortIn, hseq[pos].first, hseq[pos].second};
                };
                bool valid = true;
                for (const auto& [pw, hw] : wire_map) {
                    const auto [s, e] = runs.at(pw);
                    if (const auto pin = pat_in_pos.find(pw); pin != pat_in_pos.end()) {
                        b.stub_in_src[pin->second] = source_at(hw, s);
                    }
                    if (const auto pout = pat_out_pos.find(pw); pout != pat_out_pos.end()) {
                        b.stub_out_sink[pout->second] = sink_at(hw, e);
                    }
                }
                for (std::size_t i = 0; i < bare_wires.size(); ++i) {
                    const auto& [hw, pos] = seg_choices[i][idx[i]];
                    const auto pin = pat_in_pos.find(bare_wires[i]);
                    const auto pout = pat_out_pos.find(bare_wires[i]);
                    if (pin == pat_in_pos.end() || pout == pat_out_pos.end()) {
                        valid = false;
                        break;
                    }
                    // sanity: pos must sit on a live stretch of the wire
                    b.stub_in_src[pin->second] = source_at(hw, pos);
                    b.stub_out_sink[pout->second] = sink_at(hw, pos);
                }
                if (valid) {
                    const std::string k = b.key();
                    if (seen_keys.insert(k).second) {
                        // Bare-wire cut positions can still be causally inside
                        // the fragment; keep only bindings whose splice yields
                        // an acyclic circuit.
                        try {
                            (void)apply_circ_rule(host, rule, dir, b);
                            out.push_back(std::move(b));
                        } catch (const Error&) {
                            // unsplicable candidate; skip
                        }
                    }
                }
            }
            // advance the cartesian product
            std::size_t d = 0;
            while (d < idx.size()) {
                if (++idx[d] < seg_choices[d].size()) {
                    break;
                }
                idx[d] = 0;
                ++d;
            }
            if (d == idx.size()) {
                break;
            }
        }
    };

    std::function<void(int)> rec = [&](int pi) {
        if (pi == np) {
            finish_candidate();
            return;
        }
        const Gate& pg = pat.gates()[pi];
        for (int hi = 0; hi < static_cast<int>(host.gates().size()); ++hi) {
            if (used[hi] || !gates_compatible(pg, host.gates()[hi])) {
                continue;
            }
            const Gate& hg = host.gates()[hi];
            const int orientations = pg.kind == GateKind::Swap ? 2 : 1;
            for (int o = 0; o < orientations; ++o) {
                const auto saved_map = wire_map;
                const auto saved_rev = wire_rev;
                bool ok = true;
                for (std::size_t p = 0; p < pg.wires.size() && ok; ++p) {
                    const std::size_t hp = (o == 1) ? 1 - p : p;
                    ok = try_bind_wire(pg.wires[p], hg.wires[hp]);
                }
                if (ok) {
                    gate_map[pi] = hi;
                    flipped[pi] = o == 1;
                    used[hi] = true;
                    rec(pi + 1);
                    used[hi] = false;
                    gate_map[pi] = -1;
                }
                wire_map = saved_map;
                wire_rev = saved_rev;
            }
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(),
              [](const CircuitBinding& a, const CircuitBinding& b) { return a.key() < b.key(); });
    return out;
}

// ---- splice assembler ---------------------------------------------------

namespace {

// Rebuilds a circuit from an edited wiring. Gate references < host size are
// host gates, the rest are freshly added ones.
class Assembler {
public:
    explicit Assembler(const Circuit& host) : host_(host), wiring_(host_wiring(host).next) {
        for (const auto& g : host.gates()) {
            gates_.push_back(g);
            alive_.push_back(true);
        }
    }

    int add_gate(GateKind kind, int phase = 0) {
        Gate g;
        g.kind = kind;
        g.phase = phase;
        g.wires.assign(static_cast<std::size_t>(gate_arity(kind)), "");
        gates_.push_back(std::move(g));
        alive_.push_back(true);
        return static_cast<int>(gates_.size()) - 1;
    }

    void delete_gate(int gi) {
        alive_[gi] = false;
        for (auto it = wiring_.begin(); it != wiring_.end();) {
            const bool src_hit = it->first.kind == Conn::Kind::PortOut && it->first.a == gi;
            const bool snk_hit = it->second.kind == Conn::Kind::PortIn && it->second.a == gi;
            it = (src_hit || snk_hit) ? wiring_.erase(it) : std::next(it);
        }
    }

    void connect(const Conn& src, const Conn& snk) {
        wiring_.erase(src);
        wiring_[src] = snk;
    }

    const Gate& gate(int gi) const { return gates_[gi]; }
    bool alive(int gi) const { return alive_[gi]; }

    std::optional<Conn> source_feeding(const Conn& sink) const {
        for (const auto& [s, t] : wiring_) {
            if (t == sink) {
                return s;
            }
        }
        return std::nullopt;
    }

    Conn sink_of(const Conn& src) const {
        const auto it = wiring_.find(src);
        if (it == wiring_.end()) {
            throw Error("internal: dangling source in splice");
        }
        return it->second;
    }

    Circuit finish() {
        // Trace chains from every origin, naming wires and collecting order
        // constraints.
        std::vector<std::string> outputs(host_.outputs().size());
        std::map<int, std::vector<std::pair<int, int>>> chain_touches; // chain -> (gate, port)
        std::vector<std::string> chain_name;
        std::map<std::pair<int, int>, int> port_chain; // (gate, port) -> chain

        std::set<std::string> taken_names;
        int fresh = 0;
        auto fresh_name = [&]() {
            std::string n;
            do {
                n = "_f" + std::to_string(fresh++);
            } while (taken_names.count(n) != 0);
            taken_names.insert(n);
            return n;
        };

        std::vector<std::pair<Conn, std::string>> origins;
        for (int i = 0; i < host_.num_inputs(); ++i) {
            origins.push_back({Conn{Conn::Kind::HostInput, i, 0}, host_.inputs()[i]});
            taken_names.insert(host_.inputs()[i]);
        }
        for (int gi = 0; gi < static_cast<int>(gates_.size()); ++gi) {
            if (!alive_[gi] || !gate_creates(gates_[gi].kind)) {
                continue;
            }
            std::string name;
            if (gi < static_cast<int>(host_.gates().size())) {
                name = host_.gates()[gi].wires[0];
                taken_names.insert(name);
            }
            origins.push_back({Conn{Conn::Kind::PortOut, gi, 0}, name});
        }
        int used_segments = 0;
        for (auto& [origin, preset_name] : origins) {
            const int chain = static_cast<int>(chain_name.size());
            std::string name = preset_name.empty() ? fresh_name() : preset_name;
            chain_name.push_back(name);
            if (origin.kind == Conn::Kind::PortOut) {
                port_chain[{origin.a, origin.b}] = chain;
                chain_touches[chain].push_back({origin.a, origin.b});
            }
            Conn src = origin;
            for (;;) {
                const Conn snk = sink_of(src);
                ++used_segments;
                if (snk.kind == Conn::Kind::HostOutput) {
                    outputs[static_cast<std::size_t>(snk.a)] = name;
                    break;
                }
                if (snk.kind != Conn::Kind::PortIn) {
                    throw Error("internal: bad sink kind");
                }
                const int gi = snk.a;
                if (!alive_[gi]) {
                    throw Error("internal: wire runs into a deleted gate");
                }
                port_chain[{gi, snk.b}] = chain;
                chain_touches[chain].push_back({gi, snk.b});
                if (gate_destroys(gates_[gi].kind)) {
                    break;
                }
                src = Conn{Conn::Kind::PortOut, gi, snk.b};
            }
        }
        if (used_segments != static_cast<int>(wiring_.size())) {
            throw Error("splice left a disconnected loop of wires");
        }

        // Assign wire names to gate ports and order gates.
        std::vector<Gate> live;
        std::map<int, int> live_index;
        for (int gi = 0; gi < static_cast<int>(gates_.size()); ++gi) {
            if (!alive_[gi]) {
                continue;
            }
            Gate g = gates_[gi];
            for (int p = 0; p < gate_arity(g.kind); ++p) {
                const auto it = port_chain.find({gi, p});
                if (it == port_chain.end()) {
                    throw Error("internal: unwired gate port after splice");
                }
                g.wires[static_cast<std::size_t>(p)] = chain_name[it->second];
            }
            live_index[gi] = static_cast<int>(live.size());
            live.push_back(std::move(g));
        }
        // dependency edges from chain adjacency
        const int n = static_cast<int>(live.size());
        std::vector<std::set<int>> succ(n);
        std::vector<int> indeg(n, 0);
        for (const auto& [chain, seq] : chain_touches) {
            (void)chain;
            for (std::size_t i = 1; i < seq.size(); ++i) {
                const int u = live_index.at(seq[i - 1].first);
                const int v = live_index.at(seq[i].first);
                if (u != v && succ[u].insert(v).second) {
                    ++indeg[v];
                }
            }
        }
        std::set<int> ready;
        for (int i = 0; i < n; ++i) {
            if (indeg[i] == 0) {
                ready.insert(i);
            }
        }
        std::vector<Gate> ordered;
        while (!ready.empty()) {
            const int u = *ready.begin();
            ready.erase(ready.begin());
            ordered.push_back(live[static_cast<std::size_t>(u)]);
            for (int v : succ[u]) {
                if (--indeg[v] == 0) {
                    ready.insert(v);
                }
            }
        }
        if (ordered.size() != live.size()) {
            throw Error("splice would create a cyclic circuit (non-convex cut)");
        }
        return Circuit(host_.inputs(), std::move(ordered), std::move(outputs));
    }

private:
    const Circuit& host_;
    std::map<Conn, Conn> wiring_;
    std::vector<Gate> gates_;
    std::vector<bool> alive_;
};

} // namespace

Circuit apply_circ_rule(const Circuit& host, const CircuitRule& rule, Direction dir,
                        const CircuitBinding& binding) {
    const Circuit& pat = dir == Direction::LR ? rule.lhs : rule.rhs;
    const Circuit& rep = dir == Direction::LR ? rule.rhs : rule.lhs;
    if (binding.gate_map.size() != pat.gates().size() ||
        binding.stub_in_src.size() != static_cast<std::size_t>(pat.num_inputs()) ||
        binding.stub_out_sink.size() != static_cast<std::size_t>(pat.num_outputs())) {
        throw Error("stale or malformed binding");
    }
    for (std::size_t i = 0; i < binding.gate_map.size(); ++i) {
        const int hi = binding.gate_map[i];
        if (hi < 0 || hi >= static_cast<int>(host.gates().size()) ||
            !gates_compatible(pat.gates()[i], host.gates()[hi])) {
            throw Error("stale or malformed binding");
        }
    }

    Assembler as(host);
    for (const int hi : binding.gate_map) {
        as.delete_gate(hi);
    }
    // Instantiate the replacement side.
    std::map<std::string, int> rep_gate_ref; // not needed beyond wiring
    std::vector<int> refs;
    for (const auto& g : rep.gates()) {
        refs.push_back(as.add_gate(g.kind, g.phase));
    }
    std::map<std::string, int> rep_in;
    std::map<std::string, int> rep_out;
    for (int i = 0; i < rep.num_inputs(); ++i) {
        rep_in[rep.inputs()[i]] = i;
    }
    for (int i = 0; i < rep.num_outputs(); ++i) {
        rep_out[rep.outputs()[i]] = i;
    }
    for (const auto& [rw, seq] : rep.wire_touches()) {
        Conn src;
        if (const auto it = rep_in.find(rw); it != rep_in.end()) {
            src = binding.stub_in_src[static_cast<std::size_t>(it->second)];
        } else {
            src = Conn{Conn::Kind::PortOut, refs[static_cast<std::size_t>(seq.front().first)],
                       seq.front().second};
        }
        const std::size_t start = rep_in.count(rw) != 0 ? 0 : 1;
        bool terminated = false;
        for (std::size_t i = start; i < seq.size(); ++i) {
            const auto [pg, port] = seq[i];
            as.connect(src, Conn{Conn::Kind::PortIn, refs[static_cast<std::size_t>(pg)], port});
            if (gate_destroys(rep.gates()[static_cast<std::size_t>(pg)].kind)) {
                terminated = true;
                break;
            }
            src = Conn{Conn::Kind::PortOut, refs[static_cast<std::size_t>(pg)], port};
        }
        if (!terminated) {
            const auto it = rep_out.find(rw);
            if (it == rep_out.end()) {
                throw Error("internal: replacement wire has no end");
            }
            as.connect(src, binding.stub_out_sink[static_cast<std::size_t>(it->second)]);
        }
    }
    return as.finish();
}

// ---- (Scirc) ------------------------------------------------------------

ScircKind scirc_kind_from_string(const std::string& s) {
    if (s == "plus-control") {
        return ScircKind::PlusControl;
    }
    if (s == "zero-target") {
        return ScircKind::ZeroTarget;
    }
    if (s == "control-postplus") {
        return ScircKind::ControlPostplus;
    }
    if (s == "target-postzero") {
        return ScircKind::TargetPostzero;
    }
    throw Error("unknown Scirc fragment kind '" + s + "'");
}

std::string scirc_kind_name(ScircKind k) {
    switch (k) {
    case ScircKind::PlusControl: return "plus-control";
    case ScircKind::ZeroTarget: return "zero-target";
    case ScircKind::ControlPostplus: return "control-postplus";
    case ScircKind::TargetPostzero: return "target-postzero";
    }
    return "?";
}

namespace {

struct FragmentInfo {
    ScircKind kind;
    int cnot_gate = -1;
    int cap = -1; // the prep/post gate consumed by the fragment
};

// Locate the prep/post gate adjacent to the CNOT for the given kind; -1 if
// the fragment is not present at this CNOT.
int fragment_cap(const Circuit& host, ScircKind kind, int cnot,
                 const std::map<std::string, std::vector<std::pair<int, int>>>& touches) {
    const Gate& g = host.gates()[static_cast<std::size_t>(cnot)];
    if (g.kind != GateKind::Cnot) {
        return -1;
    }
    const bool on_control = kind == ScircKind::PlusControl || kind == ScircKind::ControlPostplus;
    const std::string& wire = g.wires[on_control ? 0 : 1];
    const auto& seq = touches.at(wire);
    const int port = on_control ? 0 : 1;
    int pos = -1;
    for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
        if (seq[i] == std::make_pair(cnot, port)) {
            pos = i;
            break;
        }
    }
    if (pos < 0) {
        return -1;
    }
    const bool before = kind == ScircKind::PlusControl || kind == ScircKind::ZeroTarget;
    const GateKind want = kind == ScircKind::PlusControl     ? GateKind::PrepPlus
                          : kind == ScircKind::ZeroTarget    ? GateKind::Prep0
                          : kind == ScircKind::ControlPostplus ? GateKind::PostPlus
                                                               : GateKind::Post0;
    if (before) {
        if (pos != 1 || host.gates()[static_cast<std::size_t>(seq[0].first)].kind != want) {
            return -1;
        }
        return seq[0].first;
    }
    if (pos + 2 != static_cast<int>(seq.size()) ||
        host.gates()[static_cast<std::size_t>(seq[static_cast<std::size_t>(pos) + 1].first)].kind !=
            want) {
        return -1;
    }
    return seq[static_cast<std::size_t>(pos) + 1].first;
}

} // namespace

std::vector<ScircFragment> find_scirc_fragments(const Circuit& host, ScircKind kind) {
    const auto touches = host.wire_touches();
    std::vector<ScircFragment> out;
    for (int gi = 0; gi < static_cast<int>(host.gates().size()); ++gi) {
        if (host.gates()[static_cast<std::size_t>(gi)].kind == GateKind::Cnot &&
            fragment_cap(host, kind, gi, touches) >= 0) {
            out.push_back(ScircFragment{kind, gi});
        }
    }
    return out;
}

Circuit splice_scirc(const Circuit& host, const std::vector<ScircFragment>& fragments) {
    if (fragments.empty()) {
        throw Error("Scirc: no fragments given");
    }
    const auto touches = host.wire_touches();
    std::vector<FragmentInfo> frags;
    std::set<int> consumed;
    for (const auto& f : fragments) {
        if (f.cnot_gate < 0 || f.cnot_gate >= static_cast<int>(host.gates().size())) {
            throw Error("Scirc: fragment anchor out of range");
        }
        const int cap = fragment_cap(host, f.kind, f.cnot_gate, touches);
        if (cap < 0) {
            throw Error("Scirc: fragment '" + scirc_kind_name(f.kind) +
                        "' not present at gate " + std::to_string(f.cnot_gate));
        }
        if (!consumed.insert(f.cnot_gate).second || !consumed.insert(cap).second) {
            throw Error("Scirc: overlapping fragments");
        }
        frags.push_back(FragmentInfo{f.kind, f.cnot_gate, cap});
    }

    Assembler as(host);

    struct Leg {
        bool is_in = false; // true: a source feeding the junction
        Conn conn;
        bool resolved = false;
    };
    struct Junction {
        bool x_colour = false; // surviving half: X for control-side fragments
        std::array<Leg, 3> legs;
        bool resolved = false;
    };

    const Wiring w = host_wiring(host);
    auto feeding = [&](const Conn& sink) -> Conn {
        for (const auto& [s, t] : w.next) {
            if (t == sink) {
                return s;
            }
        }
        throw Error("internal: no source for sink");
    };

    std::vector<Junction> junctions;
    std::map<int, int> junction_of_cnot;
    for (const auto& f : frags) {
        Junction j;
        // surviving half: target X when the fragment removes the control side
        j.x_colour = f.kind == ScircKind::PlusControl || f.kind == ScircKind::ControlPostplus;
        const int keep_port = j.x_colour ? 1 : 0; // the surviving half's wire
        const int drop_port = 1 - keep_port;
        j.legs[0] = Leg{true, feeding(Conn{Conn::Kind::PortIn, f.cnot_gate, keep_port}), false};
        j.legs[1] = Leg{false, w.next.at(Conn{Conn::Kind::PortOut, f.cnot_gate, keep_port}), false};
        if (f.kind == ScircKind::PlusControl || f.kind == ScircKind::ZeroTarget) {
            j.legs[2] = Leg{false, w.next.at(Conn{Conn::Kind::PortOut, f.cnot_gate, drop_port}), false};
        } else {
            j.legs[2] = Leg{true, feeding(Conn{Conn::Kind::PortIn, f.cnot_gate, drop_port}), false};
        }
        junction_of_cnot[f.cnot_gate] = static_cast<int>(junctions.size());
        junctions.push_back(j);
        as.delete_gate(f.cnot_gate);
        as.delete_gate(f.cap);
    }

    auto leg_partner_junction = [&](const Leg& leg) -> int {
        // a leg that points directly at another removed CNOT belongs to a
        // shared segment with that junction
        if (leg.is_in && leg.conn.kind == Conn::Kind::PortOut) {
            const auto it = junction_of_cnot.find(leg.conn.a);
            if (it != junction_of_cnot.end()) {
                return it->second;
            }
        }
        if (!leg.is_in && leg.conn.kind == Conn::Kind::PortIn) {
            const auto it = junction_of_cnot.find(leg.conn.a);
            if (it != junction_of_cnot.end()) {
                return it->second;
            }
        }
        return -1;
    };

    auto remaining_in_out = [&](Junction& j) -> std::pair<Conn, Conn> {
        std::optional<Conn> in;
        std::optional<Conn> out;
        for (const auto& leg : j.legs) {
            if (leg.resolved) {
                continue;
            }
            if (leg.is_in && !in) {
                in = leg.conn;
            } else if (!leg.is_in && !out) {
                out = leg.conn;
            } else {
                throw Error("Scirc: fragment removal does not yield a valid circuit "
                            "(freed wires cannot be oriented)");
            }
        }
        if (!in || !out) {
            throw Error("Scirc: fragment removal does not yield a valid circuit "
                        "(freed wires cannot be oriented)");
        }
        return {*in, *out};
    };

    // First resolve junction pairings (forced by shared segments).
    for (std::size_t a = 0; a < junctions.size(); ++a) {
        if (junctions[a].resolved) {
            continue;
        }
        for (auto& leg : junctions[a].legs) {
            const int b = leg_partner_junction(leg);
            if (b < 0 || static_cast<std::size_t>(b) == a) {
                continue;
            }
            Junction& ja = junctions[a];
            Junction& jb = junctions[static_cast<std::size_t>(b)];
            if (ja.resolved || jb.resolved) {
                throw Error("Scirc: junction pairing conflict");
            }
            if (ja.x_colour == jb.x_colour) {
                throw Error("Scirc: adjacent freed halves have the same colour");
            }
            leg.resolved = true;
            bool found = false;
            for (auto& other : jb.legs) {
                if (!other.resolved && leg_partner_junction(other) == static_cast<int>(a)) {
                    other.resolved = true;
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw Error("Scirc: junction pairing is not mutual");
            }
            const auto [ctrl_in, ctrl_out] = remaining_in_out(ja.x_colour ? jb : ja);
            const auto [tgt_in, tgt_out] = remaining_in_out(ja.x_colour ? ja : jb);
            const int nc = as.add_gate(GateKind::Cnot);
            as.connect(ctrl_in, Conn{Conn::Kind::PortIn, nc, 0});
            as.connect(Conn{Conn::Kind::PortOut, nc, 0}, ctrl_out);
            as.connect(tgt_in, Conn{Conn::Kind::PortIn, nc, 1});
            as.connect(Conn{Conn::Kind::PortOut, nc, 1}, tgt_out);
            ja.resolved = true;
            jb.resolved = true;
            break;
        }
    }

    // Then absorb adjacent same-basis caps.
    for (auto& j : junctions) {
        if (j.resolved) {
            continue;
        }
        const GateKind prep_cap = j.x_colour ? GateKind::Prep0 : GateKind::PrepPlus;
        const GateKind post_cap = j.x_colour ? GateKind::Post0 : GateKind::PostPlus;
        bool absorbed = false;
        for (auto& leg : j.legs) {
            if (leg.resolved) {
                continue;
            }
            int cap_gate = -1;
            if (leg.is_in && leg.conn.kind == Conn::Kind::PortOut &&
                as.alive(leg.conn.a) && as.gate(leg.conn.a).kind == prep_cap) {
                cap_gate = leg.conn.a;
            }
            if (!leg.is_in && leg.conn.kind == Conn::Kind::PortIn &&
                as.alive(leg.conn.a) && as.gate(leg.conn.a).kind == post_cap) {
                cap_gate = leg.conn.a;
            }
            if (cap_gate < 0) {
                continue;
            }
            leg.resolved = true;
            const auto [in, out] = remaining_in_out(j);
            as.delete_gate(cap_gate);
            as.connect(in, out);
            j.resolved = true;
            absorbed = true;
            break;
        }
        if (!absorbed) {
            throw Error("Scirc: fragment removal does not yield a valid circuit "
                        "(no adjacent cap or partner half)");
        }
    }

    return as.finish();
}

Circuit splice_scirc(const Circuit& host, ScircKind kind, const ScircFragment& fragment) {
    ScircFragment f = fragment;
    f.kind = kind;
    return splice_scirc(host, {f});
}

} // namespace stabrw
