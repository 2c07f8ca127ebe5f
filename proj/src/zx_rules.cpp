#include "stabrw/zx_rules.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stabrw {

namespace {

int norm4(int x) { return ((x % 4) + 4) % 4; }

struct Builder {
    ZxDiagram d;
    int next_leg = 0;

    int leg() { return d.add_vertex(ZxKind::Input, 0, next_leg++); }
    int spider(ZxKind k, int phase = 0) { return d.add_vertex(k, phase); }
    void edge(int u, int v, int times = 1) {
        for (int i = 0; i < times; ++i) {
            d.add_edge(u, v);
        }
    }
};

ZxKind other(ZxKind k) { return k == ZxKind::ZSpider ? ZxKind::XSpider : ZxKind::ZSpider; }

ZxKind colour_of(const std::string& id) {
    if (id.size() >= 6 && id.substr(id.size() - 6) == ".green") {
        return ZxKind::ZSpider;
    }
    if (id.size() >= 4 && id.substr(id.size() - 4) == ".red") {
        return ZxKind::XSpider;
    }
    throw Error("rule id '" + id + "' needs a .green or .red suffix");
}

std::string stem_of(const std::string& id) {
    const auto dot = id.find('.');
    return dot == std::string::npos ? id : id.substr(0, dot);
}

/// Circuit fragment -> pattern diagram: inputs become legs 0..n-1, outputs
/// legs n..n+m-1.
ZxDiagram circuit_fragment_to_pattern(const Circuit& c) {
    ZxDiagram img = circuit_to_zx(c);
    ZxDiagram out;
    std::vector<int> remap(img.vertices().size(), -1);
    const int n = c.num_inputs();
    for (int v : img.alive_vertices()) {
        const auto& vx = img.vertex(v);
        if (vx.kind == ZxKind::Input) {
            remap[v] = out.add_vertex(ZxKind::Input, 0, vx.boundary);
        } else if (vx.kind == ZxKind::Output) {
            remap[v] = out.add_vertex(ZxKind::Input, 0, n + vx.boundary);
        } else {
            remap[v] = out.add_vertex(vx.kind, vx.phase);
        }
    }
    for (int e : img.alive_edges()) {
        out.add_edge(remap[img.edge(e).u], remap[img.edge(e).v]);
    }
    return out;
}

ZxRule from_circ_rule(const std::string& id, const CircuitRule& cr, const ZxRuleParams& params) {
    ZxRule r;
    r.id = id;
    r.params = params;
    r.lhs = circuit_fragment_to_pattern(cr.lhs);
    r.rhs = circuit_fragment_to_pattern(cr.rhs);
    r.legs = cr.lhs.num_inputs() + cr.lhs.num_outputs();
    return r;
}

} // namespace

ZxRule zx_rule_catalog(const std::string& id, const ZxRuleParams& params) {
    ZxRule r;
    r.id = id;
    r.params = params;
    const std::string stem = stem_of(id);

    if (stem == "S1") {
        const ZxKind col = colour_of(id);
        if (params.legs_a < 0 || params.legs_b < 0 || params.links < 1 ||
            params.legs_a + params.legs_b > 10 || params.links > 2) {
            throw Error("S1 parameters out of range");
        }
        Builder l;
        const int a = l.spider(col, params.alpha);
        const int b = l.spider(col, params.beta);
        l.edge(a, b, params.links);
        for (int i = 0; i < params.legs_a; ++i) {
            l.edge(a, l.leg());
        }
        for (int i = 0; i < params.legs_b; ++i) {
            l.edge(b, l.leg());
        }
        Builder h;
        const int c = h.spider(col, norm4(params.alpha + params.beta));
        for (int i = 0; i < params.legs_a + params.legs_b; ++i) {
            h.edge(c, h.leg());
        }
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = params.legs_a + params.legs_b;
        return r;
    }

    if (stem == "S2") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int v = l.spider(col, 0);
        l.edge(v, l.leg());
        l.edge(v, l.leg());
        Builder h;
        h.edge(h.leg(), h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "B1" || stem == "K1") {
        const ZxKind col = colour_of(id);
        const int phase = stem == "K1" ? 2 : 0;
        Builder l;
        const int v = l.spider(col, 0);
        const int s = l.spider(other(col), phase);
        l.edge(s, v);
        l.edge(v, l.leg());
        l.edge(v, l.leg());
        Builder h;
        h.edge(h.spider(other(col), phase), h.leg());
        h.edge(h.spider(other(col), phase), h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "K2") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int pi = l.spider(col, 2);
        const int rot = l.spider(other(col), norm4(params.alpha));
        l.edge(l.leg(), pi);
        l.edge(pi, rot);
        l.edge(rot, l.leg());
        Builder h;
        const int rot2 = h.spider(other(col), norm4(-params.alpha));
        const int pi2 = h.spider(col, 2);
        h.edge(h.leg(), rot2);
        h.edge(rot2, pi2);
        h.edge(pi2, h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "B2" || id == "B2.swapped") {
        const ZxKind top = id == "B2.swapped" ? ZxKind::XSpider : ZxKind::ZSpider;
        const ZxKind bot = other(top);
        Builder l;
        const int za = l.spider(top, 0);
        const int zb = l.spider(top, 0);
        const int xc = l.spider(bot, 0);
        const int xd = l.spider(bot, 0);
        l.edge(za, xc);
        l.edge(za, xd);
        l.edge(zb, xc);
        l.edge(zb, xd);
        l.edge(za, l.leg());
        l.edge(zb, l.leg());
        l.edge(xc, l.leg());
        l.edge(xd, l.leg());
        Builder h;
        const int xm = h.spider(bot, 0);
        const int zc = h.spider(top, 0);
        h.edge(xm, zc);
        h.edge(xm, h.leg());
        h.edge(xm, h.leg());
        h.edge(zc, h.leg());
        h.edge(zc, h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 4;
        return r;
    }

    if (id == "C") {
        const int n = params.n_in + params.n_out;
        if (n < 1 || n > 10) {
            throw Error("C arity out of range");
        }
        Builder l;
        const int x = l.spider(ZxKind::XSpider, norm4(params.alpha));
        for (int i = 0; i < n; ++i) {
            const int hb = l.spider(ZxKind::HBox);
            l.edge(x, hb);
            l.edge(hb, l.leg());
        }
        Builder h;
        const int z = h.spider(ZxKind::ZSpider, norm4(params.alpha));
        for (int i = 0; i < n; ++i) {
            h.edge(z, h.leg());
        }
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = n;
        return r;
    }

    if (id == "H") {
        Builder l;
        const int hb = l.spider(ZxKind::HBox);
        l.edge(l.leg(), hb);
        l.edge(hb, l.leg());
        Builder h;
        const int z1 = h.spider(ZxKind::ZSpider, 1);
        const int x1 = h.spider(ZxKind::XSpider, 1);
        const int z2 = h.spider(ZxKind::ZSpider, 1);
        h.edge(h.leg(), z1);
        h.edge(z1, x1);
        h.edge(x1, z2);
        h.edge(z2, h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "So") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int v = l.spider(col, 0);
        const int pend = l.spider(col, 0);
        l.edge(v, pend);
        l.edge(v, l.leg());
        l.edge(v, l.leg());
        Builder h;
        h.edge(h.leg(), h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "S1o" || stem == "S2o") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int a = l.spider(col, 0);
        const int b = l.spider(col, 0);
        l.edge(a, b);
        const int g0 = l.leg();
        const int g1 = l.leg();
        const int g2 = l.leg();
        const int g3 = l.leg();
        l.edge(a, g0);
        l.edge(a, g1);
        l.edge(b, g2);
        l.edge(b, g3);
        Builder h;
        const int a2 = h.spider(col, 0);
        const int b2 = h.spider(col, 0);
        h.edge(a2, b2);
        const int h0 = h.leg();
        const int h1 = h.leg();
        const int h2 = h.leg();
        const int h3 = h.leg();
        if (stem == "S1o") {
            h.edge(a2, h0);
            h.edge(a2, h2);
            h.edge(b2, h1);
            h.edge(b2, h3);
        } else {
            h.edge(a2, h0);
            h.edge(a2, h3);
            h.edge(b2, h1);
            h.edge(b2, h2);
        }
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 4;
        return r;
    }

    if (stem == "S3o") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int v = l.spider(col, 0);
        l.edge(v, l.leg());
        l.edge(v, l.leg());
        l.edge(v, l.leg());
        r.lhs = l.d;
        r.rhs = l.d;
        r.legs = 3;
        return r;
    }

    if (stem == "S5o") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int a = l.spider(col, 0);
        const int b = l.spider(col, 0);
        l.edge(a, b, 2);
        l.edge(a, l.leg());
        l.edge(b, l.leg());
        Builder h;
        h.edge(h.leg(), h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    if (stem == "S6o") {
        const ZxKind col = colour_of(id);
        Builder l;
        const int a = l.spider(col, norm4(params.alpha));
        const int b = l.spider(col, norm4(params.beta));
        l.edge(l.leg(), a);
        l.edge(a, b);
        l.edge(b, l.leg());
        Builder h;
        const int c = h.spider(col, norm4(params.alpha + params.beta));
        h.edge(h.leg(), c);
        h.edge(c, h.leg());
        r.lhs = l.d;
        r.rhs = h.d;
        r.legs = 2;
        return r;
    }

    // Primed rules: circuit images of the complete circuit equation set.
    static const std::map<std::string, std::string> primed = {
        {"S1p", "S1circ"}, {"S2p", "S2circ"}, {"S3p", "S3circ"}, {"S4p", "S4circ"},
        {"S5p", "S5circ"}, {"S6p", "S6circ"}, {"B1p", "B1circ"}, {"B2p", "B2circ"},
        {"K1p", "K1circ"}, {"K2p", "K2circ"}, {"Cp", "Ccirc"},   {"Hp", "Hcirc"},
    };
    if (const auto it = primed.find(id); it != primed.end()) {
        CircRuleParams cp;
        cp.alpha = params.alpha;
        cp.beta = params.beta;
        cp.n_in = params.n_in;
        cp.n_out = params.n_out;
        cp.k = params.k;
        return from_circ_rule(id, circ_rule_catalog(it->second, params.variant, cp), params);
    }
    if (id == "Sp") {
        // (S') is rewritten with in its (So') form
        ZxRule so = zx_rule_catalog("So.green", params);
        so.id = "Sp";
        return so;
    }

    throw Error("unknown ZX rule id '" + id + "'");
}

std::vector<ZxRuleKey> zx_fig2_sweep(int max_arity) {
    std::vector<ZxRuleKey> keys;
    auto add = [&](const std::string& id, ZxRuleParams p = {}) { keys.push_back({id, p}); };
    for (const std::string col : {".green", ".red"}) {
        for (int alpha = 0; alpha < 4; ++alpha) {
            for (int beta = 0; beta < 4; ++beta) {
                for (int la = 0; la + 1 <= max_arity; ++la) {
                    for (int lb = 0; la + lb <= max_arity; ++lb) {
                        for (int links = 1; links <= 2; ++links) {
                            ZxRuleParams p;
                            p.alpha = alpha;
                            p.beta = beta;
                            p.legs_a = la;
                            p.legs_b = lb;
                            p.links = links;
                            add("S1" + col, p);
                        }
                    }
                }
            }
            ZxRuleParams p;
            p.alpha = alpha;
            add("K2" + col, p);
        }
        add("S2" + col);
        add("B1" + col);
        add("K1" + col);
        add("So" + col);
    }
    add("B2");
    add("B2.swapped");
    add("H");
    for (int n = 0; n <= max_arity; ++n) {
        for (int m = 0; n + m <= max_arity; ++m) {
            if (n + m == 0) {
                continue;
            }
            for (int alpha = 0; alpha < 4; ++alpha) {
                ZxRuleParams p;
                p.n_in = n;
                p.n_out = m;
                p.alpha = alpha;
                add("C", p);
            }
        }
    }
    return keys;
}

std::vector<ZxRuleKey> zx_primed_sweep(int ccirc_max) {
    static const std::map<std::string, std::string> rev = {
        {"S1circ", "S1p"}, {"S2circ", "S2p"}, {"S3circ", "S3p"}, {"S4circ", "S4p"},
        {"S5circ", "S5p"}, {"S6circ", "S6p"}, {"B1circ", "B1p"}, {"B2circ", "B2p"},
        {"K1circ", "K1p"}, {"K2circ", "K2p"}, {"Ccirc", "Cp"},   {"Hcirc", "Hp"},
    };
    std::vector<ZxRuleKey> keys;
    for (const auto& ck : circ_catalog_sweep(ccirc_max)) {
        ZxRuleParams p;
        p.alpha = ck.params.alpha;
        p.beta = ck.params.beta;
        p.n_in = ck.params.n_in;
        p.n_out = ck.params.n_out;
        p.k = ck.params.k;
        p.variant = ck.variant;
        keys.push_back({rev.at(ck.id), p});
    }
    keys.push_back({"Sp", {}});
    for (const std::string col : {".green", ".red"}) {
        keys.push_back({"S1o" + col, {}});
        keys.push_back({"S2o" + col, {}});
        keys.push_back({"S3o" + col, {}});
        keys.push_back({"S5o" + col, {}});
        for (int alpha = 0; alpha < 4; ++alpha) {
            for (int beta = 0; beta < 4; ++beta) {
                ZxRuleParams p;
                p.alpha = alpha;
                p.beta = beta;
                keys.push_back({"S6o" + col, p});
            }
        }
    }
    return keys;
}

std::string ZxBinding::key() const {
    std::ostringstream os;
    for (int v : vertex_map) {
        os << v << ",";
    }
    os << "|";
    for (const auto& h : legs) {
        os << h.edge << ":" << h.end << ";";
    }
    return os.str();
}

namespace {

struct PatternView {
    ZxDiagram pat; // compacted
    std::vector<int> interiors;
    std::vector<int> leg_vertex;                       // leg index -> pattern vid
    std::map<std::pair<int, int>, int> interior_mult;  // (u <= v) -> multiplicity
    std::map<int, std::vector<int>> legs_at;           // interior vid -> leg indices
    std::vector<std::pair<int, int>> leg_leg_edges;    // (leg i, leg j)
};

PatternView analyze(const ZxDiagram& raw, int legs) {
    PatternView pv;
    pv.pat = raw.compacted();
    pv.leg_vertex.assign(static_cast<std::size_t>(legs), -1);
    for (int v : pv.pat.alive_vertices()) {
        const auto& vx = pv.pat.vertex(v);
        if (vx.kind == ZxKind::Input) {
            pv.leg_vertex[static_cast<std::size_t>(vx.boundary)] = v;
        } else {
            pv.interiors.push_back(v);
        }
    }
    std::vector<int> leg_of(pv.pat.vertices().size(), -1);
    for (int i = 0; i < legs; ++i) {
        leg_of[static_cast<std::size_t>(pv.leg_vertex[static_cast<std::size_t>(i)])] = i;
    }
    for (int e : pv.pat.alive_edges()) {
        const auto& ed = pv.pat.edge(e);
        const int lu = leg_of[static_cast<std::size_t>(ed.u)];
        const int lv = leg_of[static_cast<std::size_t>(ed.v)];
        if (lu < 0 && lv < 0) {
            auto k = std::minmax(ed.u, ed.v);
            pv.interior_mult[{k.first, k.second}] += 1;
        } else if (lu >= 0 && lv >= 0) {
            pv.leg_leg_edges.emplace_back(std::min(lu, lv), std::max(lu, lv));
        } else if (lu >= 0) {
            pv.legs_at[ed.v].push_back(lu);
        } else {
            pv.legs_at[ed.u].push_back(lv);
        }
    }
    for (auto& [v, ls] : pv.legs_at) {
        (void)v;
        std::sort(ls.begin(), ls.end());
    }
    return pv;
}

int host_mult(const ZxDiagram& host, int u, int v) {
    int m = 0;
    for (int e : host.alive_edges()) {
        const auto& ed = host.edge(e);
        if ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) {
            ++m;
        }
    }
    return m;
}

} // namespace

std::vector<ZxBinding> find_zx_matches(const ZxDiagram& host, const ZxRule& rule, Direction dir) {
    const PatternView pv = analyze(dir == Direction::LR ? rule.lhs : rule.rhs, rule.legs);
    const auto host_alive = host.alive_vertices();

    std::vector<ZxBinding> out;
    std::set<std::string> seen;

    std::vector<int> vmap(pv.pat.vertices().size(), -1);
    std::vector<bool> used(host.vertices().size(), false);

    auto cls = [](const ZxDiagram& d, int v) {
        const auto& vx = d.vertex(v);
        return std::make_tuple(vx.kind, vx.phase, d.degree(v));
    };

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == pv.interiors.size()) {
            // interior edge multiplicities must be at least the pattern's and
            // the surplus is absorbed by leg stubs; enforce exact coverage by
            // counting stubs per vertex.
            std::map<int, int> free_count; // host vid -> free half-edges
            for (const int p : pv.interiors) {
                free_count[vmap[static_cast<std::size_t>(p)]] =
                    host.degree(vmap[static_cast<std::size_t>(p)]);
            }
            for (const auto& [pr, mult] : pv.interior_mult) {
                const int hu = vmap[static_cast<std::size_t>(pr.first)];
                const int hv = vmap[static_cast<std::size_t>(pr.second)];
                if (host_mult(host, hu, hv) < mult) {
                    return;
                }
                free_count[hu] -= mult;
                free_count[hv] -= mult;
            }
            for (const int p : pv.interiors) {
                const int stubs = pv.legs_at.count(p) != 0
                                      ? static_cast<int>(pv.legs_at.at(p).size())
                                      : 0;
                if (free_count[vmap[static_cast<std::size_t>(p)]] != stubs) {
                    return;
                }
            }
            // collect free half-edges per matched vertex (skip interior-
            // consumed ones, lowest edge ids first)
            std::map<int, std::vector<ZxHalfEdge>> free_at;
            std::map<std::pair<int, int>, int> to_consume;
            for (const auto& [pr, mult] : pv.interior_mult) {
                const int hu = vmap[static_cast<std::size_t>(pr.first)];
                const int hv = vmap[static_cast<std::size_t>(pr.second)];
                auto k = std::minmax(hu, hv);
                to_consume[{k.first, k.second}] = mult;
            }
            std::set<int> matched_set;
            for (const int p : pv.interiors) {
                matched_set.insert(vmap[static_cast<std::size_t>(p)]);
            }
            std::set<int> consumed_edges;
            for (int e : host.alive_edges()) {
                const auto& ed = host.edge(e);
                auto k = std::minmax(ed.u, ed.v);
                const auto it = to_consume.find({k.first, k.second});
                if (it != to_consume.end() && it->second > 0) {
                    consumed_edges.insert(e);
                    --it->second;
                }
            }
            for (int e : host.alive_edges()) {
                if (consumed_edges.count(e) != 0) {
                    continue;
                }
                const auto& ed = host.edge(e);
                if (matched_set.count(ed.u) != 0) {
                    free_at[ed.u].push_back({e, 0});
                }
                if (matched_set.count(ed.v) != 0) {
                    free_at[ed.v].push_back({e, 1});
                }
            }
            // assign legs: per vertex, all bijections stubs -> free halves
            std::vector<int> vertices_with_stubs;
            for (const auto& [p, ls] : pv.legs_at) {
                (void)ls;
                vertices_with_stubs.push_back(p);
            }
            std::vector<ZxHalfEdge> leg_assign(static_cast<std::size_t>(rule.legs));
            std::function<void(std::size_t)> assign = [&](std::size_t vi) {
                if (vi == vertices_with_stubs.size()) {
                    // leg-leg pattern edges: host edges with both ends free
                    std::function<void(std::size_t, std::set<int>)> assign_ll =
                        [&](std::size_t li, std::set<int> taken) {
                            if (li == pv.leg_leg_edges.size()) {
                                ZxBinding b;
                                b.vertex_map = vmap;
                                b.legs = leg_assign;
                                const auto k = b.key();
                                if (seen.insert(k).second) {
                                    out.push_back(std::move(b));
                                }
                                return;
                            }
                            const auto [li1, li2] = pv.leg_leg_edges[li];
                            for (int e : host.alive_edges()) {
                                if (taken.count(e) != 0 || consumed_edges.count(e) != 0) {
                                    continue;
                                }
                                const auto& ed = host.edge(e);
                                if (matched_set.count(ed.u) != 0 ||
                                    matched_set.count(ed.v) != 0 || ed.u == ed.v) {
                                    continue;
                                }
                                auto taken2 = taken;
                                taken2.insert(e);
                                leg_assign[static_cast<std::size_t>(li1)] = {e, 0};
                                leg_assign[static_cast<std::size_t>(li2)] = {e, 1};
                                assign_ll(li + 1, taken2);
                                leg_assign[static_cast<std::size_t>(li1)] = {e, 1};
                                leg_assign[static_cast<std::size_t>(li2)] = {e, 0};
                                assign_ll(li + 1, taken2);
                            }
                        };
                    assign_ll(0, {});
                    return;
                }
                const int p = vertices_with_stubs[vi];
                const auto& stubs = pv.legs_at.at(p);
                auto& halves = free_at[vmap[static_cast<std::size_t>(p)]];
                std::sort(halves.begin(), halves.end(),
                          [](const ZxHalfEdge& a, const ZxHalfEdge& b) {
                              return std::tie(a.edge, a.end) < std::tie(b.edge, b.end);
                          });
                std::vector<int> perm(halves.size());
                for (std::size_t j = 0; j < perm.size(); ++j) {
                    perm[j] = static_cast<int>(j);
                }
                do {
                    for (std::size_t j = 0; j < stubs.size(); ++j) {
                        leg_assign[static_cast<std::size_t>(stubs[j])] =
                            halves[static_cast<std::size_t>(perm[j])];
                    }
                    assign(vi + 1);
                } while (std::next_permutation(perm.begin(), perm.end()));
            };
            assign(0);
            return;
        }
        const int p = pv.interiors[i];
        for (int h : host_alive) {
            if (used[static_cast<std::size_t>(h)] || cls(pv.pat, p) != cls(host, h)) {
                continue;
            }
            vmap[static_cast<std::size_t>(p)] = h;
            used[static_cast<std::size_t>(h)] = true;
            rec(i + 1);
            used[static_cast<std::size_t>(h)] = false;
            vmap[static_cast<std::size_t>(p)] = -1;
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(),
              [](const ZxBinding& a, const ZxBinding& b) { return a.key() < b.key(); });
    return out;
}

ZxDiagram apply_zx_rule(const ZxDiagram& host, const ZxRule& rule, Direction dir,
                        const ZxBinding& binding) {
    const PatternView pv = analyze(dir == Direction::LR ? rule.lhs : rule.rhs, rule.legs);
    const PatternView rv = analyze(dir == Direction::LR ? rule.rhs : rule.lhs, rule.legs);
    if (binding.vertex_map.size() != pv.pat.vertices().size() ||
        binding.legs.size() != static_cast<std::size_t>(rule.legs)) {
        throw Error("stale or malformed ZX binding");
    }
    for (const int p : pv.interiors) {
        const int h = binding.vertex_map[static_cast<std::size_t>(p)];
        if (h < 0 || h >= static_cast<int>(host.vertices().size()) || !host.vertex(h).alive) {
            throw Error("stale or malformed ZX binding");
        }
        const auto& pvx = pv.pat.vertex(p);
        const auto& hvx = host.vertex(h);
        if (pvx.kind != hvx.kind || pvx.phase != hvx.phase) {
            throw Error("stale or malformed ZX binding");
        }
    }
    for (const auto& l : binding.legs) {
        if (l.edge < 0 || l.edge >= static_cast<int>(host.edges().size()) ||
            !host.edge(l.edge).alive) {
            throw Error("stale or malformed ZX binding");
        }
    }

    ZxDiagram result = host;
    std::set<int> matched;
    for (const int p : pv.interiors) {
        matched.insert(binding.vertex_map[static_cast<std::size_t>(p)]);
    }

    // Host side of each leg: the far endpoint of its half-edge, or another
    // leg when the host edge has both ends inside the match.
    std::vector<int> host_vertex(static_cast<std::size_t>(rule.legs), -1);
    std::vector<int> host_partner(static_cast<std::size_t>(rule.legs), -1);
    for (int i = 0; i < rule.legs; ++i) {
        const auto& he = binding.legs[static_cast<std::size_t>(i)];
        const auto& ed = host.edge(he.edge);
        const int far = he.end == 0 ? ed.v : ed.u;
        if (matched.count(far) == 0) {
            host_vertex[static_cast<std::size_t>(i)] = far;
            continue;
        }
        // The edge crosses the interface twice; its other half belongs to a
        // partner leg.
        bool paired = false;
        for (int j = 0; j < rule.legs; ++j) {
            if (j != i && binding.legs[static_cast<std::size_t>(j)].edge == he.edge &&
                binding.legs[static_cast<std::size_t>(j)].end != he.end) {
                host_partner[static_cast<std::size_t>(i)] = j;
                paired = true;
                break;
            }
        }
        if (!paired) {
            throw Error("stale ZX binding: leg edge ends inside the match without a partner");
        }
    }

    // Delete matched interiors (and the leg-leg host edges).
    for (const int v : matched) {
        result.remove_vertex(v);
    }
    for (const auto& l : binding.legs) {
        result.remove_edge(l.edge);
    }

    // Instantiate replacement interiors.
    std::vector<int> inst(rv.pat.vertices().size(), -1);
    for (const int p : rv.interiors) {
        const auto& vx = rv.pat.vertex(p);
        inst[static_cast<std::size_t>(p)] = result.add_vertex(vx.kind, vx.phase);
    }
    for (const auto& [pr, mult] : rv.interior_mult) {
        for (int i = 0; i < mult; ++i) {
            result.add_edge(inst[static_cast<std::size_t>(pr.first)],
                            inst[static_cast<std::size_t>(pr.second)]);
        }
    }

    // Replacement side of each leg: an instantiated vertex or another leg.
    std::vector<int> rhs_vertex(static_cast<std::size_t>(rule.legs), -1);
    std::vector<int> rhs_partner(static_cast<std::size_t>(rule.legs), -1);
    for (const auto& [v, ls] : rv.legs_at) {
        for (const int leg : ls) {
            rhs_vertex[static_cast<std::size_t>(leg)] = inst[static_cast<std::size_t>(v)];
        }
    }
    for (const auto& [i, j] : rv.leg_leg_edges) {
        rhs_partner[static_cast<std::size_t>(i)] = j;
        rhs_partner[static_cast<std::size_t>(j)] = i;
    }

    // Resolve interface wires. Each leg joins its host-side attachment to its
    // replacement-side anchor; paired legs chain through shared host edges or
    // replacement wires. Walk each alternating chain from a concrete endpoint
    // to the other; leftover all-leg cycles are closed loops, worth an exact
    // factor 2 (a phase-free spider with a self-loop).
    std::vector<bool> visited(static_cast<std::size_t>(rule.legs), false);
    auto walk = [&](int leg, bool entered_from_host) -> int {
        int cur = leg;
        bool from_host = entered_from_host;
        for (;;) {
            visited[static_cast<std::size_t>(cur)] = true;
            if (from_host) {
                if (rhs_vertex[static_cast<std::size_t>(cur)] >= 0) {
                    return rhs_vertex[static_cast<std::size_t>(cur)];
                }
                cur = rhs_partner[static_cast<std::size_t>(cur)];
                from_host = false;
            } else {
                if (host_vertex[static_cast<std::size_t>(cur)] >= 0) {
                    return host_vertex[static_cast<std::size_t>(cur)];
                }
                cur = host_partner[static_cast<std::size_t>(cur)];
                from_host = true;
            }
            if (cur < 0) {
                throw Error("internal: broken interface chain");
            }
        }
    };
    for (int i = 0; i < rule.legs; ++i) {
        if (!visited[static_cast<std::size_t>(i)] && host_vertex[static_cast<std::size_t>(i)] >= 0) {
            const int w = host_vertex[static_cast<std::size_t>(i)];
            result.add_edge(w, walk(i, true));
        }
    }
    for (int i = 0; i < rule.legs; ++i) {
        if (!visited[static_cast<std::size_t>(i)] && rhs_vertex[static_cast<std::size_t>(i)] >= 0) {
            const int r = rhs_vertex[static_cast<std::size_t>(i)];
            result.add_edge(r, walk(i, false));
        }
    }
    for (int i = 0; i < rule.legs; ++i) {
        if (visited[static_cast<std::size_t>(i)]) {
            continue;
        }
        int cur = i;
        bool from_host = true;
        do {
            visited[static_cast<std::size_t>(cur)] = true;
            cur = from_host ? rhs_partner[static_cast<std::size_t>(cur)]
                            : host_partner[static_cast<std::size_t>(cur)];
            from_host = !from_host;
            if (cur < 0) {
                throw Error("internal: broken interface cycle");
            }
        } while (!(cur == i && from_host));
        const int loop = result.add_vertex(ZxKind::ZSpider, 0);
        result.add_edge(loop, loop);
    }

    return zx_normalize(result).compacted();
}

} // namespace stabrw
