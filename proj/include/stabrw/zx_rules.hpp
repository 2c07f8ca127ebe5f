#pragma once

#include "stabrw/circuit_rules.hpp"
#include "stabrw/zx.hpp"

#include <string>
#include <vector>

namespace stabrw {

struct ZxRuleParams {
    int alpha = 0;
    int beta = 0;
    int legs_a = 1; // S1: open legs on the first spider
    int legs_b = 1; // S1: open legs on the second spider
    int links = 1;  // S1: connecting edges
    int n_in = 1;   // C / primed C': leg split
    int n_out = 1;
    int k = 1;      // primed C' caps form
    int variant = 0;

    bool operator==(const ZxRuleParams&) const = default;
};

/// A named local rewrite: lhs and rhs share an interface of numbered legs
/// (encoded as Input-kind boundary vertices 0..legs-1).
struct ZxRule {
    std::string id;
    ZxRuleParams params;
    ZxDiagram lhs;
    ZxDiagram rhs;
    int legs = 0;
};

/// Build a rule instance. Native ids: S1.green/.red, S2.green/.red,
/// B1.green/.red, B2, B2.swapped, K1.green/.red, K2.green/.red, C, H,
/// So.green/.red (the pruning form of S'), and the two-spider forms
/// S1o..S6o (both colours). The primed set S1p..S6p, B1p, B2p, K1p, K2p,
/// Cp, Hp, Sp is realized as ZX images of the circuit equations.
ZxRule zx_rule_catalog(const std::string& id, const ZxRuleParams& params = {});

struct ZxRuleKey {
    std::string id;
    ZxRuleParams params;
};

/// All (id, params) instances the ZX soundness sweeps check.
std::vector<ZxRuleKey> zx_fig2_sweep(int max_arity = 6);
std::vector<ZxRuleKey> zx_primed_sweep(int ccirc_max = 5);

struct ZxHalfEdge {
    int edge = -1;
    int end = 0; // endpoint index (0 = u, 1 = v) sitting inside the match

    bool operator==(const ZxHalfEdge&) const = default;
};

struct ZxBinding {
    std::vector<int> vertex_map; // pattern vid (compacted) -> host vid; -1 on legs
    std::vector<ZxHalfEdge> legs;
    std::string key() const;
};

/// All occurrences of the directed rule side whose interior vertices have no
/// host edges beyond the matched ones; deterministic order.
std::vector<ZxBinding> find_zx_matches(const ZxDiagram& host, const ZxRule& rule, Direction dir);

/// Replace the matched interior by the other side, reconnecting interface
/// edges; the result is normalized and compacted.
ZxDiagram apply_zx_rule(const ZxDiagram& host, const ZxRule& rule, Direction dir,
                        const ZxBinding& binding);

} // namespace stabrw
