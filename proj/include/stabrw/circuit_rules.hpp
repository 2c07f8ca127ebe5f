#pragma once

#include "stabrw/circuit.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace stabrw {

enum class Direction { LR, RL };

struct CircRuleParams {
    int alpha = 0;
    int beta = 0;
    int n_in = 1;  // Ccirc ladder
    int n_out = 1; // Ccirc ladder
    int k = 1;     // Ccirc caps: number of controlled crossings

    bool operator==(const CircRuleParams&) const = default;
};

/// One concrete equation from the complete circuit rule set. lhs and rhs are
/// circuit fragments whose inputs/outputs are the open wire stubs; stub
/// correspondence is positional.
struct CircuitRule {
    std::string id;
    int variant = 0;
    CircRuleParams params;
    Circuit lhs;
    Circuit rhs;
};

/// Build a rule instance; throws on unknown id/variant or out-of-range params.
CircuitRule circ_rule_catalog(const std::string& id, int variant, const CircRuleParams& params = {});

struct CircRuleKey {
    std::string id;
    int variant = 0;
    CircRuleParams params;
};

/// Every (id, variant, params) the soundness sweep checks: all phases in
/// 0..3 and Ccirc with n_in + n_out <= ccirc_max (including the no-input and
/// no-output halves).
std::vector<CircRuleKey> circ_catalog_sweep(int ccirc_max = 5);

/// A wiring endpoint inside a circuit: a circuit input/output or a gate port
/// side. Used to address splice points.
struct Conn {
    enum class Kind { HostInput, HostOutput, PortOut, PortIn };
    Kind kind = Kind::HostInput;
    int a = 0; // input/output position, or gate index
    int b = 0; // port

    bool operator==(const Conn&) const = default;
    auto operator<=>(const Conn&) const = default;
};

struct CircuitBinding {
    std::vector<int> gate_map;        // pattern gate -> host gate
    std::vector<bool> swap_flipped;   // per pattern gate
    std::vector<Conn> stub_in_src;    // host source feeding each pattern input stub
    std::vector<Conn> stub_out_sink;  // host sink consuming each pattern output stub
    std::string key() const;
};

/// All convex embeddings of the directed rule side in the host, in a
/// deterministic order.
std::vector<CircuitBinding> find_circ_matches(const Circuit& host, const CircuitRule& rule,
                                              Direction dir);

Circuit apply_circ_rule(const Circuit& host, const CircuitRule& rule, Direction dir,
                        const CircuitBinding& binding);

// ---- (Scirc) wire splicing ----

enum class ScircKind { PlusControl, ZeroTarget, ControlPostplus, TargetPostzero };

ScircKind scirc_kind_from_string(const std::string& s);
std::string scirc_kind_name(ScircKind k);

struct ScircFragment {
    ScircKind kind = ScircKind::PlusControl;
    int cnot_gate = -1; // host gate index of the CNOT
};

/// Deterministic list of fragments of the given kind present in the host.
std::vector<ScircFragment> find_scirc_fragments(const Circuit& host, ScircKind kind);

/// Remove the given fragments simultaneously and splice the freed wires.
/// Each surviving CNOT half must either absorb an adjacent same-basis cap or
/// pair with an adjacent opposite-colour surviving half (forming a fresh
/// CNOT); otherwise the removal does not yield a valid circuit and an Error
/// is thrown.
Circuit splice_scirc(const Circuit& host, const std::vector<ScircFragment>& fragments);
Circuit splice_scirc(const Circuit& host, ScircKind kind, const ScircFragment& fragment);

} // namespace stabrw
