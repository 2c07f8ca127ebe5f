#pragma once

#include "stabrw/circuit_rules.hpp"
#include "stabrw/zx_rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabrw {

/// One anchored rule application in a proof script. Exactly one of `match`
/// (index into the deterministic match list) or an explicit binding is given;
/// "T" steps carry nothing and leave the object unchanged.
struct DerivationStep {
    std::string rule;
    int variant = 0;
    CircRuleParams circ_params;
    ZxRuleParams zx_params;
    Direction direction = Direction::LR;
    std::optional<int> match;
    std::optional<CircuitBinding> circ_binding;
    std::optional<ZxBinding> zx_binding;
    std::vector<ScircFragment> fragments;     // Scirc steps
    std::vector<std::string> fragment_kinds;  // parallel to fragments, pre-resolution
    std::vector<int> fragment_matches;
    std::string note;
};

struct DerivationScript {
    bool is_zx = false;
    std::string initial_text;
    std::string target_text;
    std::vector<DerivationStep> steps;
};

/// Parse a JSON proof script; throws Error/ParseError on schema problems.
DerivationScript parse_derivation_script(const std::string& json_text);

struct StepReport {
    std::string rule;
    bool ok = false;
    std::string detail;
};

struct DerivationReport {
    bool accepted = false;
    int rejected_step = -1; // 0-based step index; steps.size() means target mismatch
    std::string reason;
    std::vector<StepReport> steps;
};

/// Check a circuit proof script: each step must apply at its anchor, every
/// intermediate must stay proportional to the initial circuit under the exact
/// oracle, and the final circuit must equal the target structurally.
DerivationReport verify_circ_derivation(const DerivationScript& script);

/// ZX counterpart; endpoints are compared with zx_iso.
DerivationReport verify_zx_derivation(const DerivationScript& script);

DerivationReport verify_derivation(const DerivationScript& script);

} // namespace stabrw
