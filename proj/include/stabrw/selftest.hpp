#pragma once

#include "stabrw/circuit_rules.hpp"
#include "stabrw/zx_rules.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stabrw {

struct SelftestOptions {
    int max_arity = 6;     // variadic ZX rule bound
    int ccirc_max = 5;     // Ccirc inputs+outputs bound
    int jobs = 0;          // 0: hardware concurrency
    int random_apps = 0;   // extra randomized application sweep
    std::uint32_t seed = 1;
};

struct RuleCheck {
    std::string catalog; // fig2 | primed | circuit | scirc | random
    std::string id;
    int variant = 0;
    std::string params;
    std::string verdict; // equal | proportional | bothzero | different | error: ...
    bool ok = false;
};

struct SelftestReport {
    std::vector<RuleCheck> checks;
    int failures = 0;
};

/// Oracle-check every rule in every catalog (and the Scirc splices on their
/// canned hosts); optionally also a randomized application sweep. Pure checks
/// fan out across worker threads.
SelftestReport run_selftest(const SelftestOptions& options = {});

std::string verdict_name(const ProportionalVerdict& v);

} // namespace stabrw
