#pragma once

#include "stabrw/circuit.hpp"

#include <cstdint>
#include <random>

namespace stabrw {

struct RandomCircuitOptions {
    int max_wires = 4;   // cap on simultaneously live wires
    int max_gates = 12;
    bool allow_preps = true;
    bool allow_posts = true;
};

/// Seeded random valid circuit. Wires are named w0, w1, ...
Circuit random_circuit(std::mt19937& rng, const RandomCircuitOptions& opts = {});

/// Random circuit with the given interface arities (for oracle cross-checks).
Circuit random_circuit_with_arities(std::mt19937& rng, int n_in, int n_out,
                                    const RandomCircuitOptions& opts = {});

} // namespace stabrw
