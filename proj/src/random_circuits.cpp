#include "stabrw/random_circuits.hpp"

#include <algorithm>

namespace stabrw {

namespace {

std::string wire_name(int i) { return "w" + std::to_string(i); }

Gate random_gate_on(std::mt19937& rng, std::vector<std::string>& live, int& next_wire,
                    const RandomCircuitOptions& opts) {
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<int> phase(0, 3);
    auto live_wire = [&](int exclude = -1) {
        std::uniform_int_distribution<int> idx(0, static_cast<int>(live.size()) - 1);
        int i = idx(rng);
        while (i == exclude) {
            i = idx(rng);
        }
        return i;
    };

    const bool can_two = live.size() >= 2;
    const bool can_prep = opts.allow_preps && static_cast<int>(live.size()) < opts.max_wires;
    const bool can_post = opts.allow_posts && !live.empty();
    const bool can_one = !live.empty();

    for (;;) {
        const int r = pick(rng);
        if (r < 14 && can_prep) {
            const std::string w = wire_name(next_wire++);
            live.push_back(w);
            return Gate{r % 2 == 0 ? GateKind::Prep0 : GateKind::PrepPlus, 0, {w}};
        }
        if (r < 26 && can_post) {
            const int i = live_wire();
            const std::string w = live[i];
            live.erase(live.begin() + i);
            return Gate{r % 2 == 0 ? GateKind::Post0 : GateKind::PostPlus, 0, {w}};
        }
        if (r < 52 && can_two) {
            const int a = live_wire();
            const int b = live_wire(a);
            return Gate{r < 46 ? GateKind::Cnot : GateKind::Swap, 0, {live[a], live[b]}};
        }
        if (r < 100 && can_one) {
            const int i = live_wire();
            if (r < 70) {
                return Gate{GateKind::RotZ, phase(rng), {live[i]}};
            }
            if (r < 88) {
                return Gate{GateKind::RotX, phase(rng), {live[i]}};
            }
            return Gate{GateKind::H, 0, {live[i]}};
        }
        if (!can_one && !can_prep) {
            // Closed circuit with preps disabled; nothing to emit.
            return Gate{GateKind::H, 0, {}};
        }
    }
}

} // namespace

Circuit random_circuit(std::mt19937& rng, const RandomCircuitOptions& opts) {
    std::uniform_int_distribution<int> n_in_dist(opts.allow_posts ? 0 : 1, opts.max_wires);
    const int n_in = n_in_dist(rng);
    int next_wire = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> live;
    for (int i = 0; i < n_in; ++i) {
        inputs.push_back(wire_name(next_wire++));
        live.push_back(inputs.back());
    }
    std::uniform_int_distribution<int> n_gates_dist(0, opts.max_gates);
    const int n_gates = n_gates_dist(rng);
    std::vector<Gate> gates;
    for (int i = 0; i < n_gates; ++i) {
        auto g = random_gate_on(rng, live, next_wire, opts);
        if (g.wires.empty()) {
            break;
        }
        gates.push_back(std::move(g));
    }
    return Circuit(std::move(inputs), std::move(gates), live);
}

Circuit random_circuit_with_arities(std::mt19937& rng, int n_in, int n_out,
                                    const RandomCircuitOptions& opts) {
    int next_wire = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> live;
    for (int i = 0; i < n_in; ++i) {
        inputs.push_back(wire_name(next_wire++));
        live.push_back(inputs.back());
    }
    std::uniform_int_distribution<int> n_gates_dist(0, opts.max_gates);
    const int n_gates = n_gates_dist(rng);
    std::vector<Gate> gates;
    for (int i = 0; i < n_gates; ++i) {
        auto g = random_gate_on(rng, live, next_wire, opts);
        if (g.wires.empty()) {
            break;
        }
        gates.push_back(std::move(g));
    }
    std::uniform_int_distribution<int> post_kind(0, 1);
    while (static_cast<int>(live.size()) > n_out) {
        const std::string w = live.front();
        live.erase(live.begin());
        gates.push_back(Gate{post_kind(rng) == 0 ? GateKind::Post0 : GateKind::PostPlus, 0, {w}});
    }
    std::uniform_int_distribution<int> prep_kind(0, 1);
    while (static_cast<int>(live.size()) < n_out) {
        const std::string w = wire_name(next_wire++);
        gates.push_back(Gate{prep_kind(rng) == 0 ? GateKind::Prep0 : GateKind::PrepPlus, 0, {w}});
        live.push_back(w);
    }
    return Circuit(std::move(inputs), std::move(gates), live);
}

} // namespace stabrw
