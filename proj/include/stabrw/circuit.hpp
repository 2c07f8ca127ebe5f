#pragma once

#include "stabrw/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace stabrw {

/// Gate signature: CNOT, SWAP, computational/plus-basis preparations and
/// postselections, quarter-turn X/Z rotations, and H as a derived gate.
enum class GateKind { Cnot, Swap, Prep0, PrepPlus, Post0, PostPlus, RotX, RotZ, H };

int gate_arity(GateKind k);
bool gate_creates(GateKind k);
bool gate_destroys(GateKind k);
bool gate_has_phase(GateKind k);
std::string gate_name(GateKind k);

struct Gate {
    GateKind kind = GateKind::H;
    int phase = 0; // quarter turns mod 4 (RotX/RotZ only)
    std::vector<std::string> wires;

    bool operator==(const Gate& other) const = default;
};

/// A stabilizer circuit over named wires. The instruction list is kept in a
/// valid topological order; each wire is created exactly once (input or prep)
/// and destroyed exactly once (output or post), and is live in between.
class Circuit {
public:
    Circuit() = default;
    Circuit(std::vector<std::string> inputs, std::vector<Gate> gates,
            std::vector<std::string> outputs);

    const std::vector<std::string>& inputs() const noexcept { return inputs_; }
    const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }

    int num_inputs() const noexcept { return static_cast<int>(inputs_.size()); }
    int num_outputs() const noexcept { return static_cast<int>(outputs_.size()); }

    /// Ordered gate touches per wire as (gate index, port) pairs.
    std::map<std::string, std::vector<std::pair<int, int>>> wire_touches() const;

    bool operator==(const Circuit& other) const = default;

private:
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<Gate> gates_;

    void validate() const;
};

Circuit parse_circuit(const std::string& text);

/// Canonical text: wires renamed a, b, c, ... and gates emitted in a canonical
/// topological order, so parse/print/parse is a fixpoint.
std::string print_circuit(const Circuit& c);

/// DAG isomorphism preserving numbered inputs/outputs.
bool circuits_structurally_equal(const Circuit& c1, const Circuit& c2);

/// Exact 2^|out| x 2^|in| semantics. Evaluated by slicing the DAG with a
/// greedy schedule that keeps the live wire count small; errors if any slice
/// exceeds 12 live wires.
ExactMatrix circuit_to_matrix(const Circuit& c);

Circuit circuit_compose(const Circuit& f, const Circuit& g);
Circuit circuit_tensor(const Circuit& f, const Circuit& g);

ExactMatrix gate_matrix(GateKind kind, int phase);

} // namespace stabrw
