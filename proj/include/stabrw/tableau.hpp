#pragma once

#include "stabrw/circuit.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stabrw {

/// Canonical generating set of a stabilizer group over GF(2) with sign bits,
/// or the distinguished Zero value (a circuit whose Choi state vanishes).
struct StabTableau {
    bool zero = false;
    int qubits = 0;
    std::vector<std::vector<std::uint8_t>> x; // [row][qubit]
    std::vector<std::vector<std::uint8_t>> z;
    std::vector<std::uint8_t> sign;           // 0 -> +1, 1 -> -1
};

/// Parse rows like "+XZ", "-YI" into a tableau (for tests and debugging).
StabTableau tableau_from_paulis(const std::vector<std::string>& rows);

/// One generator per line in "+P1P2...Pn" form.
std::string tableau_str(const StabTableau& t);

/// Unique reduced-row-echelon form over GF(2) (x columns before z columns),
/// signs propagated exactly. Errors on anticommuting or dependent generators.
StabTableau tableau_canonical(const StabTableau& t);

/// Stabilizer tableau of the circuit's (unnormalized) Choi state: one Bell
/// pair per input, the circuit run on the second halves, postselections
/// applied as projections. Qubit order: references (input order), then
/// outputs (declared order). Returns Zero when a postselection outcome has
/// probability zero.
StabTableau choi_tableau(const Circuit& c);

/// Exact comparison through matrices (arity <= 12).
ProportionalVerdict equiv_exact(const Circuit& c1, const Circuit& c2);

/// Tableau comparison of Choi states; agrees with equiv_exact != Different
/// whenever both are computable.
bool equiv_tableau(const Circuit& c1, const Circuit& c2);

} // namespace stabrw
