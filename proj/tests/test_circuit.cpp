#include "stabrw/circuit.hpp"
#include "stabrw/random_circuits.hpp"

#include <doctest.h>

#include <random>

using namespace stabrw;
using Kind = ProportionalVerdict::Kind;

namespace {

const char* kTeleport = R"(# post-selected teleportation
input a
prepplus b
prep0 c
cnot b c
cnot a b
postplus a
post0 b
output c
)";

} // namespace

TEST_CASE("parse basics") {
    const auto id = parse_circuit("input a\noutput a\n");
    CHECK(id.num_inputs() == 1);
    CHECK(id.num_outputs() == 1);
    CHECK(id.gates().empty());

    const auto tp = parse_circuit(kTeleport);
    CHECK(tp.num_inputs() == 1);
    CHECK(tp.num_outputs() == 1);
    CHECK(tp.gates().size() == 6);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_circuit("input a\npost0 a\npost0 a\noutput\n"), Error);
    CHECK_THROWS_AS(parse_circuit("input a\nfrobnicate a\noutput a\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("input a a\noutput a\n"), Error);
    CHECK_THROWS_AS(parse_circuit("input a\nh b\noutput a\n"), Error);
    CHECK_THROWS_AS(parse_circuit("input a\nrz a\noutput a\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("input a\noutput a b\n"), Error);
    CHECK_THROWS_AS(parse_circuit("input a\noutput\n"), Error);
    CHECK_THROWS_AS(parse_circuit("input a b\ncnot a a\noutput a b\n"), Error);
}

TEST_CASE("print canonicalizes and round-trips") {
    const auto id = parse_circuit("input x\noutput x\n");
    CHECK(print_circuit(id) == "input a\noutput a\n");

    const auto tp = parse_circuit(kTeleport);
    CHECK(circuits_structurally_equal(tp, parse_circuit(print_circuit(tp))));

    std::mt19937 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = random_circuit(rng);
        const auto text = print_circuit(c);
        const auto back = parse_circuit(text);
        CHECK(circuits_structurally_equal(c, back));
        // parse/print/parse is a fixpoint
        CHECK(print_circuit(back) == text);
    }
}

TEST_CASE("circuit_to_matrix on generators") {
    const auto cnot = circuit_to_matrix(parse_circuit("input a b\ncnot a b\noutput a b\n"));
    CHECK(cnot == gate_matrix(GateKind::Cnot, 0));

    const auto prep = circuit_to_matrix(parse_circuit("prep0 a\noutput a\n"));
    CHECK(prep.rows() == 2);
    CHECK(prep.cols() == 1);
    CHECK(prep.at(0, 0) == CliffordScalar::sqrt2());
    CHECK(prep.at(1, 0).is_zero());

    const auto tp = circuit_to_matrix(parse_circuit(kTeleport));
    const auto v = mat_proportional(tp, ExactMatrix::identity(1));
    CHECK(v.not_different());
    CHECK(v.kind != Kind::BothZero);
}

TEST_CASE("wire order in the matrix follows the declared interface") {
    // swap = exchange of tensor factors
    const auto sw = circuit_to_matrix(parse_circuit("input a b\nswap a b\noutput a b\n"));
    CHECK(sw == gate_matrix(GateKind::Swap, 0));
    // relabeling outputs realizes the same permutation without a gate
    const auto crossed = circuit_to_matrix(parse_circuit("input a b\noutput b a\n"));
    CHECK(crossed == gate_matrix(GateKind::Swap, 0));
}

TEST_CASE("compose and tensor") {
    const auto id = parse_circuit("input a\noutput a\n");
    const auto h = parse_circuit("input a\nh a\noutput a\n");
    CHECK(circuits_structurally_equal(circuit_compose(id, h), h));
    CHECK(circuits_structurally_equal(circuit_compose(h, id), h));

    const auto hh = circuit_compose(h, h);
    CHECK(circuit_to_matrix(hh) == mat_scale(ExactMatrix::identity(1), CliffordScalar::integer(2)));

    const auto prep = parse_circuit("prep0 a\noutput a\n");
    const auto post = parse_circuit("input a\npost0 a\noutput\n");
    const auto closed = circuit_compose(prep, post);
    CHECK(closed.num_inputs() == 0);
    CHECK(closed.num_outputs() == 0);
    CHECK(circuit_to_matrix(closed) == ExactMatrix::scalar(CliffordScalar::integer(2)));

    CHECK(circuit_tensor(id, id).num_inputs() == 2);
    const auto pp = circuit_to_matrix(circuit_tensor(prep, prep));
    CHECK(pp.at(0, 0) == CliffordScalar::integer(2));

    const auto empty = parse_circuit("input\noutput\n");
    CHECK(circuits_structurally_equal(circuit_tensor(empty, h), h));
}

TEST_CASE("functoriality on random circuits") {
    std::mt19937 rng(7);
    RandomCircuitOptions opts;
    opts.max_wires = 4;
    opts.max_gates = 10;
    int done = 0;
    while (done < 200) {
        const auto f = random_circuit(rng, opts);
        const auto g = random_circuit_with_arities(rng, f.num_outputs(),
                                                   std::uniform_int_distribution<int>(0, 3)(rng), opts);
        const auto fg = circuit_compose(f, g);
        CHECK(circuit_to_matrix(fg) == mat_mul(circuit_to_matrix(g), circuit_to_matrix(f)));

        const auto ft = circuit_tensor(f, g);
        CHECK(circuit_to_matrix(ft) == mat_tensor(circuit_to_matrix(f), circuit_to_matrix(g)));

        // dimension law
        const auto m = circuit_to_matrix(f);
        CHECK(m.rows() == (std::size_t{1} << f.num_outputs()));
        CHECK(m.cols() == (std::size_t{1} << f.num_inputs()));
        ++done;
    }
}

TEST_CASE("H macro-expands to rz rx rz up to scalar") {
    const auto h = circuit_to_matrix(parse_circuit("input a\nh a\noutput a\n"));
    const auto zxz = circuit_to_matrix(parse_circuit("input a\nrz a 1\nrx a 1\nrz a 1\noutput a\n"));
    const auto v = mat_proportional(h, zxz);
    CHECK(v.kind == Kind::Proportional);
}
