#include "stabrw/circuit_rules.hpp"
#include "stabrw/random_circuits.hpp"
#include "stabrw/tableau.hpp"

#include <doctest.h>

#include <random>

using namespace stabrw;
using Kind = ProportionalVerdict::Kind;

namespace {

ProportionalVerdict rule_verdict(const CircuitRule& r) {
    return mat_proportional(circuit_to_matrix(r.lhs), circuit_to_matrix(r.rhs));
}

} // namespace

TEST_CASE("every catalog entry is sound up to scalar") {
    const auto keys = circ_catalog_sweep(5);
    CHECK(keys.size() > 150);
    for (const auto& k : keys) {
        CAPTURE(k.id);
        CAPTURE(k.variant);
        const auto rule = circ_rule_catalog(k.id, k.variant, k.params);
        CHECK(rule.lhs.num_inputs() == rule.rhs.num_inputs());
        CHECK(rule.lhs.num_outputs() == rule.rhs.num_outputs());
        const auto v = rule_verdict(rule);
        CHECK(v.not_different());
    }
}

TEST_CASE("catalog rejects unknown ids and bad params") {
    CHECK_THROWS_AS(circ_rule_catalog("Qcirc", 0), Error);
    CHECK_THROWS_AS(circ_rule_catalog("S6circ", 7), Error);
    CHECK_THROWS_AS(circ_rule_catalog("Ccirc", 1, CircRuleParams{0, 0, 1, 1, 0}), Error);
}

TEST_CASE("rule instances look like the figure") {
    const auto h = circ_rule_catalog("Hcirc", 0);
    CHECK(h.lhs.gates().size() == 1);
    CHECK(h.rhs.gates().size() == 3);

    CircRuleParams p;
    p.alpha = 1;
    p.beta = 1;
    const auto s6 = circ_rule_catalog("S6circ", 0, p);
    CHECK(s6.rhs.gates().size() == 1);
    CHECK(s6.rhs.gates()[0].phase == 2);

    p.beta = 3;
    const auto s6z = circ_rule_catalog("S6circ", 0, p);
    CHECK(s6z.rhs.gates().empty()); // alpha + beta = 0 elides the rotation

    CircRuleParams cp;
    cp.n_in = 1;
    cp.n_out = 1;
    cp.alpha = 1;
    const auto c = circ_rule_catalog("Ccirc", 0, cp);
    CHECK(c.lhs.num_inputs() == 1);
    CHECK(c.lhs.num_outputs() == 1);
}

TEST_CASE("find matches on simple hosts") {
    const auto host = parse_circuit("input a\nrz a 1\nrz a 1\noutput a\n");
    CircRuleParams p;
    p.alpha = 1;
    p.beta = 1;
    const auto s6 = circ_rule_catalog("S6circ", 0, p);
    const auto ms = find_circ_matches(host, s6, Direction::LR);
    CHECK(ms.size() == 1);

    const auto hrule = circ_rule_catalog("Hcirc", 0);
    CHECK(find_circ_matches(parse_circuit("input a\nrz a 1\noutput a\n"), hrule, Direction::LR)
              .empty());
    CHECK(find_circ_matches(parse_circuit("input a\nh a\noutput a\n"), hrule, Direction::LR).size() ==
          1);
}

TEST_CASE("apply Hcirc and S6circ") {
    const auto hrule = circ_rule_catalog("Hcirc", 0);
    const auto host = parse_circuit("input a\nh a\noutput a\n");
    const auto ms = find_circ_matches(host, hrule, Direction::LR);
    REQUIRE(ms.size() == 1);
    const auto out = apply_circ_rule(host, hrule, Direction::LR, ms[0]);
    CHECK(circuits_structurally_equal(out,
                                      parse_circuit("input a\nrz a 1\nrx a 1\nrz a 1\noutput a\n")));
    CHECK(equiv_exact(host, out).not_different());

    CircRuleParams p;
    p.alpha = 1;
    p.beta = 1;
    const auto s6 = circ_rule_catalog("S6circ", 0, p);
    const auto host2 = parse_circuit("input a\nrz a 1\nrz a 1\noutput a\n");
    const auto ms2 = find_circ_matches(host2, s6, Direction::LR);
    REQUIRE(ms2.size() == 1);
    const auto out2 = apply_circ_rule(host2, s6, Direction::LR, ms2[0]);
    CHECK(circuits_structurally_equal(out2, parse_circuit("input a\nrz a 2\noutput a\n")));
}

TEST_CASE("apply K2circ moves the pi gate") {
    CircRuleParams p;
    p.alpha = 1;
    const auto k2 = circ_rule_catalog("K2circ", 1, p); // [rx2; rz1] = [rz3; rx2]
    const auto host = parse_circuit("input a\nrx a 2\nrz a 1\noutput a\n");
    const auto ms = find_circ_matches(host, k2, Direction::LR);
    REQUIRE(ms.size() == 1);
    const auto out = apply_circ_rule(host, k2, Direction::LR, ms[0]);
    CHECK(circuits_structurally_equal(out, parse_circuit("input a\nrz a 3\nrx a 2\noutput a\n")));
    CHECK(equiv_exact(host, out).not_different());
}

TEST_CASE("matching respects wire structure, not instruction interleaving") {
    // the two rz gates on wire a are adjacent on a even though a cnot on
    // other wires sits between them in the instruction list
    const auto host = parse_circuit(
        "input a b c\nrz a 1\ncnot b c\nrz a 1\noutput a b c\n");
    CircRuleParams p;
    p.alpha = 1;
    p.beta = 1;
    const auto s6 = circ_rule_catalog("S6circ", 0, p);
    const auto ms = find_circ_matches(host, s6, Direction::LR);
    REQUIRE(ms.size() == 1);
    const auto out = apply_circ_rule(host, s6, Direction::LR, ms[0]);
    CHECK(circuits_structurally_equal(
        out, parse_circuit("input a b c\nrz a 2\ncnot b c\noutput a b c\n")));
}

TEST_CASE("convexity forbids cutting around an outside gate") {
    // B2circ lhs = cnot(a->b); cnot(b->a). Host interleaves an H on wire a
    // between them, so the pair is not a convex fragment.
    const auto host =
        parse_circuit("input a b\ncnot a b\nh a\ncnot b a\noutput a b\n");
    const auto b2 = circ_rule_catalog("B2circ", 0);
    CHECK(find_circ_matches(host, b2, Direction::LR).empty());

    const auto host2 = parse_circuit("input a b\ncnot a b\ncnot b a\noutput a b\n");
    const auto ms = find_circ_matches(host2, b2, Direction::LR);
    REQUIRE(ms.size() == 1);
    const auto out = apply_circ_rule(host2, b2, Direction::LR, ms[0]);
    CHECK(equiv_exact(host2, out).not_different());
}

TEST_CASE("RL direction applies the rule backwards") {
    const auto hrule = circ_rule_catalog("Hcirc", 0);
    const auto host = parse_circuit("input a\nrz a 1\nrx a 1\nrz a 1\noutput a\n");
    const auto ms = find_circ_matches(host, hrule, Direction::RL);
    REQUIRE(!ms.empty());
    const auto out = apply_circ_rule(host, hrule, Direction::RL, ms[0]);
    CHECK(circuits_structurally_equal(out, parse_circuit("input a\nh a\noutput a\n")));
}

TEST_CASE("rules with bare through-wires apply (B1circ RL grows a cnot)") {
    const auto b1 = circ_rule_catalog("B1circ", 0); // prep0 c; cnot(c,t) = prep0 c (x) wire t
    const auto host = parse_circuit("input t\nprep0 c\noutput c t\n");
    const auto ms = find_circ_matches(host, b1, Direction::RL);
    REQUIRE(!ms.empty());
    const auto out = apply_circ_rule(host, b1, Direction::RL, ms[0]);
    CHECK(circuits_structurally_equal(out,
                                      parse_circuit("input t\nprep0 c\ncnot c t\noutput c t\n")));
}

TEST_CASE("application soundness on random hosts") {
    std::mt19937 rng(20240);
    RandomCircuitOptions opts;
    opts.max_wires = 4;
    opts.max_gates = 10;
    const auto keys = circ_catalog_sweep(3);
    std::uniform_int_distribution<std::size_t> pick_rule(0, keys.size() - 1);
    std::uniform_int_distribution<int> pick_dir(0, 1);
    int applied = 0;
    int guard = 0;
    while (applied < 1000 && guard < 20000) {
        ++guard;
        const auto& k = keys[pick_rule(rng)];
        const auto rule = circ_rule_catalog(k.id, k.variant, k.params);
        const auto dir = pick_dir(rng) == 0 ? Direction::LR : Direction::RL;
        const auto host = random_circuit(rng, opts);
        const auto ms = find_circ_matches(host, rule, dir);
        if (ms.empty()) {
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick_m(0, ms.size() - 1);
        const auto out = apply_circ_rule(host, rule, dir, ms[pick_m(rng)]);
        CHECK(out.num_inputs() == host.num_inputs());
        CHECK(out.num_outputs() == host.num_outputs());
        const auto v = equiv_exact(host, out);
        CHECK(v.not_different());
        if (!v.not_different()) {
            CAPTURE(k.id);
            CAPTURE(k.variant);
            CAPTURE(print_circuit(host));
            REQUIRE(false);
        }
        ++applied;
    }
    CHECK(applied == 1000);
}

TEST_CASE("scirc fragments are found and spliced") {
    // plus-control, closing through a post0 cap
    const auto h1 = parse_circuit("input t\nprepplus a\ncnot a t\npost0 a\noutput t\n");
    const auto f1 = find_scirc_fragments(h1, ScircKind::PlusControl);
    REQUIRE(f1.size() == 1);
    const auto o1 = splice_scirc(h1, f1);
    CHECK(circuits_structurally_equal(o1, parse_circuit("input t\noutput t\n")));
    CHECK(equiv_exact(h1, o1).not_different());

    const auto h2 = parse_circuit("input t\nprep0 a\ncnot a t\npostplus a\noutput t\n");
    const auto f2 = find_scirc_fragments(h2, ScircKind::ControlPostplus);
    REQUIRE(f2.size() == 1);
    CHECK(circuits_structurally_equal(splice_scirc(h2, f2), parse_circuit("input t\noutput t\n")));

    const auto h3 = parse_circuit("input c\nprep0 a\ncnot c a\npostplus a\noutput c\n");
    const auto f3 = find_scirc_fragments(h3, ScircKind::ZeroTarget);
    REQUIRE(f3.size() == 1);
    CHECK(circuits_structurally_equal(splice_scirc(h3, f3), parse_circuit("input c\noutput c\n")));

    const auto h4 = parse_circuit("input c\nprepplus a\ncnot c a\npost0 a\noutput c\n");
    const auto f4 = find_scirc_fragments(h4, ScircKind::TargetPostzero);
    REQUIRE(f4.size() == 1);
    CHECK(circuits_structurally_equal(splice_scirc(h4, f4), parse_circuit("input c\noutput c\n")));
}

TEST_CASE("scirc reproduces the displayed example") {
    // 3-wire host: two fragments pair into a bare CNOT with renumbered wires
    const auto host = parse_circuit(
        "input w1 w2\nprepplus w3\ncnot w3 w2\ncnot w2 w1\npost0 w1\noutput w2 w3\n");
    const auto f_plus = find_scirc_fragments(host, ScircKind::PlusControl);
    const auto f_post = find_scirc_fragments(host, ScircKind::TargetPostzero);
    REQUIRE(f_plus.size() == 1);
    REQUIRE(f_post.size() == 1);
    const auto out = splice_scirc(host, {f_plus[0], f_post[0]});
    CHECK(circuits_structurally_equal(out,
                                      parse_circuit("input a b\ncnot a b\noutput a b\n")));
    CHECK(equiv_exact(host, out).not_different());
}

TEST_CASE("scirc errors") {
    const auto host = parse_circuit("input a b\ncnot a b\noutput a b\n");
    CHECK(find_scirc_fragments(host, ScircKind::PlusControl).empty());
    CHECK_THROWS_AS(splice_scirc(host, {ScircFragment{ScircKind::PlusControl, 0}}), Error);

    // a lone fragment whose freed half has nothing to close with
    const auto open_host =
        parse_circuit("input t\nprepplus a\ncnot a t\nh a\npost0 a\noutput t\n");
    const auto fs = find_scirc_fragments(open_host, ScircKind::PlusControl);
    REQUIRE(fs.size() == 1);
    CHECK_THROWS_AS(splice_scirc(open_host, fs), Error);
}

TEST_CASE("stale bindings are rejected") {
    const auto hrule = circ_rule_catalog("Hcirc", 0);
    const auto host = parse_circuit("input a\nh a\noutput a\n");
    auto ms = find_circ_matches(host, hrule, Direction::LR);
    REQUIRE(ms.size() == 1);
    auto bad = ms[0];
    bad.gate_map[0] = 5;
    CHECK_THROWS_AS(apply_circ_rule(host, hrule, Direction::LR, bad), Error);
}
