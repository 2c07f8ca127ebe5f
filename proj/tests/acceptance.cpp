// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include "stabrw/random_circuits.hpp"
#include "stabrw/script.hpp"
#include "stabrw/selftest.hpp"
#include "stabrw/tableau.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#ifndef STABRW_FIXTURE_DIR
#define STABRW_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace stabrw;

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) {
        throw Error("cannot open " + p.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << " ("
              << seconds << " s)\n";
    if (!ok) {
        ++failures;
    }
}

template <typename F> void criterion(int n, const std::string& what, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cout << "  exception: " << e.what() << "\n";
        ok = false;
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(n, what, ok, dt);
}

} // namespace

int main() {
    const std::filesystem::path fixtures(STABRW_FIXTURE_DIR);

    criterion(1, "ZX axiom soundness (phases 0..3, arity <= 6)", [] {
        int bad = 0;
        for (const auto& k : zx_fig2_sweep(6)) {
            const ZxRule rule = zx_rule_catalog(k.id, k.params);
            const auto v = mat_proportional(zx_to_matrix(rule.lhs), zx_to_matrix(rule.rhs));
            if (!v.not_different()) {
                std::cout << "  unsound: " << k.id << "\n";
                ++bad;
            }
        }
        return bad == 0;
    });

    criterion(2, "circuit axiom soundness (all variants, Ccirc <= 5, Scirc fragments)", [] {
        int bad = 0;
        for (const auto& k : circ_catalog_sweep(5)) {
            const CircuitRule rule = circ_rule_catalog(k.id, k.variant, k.params);
            const auto v =
                mat_proportional(circuit_to_matrix(rule.lhs), circuit_to_matrix(rule.rhs));
            if (!v.not_different()) {
                std::cout << "  unsound: " << k.id << " v" << k.variant << "\n";
                ++bad;
            }
        }
        // the four (Scirc) fragments on 2-wire hosts plus the displayed 3-wire pair
        SelftestOptions opts;
        opts.max_arity = 1;
        opts.ccirc_max = 1;
        const auto rep = run_selftest(opts);
        for (const auto& c : rep.checks) {
            if (c.catalog == "scirc" && !c.ok) {
                std::cout << "  unsound splice: " << c.params << "\n";
                ++bad;
            }
        }
        return bad == 0;
    });

    criterion(3, "appendix catalog sound and lemma chains verified", [&] {
        int bad = 0;
        for (const auto& k : zx_primed_sweep(5)) {
            const ZxRule rule = zx_rule_catalog(k.id, k.params);
            const auto v = mat_proportional(zx_to_matrix(rule.lhs), zx_to_matrix(rule.rhs));
            if (!v.not_different()) {
                std::cout << "  unsound: " << k.id << " v" << k.params.variant << "\n";
                ++bad;
            }
        }
        for (const char* name :
             {"lemma_a1.zxderiv", "lemma_a2_i.zxderiv", "lemma_a2_ii.zxderiv",
              "lemma_a2_iii.zxderiv", "lemma_a2_iv.zxderiv", "lemma_a3_i.zxderiv",
              "lemma_a3_ii.zxderiv", "lemma_a4_i.zxderiv", "lemma_a4_ii.zxderiv"}) {
            const auto rep = verify_derivation(parse_derivation_script(read_file(fixtures / name)));
            if (!rep.accepted) {
                std::cout << "  rejected: " << name << " (" << rep.reason << ")\n";
                ++bad;
            }
        }
        return bad == 0;
    });

    criterion(4, "teleportation: derivation verifies and both oracles agree", [&] {
        const auto rep = verify_derivation(
            parse_derivation_script(read_file(fixtures / "teleport.deriv")));
        const Circuit tp = parse_circuit(read_file(fixtures / "teleport.circ"));
        const Circuit id = parse_circuit(read_file(fixtures / "id1.circ"));
        const auto v = equiv_exact(tp, id);
        return rep.accepted && v.kind == ProportionalVerdict::Kind::Proportional &&
               equiv_tableau(tp, id);
    });

    criterion(5, "measurement-based CNOT equals CNOT under both oracles", [&] {
        const Circuit mb = parse_circuit(read_file(fixtures / "mbqc_cnot.circ"));
        const Circuit cn = parse_circuit(read_file(fixtures / "cnot.circ"));
        const auto v = equiv_exact(mb, cn);
        return v.kind == ProportionalVerdict::Kind::Proportional && equiv_tableau(mb, cn);
    });

    criterion(6, "translation soundness on 500 seeded random circuits", [] {
        std::mt19937 rng(271828);
        RandomCircuitOptions opts;
        opts.max_wires = 4;
        opts.max_gates = 12;
        for (int i = 0; i < 500; ++i) {
            const Circuit c = random_circuit(rng, opts);
            const auto v =
                mat_proportional(zx_to_matrix(circuit_to_zx(c)), circuit_to_matrix(c));
            if (!v.not_different()) {
                std::cout << "  counterexample:\n" << print_circuit(c);
                return false;
            }
        }
        return true;
    });

    criterion(7, "oracle cross-validation on 200 seeded circuit pairs", [] {
        std::mt19937 rng(314159);
        RandomCircuitOptions opts;
        opts.max_wires = 5;
        opts.max_gates = 20;
        for (int i = 0; i < 200; ++i) {
            const Circuit c1 = random_circuit(rng, opts);
            const Circuit c2 =
                random_circuit_with_arities(rng, c1.num_inputs(), c1.num_outputs(), opts);
            const bool exact = equiv_exact(c1, c2).not_different();
            if (equiv_tableau(c1, c2) != exact) {
                std::cout << "  disagreement:\n" << print_circuit(c1) << print_circuit(c2);
                return false;
            }
        }
        return true;
    });

    criterion(8, "all 20 corrupted scripts rejected, originals accepted", [&] {
        int bad = 0;
        for (const char* name :
             {"teleport.deriv", "scirc_example.deriv", "lemma_a1.zxderiv", "lemma_a2_i.zxderiv",
              "lemma_a2_ii.zxderiv", "lemma_a2_iii.zxderiv", "lemma_a2_iv.zxderiv",
              "lemma_a3_i.zxderiv", "lemma_a3_ii.zxderiv", "lemma_a4_i.zxderiv",
              "lemma_a4_ii.zxderiv"}) {
            if (!verify_derivation(parse_derivation_script(read_file(fixtures / name))).accepted) {
                std::cout << "  original rejected: " << name << "\n";
                ++bad;
            }
        }
        int corrupted = 0;
        for (const auto& entry : std::filesystem::directory_iterator(fixtures / "corrupted")) {
            ++corrupted;
            const auto rep =
                verify_derivation(parse_derivation_script(read_file(entry.path())));
            if (rep.accepted) {
                std::cout << "  corrupted script accepted: " << entry.path().filename() << "\n";
                ++bad;
            }
        }
        if (corrupted != 20) {
            std::cout << "  expected 20 corrupted fixtures, found " << corrupted << "\n";
            ++bad;
        }
        return bad == 0;
    });

    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << failures
              << " failing criteria)\n";
    return failures == 0 ? 0 : 1;
}
