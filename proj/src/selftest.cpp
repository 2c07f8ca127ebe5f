#include "stabrw/selftest.hpp"

#include "stabrw/random_circuits.hpp"
#include "stabrw/tableau.hpp"

#include <future>
#include <random>
#include <sstream>
#include <thread>

namespace stabrw {

std::string verdict_name(const ProportionalVerdict& v) {
    switch (v.kind) {
    case ProportionalVerdict::Kind::Equal: return "equal";
    case ProportionalVerdict::Kind::Proportional: return "proportional";
    case ProportionalVerdict::Kind::BothZero: return "bothzero";
    case ProportionalVerdict::Kind::Different: return "different";
    }
    return "?";
}

namespace {

std::string render_zx_params(const ZxRuleParams& p) {
    std::ostringstream os;
    os << "alpha=" << p.alpha << " beta=" << p.beta << " legs=" << p.legs_a << "+" << p.legs_b
       << " links=" << p.links << " n=" << p.n_in << "/" << p.n_out << " k=" << p.k;
    return os.str();
}

std::string render_circ_params(const CircRuleParams& p) {
    std::ostringstream os;
    os << "alpha=" << p.alpha << " beta=" << p.beta << " n=" << p.n_in << "/" << p.n_out
       << " k=" << p.k;
    return os.str();
}

RuleCheck check_zx(const std::string& catalog, const ZxRuleKey& key) {
    RuleCheck c;
    c.catalog = catalog;
    c.id = key.id;
    c.variant = key.params.variant;
    c.params = render_zx_params(key.params);
    try {
        const ZxRule rule = zx_rule_catalog(key.id, key.params);
        const auto v = mat_proportional(zx_to_matrix(rule.lhs), zx_to_matrix(rule.rhs));
        c.verdict = verdict_name(v);
        c.ok = v.not_different();
    } catch (const Error& e) {
        c.verdict = std::string("error: ") + e.what();
        c.ok = false;
    }
    return c;
}

RuleCheck check_circ(const CircRuleKey& key) {
    RuleCheck c;
    c.catalog = "circuit";
    c.id = key.id;
    c.variant = key.variant;
    c.params = render_circ_params(key.params);
    try {
        const CircuitRule rule = circ_rule_catalog(key.id, key.variant, key.params);
        const auto v = mat_proportional(circuit_to_matrix(rule.lhs), circuit_to_matrix(rule.rhs));
        c.verdict = verdict_name(v);
        c.ok = v.not_different();
    } catch (const Error& e) {
        c.verdict = std::string("error: ") + e.what();
        c.ok = false;
    }
    return c;
}

struct ScircCase {
    std::string name;
    std::string host;
    std::vector<std::pair<ScircKind, int>> fragments;
};

const std::vector<ScircCase>& scirc_cases() {
    static const std::vector<ScircCase> cases = {
        {"plus-control/2-wire",
         "input t\nprepplus a\ncnot a t\npost0 a\noutput t\n",
         {{ScircKind::PlusControl, 0}}},
        {"zero-target/2-wire",
         "input c\nprep0 a\ncnot c a\npostplus a\noutput c\n",
         {{ScircKind::ZeroTarget, 0}}},
        {"control-postplus/2-wire",
         "input t\nprep0 a\ncnot a t\npostplus a\noutput t\n",
         {{ScircKind::ControlPostplus, 0}}},
        {"target-postzero/2-wire",
         "input c\nprepplus a\ncnot c a\npost0 a\noutput c\n",
         {{ScircKind::TargetPostzero, 0}}},
        {"paired/3-wire",
         "input w1 w2\nprepplus w3\ncnot w3 w2\ncnot w2 w1\npost0 w1\noutput w2 w3\n",
         {{ScircKind::PlusControl, 0}, {ScircKind::TargetPostzero, 0}}},
    };
    return cases;
}

RuleCheck check_scirc(const ScircCase& sc) {
    RuleCheck c;
    c.catalog = "scirc";
    c.id = "Scirc";
    c.params = sc.name;
    try {
        const Circuit host = parse_circuit(sc.host);
        std::vector<ScircFragment> frags;
        for (const auto& [kind, idx] : sc.fragments) {
            const auto found = find_scirc_fragments(host, kind);
            frags.push_back(found.at(static_cast<std::size_t>(idx)));
        }
        const Circuit out = splice_scirc(host, frags);
        const auto v = equiv_exact(host, out);
        c.verdict = verdict_name(v);
        c.ok = v.not_different();
    } catch (const Error& e) {
        c.verdict = std::string("error: ") + e.what();
        c.ok = false;
    }
    return c;
}

std::vector<RuleCheck> random_application_sweep(int count, std::uint32_t seed) {
    std::vector<RuleCheck> out;
    std::mt19937 rng(seed);
    RandomCircuitOptions opts;
    opts.max_wires = 4;
    opts.max_gates = 10;
    const auto circ_keys = circ_catalog_sweep(3);
    const auto zx_keys = zx_fig2_sweep(3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> pick_c(0, circ_keys.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_z(0, zx_keys.size() - 1);
    int done = 0;
    int guard = 0;
    while (done < count && guard < 50 * count) {
        ++guard;
        RuleCheck c;
        c.catalog = "random";
        try {
            const Direction dir = coin(rng) == 0 ? Direction::LR : Direction::RL;
            if (coin(rng) == 0) {
                const auto& k = circ_keys[pick_c(rng)];
                const auto rule = circ_rule_catalog(k.id, k.variant, k.params);
                const auto host = random_circuit(rng, opts);
                const auto ms = find_circ_matches(host, rule, dir);
                if (ms.empty()) {
                    continue;
                }
                std::uniform_int_distribution<std::size_t> pick_m(0, ms.size() - 1);
                const auto res = apply_circ_rule(host, rule, dir, ms[pick_m(rng)]);
                const auto v = equiv_exact(host, res);
                c.id = k.id;
                c.variant = k.variant;
                c.verdict = verdict_name(v);
                c.ok = v.not_different();
            } else {
                const auto& k = zx_keys[pick_z(rng)];
                const auto rule = zx_rule_catalog(k.id, k.params);
                const auto host = zx_normalize(circuit_to_zx(random_circuit(rng, opts)));
                const auto ms = find_zx_matches(host, rule, dir);
                if (ms.empty()) {
                    continue;
                }
                std::uniform_int_distribution<std::size_t> pick_m(0, ms.size() - 1);
                const auto res = apply_zx_rule(host, rule, dir, ms[pick_m(rng)]);
                const auto v = mat_proportional(zx_to_matrix(res), zx_to_matrix(host));
                c.id = k.id;
                c.verdict = verdict_name(v);
                c.ok = v.not_different();
            }
        } catch (const Error& e) {
            c.verdict = std::string("error: ") + e.what();
            c.ok = false;
        }
        out.push_back(std::move(c));
        ++done;
    }
    return out;
}

} // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
    struct Task {
        int kind; // 0: fig2, 1: primed, 2: circ, 3: scirc
        ZxRuleKey zx;
        CircRuleKey circ;
        ScircCase scirc;
    };
    std::vector<Task> tasks;
    for (const auto& k : zx_fig2_sweep(options.max_arity)) {
        tasks.push_back(Task{0, k, {}, {}});
    }
    for (const auto& k : zx_primed_sweep(options.ccirc_max)) {
        tasks.push_back(Task{1, k, {}, {}});
    }
    for (const auto& k : circ_catalog_sweep(options.ccirc_max)) {
        tasks.push_back(Task{2, {}, k, {}});
    }
    for (const auto& sc : scirc_cases()) {
        tasks.push_back(Task{3, {}, {}, sc});
    }

    const unsigned jobs = options.jobs > 0
                              ? static_cast<unsigned>(options.jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
    std::vector<RuleCheck> checks(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            const Task& t = tasks[i];
            switch (t.kind) {
            case 0: checks[i] = check_zx("fig2", t.zx); break;
            case 1: checks[i] = check_zx("primed", t.zx); break;
            case 2: checks[i] = check_circ(t.circ); break;
            default: checks[i] = check_scirc(t.scirc); break;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }

    SelftestReport report;
    report.checks = std::move(checks);
    if (options.random_apps > 0) {
        const auto extra = random_application_sweep(options.random_apps, options.seed);
        report.checks.insert(report.checks.end(), extra.begin(), extra.end());
    }
    for (const auto& c : report.checks) {
        if (!c.ok) {
            ++report.failures;
        }
    }
    return report;
}

} // namespace stabrw
