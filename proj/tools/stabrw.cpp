// stabrw: batch front end for the stabilizer circuit / ZX rewriting engine.
//
// Exit codes: 0 success or equivalence, 2 semantic negative (different,
// rejected step, no match), 1 usage or I/O error.

#include "stabrw/script.hpp"
#include "stabrw/selftest.hpp"
#include "stabrw/tableau.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace stabrw;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::filesystem::path p(path);
    if (!std::filesystem::exists(p)) {
        if (const char* base = std::getenv("STABRW_FIXTURES")) {
            const std::filesystem::path alt = std::filesystem::path(base) / path;
            if (std::filesystem::exists(alt)) {
                p = alt;
            }
        }
    }
    std::ifstream in(p);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_selftest(const SelftestOptions& opts, const std::string& format) {
    const auto report = run_selftest(opts);
    if (format == "structured") {
        for (const auto& c : report.checks) {
            json j = {{"catalog", c.catalog}, {"rule", c.id},      {"variant", c.variant},
                      {"params", c.params},   {"verdict", c.verdict}, {"ok", c.ok}};
            std::cout << j.dump() << "\n";
        }
    } else {
        for (const auto& c : report.checks) {
            if (!c.ok) {
                std::cout << "FAIL " << c.catalog << " " << c.id << " v" << c.variant << " ["
                          << c.params << "]: " << c.verdict << "\n";
            }
        }
    }
    std::cout << report.checks.size() << " rules checked, " << report.failures << " failures\n";
    return report.failures == 0 ? 0 : 1;
}

int cmd_equiv(const std::string& file1, const std::string& file2, const std::string& oracle,
              const std::string& format) {
    const Circuit c1 = parse_circuit(read_file(file1));
    const Circuit c2 = parse_circuit(read_file(file2));
    if (c1.num_inputs() != c2.num_inputs() || c1.num_outputs() != c2.num_outputs()) {
        std::cerr << "error: circuits have different arities\n";
        return 1;
    }
    bool equivalent = true;
    json record;
    if (oracle == "exact" || oracle == "both") {
        const auto v = equiv_exact(c1, c2);
        equivalent = equivalent && v.not_different();
        record["exact"] = verdict_name(v);
        if (v.lambda) {
            record["lambda"] = v.lambda->str();
            record["lambda_inverted"] = v.lambda_inverted;
        }
        if (format != "structured") {
            std::cout << "exact: " << verdict_name(v);
            if (v.lambda) {
                std::cout << "  lambda" << (v.lambda_inverted ? "^-1" : "") << " = "
                          << v.lambda->str();
            }
            std::cout << "\n";
        }
    }
    if (oracle == "tableau" || oracle == "both") {
        const bool t = equiv_tableau(c1, c2);
        equivalent = equivalent && t;
        record["tableau"] = t ? "equivalent" : "different";
        if (format != "structured") {
            std::cout << "tableau: " << (t ? "equivalent" : "different") << "\n";
        }
    }
    if (format == "structured") {
        std::cout << record.dump() << "\n";
    }
    return equivalent ? 0 : 2;
}

int cmd_verify(const std::string& file, const std::string& format) {
    const auto script = parse_derivation_script(read_file(file));
    const auto report = verify_derivation(script);
    if (format == "structured") {
        for (std::size_t i = 0; i < report.steps.size(); ++i) {
            json j = {{"step", i},
                      {"rule", report.steps[i].rule},
                      {"ok", report.steps[i].ok},
                      {"detail", report.steps[i].detail}};
            std::cout << j.dump() << "\n";
        }
        json j = {{"accepted", report.accepted},
                  {"rejected_step", report.rejected_step},
                  {"reason", report.reason}};
        std::cout << j.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < report.steps.size(); ++i) {
            const auto& s = report.steps[i];
            std::cout << "step " << i << " " << s.rule << ": " << (s.ok ? "OK" : "FAIL");
            if (!s.ok && !s.detail.empty()) {
                std::cout << " (" << s.detail << ")";
            }
            std::cout << "\n";
            if (!s.ok) {
                break;
            }
        }
        if (report.accepted) {
            std::cout << "accepted\n";
        } else if (report.rejected_step == static_cast<int>(report.steps.size())) {
            std::cout << "rejected: " << report.reason << "\n";
        } else {
            std::cout << "rejected at step " << report.rejected_step << "\n";
        }
    }
    return report.accepted ? 0 : 2;
}

int cmd_apply(const std::string& file, const std::string& rule, int variant,
              const std::string& params_str, const std::string& direction_str, int match,
              const std::string& scirc_spec) {
    const Circuit host = parse_circuit(read_file(file));
    if (rule == "Scirc" || !scirc_spec.empty()) {
        std::vector<ScircFragment> frags;
        std::stringstream ss(scirc_spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto at = item.find('@');
            const std::string kind_name = at == std::string::npos ? item : item.substr(0, at);
            const int idx = at == std::string::npos ? 0 : std::stoi(item.substr(at + 1));
            const ScircKind kind = scirc_kind_from_string(kind_name);
            const auto found = find_scirc_fragments(host, kind);
            if (idx < 0 || idx >= static_cast<int>(found.size())) {
                std::cerr << "no '" << kind_name << "' fragment at index " << idx << "\n";
                return 2;
            }
            frags.push_back(found[static_cast<std::size_t>(idx)]);
        }
        if (frags.empty()) {
            std::cerr << "error: Scirc application needs --scirc kind@index[,...]\n";
            return 1;
        }
        std::cout << print_circuit(splice_scirc(host, frags));
        return 0;
    }
    CircRuleParams params;
    std::stringstream ss(params_str);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        if (kv.empty()) {
            continue;
        }
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw Error("bad --params entry '" + kv + "' (expected key=value)");
        }
        const std::string key = kv.substr(0, eq);
        const int value = std::stoi(kv.substr(eq + 1));
        if (key == "alpha") {
            params.alpha = value;
        } else if (key == "beta") {
            params.beta = value;
        } else if (key == "n_in") {
            params.n_in = value;
        } else if (key == "n_out") {
            params.n_out = value;
        } else if (key == "k") {
            params.k = value;
        } else {
            throw Error("unknown rule parameter '" + key + "'");
        }
    }
    const Direction dir = direction_str == "RL" ? Direction::RL : Direction::LR;
    const CircuitRule r = circ_rule_catalog(rule, variant, params);
    const auto ms = find_circ_matches(host, r, dir);
    if (match < 0 || match >= static_cast<int>(ms.size())) {
        std::cerr << "no match at index " << match << " (" << ms.size() << " available)\n";
        return 2;
    }
    std::cout << print_circuit(apply_circ_rule(host, r, dir, ms[static_cast<std::size_t>(match)]));
    return 0;
}

int cmd_translate(const std::string& file) {
    const Circuit c = parse_circuit(read_file(file));
    std::cout << print_zx(circuit_to_zx(c));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabrw: rewriting engine and equivalence checker for stabilizer circuits "
                 "and ZX diagrams"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}));

    SelftestOptions st_opts;
    auto* selftest = app.add_subcommand("selftest", "oracle-check every rule catalog");
    selftest->add_option("--max-arity", st_opts.max_arity, "variadic ZX rule bound")
        ->check(CLI::PositiveNumber);
    selftest->add_option("--ccirc-max", st_opts.ccirc_max, "Ccirc inputs+outputs bound")
        ->check(CLI::PositiveNumber);
    selftest->add_option("--jobs", st_opts.jobs, "worker threads (0: hardware)");
    selftest->add_option("--seed", st_opts.seed, "seed for the randomized sweep");
    selftest->add_option("--random-apps", st_opts.random_apps,
                         "additionally oracle-check N random rule applications");

    std::string file1;
    std::string file2;
    std::string oracle = "exact";
    auto* equiv = app.add_subcommand("equiv", "compare two circuit files");
    equiv->add_option("file1", file1)->required();
    equiv->add_option("file2", file2)->required();
    equiv->add_option("--oracle", oracle, "equivalence oracle")
        ->check(CLI::IsMember({"exact", "tableau", "both"}));

    std::string script_file;
    auto* verify = app.add_subcommand("verify", "check a derivation script");
    verify->add_option("script", script_file)->required();

    std::string apply_file;
    std::string rule;
    std::string params_str;
    std::string direction = "LR";
    std::string scirc_spec;
    int variant = 0;
    int match = 0;
    auto* apply = app.add_subcommand("apply", "apply one rule and print the rewritten circuit");
    apply->add_option("circuit", apply_file)->required();
    apply->add_option("--rule", rule, "rule id (or Scirc)")->required();
    apply->add_option("--variant", variant);
    apply->add_option("--params", params_str, "comma-separated key=value rule parameters");
    apply->add_option("--direction", direction)->check(CLI::IsMember({"LR", "RL"}));
    apply->add_option("--match", match, "index into the deterministic match list");
    apply->add_option("--scirc", scirc_spec, "Scirc fragments as kind@index[,kind@index...]");

    std::string translate_file;
    auto* translate = app.add_subcommand("translate", "print the ZX image of a circuit");
    translate->add_option("circuit", translate_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) {
            return cmd_selftest(st_opts, format);
        }
        if (equiv->parsed()) {
            return cmd_equiv(file1, file2, oracle, format);
        }
        if (verify->parsed()) {
            return cmd_verify(script_file, format);
        }
        if (apply->parsed()) {
            return cmd_apply(apply_file, rule, variant, params_str, direction, match, scirc_spec);
        }
        if (translate->parsed()) {
            return cmd_translate(translate_file);
        }
    } catch (const stabrw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
