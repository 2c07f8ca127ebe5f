#include "stabrw/script.hpp"

#include "stabrw/tableau.hpp"

#include <json.hpp>

#include <sstream>

namespace stabrw {

namespace {

using nlohmann::json;

Conn conn_from_json(const json& j) {
    Conn c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "input") {
        c.kind = Conn::Kind::HostInput;
    } else if (kind == "output") {
        c.kind = Conn::Kind::HostOutput;
    } else if (kind == "out") {
        c.kind = Conn::Kind::PortOut;
    } else if (kind == "in") {
        c.kind = Conn::Kind::PortIn;
    } else {
        throw Error("bad connector kind '" + kind + "'");
    }
    c.a = j.at("a").get<int>();
    c.b = j.value("b", 0);
    return c;
}

DerivationStep step_from_json(const json& j) {
    DerivationStep s;
    s.rule = j.at("rule").get<std::string>();
    s.variant = j.value("variant", 0);
    s.note = j.value("note", "");
    if (j.contains("params")) {
        const json& p = j.at("params");
        s.circ_params.alpha = s.zx_params.alpha = p.value("alpha", 0);
        s.circ_params.beta = s.zx_params.beta = p.value("beta", 0);
        s.circ_params.n_in = s.zx_params.n_in = p.value("n_in", 1);
        s.circ_params.n_out = s.zx_params.n_out = p.value("n_out", 1);
        s.circ_params.k = s.zx_params.k = p.value("k", 1);
        s.zx_params.legs_a = p.value("legs_a", 1);
        s.zx_params.legs_b = p.value("legs_b", 1);
        s.zx_params.links = p.value("links", 1);
    }
    s.zx_params.variant = s.variant;
    const std::string dir = j.value("direction", "LR");
    if (dir == "LR") {
        s.direction = Direction::LR;
    } else if (dir == "RL") {
        s.direction = Direction::RL;
    } else {
        throw Error("bad direction '" + dir + "'");
    }
    if (j.contains("match")) {
        s.match = j.at("match").get<int>();
    }
    if (j.contains("fragments")) {
        for (const json& f : j.at("fragments")) {
            s.fragment_kinds.push_back(f.at("kind").get<std::string>());
            s.fragment_matches.push_back(f.value("match", 0));
        }
    }
    if (j.contains("binding")) {
        const json& b = j.at("binding");
        if (b.contains("vertices")) {
            ZxBinding zb;
            zb.vertex_map = b.at("vertices").get<std::vector<int>>();
            for (const json& l : b.at("legs")) {
                zb.legs.push_back(ZxHalfEdge{l.at(0).get<int>(), l.at(1).get<int>()});
            }
            s.zx_binding = std::move(zb);
        } else {
            CircuitBinding cb;
            cb.gate_map = b.at("gates").get<std::vector<int>>();
            cb.swap_flipped.assign(cb.gate_map.size(), false);
            if (b.contains("swap_flipped")) {
                cb.swap_flipped = b.at("swap_flipped").get<std::vector<bool>>();
            }
            for (const json& c : b.at("stub_in")) {
                cb.stub_in_src.push_back(conn_from_json(c));
            }
            for (const json& c : b.at("stub_out")) {
                cb.stub_out_sink.push_back(conn_from_json(c));
            }
            s.circ_binding = std::move(cb);
        }
    }
    return s;
}

} // namespace

DerivationScript parse_derivation_script(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("derivation script is not valid JSON: ") + e.what());
    }
    DerivationScript s;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "zx") {
            s.is_zx = true;
        } else if (kind == "circuit") {
            s.is_zx = false;
        } else {
            throw Error("script kind must be \"circuit\" or \"zx\"");
        }
        s.initial_text = j.at("initial").get<std::string>();
        s.target_text = j.at("target").get<std::string>();
        for (const json& st : j.at("steps")) {
            s.steps.push_back(step_from_json(st));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("derivation script schema error: ") + e.what());
    }
    return s;
}

namespace {

DerivationReport reject(DerivationReport r, int step, const std::string& why) {
    r.accepted = false;
    r.rejected_step = step;
    r.reason = why;
    if (step >= 0 && step < static_cast<int>(r.steps.size())) {
        r.steps[static_cast<std::size_t>(step)].ok = false;
        r.steps[static_cast<std::size_t>(step)].detail = why;
    }
    return r;
}

} // namespace

DerivationReport verify_circ_derivation(const DerivationScript& script) {
    DerivationReport r;
    for (const auto& s : script.steps) {
        r.steps.push_back(StepReport{s.rule, false, ""});
    }
    Circuit current = parse_circuit(script.initial_text);
    const Circuit target = parse_circuit(script.target_text);
    const ExactMatrix reference = circuit_to_matrix(current);

    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const auto& s = script.steps[i];
        try {
            if (s.rule == "T") {
                // topology is representation-level for circuits too: no-op
            } else if (s.rule == "Scirc") {
                if (s.fragment_kinds.empty()) {
                    throw Error("Scirc step without fragments");
                }
                std::vector<ScircFragment> frags;
                for (std::size_t f = 0; f < s.fragment_kinds.size(); ++f) {
                    const ScircKind kind = scirc_kind_from_string(s.fragment_kinds[f]);
                    const auto found = find_scirc_fragments(current, kind);
                    const int m = s.fragment_matches[f];
                    if (m < 0 || m >= static_cast<int>(found.size())) {
                        throw Error("no fragment at anchor " + std::to_string(m));
                    }
                    frags.push_back(found[static_cast<std::size_t>(m)]);
                }
                current = splice_scirc(current, frags);
            } else {
                const CircuitRule rule = circ_rule_catalog(s.rule, s.variant, s.circ_params);
                CircuitBinding binding;
                if (s.circ_binding) {
                    binding = *s.circ_binding;
                } else {
                    const auto ms = find_circ_matches(current, rule, s.direction);
                    const int m = s.match.value_or(0);
                    if (m < 0 || m >= static_cast<int>(ms.size())) {
                        throw Error("no match at anchor " + std::to_string(m) + " (" +
                                    std::to_string(ms.size()) + " available)");
                    }
                    binding = ms[static_cast<std::size_t>(m)];
                }
                current = apply_circ_rule(current, rule, s.direction, binding);
            }
            // defence in depth: the intermediate must stay equal up to scalar
            const auto v = mat_proportional(circuit_to_matrix(current), reference);
            if (!v.not_different()) {
                return reject(std::move(r), static_cast<int>(i),
                              "intermediate differs from the initial circuit");
            }
            r.steps[i].ok = true;
        } catch (const Error& e) {
            return reject(std::move(r), static_cast<int>(i), e.what());
        }
    }
    if (!circuits_structurally_equal(current, target)) {
        return reject(std::move(r), static_cast<int>(script.steps.size()),
                      "final circuit does not match the target");
    }
    r.accepted = true;
    return r;
}

DerivationReport verify_zx_derivation(const DerivationScript& script) {
    DerivationReport r;
    for (const auto& s : script.steps) {
        r.steps.push_back(StepReport{s.rule, false, ""});
    }
    ZxDiagram current = zx_normalize(parse_zx(script.initial_text)).compacted();
    const ZxDiagram target = zx_normalize(parse_zx(script.target_text)).compacted();
    const ExactMatrix reference = zx_to_matrix(current);

    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const auto& s = script.steps[i];
        try {
            if (s.rule == "T") {
                // absorbed by the multigraph representation
            } else {
                const ZxRule rule = zx_rule_catalog(s.rule, s.zx_params);
                ZxBinding binding;
                if (s.zx_binding) {
                    binding = *s.zx_binding;
                } else {
                    const auto ms = find_zx_matches(current, rule, s.direction);
                    const int m = s.match.value_or(0);
                    if (m < 0 || m >= static_cast<int>(ms.size())) {
                        throw Error("no match at anchor " + std::to_string(m) + " (" +
                                    std::to_string(ms.size()) + " available)");
                    }
                    binding = ms[static_cast<std::size_t>(m)];
                }
                current = apply_zx_rule(current, rule, s.direction, binding);
            }
            const auto v = mat_proportional(zx_to_matrix(current), reference);
            if (!v.not_different()) {
                return reject(std::move(r), static_cast<int>(i),
                              "intermediate differs from the initial diagram");
            }
            r.steps[i].ok = true;
        } catch (const Error& e) {
            return reject(std::move(r), static_cast<int>(i), e.what());
        }
    }
    if (!zx_iso(current, target)) {
        return reject(std::move(r), static_cast<int>(script.steps.size()),
                      "final diagram is not isomorphic to the target");
    }
    r.accepted = true;
    return r;
}

DerivationReport verify_derivation(const DerivationScript& script) {
    return script.is_zx ? verify_zx_derivation(script) : verify_circ_derivation(script);
}

} // namespace stabrw
