// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/report.hpp"

#include <json.hpp>

namespace reenscan {

using nlohmann::json;

namespace {

json edge_json(const CallEdge& e) {
    return json{{"callsite", e.callsite}, {"caller", e.caller_address.to_string()},
        {"caller_function", e.caller_funcsign.to_string()},
        {"target", e.target_contract.to_string()},
        {"target_function", e.target_funcsign.to_string()}};
}

json chain_json(const CallChain& c) {
    json edges = json::array();
    for (const CallEdge& e : c.edges)
        edges.push_back(edge_json(e));
    json visited = json::array();
    for (const auto& [id, sel] : c.visited())
        visited.push_back(json::array({id.to_string(), sel.to_string()}));
    return json{
        {"edges", std::move(edges)},
        {"visited", std::move(visited)},
        {"truncation", to_string(c.truncation)},
    };
}

json witness_json(const std::vector<WitnessFact>& witness) {
    json arr = json::array();
    for (const WitnessFact& w : witness) {
        json fact{{"kind", to_string(w.fact.kind)}, {"source", w.fact.source}};
        if (w.fact.sink_site != kNoSite)
            fact["sink_site"] = w.fact.sink_site;
        fact["sink_pos"] = w.fact.sink_pos;
        arr.push_back(json{{"contract", w.contract.to_string()},
            {"function", w.function.to_string()}, {"fact", std::move(fact)}});
    }
    return arr;
}

json diagnostics_json(const Diagnostics& diags) {
    json arr = json::array();
    for (const Diagnostic& d : diags.canonical()) {
        json obj{{"code", d.code}};
        if (!d.detail.empty())
            obj["detail"] = d.detail;
        arr.push_back(std::move(obj));
    }
    return arr;
}

json finding_json(const Finding& f) {
    json hook_calls = json::array();
    for (const Finding::HookCall& hc : f.hook_external_calls)
        hook_calls.push_back(json{{"contract", hc.contract.to_string()},
            {"function", hc.function.to_string()}, {"callsite", hc.callsite},
            {"static", hc.is_static}});
    json reentered = json::array();
    for (const auto& [id, sel] : f.reentered_targets)
        reentered.push_back(json::array({id.to_string(), sel.to_string()}));
    json victims = json::array();
    for (const ContractId& v : f.victims)
        victims.push_back(v.to_string());

    return json{
        {"attack_type", to_string(f.attack_type)},
        {"hook", json{{"selector", f.hook.to_string()}, {"name", f.hook_name}}},
        {"entry_function", f.entry_fn.to_string()},
        {"chain", chain_json(f.chain)},
        {"sink", json{{"contract", f.sink.contract.to_string()},
                     {"function", f.sink.function.to_string()}, {"callsite", f.sink.callsite},
                     {"kind", "callee"}}},
        {"label", json{{"entry", f.label.entry.to_string()},
                      {"function", f.label.entry_fn.to_string()}, {"callsite", f.label.site},
                      {"arg", f.label.arg_pos}, {"marks_self", f.label.marks_self}}},
        {"witness", witness_json(f.witness)},
        {"hook_external_calls", std::move(hook_calls)},
        {"reentered_targets", std::move(reentered)},
        {"victims", std::move(victims)},
        {"sender_guarded", f.sender_guarded},
    };
}

}  // namespace

std::string report_to_json(const DetectionReport& report, int indent) {
    json findings = json::array();
    for (const Finding& f : report.findings)
        findings.push_back(finding_json(f));

    json entry_functions = json::array();
    for (const Selector& s : report.entry_functions)
        entry_functions.push_back(s.to_string());

    const json doc{
        {"schema_version", report.schema_version},
        {"entry", report.entry.to_string()},
        {"entry_address_known", report.entry_address_known},
        {"verdict", to_string(report.verdict)},
        {"entry_functions", std::move(entry_functions)},
        {"findings", std::move(findings)},
        {"stats", json{{"contracts_discovered", report.contracts_discovered},
                      {"external_nodes", report.external_nodes},
                      {"edges", report.edge_count},
                      {"max_chain_depth", report.max_chain_depth}}},
        {"diagnostics", diagnostics_json(report.diagnostics)},
        {"timing_ms", report.timing_ms},
    };
    return doc.dump(indent) + "\n";
}

std::string xgraph_to_json(const XGraph& g, int indent) {
    json contracts = json::object();
    for (const auto& [id, analysis] : g.contracts) {
        json functions = json::array();
        for (const FunctionEntry& f : analysis->table.functions) {
            const FunctionSummary* sum = analysis->summary(f.selector);
            functions.push_back(json{{"selector", f.selector.to_string()},
                {"external_calls", sum ? sum->call_sites.size() : 0},
                {"flow_facts", sum ? sum->flow_facts.size() : 0}});
        }
        contracts[id.to_string()] =
            json{{"code_size", analysis->bytecode.bytes.size()}, {"functions", functions}};
    }

    json edges = json::array();
    for (const CallEdge& e : g.edges)
        edges.push_back(edge_json(e));

    json chains = json::object();
    for (const auto& [fn, list] : g.chains) {
        json arr = json::array();
        for (const CallChain& c : list)
            arr.push_back(chain_json(c));
        chains[fn.to_string()] = std::move(arr);
    }

    json unresolved = json::array();
    for (const UnresolvedSite& u : g.unresolved)
        unresolved.push_back(json{{"contract", u.contract.to_string()},
            {"function", u.function.to_string()}, {"callsite", u.callsite},
            {"reason", u.reason}});

    json external = json::array();
    for (const ContractId& id : g.external_nodes)
        external.push_back(id.to_string());

    json entry_functions = json::array();
    for (const Selector& s : g.entry_functions)
        entry_functions.push_back(s.to_string());

    const json doc{
        {"entry", g.entry.to_string()},
        {"entry_functions", std::move(entry_functions)},
        {"contracts", std::move(contracts)},
        {"external_nodes", std::move(external)},
        {"edges", std::move(edges)},
        {"chains", std::move(chains)},
        {"unresolved", std::move(unresolved)},
        {"diagnostics", diagnostics_json(g.diagnostics)},
    };
    return doc.dump(indent) + "\n";
}

}  // namespace reenscan
