// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/detector.hpp"

#include <algorithm>
#include <chrono>

namespace reenscan {

const char* to_string(AttackType t) {
    switch (t) {
    case AttackType::fallback_type: return "fallback";
    case AttackType::erc_hook: return "erc-hook";
    case AttackType::user_defined: return "user-defined";
    }
    return "?";
}

const char* to_string(Verdict v) {
    return v == Verdict::attacker ? "attacker" : "benign";
}

AttackType classify_attack_type(Selector hook, const HookRegistry& registry) {
    if (hook.is_fallback())
        return AttackType::fallback_type;
    if (registry.find(hook))
        return AttackType::erc_hook;
    return AttackType::user_defined;
}

DetectionReport detect(AnalysisCache& cache,
    std::shared_ptr<const ContractAnalysis> entry_analysis, const ContractId& entry_id,
    bool entry_address_known, const DetectOptions& options, XGraph* graph_out) {
    const auto t0 = std::chrono::steady_clock::now();

    DetectionReport report;
    report.entry = entry_id;
    report.entry_address_known = entry_address_known;
    for (const FunctionEntry& f : entry_analysis->table.functions)
        report.entry_functions.push_back(f.selector);
    report.diagnostics.merge(entry_analysis->diagnostics);

    XGraph g = build_xgraph(cache, entry_analysis, entry_id, entry_address_known, options.graph);
    report.diagnostics.merge(g.diagnostics);
    report.contracts_discovered = g.contracts.size() - 1;
    report.external_nodes = g.external_nodes.size();
    report.edge_count = g.edges.size();
    for (const auto& [fn, chains] : g.chains)
        for (const CallChain& c : chains)
            report.max_chain_depth = std::max(report.max_chain_depth, c.edges.size());

    const std::vector<TaintLabel> labels = seed_sources(g);
    const TaintEngine engine(g);
    const std::vector<ReachResult> reaches = engine.propagate_all(labels);

    const HookRegistry& registry = cache.hooks();
    std::set<std::pair<Selector, SinkSite>> emitted;

    for (const ReachResult& r : reaches) {
        // Step 1: taint reached a downstream callee slot, and the value is
        // concretely the entry's own address.
        if (!r.resolved_callback_target) {
            if (r.label.marks_self && !r.callback_selector)
                report.diagnostics.add("callback-selector-unknown",
                    r.sink.contract.to_string() + " site " + std::to_string(r.sink.callsite));
            continue;
        }
        const Selector hook = r.resolved_callback_target->second;

        // Step 2: the callback selector must be implemented by the entry.
        if (!entry_analysis->table.has(hook)) {
            report.diagnostics.add("hook-not-implemented", hook.to_string());
            continue;
        }
        const FunctionSummary* hook_sum = entry_analysis->summary(hook);
        if (!hook_sum)
            continue;

        // Step 3: some call in the hook body revisits a (contract,
        // function) already on the chain.
        const CallChain& chain = g.chains.at(r.entry_fn)[r.chain_index];
        const auto visited = chain.visited();

        std::vector<Finding::HookCall> hook_calls;
        for (const CallSite& site : hook_sum->call_sites) {
            if (const CallEdge* e = g.find_edge(entry_id, hook, site.id))
                hook_calls.push_back(Finding::HookCall{
                    e->target_contract, e->target_funcsign, site.id, site.is_static()});
        }
        std::vector<Finding::HookCall> matches;
        for (const Finding::HookCall& hc : hook_calls)
            if (visited.count({hc.contract, hc.function}))
                matches.push_back(hc);
        if (matches.empty())
            continue;

        const bool profitable = std::any_of(matches.begin(), matches.end(),
            [](const Finding::HookCall& hc) { return !hc.is_static; });
        if (!profitable) {
            // Getter-only revisits: read-only reentrancy, reported as a
            // diagnostic rather than a finding.
            report.diagnostics.add("read-only-reentrancy",
                hook.to_string() + " via " + r.sink.contract.to_string());
            continue;
        }

        if (!emitted.insert({hook, r.sink}).second)
            continue;

        Finding f;
        f.attack_type = classify_attack_type(hook, registry);
        f.hook = hook;
        const HookClassification cls = registry.classify(hook);
        f.hook_name = cls.kind == HookKind::fallback ? "fallback" : cls.name;
        f.entry_fn = r.entry_fn;
        f.chain_index = r.chain_index;
        f.chain = chain;
        f.sink = r.sink;
        f.label = r.label;
        f.witness = r.witness;
        f.hook_external_calls = std::move(hook_calls);
        for (const Finding::HookCall& m : matches) {
            const auto pair = std::make_pair(m.contract, m.function);
            if (std::find(f.reentered_targets.begin(), f.reentered_targets.end(), pair) ==
                f.reentered_targets.end())
                f.reentered_targets.push_back(pair);
        }
        std::set<ContractId> victims;
        for (const auto& [c, fn] : f.reentered_targets)
            victims.insert(c);
        victims.insert(r.sink.contract);
        f.victims.assign(victims.begin(), victims.end());
        f.sender_guarded = hook_sum->sender_guard;
        if (f.sender_guarded)
            report.diagnostics.add("sender-guard", hook.to_string());

        report.findings.push_back(std::move(f));
    }

    report.verdict = report.findings.empty() ? Verdict::benign : Verdict::attacker;
    if (graph_out)
        *graph_out = std::move(g);

    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0)
                           .count();
    return report;
}

}  // namespace reenscan
