// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/taint.hpp"

#include <algorithm>
#include <deque>

namespace reenscan {

Endpoint fact_source(const FlowFact& f) {
    if (f.source_is_arg())
        return Endpoint{Endpoint::Kind::func_arg, kNoSite, f.source};
    return Endpoint{Endpoint::Kind::site_ret, f.source, 0};
}

Endpoint fact_sink(const FlowFact& f) {
    switch (f.kind) {
    case FlowKind::FuncArgToCallArg:
    case FlowKind::CallRetToCallArg:
        return Endpoint{Endpoint::Kind::site_arg, f.sink_site, f.sink_pos};
    case FlowKind::FuncArgToCallee:
        return Endpoint{Endpoint::Kind::site_callee, f.sink_site, 0};
    case FlowKind::FuncArgToFuncRet:
    case FlowKind::CallRetToFuncRet:
        return Endpoint{Endpoint::Kind::func_ret, kNoSite, f.sink_pos};
    }
    return {};
}

std::vector<TaintLabel> seed_sources(const XGraph& g) {
    std::vector<TaintLabel> labels;
    const ContractAnalysis* entry = g.analysis_of(g.entry);
    if (!entry)
        return labels;
    const u256 entry_word = g.entry.to_word();

    for (const Selector f : g.entry_functions) {
        const FunctionSummary* sum = entry->summary(f);
        if (!sum)
            continue;
        for (const CallSite& site : sum->call_sites) {
            for (size_t pos = 0; pos < site.arg_values.size(); ++pos) {
                const AbstractValue& v = site.arg_values[pos];
                bool marks_self = v.kind == AvKind::EnvSelf;
                if (!marks_self && g.entry_address_known && v.is_const() &&
                    low160(v.word) == entry_word)
                    marks_self = true;
                labels.push_back(TaintLabel{
                    g.entry, f, site.id, static_cast<uint32_t>(pos), marks_self});
            }
        }
    }
    return labels;
}

bool is_reachable(const Endpoint& source, const Endpoint& sink,
    const std::vector<FlowFact>& facts, std::vector<FlowFact>* witness) {
    std::map<Endpoint, std::vector<FlowFact>> reached;
    reached[source] = {};
    std::deque<Endpoint> queue{source};

    if (source == sink) {
        if (witness)
            witness->clear();
        return true;
    }
    while (!queue.empty()) {
        const Endpoint ep = queue.front();
        queue.pop_front();
        for (const FlowFact& f : facts) {
            if (!(fact_source(f) == ep))
                continue;
            const Endpoint next = fact_sink(f);
            if (reached.count(next))
                continue;
            auto path = reached[ep];
            path.push_back(f);
            if (next == sink) {
                if (witness)
                    *witness = std::move(path);
                return true;
            }
            reached.emplace(next, std::move(path));
            queue.push_back(next);
        }
    }
    return false;
}

TaintEngine::TaintEngine(const XGraph& g) : g_(g) {
    for (const CallEdge& e : g.edges)
        edge_map_.try_emplace(std::make_tuple(e.caller_address, e.caller_funcsign, e.callsite),
            NodeKey{e.target_contract, e.target_funcsign});
    compute_ret_taint();
}

const FunctionSummary* TaintEngine::summary_of(const ContractId& id, Selector fn) const {
    const ContractAnalysis* a = g_.analysis_of(id);
    return a ? a->summary(fn) : nullptr;
}

// Which argument positions of (contract, fn) can flow into its return
// value, possibly through nested calls. Monotone fixpoint over the graph.
void TaintEngine::compute_ret_taint() {
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 64) {
        changed = false;
        for (const auto& [addr, analysis] : g_.contracts) {
            for (const auto& [sel, sum] : analysis->summaries) {
                // Candidate source args: any arg index a fact mentions.
                std::set<uint32_t> args;
                for (const FlowFact& f : sum.flow_facts)
                    if (f.source_is_arg())
                        args.insert(f.source);

                for (const uint32_t k : args) {
                    auto& known = ret_taint_[{addr, sel}];
                    if (known.count(k))
                        continue;

                    // BFS with witness accumulation.
                    std::map<Endpoint, std::vector<WitnessFact>> reached;
                    const Endpoint start{Endpoint::Kind::func_arg, kNoSite, k};
                    reached[start] = {};
                    std::deque<Endpoint> queue{start};
                    std::optional<std::vector<WitnessFact>> hit;

                    while (!queue.empty() && !hit) {
                        const Endpoint ep = queue.front();
                        queue.pop_front();
                        for (const FlowFact& f : sum.flow_facts) {
                            if (!(fact_source(f) == ep))
                                continue;
                            Endpoint next = fact_sink(f);
                            if (reached.count(next))
                                continue;
                            auto w = reached[ep];
                            w.push_back(WitnessFact{addr, sel, f});
                            if (next.kind == Endpoint::Kind::func_ret) {
                                hit = std::move(w);
                                break;
                            }
                            reached.emplace(next, std::move(w));
                            queue.push_back(next);
                        }
                        if (hit)
                            break;
                        // Pass-through of a nested call's return.
                        if (ep.kind == Endpoint::Kind::site_arg) {
                            const auto edge = edge_map_.find(
                                std::make_tuple(addr, sel, ep.site));
                            if (edge != edge_map_.end()) {
                                const auto callee_rets = ret_taint_.find(edge->second);
                                if (callee_rets != ret_taint_.end()) {
                                    const auto sub = callee_rets->second.find(ep.index);
                                    if (sub != callee_rets->second.end()) {
                                        const Endpoint next{
                                            Endpoint::Kind::site_ret, ep.site, 0};
                                        if (!reached.count(next)) {
                                            auto w = reached[ep];
                                            w.insert(w.end(), sub->second.begin(),
                                                sub->second.end());
                                            reached.emplace(next, std::move(w));
                                            queue.push_back(next);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if (hit) {
                        known.emplace(k, std::move(*hit));
                        changed = true;
                    }
                }
            }
        }
    }
}

std::vector<ReachResult> TaintEngine::propagate(Selector entry_fn, size_t chain_index,
    const std::vector<TaintLabel>& labels) const {
    std::vector<ReachResult> results;
    const auto chains_it = g_.chains.find(entry_fn);
    if (chains_it == g_.chains.end() || chain_index >= chains_it->second.size())
        return results;
    const CallChain& chain = chains_it->second[chain_index];

    // Labels are never merged: each endpoint carries the set of labels that
    // reached it, each with its own witness.
    using LabelStates = std::map<TaintLabel, std::vector<WitnessFact>>;

    const size_t frames = chain.edges.size() + 1;
    std::vector<std::map<Endpoint, LabelStates>> taint(frames);

    auto frame_node = [&](size_t i) -> NodeKey {
        if (i == 0)
            return {g_.entry, entry_fn};
        return {chain.edges[i - 1].target_contract, chain.edges[i - 1].target_funcsign};
    };

    for (const TaintLabel& label : labels) {
        if (label.entry_fn != entry_fn)
            continue;
        taint[0][Endpoint{Endpoint::Kind::site_arg, label.site, label.arg_pos}][label] = {};
    }

    // A repeated (contract, selector) frame would re-report its sinks.
    std::set<std::pair<SinkSite, TaintLabel>> seen_sinks;

    for (size_t i = 0; i < frames; ++i) {
        const auto [addr, sel] = frame_node(i);
        const FunctionSummary* sum = summary_of(addr, sel);
        if (sum) {
            // Close the frame under its facts and call-return transparency.
            bool changed = true;
            int rounds = 0;
            while (changed && rounds++ < 512) {
                changed = false;
                for (const FlowFact& f : sum->flow_facts) {
                    const auto src = taint[i].find(fact_source(f));
                    if (src == taint[i].end())
                        continue;
                    const Endpoint dst = fact_sink(f);
                    for (const auto& [label, witness] : src->second) {
                        auto& dst_states = taint[i][dst];
                        if (dst_states.count(label))
                            continue;
                        auto w = witness;
                        w.push_back(WitnessFact{addr, sel, f});
                        dst_states.emplace(label, std::move(w));
                        changed = true;
                    }
                }
                std::vector<std::pair<Endpoint, std::pair<TaintLabel, std::vector<WitnessFact>>>>
                    additions;
                for (const auto& [ep, states] : taint[i]) {
                    if (ep.kind != Endpoint::Kind::site_arg)
                        continue;
                    const auto edge = edge_map_.find(std::make_tuple(addr, sel, ep.site));
                    if (edge == edge_map_.end())
                        continue;
                    const auto callee_rets = ret_taint_.find(edge->second);
                    if (callee_rets == ret_taint_.end())
                        continue;
                    const auto sub = callee_rets->second.find(ep.index);
                    if (sub == callee_rets->second.end())
                        continue;
                    const Endpoint ret{Endpoint::Kind::site_ret, ep.site, 0};
                    for (const auto& [label, witness] : states) {
                        const auto existing = taint[i].find(ret);
                        if (existing != taint[i].end() && existing->second.count(label))
                            continue;
                        auto w = witness;
                        w.insert(w.end(), sub->second.begin(), sub->second.end());
                        additions.push_back({ret, {label, std::move(w)}});
                    }
                }
                for (auto& [ep, state] : additions)
                    if (taint[i][ep].emplace(state.first, std::move(state.second)).second)
                        changed = true;
            }

            // Sinks live in called contracts, frames past the entry.
            if (i >= 1) {
                for (const auto& [ep, states] : taint[i]) {
                    if (ep.kind != Endpoint::Kind::site_callee)
                        continue;
                    const SinkSite sink{addr, sel, ep.site};
                    for (const auto& [label, witness] : states) {
                        ReachResult r;
                        r.entry_fn = entry_fn;
                        r.chain_index = chain_index;
                        r.sink = sink;
                        r.label = label;
                        r.witness = witness;
                        if (const CallSite* s = sum->site(ep.site))
                            r.callback_selector = s->target_selector;
                        if (label.marks_self && r.callback_selector)
                            r.resolved_callback_target =
                                std::make_pair(g_.entry, *r.callback_selector);
                        results.push_back(std::move(r));
                    }
                }
            }
        }

        // Cross the spine edge: caller call-arg k to callee func-arg k.
        if (i + 1 < frames) {
            const uint32_t spine_site = chain.edges[i].callsite;
            for (const auto& [ep, states] : taint[i]) {
                if (ep.kind != Endpoint::Kind::site_arg || ep.site != spine_site)
                    continue;
                const Endpoint dst{Endpoint::Kind::func_arg, kNoSite, ep.index};
                for (const auto& [label, witness] : states)
                    taint[i + 1][dst].emplace(label, witness);
            }
        }
    }
    return results;
}

std::vector<ReachResult> TaintEngine::propagate_all(const std::vector<TaintLabel>& labels) const {
    std::vector<ReachResult> all;
    for (const auto& [fn, chains] : g_.chains) {
        for (size_t i = 0; i < chains.size(); ++i) {
            auto part = propagate(fn, i, labels);
            all.insert(all.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
        }
    }
    return all;
}

}  // namespace reenscan
