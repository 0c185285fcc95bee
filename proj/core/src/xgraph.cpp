// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/xgraph.hpp"

#include <algorithm>

namespace reenscan {

const char* to_string(Truncation t) {
    switch (t) {
    case Truncation::complete: return "complete";
    case Truncation::depth_capped: return "depth-capped";
    case Truncation::unresolved_tail: return "unresolved-tail";
    }
    return "?";
}

std::set<std::pair<ContractId, Selector>> CallChain::visited() const {
    std::set<std::pair<ContractId, Selector>> v;
    for (const CallEdge& e : edges) {
        v.emplace(e.caller_address, e.caller_funcsign);
        v.emplace(e.target_contract, e.target_funcsign);
    }
    return v;
}

const ContractAnalysis* XGraph::analysis_of(const ContractId& id) const {
    const auto it = contracts.find(id);
    return it == contracts.end() ? nullptr : it->second.get();
}

const CallEdge* XGraph::find_edge(const ContractId& caller, Selector fn, uint32_t site) const {
    for (const CallEdge& e : edges)
        if (e.caller_address == caller && e.caller_funcsign == fn && e.callsite == site)
            return &e;
    return nullptr;
}

ResolveResult resolve_call_target(const CallSite& site, const ResolutionContext& ctx,
    CachingClient& chain) {
    ContractId addr;
    switch (site.callee.kind) {
    case AvKind::Const:
        addr = ContractId::from_word(low160(site.callee.word));
        break;
    case AvKind::StorageLoad: {
        try {
            addr = ContractId::from_word(low160(chain.get_storage(ctx.storage, site.callee.word)));
        } catch (const ChainError&) {
            return Unresolved{"fetch-error"};
        }
        break;
    }
    case AvKind::EnvSelf:
        if (!ctx.exec_known)
            return Unresolved{"dynamic"};
        addr = ctx.exec;
        break;
    default:
        // CallData / CallReturn / EnvSender / Top: attacker- or run-time
        // controlled; these are sink candidates, never edges.
        return Unresolved{"dynamic"};
    }
    if (addr.is_zero())
        return Unresolved{"zero-address"};

    if (site.target_selector)
        return ResolvedTarget{addr, *site.target_selector};
    if (site.call_opcode == OP_DELEGATECALL)
        // Forwarding proxies pass their calldata through unchanged.
        return ResolvedTarget{addr, ctx.frame_function};
    return Unresolved{"unknown-selector"};
}

namespace {

struct Node {
    ContractId exec;
    ContractId storage;
    ContractId code;
    Selector fn;
    bool exec_known = true;

    std::pair<ContractId, Selector> identity() const { return {exec, fn}; }
};

struct Builder {
    AnalysisCache& cache;
    XGraph& g;
    const XGraphOptions& opts;

    std::set<CallEdge> edge_set;
    std::map<std::tuple<ContractId, Selector, uint32_t>, uint32_t> fanout;
    std::vector<CallEdge> current;
    std::vector<std::pair<ContractId, Selector>> path;
    std::vector<CallChain>* out = nullptr;

    void record_chain(Truncation t) {
        if (current.empty())
            return;
        out->push_back(CallChain{current, t});
    }

    void dfs(const Node& n) {
        const ContractAnalysis* analysis = g.analysis_of(n.code);
        const FunctionSummary* sum = analysis ? analysis->summary(n.fn) : nullptr;

        bool extended = false;
        bool capped = false;
        bool unresolved_here = false;

        if (sum) {
            for (const CallSite& site : sum->call_sites) {
                const ResolveResult res = resolve_call_target(site,
                    ResolutionContext{n.exec, n.storage, n.fn, n.exec_known}, cache.chain());
                if (const auto* u = std::get_if<Unresolved>(&res)) {
                    g.unresolved.push_back(UnresolvedSite{n.exec, n.fn, site.id, u->reason});
                    unresolved_here = true;
                    continue;
                }
                const ResolvedTarget& target = std::get<ResolvedTarget>(res);

                const auto fan_key = std::make_tuple(n.exec, n.fn, site.id);
                if (++fanout[fan_key] > opts.fanout_cap) {
                    g.diagnostics.add("fanout-cap", "call site " + std::to_string(site.id));
                    continue;
                }

                std::shared_ptr<const ContractAnalysis> t_analysis;
                if (const auto it = g.contracts.find(target.contract); it != g.contracts.end()) {
                    t_analysis = it->second;
                } else {
                    try {
                        t_analysis = cache.by_address(target.contract);
                    } catch (const ChainError& e) {
                        g.unresolved.push_back(
                            UnresolvedSite{n.exec, n.fn, site.id, "fetch-error"});
                        g.diagnostics.add("fetch-error", e.what());
                        unresolved_here = true;
                        continue;
                    }
                }

                const bool external = t_analysis->bytecode.bytes.empty();
                Selector executed = target.function;
                if (!external) {
                    g.contracts.try_emplace(target.contract, t_analysis);
                    if (!t_analysis->table.has(executed))
                        executed = Selector::fallback();  // unmatched dispatch
                }

                const CallEdge edge{
                    site.id, n.exec, n.fn, target.contract, executed};
                if (edge_set.insert(edge).second)
                    g.edges.push_back(edge);

                if (current.size() >= opts.depth_limit) {
                    capped = true;
                    continue;
                }
                current.push_back(edge);
                extended = true;

                if (external) {
                    record_chain(Truncation::complete);
                } else {
                    Node child;
                    if (site.call_opcode == OP_DELEGATECALL || site.call_opcode == OP_CALLCODE) {
                        child = Node{n.exec, n.storage, target.contract, executed, n.exec_known};
                    } else {
                        child = Node{
                            target.contract, target.contract, target.contract, executed, true};
                    }
                    const auto ident = child.identity();
                    const auto repeats = std::count(path.begin(), path.end(), ident);
                    if (repeats >= 1) {
                        // The revisit is the reentrancy signal: keep the
                        // edge, stop descending.
                        record_chain(Truncation::complete);
                    } else {
                        path.push_back(ident);
                        dfs(child);
                        path.pop_back();
                    }
                }
                current.pop_back();
            }
        }

        if (capped)
            record_chain(Truncation::depth_capped);
        else if (!extended)
            record_chain(unresolved_here ? Truncation::unresolved_tail : Truncation::complete);
    }
};

}  // namespace

XGraph build_xgraph(AnalysisCache& cache, std::shared_ptr<const ContractAnalysis> entry_analysis,
    const ContractId& entry_id, bool entry_address_known, const XGraphOptions& options) {
    XGraph g;
    g.entry = entry_id;
    g.entry_address_known = entry_address_known;
    g.contracts.emplace(entry_id, entry_analysis);
    g.entry_functions = entry_analysis->functions_with_calls();
    std::sort(g.entry_functions.begin(), g.entry_functions.end());

    Builder builder{cache, g, options};
    for (const Selector f : g.entry_functions) {
        builder.out = &g.chains[f];
        builder.current.clear();
        builder.path.assign(1, {entry_id, f});
        builder.dfs(Node{entry_id, entry_id, entry_id, f, entry_address_known});

        // Duplicate prefixes can appear when both a capped branch and a
        // resolvable branch leave the same node; keep one copy.
        auto& chains = *builder.out;
        std::sort(chains.begin(), chains.end(), [](const CallChain& a, const CallChain& b) {
            if (a.edges != b.edges)
                return a.edges < b.edges;
            return a.truncation < b.truncation;
        });
        chains.erase(std::unique(chains.begin(), chains.end(),
                         [](const CallChain& a, const CallChain& b) {
                             return a.edges == b.edges && a.truncation == b.truncation;
                         }),
            chains.end());
    }

    std::sort(g.edges.begin(), g.edges.end());
    std::sort(g.unresolved.begin(), g.unresolved.end());
    g.unresolved.erase(std::unique(g.unresolved.begin(), g.unresolved.end()), g.unresolved.end());
    return g;
}

const std::vector<CallChain>& enumerate_call_chains(const XGraph& g, Selector f) {
    static const std::vector<CallChain> kEmpty;
    const auto it = g.chains.find(f);
    return it == g.chains.end() ? kEmpty : it->second;
}

}  // namespace reenscan
