// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <variant>

#include "reenscan/analyzer.hpp"

namespace reenscan {

/// One resolved external call: who calls whom, from which site.
struct CallEdge {
    uint32_t callsite = 0;  // call-site id in the caller's code
    ContractId caller_address;
    Selector caller_funcsign;
    ContractId target_contract;
    Selector target_funcsign;

    auto operator<=>(const CallEdge&) const = default;
};

enum class Truncation { complete, depth_capped, unresolved_tail };

const char* to_string(Truncation t);

/// An ordered edge list from the entry contract; one root-to-leaf DFS path.
struct CallChain {
    std::vector<CallEdge> edges;
    Truncation truncation = Truncation::complete;

    /// All (contract, selector) pairs along the chain, callers and targets.
    std::set<std::pair<ContractId, Selector>> visited() const;
};

/// A call site whose target could not become an edge; dynamic callees are
/// the taint sink candidates.
struct UnresolvedSite {
    ContractId contract;
    Selector function;
    uint32_t callsite = 0;
    std::string reason;  // "dynamic", "fetch-error", "unknown-selector", ...

    auto operator<=>(const UnresolvedSite&) const = default;
};

struct XGraphOptions {
    uint32_t depth_limit = 21;  // deepest observed attack chains reach 21
    uint32_t fanout_cap = 64;
};

struct XGraph {
    ContractId entry;
    bool entry_address_known = false;
    std::vector<Selector> entry_functions;  // E_f, sorted
    std::map<ContractId, std::shared_ptr<const ContractAnalysis>> contracts;
    std::set<ContractId> external_nodes;  // EOAs / empty-code accounts
    std::vector<CallEdge> edges;          // sorted, unique
    std::map<Selector, std::vector<CallChain>> chains;  // per entry function
    std::vector<UnresolvedSite> unresolved;
    Diagnostics diagnostics;

    const ContractAnalysis* analysis_of(const ContractId& id) const;
    /// First-resolution edge lookup: (caller, function, site) -> edge.
    const CallEdge* find_edge(const ContractId& caller, Selector fn, uint32_t site) const;
};

struct ResolvedTarget {
    ContractId contract;
    Selector function;  // FALLBACK for empty input buffers
};
struct Unresolved {
    std::string reason;
};
using ResolveResult = std::variant<ResolvedTarget, Unresolved>;

/// Execution context for callee resolution. storage differs from exec only
/// under DELEGATECALL/CALLCODE frames.
struct ResolutionContext {
    ContractId exec;
    ContractId storage;
    Selector frame_function;
    bool exec_known = true;
};

/// Resolves a call site's target per the callee's provenance: constants and
/// storage loads resolve, calldata/call-return/Top callees are dynamic
/// sinks, never edges.
ResolveResult resolve_call_target(const CallSite& site, const ResolutionContext& ctx,
    CachingClient& chain);

/// Depth-first construction of the cross-contract graph and every call
/// chain rooted at the entry's public functions with external calls.
XGraph build_xgraph(AnalysisCache& cache, std::shared_ptr<const ContractAnalysis> entry_analysis,
    const ContractId& entry_id, bool entry_address_known, const XGraphOptions& options = {});

/// The maximal chains rooted at (entry, f), as recorded during DFS.
const std::vector<CallChain>& enumerate_call_chains(const XGraph& g, Selector f);

}  // namespace reenscan
