// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reenscan/xgraph.hpp"

namespace reenscan {

/// A node in a function's dataflow-fact graph.
struct Endpoint {
    enum class Kind : uint8_t { func_arg, site_arg, site_ret, site_callee, func_ret };
    Kind kind = Kind::func_arg;
    uint32_t site = kNoSite;  // for the site_* kinds
    uint32_t index = 0;       // arg index, call-arg position, or return slot

    auto operator<=>(const Endpoint&) const = default;
};

Endpoint fact_source(const FlowFact& f);
Endpoint fact_sink(const FlowFact& f);

/// A seeded taint: one external-call argument of the entry contract.
/// marks_self is set when the seeded value is the entry's own address.
struct TaintLabel {
    ContractId entry;
    Selector entry_fn;
    uint32_t site = 0;
    uint32_t arg_pos = 0;
    bool marks_self = false;

    auto operator<=>(const TaintLabel&) const = default;
};

/// The callee slot of an external call in a called contract; the only sink
/// kind.
struct SinkSite {
    ContractId contract;
    Selector function;
    uint32_t callsite = 0;

    auto operator<=>(const SinkSite&) const = default;
};

struct WitnessFact {
    ContractId contract;
    Selector function;
    FlowFact fact;

    auto operator<=>(const WitnessFact&) const = default;
};

struct ReachResult {
    Selector entry_fn;
    size_t chain_index = 0;
    SinkSite sink;
    TaintLabel label;
    std::vector<WitnessFact> witness;  // ordered, seed to sink
    // Selector the sink call would invoke (FALLBACK for an empty buffer).
    std::optional<Selector> callback_selector;
    // Set when the tainted callee is concretely the entry contract.
    std::optional<std::pair<ContractId, Selector>> resolved_callback_target;
};

/// One label per argument position of every external call site in every
/// entry function with external calls (the source set A_s).
std::vector<TaintLabel> seed_sources(const XGraph& g);

/// Propagation over call chains: labels cross an edge from caller call-arg
/// position k to callee function-arg position k, move along intra-function
/// facts, and return through call sites whose targets pass arguments to
/// their own returns. A label landing on a callee slot is a reach.
class TaintEngine {
public:
    explicit TaintEngine(const XGraph& g);

    std::vector<ReachResult> propagate(Selector entry_fn, size_t chain_index,
        const std::vector<TaintLabel>& labels) const;

    std::vector<ReachResult> propagate_all(const std::vector<TaintLabel>& labels) const;

private:
    using NodeKey = std::pair<ContractId, Selector>;

    void compute_ret_taint();
    const FunctionSummary* summary_of(const ContractId& id, Selector fn) const;

    const XGraph& g_;
    std::map<std::tuple<ContractId, Selector, uint32_t>, NodeKey> edge_map_;
    // (contract, fn) -> arg index -> witness that the arg taints the return
    std::map<NodeKey, std::map<uint32_t, std::vector<WitnessFact>>> ret_taint_;
};

/// Decision form over an explicit fact set (one function's graph): BFS
/// reachability with the witness path on success.
bool is_reachable(const Endpoint& source, const Endpoint& sink,
    const std::vector<FlowFact>& facts, std::vector<FlowFact>* witness = nullptr);

}  // namespace reenscan
