// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reenscan/taint.hpp"

namespace reenscan {

enum class AttackType { fallback_type, erc_hook, user_defined };
enum class Verdict { benign, attacker };

const char* to_string(AttackType t);
const char* to_string(Verdict v);

/// One confirmed reentrancy shape: a tainted callee resolving back to the
/// entry (Step 1), a hook the entry implements (Step 2), and a hook call
/// revisiting the chain with at least one non-static call (Step 3).
struct Finding {
    AttackType attack_type = AttackType::user_defined;
    Selector hook;
    std::string hook_name;  // registry name, or "fallback"

    Selector entry_fn;
    size_t chain_index = 0;
    CallChain chain;
    SinkSite sink;
    TaintLabel label;
    std::vector<WitnessFact> witness;

    struct HookCall {
        ContractId contract;
        Selector function;
        uint32_t callsite = 0;
        bool is_static = false;
    };
    std::vector<HookCall> hook_external_calls;  // all resolved calls of the hook
    std::vector<std::pair<ContractId, Selector>> reentered_targets;
    std::vector<ContractId> victims;
    bool sender_guarded = false;
};

struct DetectionReport {
    int schema_version = 1;
    ContractId entry;
    bool entry_address_known = false;
    Verdict verdict = Verdict::benign;
    std::vector<Finding> findings;
    std::vector<Selector> entry_functions;  // the entry's public-function set
    Diagnostics diagnostics;
    int64_t timing_ms = 0;

    size_t contracts_discovered = 0;  // beyond the entry
    size_t external_nodes = 0;
    size_t edge_count = 0;
    size_t max_chain_depth = 0;
};

struct DetectOptions {
    XGraphOptions graph;
};

AttackType classify_attack_type(Selector hook, const HookRegistry& registry);

/// Full pipeline for one entry contract. Never throws for analysis-level
/// problems; those become diagnostics. Chain errors on the entry itself
/// propagate as ChainError.
DetectionReport detect(AnalysisCache& cache,
    std::shared_ptr<const ContractAnalysis> entry_analysis, const ContractId& entry_id,
    bool entry_address_known, const DetectOptions& options = {}, XGraph* graph_out = nullptr);

}  // namespace reenscan
