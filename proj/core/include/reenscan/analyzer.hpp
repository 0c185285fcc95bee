// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <shared_mutex>

#include "reenscan/cfg.hpp"
#include "reenscan/chain_client.hpp"
#include "reenscan/disasm.hpp"
#include "reenscan/function_table.hpp"
#include "reenscan/hooks.hpp"
#include "reenscan/summary.hpp"

namespace reenscan {

/// Everything the pipeline derives from one contract's bytecode. Heap-pinned
/// because cfg holds a pointer into stream.
struct ContractAnalysis {
    Bytecode bytecode;
    InstructionStream stream;
    CFG cfg;
    FunctionTable table;
    std::map<Selector, FunctionSummary> summaries;
    Diagnostics diagnostics;

    const FunctionSummary* summary(Selector s) const {
        const auto it = summaries.find(s);
        return it == summaries.end() ? nullptr : &it->second;
    }

    /// Functions containing at least one external call (the entry set E_f).
    std::vector<Selector> functions_with_calls() const;
};

/// Full per-contract pipeline: creation-code slicing, disassembly, CFG
/// recovery, function identification, per-function summaries.
std::shared_ptr<const ContractAnalysis> analyze_contract(Bytecode code,
    const HookRegistry& hooks);

/// Memoizing per-address analysis store shared by graph construction.
/// Reader-writer locking makes it safe across concurrent entry analyses.
class AnalysisCache {
public:
    AnalysisCache(std::shared_ptr<CachingClient> chain, HookRegistry hooks)
        : chain_(std::move(chain)), hooks_(std::move(hooks)) {}

    /// Fetches code and analyzes it, once per address. Throws ChainError
    /// when the backend fails (not for empty code).
    std::shared_ptr<const ContractAnalysis> by_address(const ContractId& id);

    CachingClient& chain() { return *chain_; }
    const HookRegistry& hooks() const { return hooks_; }

private:
    std::shared_ptr<CachingClient> chain_;
    HookRegistry hooks_;
    std::shared_mutex mutex_;
    std::map<ContractId, std::shared_ptr<const ContractAnalysis>> cache_;
};

}  // namespace reenscan
