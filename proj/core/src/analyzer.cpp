// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/analyzer.hpp"

namespace reenscan {

std::vector<Selector> ContractAnalysis::functions_with_calls() const {
    std::vector<Selector> out;
    for (const auto& [sel, sum] : summaries)
        if (sum.has_external_calls())
            out.push_back(sel);
    return out;
}

std::shared_ptr<const ContractAnalysis> analyze_contract(Bytecode code,
    const HookRegistry& hooks) {
    auto analysis = std::make_shared<ContractAnalysis>();

    // Creation bytecode carries the runtime segment behind the constructor's
    // CODECOPY/RETURN tail. Explicit runtime input is never sliced.
    switch (code.kind) {
    case BytecodeKind::creation: {
        if (auto runtime = extract_runtime(code.bytes)) {
            code.bytes = std::move(*runtime);
            analysis->diagnostics.add("creation-sliced");
        } else {
            analysis->diagnostics.add("creation-unresolved");
        }
        break;
    }
    case BytecodeKind::unknown: {
        if (auto runtime = extract_runtime(code.bytes)) {
            code.bytes = std::move(*runtime);
            analysis->diagnostics.add("creation-sliced");
        }
        break;
    }
    case BytecodeKind::runtime:
        break;
    }

    analysis->bytecode = std::move(code);
    analysis->stream = disassemble(analysis->bytecode);
    analysis->cfg = build_cfg(analysis->stream);
    analysis->table = identify_functions(analysis->cfg);

    for (const FunctionEntry& fn : analysis->table.functions) {
        FunctionSummary sum = summarize(analysis->cfg, analysis->table, fn);
        sum.hook = classify_hook(fn.selector, hooks);
        analysis->summaries.emplace(fn.selector, std::move(sum));
    }

    analysis->diagnostics.merge(analysis->cfg.diagnostics);
    analysis->diagnostics.merge(analysis->table.diagnostics);
    for (const auto& [sel, sum] : analysis->summaries)
        analysis->diagnostics.merge(sum.diagnostics);
    return analysis;
}

std::shared_ptr<const ContractAnalysis> AnalysisCache::by_address(const ContractId& id) {
    {
        std::shared_lock lock(mutex_);
        const auto it = cache_.find(id);
        if (it != cache_.end())
            return it->second;
    }
    Bytes code = chain_->get_code(id);  // may throw ChainError
    auto fresh_analysis =
        analyze_contract(Bytecode{std::move(code), BytecodeKind::runtime}, hooks_);

    std::unique_lock lock(mutex_);
    const auto [it, inserted] = cache_.try_emplace(id, std::move(fresh_analysis));
    return it->second;
}

}  // namespace reenscan
