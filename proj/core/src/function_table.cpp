// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/function_table.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace reenscan {

const FunctionEntry* FunctionTable::find(Selector s) const {
    for (const FunctionEntry& f : functions)
        if (f.selector == s)
            return &f;
    return nullptr;
}

FunctionTable identify_functions(const CFG& cfg) {
    FunctionTable table;

    std::map<uint32_t, uint32_t> found;  // selector -> entry block
    std::optional<uint32_t> fallback_block;

    if (!cfg.blocks.empty()) {
        std::deque<uint32_t> queue{0};
        std::set<uint32_t> visited{0};
        int prologue_allowance = 8;
        int budget = 512;

        auto enqueue = [&](std::optional<uint32_t> b) {
            if (b && visited.insert(*b).second)
                queue.push_back(*b);
        };

        while (!queue.empty() && budget-- > 0) {
            const BasicBlock& b = cfg.blocks[queue.front()];
            queue.pop_front();

            if (b.dispatch) {
                const auto match = b.dispatch->negated ? b.fallthrough_successor
                                                       : b.jump_successor;
                const auto chain = b.dispatch->negated ? b.jump_successor
                                                       : b.fallthrough_successor;
                if (match && !found.count(b.dispatch->selector))
                    found[b.dispatch->selector] = *match;
                enqueue(chain);
                continue;
            }
            if (b.cds_guard_small_on_jump) {
                const auto fb = *b.cds_guard_small_on_jump ? b.jump_successor
                                                           : b.fallthrough_successor;
                const auto chain = *b.cds_guard_small_on_jump ? b.fallthrough_successor
                                                              : b.jump_successor;
                if (fb && !fallback_block)
                    fallback_block = fb;
                enqueue(chain);
                continue;
            }

            if (found.empty() && prologue_allowance > 0) {
                --prologue_allowance;
                for (uint32_t s : b.successors)
                    enqueue(s);
                continue;
            }
            // First unannotated block past the compare chain: the fallback
            // body, unless the calldatasize guard already named one.
            if (!found.empty() && !fallback_block)
                fallback_block = b.id;
        }
    }

    if (found.empty()) {
        table.diagnostics.add("no-dispatcher");
        table.functions.push_back(
            FunctionEntry{Selector::fallback(), cfg.blocks.empty() ? kNoBlock : 0u});
        return table;
    }

    for (const auto& [sel, block] : found)
        table.functions.push_back(FunctionEntry{Selector::from_u32(sel), block});
    table.functions.push_back(
        FunctionEntry{Selector::fallback(), fallback_block.value_or(kNoBlock)});
    std::sort(table.functions.begin(), table.functions.end(),
        [](const FunctionEntry& a, const FunctionEntry& b) { return a.selector < b.selector; });
    return table;
}

}  // namespace reenscan
