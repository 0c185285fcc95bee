// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "reenscan/cfg.hpp"
#include "reenscan/contract_id.hpp"
#include "reenscan/selector.hpp"

namespace reenscan {

struct FunctionEntry {
    Selector selector;
    uint32_t entry_block = kNoBlock;
    bool payable_known = false;  // payability is not recovered from bytecode
};

/// The contract's public-function set: one entry per dispatcher selector
/// plus the FALLBACK sentinel for the default path.
struct FunctionTable {
    ContractId contract{};
    std::vector<FunctionEntry> functions;  // sorted by selector
    Diagnostics diagnostics;

    const FunctionEntry* find(Selector s) const;
    bool has(Selector s) const { return find(s) != nullptr; }
};

/// Walks the dispatcher region from the entry block, collecting 4-byte
/// compare/JUMPI matches. Without a recognizable dispatcher the table holds
/// only FALLBACK rooted at offset 0 and a "no-dispatcher" diagnostic.
FunctionTable identify_functions(const CFG& cfg);

}  // namespace reenscan
