// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "reenscan/diagnostics.hpp"
#include "reenscan/emulate.hpp"

namespace reenscan {

constexpr uint32_t kNoBlock = 0xffffffffu;

/// A JUMPI whose condition compares the incoming calldata selector against a
/// 4-byte constant. When `negated` the match arm is the fallthrough
/// successor, otherwise the jump target.
struct SelectorDispatch {
    uint32_t selector = 0;
    bool negated = false;
};

struct BasicBlock {
    uint32_t id = 0;
    uint32_t start_offset = 0;
    size_t first_instruction = 0;
    size_t instruction_count = 0;
    uint8_t end_opcode = OP_STOP;

    std::optional<uint32_t> fallthrough_successor;  // next block, JUMPI false arm
    std::optional<uint32_t> jump_successor;         // resolved JUMP/JUMPI target
    std::vector<uint32_t> successors;               // deduplicated union of the above
    bool unresolved_jump = false;

    std::optional<SelectorDispatch> dispatch;
    // JUMPI guarding on calldatasize; true when the jump target is the
    // short-calldata (fallback) arm.
    std::optional<bool> cds_guard_small_on_jump;
};

struct CFG {
    const InstructionStream* stream = nullptr;  // non-owning; see ContractAnalysis
    std::vector<BasicBlock> blocks;
    std::unordered_map<uint32_t, uint32_t> block_by_offset;
    std::vector<AbstractStack> entry_states;  // joined fixpoint state per block
    DispatchObservations observations;
    Diagnostics diagnostics;

    const Instruction& instruction(const BasicBlock& b, size_t i) const {
        return stream->instructions[b.first_instruction + i];
    }
    const Instruction& last_instruction(const BasicBlock& b) const {
        return instruction(b, b.instruction_count - 1);
    }
    /// Block starting exactly at `offset` whose first instruction is a
    /// JUMPDEST, i.e. a valid jump target.
    std::optional<uint32_t> jumpdest_block(const u256& target) const;
};

/// Recovers the block partition and jump edges by abstract stack emulation
/// with a per-block visit cap of 8 (slots degrade to Top at the cap). Jump
/// targets that never resolve to a constant are marked, not guessed.
CFG build_cfg(const InstructionStream& stream);

/// Per-instruction abstract stack states along a path of blocks, memory
/// modeling enabled. states_before[i] is the stack (bottom to top) right
/// before the i-th instruction of the flattened path executes.
struct PathStates {
    std::vector<std::vector<AbstractValue>> states_before;
    std::vector<AbstractValue> final_stack;
    bool infeasible = false;
};

PathStates emulate_stack(const CFG& cfg, const std::vector<uint32_t>& block_path);

}  // namespace reenscan
