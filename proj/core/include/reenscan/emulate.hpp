// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reenscan/abstract_value.hpp"
#include "reenscan/disasm.hpp"

namespace reenscan {

constexpr uint32_t kNoDef = 0xffffffffu;

/// A stack slot: the abstract value plus the offset of the instruction that
/// produced it. Definitions let the dispatcher recognizer trace a JUMPI
/// condition back through ISZERO chains to a selector comparison.
struct Tracked {
    AbstractValue v;
    uint32_t def = kNoDef;
};

/// Abstract operand stack. Pops below the modeled frame synthesize Top
/// slots (values left by the dispatcher or a calling context); only popping
/// past the synthesis cap marks the state infeasible.
class AbstractStack {
public:
    Tracked pop();
    void push(Tracked t) { slots_.push_back(std::move(t)); }
    void push_value(AbstractValue v, uint32_t def = kNoDef) { slots_.push_back({std::move(v), def}); }

    /// Slot i counted from the top (0 = top), synthesizing as needed.
    Tracked& from_top(size_t i);
    /// Guarantees at least n slots by synthesizing Top at the bottom.
    void ensure(size_t n);

    size_t depth() const { return slots_.size(); }
    bool infeasible() const { return infeasible_; }
    const std::vector<Tracked>& slots() const { return slots_; }

    /// Slot-wise join, top-aligned; a depth mismatch keeps the common top
    /// portion. Returns true when `into` changed.
    static bool join_into(AbstractStack& into, const AbstractStack& other);

    /// Replaces every slot with Top (widening at the visit cap).
    void degrade();

private:
    std::vector<Tracked> slots_;
    size_t synthesized_ = 0;
    bool infeasible_ = false;
};

/// Word-granular memory keyed by concrete offsets. Loads and stores at
/// non-constant offsets fall back to Top; distinct offsets never alias,
/// which is exactly how solc lays out call input buffers.
class AbstractMemory {
public:
    void store(const u256& offset, Tracked v) { words_[offset] = std::move(v); }
    std::optional<Tracked> load(const u256& offset) const {
        const auto it = words_.find(offset);
        if (it == words_.end())
            return std::nullopt;
        return it->second;
    }
    void clear() { words_.clear(); }

private:
    std::map<u256, Tracked> words_;
};

enum class StepKind {
    plain,
    jump,
    jumpi,
    call,          // CALL / CALLCODE / DELEGATECALL / STATICCALL
    ret,           // RETURN
    halt,          // STOP / SELFDESTRUCT
    revert,        // REVERT / INVALID / unknown opcode
};

/// Operands captured at a call-family instruction.
struct CallOperands {
    uint8_t opcode = 0;
    Tracked callee;
    Tracked value;  // CALL/CALLCODE only; Const(0) otherwise
    Tracked args_offset;
    Tracked args_size;
    Tracked ret_offset;
    Tracked ret_size;
};

struct StepEvent {
    StepKind kind = StepKind::plain;
    Tracked jump_target;
    Tracked condition;    // jumpi
    CallOperands call;    // kind == call
    Tracked ret_offset;   // kind == ret
    Tracked ret_size;
    std::optional<Tracked> sstore_value;  // value operand of an SSTORE
};

/// Dispatcher-shape observations accumulated while stepping.
struct DispatchObservations {
    std::unordered_map<uint32_t, uint32_t> selector_eq;  // EQ offset -> 4-byte constant
    std::unordered_map<uint32_t, uint32_t> iszero_chain; // ISZERO offset -> operand def
    // calldatasize guard compares; value: true when the comparison is true
    // for short calldata (the fallback direction)
    std::unordered_map<uint32_t, bool> cds_compare;
    std::unordered_set<uint32_t> sender_eq;              // EQ against CALLER

    /// Follows an ISZERO chain from a JUMPI condition definition. Returns
    /// the terminal definition offset and negation parity.
    std::pair<uint32_t, bool> resolve_condition(uint32_t def) const;
};

struct MachineState {
    AbstractStack stack;
    AbstractMemory memory;
    std::optional<uint32_t> last_call_site;
};

struct EmulatorOptions {
    bool model_memory = false;
};

/// Abstract transfer function over the instruction stream. One instance is
/// shared across all paths/blocks of a contract so dispatcher observations
/// accumulate in one place.
class Emulator {
public:
    Emulator(const InstructionStream& stream, EmulatorOptions options)
        : stream_(stream), options_(options) {}

    StepEvent step(MachineState& state, const Instruction& in);

    const DispatchObservations& observations() const { return obs_; }
    const InstructionStream& stream() const { return stream_; }

private:
    uint8_t opcode_at(uint32_t def) const;

    const InstructionStream& stream_;
    EmulatorOptions options_;
    DispatchObservations obs_;
};

}  // namespace reenscan
