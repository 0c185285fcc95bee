// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reenscan/bytes.hpp"
#include "reenscan/opcodes.hpp"
#include "reenscan/selector.hpp"
#include "reenscan/word.hpp"

namespace reenscan::testing {

/// Tiny EVM assembler for building test bytecode: opcodes, minimal-width
/// pushes, and 2-byte label fixups.
class Asm {
public:
    Asm& op(uint8_t opcode);
    Asm& push(const u256& value);
    Asm& push_label(const std::string& name);
    Asm& label(const std::string& name);     // bind at current offset
    Asm& jumpdest(const std::string& name);  // label + JUMPDEST
    Asm& raw(const Bytes& bytes);

    Bytes assemble() const;  // resolves label fixups
    size_t size() const { return bytes_.size(); }

private:
    Bytes bytes_;
    std::map<std::string, uint16_t> labels_;
    std::vector<std::pair<size_t, std::string>> fixups_;
};

/// How a fixture pushes a value (a call argument or callee) onto the stack.
struct Val {
    enum class Kind { constant, self, sender, arg, sload, last_ret };
    Kind kind = Kind::constant;
    u256 word = 0;     // constant value or storage slot
    uint32_t arg = 0;  // calldata argument index

    static Val constant(u256 w) { return {Kind::constant, std::move(w), 0}; }
    static Val self() { return {Kind::self, 0, 0}; }
    static Val sender() { return {Kind::sender, 0, 0}; }
    static Val argument(uint32_t index) { return {Kind::arg, 0, index}; }
    static Val sload(u256 slot) { return {Kind::sload, std::move(slot), 0}; }
    static Val last_ret() { return {Kind::last_ret, 0, 0}; }
};

struct CallSpec {
    uint8_t opcode = OP_CALL;
    Val callee;
    std::optional<uint32_t> selector;  // nullopt: empty input buffer
    std::vector<Val> args;
    u256 value = 0;  // wei attached (CALL only)
};

enum class FnReturn { stop, ret_arg0, ret_last_call, ret_const };

struct FnSpec {
    Selector selector;  // Selector::fallback() for the default function
    std::vector<CallSpec> calls;
    FnReturn ret = FnReturn::stop;
    bool sender_gate = false;  // require(msg.sender == <const>) prologue
    bool count_guard = false;  // ++counter(slot 7); if (counter < 2) { calls }
    std::optional<std::pair<u256, u256>> sstore;  // slot := const value
};

/// Assembles a contract with the canonical dispatcher (calldatasize guard,
/// SHR selector extraction, 4-byte compare chain) and the given functions.
Bytes build_contract(const std::vector<FnSpec>& fns);

/// Emits one external call with its input buffer at 0x80 and return data at
/// 0x00 (32 bytes).
void emit_call(Asm& a, const CallSpec& call);

}  // namespace reenscan::testing
