// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evm_asm.hpp"

#include <stdexcept>

namespace reenscan::testing {

Asm& Asm::op(uint8_t opcode) {
    bytes_.push_back(opcode);
    return *this;
}

Asm& Asm::push(const u256& value) {
    // Minimal width; zero still needs one immediate byte so the stream
    // decodes identically on pre-PUSH0 rules.
    Bytes imm;
    u256 v = value;
    while (v != 0) {
        imm.insert(imm.begin(), static_cast<uint8_t>(v & 0xff));
        v >>= 8;
    }
    if (imm.empty())
        imm.push_back(0x00);
    bytes_.push_back(static_cast<uint8_t>(OP_PUSH1 + imm.size() - 1));
    bytes_.insert(bytes_.end(), imm.begin(), imm.end());
    return *this;
}

Asm& Asm::push_label(const std::string& name) {
    bytes_.push_back(OP_PUSH2);
    fixups_.emplace_back(bytes_.size(), name);
    bytes_.push_back(0x00);
    bytes_.push_back(0x00);
    return *this;
}

Asm& Asm::label(const std::string& name) {
    if (labels_.count(name))
        throw std::logic_error("duplicate label " + name);
    labels_[name] = static_cast<uint16_t>(bytes_.size());
    return *this;
}

Asm& Asm::jumpdest(const std::string& name) {
    label(name);
    return op(OP_JUMPDEST);
}

Asm& Asm::raw(const Bytes& bytes) {
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
    return *this;
}

Bytes Asm::assemble() const {
    Bytes out = bytes_;
    for (const auto& [pos, name] : fixups_) {
        const auto it = labels_.find(name);
        if (it == labels_.end())
            throw std::logic_error("undefined label " + name);
        out[pos] = static_cast<uint8_t>(it->second >> 8);
        out[pos + 1] = static_cast<uint8_t>(it->second & 0xff);
    }
    return out;
}

namespace {

void push_val(Asm& a, const Val& v) {
    switch (v.kind) {
    case Val::Kind::constant:
        a.push(v.word);
        break;
    case Val::Kind::self:
        a.op(OP_ADDRESS);
        break;
    case Val::Kind::sender:
        a.op(OP_CALLER);
        break;
    case Val::Kind::arg:
        a.push(4 + 32 * v.arg).op(OP_CALLDATALOAD);
        break;
    case Val::Kind::sload:
        a.push(v.word).op(OP_SLOAD);
        break;
    case Val::Kind::last_ret:
        a.push(0).op(OP_MLOAD);  // return data of the previous call
        break;
    }
}

}  // namespace

void emit_call(Asm& a, const CallSpec& call) {
    constexpr uint32_t kBuf = 0x80;
    u256 args_size = 0;
    if (call.selector) {
        a.push(u256(*call.selector) << 224).push(kBuf).op(OP_MSTORE);
        for (size_t k = 0; k < call.args.size(); ++k) {
            push_val(a, call.args[k]);
            a.push(kBuf + 4 + 32 * k).op(OP_MSTORE);
        }
        args_size = 4 + 32 * call.args.size();
    }

    a.push(0x20);                       // retSize
    a.push(0);                          // retOffset
    a.push(args_size);                  // argsSize
    a.push(args_size == 0 ? 0 : kBuf);  // argsOffset
    if (call.opcode == OP_CALL || call.opcode == OP_CALLCODE)
        a.push(call.value);
    push_val(a, call.callee);
    a.op(OP_GAS);
    a.op(call.opcode);
    a.op(OP_POP);  // drop the status word
}

Bytes build_contract(const std::vector<FnSpec>& fns) {
    Asm a;

    // Dispatcher: calldatasize guard, then SHR-based selector compares.
    a.push(4).op(OP_CALLDATASIZE).op(OP_LT).push_label("fallback").op(OP_JUMPI);
    a.push(0).op(OP_CALLDATALOAD).push(0xe0).op(OP_SHR);
    for (const FnSpec& fn : fns) {
        if (fn.selector.is_fallback())
            continue;
        const std::string name = "fn_" + fn.selector.to_string();
        a.op(OP_DUP1).push(fn.selector.value()).op(OP_EQ).push_label(name).op(OP_JUMPI);
    }
    a.push_label("fallback").op(OP_JUMP);

    const FnSpec* fallback_fn = nullptr;
    for (const FnSpec& fn : fns)
        if (fn.selector.is_fallback())
            fallback_fn = &fn;

    int gate = 0;
    auto emit_body = [&](const FnSpec& fn) {
        if (fn.sender_gate) {
            const std::string ok = "gate_ok_" + std::to_string(gate++);
            a.op(OP_CALLER)
                .push(word_from_hex("0xbadbadbadbadbadbadbadbadbadbadbadbadbad0").value())
                .op(OP_EQ)
                .push_label(ok)
                .op(OP_JUMPI);
            a.push(0).op(OP_DUP1).op(OP_REVERT);
            a.jumpdest(ok);
        }
        if (fn.sstore)
            a.push(fn.sstore->second).push(fn.sstore->first).op(OP_SSTORE);

        if (fn.count_guard) {
            // counter in slot 7: ++count; if (count < 2) { calls }
            const std::string do_calls = "guard_do_" + std::to_string(gate);
            const std::string done = "guard_end_" + std::to_string(gate++);
            a.push(7).op(OP_SLOAD).push(1).op(OP_ADD).push(7).op(OP_SSTORE);
            a.push(2).push(7).op(OP_SLOAD).op(OP_LT).push_label(do_calls).op(OP_JUMPI);
            a.push_label(done).op(OP_JUMP);
            a.jumpdest(do_calls);
            for (const CallSpec& c : fn.calls)
                emit_call(a, c);
            a.jumpdest(done);
        } else {
            for (const CallSpec& c : fn.calls)
                emit_call(a, c);
        }

        switch (fn.ret) {
        case FnReturn::stop:
            a.op(OP_STOP);
            break;
        case FnReturn::ret_arg0:
            a.push(4).op(OP_CALLDATALOAD).push(0).op(OP_MSTORE);
            a.push(0x20).push(0).op(OP_RETURN);
            break;
        case FnReturn::ret_last_call:
            // return data of the last call already sits at memory 0.
            a.push(0x20).push(0).op(OP_RETURN);
            break;
        case FnReturn::ret_const:
            a.push(1).push(0).op(OP_MSTORE);
            a.push(0x20).push(0).op(OP_RETURN);
            break;
        }
    };

    for (const FnSpec& fn : fns) {
        if (fn.selector.is_fallback())
            continue;
        a.jumpdest("fn_" + fn.selector.to_string());
        a.op(OP_POP);  // dispatcher leaves the selector word behind
        emit_body(fn);
    }

    a.jumpdest("fallback");
    if (fallback_fn)
        emit_body(*fallback_fn);
    else
        a.op(OP_STOP);

    return a.assemble();
}

}  // namespace reenscan::testing
