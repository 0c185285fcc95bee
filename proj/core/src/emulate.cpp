// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/emulate.hpp"

namespace reenscan {

namespace {

using u512 = boost::multiprecision::uint512_t;

const u256 kSignBit = u256(1) << 255;
const u256 kAllOnes = ~u256(0);

bool sign_of(const u256& v) {
    return (v & kSignBit) != 0;
}

u256 negate(const u256& v) {
    return u256(0) - v;
}

u256 shl(const u256& shift, const u256& v) {
    if (shift >= 256)
        return 0;
    return v << static_cast<unsigned>(shift);
}

u256 shr(const u256& shift, const u256& v) {
    if (shift >= 256)
        return 0;
    return v >> static_cast<unsigned>(shift);
}

u256 sar(const u256& shift, const u256& v) {
    const bool neg = sign_of(v);
    if (shift >= 256)
        return neg ? kAllOnes : u256(0);
    const unsigned s = static_cast<unsigned>(shift);
    if (s == 0)
        return v;
    u256 r = v >> s;
    if (neg)
        r |= kAllOnes << (256 - s);
    return r;
}

u256 sdiv(const u256& a, const u256& b) {
    if (b == 0)
        return 0;
    const bool na = sign_of(a), nb = sign_of(b);
    const u256 ua = na ? negate(a) : a;
    const u256 ub = nb ? negate(b) : b;
    const u256 q = ua / ub;
    return (na != nb) ? negate(q) : q;
}

u256 smod(const u256& a, const u256& b) {
    if (b == 0)
        return 0;
    const bool na = sign_of(a);
    const u256 ua = na ? negate(a) : a;
    const u256 ub = sign_of(b) ? negate(b) : b;
    const u256 r = ua % ub;
    return na ? negate(r) : r;
}

u256 exp_mod256(u256 base, u256 e) {
    u256 r = 1;
    while (e != 0) {
        if ((e & 1) != 0)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

u256 signextend(const u256& k, const u256& v) {
    if (k >= 31)
        return v;
    const unsigned bit = static_cast<unsigned>(k) * 8 + 7;
    const u256 mask = (u256(1) << (bit + 1)) - 1;
    if ((v & (u256(1) << bit)) != 0)
        return v | ~mask;
    return v & mask;
}

u256 byte_op(const u256& i, const u256& v) {
    if (i >= 32)
        return 0;
    return (v >> (8 * (31 - static_cast<unsigned>(i)))) & 0xff;
}

bool slt(const u256& a, const u256& b) {
    return (a ^ kSignBit) < (b ^ kSignBit);
}

}  // namespace

Tracked AbstractStack::pop() {
    if (slots_.empty()) {
        if (++synthesized_ > 1024) {
            infeasible_ = true;
            return {AbstractValue::top(), kNoDef};
        }
        return {AbstractValue::top(), kNoDef};
    }
    Tracked t = std::move(slots_.back());
    slots_.pop_back();
    return t;
}

void AbstractStack::ensure(size_t n) {
    while (slots_.size() < n) {
        if (++synthesized_ > 1024) {
            infeasible_ = true;
            return;
        }
        slots_.insert(slots_.begin(), Tracked{AbstractValue::top(), kNoDef});
    }
}

Tracked& AbstractStack::from_top(size_t i) {
    ensure(i + 1);
    return slots_[slots_.size() - 1 - i];
}

bool AbstractStack::join_into(AbstractStack& into, const AbstractStack& other) {
    bool changed = false;
    if (into.slots_.size() > other.slots_.size()) {
        const size_t drop = into.slots_.size() - other.slots_.size();
        into.slots_.erase(into.slots_.begin(), into.slots_.begin() + static_cast<ptrdiff_t>(drop));
        changed = true;
    }
    const size_t skip = other.slots_.size() - into.slots_.size();
    for (size_t i = 0; i < into.slots_.size(); ++i) {
        Tracked& dst = into.slots_[i];
        const Tracked& src = other.slots_[skip + i];
        const AbstractValue joined = join(dst.v, src.v);
        if (!(joined == dst.v)) {
            dst.v = joined;
            changed = true;
        }
        if (dst.def != src.def && dst.def != kNoDef) {
            dst.def = kNoDef;
            changed = true;
        }
    }
    return changed;
}

void AbstractStack::degrade() {
    for (auto& s : slots_)
        s = Tracked{AbstractValue::top(), kNoDef};
}

std::pair<uint32_t, bool> DispatchObservations::resolve_condition(uint32_t def) const {
    bool negated = false;
    for (int i = 0; i < 64; ++i) {
        const auto it = iszero_chain.find(def);
        if (it == iszero_chain.end())
            break;
        def = it->second;
        negated = !negated;
    }
    return {def, negated};
}

uint8_t Emulator::opcode_at(uint32_t def) const {
    if (def == kNoDef)
        return OP_INVALID;
    const auto idx = stream_.index_at(def);
    if (!idx)
        return OP_INVALID;
    return stream_.instructions[*idx].opcode;
}

StepEvent Emulator::step(MachineState& state, const Instruction& in) {
    StepEvent ev;
    AbstractStack& stack = state.stack;
    const uint8_t op = in.opcode;
    const uint32_t off = in.offset;

    if (is_push(op)) {
        if (in.truncated)
            stack.push_value(AbstractValue::top(), off);
        else
            stack.push_value(AbstractValue::constant(in.immediate_word()), off);
        return ev;
    }
    if (is_dup(op)) {
        const size_t n = static_cast<size_t>(op - OP_DUP1) + 1;
        Tracked t = stack.from_top(n - 1);
        stack.push(std::move(t));
        return ev;
    }
    if (is_swap(op)) {
        const size_t n = static_cast<size_t>(op - OP_SWAP1) + 1;
        stack.ensure(n + 1);
        std::swap(stack.from_top(0), stack.from_top(n));
        return ev;
    }
    if (op >= OP_LOG0 && op <= OP_LOG4) {
        const int pops = (op - OP_LOG0) + 2;
        for (int i = 0; i < pops; ++i)
            stack.pop();
        return ev;
    }

    switch (op) {
    case OP_PUSH0:
        stack.push_value(AbstractValue::constant(0), off);
        return ev;
    case OP_STOP:
        ev.kind = StepKind::halt;
        return ev;
    case OP_SELFDESTRUCT:
        stack.pop();
        ev.kind = StepKind::halt;
        return ev;
    case OP_REVERT:
        stack.pop();
        stack.pop();
        ev.kind = StepKind::revert;
        return ev;
    case OP_RETURN: {
        ev.ret_offset = stack.pop();
        ev.ret_size = stack.pop();
        ev.kind = StepKind::ret;
        return ev;
    }
    case OP_JUMP:
        ev.jump_target = stack.pop();
        ev.kind = StepKind::jump;
        return ev;
    case OP_JUMPI:
        ev.jump_target = stack.pop();
        ev.condition = stack.pop();
        ev.kind = StepKind::jumpi;
        return ev;
    case OP_JUMPDEST:
        return ev;
    case OP_PC:
        stack.push_value(AbstractValue::constant(off), off);
        return ev;
    case OP_ADDRESS:
        stack.push_value(AbstractValue::self(), off);
        return ev;
    case OP_CALLER:
        stack.push_value(AbstractValue::sender(), off);
        return ev;
    case OP_CALLDATALOAD: {
        const Tracked a = stack.pop();
        if (a.v.is_const()) {
            const u256& o = a.v.word;
            if (o == 0)
                stack.push_value(AbstractValue::calldata_raw(0), off);
            else if (o >= 4 && (o - 4) % 32 == 0 && o < (u256(1) << 32))
                stack.push_value(
                    AbstractValue::calldata_arg(static_cast<uint64_t>((o - 4) / 32)), off);
            else if (o < 4)
                stack.push_value(AbstractValue::calldata_raw(static_cast<uint64_t>(o)), off);
            else
                stack.push_value(AbstractValue::top(), off);  // dynamic tail
        } else {
            stack.push_value(AbstractValue::top(), off);
        }
        return ev;
    }
    case OP_SLOAD: {
        const Tracked a = stack.pop();
        if (a.v.is_const())
            stack.push_value(AbstractValue::storage(a.v.word), off);
        else
            stack.push_value(AbstractValue::top(), off);
        return ev;
    }
    case OP_SSTORE: {
        stack.pop();  // slot
        Tracked value = stack.pop();
        ev.sstore_value = std::move(value);
        return ev;
    }
    case OP_MLOAD: {
        const Tracked a = stack.pop();
        if (options_.model_memory && a.v.is_const()) {
            if (auto stored = state.memory.load(a.v.word)) {
                stack.push(Tracked{stored->v, off});
                return ev;
            }
        }
        stack.push_value(AbstractValue::top(), off);
        return ev;
    }
    case OP_MSTORE: {
        const Tracked addr = stack.pop();
        Tracked value = stack.pop();
        if (options_.model_memory && addr.v.is_const())
            state.memory.store(addr.v.word, std::move(value));
        return ev;
    }
    case OP_MSTORE8: {
        stack.pop();
        stack.pop();
        return ev;
    }
    case OP_RETURNDATACOPY: {
        const Tracked dest = stack.pop();
        stack.pop();  // source offset
        const Tracked size = stack.pop();
        if (options_.model_memory && dest.v.is_const() && state.last_call_site) {
            const Tracked word{AbstractValue::call_return(*state.last_call_site), off};
            if (size.v.is_const()) {
                for (u256 k = 0; k < size.v.word && k < 16 * 32; k += 32)
                    state.memory.store(dest.v.word + k, word);
            } else {
                state.memory.store(dest.v.word, word);
            }
        }
        return ev;
    }
    case OP_CALL:
    case OP_CALLCODE:
    case OP_DELEGATECALL:
    case OP_STATICCALL: {
        CallOperands ops;
        ops.opcode = op;
        stack.pop();  // gas
        ops.callee = stack.pop();
        if (op == OP_CALL || op == OP_CALLCODE)
            ops.value = stack.pop();
        else
            ops.value = Tracked{AbstractValue::constant(0), kNoDef};
        ops.args_offset = stack.pop();
        ops.args_size = stack.pop();
        ops.ret_offset = stack.pop();
        ops.ret_size = stack.pop();

        if (options_.model_memory && ops.ret_offset.v.is_const() && ops.ret_size.v.is_const()) {
            const Tracked word{AbstractValue::call_return(off), off};
            for (u256 k = 0; k < ops.ret_size.v.word && k < 16 * 32; k += 32)
                state.memory.store(ops.ret_offset.v.word + k, word);
        }
        state.last_call_site = off;
        stack.push_value(AbstractValue::call_return(off), off);
        ev.call = std::move(ops);
        ev.kind = StepKind::call;
        return ev;
    }
    default:
        break;
    }

    // Binary/ternary arithmetic with constant folding and the identity-
    // preserving special cases the dispatcher and address masking rely on.
    switch (op) {
    case OP_ADD:
    case OP_MUL:
    case OP_SUB:
    case OP_DIV:
    case OP_SDIV:
    case OP_MOD:
    case OP_SMOD:
    case OP_EXP:
    case OP_SIGNEXTEND:
    case OP_LT:
    case OP_GT:
    case OP_SLT:
    case OP_SGT:
    case OP_EQ:
    case OP_AND:
    case OP_OR:
    case OP_XOR:
    case OP_BYTE:
    case OP_SHL:
    case OP_SHR:
    case OP_SAR: {
        const Tracked a = stack.pop();
        const Tracked b = stack.pop();
        AbstractValue result = AbstractValue::top();

        if (a.v.is_const() && b.v.is_const()) {
            const u256& x = a.v.word;
            const u256& y = b.v.word;
            u256 r = 0;
            switch (op) {
            case OP_ADD: r = x + y; break;
            case OP_MUL: r = x * y; break;
            case OP_SUB: r = x - y; break;
            case OP_DIV: r = y == 0 ? u256(0) : x / y; break;
            case OP_SDIV: r = sdiv(x, y); break;
            case OP_MOD: r = y == 0 ? u256(0) : x % y; break;
            case OP_SMOD: r = smod(x, y); break;
            case OP_EXP: r = exp_mod256(x, y); break;
            case OP_SIGNEXTEND: r = signextend(x, y); break;
            case OP_LT: r = x < y ? 1 : 0; break;
            case OP_GT: r = x > y ? 1 : 0; break;
            case OP_SLT: r = slt(x, y) ? 1 : 0; break;
            case OP_SGT: r = slt(y, x) ? 1 : 0; break;
            case OP_EQ: r = x == y ? 1 : 0; break;
            case OP_AND: r = x & y; break;
            case OP_OR: r = x | y; break;
            case OP_XOR: r = x ^ y; break;
            case OP_BYTE: r = byte_op(x, y); break;
            case OP_SHL: r = shl(x, y); break;
            case OP_SHR: r = shr(x, y); break;
            case OP_SAR: r = sar(x, y); break;
            default: break;
            }
            result = AbstractValue::constant(r);
        } else if (op == OP_AND) {
            // Masking with 2^k-1 truncates but keeps the value's identity;
            // solc masks calldata-loaded addresses this way.
            if (a.v.is_const() && is_low_bits_mask(a.v.word))
                result = b.v;
            else if (b.v.is_const() && is_low_bits_mask(b.v.word))
                result = a.v;
            else if (a.v.is_selector_word() || b.v.is_selector_word())
                result = AbstractValue::calldata_raw(0);
        } else if (op == OP_SHR || op == OP_DIV) {
            // PUSH1 0xE0 SHR / DIV 2^224: the selector extraction idioms.
            const AbstractValue& value = op == OP_SHR ? b.v : a.v;
            const AbstractValue& amount = op == OP_SHR ? a.v : b.v;
            if (value.is_selector_word() && amount.is_const())
                result = AbstractValue::calldata_raw(0);
        }

        if (op == OP_EQ) {
            const bool a_sel = a.v.is_selector_word();
            const bool b_sel = b.v.is_selector_word();
            if (a_sel && b.v.is_const() && b.v.word <= 0xffffffffu)
                obs_.selector_eq[off] = static_cast<uint32_t>(b.v.word);
            else if (b_sel && a.v.is_const() && a.v.word <= 0xffffffffu)
                obs_.selector_eq[off] = static_cast<uint32_t>(a.v.word);
            if (a.v.kind == AvKind::EnvSender || b.v.kind == AvKind::EnvSender)
                obs_.sender_eq.insert(off);
        }
        if (op == OP_LT || op == OP_GT) {
            const bool a_cds = opcode_at(a.def) == OP_CALLDATASIZE;
            const bool b_cds = opcode_at(b.def) == OP_CALLDATASIZE;
            if (a_cds && b.v.is_const() && b.v.word < 256)
                obs_.cds_compare[off] = op == OP_LT;  // cds < k  / cds > k
            else if (b_cds && a.v.is_const() && a.v.word < 256)
                obs_.cds_compare[off] = op == OP_GT;  // k > cds  / k < cds
        }

        stack.push(Tracked{result, off});
        return ev;
    }
    case OP_ADDMOD:
    case OP_MULMOD: {
        const Tracked a = stack.pop();
        const Tracked b = stack.pop();
        const Tracked m = stack.pop();
        if (a.v.is_const() && b.v.is_const() && m.v.is_const() && m.v.word != 0) {
            const u512 wide = op == OP_ADDMOD ? u512(a.v.word) + u512(b.v.word)
                                              : u512(a.v.word) * u512(b.v.word);
            stack.push_value(AbstractValue::constant(u256(wide % u512(m.v.word))), off);
        } else if (m.v.is_const() && m.v.word == 0) {
            stack.push_value(AbstractValue::constant(0), off);
        } else {
            stack.push_value(AbstractValue::top(), off);
        }
        return ev;
    }
    case OP_ISZERO: {
        const Tracked a = stack.pop();
        if (a.v.is_const()) {
            stack.push_value(AbstractValue::constant(a.v.word == 0 ? 1 : 0), off);
        } else {
            if (a.def != kNoDef) {
                obs_.iszero_chain[off] = a.def;
                if (opcode_at(a.def) == OP_CALLDATASIZE)
                    obs_.cds_compare[off] = true;  // empty calldata -> fallback
            }
            stack.push_value(AbstractValue::top(), off);
        }
        return ev;
    }
    case OP_NOT: {
        const Tracked a = stack.pop();
        if (a.v.is_const())
            stack.push_value(AbstractValue::constant(~a.v.word), off);
        else
            stack.push_value(AbstractValue::top(), off);
        return ev;
    }
    default:
        break;
    }

    // Everything else: generic stack effect from the traits table. Unknown
    // opcodes are INVALID-class terminators.
    const OpcodeTraits& t = traits(op);
    if (!t.known) {
        ev.kind = StepKind::revert;
        return ev;
    }
    if (op == OP_INVALID) {
        ev.kind = StepKind::revert;
        return ev;
    }
    for (int i = 0; i < t.pops; ++i)
        stack.pop();
    for (int i = 0; i < t.pushes; ++i)
        stack.push_value(AbstractValue::top(), off);
    return ev;
}

}  // namespace reenscan
