// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/disasm.hpp"

#include <algorithm>
#include <unordered_map>

namespace reenscan {

namespace {

// Consumes one definite-length CBOR item, returns bytes consumed or -1.
// Indefinite lengths never occur in solc metadata and are rejected.
ptrdiff_t cbor_item(const uint8_t* p, size_t n, int depth) {
    if (n == 0 || depth > 8)
        return -1;
    const int major = p[0] >> 5;
    const int ai = p[0] & 0x1f;
    uint64_t val = 0;
    size_t header = 1;
    if (ai < 24) {
        val = static_cast<uint64_t>(ai);
    } else if (ai <= 27) {
        const size_t extra = size_t{1} << (ai - 24);
        if (n < 1 + extra)
            return -1;
        for (size_t i = 0; i < extra; ++i)
            val = (val << 8) | p[1 + i];
        header = 1 + extra;
    } else {
        return -1;
    }

    size_t consumed = header;
    switch (major) {
    case 0:
    case 1:
        break;
    case 2:
    case 3:
        if (val > n - consumed)
            return -1;
        consumed += val;
        break;
    case 4:
    case 5: {
        const uint64_t items = major == 5 ? val * 2 : val;
        if (items > 64)
            return -1;
        for (uint64_t i = 0; i < items; ++i) {
            const ptrdiff_t c = cbor_item(p + consumed, n - consumed, depth + 1);
            if (c < 0)
                return -1;
            consumed += static_cast<size_t>(c);
        }
        break;
    }
    case 6: {
        const ptrdiff_t c = cbor_item(p + consumed, n - consumed, depth + 1);
        if (c < 0)
            return -1;
        consumed += static_cast<size_t>(c);
        break;
    }
    case 7:
        break;
    default:
        return -1;
    }
    if (consumed > n)
        return -1;
    return static_cast<ptrdiff_t>(consumed);
}

bool is_cbor_map(const uint8_t* p, size_t n) {
    if (n == 0 || (p[0] >> 5) != 5)
        return false;
    return cbor_item(p, n, 0) == static_cast<ptrdiff_t>(n);
}

}  // namespace

std::pair<Bytes, Bytes> strip_metadata(const Bytes& code) {
    if (code.size() < 2)
        return {code, {}};
    const size_t blob_len = (static_cast<size_t>(code[code.size() - 2]) << 8) |
                            code[code.size() - 1];
    if (blob_len == 0 || blob_len + 2 > code.size())
        return {code, {}};
    const size_t split = code.size() - 2 - blob_len;
    if (!is_cbor_map(code.data() + split, blob_len))
        return {code, {}};
    Bytes head(code.begin(), code.begin() + static_cast<ptrdiff_t>(split));
    Bytes trailer(code.begin() + static_cast<ptrdiff_t>(split), code.end());
    return {std::move(head), std::move(trailer)};
}

std::optional<size_t> InstructionStream::index_at(uint32_t offset) const {
    const auto it = std::lower_bound(instructions.begin(), instructions.end(), offset,
        [](const Instruction& in, uint32_t off) { return in.offset < off; });
    if (it == instructions.end() || it->offset != offset)
        return std::nullopt;
    return static_cast<size_t>(it - instructions.begin());
}

InstructionStream disassemble(const Bytecode& code) {
    InstructionStream stream;
    auto [body, trailer] = strip_metadata(code.bytes);
    stream.trailer = std::move(trailer);

    size_t i = 0;
    while (i < body.size()) {
        Instruction instr;
        instr.offset = static_cast<uint32_t>(i);
        instr.opcode = body[i];
        const uint8_t width = push_width(instr.opcode);
        if (width > 0) {
            const size_t avail = std::min<size_t>(width, body.size() - i - 1);
            instr.immediate.assign(body.begin() + static_cast<ptrdiff_t>(i + 1),
                body.begin() + static_cast<ptrdiff_t>(i + 1 + avail));
            if (avail < width) {
                instr.truncated = true;
                stream.diagnostics.add("truncated-push",
                    traits(instr.opcode).name.data() + std::string(" at offset ") +
                        std::to_string(i));
            }
        }
        i += instr.size();
        stream.instructions.push_back(std::move(instr));
    }
    return stream;
}

Bytes serialize(const InstructionStream& stream) {
    Bytes out;
    for (const Instruction& instr : stream.instructions) {
        out.push_back(instr.opcode);
        out.insert(out.end(), instr.immediate.begin(), instr.immediate.end());
    }
    out.insert(out.end(), stream.trailer.begin(), stream.trailer.end());
    return out;
}

namespace {

// Concrete-constants walk of the constructor's happy path. Tracks only PUSH
// results and stack shuffles; everything else becomes unknown. Unknown JUMPI
// conditions follow the jump when the target is constant, which skips over
// the revert arms solc emits for value and argument checks.
struct MiniWalk {
    const InstructionStream& stream;
    std::vector<std::optional<u256>> stack;

    std::optional<u256> pop() {
        if (stack.empty())
            return std::nullopt;
        auto v = stack.back();
        stack.pop_back();
        return v;
    }
};

}  // namespace

std::optional<Bytes> extract_runtime(const Bytes& creation_code) {
    const Bytecode bc{creation_code, BytecodeKind::creation};
    const InstructionStream stream = disassemble(bc);
    if (stream.instructions.empty())
        return std::nullopt;

    std::unordered_map<uint32_t, size_t> by_offset;
    for (size_t idx = 0; idx < stream.instructions.size(); ++idx)
        by_offset[stream.instructions[idx].offset] = idx;

    MiniWalk walk{stream, {}};
    std::optional<std::pair<u256, u256>> copied;  // (offset, length) with dest 0

    size_t idx = 0;
    for (int steps = 0; steps < 50000 && idx < stream.instructions.size(); ++steps) {
        const Instruction& in = stream.instructions[idx];
        const uint8_t op = in.opcode;

        if (is_push(op)) {
            walk.stack.push_back(in.truncated ? std::nullopt
                                              : std::optional<u256>(in.immediate_word()));
            ++idx;
            continue;
        }
        if (op == OP_PUSH0) {
            walk.stack.push_back(u256(0));
            ++idx;
            continue;
        }
        if (is_dup(op)) {
            const size_t n = op - OP_DUP1 + 1;
            if (walk.stack.size() < n)
                return std::nullopt;
            walk.stack.push_back(walk.stack[walk.stack.size() - n]);
            ++idx;
            continue;
        }
        if (is_swap(op)) {
            const size_t n = op - OP_SWAP1 + 1;
            if (walk.stack.size() < n + 1)
                return std::nullopt;
            std::swap(walk.stack.back(), walk.stack[walk.stack.size() - 1 - n]);
            ++idx;
            continue;
        }

        switch (op) {
        case OP_JUMP: {
            const auto target = walk.pop();
            if (!target)
                return std::nullopt;
            const auto it = by_offset.find(static_cast<uint32_t>(*target));
            if (it == by_offset.end() ||
                stream.instructions[it->second].opcode != OP_JUMPDEST)
                return std::nullopt;
            idx = it->second;
            break;
        }
        case OP_JUMPI: {
            const auto target = walk.pop();
            const auto cond = walk.pop();
            if (cond && *cond == 0) {
                ++idx;
                break;
            }
            if (!target)
                return std::nullopt;
            const auto it = by_offset.find(static_cast<uint32_t>(*target));
            if (it == by_offset.end() ||
                stream.instructions[it->second].opcode != OP_JUMPDEST)
                return std::nullopt;
            idx = it->second;
            break;
        }
        case OP_CODECOPY: {
            const auto dest = walk.pop();
            const auto off = walk.pop();
            const auto len = walk.pop();
            if (dest && off && len && *dest == 0)
                copied = std::make_pair(*off, *len);
            ++idx;
            break;
        }
        case OP_RETURN: {
            const auto off = walk.pop();
            const auto len = walk.pop();
            if (!copied || !off || !len || *off != 0)
                return std::nullopt;
            const u256 src = copied->first;
            const u256 n = *len;
            if (src == 0 || n == 0 || src + n > creation_code.size() || n > copied->second)
                return std::nullopt;
            const auto start = static_cast<size_t>(src);
            const auto count = static_cast<size_t>(n);
            return Bytes(creation_code.begin() + static_cast<ptrdiff_t>(start),
                creation_code.begin() + static_cast<ptrdiff_t>(start + count));
        }
        case OP_STOP:
        case OP_REVERT:
        case OP_INVALID:
        case OP_SELFDESTRUCT:
            return std::nullopt;
        default: {
            const OpcodeTraits& t = traits(op);
            if (!t.known)
                return std::nullopt;
            for (int p = 0; p < t.pops; ++p)
                walk.pop();
            for (int p = 0; p < t.pushes; ++p)
                walk.stack.push_back(std::nullopt);
            ++idx;
            break;
        }
        }
    }
    return std::nullopt;
}

}  // namespace reenscan
