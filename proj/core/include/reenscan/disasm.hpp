// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reenscan/bytes.hpp"
#include "reenscan/diagnostics.hpp"
#include "reenscan/opcodes.hpp"
#include "reenscan/word.hpp"

namespace reenscan {

enum class BytecodeKind { runtime, creation, unknown };

struct Bytecode {
    Bytes bytes;
    BytecodeKind kind = BytecodeKind::unknown;
};

/// One decoded instruction. `immediate` is non-empty iff the opcode is a
/// PUSH variant; for a truncated trailing PUSH it holds whatever bytes were
/// present and `truncated` is set.
struct Instruction {
    uint32_t offset = 0;
    uint8_t opcode = OP_INVALID;
    Bytes immediate;
    bool truncated = false;

    u256 immediate_word() const { return word_from_bytes(immediate.data(), immediate.size()); }
    uint32_t size() const { return 1 + static_cast<uint32_t>(immediate.size()); }
};

/// Decoded code plus the metadata trailer split off the tail. Every input
/// byte is covered exactly once by an instruction, its immediate, or the
/// trailer, so serialize() reproduces the input bit-exactly.
struct InstructionStream {
    std::vector<Instruction> instructions;
    Bytes trailer;
    Diagnostics diagnostics;

    /// Byte length of the decoded code region (trailer excluded).
    uint32_t code_size() const {
        if (instructions.empty())
            return 0;
        const Instruction& last = instructions.back();
        return last.offset + last.size();
    }

    /// Index of the instruction starting at `offset`, if any.
    std::optional<size_t> index_at(uint32_t offset) const;
};

/// Splits a well-formed length-suffixed CBOR metadata blob off the code
/// tail. Malformed or impossible trailers are treated as code and the
/// second element comes back empty.
std::pair<Bytes, Bytes> strip_metadata(const Bytes& code);

InstructionStream disassemble(const Bytecode& code);

/// Inverse of disassemble (opcode byte + immediate per instruction, then the
/// trailer).
Bytes serialize(const InstructionStream& stream);

/// Locates the runtime segment of creation bytecode via the constructor's
/// CODECOPY/RETURN tail pattern. Returns nullopt when no such pattern is
/// found.
std::optional<Bytes> extract_runtime(const Bytes& creation_code);

}  // namespace reenscan
