// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "reenscan/bytes.hpp"

namespace reenscan {

/// The EVM machine word. Fixed 256-bit unsigned with wraparound arithmetic,
/// matching EVM semantics for ADD/SUB/MUL.
using u256 = boost::multiprecision::uint256_t;

/// Big-endian interpretation of up to 32 bytes.
u256 word_from_bytes(const uint8_t* data, size_t size);

/// 32-byte big-endian encoding.
Bytes word_to_bytes32(const u256& w);

/// Minimal lowercase hex with a 0x prefix ("0x0" for zero).
std::string word_to_hex(const u256& w);

/// Fixed-width 32-byte hex with a 0x prefix, as returned by eth_getStorageAt.
std::string word_to_hex32(const u256& w);

std::optional<u256> word_from_hex(std::string_view hex);

/// Low 160 bits, the address portion of a word.
u256 low160(const u256& w);

/// True when w is of the form 2^k - 1 (an all-ones low-bits mask).
bool is_low_bits_mask(const u256& w);

constexpr uint32_t kSelectorShift = 224;

/// First four bytes of a 32-byte word, i.e. the function selector of a call
/// input buffer's leading word.
uint32_t top4(const u256& w);

}  // namespace reenscan
