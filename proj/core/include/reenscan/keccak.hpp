// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "reenscan/bytes.hpp"

namespace reenscan {

/// Legacy Keccak-256 (0x01 padding), the hash Ethereum uses for function
/// selectors and storage layout. Not NIST SHA3-256.
std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t size);
std::array<uint8_t, 32> keccak256(std::string_view s);

/// First 4 bytes of keccak256 of a canonical signature string, e.g.
/// selector_of("transfer(address,uint256)") == 0xa9059cbb.
uint32_t selector_of(std::string_view signature);

}  // namespace reenscan
