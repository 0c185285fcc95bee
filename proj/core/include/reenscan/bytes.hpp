// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reenscan {

using Bytes = std::vector<uint8_t>;

/// Lowercase hex without a 0x prefix.
std::string to_hex(const uint8_t* data, size_t size);
std::string to_hex(const Bytes& b);

/// Parses hex with or without a 0x prefix; whitespace at either end is
/// ignored. Returns nullopt on odd length or non-hex characters.
std::optional<Bytes> from_hex(std::string_view hex);

}  // namespace reenscan
