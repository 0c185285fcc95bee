// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "reenscan/word.hpp"

namespace reenscan {

/// A 20-byte account address. Serialized output is always the canonical
/// lowercase 0x-prefixed form.
struct ContractId {
    std::array<uint8_t, 20> bytes{};

    auto operator<=>(const ContractId&) const = default;

    static ContractId from_word(const u256& w);
    static std::optional<ContractId> parse(std::string_view hex);

    u256 to_word() const;
    std::string to_string() const;

    bool is_zero() const;
};

}  // namespace reenscan

template <>
struct std::hash<reenscan::ContractId> {
    size_t operator()(const reenscan::ContractId& id) const noexcept {
        // FNV-1a over the 20 bytes.
        size_t h = 1469598103934665603ull;
        for (uint8_t b : id.bytes) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }
};
