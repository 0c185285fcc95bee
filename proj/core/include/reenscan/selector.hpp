// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace reenscan {

/// A public-function identity: either the leading 4 bytes of calldata or the
/// FALLBACK sentinel (the function run on empty/unmatched calldata).
class Selector {
public:
    constexpr Selector() = default;
    static constexpr Selector fallback() { return Selector{0, true}; }
    static constexpr Selector from_u32(uint32_t v) { return Selector{v, false}; }

    constexpr bool is_fallback() const { return fallback_; }
    constexpr uint32_t value() const { return value_; }

    auto operator<=>(const Selector&) const = default;

    /// "0xdeadbeef" or "fallback".
    std::string to_string() const;
    static std::optional<Selector> parse(std::string_view s);

private:
    constexpr Selector(uint32_t v, bool fb) : value_(v), fallback_(fb) {}

    uint32_t value_ = 0;
    bool fallback_ = false;
};

}  // namespace reenscan
