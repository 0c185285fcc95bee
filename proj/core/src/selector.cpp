// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/selector.hpp"

#include <cstdio>

namespace reenscan {

std::string Selector::to_string() const {
    if (fallback_)
        return "fallback";
    char buf[11];
    std::snprintf(buf, sizeof(buf), "0x%08x", value_);
    return buf;
}

std::optional<Selector> Selector::parse(std::string_view s) {
    if (s == "fallback")
        return Selector::fallback();
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.empty() || s.size() > 8)
        return std::nullopt;
    uint32_t v = 0;
    for (char c : s) {
        int nib;
        if (c >= '0' && c <= '9')
            nib = c - '0';
        else if (c >= 'a' && c <= 'f')
            nib = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            nib = c - 'A' + 10;
        else
            return std::nullopt;
        v = (v << 4) | static_cast<uint32_t>(nib);
    }
    return Selector::from_u32(v);
}

}  // namespace reenscan
