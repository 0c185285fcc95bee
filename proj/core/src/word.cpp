// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/word.hpp"

namespace reenscan {

u256 word_from_bytes(const uint8_t* data, size_t size) {
    u256 w = 0;
    for (size_t i = 0; i < size && i < 32; ++i) {
        w <<= 8;
        w |= data[i];
    }
    return w;
}

Bytes word_to_bytes32(const u256& w) {
    Bytes out(32, 0);
    for (size_t i = 0; i < 32; ++i)
        out[31 - i] = static_cast<uint8_t>((w >> (8 * i)) & 0xff);
    return out;
}

std::string word_to_hex(const u256& w) {
    if (w == 0)
        return "0x0";
    std::string digits = w.str(0, std::ios_base::hex);
    for (auto& c : digits)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return "0x" + digits;
}

std::string word_to_hex32(const u256& w) {
    const Bytes b = word_to_bytes32(w);
    return "0x" + to_hex(b);
}

std::optional<u256> word_from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X'))
        hex.remove_prefix(2);
    if (hex.empty() || hex.size() > 64)
        return std::nullopt;
    u256 w = 0;
    for (char c : hex) {
        int nib;
        if (c >= '0' && c <= '9')
            nib = c - '0';
        else if (c >= 'a' && c <= 'f')
            nib = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            nib = c - 'A' + 10;
        else
            return std::nullopt;
        w = (w << 4) | nib;
    }
    return w;
}

u256 low160(const u256& w) {
    static const u256 mask = (u256(1) << 160) - 1;
    return w & mask;
}

bool is_low_bits_mask(const u256& w) {
    if (w == 0)
        return false;
    return (w & (w + 1)) == 0;
}

uint32_t top4(const u256& w) {
    return static_cast<uint32_t>(w >> kSelectorShift);
}

}  // namespace reenscan
