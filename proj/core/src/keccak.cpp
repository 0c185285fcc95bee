// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/keccak.hpp"

#include <cstring>

namespace reenscan {

namespace {

constexpr uint64_t kRoundConstants[24] = {0x0000000000000001ull, 0x0000000000008082ull,
    0x800000000000808aull, 0x8000000080008000ull, 0x000000000000808bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008aull, 0x0000000000000088ull,
    0x0000000080008009ull, 0x000000008000000aull, 0x000000008000808bull, 0x800000000000008bull,
    0x8000000000008089ull, 0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800aull, 0x800000008000000aull, 0x8000000080008081ull, 0x8000000000008080ull,
    0x0000000080000001ull, 0x8000000080008008ull};

constexpr int kRotations[24] = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};

constexpr int kPiLane[24] = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

inline uint64_t rotl64(uint64_t v, int shift) {
    return (v << shift) | (v >> (64 - shift));
}

void keccakf(uint64_t state[25]) {
    for (int round = 0; round < 24; ++round) {
        uint64_t bc[5];
        for (int x = 0; x < 5; ++x)
            bc[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        for (int x = 0; x < 5; ++x) {
            const uint64_t t = bc[(x + 4) % 5] ^ rotl64(bc[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                state[x + y] ^= t;
        }

        uint64_t t = state[1];
        for (int i = 0; i < 24; ++i) {
            const int j = kPiLane[i];
            const uint64_t tmp = state[j];
            state[j] = rotl64(t, kRotations[i]);
            t = tmp;
        }

        for (int y = 0; y < 25; y += 5) {
            for (int x = 0; x < 5; ++x)
                bc[x] = state[y + x];
            for (int x = 0; x < 5; ++x)
                state[y + x] = bc[x] ^ (~bc[(x + 1) % 5] & bc[(x + 2) % 5]);
        }

        state[0] ^= kRoundConstants[round];
    }
}

constexpr size_t kRate = 136;  // bytes, for 256-bit output

}  // namespace

std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t size) {
    uint64_t state[25] = {};
    uint8_t block[kRate];

    while (size >= kRate) {
        for (size_t i = 0; i < kRate / 8; ++i) {
            uint64_t lane;
            std::memcpy(&lane, data + i * 8, 8);
            state[i] ^= lane;  // little-endian host assumed
        }
        keccakf(state);
        data += kRate;
        size -= kRate;
    }

    std::memset(block, 0, sizeof(block));
    std::memcpy(block, data, size);
    block[size] = 0x01;
    block[kRate - 1] |= 0x80;
    for (size_t i = 0; i < kRate / 8; ++i) {
        uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        state[i] ^= lane;
    }
    keccakf(state);

    std::array<uint8_t, 32> out;
    std::memcpy(out.data(), state, 32);
    return out;
}

std::array<uint8_t, 32> keccak256(std::string_view s) {
    return keccak256(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

uint32_t selector_of(std::string_view signature) {
    const auto h = keccak256(signature);
    return (static_cast<uint32_t>(h[0]) << 24) | (static_cast<uint32_t>(h[1]) << 16) |
           (static_cast<uint32_t>(h[2]) << 8) | static_cast<uint32_t>(h[3]);
}

}  // namespace reenscan
