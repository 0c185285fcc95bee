// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/contract_id.hpp"

namespace reenscan {

ContractId ContractId::from_word(const u256& w) {
    ContractId id;
    for (size_t i = 0; i < 20; ++i)
        id.bytes[19 - i] = static_cast<uint8_t>((w >> (8 * i)) & 0xff);
    return id;
}

std::optional<ContractId> ContractId::parse(std::string_view hex) {
    auto raw = from_hex(hex);
    if (!raw || raw->size() != 20)
        return std::nullopt;
    ContractId id;
    std::copy(raw->begin(), raw->end(), id.bytes.begin());
    return id;
}

u256 ContractId::to_word() const {
    return word_from_bytes(bytes.data(), bytes.size());
}

std::string ContractId::to_string() const {
    return "0x" + to_hex(bytes.data(), bytes.size());
}

bool ContractId::is_zero() const {
    for (uint8_t b : bytes)
        if (b != 0)
            return false;
    return true;
}

}  // namespace reenscan
