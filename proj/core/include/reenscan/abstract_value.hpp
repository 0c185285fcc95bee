// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "reenscan/word.hpp"

namespace reenscan {

enum class AvKind : uint8_t {
    Const,        // a known 256-bit word
    StorageLoad,  // SLOAD of a known slot
    CallData,     // calldata word: decoded arg index or raw byte offset
    CallReturn,   // status/data of an external call site
    EnvSelf,      // ADDRESS
    EnvSender,    // CALLER
    Top,
};

/// Flat value lattice used by the stack emulator: join of two unequal
/// non-Top values is Top.
struct AbstractValue {
    AvKind kind = AvKind::Top;
    u256 word = 0;           // Const value, or StorageLoad slot
    uint32_t site = 0;       // CallReturn: call-site offset
    bool cd_is_arg = false;  // CallData: true => head-word argument index
    uint64_t cd_index = 0;   // CallData: arg index or raw byte offset

    static AbstractValue constant(u256 v) { return {AvKind::Const, std::move(v), 0, false, 0}; }
    static AbstractValue storage(u256 slot) {
        return {AvKind::StorageLoad, std::move(slot), 0, false, 0};
    }
    static AbstractValue calldata_arg(uint64_t index) {
        return {AvKind::CallData, 0, 0, true, index};
    }
    static AbstractValue calldata_raw(uint64_t offset) {
        return {AvKind::CallData, 0, 0, false, offset};
    }
    static AbstractValue call_return(uint32_t site) {
        return {AvKind::CallReturn, 0, site, false, 0};
    }
    static AbstractValue self() { return {AvKind::EnvSelf, 0, 0, false, 0}; }
    static AbstractValue sender() { return {AvKind::EnvSender, 0, 0, false, 0}; }
    static AbstractValue top() { return {}; }

    bool is_const() const { return kind == AvKind::Const; }
    bool is_top() const { return kind == AvKind::Top; }
    bool is_arg(uint64_t* index = nullptr) const {
        if (kind != AvKind::CallData || !cd_is_arg)
            return false;
        if (index)
            *index = cd_index;
        return true;
    }
    /// The calldata word at offset 0, i.e. the incoming function selector.
    bool is_selector_word() const {
        return kind == AvKind::CallData && !cd_is_arg && cd_index == 0;
    }

    bool operator==(const AbstractValue& o) const {
        if (kind != o.kind)
            return false;
        switch (kind) {
        case AvKind::Const:
        case AvKind::StorageLoad:
            return word == o.word;
        case AvKind::CallData:
            return cd_is_arg == o.cd_is_arg && cd_index == o.cd_index;
        case AvKind::CallReturn:
            return site == o.site;
        default:
            return true;
        }
    }

    std::string to_string() const;
};

AbstractValue join(const AbstractValue& a, const AbstractValue& b);

}  // namespace reenscan
