// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/abstract_value.hpp"

namespace reenscan {

AbstractValue join(const AbstractValue& a, const AbstractValue& b) {
    if (a == b)
        return a;
    return AbstractValue::top();
}

std::string AbstractValue::to_string() const {
    switch (kind) {
    case AvKind::Const:
        return "const(" + word_to_hex(word) + ")";
    case AvKind::StorageLoad:
        return "storage(" + word_to_hex(word) + ")";
    case AvKind::CallData:
        return cd_is_arg ? "arg(" + std::to_string(cd_index) + ")"
                         : "calldata(" + std::to_string(cd_index) + ")";
    case AvKind::CallReturn:
        return "callret(" + std::to_string(site) + ")";
    case AvKind::EnvSelf:
        return "self";
    case AvKind::EnvSender:
        return "sender";
    case AvKind::Top:
        return "top";
    }
    return "top";
}

}  // namespace reenscan
