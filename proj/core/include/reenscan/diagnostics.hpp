// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace reenscan {

/// One structured diagnostic. Diagnostics never abort an analysis; they
/// record precision losses and recoverable input defects for the report.
struct Diagnostic {
    std::string code;    // stable machine-readable tag, e.g. "truncated-push"
    std::string detail;  // free-form context

    auto operator<=>(const Diagnostic&) const = default;
};

class Diagnostics {
public:
    void add(std::string code, std::string detail = {}) {
        items_.push_back({std::move(code), std::move(detail)});
    }

    void merge(const Diagnostics& other) {
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    }

    bool has(std::string_view code) const {
        return std::any_of(items_.begin(), items_.end(),
            [&](const Diagnostic& d) { return d.code == code; });
    }

    size_t count(std::string_view code) const {
        return static_cast<size_t>(std::count_if(items_.begin(), items_.end(),
            [&](const Diagnostic& d) { return d.code == code; }));
    }

    const std::vector<Diagnostic>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    /// Sorted + deduplicated view for deterministic serialization.
    std::vector<Diagnostic> canonical() const {
        auto v = items_;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

private:
    std::vector<Diagnostic> items_;
};

}  // namespace reenscan
