// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "reenscan/diagnostics.hpp"
#include "reenscan/selector.hpp"

namespace reenscan {

enum class HookKind {
    known_eip,  // declared by a token-standard EIP
    fallback,   // the FALLBACK sentinel
    candidate,  // any other public function; user-defined interfaces land here
};

struct HookClassification {
    HookKind kind = HookKind::candidate;
    std::string name;      // EIP hook name when known
    std::string standard;  // e.g. "eip-721"
};

struct HookRegistryEntry {
    Selector selector;
    std::string name;
    std::string standard;
};

/// Selector registry of EIP-declared hook functions, user-extensible via a
/// config file (one entry per line: selector, name, standard).
class HookRegistry {
public:
    /// The built-in EIP hook set.
    static HookRegistry builtin();

    /// builtin() plus the entries of `path`. Lines are
    /// "<selector> <name> <standard>", '#' starts a comment.
    static std::optional<HookRegistry> load(const std::filesystem::path& path,
        Diagnostics* diags = nullptr);

    void add(HookRegistryEntry entry);
    const HookRegistryEntry* find(Selector s) const;

    HookClassification classify(Selector s) const;

    const std::map<Selector, HookRegistryEntry>& entries() const { return entries_; }

private:
    std::map<Selector, HookRegistryEntry> entries_;
};

}  // namespace reenscan
