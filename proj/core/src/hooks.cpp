// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/hooks.hpp"

#include <fstream>
#include <sstream>

namespace reenscan {

HookRegistry HookRegistry::builtin() {
    HookRegistry r;
    // transferFrom ships under two selectors: the value some hook tables
    // publish and the keccak truncation of the canonical ERC-20 signature.
    r.add({Selector::from_u32(0x01c6adc3), "transferFrom", "eip-20"});
    r.add({Selector::from_u32(0x23b872dd), "transferFrom", "eip-20"});
    r.add({Selector::from_u32(0x150b7a02), "onERC721Received", "eip-721"});
    r.add({Selector::from_u32(0xf23a6e61), "onERC1155Received", "eip-1155"});
    r.add({Selector::from_u32(0x75ab9782), "tokensToSend", "eip-777"});
    r.add({Selector::from_u32(0x0023de29), "tokensReceived", "eip-777"});
    r.add({Selector::from_u32(0x249cb3fa), "canImplementInterfaceForAddress", "eip-1820"});
    return r;
}

void HookRegistry::add(HookRegistryEntry entry) {
    entries_[entry.selector] = std::move(entry);
}

const HookRegistryEntry* HookRegistry::find(Selector s) const {
    const auto it = entries_.find(s);
    return it == entries_.end() ? nullptr : &it->second;
}

HookClassification HookRegistry::classify(Selector s) const {
    if (s.is_fallback())
        return {HookKind::fallback, "fallback", ""};
    if (const HookRegistryEntry* e = find(s))
        return {HookKind::known_eip, e->name, e->standard};
    return {HookKind::candidate, "", ""};
}

std::optional<HookRegistry> HookRegistry::load(const std::filesystem::path& path,
    Diagnostics* diags) {
    std::ifstream in(path);
    if (!in) {
        if (diags)
            diags->add("hook-registry-unreadable", path.string());
        return std::nullopt;
    }
    HookRegistry r = builtin();
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        for (auto& c : line)
            if (c == ',')
                c = ' ';
        std::istringstream fields(line);
        std::string sel_text, name, standard;
        if (!(fields >> sel_text))
            continue;  // blank line
        fields >> name >> standard;
        const auto sel = Selector::parse(sel_text);
        if (!sel || name.empty()) {
            if (diags)
                diags->add("hook-registry-bad-line",
                    path.string() + ":" + std::to_string(lineno));
            continue;
        }
        r.add({*sel, name, standard});
    }
    return r;
}

}  // namespace reenscan
