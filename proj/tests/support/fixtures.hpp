// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reenscan/contract_id.hpp"
#include "reenscan/detector.hpp"

#include "evm_asm.hpp"

namespace reenscan::testing {

/// A self-contained contract set: the entry under test, the contracts it
/// interacts with, seeded storage, and the expected verdict.
struct FixtureSet {
    std::string name;
    ContractId entry;
    std::map<ContractId, Bytes> contracts;
    std::map<ContractId, std::map<u256, u256>> storage;

    bool expect_attacker = false;
    std::optional<AttackType> expect_type;
    std::optional<Selector> expect_hook;
    bool flagged_by_design = false;  // sender-gated shape, reported on purpose
    bool supports_mutant = false;    // a benign variant without the re-entry exists
};

ContractId make_addr(uint8_t group, uint8_t role);

// Positive fixtures (pass mutant=true to drop the re-entering call).
FixtureSet fallback_simple(bool mutant = false);
FixtureSet fallback_deep(bool mutant = false);
FixtureSet erc721_hook(bool mutant = false);
FixtureSet erc1155_hook(bool mutant = false);
FixtureSet erc777_hook(bool mutant = false);
FixtureSet userdef_toy(bool mutant = false);     // two-contract hook/foo shape
FixtureSet userdef_vault(bool mutant = false);   // deposit/delegated-transfer shape
FixtureSet sender_gated(bool mutant = false);    // flagged by design

// Benign fixtures.
FixtureSet benign_nocalls();
FixtureSet benign_static_hook();
FixtureSet benign_norevisit();
FixtureSet benign_nodispatcher();
FixtureSet benign_deepchain();

/// Linear chain of the given depth; the re-entry sink sits at `sink_depth`.
FixtureSet deep_chain(uint32_t depth, uint32_t sink_depth);

std::vector<FixtureSet> full_corpus();

/// Writes the set as a fixture directory (<address>.hex + storage.json).
void write_fixture_set(const std::filesystem::path& dir, const FixtureSet& set);

}  // namespace reenscan::testing
