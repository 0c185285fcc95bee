// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "reenscan/report.hpp"

namespace reenscan {

/// Operational failure (bad input, unreadable file, missing backend).
/// Mapped to exit code 1; analysis-level imprecision never lands here.
class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // Input: exactly one of the three.
    std::optional<std::string> hex;
    std::optional<std::filesystem::path> hex_file;
    std::optional<ContractId> address;

    // Backend: at most one; address input requires one.
    std::optional<std::filesystem::path> fixtures_dir;
    std::optional<std::string> rpc_url;
    std::optional<std::filesystem::path> record_dir;

    uint32_t depth_limit = 21;
    uint32_t fanout_cap = 64;
    std::optional<std::filesystem::path> out_path;
    bool emit_xgraph = false;
    std::optional<std::filesystem::path> hooks_path;
    int jobs = 1;
};

struct RunOutcome {
    int exit_code = 0;  // 0 benign, 2 attacker findings (1 surfaces as RunError)
    DetectionReport report;
    std::string report_json;
    std::optional<std::string> xgraph_json;
};

/// Single-contract analysis per the config; writes the report to
/// config.out_path when set. Throws RunError on operational problems.
RunOutcome run(const RunConfig& config);

struct BatchOutcome {
    int exit_code = 0;
    size_t items = 0;
    size_t attacker = 0;
    size_t benign = 0;
    size_t errors = 0;
    std::string summary_json;
};

/// Batch front end: one input per line (a 0x address, a hex-file path, or
/// raw hex). Per-item failures are isolated; the batch continues. When
/// config.out_path is set it names a directory receiving per-item reports
/// plus summary.json.
BatchOutcome run_batch(const std::filesystem::path& list_file, const RunConfig& config);

}  // namespace reenscan
