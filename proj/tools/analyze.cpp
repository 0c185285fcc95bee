// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch and single-contract front end: accepts bytecode hex, hex files, or
// on-chain addresses, wires up a fixture or JSON-RPC backend, and emits
// detection reports. Exit codes: 0 benign, 2 attacker finding(s),
// 1 operational error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "reenscan/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"reenscan: reentrancy attacker-contract detection from EVM bytecode"};

    std::string hex, hex_file, address, fixtures, rpc, record, out, hooks, batch;
    reenscan::RunConfig cfg;

    app.add_option("--hex", hex, "Runtime or creation bytecode as a hex string");
    app.add_option("--hex-file", hex_file, "File containing bytecode hex");
    app.add_option("--address", address, "Contract address to fetch and analyze");
    app.add_option("--fixtures", fixtures, "Fixture directory backend (<address>.hex + storage.json)");
    app.add_option("--rpc", rpc, "JSON-RPC endpoint URL (or REENSCAN_RPC_URL)");
    app.add_option("--record", record, "Record backend responses into a fixture directory");
    app.add_option("--depth", cfg.depth_limit, "Call-chain depth limit")->capture_default_str();
    app.add_option("--fanout", cfg.fanout_cap, "Resolved edges per call site")->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "Parallel workers in batch mode")->capture_default_str();
    app.add_option("--out", out, "Report path (batch mode: report directory)");
    app.add_flag("--emit-xgraph", cfg.emit_xgraph, "Also write the cross-contract graph JSON");
    app.add_option("--hooks", hooks, "Extra hook-registry entries (selector name standard per line)");
    app.add_option("--batch", batch, "File listing one input per line");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!hex.empty())
            cfg.hex = hex;
        if (!hex_file.empty())
            cfg.hex_file = hex_file;
        if (!address.empty()) {
            const auto id = reenscan::ContractId::parse(address);
            if (!id)
                throw reenscan::RunError("invalid address: " + address);
            cfg.address = *id;
        }
        if (!fixtures.empty())
            cfg.fixtures_dir = fixtures;
        if (rpc.empty()) {
            if (const char* env = std::getenv("REENSCAN_RPC_URL"); env && *env)
                rpc = env;
        }
        if (!rpc.empty())
            cfg.rpc_url = rpc;
        if (!record.empty())
            cfg.record_dir = record;
        if (!out.empty())
            cfg.out_path = out;
        if (!hooks.empty())
            cfg.hooks_path = hooks;

        if (!batch.empty()) {
            if (cfg.hex || cfg.hex_file || cfg.address)
                throw reenscan::RunError("--batch excludes --hex/--hex-file/--address");
            const reenscan::BatchOutcome outcome = reenscan::run_batch(batch, cfg);
            if (!cfg.out_path)
                std::cout << outcome.summary_json;
            std::cerr << "batch: " << outcome.items << " input(s), " << outcome.attacker
                      << " attacker, " << outcome.benign << " benign, " << outcome.errors
                      << " error(s)\n";
            return outcome.exit_code;
        }

        const reenscan::RunOutcome outcome = reenscan::run(cfg);
        if (!cfg.out_path) {
            std::cout << outcome.report_json;
            if (outcome.xgraph_json)
                std::cout << *outcome.xgraph_json;
        }
        std::cerr << "verdict: " << to_string(outcome.report.verdict) << " ("
                  << outcome.report.findings.size() << " finding(s), "
                  << outcome.report.timing_ms << " ms)\n";
        return outcome.exit_code;
    } catch (const reenscan::RunError& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"unexpected: " << e.what() << "\"}\n";
        return 1;
    }
}
