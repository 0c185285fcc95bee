// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "reenscan/abstract_value.hpp"
#include "reenscan/cfg.hpp"
#include "reenscan/function_table.hpp"
#include "reenscan/hooks.hpp"

namespace reenscan {

constexpr uint32_t kNoSite = 0xffffffffu;

enum class TriState : uint8_t { no, yes, unknown };

/// One external-call instruction with the provenance of its target address
/// and the abstract values in its input buffer.
struct CallSite {
    uint32_t id = 0;  // instruction offset, stable within a contract
    Selector host_function;
    uint8_t call_opcode = OP_CALL;
    AbstractValue callee;
    // Set iff the first 4 bytes of the input buffer resolve to a constant;
    // an empty input buffer targets FALLBACK.
    std::optional<Selector> target_selector;
    std::vector<AbstractValue> arg_values;  // decoded head words
    TriState sends_value = TriState::unknown;

    bool is_static() const { return call_opcode == OP_STATICCALL; }
};

/// The five intra-procedural dataflow fact kinds.
enum class FlowKind : uint8_t {
    FuncArgToCallArg,
    FuncArgToFuncRet,
    FuncArgToCallee,
    CallRetToCallArg,
    CallRetToFuncRet,
};

const char* to_string(FlowKind k);

struct FlowFact {
    FlowKind kind;
    uint32_t source = 0;           // arg index or call-site id, by kind
    uint32_t sink_site = kNoSite;  // call-site id; kNoSite for *ToFuncRet
    uint32_t sink_pos = 0;         // call-arg position or return slot

    auto operator<=>(const FlowFact&) const = default;

    bool source_is_arg() const {
        return kind == FlowKind::FuncArgToCallArg || kind == FlowKind::FuncArgToFuncRet ||
               kind == FlowKind::FuncArgToCallee;
    }
};

struct FunctionSummary {
    Selector selector;
    std::vector<CallSite> call_sites;  // sorted by id
    std::vector<FlowFact> flow_facts;  // sorted, unique
    std::optional<HookClassification> hook;
    bool sender_guard = false;  // some path is gated on a CALLER comparison
    Diagnostics diagnostics;

    const CallSite* site(uint32_t id) const;
    bool has_external_calls() const { return !call_sites.empty(); }
};

/// Extracts the function's external-call sites and dataflow facts by
/// per-acyclic-path emulation (up to 256 paths), falling back to joined
/// block-level states past the cap.
FunctionSummary summarize(const CFG& cfg, const FunctionTable& table, const FunctionEntry& fn);

HookClassification classify_hook(Selector s, const HookRegistry& registry);

}  // namespace reenscan
