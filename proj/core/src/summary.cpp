// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/summary.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace reenscan {

namespace {

constexpr size_t kMaxPaths = 256;
constexpr size_t kMaxPathBlocks = 512;
constexpr size_t kMaxArgs = 16;
constexpr size_t kMaxRetSlots = 16;

TriState value_tri(const Tracked& v) {
    if (!v.v.is_const())
        return TriState::unknown;
    return v.v.word == 0 ? TriState::no : TriState::yes;
}

TriState merge_tri(TriState a, TriState b) {
    return a == b ? a : TriState::unknown;
}

CallSite extract_site(uint32_t offset, Selector host, const CallOperands& ops,
    const AbstractMemory& mem) {
    CallSite s;
    s.id = offset;
    s.host_function = host;
    s.call_opcode = ops.opcode;
    s.callee = ops.callee.v;
    s.sends_value = value_tri(ops.value);

    if (ops.args_size.v.is_const()) {
        const u256& size = ops.args_size.v.word;
        if (size < 4) {
            s.target_selector = Selector::fallback();
        } else if (ops.args_offset.v.is_const()) {
            const u256& base = ops.args_offset.v.word;
            if (const auto word = mem.load(base); word && word->v.is_const())
                s.target_selector = Selector::from_u32(top4(word->v.word));
            for (size_t k = 0; k < kMaxArgs && 4 + 32 * k < size; ++k) {
                const auto arg = mem.load(base + 4 + 32 * k);
                s.arg_values.push_back(arg ? arg->v : AbstractValue::top());
            }
        }
    }
    return s;
}

void facts_from_site(const CallSite& s, std::set<FlowFact>& out) {
    uint64_t arg = 0;
    if (s.callee.is_arg(&arg))
        out.insert({FlowKind::FuncArgToCallee, static_cast<uint32_t>(arg), s.id, 0});
    for (size_t pos = 0; pos < s.arg_values.size(); ++pos) {
        const AbstractValue& v = s.arg_values[pos];
        if (v.is_arg(&arg))
            out.insert({FlowKind::FuncArgToCallArg, static_cast<uint32_t>(arg), s.id,
                static_cast<uint32_t>(pos)});
        else if (v.kind == AvKind::CallReturn)
            out.insert({FlowKind::CallRetToCallArg, v.site, s.id, static_cast<uint32_t>(pos)});
    }
}

void facts_from_return(const StepEvent& ev, const AbstractMemory& mem, std::set<FlowFact>& out) {
    if (!ev.ret_offset.v.is_const() || !ev.ret_size.v.is_const())
        return;
    const u256& base = ev.ret_offset.v.word;
    const u256& size = ev.ret_size.v.word;
    for (size_t r = 0; r < kMaxRetSlots && 32 * r < size; ++r) {
        const auto word = mem.load(base + 32 * r);
        if (!word)
            continue;
        uint64_t arg = 0;
        if (word->v.is_arg(&arg))
            out.insert({FlowKind::FuncArgToFuncRet, static_cast<uint32_t>(arg), kNoSite,
                static_cast<uint32_t>(r)});
        else if (word->v.kind == AvKind::CallReturn)
            out.insert(
                {FlowKind::CallRetToFuncRet, word->v.site, kNoSite, static_cast<uint32_t>(r)});
    }
}

void merge_site(std::map<uint32_t, CallSite>& sites, CallSite&& s, Diagnostics& diags) {
    auto [it, fresh] = sites.try_emplace(s.id, std::move(s));
    if (fresh)
        return;
    CallSite& dst = it->second;
    dst.callee = join(dst.callee, s.callee);
    dst.sends_value = merge_tri(dst.sends_value, s.sends_value);
    if (!dst.target_selector) {
        dst.target_selector = s.target_selector;
    } else if (s.target_selector && *s.target_selector != *dst.target_selector) {
        diags.add("conflicting-target-selector", "call site " + std::to_string(dst.id));
        dst.target_selector.reset();
    }
    const size_t common = std::min(dst.arg_values.size(), s.arg_values.size());
    for (size_t i = 0; i < common; ++i)
        dst.arg_values[i] = join(dst.arg_values[i], s.arg_values[i]);
    for (size_t i = dst.arg_values.size(); i < s.arg_values.size(); ++i)
        dst.arg_values.push_back(s.arg_values[i]);
}

bool is_sender_guard(const DispatchObservations& obs, uint32_t def) {
    for (int i = 0; i < 64 && def != kNoDef; ++i) {
        if (obs.sender_eq.count(def))
            return true;
        const auto chain = obs.iszero_chain.find(def);
        if (chain == obs.iszero_chain.end())
            return false;
        def = chain->second;
    }
    return false;
}

}  // namespace

const char* to_string(FlowKind k) {
    switch (k) {
    case FlowKind::FuncArgToCallArg: return "FuncArgToCallArg";
    case FlowKind::FuncArgToFuncRet: return "FuncArgToFuncRet";
    case FlowKind::FuncArgToCallee: return "FuncArgToCallee";
    case FlowKind::CallRetToCallArg: return "CallRetToCallArg";
    case FlowKind::CallRetToFuncRet: return "CallRetToFuncRet";
    }
    return "?";
}

const CallSite* FunctionSummary::site(uint32_t id) const {
    const auto it = std::lower_bound(call_sites.begin(), call_sites.end(), id,
        [](const CallSite& s, uint32_t v) { return s.id < v; });
    if (it == call_sites.end() || it->id != id)
        return nullptr;
    return &*it;
}

HookClassification classify_hook(Selector s, const HookRegistry& registry) {
    return registry.classify(s);
}

FunctionSummary summarize(const CFG& cfg, const FunctionTable& table, const FunctionEntry& fn) {
    (void)table;
    FunctionSummary sum;
    sum.selector = fn.selector;
    if (fn.entry_block == kNoBlock || cfg.blocks.empty())
        return sum;

    // Enumerate acyclic block paths from the function entry.
    std::vector<std::vector<uint32_t>> paths;
    bool cap_hit = false;
    {
        struct Frame {
            uint32_t block;
            size_t next = 0;
            bool descended = false;
        };
        std::vector<Frame> stack{{fn.entry_block}};
        std::set<uint32_t> on_path{fn.entry_block};

        while (!stack.empty()) {
            if (paths.size() >= kMaxPaths) {
                cap_hit = true;
                break;
            }
            Frame& f = stack.back();
            const BasicBlock& b = cfg.blocks[f.block];
            bool descended = false;
            while (f.next < b.successors.size()) {
                const uint32_t s = b.successors[f.next++];
                if (on_path.count(s) || stack.size() >= kMaxPathBlocks)
                    continue;
                stack.push_back({s});
                on_path.insert(s);
                descended = true;
                break;
            }
            if (descended) {
                stack[stack.size() - 2].descended = true;
                continue;
            }
            if (f.next >= b.successors.size()) {
                if (!f.descended) {
                    std::vector<uint32_t> path;
                    path.reserve(stack.size());
                    for (const Frame& fr : stack)
                        path.push_back(fr.block);
                    paths.push_back(std::move(path));
                }
                on_path.erase(f.block);
                stack.pop_back();
            }
        }
    }

    Emulator emu(*cfg.stream, EmulatorOptions{.model_memory = true});
    std::map<uint32_t, CallSite> sites;
    std::set<FlowFact> facts;
    size_t infeasible = 0;
    bool storage_taint_drop = false;

    auto run_block = [&](MachineState& st, const BasicBlock& b, std::map<uint32_t, CallSite>& out,
                         std::set<FlowFact>* fact_out) {
        for (size_t k = 0; k < b.instruction_count; ++k) {
            const Instruction& in = cfg.instruction(b, k);
            const StepEvent ev = emu.step(st, in);
            switch (ev.kind) {
            case StepKind::call: {
                CallSite s = extract_site(in.offset, fn.selector, ev.call, st.memory);
                if (fact_out)
                    facts_from_site(s, *fact_out);
                merge_site(out, std::move(s), sum.diagnostics);
                break;
            }
            case StepKind::ret:
                if (fact_out)
                    facts_from_return(ev, st.memory, *fact_out);
                break;
            case StepKind::jumpi:
                if (!sum.sender_guard && ev.condition.def != kNoDef &&
                    is_sender_guard(emu.observations(), ev.condition.def))
                    sum.sender_guard = true;
                break;
            default:
                break;
            }
            if (ev.sstore_value && (ev.sstore_value->v.kind == AvKind::CallData ||
                                       ev.sstore_value->v.kind == AvKind::CallReturn))
                storage_taint_drop = true;
            if (st.stack.infeasible())
                return false;
        }
        return true;
    };

    for (const auto& path : paths) {
        MachineState st;
        // Standard solc memory layout: the free-memory pointer starts at
        // 0x80. Seeding it keeps buffer offsets constant along a path.
        st.memory.store(0x40, Tracked{AbstractValue::constant(0x80), kNoDef});
        std::map<uint32_t, CallSite> path_sites;
        std::set<FlowFact> path_facts;
        bool ok = true;
        for (const uint32_t bi : path) {
            if (!run_block(st, cfg.blocks[bi], path_sites, &path_facts)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++infeasible;
            continue;
        }
        for (auto& [id, s] : path_sites)
            merge_site(sites, std::move(s), sum.diagnostics);
        facts.insert(path_facts.begin(), path_facts.end());
    }

    if (cap_hit) {
        // Joined block-level extraction over the function's reachable
        // region; less precise (no cross-block memory) but terminating.
        sum.diagnostics.add("path-cap-fallback", fn.selector.to_string());
        std::set<uint32_t> region;
        std::deque<uint32_t> queue{fn.entry_block};
        region.insert(fn.entry_block);
        while (!queue.empty()) {
            const uint32_t bi = queue.front();
            queue.pop_front();
            for (const uint32_t s : cfg.blocks[bi].successors)
                if (region.insert(s).second)
                    queue.push_back(s);
        }
        for (const uint32_t bi : region) {
            MachineState st;
            st.stack = cfg.entry_states[bi];
            std::map<uint32_t, CallSite> block_sites;
            run_block(st, cfg.blocks[bi], block_sites, nullptr);
            for (auto& [id, s] : block_sites) {
                facts_from_site(s, facts);
                merge_site(sites, std::move(s), sum.diagnostics);
            }
        }
    }

    if (infeasible > 0)
        sum.diagnostics.add("infeasible-path",
            fn.selector.to_string() + ": " + std::to_string(infeasible) + " path(s)");
    if (storage_taint_drop)
        sum.diagnostics.add("storage-taint-drop", fn.selector.to_string());

    sum.call_sites.reserve(sites.size());
    for (auto& [id, s] : sites)
        sum.call_sites.push_back(std::move(s));
    sum.flow_facts.assign(facts.begin(), facts.end());
    return sum;
}

}  // namespace reenscan
