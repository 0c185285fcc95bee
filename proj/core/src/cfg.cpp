// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/cfg.hpp"

#include <algorithm>
#include <deque>

namespace reenscan {

namespace {

bool ends_block(const Instruction& in) {
    return traits(in.opcode).terminator || !traits(in.opcode).known;
}

void add_successor(BasicBlock& b, uint32_t succ) {
    if (std::find(b.successors.begin(), b.successors.end(), succ) == b.successors.end())
        b.successors.push_back(succ);
}

// Walks an ISZERO chain from a condition definition, checking each step
// against the dispatcher observations.
struct CondResolution {
    std::optional<SelectorDispatch> dispatch;
    std::optional<bool> cds_small_on_jump;
};

CondResolution resolve_condition(const DispatchObservations& obs, uint32_t def) {
    CondResolution res;
    bool negated = false;
    for (int i = 0; i < 64 && def != kNoDef; ++i) {
        if (const auto sel = obs.selector_eq.find(def); sel != obs.selector_eq.end()) {
            res.dispatch = SelectorDispatch{sel->second, negated};
            return res;
        }
        if (const auto cds = obs.cds_compare.find(def); cds != obs.cds_compare.end()) {
            res.cds_small_on_jump = cds->second != negated;
            return res;
        }
        const auto chain = obs.iszero_chain.find(def);
        if (chain == obs.iszero_chain.end())
            return res;
        def = chain->second;
        negated = !negated;
    }
    return res;
}

constexpr int kBlockVisitCap = 8;

}  // namespace

std::optional<uint32_t> CFG::jumpdest_block(const u256& target) const {
    if (target > 0xffffffffu)
        return std::nullopt;
    const auto it = block_by_offset.find(static_cast<uint32_t>(target));
    if (it == block_by_offset.end())
        return std::nullopt;
    const BasicBlock& b = blocks[it->second];
    if (b.instruction_count == 0 || instruction(b, 0).opcode != OP_JUMPDEST)
        return std::nullopt;
    return it->second;
}

CFG build_cfg(const InstructionStream& stream) {
    CFG g;
    g.stream = &stream;
    g.diagnostics.merge(stream.diagnostics);

    // Partition: every instruction lands in exactly one block. A block ends
    // at a terminator or immediately before a JUMPDEST.
    const auto& ins = stream.instructions;
    for (size_t i = 0; i < ins.size();) {
        BasicBlock b;
        b.id = static_cast<uint32_t>(g.blocks.size());
        b.start_offset = ins[i].offset;
        b.first_instruction = i;
        size_t j = i;
        while (j < ins.size()) {
            const bool term = ends_block(ins[j]);
            ++j;
            if (term)
                break;
            if (j < ins.size() && ins[j].opcode == OP_JUMPDEST)
                break;
        }
        b.instruction_count = j - i;
        b.end_opcode = ins[j - 1].opcode;
        g.block_by_offset[b.start_offset] = b.id;
        g.blocks.push_back(std::move(b));
        i = j;
    }

    // Static fallthrough edges.
    for (size_t bi = 0; bi < g.blocks.size(); ++bi) {
        BasicBlock& b = g.blocks[bi];
        const uint8_t end = b.end_opcode;
        const bool falls = end == OP_JUMPI || !ends_block(stream.instructions[b.first_instruction +
                                                  b.instruction_count - 1]);
        if (falls && bi + 1 < g.blocks.size()) {
            b.fallthrough_successor = static_cast<uint32_t>(bi + 1);
            add_successor(b, static_cast<uint32_t>(bi + 1));
        }
    }

    if (g.blocks.empty())
        return g;

    // Fixpoint over abstract stack states from the entry block; jump edges
    // are discovered as their targets resolve to constants.
    Emulator emu(stream, EmulatorOptions{.model_memory = false});
    g.entry_states.resize(g.blocks.size());
    std::vector<int> visits(g.blocks.size(), 0);
    std::vector<bool> degraded(g.blocks.size(), false);
    std::vector<bool> reached(g.blocks.size(), false);
    std::vector<std::optional<u256>> jump_seen(g.blocks.size());

    std::deque<uint32_t> worklist;
    worklist.push_back(0);
    reached[0] = true;

    size_t infeasible_paths = 0;

    while (!worklist.empty()) {
        const uint32_t bi = worklist.front();
        worklist.pop_front();
        BasicBlock& b = g.blocks[bi];
        if (++visits[bi] > kBlockVisitCap + 1)
            continue;

        MachineState st;
        st.stack = g.entry_states[bi];
        StepEvent last_event;
        for (size_t k = 0; k < b.instruction_count; ++k)
            last_event = emu.step(st, g.instruction(b, k));

        if (st.stack.infeasible()) {
            ++infeasible_paths;
            continue;
        }

        auto propagate = [&](uint32_t succ) {
            bool changed;
            if (!reached[succ]) {
                g.entry_states[succ] = st.stack;
                reached[succ] = true;
                changed = true;
            } else {
                changed = AbstractStack::join_into(g.entry_states[succ], st.stack);
            }
            if (!changed)
                return;
            if (visits[succ] < kBlockVisitCap) {
                worklist.push_back(succ);
            } else if (!degraded[succ]) {
                g.entry_states[succ].degrade();
                degraded[succ] = true;
                worklist.push_back(succ);
            }
        };

        auto resolve_jump_edge = [&](const Tracked& target) {
            if (target.v.is_const()) {
                if (jump_seen[bi] && *jump_seen[bi] != target.v.word) {
                    b.unresolved_jump = true;  // joined contexts disagree
                    return;
                }
                jump_seen[bi] = target.v.word;
                if (const auto dest = g.jumpdest_block(target.v.word)) {
                    if (!b.jump_successor) {
                        b.jump_successor = *dest;
                        add_successor(b, *dest);
                    }
                } else {
                    g.diagnostics.add("invalid-jump-target",
                        "block at offset " + std::to_string(b.start_offset));
                }
            } else {
                b.unresolved_jump = true;
            }
        };

        switch (last_event.kind) {
        case StepKind::jump:
            resolve_jump_edge(last_event.jump_target);
            break;
        case StepKind::jumpi: {
            resolve_jump_edge(last_event.jump_target);
            if (!b.dispatch && !b.cds_guard_small_on_jump && last_event.condition.def != kNoDef) {
                const CondResolution res =
                    resolve_condition(emu.observations(), last_event.condition.def);
                if (res.dispatch)
                    b.dispatch = res.dispatch;
                else if (res.cds_small_on_jump)
                    b.cds_guard_small_on_jump = res.cds_small_on_jump;
            }
            break;
        }
        default:
            break;
        }

        if (b.jump_successor)
            propagate(*b.jump_successor);
        if (b.fallthrough_successor && b.end_opcode != OP_JUMP)
            propagate(*b.fallthrough_successor);
    }

    g.observations = emu.observations();

    size_t unresolved = 0;
    for (const BasicBlock& b : g.blocks)
        if (b.unresolved_jump)
            ++unresolved;
    if (unresolved > 0)
        g.diagnostics.add("unresolved-jump", std::to_string(unresolved) + " block(s)");
    if (infeasible_paths > 0)
        g.diagnostics.add("infeasible-path", std::to_string(infeasible_paths) + " state(s)");
    return g;
}

PathStates emulate_stack(const CFG& cfg, const std::vector<uint32_t>& block_path) {
    PathStates out;
    Emulator emu(*cfg.stream, EmulatorOptions{.model_memory = true});
    MachineState st;
    st.memory.store(0x40, Tracked{AbstractValue::constant(0x80), kNoDef});

    auto snapshot = [](const AbstractStack& s) {
        std::vector<AbstractValue> v;
        v.reserve(s.depth());
        for (const Tracked& t : s.slots())
            v.push_back(t.v);
        return v;
    };

    for (const uint32_t bi : block_path) {
        const BasicBlock& b = cfg.blocks.at(bi);
        for (size_t k = 0; k < b.instruction_count; ++k) {
            out.states_before.push_back(snapshot(st.stack));
            emu.step(st, cfg.instruction(b, k));
            if (st.stack.infeasible()) {
                out.infeasible = true;
                out.final_stack = snapshot(st.stack);
                return out;
            }
        }
    }
    out.final_stack = snapshot(st.stack);
    return out;
}

}  // namespace reenscan
