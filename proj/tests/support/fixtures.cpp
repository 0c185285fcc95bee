// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "reenscan/chain_client.hpp"
#include "reenscan/keccak.hpp"

namespace reenscan::testing {

ContractId make_addr(uint8_t group, uint8_t role) {
    ContractId id;
    id.bytes[18] = group;
    id.bytes[19] = role;
    return id;
}

namespace {

CallSpec call_to(const ContractId& target, uint32_t selector, std::vector<Val> args,
    u256 value = 0) {
    CallSpec c;
    c.callee = Val::constant(target.to_word());
    c.selector = selector;
    c.args = std::move(args);
    c.value = std::move(value);
    return c;
}

FnSpec fn(Selector sel, std::vector<CallSpec> calls, FnReturn ret = FnReturn::stop) {
    FnSpec f;
    f.selector = sel;
    f.calls = std::move(calls);
    f.ret = ret;
    return f;
}

}  // namespace

FixtureSet fallback_simple(bool mutant) {
    FixtureSet s;
    s.name = mutant ? "fallback_simple_mutant" : "fallback_simple";
    const ContractId A = make_addr(1, 0xa1);
    const ContractId V = make_addr(1, 0xb1);
    const uint32_t kAttack = selector_of("attack()");
    const uint32_t kWithdrawTo = selector_of("withdrawTo(address)");

    std::vector<FnSpec> attacker;
    attacker.push_back(
        fn(Selector::from_u32(kAttack), {call_to(V, kWithdrawTo, {Val::self()})}));
    attacker.push_back(fn(Selector::fallback(),
        mutant ? std::vector<CallSpec>{}
               : std::vector<CallSpec>{call_to(V, kWithdrawTo, {Val::self()})}));

    // withdrawTo(address to): to.call{value: 1}("")
    CallSpec payout;
    payout.callee = Val::argument(0);
    payout.selector = std::nullopt;
    payout.value = 1;
    std::vector<FnSpec> victim{fn(Selector::from_u32(kWithdrawTo), {payout})};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[V] = build_contract(victim);
    s.expect_attacker = !mutant;
    s.expect_type = AttackType::fallback_type;
    s.expect_hook = Selector::fallback();
    s.supports_mutant = true;
    return s;
}

FixtureSet fallback_deep(bool mutant) {
    FixtureSet s;
    s.name = mutant ? "fallback_deep_mutant" : "fallback_deep";
    const ContractId A = make_addr(2, 0xa1);
    const ContractId V1 = make_addr(2, 0xb1);
    const ContractId V2 = make_addr(2, 0xb2);
    const uint32_t kAttack = selector_of("attack()");
    const uint32_t kRoute = selector_of("route(address)");
    const uint32_t kPayout = selector_of("payout(address)");

    std::vector<FnSpec> attacker;
    attacker.push_back(fn(Selector::from_u32(kAttack), {call_to(V1, kRoute, {Val::self()})}));
    attacker.push_back(fn(Selector::fallback(),
        mutant ? std::vector<CallSpec>{}
               : std::vector<CallSpec>{call_to(V1, kRoute, {Val::self()})}));

    std::vector<FnSpec> router{
        fn(Selector::from_u32(kRoute), {call_to(V2, kPayout, {Val::argument(0)})})};

    CallSpec payout;
    payout.callee = Val::argument(0);
    payout.selector = std::nullopt;
    payout.value = 1;
    std::vector<FnSpec> sink_contract{fn(Selector::from_u32(kPayout), {payout})};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[V1] = build_contract(router);
    s.contracts[V2] = build_contract(sink_contract);
    s.expect_attacker = !mutant;
    s.expect_type = AttackType::fallback_type;
    s.expect_hook = Selector::fallback();
    s.supports_mutant = true;
    return s;
}

namespace {

// Shared shape for the ERC hook fixtures: the victim invokes the standard
// hook on a counterparty address it received as an argument.
FixtureSet erc_hook_fixture(std::string name, uint8_t group, uint32_t hook_selector,
    const char* victim_signature, std::vector<Val> hook_args, bool via_storage, bool mutant) {
    FixtureSet s;
    s.name = mutant ? name + "_mutant" : name;
    const ContractId A = make_addr(group, 0xa1);
    const ContractId V = make_addr(group, 0xb1);
    const uint32_t kAttack = selector_of("attack()");
    const uint32_t kVictimFn = selector_of(victim_signature);

    CallSpec first;
    first.callee = via_storage ? Val::sload(1) : Val::constant(V.to_word());
    first.selector = kVictimFn;
    first.args = {Val::self()};

    std::vector<FnSpec> attacker;
    attacker.push_back(fn(Selector::from_u32(kAttack), {first}));
    std::vector<CallSpec> reenter;
    if (!mutant) {
        CallSpec again = first;
        reenter.push_back(std::move(again));
    }
    attacker.push_back(fn(Selector::from_u32(hook_selector), std::move(reenter)));

    CallSpec callback;
    callback.callee = Val::argument(0);
    callback.selector = hook_selector;
    callback.args = std::move(hook_args);
    std::vector<FnSpec> victim{fn(Selector::from_u32(kVictimFn), {callback})};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[V] = build_contract(victim);
    if (via_storage)
        s.storage[A][1] = V.to_word();
    s.expect_attacker = !mutant;
    s.expect_type = AttackType::erc_hook;
    s.expect_hook = Selector::from_u32(hook_selector);
    s.supports_mutant = true;
    return s;
}

}  // namespace

FixtureSet erc721_hook(bool mutant) {
    // onERC721Received(operator, from, tokenId, data)
    return erc_hook_fixture("erc721_hook", 3, 0x150b7a02, "safeGive(address)",
        {Val::sender(), Val::constant(0), Val::constant(1)}, false, mutant);
}

FixtureSet erc1155_hook(bool mutant) {
    return erc_hook_fixture("erc1155_hook", 4, 0xf23a6e61, "give1155(address)",
        {Val::sender(), Val::constant(0), Val::constant(7), Val::constant(1)}, true, mutant);
}

FixtureSet erc777_hook(bool mutant) {
    return erc_hook_fixture("erc777_hook", 5, 0x0023de29, "transfer777(address,uint256)",
        {Val::sender(), Val::self(), Val::argument(1)}, false, mutant);
}

FixtureSet userdef_toy(bool mutant) {
    FixtureSet s;
    s.name = mutant ? "userdef_toy_mutant" : "userdef_toy";
    const ContractId From = make_addr(6, 0xa1);
    const ContractId Target = make_addr(6, 0xb1);
    const uint32_t kBar = selector_of("bar(uint256)");
    const uint32_t kFoo = selector_of("foo(address,uint256)");
    const uint32_t kHook = selector_of("hook(uint256)");

    std::vector<FnSpec> from;
    from.push_back(fn(Selector::from_u32(kBar),
        {call_to(Target, kFoo, {Val::self(), Val::argument(0)})}));
    from.push_back(fn(Selector::from_u32(kHook),
        mutant ? std::vector<CallSpec>{}
               : std::vector<CallSpec>{call_to(Target, kFoo, {Val::self(), Val::argument(0)})}));

    // foo(address v1, uint256 v2): v1.hook(v2)
    CallSpec hook_call;
    hook_call.callee = Val::argument(0);
    hook_call.selector = kHook;
    hook_call.args = {Val::argument(1)};
    std::vector<FnSpec> target{fn(Selector::from_u32(kFoo), {hook_call})};

    s.entry = From;
    s.contracts[From] = build_contract(from);
    s.contracts[Target] = build_contract(target);
    s.expect_attacker = !mutant;
    s.expect_type = AttackType::user_defined;
    s.expect_hook = Selector::from_u32(kHook);
    s.supports_mutant = true;
    return s;
}

FixtureSet userdef_vault(bool mutant) {
    FixtureSet s;
    s.name = mutant ? "userdef_vault_mutant" : "userdef_vault";
    const ContractId A = make_addr(7, 0xa1);
    const ContractId Vault = make_addr(7, 0xb1);
    const ContractId Token = make_addr(7, 0xb2);
    const ContractId Visr = make_addr(7, 0xc1);  // passed around, never called

    const uint32_t kEnter = 0x4a0b0c38;  // attack entry point, as deployed
    const uint32_t kDeposit = selector_of("deposit(uint256,address,address)");
    const uint32_t kDte = selector_of("delegatedTransferERC20(address,address,uint256)");
    const uint32_t kOwner = selector_of("owner()");
    const uint32_t kMint = selector_of("mint(address,uint256)");
    const u256 kAmount = word_from_hex("0x52b7d2dcc80cd2e4000000").value();
    const u256 kAdmin = make_addr(7, 0xd1).to_word();

    CallSpec deposit_call;
    deposit_call.callee = Val::sload(0);  // vault address lives in slot 0
    deposit_call.selector = kDeposit;
    deposit_call.args = {Val::constant(kAmount), Val::self(), Val::constant(kAdmin)};

    std::vector<FnSpec> attacker;
    attacker.push_back(fn(Selector::from_u32(kEnter), {deposit_call}));
    FnSpec dte = fn(Selector::from_u32(kDte),
        mutant ? std::vector<CallSpec>{} : std::vector<CallSpec>{deposit_call});
    dte.count_guard = true;
    attacker.push_back(std::move(dte));
    attacker.push_back(fn(Selector::from_u32(kOwner), {}, FnReturn::ret_const));

    // deposit(uint256 amount, address from, address to):
    //   require(IVisor(from).owner() == ...); IVisor(from).delegatedTransferERC20(...);
    //   token.mint(to, 1)
    CallSpec owner_check;
    owner_check.opcode = OP_STATICCALL;
    owner_check.callee = Val::argument(1);
    owner_check.selector = kOwner;
    CallSpec pull;
    pull.callee = Val::argument(1);
    pull.selector = kDte;
    pull.args = {Val::constant(Visr.to_word()), Val::self(), Val::argument(0)};
    std::vector<FnSpec> vault{
        fn(Selector::from_u32(kDeposit),
            {owner_check, pull, call_to(Token, kMint, {Val::argument(2), Val::constant(1)})})};

    FnSpec mint = fn(Selector::from_u32(kMint), {});
    mint.sstore = {{u256(2), u256(1)}};
    std::vector<FnSpec> token{std::move(mint)};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[Vault] = build_contract(vault);
    s.contracts[Token] = build_contract(token);
    s.storage[A][0] = Vault.to_word();
    s.expect_attacker = !mutant;
    s.expect_type = AttackType::user_defined;
    s.expect_hook = Selector::from_u32(kDte);
    s.supports_mutant = true;
    return s;
}

FixtureSet sender_gated(bool mutant) {
    FixtureSet s = userdef_toy(mutant);
    s.name = mutant ? "sender_gated_mutant" : "sender_gated";

    // Rebuild the entry with a msg.sender gate on the hook body.
    const ContractId From = make_addr(8, 0xa1);
    const ContractId Target = make_addr(8, 0xb1);
    const uint32_t kBar = selector_of("bar(uint256)");
    const uint32_t kFoo = selector_of("foo(address,uint256)");
    const uint32_t kHook = selector_of("hook(uint256)");

    std::vector<FnSpec> from;
    from.push_back(fn(Selector::from_u32(kBar),
        {call_to(Target, kFoo, {Val::self(), Val::argument(0)})}));
    FnSpec hook = fn(Selector::from_u32(kHook),
        mutant ? std::vector<CallSpec>{}
               : std::vector<CallSpec>{call_to(Target, kFoo, {Val::self(), Val::argument(0)})});
    hook.sender_gate = true;
    from.push_back(std::move(hook));

    CallSpec hook_call;
    hook_call.callee = Val::argument(0);
    hook_call.selector = kHook;
    hook_call.args = {Val::argument(1)};
    std::vector<FnSpec> target{fn(Selector::from_u32(kFoo), {hook_call})};

    s.contracts.clear();
    s.entry = From;
    s.contracts[From] = build_contract(from);
    s.contracts[Target] = build_contract(target);
    s.storage.clear();
    s.expect_hook = Selector::from_u32(kHook);
    s.flagged_by_design = true;
    return s;
}

FixtureSet benign_nocalls() {
    FixtureSet s;
    s.name = "benign_nocalls";
    const ContractId C = make_addr(9, 0xa1);
    FnSpec transfer = fn(Selector::from_u32(selector_of("transfer(address,uint256)")), {});
    transfer.sstore = {{u256(3), u256(42)}};
    std::vector<FnSpec> fns{std::move(transfer),
        fn(Selector::from_u32(selector_of("balanceOf(address)")), {}, FnReturn::ret_const)};
    s.entry = C;
    s.contracts[C] = build_contract(fns);
    return s;
}

FixtureSet benign_static_hook() {
    FixtureSet s;
    s.name = "benign_static_hook";
    const ContractId A = make_addr(10, 0xa1);
    const ContractId V = make_addr(10, 0xb1);
    const uint32_t kAttack = selector_of("attack()");
    const uint32_t kQuery = selector_of("query(address)");
    const uint32_t kOnQuery = selector_of("onQuery(address)");

    CallSpec getter;
    getter.opcode = OP_STATICCALL;
    getter.callee = Val::constant(V.to_word());
    getter.selector = kQuery;
    getter.args = {Val::self()};

    std::vector<FnSpec> attacker;
    attacker.push_back(fn(Selector::from_u32(kAttack), {call_to(V, kQuery, {Val::self()})}));
    attacker.push_back(fn(Selector::from_u32(kOnQuery), {getter}));

    CallSpec callback;
    callback.callee = Val::argument(0);
    callback.selector = kOnQuery;
    callback.args = {Val::self()};
    std::vector<FnSpec> victim{fn(Selector::from_u32(kQuery), {callback})};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[V] = build_contract(victim);
    return s;
}

FixtureSet benign_norevisit() {
    FixtureSet s;
    s.name = "benign_norevisit";
    const ContractId A = make_addr(11, 0xa1);
    const ContractId V = make_addr(11, 0xb1);
    const ContractId W = make_addr(11, 0xb2);
    const uint32_t kAttack = selector_of("attack()");
    const uint32_t kPing = selector_of("ping(address)");
    const uint32_t kOnPing = selector_of("onPing()");
    const uint32_t kPoke = selector_of("poke()");

    std::vector<FnSpec> attacker;
    attacker.push_back(fn(Selector::from_u32(kAttack), {call_to(V, kPing, {Val::self()})}));
    attacker.push_back(fn(Selector::from_u32(kOnPing), {call_to(W, kPoke, {})}));

    CallSpec callback;
    callback.callee = Val::argument(0);
    callback.selector = kOnPing;
    std::vector<FnSpec> victim{fn(Selector::from_u32(kPing), {callback})};

    FnSpec poke = fn(Selector::from_u32(kPoke), {});
    poke.sstore = {{u256(4), u256(9)}};
    std::vector<FnSpec> other{std::move(poke)};

    s.entry = A;
    s.contracts[A] = build_contract(attacker);
    s.contracts[V] = build_contract(victim);
    s.contracts[W] = build_contract(other);
    return s;
}

FixtureSet benign_nodispatcher() {
    FixtureSet s;
    s.name = "benign_nodispatcher";
    const ContractId C = make_addr(12, 0xa1);
    s.entry = C;
    s.contracts[C] = Bytes{OP_CALLDATASIZE, OP_POP, OP_STOP};
    return s;
}

FixtureSet benign_deepchain() {
    FixtureSet s;
    s.name = "benign_deepchain";
    const ContractId A = make_addr(13, 0xa1);
    const ContractId V1 = make_addr(13, 0x01);
    const ContractId V2 = make_addr(13, 0x02);
    const ContractId V3 = make_addr(13, 0x03);
    const uint32_t kGo = selector_of("go()");
    const uint32_t kF1 = selector_of("f1(address)");
    const uint32_t kF2 = selector_of("f2(address)");
    const uint32_t kF3 = selector_of("f3(address)");

    std::vector<FnSpec> entry{fn(Selector::from_u32(kGo), {call_to(V1, kF1, {Val::self()})})};
    std::vector<FnSpec> c1{fn(Selector::from_u32(kF1), {call_to(V2, kF2, {Val::argument(0)})})};
    std::vector<FnSpec> c2{fn(Selector::from_u32(kF2), {call_to(V3, kF3, {Val::argument(0)})})};
    FnSpec leaf = fn(Selector::from_u32(kF3), {});
    leaf.sstore = {{u256(5), u256(6)}};
    std::vector<FnSpec> c3{std::move(leaf)};

    s.entry = A;
    s.contracts[A] = build_contract(entry);
    s.contracts[V1] = build_contract(c1);
    s.contracts[V2] = build_contract(c2);
    s.contracts[V3] = build_contract(c3);
    return s;
}

FixtureSet deep_chain(uint32_t depth, uint32_t sink_depth) {
    FixtureSet s;
    s.name = "deep_chain_" + std::to_string(depth) + "_" + std::to_string(sink_depth);
    const ContractId Entry = make_addr(14, 0xa1);
    const uint32_t kLaunch = selector_of("launch()");
    const uint32_t kStep = selector_of("step(address)");
    const uint32_t kDive = selector_of("dive()");

    auto link = [&](uint32_t i) { return make_addr(14, static_cast<uint8_t>(i)); };

    std::vector<FnSpec> entry;
    entry.push_back(fn(Selector::from_u32(kLaunch), {call_to(link(1), kStep, {Val::self()})}));
    entry.push_back(fn(Selector::from_u32(kDive), {call_to(link(1), kStep, {Val::self()})}));
    s.entry = Entry;
    s.contracts[Entry] = build_contract(entry);

    for (uint32_t i = 1; i <= depth; ++i) {
        std::vector<CallSpec> calls;
        if (i < depth)
            calls.push_back(call_to(link(i + 1), kStep, {Val::argument(0)}));
        if (i == sink_depth) {
            CallSpec dive;
            dive.callee = Val::argument(0);
            dive.selector = kDive;
            calls.push_back(std::move(dive));
        }
        const bool leaf = calls.empty();
        FnSpec step = fn(Selector::from_u32(kStep), std::move(calls));
        if (leaf)
            step.sstore = {{u256(6), u256(1)}};
        s.contracts[link(i)] = build_contract({std::move(step)});
    }

    s.expect_attacker = sink_depth > 0;
    s.expect_type = AttackType::user_defined;
    s.expect_hook = Selector::from_u32(kDive);
    return s;
}

std::vector<FixtureSet> full_corpus() {
    return {
        fallback_simple(),
        fallback_deep(),
        erc721_hook(),
        erc1155_hook(),
        erc777_hook(),
        userdef_toy(),
        userdef_vault(),
        sender_gated(),
        benign_nocalls(),
        benign_static_hook(),
        benign_norevisit(),
        benign_nodispatcher(),
        benign_deepchain(),
    };
}

void write_fixture_set(const std::filesystem::path& dir, const FixtureSet& set) {
    std::filesystem::create_directories(dir);
    for (const auto& [id, code] : set.contracts)
        FixtureStore::write_code(dir, id, code);
    if (!set.storage.empty())
        FixtureStore::write_storage(dir, set.storage);
}

}  // namespace reenscan::testing
