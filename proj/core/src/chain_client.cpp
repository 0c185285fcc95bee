// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/chain_client.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace reenscan {

namespace fs = std::filesystem;
using nlohmann::json;

FixtureStore::FixtureStore(fs::path root) : root_(std::move(root)) {}

fs::path FixtureStore::code_path(const fs::path& root, const ContractId& id) {
    return root / (id.to_string() + ".hex");
}

Bytes FixtureStore::get_code(const ContractId& id) {
    const fs::path p = code_path(root_, id);
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return {};  // missing address == empty-code account
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty())
        return {};
    const auto bytes = from_hex(text);
    if (!bytes)
        throw ChainError("malformed fixture hex: " + p.string());
    return *bytes;
}

void FixtureStore::ensure_storage_loaded() {
    if (storage_loaded_)
        return;
    storage_loaded_ = true;
    std::ifstream in(root_ / "storage.json");
    if (!in)
        return;
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ChainError("malformed storage.json: " + std::string(e.what()));
    }
    for (const auto& [addr_text, slots] : doc.items()) {
        const auto id = ContractId::parse(addr_text);
        if (!id || !slots.is_object())
            throw ChainError("malformed storage.json entry: " + addr_text);
        for (const auto& [slot_text, word_text] : slots.items()) {
            const auto slot = word_from_hex(slot_text);
            const auto word = word_from_hex(word_text.get<std::string>());
            if (!slot || !word)
                throw ChainError("malformed storage.json slot: " + slot_text);
            storage_[*id][*slot] = *word;
        }
    }
}

u256 FixtureStore::get_storage(const ContractId& id, const u256& slot) {
    std::lock_guard lock(mutex_);
    ensure_storage_loaded();
    const auto account = storage_.find(id);
    if (account == storage_.end())
        return 0;
    const auto it = account->second.find(slot);
    return it == account->second.end() ? u256(0) : it->second;
}

void FixtureStore::write_code(const fs::path& root, const ContractId& id, const Bytes& code) {
    fs::create_directories(root);
    std::ofstream out(code_path(root, id), std::ios::binary | std::ios::trunc);
    out << to_hex(code) << '\n';
}

void FixtureStore::write_storage(const fs::path& root,
    const std::map<ContractId, std::map<u256, u256>>& storage) {
    fs::create_directories(root);
    json doc = json::object();
    for (const auto& [id, slots] : storage) {
        json obj = json::object();
        for (const auto& [slot, word] : slots)
            obj[word_to_hex(slot)] = word_to_hex32(word);
        doc[id.to_string()] = std::move(obj);
    }
    std::ofstream out(root / "storage.json", std::ios::trunc);
    out << doc.dump(2) << '\n';
}

RecordingBackend::RecordingBackend(std::shared_ptr<ChainBackend> inner, fs::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

RecordingBackend::~RecordingBackend() {
    try {
        flush();
    } catch (...) {
        // best effort on teardown
    }
}

Bytes RecordingBackend::get_code(const ContractId& id) {
    Bytes code = inner_->get_code(id);
    std::lock_guard lock(mutex_);
    FixtureStore::write_code(dir_, id, code);
    return code;
}

u256 RecordingBackend::get_storage(const ContractId& id, const u256& slot) {
    const u256 word = inner_->get_storage(id, slot);
    std::lock_guard lock(mutex_);
    storage_[id][slot] = word;
    dirty_ = true;
    return word;
}

void RecordingBackend::flush() {
    std::lock_guard lock(mutex_);
    if (!dirty_)
        return;
    FixtureStore::write_storage(dir_, storage_);
    dirty_ = false;
}

Bytes CachingClient::get_code(const ContractId& id) {
    {
        std::shared_lock lock(mutex_);
        const auto it = code_.find(id);
        if (it != code_.end())
            return it->second;
    }
    if (!backend_)
        throw ChainError("no chain backend configured");
    Bytes code = backend_->get_code(id);
    std::unique_lock lock(mutex_);
    code_[id] = code;
    return code;
}

u256 CachingClient::get_storage(const ContractId& id, const u256& slot) {
    const auto key = std::make_pair(id, slot);
    {
        std::shared_lock lock(mutex_);
        const auto it = storage_.find(key);
        if (it != storage_.end())
            return it->second;
    }
    if (!backend_)
        throw ChainError("no chain backend configured");
    const u256 word = backend_->get_storage(id, slot);
    std::unique_lock lock(mutex_);
    storage_[key] = word;
    return word;
}

}  // namespace reenscan
