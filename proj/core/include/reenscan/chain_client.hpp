// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "reenscan/bytes.hpp"
#include "reenscan/contract_id.hpp"
#include "reenscan/word.hpp"

namespace reenscan {

/// Transport or backend failure. Distinct from an empty-code account: the
/// analyzer records affected edges as unresolved instead of aborting.
class ChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ChainBackend {
public:
    virtual ~ChainBackend() = default;

    /// Runtime bytecode; empty for EOAs and unknown accounts.
    virtual Bytes get_code(const ContractId& id) = 0;

    /// Word at `slot`; zero for unset slots.
    virtual u256 get_storage(const ContractId& id, const u256& slot) = 0;
};

/// On-disk fixture set: one `<address>.hex` file per account (runtime
/// bytecode hex) and a `storage.json` mapping address -> slot-hex ->
/// word-hex. A missing address behaves exactly like an empty-code account.
class FixtureStore : public ChainBackend {
public:
    explicit FixtureStore(std::filesystem::path root);

    Bytes get_code(const ContractId& id) override;
    u256 get_storage(const ContractId& id, const u256& slot) override;

    static std::filesystem::path code_path(const std::filesystem::path& root,
        const ContractId& id);
    static void write_code(const std::filesystem::path& root, const ContractId& id,
        const Bytes& code);
    static void write_storage(const std::filesystem::path& root,
        const std::map<ContractId, std::map<u256, u256>>& storage);

private:
    void ensure_storage_loaded();

    std::filesystem::path root_;
    std::mutex mutex_;
    bool storage_loaded_ = false;
    std::map<ContractId, std::map<u256, u256>> storage_;
};

/// Pass-through backend that captures every result into a fixture
/// directory, so a live run can be replayed bit-identically offline.
class RecordingBackend : public ChainBackend {
public:
    RecordingBackend(std::shared_ptr<ChainBackend> inner, std::filesystem::path dir);
    ~RecordingBackend() override;

    Bytes get_code(const ContractId& id) override;
    u256 get_storage(const ContractId& id, const u256& slot) override;

    void flush();

private:
    std::shared_ptr<ChainBackend> inner_;
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::map<ContractId, std::map<u256, u256>> storage_;
    bool dirty_ = false;
};

/// Process-lifetime cache in front of a backend. Shareable across
/// concurrent analyses; duplicate in-flight fetches may both execute and
/// the last write wins (results are identical at a pinned height).
class CachingClient {
public:
    explicit CachingClient(std::shared_ptr<ChainBackend> backend) : backend_(std::move(backend)) {}

    bool has_backend() const { return backend_ != nullptr; }

    /// Throws ChainError on transport failure or when no backend is
    /// configured.
    Bytes get_code(const ContractId& id);
    u256 get_storage(const ContractId& id, const u256& slot);

private:
    std::shared_ptr<ChainBackend> backend_;
    std::shared_mutex mutex_;
    std::unordered_map<ContractId, Bytes> code_;
    std::map<std::pair<ContractId, u256>, u256> storage_;
};

}  // namespace reenscan
