// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mutex>
#include <optional>
#include <string>

#include "reenscan/chain_client.hpp"

namespace reenscan {

/// JSON-RPC 2.0 backend over HTTP (eth_getCode / eth_getStorageAt). The
/// block height is pinned once per client: the first request resolves
/// eth_blockNumber and every later read uses that tag, so storage reads are
/// mutually consistent within a run.
class RpcClient : public ChainBackend {
public:
    explicit RpcClient(std::string url);

    Bytes get_code(const ContractId& id) override;
    u256 get_storage(const ContractId& id, const u256& slot) override;

    /// The pinned block tag (hex quantity), resolving it if needed.
    std::string block_tag();

private:
    std::string call(const std::string& method, const std::string& params_json);

    std::string host_;
    int port_ = 80;
    std::string path_ = "/";
    std::mutex mutex_;
    std::optional<std::string> block_tag_;
    int next_id_ = 1;
};

}  // namespace reenscan
