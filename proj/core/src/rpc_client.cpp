// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/rpc_client.hpp"

#include <httplib.h>
#include <json.hpp>

namespace reenscan {

using nlohmann::json;

RpcClient::RpcClient(std::string url) {
    // http://host[:port][/path]; https endpoints would need TLS support.
    std::string rest = url;
    if (rest.rfind("http://", 0) == 0) {
        rest = rest.substr(7);
    } else if (rest.rfind("https://", 0) == 0) {
        throw ChainError("https RPC endpoints are not supported, use http: " + url);
    }
    const auto slash = rest.find('/');
    std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
    const auto colon = authority.rfind(':');
    if (colon != std::string::npos) {
        host_ = authority.substr(0, colon);
        port_ = std::stoi(authority.substr(colon + 1));
    } else {
        host_ = authority;
        port_ = 80;
    }
    if (host_.empty())
        throw ChainError("invalid RPC endpoint: " + url);
}

std::string RpcClient::call(const std::string& method, const std::string& params_json) {
    int id;
    {
        std::lock_guard lock(mutex_);
        id = next_id_++;
    }
    const std::string body = std::string("{\"jsonrpc\":\"2.0\",\"id\":") + std::to_string(id) +
                             ",\"method\":\"" + method + "\",\"params\":" + params_json + "}";

    httplib::Client client(host_, port_);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    const auto res = client.Post(path_, body, "application/json");
    if (!res)
        throw ChainError("RPC transport failure calling " + method + " at " + host_);
    if (res->status != 200)
        throw ChainError("RPC HTTP " + std::to_string(res->status) + " calling " + method);

    json doc;
    try {
        doc = json::parse(res->body);
    } catch (const json::exception&) {
        throw ChainError("RPC returned unparseable body for " + method);
    }
    if (doc.contains("error"))
        throw ChainError("RPC error for " + method + ": " + doc["error"].dump());
    if (!doc.contains("result") || !doc["result"].is_string())
        throw ChainError("RPC result missing for " + method);
    return doc["result"].get<std::string>();
}

std::string RpcClient::block_tag() {
    {
        std::lock_guard lock(mutex_);
        if (block_tag_)
            return *block_tag_;
    }
    const std::string tag = call("eth_blockNumber", "[]");
    std::lock_guard lock(mutex_);
    if (!block_tag_)
        block_tag_ = tag;
    return *block_tag_;
}

Bytes RpcClient::get_code(const ContractId& id) {
    const std::string tag = block_tag();
    const std::string result =
        call("eth_getCode", "[\"" + id.to_string() + "\",\"" + tag + "\"]");
    const auto bytes = from_hex(result);
    if (!bytes)
        throw ChainError("eth_getCode returned malformed hex");
    return *bytes;
}

u256 RpcClient::get_storage(const ContractId& id, const u256& slot) {
    const std::string tag = block_tag();
    const std::string result = call("eth_getStorageAt",
        "[\"" + id.to_string() + "\",\"" + word_to_hex(slot) + "\",\"" + tag + "\"]");
    const auto word = word_from_hex(result);
    if (!word)
        throw ChainError("eth_getStorageAt returned malformed hex");
    return *word;
}

}  // namespace reenscan
