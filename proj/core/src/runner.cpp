// Copyright 2026 The reenscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "reenscan/runner.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "reenscan/rpc_client.hpp"

namespace reenscan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Hex inputs carry no account identity; a sentinel keeps self-address
// matching disabled without colliding with plausible fixture addresses.
const ContractId kPseudoEntry = [] {
    ContractId id;
    id.bytes.fill(0xff);
    return id;
}();

struct Session {
    std::shared_ptr<RecordingBackend> recorder;
    std::shared_ptr<CachingClient> client;
    std::unique_ptr<AnalysisCache> cache;
};

Session make_session(const RunConfig& cfg) {
    if (cfg.fixtures_dir && cfg.rpc_url)
        throw RunError("configure either --fixtures or --rpc, not both");

    std::shared_ptr<ChainBackend> backend;
    if (cfg.rpc_url) {
        try {
            backend = std::make_shared<RpcClient>(*cfg.rpc_url);
        } catch (const ChainError& e) {
            throw RunError(e.what());
        }
    } else if (cfg.fixtures_dir) {
        if (!fs::is_directory(*cfg.fixtures_dir))
            throw RunError("fixture directory not found: " + cfg.fixtures_dir->string());
        backend = std::make_shared<FixtureStore>(*cfg.fixtures_dir);
    }

    Session s;
    if (cfg.record_dir) {
        if (!backend)
            throw RunError("--record requires a backend to record from");
        s.recorder = std::make_shared<RecordingBackend>(std::move(backend), *cfg.record_dir);
        backend = s.recorder;
    }
    s.client = std::make_shared<CachingClient>(std::move(backend));

    HookRegistry hooks = HookRegistry::builtin();
    if (cfg.hooks_path) {
        auto loaded = HookRegistry::load(*cfg.hooks_path);
        if (!loaded)
            throw RunError("cannot read hook registry: " + cfg.hooks_path->string());
        hooks = std::move(*loaded);
    }
    s.cache = std::make_unique<AnalysisCache>(s.client, std::move(hooks));
    return s;
}

struct Input {
    std::optional<ContractId> address;
    std::optional<std::string> hex;  // raw hex text
    std::string describe;
};

Bytes parse_hex_input(const std::string& text) {
    const auto bytes = from_hex(text);
    if (!bytes)
        throw RunError("input is not valid hex");
    return *bytes;
}

RunOutcome run_one(Session& session, const RunConfig& cfg, const Input& input) {
    ContractId entry_id;
    bool known = false;
    std::shared_ptr<const ContractAnalysis> entry_analysis;

    if (input.address) {
        if (!session.client->has_backend())
            throw RunError("address input requires --fixtures or --rpc");
        entry_id = *input.address;
        known = true;
        try {
            entry_analysis = session.cache->by_address(entry_id);
        } catch (const ChainError& e) {
            throw RunError(std::string("cannot fetch entry contract: ") + e.what());
        }
    } else {
        const Bytes bytes = parse_hex_input(*input.hex);
        entry_id = kPseudoEntry;
        entry_analysis = analyze_contract(
            Bytecode{bytes, BytecodeKind::unknown}, session.cache->hooks());
    }

    DetectOptions options;
    options.graph.depth_limit = cfg.depth_limit;
    options.graph.fanout_cap = cfg.fanout_cap;

    RunOutcome outcome;
    XGraph graph;
    outcome.report = detect(*session.cache, entry_analysis, entry_id, known, options,
        cfg.emit_xgraph ? &graph : nullptr);
    if (session.recorder)
        session.recorder->flush();
    outcome.report_json = report_to_json(outcome.report);
    if (cfg.emit_xgraph)
        outcome.xgraph_json = xgraph_to_json(graph);
    outcome.exit_code = outcome.report.verdict == Verdict::attacker ? 2 : 0;
    return outcome;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw RunError("cannot write " + path.string());
    out << text;
}

std::string sanitize(std::string s) {
    for (auto& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
            c = '_';
    if (s.size() > 48)
        s.resize(48);
    return s;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
    const int inputs = (cfg.hex ? 1 : 0) + (cfg.hex_file ? 1 : 0) + (cfg.address ? 1 : 0);
    if (inputs != 1)
        throw RunError("exactly one of --hex, --hex-file, --address is required");

    Session session = make_session(cfg);

    Input input;
    if (cfg.address) {
        input.address = *cfg.address;
        input.describe = cfg.address->to_string();
    } else if (cfg.hex_file) {
        std::ifstream in(*cfg.hex_file);
        if (!in)
            throw RunError("cannot read " + cfg.hex_file->string());
        std::stringstream buf;
        buf << in.rdbuf();
        input.hex = buf.str();
        input.describe = cfg.hex_file->string();
    } else {
        input.hex = *cfg.hex;
        input.describe = "<hex>";
    }

    RunOutcome outcome = run_one(session, cfg, input);
    if (cfg.out_path) {
        write_text(*cfg.out_path, outcome.report_json);
        if (outcome.xgraph_json) {
            fs::path xp = *cfg.out_path;
            xp.replace_extension(".xgraph.json");
            write_text(xp, *outcome.xgraph_json);
        }
    }
    return outcome;
}

BatchOutcome run_batch(const fs::path& list_file, const RunConfig& cfg) {
    std::ifstream in(list_file);
    if (!in)
        throw RunError("cannot read batch list: " + list_file.string());

    std::vector<Input> inputs;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        line.erase(0, start);
        if (line.empty())
            continue;

        Input item;
        item.describe = line;
        if (line.size() == 42 && line.rfind("0x", 0) == 0) {
            const auto addr = ContractId::parse(line);
            if (addr)
                item.address = *addr;
            else
                item.hex = line;
        } else if (fs::exists(line)) {
            std::ifstream f(line);
            std::stringstream buf;
            buf << f.rdbuf();
            item.hex = buf.str();
        } else {
            item.hex = line;  // raw hex; validated per item
        }
        inputs.push_back(std::move(item));
    }

    Session session = make_session(cfg);

    struct ItemResult {
        std::string input;
        std::optional<RunOutcome> outcome;
        std::string error;
    };
    std::vector<ItemResult> results(inputs.size());

    const int jobs = std::max(1, cfg.jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= inputs.size())
                return;
            results[i].input = inputs[i].describe;
            try {
                results[i].outcome = run_one(session, cfg, inputs[i]);
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
        }
    };
    if (jobs == 1 || inputs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    BatchOutcome batch;
    batch.items = inputs.size();
    json items = json::array();
    std::map<std::string, size_t> by_type;
    int64_t total_ms = 0;
    size_t timed = 0;

    for (size_t i = 0; i < results.size(); ++i) {
        ItemResult& r = results[i];
        json item{{"input", r.input}};
        if (!r.outcome) {
            ++batch.errors;
            item["error"] = r.error;
        } else {
            const DetectionReport& rep = r.outcome->report;
            item["verdict"] = to_string(rep.verdict);
            item["findings"] = rep.findings.size();
            total_ms += rep.timing_ms;
            ++timed;
            if (rep.verdict == Verdict::attacker) {
                ++batch.attacker;
                for (const Finding& f : rep.findings)
                    ++by_type[to_string(f.attack_type)];
            } else {
                ++batch.benign;
            }
            if (cfg.out_path) {
                char prefix[16];
                std::snprintf(prefix, sizeof(prefix), "%04zu_", i);
                const fs::path path =
                    *cfg.out_path / (prefix + sanitize(r.input) + ".json");
                write_text(path, r.outcome->report_json);
                item["report"] = path.string();
            }
        }
        items.push_back(std::move(item));
    }

    json types = json::object();
    for (const auto& [t, n] : by_type)
        types[t] = n;
    const json summary{
        {"schema_version", 1},
        {"items", batch.items},
        {"attacker", batch.attacker},
        {"benign", batch.benign},
        {"errors", batch.errors},
        {"findings_by_attack_type", std::move(types)},
        {"mean_timing_ms", timed == 0 ? 0.0 : double(total_ms) / double(timed)},
        {"results", std::move(items)},
    };
    batch.summary_json = summary.dump(2) + "\n";
    if (cfg.out_path)
        write_text(*cfg.out_path / "summary.json", batch.summary_json);

    batch.exit_code = batch.attacker > 0 ? 2 : 0;
    return batch;
}

}  // namespace reenscan
