#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace heis {

using Json = nlohmann::json;

// Every CLI report embeds the configuration that produced it, so re-running
// a report's own config reproduces it.
struct RunConfig {
    int64_t grid_n = 256;
    double tol = 1e-6;
    std::vector<int64_t> q_list = {7, 11, 13};
    uint64_t seed = 1;
    int64_t steps = 100000;
    int64_t samples = 8;
    int threads = 0;  // 0 = library default
    std::string cache_path;

    Json to_json() const;
};

Json make_report(const std::string& command, const RunConfig& cfg, Json result);

// Plain CSV sidecar: one header row then data rows.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace heis
