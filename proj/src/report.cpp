#include "heis/report.hpp"

#include <fstream>
#include <stdexcept>

namespace heis {

Json RunConfig::to_json() const {
    Json j;
    j["grid_n"] = grid_n;
    j["tol"] = tol;
    j["q_list"] = q_list;
    j["seed"] = seed;
    j["steps"] = steps;
    j["samples"] = samples;
    j["threads"] = threads;
    j["cache_path"] = cache_path;
    return j;
}

Json make_report(const std::string& command, const RunConfig& cfg, Json result) {
    Json j;
    j["schema"] = "heisdyn-report/1";
    j["version"] = "1.0.0";
    j["command"] = command;
    j["config"] = cfg.to_json();
    j["result"] = std::move(result);
    return j;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open CSV path: " + path);
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    out.precision(17);
    for (auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

}  // namespace heis
