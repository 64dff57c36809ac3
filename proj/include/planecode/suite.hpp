#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace planecode {

struct SuiteOptions {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t search_budget = 1'000'000'000;
    std::uint32_t random_words = 500;
    /// Plane file for the ingestion row; by default PG(2,9) is exported and re-read.
    std::optional<std::string> plane_file;
    /// Row ids to run ("ingestion", "1".."11", "experiments"); empty runs everything.
    std::set<std::string> only;
};

struct SuiteRow {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    std::optional<double> limit_seconds;
    nlohmann::json data = nlohmann::json::object();
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    nlohmann::json experiments = nlohmann::json::object();
    bool passed = true;
    double seconds = 0;
};

/// Runs the acceptance rows in order. on_row sees each row as it finishes.
SuiteReport run_acceptance(const SuiteOptions& opts, const std::function<void(const SuiteRow&)>& on_row = {});

/// One line: "<id> PASS|FAIL <title> (<seconds> s[ / limit]) <detail>".
std::string format_row(const SuiteRow& row);
nlohmann::json to_json(const SuiteRow& row);
nlohmann::json to_json(const SuiteReport& report);

}  // namespace planecode
