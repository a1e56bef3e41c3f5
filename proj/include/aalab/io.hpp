#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aalab/map.hpp"

namespace aalab {

inline constexpr const char* kVersion = "0.1.0";

// Schema: {"A": [[int,int],[int,int]], "a","b","c","d","r0","r1": numbers,
// "bump": "smooth"|"poly9", "seed": integer}. Throws std::runtime_error with
// a readable message on malformed documents.
MapSpec mapspec_from_json(const nlohmann::json& j);
nlohmann::json mapspec_to_json(const MapSpec& spec);

MapSpec load_mapspec(const std::string& path);

// Round-trip exact formatting for reproducible CSV output.
std::string format_double(double x);

// RFC 4180 rows: comma separated, CRLF line endings.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& fields);
    void numeric_row(const std::vector<double>& fields);

private:
    struct Impl;
    Impl* impl_;
};

struct StageRecord {
    std::string name;
    double seconds = 0.0;
    std::vector<std::string> outputs;
    bool ran = false;
    std::string note;
};

struct CriterionRecord {
    std::string id;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct RunManifest {
    nlohmann::json config;
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::vector<StageRecord> stages;
    std::vector<CriterionRecord> criteria;

    nlohmann::json to_json() const;
    void write(const std::string& path) const;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace aalab
