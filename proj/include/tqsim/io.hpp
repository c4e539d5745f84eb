// io.hpp — CSV emission at full round-trip precision and JSON provenance sidecars.

#pragma once

#include <nlohmann/json_fwd.hpp>

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace tqsim {

using CsvCell = std::variant<double, long long, std::string>;

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    void row(const std::vector<CsvCell>& cells);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

void write_json(const std::string& path, const nlohmann::json& doc);

void ensure_directory(const std::string& path);

}  // namespace tqsim
