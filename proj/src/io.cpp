#include "tqsim/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace tqsim {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), n_cols_(columns.size()) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
    if (cells.size() != n_cols_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        if (const double* d = std::get_if<double>(&cells[i])) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *d);
            out_ << buf;
        } else if (const long long* n = std::get_if<long long>(&cells[i])) {
            out_ << *n;
        } else {
            out_ << std::get<std::string>(cells[i]);
        }
    }
    out_ << '\n';
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open '" + path + "'");
    out << doc.dump(2) << '\n';
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + path + "'");
}

}  // namespace tqsim
