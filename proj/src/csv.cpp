#include "uplink/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace uplink::io {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("csv header must not be empty");
    }
}

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("csv row width does not match header");
    }
    rows_.push_back(std::move(row));
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out += (i ? "," : "") + header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, to_string()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace uplink::io
