#include "uqdd/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace uqdd {

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_)
        throw std::runtime_error("cannot open for writing: " + path);
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) { raw_row(names); }

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format(v));
    raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

int CsvTable::col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return static_cast<int>(i);
    throw std::runtime_error("csv column not found: " + name);
}

const std::string& CsvTable::cell(int row, const std::string& name) const {
    return rows.at(row)[col(name)];
}

Eigen::VectorXd CsvTable::column(const std::string& name) const {
    const int c = col(name);
    Eigen::VectorXd v(size());
    for (int r = 0; r < size(); ++r) {
        const std::string& s = rows[r][c];
        const char* b = s.data();
        const char* e = b + s.size();
        auto res = std::from_chars(b, e, v[r]);
        if (res.ec != std::errc{} || res.ptr != e)
            throw std::runtime_error("non-numeric csv cell '" + s + "' in column " + name);
    }
    return v;
}

static std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty csv: " + path);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    table.columns = split_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = split_line(line);
        if (cells.size() != table.columns.size())
            throw std::runtime_error("ragged csv row in " + path);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

} // namespace uqdd
