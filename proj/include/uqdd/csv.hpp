#pragma once

#include <Eigen/Dense>
#include <fstream>
#include <string>
#include <vector>

namespace uqdd {

/// Line-oriented CSV writer: comma separators, '\n' line ends, doubles at
/// 17 significant digits so values round-trip exactly.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

    static std::string format(double v);

private:
    std::ofstream out_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const; // throws if absent
    const std::string& cell(int row, const std::string& name) const;
    /// Column converted to doubles; throws std::runtime_error on a
    /// non-numeric cell.
    Eigen::VectorXd column(const std::string& name) const;
    int size() const { return static_cast<int>(rows.size()); }
};

/// Reads a CSV written by CsvWriter (header + rows, no quoting). Throws
/// std::runtime_error on a missing file or ragged rows.
CsvTable read_csv(const std::string& path);

} // namespace uqdd
