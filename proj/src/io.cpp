#include "corrmetric/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace corrmetric {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t row,
                  std::size_t col) {
    if (cell.empty()) {
        throw ParseError(path, row, col, "empty cell");
    }
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) {
        throw ParseError(path, row, col, "not a number: '" + cell + "'");
    }
    return value;
}

// Non-blank lines with their 1-based physical line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error("cannot open file: " + path);
    }
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        lines.emplace_back(lineno, line);
    }
    return lines;
}

std::string fmt_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw Error("cannot open file for writing: " + path);
    }
    return file;
}

}  // namespace

DataMatrix read_data_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2) {
        throw ParseError(path, lines.empty() ? 1 : lines[0].first, 1,
                         "need a header row and at least one observation row");
    }
    const std::vector<std::string> names = split_fields(lines[0].second);
    const std::size_t n_vars = names.size();

    Eigen::MatrixXd values(static_cast<Eigen::Index>(lines.size() - 1),
                           static_cast<Eigen::Index>(n_vars));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& [lineno, line] = lines[r];
        const auto fields = split_fields(line);
        if (fields.size() != n_vars) {
            throw ParseError(path, lineno, 1,
                             "expected " + std::to_string(n_vars) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < n_vars; ++c) {
            values(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c)) =
                parse_cell(fields[c], path, lineno, c + 1);
        }
    }
    return DataMatrix(std::move(values), names);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError(path, 1, 1, "empty matrix file");
    }
    const std::size_t n_cols = split_fields(lines[0].second).size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(lines.size()),
                      static_cast<Eigen::Index>(n_cols));
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto& [lineno, line] = lines[r];
        const auto fields = split_fields(line);
        if (fields.size() != n_cols) {
            throw ParseError(path, lineno, 1,
                             "expected " + std::to_string(n_cols) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_cell(fields[c], path, lineno, c + 1);
        }
    }
    return m;
}

TransformSpec read_transform_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto& [lineno, line] = lines[r];
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw ParseError(path, lineno, 1, "expected two fields (x, f(x))");
        }
        xs.push_back(parse_cell(fields[0], path, lineno, 1));
        ys.push_back(parse_cell(fields[1], path, lineno, 2));
    }
    if (xs.empty() || xs[0] != 0.0 || ys[0] != 0.0) {
        throw ParseError(path, lines.empty() ? 1 : lines[0].first, 1,
                         "first row must be \"0, 0\"");
    }
    try {
        return TransformSpec::sampled(std::move(xs), std::move(ys));
    } catch (const Error& e) {
        throw ParseError(path, lines[0].first, 1, e.what());
    }
}

void write_data_csv(std::ostream& out, const DataMatrix& data) {
    for (std::size_t c = 0; c < data.var_names().size(); ++c) {
        if (c > 0) out << ',';
        out << data.var_names()[c];
    }
    out << '\n';
    for (Eigen::Index r = 0; r < data.n_obs(); ++r) {
        for (Eigen::Index c = 0; c < data.n_vars(); ++c) {
            if (c > 0) out << ',';
            out << fmt_full(data.values()(r, c));
        }
        out << '\n';
    }
}

void write_data_csv(const std::string& path, const DataMatrix& data) {
    auto file = open_output(path);
    write_data_csv(file, data);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "theta,pearson_margin,abs_pearson_margin,sqrt_pearson_margin,"
           "psquared_margin,violated_flags\n";
    for (const SweepRow& row : rows) {
        out << fmt_full(row.theta) << ',' << fmt_full(row.margins.pearson) << ','
            << fmt_full(row.margins.abs_pearson) << ',' << fmt_full(row.margins.sqrt_pearson)
            << ',' << fmt_full(row.margins.psquared) << ','
            << (row.pearson_violated ? '1' : '0') << (row.abs_pearson_violated ? '1' : '0')
            << (row.sqrt_pearson_violated ? '1' : '0') << (row.psquared_violated ? '1' : '0')
            << '\n';
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    auto file = open_output(path);
    write_sweep_csv(file, rows);
}

}  // namespace corrmetric
