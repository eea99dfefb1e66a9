#include "graphtrack/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace graphtrack {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* context) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r'))
        --last;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw DataError(std::string(context) + ": cannot parse '" + std::string(s) +
                        "' as a number");
    if (!std::isfinite(v))
        throw DataError(std::string(context) + ": non-finite value '" + std::string(s) + "'");
    return v;
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

bool parses_as_double(const std::string& s) {
    double v;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
    if (first == last) return false;
    const auto res = std::from_chars(first, last, v);
    return res.ec == std::errc{} && res.ptr == last;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}
}  // namespace

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

SignalMatrix read_signal_csv(const std::filesystem::path& path) {
    const auto rows = read_csv_rows(path);
    if (rows.empty()) throw DataError("'" + path.string() + "': empty file");

    SignalMatrix m;
    std::size_t first_data = 0;
    // header row: any cell that does not parse as a number
    bool header = false;
    for (const auto& cell : rows[0])
        if (!parses_as_double(cell)) header = true;
    if (header) {
        m.channel_names = rows[0];
        first_data = 1;
        if (rows.size() == 1) throw DataError("'" + path.string() + "': header but no data rows");
    }

    m.cols = static_cast<int>(rows[first_data].size());
    m.rows = static_cast<long>(rows.size() - first_data);
    if (header && static_cast<int>(m.channel_names.size()) != m.cols)
        throw DataError("'" + path.string() + "': header has " +
                        std::to_string(m.channel_names.size()) + " names but row 1 has " +
                        std::to_string(m.cols) + " columns");
    m.values.reserve(static_cast<std::size_t>(m.rows) * m.cols);
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const long line_no = static_cast<long>(r + 1);
        if (static_cast<int>(rows[r].size()) != m.cols)
            throw DataError("'" + path.string() + "': row " + std::to_string(line_no) +
                            " has " + std::to_string(rows[r].size()) + " columns, expected " +
                            std::to_string(m.cols));
        for (int c = 0; c < m.cols; ++c) {
            const std::string ctx = "'" + path.string() + "' row " + std::to_string(line_no) +
                                    " column " + std::to_string(c + 1);
            m.values.push_back(parse_double(rows[r][c], ctx.c_str()));
        }
    }
    return m;
}

void write_signal_csv(const std::filesystem::path& path, const SignalMatrix& m) {
    auto out = open_for_write(path);
    if (!m.channel_names.empty()) {
        for (int c = 0; c < m.cols; ++c)
            out << (c ? "," : "") << m.channel_names[c];
        out << '\n';
    }
    for (long r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        for (int c = 0; c < m.cols; ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

void write_edge_csv(const std::filesystem::path& path, const PairIndexMap& g,
                    std::span<const double> w) {
    if (w.size() != g.num_pairs())
        throw std::invalid_argument("write_edge_csv: edge vector length mismatch");
    auto out = open_for_write(path);
    out << "i,j,weight\n";
    const int n = g.n_nodes();
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            out << i + 1 << ',' << j + 1 << ',' << format_double(w[k]) << '\n';
}

std::vector<double> read_edge_csv(const std::filesystem::path& path, const PairIndexMap& g) {
    const auto rows = read_csv_rows(path);
    if (rows.empty() || rows[0] != std::vector<std::string>{"i", "j", "weight"})
        throw DataError("'" + path.string() + "': expected header i,j,weight");
    std::vector<double> w(g.num_pairs(), 0.0);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::string ctx = "'" + path.string() + "' row " + std::to_string(r + 1);
        if (rows[r].size() != 3) throw DataError(ctx + ": expected 3 columns");
        const int i = static_cast<int>(parse_double(rows[r][0], ctx.c_str()));
        const int j = static_cast<int>(parse_double(rows[r][1], ctx.c_str()));
        if (i < 1 || j <= i || j > g.n_nodes())
            throw DataError(ctx + ": endpoints must satisfy 1 <= i < j <= N");
        w[g.index_of(i - 1, j - 1)] = parse_double(rows[r][2], ctx.c_str());
    }
    return w;
}

void write_edge_vector_csv(const std::filesystem::path& path, std::span<const double> w) {
    auto out = open_for_write(path);
    out << "weight\n";
    for (double wk : w) out << format_double(wk) << '\n';
}

std::vector<double> read_edge_vector_csv(const std::filesystem::path& path) {
    const auto rows = read_csv_rows(path);
    if (rows.empty() || rows[0] != std::vector<std::string>{"weight"})
        throw DataError("'" + path.string() + "': expected header weight");
    std::vector<double> w;
    w.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::string ctx = "'" + path.string() + "' row " + std::to_string(r + 1);
        if (rows[r].size() != 1) throw DataError(ctx + ": expected 1 column");
        w.push_back(parse_double(rows[r][0], ctx.c_str()));
    }
    return w;
}

void write_table_csv(const std::filesystem::path& path,
                     std::span<const std::string> header,
                     const std::vector<std::vector<std::string>>& rows) {
    auto out = open_for_write(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << row[c];
        out << '\n';
    }
}

}  // namespace graphtrack
