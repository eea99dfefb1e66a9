/*
 * CSV readers/writers. Doubles are printed with std::to_chars (shortest
 * round-trip form) so written files re-parse to bit-identical values and
 * repeated runs produce byte-identical output.
 */
#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphtrack/edge_space.hpp"

namespace graphtrack {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);
double parse_double(std::string_view s, const char* context);

struct SignalMatrix {
    std::vector<std::string> channel_names;  // empty when the file had no header
    long rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major

    std::span<const double> row(long r) const {
        return {values.data() + static_cast<std::size_t>(r) * cols,
                static_cast<std::size_t>(cols)};
    }
};

// One row per time sample, N numeric columns, optional header naming
// channels (auto-detected). Rejects ragged or non-numeric content with
// row/column diagnostics.
SignalMatrix read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const SignalMatrix& m);

// rows `i,j,weight` with 1-based endpoints, i<j, in canonical order
void write_edge_csv(const std::filesystem::path& path, const PairIndexMap& g,
                    std::span<const double> w);
std::vector<double> read_edge_csv(const std::filesystem::path& path, const PairIndexMap& g);

// flat edge vector in canonical order, one value per line under a `weight` header
void write_edge_vector_csv(const std::filesystem::path& path, std::span<const double> w);
std::vector<double> read_edge_vector_csv(const std::filesystem::path& path);

// generic table writer: header + rows of preformatted cells
void write_table_csv(const std::filesystem::path& path,
                     std::span<const std::string> header,
                     const std::vector<std::vector<std::string>>& rows);

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path);

}  // namespace graphtrack
