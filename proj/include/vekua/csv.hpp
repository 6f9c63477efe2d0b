#pragma once

// Text formats. All floats are written with %.17g so every double
// round-trips bit-exactly and re-serialization is byte-identical.

#include <string>
#include <vector>

#include "vekua/fields.hpp"

namespace vekua {

std::string format_double(double v); // %.17g
std::string format_row(const std::vector<double>& values);

// train.csv: header "x0[,x1],y", one row per sample.
void write_samples_csv(const std::string& path, const SampleSet& samples);
SampleSet read_samples_csv(const std::string& path);

// grid.csv: header "x0[,x1],y_true", one row per grid node, x1 outer.
void write_grid_csv(const std::string& path, const EvalGrid& grid);
EvalGrid read_grid_csv(const std::string& path);

// Generic value table: coordinates plus one trailing value column. Used by
// render and the prediction dump.
struct ValueTable {
    std::size_t dim = 0;
    DenseMatrix x;
    std::vector<double> values;
};
ValueTable read_value_table(const std::string& path);
void write_value_table(const std::string& path, const std::string& value_name,
                       const DenseMatrix& x, const std::vector<double>& values);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

} // namespace vekua
