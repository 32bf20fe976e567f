#pragma once
#include "operators.hpp"

namespace bilap {

std::string fmt17(double v);  // %.17g, round-trips doubles exactly

// Field dump: header `dim nx [ny] h`, then the full bounding lattice row by
// row; nodes outside the mask print as nan. Text, locale-independent.
std::string field_to_text(const ScalarField& u);

struct FieldData {
    int dim = 0, nx = 0, ny = 1;
    double h = 0.0;
    std::vector<double> values;  // nx*ny row-major, nan = outside mask
};
FieldData parse_field_text(const std::string& text);

// Comma-separated cells, LF endings, no quoting; our tables never need it.
std::string csv_line(const std::vector<std::string>& cells);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace bilap
