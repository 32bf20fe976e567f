#pragma once
#include "serialize.hpp"

namespace bilap {

// Self-contained SVG text, no external assets, byte-deterministic for fixed
// input. Heatmaps are one rect per masked cell plus a colorbar; curves and
// traces are polylines with axes and 5 tick labels per axis.
std::string svg_heatmap(const FieldData& f);
std::string svg_curve(const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::string& xlabel, const std::string& ylabel);
// x = 1/p against lambda, markers on data, fitted a + b/p line drawn to 1/p = 0
std::string svg_trace(const std::vector<double>& ps, const std::vector<double>& lams,
                      double fit_a, double fit_b);

}  // namespace bilap
