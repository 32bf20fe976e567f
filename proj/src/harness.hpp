#pragma once
#include "eigensolver.hpp"
#include "oracles.hpp"

namespace bilap {

struct ExperimentRow {
    std::string domain_id;
    BcKind bc = BcKind::hinged;
    double measure = 0.0;
    double equal_area_radius = 0.0;
    double lambda_inf_estimate = 0.0;
    double lambda_ball_oracle = 0.0;
    double ratio = 0.0;
    std::string trace_ref;
    bool flagged = false;  // catalog shape outside the C^{1,1} class, informational row
    bool ok = false;
    std::string error;
    ContinuationTrace trace;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<double> p_schedule;
    double tol = 0.0;
    double wall_seconds = 0.0;  // console metadata, never serialized
};

// One continuation per spec; per-row equal-measure ball oracle and ratio.
// A failing domain is marked on its row and the sweep continues.
ExperimentResult faber_krahn_experiment(const std::vector<ShapeSpec>& specs, BcKind bc,
                                        const std::vector<double>& p_schedule, double tol,
                                        const std::vector<std::string>* labels = nullptr);

struct ConvergenceRow {
    double resolution = 0.0;  // h for 2D shapes, cell count for intervals
    double h = 0.0;
    int m = 0;
    double lambda = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double observed_order = 0.0;  // from the three finest rows; nan if non-monotone
    double extrapolated = 0.0;    // Richardson at the observed order
};

// Fixed-p eigensolve across >= 3 resolutions of one shape.
ConvergenceTable convergence_study(const ShapeSpec& spec, BcKind bc, double p,
                                   const std::vector<double>& resolutions, double tol);

struct BallRatioRow {
    int n = 0;
    double lambda_clamped = 0.0;  // clamped ball, R = 1
    double lambda_hinged = 0.0;   // 2n
    double ratio = 0.0;
};

// Clamped/hinged limit eigenvalue ratio on unit balls across dimension.
// Formula evaluation only, no solving.
std::vector<BallRatioRow> ball_ratio_table(const std::vector<int>& n_values);

}  // namespace bilap
