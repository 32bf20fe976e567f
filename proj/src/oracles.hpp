#pragma once
#include <cmath>

#include "operators.hpp"

namespace bilap {

double torsion_ball(int n, double R, double r);
double hinged_ball_lambda(int n, double R);

struct ClampedProfileParams {
    int n = 2;
    double R = 1.0;
    double break_radius() const { return std::pow(2.0, -1.0 / n); }
};

// Two-regime ball profile solving -lap w = (+1 inside the break radius,
// -1 outside), w = 0 at r = R; n = 1 is the piecewise quadratic on (-1,1).
double clamped_profile_w(const ClampedProfileParams& params, double r);
double clamped_ball_lambda(int n, double R);

// Node values of u assigned over the equal-count quasi-disk in decreasing
// order along the center-distance ranking.
struct Symmetrized {
    GridDomain disk;
    std::vector<double> values;  // indexed by quasi-disk interior node
};
Symmetrized schwarz_symmetrize(const ScalarField& u, bool nonneg);

// interior indices of a quasi-disk domain in (center distance, row-major) rank order
std::vector<int> center_rank_order(const GridDomain& d);

struct BathtubResult {
    ScalarField g;
    double achieved_average = 0.0;
    double threshold = 0.0;
    double objective = 0.0;  // sum f_i g_i h^dim
};
// maximize <f,g> over two-level g in [a,b] with mean closest to ell
BathtubResult bathtub_maximize(const ScalarField& f, double a, double b, double ell);

struct TalentiReport {
    double max_violation = 0.0;
    double max_u = 0.0;
    double max_v = 0.0;
};
// -lap u = f on d vs -lap v = f* on the equal-count quasi-disk; reports
// max(u* - v) over disk nodes (nonpositive up to discretization error).
TalentiReport talenti_compare(const ScalarField& f, const GridDomain& d);

}  // namespace bilap
