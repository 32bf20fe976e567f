#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bilap {

double torsion_ball(int n, double R, double r) {
    if (n < 1 || R <= 0) throw BilapError(2, "torsion_ball needs n >= 1, R > 0");
    if (r < 0 || r > R) throw BilapError(2, "torsion_ball: r outside [0,R]");
    return (R * R - r * r) / (2.0 * n);
}

double hinged_ball_lambda(int n, double R) {
    if (n < 1 || R <= 0) throw BilapError(2, "hinged_ball_lambda needs n >= 1, R > 0");
    return 2.0 * n / (R * R);
}

double clamped_profile_w(const ClampedProfileParams& params, double r) {
    const int n = params.n;
    const double R = params.R;
    if (n < 1 || R <= 0) throw BilapError(2, "clamped profile needs n >= 1, R > 0");
    if (r < 0 || r > R) throw BilapError(2, "clamped profile: r outside [0,R]");
    if (n == 1) {
        if (R != 1.0)
            throw BilapError(2, "n=1 clamped profile is defined on (-1,1) only");
        return r < 0.5 ? 0.25 - r * r / 2 : r * r / 2 - r + 0.5;
    }
    const double b = params.break_radius();
    if (R <= b) return (R * R - r * r) / (2.0 * n);
    if (n == 2) {
        if (r <= b) return 0.25 - R * R / 4 + std::log(R) / 2 + std::log(2.0) / 4 - r * r / 4;
        return r * r / 4 - std::log(r) / 2 - R * R / 4 + std::log(R) / 2;
    }
    const double c = n * (n - 2.0);
    if (r <= b)
        return b * b / n - R * R / (2 * n) - std::pow(R, 2.0 - n) / c +
               std::pow(2.0, 1.0 - 2.0 / n) / c - r * r / (2 * n);
    return r * r / (2 * n) + std::pow(r, 2.0 - n) / c - R * R / (2 * n) -
           std::pow(R, 2.0 - n) / c;
}

double clamped_ball_lambda(int n, double R) {
    if (n < 1 || R <= 0) throw BilapError(2, "clamped_ball_lambda needs n >= 1, R > 0");
    double val;
    if (n == 1)
        val = 4.0;
    else if (n == 2)
        val = 4.0 / std::log(2.0);
    else
        val = std::pow(2.0, 2.0 / n) * (n - 2.0) / (1.0 - std::pow(2.0, 2.0 / n - 1.0));
    if (n >= 2) {
        double w0 = clamped_profile_w({n, 1.0}, 0.0);
        if (std::abs(val - 1.0 / w0) > 1e-10 * val)
            throw BilapError(3, "clamped ball eigenvalue disagrees with 1/w(0)");
    }
    return val / (R * R);
}

std::vector<int> center_rank_order(const GridDomain& d) {
    std::vector<int> order(d.m());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        long long ai = d.ix0 + d.node_ij[a][0], aj = d.iy0 + d.node_ij[a][1];
        long long bi = d.ix0 + d.node_ij[b][0], bj = d.iy0 + d.node_ij[b][1];
        long long ra = ai * ai + aj * aj, rb = bi * bi + bj * bj;
        if (ra != rb) return ra < rb;
        if (ai != bi) return ai < bi;
        return aj < bj;
    });
    return order;
}

namespace {

// values sorted for assignment: by value desc when nonneg, else |value| desc;
// equal keys keep original index order
std::vector<double> sorted_for_assignment(const std::vector<double>& v, bool nonneg) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        double ka = nonneg ? v[a] : std::abs(v[a]);
        double kb = nonneg ? v[b] : std::abs(v[b]);
        return ka > kb;
    });
    std::vector<double> out(v.size());
    for (size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
    return out;
}

}  // namespace

Symmetrized schwarz_symmetrize(const ScalarField& u, bool nonneg) {
    if (nonneg)
        for (double t : u.v)
            if (t < 0) throw BilapError(2, "nonneg symmetrization given a negative value");
    Symmetrized s{quasi_disk_domain(u.size(), u.dom->h), {}};
    std::vector<double> ranked = sorted_for_assignment(u.v, nonneg);
    std::vector<int> order = center_rank_order(s.disk);
    s.values.assign(u.v.size(), 0.0);
    for (size_t k = 0; k < order.size(); ++k) s.values[order[k]] = ranked[k];
    return s;
}

BathtubResult bathtub_maximize(const ScalarField& f, double a, double b, double ell) {
    if (!(a <= ell && ell <= b)) throw BilapError(2, "bathtub average outside [a,b]");
    const int m = f.size();
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int p, int q) { return f.v[p] > f.v[q]; });

    // mean over k nodes at level b, rest a; pick k with mean closest to ell
    int best_k = 0;
    double best_gap = std::abs(a - ell);
    for (int k = 1; k <= m; ++k) {
        double avg = a + (b - a) * (static_cast<double>(k) / m);
        double gap = std::abs(avg - ell);
        if (gap < best_gap - 1e-15 * (std::abs(b) + std::abs(a) + 1.0)) {
            best_gap = gap;
            best_k = k;
        }
    }
    BathtubResult res;
    res.g = ScalarField(*f.dom, a);
    for (int k = 0; k < best_k; ++k) res.g.v[idx[k]] = b;
    res.achieved_average = a + (b - a) * (static_cast<double>(best_k) / m);
    res.threshold = best_k > 0 ? f.v[idx[best_k - 1]]
                               : std::numeric_limits<double>::infinity();
    double hn = std::pow(f.dom->h, f.dom->dim);
    double obj = 0.0;
    for (int k = 0; k < m; ++k) obj += f.v[k] * res.g.v[k];
    res.objective = obj * hn;
    return res;
}

TalentiReport talenti_compare(const ScalarField& f, const GridDomain& d) {
    for (double t : f.v)
        if (t < 0) throw BilapError(2, "talenti comparison needs f >= 0");
    ScalarField u = poisson_solve(f, d);
    Symmetrized fs = schwarz_symmetrize(f, true);
    ScalarField fstar(fs.disk);
    fstar.v = fs.values;
    ScalarField v = poisson_solve(fstar, fs.disk);

    std::vector<double> u_ranked = u.v;
    std::sort(u_ranked.begin(), u_ranked.end(), std::greater<double>());
    std::vector<int> order = center_rank_order(fs.disk);
    TalentiReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < order.size(); ++k)
        rep.max_violation = std::max(rep.max_violation, u_ranked[k] - v.v[order[k]]);
    for (double t : u.v) rep.max_u = std::max(rep.max_u, t);
    for (double t : v.v) rep.max_v = std::max(rep.max_v, t);
    return rep;
}

}  // namespace bilap
