#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace bilap {

ExperimentResult faber_krahn_experiment(const std::vector<ShapeSpec>& specs, BcKind bc,
                                        const std::vector<double>& p_schedule, double tol,
                                        const std::vector<std::string>* labels) {
    if (labels && labels->size() != specs.size())
        throw BilapError(2, "label count does not match domain count");
    for (size_t i = 1; i < specs.size(); ++i) {
        bool a = specs[i - 1].kind == ShapeKind::interval;
        bool b = specs[i].kind == ShapeKind::interval;
        if (a != b) throw BilapError(2, "sweep mixes 1D and 2D domains");
    }

    auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    res.p_schedule = p_schedule;
    res.tol = tol;
    for (size_t i = 0; i < specs.size(); ++i) {
        ExperimentRow row;
        std::string label = labels && !(*labels)[i].empty()
                                ? (*labels)[i]
                                : std::string(shape_kind_name(specs[i].kind)) + "-" +
                                      std::to_string(i);
        row.domain_id = label;
        row.bc = bc;
        row.trace_ref = "trace_" + label + ".csv";
        row.flagged = specs[i].kind == ShapeKind::lshape;
        try {
            GridDomain d = make_domain(specs[i]);
            row.measure = measure(d);
            row.equal_area_radius = equal_area_radius(d);
            row.trace = continuation(d, bc, p_schedule, tol);
            row.lambda_inf_estimate = row.trace.lambda_inf_estimate;
            row.lambda_ball_oracle = bc == BcKind::hinged
                                         ? hinged_ball_lambda(d.dim, row.equal_area_radius)
                                         : clamped_ball_lambda(d.dim, row.equal_area_radius);
            row.ratio = row.lambda_inf_estimate / row.lambda_ball_oracle;
            row.ok = true;
        } catch (const BilapError& e) {
            row.ok = false;
            row.error = e.what();
            row.lambda_inf_estimate = std::nan("");
            row.lambda_ball_oracle = std::nan("");
            row.ratio = std::nan("");
        }
        res.rows.push_back(std::move(row));
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

ConvergenceTable convergence_study(const ShapeSpec& spec, BcKind bc, double p,
                                   const std::vector<double>& resolutions, double tol) {
    if (resolutions.size() < 3)
        throw BilapError(2, "convergence study needs at least 3 resolutions");
    ConvergenceTable tab;
    for (double r : resolutions) {
        ShapeSpec s = spec;
        if (s.kind == ShapeKind::interval) {
            if (r < 2 || r != std::floor(r))
                throw BilapError(2, "interval resolution must be an integer cell count");
            s.M = static_cast<int>(r);
        } else {
            if (r <= 0) throw BilapError(2, "resolution h must be positive");
            s.h = r;
        }
        GridDomain d = make_domain(s);
        EigenPair pair = bc == BcKind::hinged ? solve_hinged_p(d, p, nullptr, tol)
                                              : solve_clamped_p(d, p, nullptr, tol);
        tab.rows.push_back({r, d.h, d.m(), pair.lambda});
    }

    size_t n = tab.rows.size();
    // sort finest-last by h so the Richardson triple is well defined
    std::sort(tab.rows.begin(), tab.rows.end(),
              [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.h > b.h; });
    double h1 = tab.rows[n - 3].h, h2 = tab.rows[n - 2].h, h3 = tab.rows[n - 1].h;
    double l1 = tab.rows[n - 3].lambda, l2 = tab.rows[n - 2].lambda,
           l3 = tab.rows[n - 1].lambda;
    double r12 = h1 / h2, r23 = h2 / h3;
    double num = l1 - l2, den = l2 - l3;
    if (std::abs(r12 - r23) > 1e-9 * r12 || num * den <= 0) {
        tab.observed_order = std::nan("");
        tab.extrapolated = l3;
        return tab;
    }
    tab.observed_order = std::log(num / den) / std::log(r12);
    double rq = std::pow(r23, tab.observed_order);
    tab.extrapolated = l3 + (l3 - l2) / (rq - 1.0);
    return tab;
}

std::vector<BallRatioRow> ball_ratio_table(const std::vector<int>& n_values) {
    std::vector<BallRatioRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        BallRatioRow r;
        r.n = n;
        r.lambda_clamped = clamped_ball_lambda(n, 1.0);
        r.lambda_hinged = 2.0 * n;
        r.ratio = r.lambda_clamped / r.lambda_hinged;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace bilap
