// Acceptance gate: one line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../src/harness.hpp"

using namespace bilap;

namespace {

const std::vector<double> kSchedule{2, 4, 8, 16, 32, 48, 64, 80, 96, 112, 128};

struct Outcome {
    bool ok = false;
    std::string detail;
    double budget = 0.0;  // wall-clock limit in seconds, 0 = none
};

int g_failures = 0;

std::string fnum(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double rel_err(double x, double target) { return std::abs(x - target) / std::abs(target); }

void run(int idx, const char* title, const std::function<Outcome()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.ok && out.budget > 0 && secs > out.budget) {
        out.ok = false;
        out.detail += "  [over " + fnum(out.budget) + " s budget]";
    }
    std::printf("[%2d] %s  %-36s %s  (%.1f s)\n", idx, out.ok ? "PASS" : "FAIL", title,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.ok) ++g_failures;
}

ShapeSpec disk_spec(double R, double h) {
    ShapeSpec s;
    s.kind = ShapeKind::disk;
    s.p1 = R;
    s.h = h;
    return s;
}

ShapeSpec interval_spec(double R, int M) {
    ShapeSpec s;
    s.kind = ShapeKind::interval;
    s.p1 = R;
    s.M = M;
    return s;
}

// shared between criteria 1 and 8; the domain must outlive the trace
struct DiskRun {
    GridDomain d;
    ContinuationTrace tr;
};

DiskRun& unit_disk_run() {
    static DiskRun r;
    static bool done = false;
    if (!done) {
        r.d = make_domain(disk_spec(1.0, 0.01));
        r.tr = continuation(r.d, BcKind::hinged, kSchedule, 1e-7);
        done = true;
    }
    return r;
}

Outcome c1_hinged_disk() {
    DiskRun& r = unit_disk_run();
    double est = r.tr.lambda_inf_estimate;
    double err = rel_err(est, 4.0);

    const EigenPair& t = r.tr.terminal;
    double mx = 0.0;
    for (double v : t.u.v) mx = std::max(mx, std::abs(v));
    double dev = 0.0;
    for (int k = 0; k < r.d.m(); ++k) {
        double prof = 1.0 - r.d.x(k) * r.d.x(k) - r.d.y(k) * r.d.y(k);
        dev = std::max(dev, std::abs(t.u.v[k] / mx - prof));
    }
    bool ok = err <= 0.015 && dev <= 0.02;
    return {ok,
            "est=" + fnum(est) + " err=" + fnum(err) + " (<=0.015), profile dev=" +
                fnum(dev) + " (<=0.02)",
            120.0};
}

Outcome c2_hinged_interval() {
    GridDomain d = make_domain(interval_spec(1.0, 512));
    ContinuationTrace tr = continuation(d, BcKind::hinged, kSchedule, 1e-7);
    double err = rel_err(tr.lambda_inf_estimate, 2.0);
    DualFields duals = extract_duals(tr.terminal);
    StructureReport rep = structure_report(tr.terminal, duals, 1e-8);
    bool ok = err <= 0.01 && rep.hinged_constancy < 0.03;
    return {ok,
            "est=" + fnum(tr.lambda_inf_estimate) + " err=" + fnum(err) +
                " (<=0.01), lap spread=" + fnum(rep.hinged_constancy) + " (<0.03)",
            10.0};
}

Outcome c3_clamped_interval() {
    GridDomain d = make_domain(interval_spec(1.0, 512));
    ContinuationTrace tr = continuation(d, BcKind::clamped, kSchedule, 1e-7);
    double err = rel_err(tr.lambda_inf_estimate, 4.0);

    const EigenPair& t = tr.terminal;
    double mx = 0.0;
    for (double v : t.u.v) mx = std::max(mx, std::abs(v));
    ClampedProfileParams prof{1, 1.0};
    double w0 = clamped_profile_w(prof, 0.0);
    double dev = 0.0;
    for (int k = 0; k < d.m(); ++k)
        dev = std::max(dev, std::abs(t.u.v[k] / mx -
                                     clamped_profile_w(prof, std::abs(d.x(k))) / w0));

    // two-sign structure of lap u away from the transition at |x| = 1/2
    ScalarField lap = laplacian(t.u, BcKind::clamped);
    double sdev = 0.0;
    for (int k = 0; k < d.m(); ++k) {
        double ax = std::abs(d.x(k));
        if (std::abs(ax - 0.5) <= 1.5 * d.h) continue;
        double target = ax < 0.5 ? -1.0 : 1.0;
        sdev = std::max(sdev, std::abs(lap.v[k] / t.lambda - target));
    }
    bool ok = err <= 0.02 && dev <= 0.03 && sdev <= 0.1;
    return {ok,
            "est=" + fnum(tr.lambda_inf_estimate) + " err=" + fnum(err) +
                " (<=0.02), profile dev=" + fnum(dev) + " (<=0.03), sign dev=" +
                fnum(sdev) + " (<=0.1)",
            30.0};
}

Outcome c4_clamped_disk() {
    GridDomain d = make_domain(disk_spec(1.0, 0.01));
    ContinuationTrace tr = continuation(d, BcKind::clamped, kSchedule, 1e-4);
    double target = clamped_ball_lambda(2, 1.0);
    double err = rel_err(tr.lambda_inf_estimate, target);
    bool ok = err <= 0.06;
    return {ok,
            "est=" + fnum(tr.lambda_inf_estimate) + " target=" + fnum(target) +
                " err=" + fnum(err) + " (<=0.06)",
            300.0};
}

Outcome c5_radial_oracle() {
    const int n = 3, M = 4096;
    RadialMesh mesh{n, 1.0, M};
    ClampedProfileParams prof{n, 1.0};
    const double rb = prof.break_radius();
    RadialField rhs(mesh);
    for (int i = 0; i < M; ++i) rhs.v[i] = mesh.r(i) < rb ? 1.0 : -1.0;
    RadialField w = radial_poisson_solve(rhs, n);
    double errw = 0.0;
    for (int i = 0; i < M; ++i)
        errw = std::max(errw, std::abs(w.v[i] - clamped_profile_w(prof, mesh.r(i))));

    double id = std::abs(clamped_ball_lambda(n, 1.0) * clamped_profile_w(prof, 0.0) - 1.0);
    bool ok = errw <= 1e-4 && id <= 1e-10;
    return {ok, "profile err=" + fnum(errw) + " (<=1e-4), lambda*w(0)-1=" + fnum(id) +
                    " (<=1e-10)"};
}

Outcome c6_dual_identities() {
    double worst_lo = 0.0;  // p <= 8
    double worst_hi = 0.0;  // all levels
    auto sweep = [&](const GridDomain& d, BcKind bc, double tol) {
        DomainSolver ws(d);
        ScalarField warm;
        const ScalarField* init = nullptr;
        for (double p : kSchedule) {
            EigenPair pair = bc == BcKind::hinged ? ws.solve_hinged(p, init, tol)
                                                  : ws.solve_clamped(p, init, tol);
            DualFields duals = extract_duals(pair);
            double ef = std::abs(pair.lambda * duals.f_dualnorm - 1.0);
            double eg = std::abs(duals.g_dualnorm - 1.0);
            double e = std::max(ef, eg);
            if (p <= 8.0) worst_lo = std::max(worst_lo, e);
            worst_hi = std::max(worst_hi, e);
            warm = pair.u;
            init = &warm;
        }
    };
    GridDomain disk = make_domain(disk_spec(1.0, 0.05));
    sweep(disk, BcKind::hinged, 1e-9);
    GridDomain seg = make_domain(interval_spec(1.0, 256));
    sweep(seg, BcKind::clamped, 1e-7);
    bool ok = worst_lo <= 1e-6 && worst_hi <= 1e-4;
    return {ok, "max err p<=8: " + fnum(worst_lo) + " (<=1e-6), p<=128: " +
                    fnum(worst_hi) + " (<=1e-4)"};
}

Outcome c7_equal_area_sweep() {
    std::vector<ShapeSpec> specs;
    std::vector<std::string> labels;
    ShapeSpec sq;
    sq.kind = ShapeKind::rectangle;
    sq.p1 = sq.p2 = 1.0;
    sq.h = 0.01;
    specs.push_back(sq);
    labels.push_back("square");
    ShapeSpec rc = sq;
    rc.p1 = std::sqrt(2.0);
    rc.p2 = std::sqrt(2.0) / 2.0;
    specs.push_back(rc);
    labels.push_back("rectangle");
    specs.push_back(disk_spec(1.0 / std::sqrt(M_PI), 0.01));
    labels.push_back("disk");
    ShapeSpec el;
    el.kind = ShapeKind::ellipse;
    el.p1 = std::sqrt(2.0 / M_PI);
    el.p2 = 1.0 / std::sqrt(2.0 * M_PI);
    el.h = 0.01;
    specs.push_back(el);
    labels.push_back("ellipse");

    ExperimentResult res =
        faber_krahn_experiment(specs, BcKind::hinged, kSchedule, 1e-7, &labels);
    std::string detail;
    bool all_ok = true;
    for (const auto& row : res.rows) {
        all_ok = all_ok && row.ok;
        detail += row.domain_id + "=" + fnum(row.ratio) + " ";
    }
    const auto& square = res.rows[0];
    const auto& rect = res.rows[1];
    const auto& ball = res.rows[2];
    bool ok = all_ok && square.ratio >= 1.05 && rect.ratio >= 1.10 &&
              ball.ratio >= 0.98 && ball.ratio <= 1.02;
    return {ok, detail + "(square>=1.05, rectangle>=1.10, disk in [0.98,1.02])", 900.0};
}

Outcome c8_scale_law() {
    DiskRun& r1 = unit_disk_run();
    GridDomain d2 = make_domain(disk_spec(2.0, 0.02));
    // same index lattice, so the estimates differ by the exact 1/R^2 factor
    ContinuationTrace tr2 = continuation(d2, BcKind::hinged, kSchedule, 1e-7);
    double rel = std::abs(4.0 * tr2.lambda_inf_estimate - r1.tr.lambda_inf_estimate) /
                 r1.tr.lambda_inf_estimate;
    bool ok = rel < 0.01;
    return {ok, "est(R=1)=" + fnum(r1.tr.lambda_inf_estimate) + ", 4*est(R=2)=" +
                    fnum(4.0 * tr2.lambda_inf_estimate) + ", rel diff=" + fnum(rel) +
                    " (<0.01)"};
}

Outcome c9_rearrangement() {
    std::mt19937_64 rng(20260823);
    auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // value-preserving radial rearrangement
    int sym_ok = 0;
    const int sym_trials = 10;
    GridDomain stad;
    {
        ShapeSpec s;
        s.kind = ShapeKind::stadium;
        s.p1 = 0.4;
        s.p2 = 0.8;
        s.h = 0.05;
        stad = make_domain(s);
    }
    for (int trial = 0; trial < sym_trials; ++trial) {
        ScalarField u(stad);
        for (auto& v : u.v) v = 2.0 * uni() - 1.0;
        Symmetrized s = schwarz_symmetrize(u, false);
        std::vector<double> a = u.v, b = s.values;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        bool same = a == b;
        std::vector<int> order = center_rank_order(s.disk);
        bool mono = true;
        for (size_t k = 1; k < order.size(); ++k)
            if (std::abs(s.values[order[k]]) > std::abs(s.values[order[k - 1]]))
                mono = false;
        if (same && mono) ++sym_ok;
    }

    // two-level maximizer against an index-scanning reference
    int tub_ok = 0;
    const int tub_trials = 100;
    for (int trial = 0; trial < tub_trials; ++trial) {
        int m = 4 + static_cast<int>(rng() % 253);
        int nx = m + 4;
        std::vector<std::uint8_t> mask(static_cast<size_t>(nx), 0);
        for (int i = 2; i < 2 + m; ++i) mask[static_cast<size_t>(i)] = 1;
        GridDomain chain = domain_from_mask(1, nx, 1, -2, 0, 1.0 / m, std::move(mask));
        ScalarField f(chain);
        for (auto& v : f.v) v = 2.0 * uni() - 1.0;
        double a = -1.0 - uni(), b = 1.0 + uni();
        double ell = a + (b - a) * uni();

        BathtubResult fast = bathtub_maximize(f, a, b, ell);

        int best_k = 0;
        double best_gap = std::abs(a - ell);
        double scale = 1e-15 * (std::abs(a) + std::abs(b) + 1.0);
        for (int k = 1; k <= m; ++k) {
            double gap = std::abs(a + (b - a) * (static_cast<double>(k) / m) - ell);
            if (gap < best_gap - scale) {
                best_gap = gap;
                best_k = k;
            }
        }
        std::vector<char> used(static_cast<size_t>(m), 0);
        ScalarField gref(chain, a);
        for (int pick = 0; pick < best_k; ++pick) {
            int arg = -1;
            for (int i = 0; i < m; ++i)
                if (!used[i] && (arg < 0 || f.v[i] > f.v[arg])) arg = i;
            used[static_cast<size_t>(arg)] = 1;
            gref.v[static_cast<size_t>(arg)] = b;
        }
        if (fast.g.v == gref.v) ++tub_ok;
    }

    // comparison of peaks after rearranging the source
    GridDomain disk = make_domain(disk_spec(1.0, 0.02));
    double worst_tal = -1e300;
    int tal_ok = 0;
    const int tal_trials = 20;
    for (int trial = 0; trial < tal_trials; ++trial) {
        double a1 = 1.0 + 3.0 * uni(), b1 = 2.0 * M_PI * uni();
        double a2 = 1.0 + 3.0 * uni(), b2 = 2.0 * M_PI * uni();
        ScalarField f(disk);
        for (int k = 0; k < disk.m(); ++k) {
            double t = 0.6 + 0.4 * std::sin(a1 * disk.x(k) + b1) *
                                 std::cos(a2 * disk.y(k) + b2);
            f.v[k] = t * t;
        }
        TalentiReport rep = talenti_compare(f, disk);
        worst_tal = std::max(worst_tal, rep.max_violation);
        if (rep.max_violation <= 5e-2 && rep.max_u <= rep.max_v + 5e-2) ++tal_ok;
    }

    bool ok = sym_ok == sym_trials && tub_ok == tub_trials && tal_ok == tal_trials;
    return {ok, "sym " + std::to_string(sym_ok) + "/" + std::to_string(sym_trials) +
                    ", two-level " + std::to_string(tub_ok) + "/" +
                    std::to_string(tub_trials) + ", peak excess " + fnum(worst_tal) +
                    " (<=0.05)"};
}

Outcome c10_ball_ratio() {
    std::vector<int> ns;
    for (int n = 5; n <= 60; ++n) ns.push_back(n);
    auto rows = ball_ratio_table(ns);
    bool mono = true, above = true;
    double prev = 1e300, at50 = 0.0;
    for (const auto& row : rows) {
        if (row.ratio >= prev) mono = false;
        if (row.ratio <= 1.0) above = false;
        prev = row.ratio;
        if (row.n == 50) at50 = row.ratio;
    }
    bool ok = mono && above && std::abs(at50 - 1.0) <= 0.1;
    return {ok, "ratio(50)=" + fnum(at50) + " (within 0.1 of 1), decreasing=" +
                    (mono ? "yes" : "no")};
}

Outcome c11_refinement_anchors() {
    auto disk_tab =
        convergence_study(disk_spec(1.0, 0.01), BcKind::hinged, 2.0, {0.04, 0.02, 0.01},
                          1e-8);
    const double disk_target = 5.783185962946785;  // j_{0,1}^2
    double derr = rel_err(disk_tab.extrapolated, disk_target);

    auto seg_tab = convergence_study(interval_spec(1.0, 100), BcKind::clamped, 2.0,
                                     {100, 200, 400}, 1e-9);
    const double beam = 5.59332136201533;
    double serr = rel_err(seg_tab.extrapolated, beam);

    bool ok = derr <= 0.005 && serr <= 0.01;
    return {ok, "disk extrap err=" + fnum(derr) + " (<=0.005), beam extrap err=" +
                    fnum(serr) + " (<=0.01)"};
}

}  // namespace

int main() {
    std::printf("p-bilaplacian acceptance gate, schedule p = {2..128}\n");
    run(1, "hinged disk limit and profile", c1_hinged_disk);
    run(2, "hinged interval limit", c2_hinged_interval);
    run(3, "clamped interval limit and signs", c3_clamped_interval);
    run(4, "clamped disk limit", c4_clamped_disk);
    run(5, "radial profile oracle", c5_radial_oracle);
    run(6, "dual norm identities", c6_dual_identities);
    run(7, "equal-area sweep ranking", c7_equal_area_sweep);
    run(8, "scale law across matched lattices", c8_scale_law);
    run(9, "rearrangement oracles", c9_rearrangement);
    run(10, "ball ratio decay", c10_ball_ratio);
    run(11, "mesh refinement anchors", c11_refinement_anchors);
    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
