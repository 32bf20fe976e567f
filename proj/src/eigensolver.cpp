#include "eigensolver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace bilap {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

constexpr int HINGED_CAP = 500;
constexpr int CLAMPED_CAP = 30000;

Vec to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double norm_lp(const Vec& v, double p) {
    double mx = v.cwiseAbs().maxCoeff();
    if (std::isinf(p) || mx == 0.0) return mx;
    double s = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) s += std::pow(std::abs(v[k]) / mx, p);
    return mx * std::pow(s / v.size(), 1.0 / p);
}

}  // namespace

struct DomainSolver::Impl {
    const GridDomain* d;
    SpMat A;  // -lap, SPD
    Eigen::SimplicialLDLT<SpMat> fac;
    SpMat B, BT;  // closure rows (nb x m) and transpose
    int nb = 0;
    bool clamped_ready = false;
    Eigen::LLT<Eigen::MatrixXd> cap;  // 2I + B A^{-2} B^T

    explicit Impl(const GridDomain& dom) : d(&dom) {
        const int m = dom.m();
        const double ih2 = 1.0 / (dom.h * dom.h);
        const int ndirs = dom.dim == 1 ? 2 : 4;
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<size_t>(m) * (ndirs + 1));
        for (int k = 0; k < m; ++k) {
            trip.emplace_back(k, k, 2.0 * dom.dim * ih2);
            for (int t = 0; t < ndirs; ++t) {
                int q = dom.nbr[k][t];
                if (q >= 0) trip.emplace_back(k, q, -ih2);
            }
        }
        A.resize(m, m);
        A.setFromTriplets(trip.begin(), trip.end());
        fac.compute(A);
        if (fac.info() != Eigen::Success)
            throw BilapError(3, "Laplacian factorization failed");
    }

    Vec inv(const Vec& x) { return fac.solve(x); }

    void ensure_clamped() {
        if (clamped_ready) return;
        const int m = d->m();
        nb = static_cast<int>(d->closure.size());
        const double ih2 = 1.0 / (d->h * d->h);
        std::vector<Eigen::Triplet<double>> trip;
        for (int b = 0; b < nb; ++b)
            for (auto [k, c] : d->closure[b]) trip.emplace_back(b, k, c * ih2);
        B.resize(nb, m);
        B.setFromTriplets(trip.begin(), trip.end());
        BT = B.transpose();

        Eigen::MatrixXd C = 2.0 * Eigen::MatrixXd::Identity(nb, nb);
        Vec e = Vec::Zero(m);
        for (int b = 0; b < nb; ++b) {
            Vec q = BT.col(b);
            Vec y = inv(inv(q));
            C.col(b) += B * y;
        }
        C = 0.5 * (C + C.transpose()).eval();
        cap.compute(C);
        if (cap.info() != Eigen::Success)
            throw BilapError(3, "closure capacitance factorization failed");
        clamped_ready = true;
    }

    // K^{-1} x with K = A^2 + 1/2 B^T B (Woodbury through the capacitance)
    Vec applyP(const Vec& x) {
        Vec y = inv(inv(x));
        Vec z = B * y;
        Vec w = cap.solve(z);
        return y - inv(inv(Vec(BT * w)));
    }
};

DomainSolver::DomainSolver(const GridDomain& d) : impl_(std::make_unique<Impl>(d)) {}
DomainSolver::~DomainSolver() = default;
DomainSolver::DomainSolver(DomainSolver&&) noexcept = default;
DomainSolver& DomainSolver::operator=(DomainSolver&&) noexcept = default;

const GridDomain& DomainSolver::domain() const { return *impl_->d; }

ScalarField DomainSolver::torsion() {
    ScalarField out(*impl_->d);
    Vec v = impl_->inv(Vec::Ones(impl_->d->m()));
    Eigen::Map<Vec>(out.v.data(), v.size()) = v;
    return out;
}

EigenPair DomainSolver::solve_hinged(double p, const ScalarField* init, double tol) {
    if (p < 2.0 || p > 256.0) throw BilapError(2, "p outside [2, 256]");
    auto& im = *impl_;
    const GridDomain& d = *im.d;
    const int m = d.m();
    const double pp = p / (p - 1.0);

    Vec u;
    if (init) {
        if (init->size() != m) throw BilapError(2, "init field size mismatch");
        u = to_vec(init->v);
    } else {
        u = im.inv(Vec::Ones(m));
    }
    double un = norm_lp(u, p);
    if (un == 0.0) throw BilapError(3, "degenerate zero init field");
    u /= un;
    double lam = norm_lp(Vec(im.A * u), p);
    double el = 0.0;

    for (int it = 1; it <= HINGED_CAP; ++it) {
        double a = u.cwiseAbs().maxCoeff();
        Vec gs(m);
        for (int k = 0; k < m; ++k) {
            double t = std::abs(u[k]) / a;
            gs[k] = (u[k] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0);
        }
        Vec v = -im.inv(gs);  // lap v = gs
        Vec z(m);
        for (int k = 0; k < m; ++k) {
            double t = std::abs(v[k]);
            z[k] = t == 0.0 ? 0.0 : (v[k] < 0 ? -1.0 : 1.0) * std::pow(t, 1.0 / (p - 1.0));
        }
        Vec w = -im.inv(z);  // lap w = z
        if (w.dot(u) < 0) w = -w;
        double wn = norm_lp(w, p);
        if (wn == 0.0) throw BilapError(3, "zero iterate in inverse-power scheme");
        u = w / wn;

        Vec lap_u = -(im.A * u);
        double lam_new = norm_lp(lap_u, p);
        double log_lam = std::log(lam_new);
        // smoothed EL residual: f/a^{p-1} should reproduce v at optimality
        Vec fs(m);
        for (int k = 0; k < m; ++k) {
            double mag = std::abs(lap_u[k]);
            fs[k] = mag == 0.0 ? 0.0
                               : (lap_u[k] < 0 ? -1.0 : 1.0) *
                                     std::exp((p - 1.0) * (std::log(mag) - std::log(a)) -
                                              p * log_lam);
        }
        el = norm_lp(Vec(fs - v), pp) / norm_lp(v, pp);
        double dl = std::abs(lam_new - lam) / lam_new;
        lam = lam_new;
        if (dl < tol && el < tol) {
            // positive-at-max sign convention
            int amax = 0;
            for (int k = 1; k < m; ++k)
                if (std::abs(u[k]) > std::abs(u[amax])) amax = k;
            if (u[amax] < 0) u = -u;
            EigenPair pair;
            pair.u = ScalarField(d);
            Eigen::Map<Vec>(pair.u.v.data(), m) = u;
            pair.lambda = norm_lp(Vec(-(im.A * u)), p);
            pair.p = p;
            pair.bc = BcKind::hinged;
            pair.el_residual = el;
            pair.iterations = it;
            return pair;
        }
    }
    throw BilapError(3, "hinged solve: iteration cap exceeded");
}

namespace {

struct ClampedState {
    double F = 0.0, S = 0.0, sN = 0.0, uS = 0.0, sM = 0.0;
    Vec lu, bu;
};

}  // namespace

EigenPair DomainSolver::solve_clamped(double p, const ScalarField* init, double tol) {
    if (p < 2.0 || p > 256.0) throw BilapError(2, "p outside [2, 256]");
    auto& im = *impl_;
    im.ensure_clamped();
    const GridDomain& d = *im.d;
    const int m = d.m();
    const double pp = p / (p - 1.0);

    auto eval = [&](const Vec& u, ClampedState& st) {
        st.lu = -(im.A * u);
        st.bu = im.B * u;
        double ms = st.lu.cwiseAbs().maxCoeff();
        if (im.nb > 0) ms = std::max(ms, st.bu.cwiseAbs().maxCoeff());
        st.S = ms;
        double sN = 0.0;
        for (int k = 0; k < m; ++k) sN += std::pow(std::abs(st.lu[k]) / ms, p);
        for (int b = 0; b < im.nb; ++b) sN += 0.5 * std::pow(std::abs(st.bu[b]) / ms, p);
        st.sN = sN;
        st.uS = u.cwiseAbs().maxCoeff();
        double sM = 0.0;
        for (int k = 0; k < m; ++k) sM += std::pow(std::abs(u[k]) / st.uS, p);
        st.sM = sM;
        st.F = std::log(st.S) + std::log(st.sN) / p - std::log(st.uS) - std::log(st.sM) / p;
    };

    auto grad = [&](const Vec& u, const ClampedState& st) -> Vec {
        Vec sigL(m), sigB(im.nb);
        for (int k = 0; k < m; ++k) {
            double t = std::abs(st.lu[k]) / st.S;
            sigL[k] = (st.lu[k] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0);
        }
        for (int b = 0; b < im.nb; ++b) {
            double t = std::abs(st.bu[b]) / st.S;
            sigB[b] = (st.bu[b] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0);
        }
        Vec gv(m);
        for (int k = 0; k < m; ++k) {
            double t = std::abs(u[k]) / st.uS;
            gv[k] = (u[k] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0);
        }
        Vec lhs = -(im.A * sigL) + 0.5 * (im.BT * sigB);
        return lhs / (st.S * st.sN) - gv / (st.uS * st.sM);
    };

    auto el_resid = [&](const Vec& u, const ClampedState& st) {
        Vec G = grad(u, st);
        Vec gv(m);
        for (int k = 0; k < m; ++k) {
            double t = std::abs(u[k]) / st.uS;
            gv[k] = (u[k] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0) / (st.uS * st.sM);
        }
        double den = norm_lp(Vec(im.inv(gv)), pp);
        return den == 0.0 ? std::numeric_limits<double>::infinity()
                          : norm_lp(Vec(im.inv(G)), pp) / den;
    };

    Vec u;
    if (init) {
        if (init->size() != m) throw BilapError(2, "init field size mismatch");
        u = to_vec(init->v);
    } else {
        u = im.inv(Vec::Ones(m));
    }
    double un = norm_lp(u, p);
    if (un == 0.0) throw BilapError(3, "degenerate zero init field");
    u /= un;

    ClampedState st;
    eval(u, st);
    double lam_c = std::exp(st.F);
    std::deque<double> refs{st.F};
    double t_step = 1.0;
    Vec uprev, dprev;
    bool have_prev = false;
    int stag = 0;

    auto finish = [&](const Vec& uu, double el, int its) {
        Vec uf = uu;
        int amax = 0;
        for (int k = 1; k < m; ++k)
            if (std::abs(uf[k]) > std::abs(uf[amax])) amax = k;
        if (uf[amax] < 0) uf = -uf;
        EigenPair pair;
        pair.u = ScalarField(d);
        Eigen::Map<Vec>(pair.u.v.data(), m) = uf;
        pair.lambda = norm_lp(Vec(-(im.A * uf)), p);
        pair.p = p;
        pair.bc = BcKind::clamped;
        pair.el_residual = el;
        pair.iterations = its;
        return pair;
    };

    for (int it = 1; it <= CLAMPED_CAP; ++it) {
        Vec G = grad(u, st);
        Vec dir = im.applyP(G);
        double gd = G.dot(dir);  // > 0 for SPD preconditioner
        if (have_prev) {
            Vec sv = u - uprev;
            Vec yv = dir - dprev;
            double sy = sv.dot(yv);
            if (sy > 0) t_step = sv.dot(sv) / sy;
        }
        uprev = u;
        dprev = dir;
        have_prev = true;

        double fref = *std::max_element(refs.begin(), refs.end());
        bool ok = false;
        Vec utry;
        ClampedState st_try;
        for (int bt = 0; bt < 60; ++bt) {
            utry = u - t_step * dir;
            double n2 = norm_lp(utry, p);
            if (n2 > 0) {
                utry /= n2;
                eval(utry, st_try);
                if (st_try.F < fref - 1e-4 * t_step * gd) {
                    ok = true;
                    break;
                }
            }
            t_step *= 0.5;
        }
        if (!ok) {
            double el = el_resid(u, st);
            if (el < tol * lam_c) return finish(u, el, it);
            throw BilapError(3, "clamped solve: no decrease after maximal backtracking");
        }
        u = utry;
        st = st_try;
        refs.push_back(st.F);
        if (refs.size() > 6) refs.pop_front();
        double lam_new = std::exp(st.F);
        double dl = std::abs(lam_new - lam_c) / lam_new;
        lam_c = lam_new;
        t_step *= 1.3;
        if (dl < tol) {
            if (++stag >= 3) {
                double el = el_resid(u, st);
                if (el < tol * lam_c) return finish(u, el, it);
                stag = 0;
            }
        } else {
            stag = 0;
        }
    }
    double el = el_resid(u, st);
    if (el < tol * lam_c) return finish(u, el, CLAMPED_CAP);
    throw BilapError(3, "clamped solve: iteration cap exceeded");
}

EigenPair solve_hinged_p(const GridDomain& d, double p, const ScalarField* init, double tol) {
    DomainSolver ws(d);
    return ws.solve_hinged(p, init, tol);
}

EigenPair solve_clamped_p(const GridDomain& d, double p, const ScalarField* init, double tol) {
    DomainSolver ws(d);
    return ws.solve_clamped(p, init, tol);
}

std::pair<double, double> fit_tail(const std::vector<double>& ps,
                                   const std::vector<double>& lams) {
    const size_t n = ps.size();
    if (n == 0) throw BilapError(2, "empty schedule");
    if (n == 1) return {lams[0], 0.0};
    size_t from = n / 2;
    double S0 = 0, S1 = 0, S2 = 0, T0 = 0, T1 = 0;
    for (size_t i = from; i < n; ++i) {
        double x = 1.0 / ps[i];
        S0 += 1.0;
        S1 += x;
        S2 += x * x;
        T0 += lams[i];
        T1 += lams[i] * x;
    }
    if (S0 < 2) return {lams[n - 1], 0.0};
    double det = S0 * S2 - S1 * S1;
    double a = (S2 * T0 - S1 * T1) / det;
    double b = (S0 * T1 - S1 * T0) / det;
    return {a, b};
}

ContinuationTrace continuation(const GridDomain& d, BcKind bc,
                               const std::vector<double>& p_schedule, double tol) {
    if (p_schedule.empty()) throw BilapError(2, "empty p schedule");
    if (p_schedule.front() != 2.0) throw BilapError(2, "p schedule must start at 2");
    for (size_t i = 1; i < p_schedule.size(); ++i)
        if (p_schedule[i] <= p_schedule[i - 1])
            throw BilapError(2, "p schedule must be strictly increasing");

    DomainSolver ws(d);
    ContinuationTrace trace;
    ScalarField warm;
    const ScalarField* init = nullptr;
    for (double p : p_schedule) {
        EigenPair pair;
        try {
            pair = bc == BcKind::hinged ? ws.solve_hinged(p, init, tol)
                                        : ws.solve_clamped(p, init, tol);
        } catch (const BilapError& e) {
            throw BilapError(e.code, "p=" + std::to_string(p) + ": " + e.what());
        }
        trace.entries.push_back({p, pair.lambda, pair.el_residual});
        warm = pair.u;
        init = &warm;
        trace.terminal = std::move(pair);
    }
    std::vector<double> ps, lams;
    for (auto& e : trace.entries) {
        ps.push_back(e.p);
        lams.push_back(e.lambda);
    }
    auto [a, b] = fit_tail(ps, lams);
    trace.fit_a = a;
    trace.fit_b = b;
    trace.lambda_inf_estimate = a;
    return trace;
}

DualFields extract_duals(const EigenPair& pair) {
    const GridDomain& d = *pair.u.dom;
    const double p = pair.p;
    const double pp = p / (p - 1.0);
    const double log_lam = std::log(pair.lambda);
    ScalarField lap_u = laplacian(pair.u, pair.bc);
    DualFields out;
    out.f = ScalarField(d);
    out.g = ScalarField(d);
    const int m = d.m();
    for (int k = 0; k < m; ++k) {
        double mag = std::abs(lap_u.v[k]);
        out.f.v[k] = mag == 0.0 ? 0.0
                                : (lap_u.v[k] < 0 ? -1.0 : 1.0) *
                                      std::exp((p - 1.0) * std::log(mag) - p * log_lam);
        double um = std::abs(pair.u.v[k]);
        out.g.v[k] = um == 0.0 ? 0.0
                               : (pair.u.v[k] < 0 ? -1.0 : 1.0) * std::pow(um, p - 1.0);
    }
    ScalarField lap_f = laplacian(out.f, pair.bc);
    std::vector<double> defect(m);
    for (int k = 0; k < m; ++k) defect[k] = lap_f.v[k] - out.g.v[k];
    out.poisson_residual = norm_lp_lambda(defect, pp);
    out.f_dualnorm = norm_lp_lambda(out.f, pp);
    out.g_dualnorm = norm_lp_lambda(out.g, pp);
    return out;
}

StructureReport structure_report(const EigenPair& pair, const DualFields& duals,
                                 double eps_f) {
    ScalarField lap_u = laplacian(pair.u, pair.bc);
    const int m = pair.u.size();
    StructureReport rep;
    double fmax = 0.0;
    for (int k = 0; k < m; ++k) fmax = std::max(fmax, std::abs(duals.f.v[k]));
    const double thr = eps_f * fmax;
    int cnt = 0;
    double viol = 0.0;
    double pos_lo = 0, pos_hi = 0, neg_lo = 0, neg_hi = 0;
    bool any_pos = false, any_neg = false;
    for (int k = 0; k < m; ++k) {
        double fv = duals.f.v[k];
        if (std::abs(fv) <= thr) continue;
        ++cnt;
        double sgn = fv > 0 ? 1.0 : -1.0;
        viol = std::max(viol, std::abs(lap_u.v[k] / pair.lambda - sgn));
        if (fv > 0) {
            if (!any_pos) { pos_lo = pos_hi = lap_u.v[k]; any_pos = true; }
            pos_lo = std::min(pos_lo, lap_u.v[k]);
            pos_hi = std::max(pos_hi, lap_u.v[k]);
        } else {
            if (!any_neg) { neg_lo = neg_hi = lap_u.v[k]; any_neg = true; }
            neg_lo = std::min(neg_lo, lap_u.v[k]);
            neg_hi = std::max(neg_hi, lap_u.v[k]);
        }
    }
    rep.sign_set_fraction = static_cast<double>(cnt) / m;
    rep.inclusion_violation = cnt > 0 ? viol : 0.0;
    rep.laplacian_spread_pos = any_pos ? (pos_hi - pos_lo) / pair.lambda : 0.0;
    rep.laplacian_spread_neg = any_neg ? (neg_hi - neg_lo) / pair.lambda : 0.0;
    if (pair.bc == BcKind::hinged) {
        double mean = 0.0;
        for (int k = 0; k < m; ++k) mean += lap_u.v[k];
        mean /= m;
        double var = 0.0;
        for (int k = 0; k < m; ++k) {
            double t = lap_u.v[k] - mean;
            var += t * t;
        }
        rep.hinged_constancy = std::sqrt(var / m) / std::abs(mean);
    }
    return rep;
}

}  // namespace bilap
