#include "operators.hpp"

#include <cmath>
#include <limits>

namespace bilap {

const char* bc_name(BcKind bc) { return bc == BcKind::hinged ? "hinged" : "clamped"; }

BcKind bc_from_name(const std::string& s) {
    if (s == "hinged") return BcKind::hinged;
    if (s == "clamped") return BcKind::clamped;
    throw BilapError(2, "unknown boundary condition '" + s + "'");
}

ScalarField laplacian(const ScalarField& u, BcKind) {
    const GridDomain& d = *u.dom;
    ScalarField out(d);
    const double ih2 = 1.0 / (d.h * d.h);
    const int m = d.m();
    const int ndirs = d.dim == 1 ? 2 : 4;
    const double center = -2.0 * d.dim;
    for (int k = 0; k < m; ++k) {
        double s = center * u.v[k];
        for (int t = 0; t < ndirs; ++t) {
            int q = d.nbr[k][t];
            if (q >= 0) s += u.v[q];
        }
        out.v[k] = s * ih2;
    }
    return out;
}

std::vector<double> closure_apply(const ScalarField& u) {
    const GridDomain& d = *u.dom;
    const double ih2 = 1.0 / (d.h * d.h);
    std::vector<double> out(d.closure.size(), 0.0);
    for (size_t b = 0; b < d.closure.size(); ++b) {
        double s = 0.0;
        for (auto [k, c] : d.closure[b]) s += c * u.v[k];
        out[b] = s * ih2;
    }
    return out;
}

ScalarField closure_adjoint(const GridDomain& d, const std::vector<double>& s) {
    ScalarField out(d);
    const double ih2 = 1.0 / (d.h * d.h);
    for (size_t b = 0; b < d.closure.size(); ++b)
        for (auto [k, c] : d.closure[b]) out.v[k] += c * ih2 * s[b];
    return out;
}

ScalarField poisson_solve(const ScalarField& rhs, const GridDomain& d) {
    const int m = d.m();
    const int ndirs = d.dim == 1 ? 2 : 4;
    const double ih2 = 1.0 / (d.h * d.h);
    const double diag = 2.0 * d.dim * ih2;

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int k = 0; k < m; ++k) {
            double s = diag * x[k];
            for (int t = 0; t < ndirs; ++t) {
                int q = d.nbr[k][t];
                if (q >= 0) s -= ih2 * x[q];
            }
            y[k] = s;
        }
    };

    ScalarField out(d);
    std::vector<double>& x = out.v;
    std::vector<double> r = rhs.v, z(m), p(m), Ap(m);
    double bnorm = 0.0;
    for (double t : r) bnorm += t * t;
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) return out;

    const double invd = 1.0 / diag;
    double rz = 0.0;
    for (int k = 0; k < m; ++k) {
        z[k] = r[k] * invd;
        p[k] = z[k];
        rz += r[k] * z[k];
    }
    const double tol = 1e-10 * bnorm;
    const int cap = 100 * static_cast<int>(std::sqrt(static_cast<double>(m))) + 2000;
    for (int it = 0; it < cap; ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (int k = 0; k < m; ++k) pAp += p[k] * Ap[k];
        double alpha = rz / pAp;
        double rn = 0.0;
        for (int k = 0; k < m; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * Ap[k];
            rn += r[k] * r[k];
        }
        if (std::sqrt(rn) <= tol) return out;
        double rz_new = 0.0;
        for (int k = 0; k < m; ++k) {
            z[k] = r[k] * invd;
            rz_new += r[k] * z[k];
        }
        double beta = rz_new / rz;
        rz = rz_new;
        for (int k = 0; k < m; ++k) p[k] = z[k] + beta * p[k];
    }
    throw BilapError(3, "conjugate gradient iteration cap exceeded");
}

double norm_lp_lambda(const std::vector<double>& v, double p) {
    double mx = 0.0;
    for (double t : v) mx = std::max(mx, std::abs(t));
    if (std::isinf(p) || mx == 0.0) return mx;
    double s = 0.0;
    for (double t : v) s += std::pow(std::abs(t) / mx, p);
    return mx * std::pow(s / v.size(), 1.0 / p);
}

double norm_lp_lambda(const ScalarField& u, double p) { return norm_lp_lambda(u.v, p); }

RadialField radial_laplacian(const RadialField& u, int n) {
    const RadialMesh& mesh = u.mesh;
    const int M = mesh.M;
    const double h = mesh.h();
    RadialField out(mesh);
    // symmetry cell at r = 0: flux through r = h/2 only
    out.v[0] = 2.0 * n * (u.v[1] - u.v[0]) / (h * h);
    for (int i = 1; i < M; ++i) {
        double ri = mesh.r(i);
        double rp = std::pow(ri + 0.5 * h, n - 1);
        double rm = std::pow(ri - 0.5 * h, n - 1);
        double up = i + 1 < M ? u.v[i + 1] : 0.0;
        out.v[i] = (rp * (up - u.v[i]) - rm * (u.v[i] - u.v[i - 1])) /
                   (h * h * std::pow(ri, n - 1));
    }
    return out;
}

RadialField radial_poisson_solve(const RadialField& rhs, int n) {
    const RadialMesh& mesh = rhs.mesh;
    const int M = mesh.M;
    const double h = mesh.h();
    std::vector<double> a(M), b(M), c(M), r = rhs.v;
    b[0] = 2.0 * n / (h * h);
    c[0] = -2.0 * n / (h * h);
    for (int i = 1; i < M; ++i) {
        double ri = mesh.r(i);
        double rp = std::pow(ri + 0.5 * h, n - 1);
        double rm = std::pow(ri - 0.5 * h, n - 1);
        double rc = h * h * std::pow(ri, n - 1);
        a[i] = -rm / rc;
        b[i] = (rp + rm) / rc;
        c[i] = -rp / rc;
    }
    // Thomas sweep
    for (int i = 1; i < M; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    RadialField out(mesh);
    out.v[M - 1] = r[M - 1] / b[M - 1];
    for (int i = M - 2; i >= 0; --i) out.v[i] = (r[i] - c[i] * out.v[i + 1]) / b[i];
    return out;
}

}  // namespace bilap
