#pragma once
#include "geometry.hpp"

namespace bilap {

enum class BcKind { hinged, clamped };

const char* bc_name(BcKind bc);
BcKind bc_from_name(const std::string& s);

// Values on interior nodes; boundary value 0 implicit.
struct ScalarField {
    const GridDomain* dom = nullptr;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridDomain& d, double fill = 0.0)
        : dom(&d), v(static_cast<size_t>(d.m()), fill) {}
    int size() const { return static_cast<int>(v.size()); }
};

// 3/5-point stencil on interior nodes. Boundary nodes carry 0 under both
// conventions; interior rows never reach exterior ghosts, so the result is
// bc-independent (the clamped reflection lives in closure_apply).
ScalarField laplacian(const ScalarField& u, BcKind bc);

// Laplacian evaluated at the Dirichlet ring under the clamped reflection
// (exterior ghost = mirrored interior value, ring value 0); one value per
// boundary node, order matching GridDomain::boundary_flat.
std::vector<double> closure_apply(const ScalarField& u);

// adjoint of closure_apply: accumulates B^T s into a field
ScalarField closure_adjoint(const GridDomain& d, const std::vector<double>& s);

// -laplacian v = rhs, v = 0 on the ring. Diagonally preconditioned conjugate
// gradients, relative residual <= 1e-10; throws on iteration cap.
ScalarField poisson_solve(const ScalarField& rhs, const GridDomain& d);

// (mean |u|^p)^{1/p} against the uniform probability weight on interior
// nodes; p = infinity gives max |u|. Max is factored out before powering.
double norm_lp_lambda(const ScalarField& u, double p);
double norm_lp_lambda(const std::vector<double>& v, double p);

struct RadialField {
    RadialMesh mesh;
    std::vector<double> v;  // nodes 0..M-1; r = R implicit 0

    RadialField() = default;
    explicit RadialField(const RadialMesh& m, double fill = 0.0)
        : mesh(m), v(static_cast<size_t>(m.M), fill) {}
};

// u'' + ((n-1)/r) u' in flux form; symmetry row at r = 0, u(R) = 0.
RadialField radial_laplacian(const RadialField& u, int n);
RadialField radial_poisson_solve(const RadialField& rhs, int n);  // -lap w = rhs, tridiagonal

}  // namespace bilap
