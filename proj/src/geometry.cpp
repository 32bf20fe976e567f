#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace bilap {

const char* shape_kind_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::interval: return "interval";
        case ShapeKind::disk: return "disk";
        case ShapeKind::rectangle: return "rectangle";
        case ShapeKind::ellipse: return "ellipse";
        case ShapeKind::stadium: return "stadium";
        case ShapeKind::lshape: return "lshape";
    }
    return "?";
}

ShapeKind shape_kind_from_name(const std::string& s) {
    if (s == "interval") return ShapeKind::interval;
    if (s == "disk") return ShapeKind::disk;
    if (s == "rectangle") return ShapeKind::rectangle;
    if (s == "ellipse") return ShapeKind::ellipse;
    if (s == "stadium") return ShapeKind::stadium;
    if (s == "lshape") return ShapeKind::lshape;
    throw BilapError(2, "unknown shape kind '" + s + "'");
}

namespace {

bool inside_shape(const ShapeSpec& s, double x, double y) {
    switch (s.kind) {
        case ShapeKind::interval:
            return std::abs(x) < s.p1;
        case ShapeKind::disk:
            return x * x + y * y < s.p1 * s.p1;
        case ShapeKind::rectangle:
            return std::abs(x) < s.p1 / 2 && std::abs(y) < s.p2 / 2;
        case ShapeKind::ellipse: {
            double ex = x / s.p1, ey = y / s.p2;
            return ex * ex + ey * ey < 1.0;
        }
        case ShapeKind::stadium: {
            double r = s.p1, L = s.p2;
            if (std::abs(x) <= L / 2) return std::abs(y) < r;
            double dx = std::abs(x) - L / 2;
            return dx * dx + y * y < r * r;
        }
        case ShapeKind::lshape: {
            double a = s.p1 / 2;
            if (std::abs(x) >= a || std::abs(y) >= a) return false;
            return !(x >= 0.0 && y >= 0.0);
        }
    }
    return false;
}

void derive_topology(GridDomain& d) {
    const int nx = d.nx, ny = d.ny;
    d.node_of.assign(static_cast<size_t>(nx) * ny, -1);
    d.node_ij.clear();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            size_t f = static_cast<size_t>(i) * ny + j;
            if (d.mask[f]) {
                d.node_of[f] = static_cast<int>(d.node_ij.size());
                d.node_ij.push_back({i, j});
            }
        }
    const int m = d.m();
    if (m == 0) throw BilapError(2, "empty domain mask");

    // margin: every masked node needs one lattice layer of room
    for (auto [i, j] : d.node_ij) {
        bool edge = (i == 0 || i == nx - 1);
        if (d.dim == 2) edge = edge || (j == 0 || j == ny - 1);
        if (edge) throw BilapError(2, "mask touches the bounding lattice edge (no ghost margin)");
    }

    static const int DX[4] = {1, -1, 0, 0};
    static const int DY[4] = {0, 0, 1, -1};
    const int ndirs = d.dim == 1 ? 2 : 4;

    auto at = [&](int i, int j) -> int {
        if (i < 0 || i >= nx || j < 0 || j >= ny) return -1;
        return d.node_of[static_cast<size_t>(i) * ny + j];
    };

    d.nbr.assign(m, {-1, -1, -1, -1});
    for (int k = 0; k < m; ++k) {
        auto [i, j] = d.node_ij[k];
        for (int t = 0; t < ndirs; ++t) d.nbr[k][t] = at(i + DX[t], j + DY[t]);
    }

    // connectivity (single edge-connected component)
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int k = q.front();
        q.pop();
        for (int t = 0; t < ndirs; ++t) {
            int w = d.nbr[k][t];
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    if (reached != m) throw BilapError(2, "disconnected domain mask");

    // Dirichlet ring: outside nodes 4-adjacent to the interior
    std::vector<char> is_bdry(static_cast<size_t>(nx) * ny, 0);
    for (int k = 0; k < m; ++k) {
        auto [i, j] = d.node_ij[k];
        for (int t = 0; t < ndirs; ++t) {
            int qi = i + DX[t], qj = j + DY[t];
            size_t f = static_cast<size_t>(qi) * ny + qj;
            if (!d.mask[f]) is_bdry[f] = 1;
        }
    }
    d.boundary_flat.clear();
    for (size_t f = 0; f < is_bdry.size(); ++f)
        if (is_bdry[f]) d.boundary_flat.push_back(static_cast<int>(f));

    // clamped closure rows: Laplacian at a boundary node b with u_b = 0,
    // exterior neighbors replaced by the reflected interior value
    d.closure.assign(d.boundary_flat.size(), {});
    for (size_t bi = 0; bi < d.boundary_flat.size(); ++bi) {
        int f = d.boundary_flat[bi];
        int i = f / ny, j = f % ny;
        auto& row = d.closure[bi];
        auto add = [&](int k, double c) {
            for (auto& t : row)
                if (t.first == k) {
                    t.second += c;
                    return;
                }
            row.push_back({k, c});
        };
        for (int t = 0; t < ndirs; ++t) {
            int qi = i + DX[t], qj = j + DY[t];
            int q = at(qi, qj);
            if (q >= 0) {
                add(q, 1.0);
                continue;
            }
            bool q_bdry = qi >= 0 && qi < nx && qj >= 0 && qj < ny &&
                          is_bdry[static_cast<size_t>(qi) * ny + qj];
            if (q_bdry) continue;  // Dirichlet 0
            int r = at(i - DX[t], j - DY[t]);  // reflected partner
            if (r >= 0) add(r, 1.0);
        }
    }
}

}  // namespace

GridDomain make_domain(const ShapeSpec& spec) {
    GridDomain d;
    if (spec.kind == ShapeKind::interval) {
        if (spec.p1 <= 0 || spec.M < 4) throw BilapError(2, "interval needs R > 0 and M >= 4");
        d.dim = 1;
        d.h = 2.0 * spec.p1 / spec.M;
        // nodes at integer multiples of h when R/h is integral (M even); keep the
        // lattice anchored at -R regardless
        int half = spec.M / 2;
        if (2 * half != spec.M) throw BilapError(2, "interval cell count must be even");
        d.ix0 = -half - 2;
        d.nx = spec.M + 5;  // two margin nodes each side
        d.ny = 1;
        d.iy0 = 0;
        d.mask.assign(static_cast<size_t>(d.nx), 0);
        for (int i = 0; i < d.nx; ++i) {
            double xv = (d.ix0 + i) * d.h;
            if (inside_shape(spec, xv, 0.0)) d.mask[i] = 1;
        }
        derive_topology(d);
        return d;
    }
    if (spec.h <= 0) throw BilapError(2, "2D shape needs h > 0");
    double ex = 0, ey = 0;  // half-extents
    switch (spec.kind) {
        case ShapeKind::disk: ex = ey = spec.p1; break;
        case ShapeKind::rectangle: ex = spec.p1 / 2; ey = spec.p2 / 2; break;
        case ShapeKind::ellipse: ex = spec.p1; ey = spec.p2; break;
        case ShapeKind::stadium: ex = spec.p2 / 2 + spec.p1; ey = spec.p1; break;
        case ShapeKind::lshape: ex = ey = spec.p1 / 2; break;
        default: break;
    }
    if (ex <= 0 || ey <= 0) throw BilapError(2, "shape parameters must be positive");
    double feat = 0;  // narrowest half-width of the shape
    switch (spec.kind) {
        case ShapeKind::disk: feat = spec.p1; break;
        case ShapeKind::rectangle: feat = std::min(spec.p1, spec.p2) / 2; break;
        case ShapeKind::ellipse: feat = std::min(spec.p1, spec.p2); break;
        case ShapeKind::stadium: feat = spec.p1; break;
        case ShapeKind::lshape: feat = spec.p1 / 4; break;
        default: break;
    }
    if (feat < 2 * spec.h)
        throw BilapError(2, "grid spacing too coarse for the shape");
    d.dim = 2;
    d.h = spec.h;
    int Kx = static_cast<int>(std::floor(ex / spec.h)) + 2;
    int Ky = static_cast<int>(std::floor(ey / spec.h)) + 2;
    d.ix0 = -Kx;
    d.iy0 = -Ky;
    d.nx = 2 * Kx + 1;
    d.ny = 2 * Ky + 1;
    d.mask.assign(static_cast<size_t>(d.nx) * d.ny, 0);
    for (int i = 0; i < d.nx; ++i)
        for (int j = 0; j < d.ny; ++j) {
            double xv = (d.ix0 + i) * d.h, yv = (d.iy0 + j) * d.h;
            if (inside_shape(spec, xv, yv)) d.mask[static_cast<size_t>(i) * d.ny + j] = 1;
        }
    derive_topology(d);
    return d;
}

GridDomain domain_from_mask(int dim, int nx, int ny, int ix0, int iy0, double h,
                            std::vector<std::uint8_t> mask) {
    if (dim != 1 && dim != 2) throw BilapError(2, "dim must be 1 or 2");
    if (h <= 0) throw BilapError(2, "spacing must be positive");
    if (dim == 1 && ny != 1) throw BilapError(2, "1D mask needs ny = 1");
    if (static_cast<size_t>(nx) * ny != mask.size()) throw BilapError(2, "mask size mismatch");
    GridDomain d;
    d.dim = dim;
    d.h = h;
    d.nx = nx;
    d.ny = ny;
    d.ix0 = ix0;
    d.iy0 = iy0;
    d.mask = std::move(mask);
    derive_topology(d);
    return d;
}

double measure(const GridDomain& d) {
    return d.m() * std::pow(d.h, d.dim);
}

double equal_area_radius(const GridDomain& d) {
    double omega = d.dim == 2 ? M_PI : 2.0;
    return std::pow(measure(d) / omega, 1.0 / d.dim);
}

GridDomain scale_domain(const GridDomain& d, double t) {
    if (t <= 0) throw BilapError(2, "scale factor must be positive");
    GridDomain s = d;
    s.h = d.h * t;
    return s;
}

GridDomain quasi_disk_domain(int m, double h) {
    if (m < 1) throw BilapError(2, "quasi-disk needs at least one node");
    int K = static_cast<int>(std::ceil(std::sqrt(m / M_PI))) + 3;
    int n = 2 * K + 1;
    struct Cand { long long r2; int flat, i, j; };
    std::vector<Cand> cands;
    cands.reserve(static_cast<size_t>(n) * n);
    int flat = 0;
    for (int i = -K; i <= K; ++i)
        for (int j = -K; j <= K; ++j) {
            cands.push_back({static_cast<long long>(i) * i + static_cast<long long>(j) * j,
                             flat++, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.r2 != b.r2 ? a.r2 < b.r2 : a.flat < b.flat;
    });
    if (static_cast<size_t>(m) > cands.size())
        throw BilapError(2, "quasi-disk candidate lattice too small");
    std::vector<std::uint8_t> mask(static_cast<size_t>(n + 4) * (n + 4), 0);
    for (int k = 0; k < m; ++k) {
        int i = cands[k].i + K + 2, j = cands[k].j + K + 2;
        mask[static_cast<size_t>(i) * (n + 4) + j] = 1;
    }
    return domain_from_mask(2, n + 4, n + 4, -K - 2, -K - 2, h, std::move(mask));
}

}  // namespace bilap
