#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bilap {

// Error codes shared with the CLI exit codes: 2 config/domain, 3 solver, 4 io.
struct BilapError : std::runtime_error {
    int code;
    BilapError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

enum class ShapeKind { interval, disk, rectangle, ellipse, stadium, lshape };

const char* shape_kind_name(ShapeKind k);
ShapeKind shape_kind_from_name(const std::string& s);

// Kind-specific parameters:
//   interval:  p1 = R, domain (-R,R), M cells (h derived as 2R/M)
//   disk:      p1 = R
//   rectangle: p1 x p2 side lengths, centered
//   ellipse:   p1, p2 semi-axes
//   stadium:   p1 = cap radius, p2 = straight length
//   lshape:    p1 = outer side, square minus the closed upper-right quadrant
struct ShapeSpec {
    ShapeKind kind = ShapeKind::disk;
    double p1 = 1.0;
    double p2 = 0.0;
    double h = 0.0;  // 2D spacing
    int M = 0;       // 1D cell count over (-R,R)

    bool operator==(const ShapeSpec&) const = default;
};

// Uniform lattice with nodes at integer multiples of h: node (i,j) sits at
// ((ix0+i)h, (iy0+j)h). Interior nodes are mask cells; the Dirichlet ring
// (boundary_nodes) is the first outside layer, value 0.
struct GridDomain {
    int dim = 2;
    double h = 0.0;
    int nx = 0, ny = 1;
    int ix0 = 0, iy0 = 0;
    std::vector<std::uint8_t> mask;  // nx*ny, row-major i*ny+j

    // derived on construction
    std::vector<int> node_of;                  // lattice flat -> interior index or -1
    std::vector<std::array<int, 2>> node_ij;   // interior index -> lattice (i,j)
    std::vector<std::array<int, 4>> nbr;       // +x,-x,+y,-y interior neighbor or -1
    std::vector<int> boundary_flat;            // boundary node lattice indices, ascending
    // clamped closure row per boundary node: (interior index, stencil coefficient),
    // multiply by 1/h^2 on evaluation
    std::vector<std::vector<std::pair<int, double>>> closure;

    int m() const { return static_cast<int>(node_ij.size()); }
    double x(int k) const { return (ix0 + node_ij[k][0]) * h; }
    double y(int k) const { return (iy0 + node_ij[k][1]) * h; }
};

GridDomain make_domain(const ShapeSpec& spec);

// Raw-mask constructor; validates margin, connectivity, genuine interior.
GridDomain domain_from_mask(int dim, int nx, int ny, int ix0, int iy0, double h,
                            std::vector<std::uint8_t> mask);

double measure(const GridDomain& d);
double equal_area_radius(const GridDomain& d);
GridDomain scale_domain(const GridDomain& d, double t);

// First m lattice nodes ordered by (squared center distance, row-major index);
// the prefix is edge-connected. Target grid for the discrete rearrangement.
GridDomain quasi_disk_domain(int m, double h);

struct RadialMesh {
    int n = 1;    // ambient dimension
    double R = 1.0;
    int M = 0;    // cells; nodes r_i = i*R/M, unknowns i = 0..M-1
    double h() const { return R / M; }
    double r(int i) const { return i * (R / M); }
};

}  // namespace bilap
