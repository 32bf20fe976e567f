#pragma once
#include <memory>

#include "operators.hpp"

namespace bilap {

struct EigenPair {
    ScalarField u;            // ||u||_{p,lambda} = 1
    double lambda = 0.0;      // ||lap u||_{p,lambda}
    double p = 0.0;
    BcKind bc = BcKind::hinged;
    double el_residual = 0.0;
    int iterations = 0;
};

struct DualFields {
    ScalarField f;            // |lap u|^{p-2} lap u / lambda^p, log-space evaluation
    ScalarField g;            // |u|^{p-2} u
    // raw ||lap_h f - g||_{p'}; floors near eps/h^4 on fine grids since it
    // second-differences a solved field twice
    double poisson_residual = 0.0;
    double f_dualnorm = 0.0;  // equals 1/lambda up to round-off
    double g_dualnorm = 0.0;  // equals 1 up to round-off
};

// eps_f is relative: the active set is {|f| > eps_f * max|f|}, which keeps the
// threshold meaningful as f collapses toward a sign measure at large p.
struct StructureReport {
    double sign_set_fraction = 0.0;    // active-set size / m
    double inclusion_violation = 0.0;  // max |lap u / lambda - sign f| on that set
    double laplacian_spread_pos = 0.0; // (max-min of lap u)/lambda on {f > 0} of the set
    double laplacian_spread_neg = 0.0; // same on {f < 0}
    double hinged_constancy = 0.0;     // rel. std. of lap u (hinged pairs)
};

struct TraceEntry {
    double p = 0.0, lambda = 0.0, el_residual = 0.0;
};

struct ContinuationTrace {
    std::vector<TraceEntry> entries;
    double lambda_inf_estimate = 0.0;  // fit coefficient a
    double fit_a = 0.0, fit_b = 0.0;   // lambda_p ~ a + b/p over the largest half
    EigenPair terminal;
};

// Per-domain cached machinery: sparse Cholesky of -lap, torsion field, and
// (built lazily) the clamped boundary-closure capacitance factorization.
// One instance serves every p level of a continuation.
class DomainSolver {
  public:
    explicit DomainSolver(const GridDomain& d);
    ~DomainSolver();
    DomainSolver(DomainSolver&&) noexcept;
    DomainSolver& operator=(DomainSolver&&) noexcept;

    const GridDomain& domain() const;
    ScalarField torsion();  // inverse of -lap on the all-ones field

    EigenPair solve_hinged(double p, const ScalarField* init, double tol);
    EigenPair solve_clamped(double p, const ScalarField* init, double tol);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

EigenPair solve_hinged_p(const GridDomain& d, double p, const ScalarField* init, double tol);
EigenPair solve_clamped_p(const GridDomain& d, double p, const ScalarField* init, double tol);

ContinuationTrace continuation(const GridDomain& d, BcKind bc,
                               const std::vector<double>& p_schedule, double tol);

DualFields extract_duals(const EigenPair& pair);
StructureReport structure_report(const EigenPair& pair, const DualFields& duals, double eps_f);

// least-squares fit lambda ~ a + b/p over entries [n/2, n)
std::pair<double, double> fit_tail(const std::vector<double>& ps,
                                   const std::vector<double>& lams);

}  // namespace bilap
