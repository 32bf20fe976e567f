#include "bilap.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "runner.hpp"
#include "serialize.hpp"
#include "version.hpp"

using namespace bilap;

namespace {

thread_local std::string g_last_error;

int set_error(int code, const char* msg) {
    g_last_error = msg;
    return code;
}

template <typename F>
int guarded(F&& fn) {
    try {
        fn();
        g_last_error.clear();
        return BILAP_OK;
    } catch (const BilapError& e) {
        g_last_error = e.what();
        return e.code;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BILAP_ESOLVER;
    }
}

}  // namespace

struct bilap_domain {
    GridDomain grid;
    DomainSolver solver;
    explicit bilap_domain(GridDomain g) : grid(std::move(g)), solver(grid) {}
};

struct bilap_eigenpair {
    EigenPair pair;
};

struct bilap_trace {
    ContinuationTrace trace;
};

extern "C" {

const char* bilap_version(void) { return kVersion; }
const char* bilap_last_error(void) { return g_last_error.c_str(); }

int bilap_domain_create(const char* shape, double p1, double p2, double h, int M,
                        bilap_domain** out) {
    if (!shape || !out) return set_error(BILAP_EINVAL, "null argument");
    *out = nullptr;
    return guarded([&] {
        ShapeSpec spec;
        spec.kind = shape_kind_from_name(shape);
        spec.p1 = p1;
        spec.p2 = p2;
        spec.h = h;
        spec.M = M;
        *out = new bilap_domain(make_domain(spec));
    });
}

void bilap_domain_destroy(bilap_domain* d) { delete d; }

int bilap_domain_dim(const bilap_domain* d) { return d ? d->grid.dim : -1; }
int bilap_domain_size(const bilap_domain* d) { return d ? d->grid.m() : -1; }
double bilap_domain_h(const bilap_domain* d) { return d ? d->grid.h : 0.0; }
double bilap_domain_measure(const bilap_domain* d) { return d ? measure(d->grid) : 0.0; }

int bilap_domain_node_xy(const bilap_domain* d, int k, double* x, double* y) {
    if (!d || !x || !y) return set_error(BILAP_EINVAL, "null argument");
    if (k < 0 || k >= d->grid.m()) return set_error(BILAP_EINVAL, "node index out of range");
    *x = d->grid.x(k);
    *y = d->grid.dim == 2 ? d->grid.y(k) : 0.0;
    return BILAP_OK;
}

int bilap_solve(bilap_domain* d, const char* bc, double p, double tol,
                bilap_eigenpair** out) {
    if (!d || !bc || !out) return set_error(BILAP_EINVAL, "null argument");
    *out = nullptr;
    return guarded([&] {
        BcKind kind = bc_from_name(bc);
        EigenPair pair = kind == BcKind::hinged ? d->solver.solve_hinged(p, nullptr, tol)
                                                : d->solver.solve_clamped(p, nullptr, tol);
        *out = new bilap_eigenpair{std::move(pair)};
    });
}

void bilap_eigenpair_destroy(bilap_eigenpair* e) { delete e; }

double bilap_eigenpair_lambda(const bilap_eigenpair* e) { return e ? e->pair.lambda : 0.0; }
double bilap_eigenpair_el_residual(const bilap_eigenpair* e) {
    return e ? e->pair.el_residual : 0.0;
}
int bilap_eigenpair_iterations(const bilap_eigenpair* e) {
    return e ? e->pair.iterations : -1;
}

int bilap_eigenpair_values(const bilap_eigenpair* e, double* buf, size_t len) {
    if (!e || !buf) return set_error(BILAP_EINVAL, "null argument");
    size_t m = e->pair.u.v.size();
    if (len < m) return set_error(BILAP_EINVAL, "buffer shorter than the node count");
    std::memcpy(buf, e->pair.u.v.data(), m * sizeof(double));
    return BILAP_OK;
}

int bilap_continuation(bilap_domain* d, const char* bc, const double* schedule,
                       size_t nsched, double tol, bilap_trace** out) {
    if (!d || !bc || !out || (!schedule && nsched > 0))
        return set_error(BILAP_EINVAL, "null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<double> sched(schedule, schedule + nsched);
        *out = new bilap_trace{continuation(d->grid, bc_from_name(bc), sched, tol)};
    });
}

void bilap_trace_destroy(bilap_trace* t) { delete t; }

size_t bilap_trace_size(const bilap_trace* t) { return t ? t->trace.entries.size() : 0; }

int bilap_trace_entry(const bilap_trace* t, size_t i, double* p, double* lambda,
                      double* el_residual) {
    if (!t || !p || !lambda || !el_residual) return set_error(BILAP_EINVAL, "null argument");
    if (i >= t->trace.entries.size())
        return set_error(BILAP_EINVAL, "trace index out of range");
    *p = t->trace.entries[i].p;
    *lambda = t->trace.entries[i].lambda;
    *el_residual = t->trace.entries[i].el_residual;
    return BILAP_OK;
}

double bilap_trace_estimate(const bilap_trace* t) {
    return t ? t->trace.lambda_inf_estimate : 0.0;
}

int bilap_trace_fit(const bilap_trace* t, double* a, double* b) {
    if (!t || !a || !b) return set_error(BILAP_EINVAL, "null argument");
    *a = t->trace.fit_a;
    *b = t->trace.fit_b;
    return BILAP_OK;
}

int bilap_trace_terminal(const bilap_trace* t, bilap_eigenpair** out) {
    if (!t || !out) return set_error(BILAP_EINVAL, "null argument");
    *out = new bilap_eigenpair{t->trace.terminal};
    return BILAP_OK;
}

int bilap_torsion_ball(int n, double R, double r, double* out) {
    if (!out) return set_error(BILAP_EINVAL, "null argument");
    return guarded([&] { *out = torsion_ball(n, R, r); });
}

int bilap_hinged_ball_lambda(int n, double R, double* out) {
    if (!out) return set_error(BILAP_EINVAL, "null argument");
    return guarded([&] { *out = hinged_ball_lambda(n, R); });
}

int bilap_clamped_ball_lambda(int n, double R, double* out) {
    if (!out) return set_error(BILAP_EINVAL, "null argument");
    return guarded([&] { *out = clamped_ball_lambda(n, R); });
}

int bilap_clamped_profile_w(int n, double R, double r, double* out) {
    if (!out) return set_error(BILAP_EINVAL, "null argument");
    return guarded([&] { *out = clamped_profile_w(ClampedProfileParams{n, R}, r); });
}

int bilap_run_config_text(const char* text, const char* out_override,
                          const char* command_check) {
    if (!text) return set_error(BILAP_EINVAL, "null argument");
    return guarded([&] {
        RunConfig cfg = parse_config(text);
        if (command_check && std::string(command_check) != command_name(cfg.command))
            throw BilapError(2, std::string("config command '") + command_name(cfg.command) +
                                    "' does not match requested command '" + command_check +
                                    "'");
        if (out_override) cfg.out = out_override;
        run_config(cfg);
    });
}

int bilap_run_config_file(const char* path, const char* out_override,
                          const char* command_check) {
    if (!path) return set_error(BILAP_EINVAL, "null argument");
    std::string text;
    int rc = guarded([&] { text = read_text_file(path); });
    if (rc != BILAP_OK) return rc;
    return bilap_run_config_text(text.c_str(), out_override, command_check);
}

}  // extern "C"
