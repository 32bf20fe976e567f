/* C interface to the p-bilaplacian eigensolver library.
 *
 * All functions return a status code (BILAP_OK on success) unless the value
 * itself is the result. After a failure, bilap_last_error() returns a
 * thread-local description of what went wrong. Handles are opaque; destroy
 * functions accept NULL.
 */
#ifndef BILAP_H
#define BILAP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BILAP_OK 0
#define BILAP_EINVAL 1  /* bad argument (null handle, short buffer) */
#define BILAP_ECONFIG 2 /* invalid configuration or domain parameters */
#define BILAP_ESOLVER 3 /* solver failed to converge or factorize */
#define BILAP_EIO 4     /* file system failure */

typedef struct bilap_domain bilap_domain;
typedef struct bilap_eigenpair bilap_eigenpair;
typedef struct bilap_trace bilap_trace;

const char* bilap_version(void);
const char* bilap_last_error(void);

/* shape: "interval" | "disk" | "rectangle" | "ellipse" | "stadium" | "lshape".
 * p1/p2 are the shape dimensions (radius, sides, semi-axes); h is the 2D grid
 * spacing (ignored for intervals); M the interval cell count (ignored in 2D).
 * The handle caches solver factorizations, so reuse it across solves. */
int bilap_domain_create(const char* shape, double p1, double p2, double h, int M,
                        bilap_domain** out);
void bilap_domain_destroy(bilap_domain* d);

int bilap_domain_dim(const bilap_domain* d);     /* -1 on bad handle */
int bilap_domain_size(const bilap_domain* d);    /* interior node count */
double bilap_domain_h(const bilap_domain* d);
double bilap_domain_measure(const bilap_domain* d);
/* coordinates of interior node k; y is 0 for intervals */
int bilap_domain_node_xy(const bilap_domain* d, int k, double* x, double* y);

/* bc: "hinged" | "clamped" */
int bilap_solve(bilap_domain* d, const char* bc, double p, double tol,
                bilap_eigenpair** out);
void bilap_eigenpair_destroy(bilap_eigenpair* e);
double bilap_eigenpair_lambda(const bilap_eigenpair* e);
double bilap_eigenpair_el_residual(const bilap_eigenpair* e);
int bilap_eigenpair_iterations(const bilap_eigenpair* e);
/* copies the normalized eigenfunction (one value per interior node, the
 * domain's node order) into buf; len must be >= bilap_domain_size */
int bilap_eigenpair_values(const bilap_eigenpair* e, double* buf, size_t len);

/* schedule must start at 2 and increase strictly; entries are the p levels */
int bilap_continuation(bilap_domain* d, const char* bc, const double* schedule,
                       size_t nsched, double tol, bilap_trace** out);
void bilap_trace_destroy(bilap_trace* t);
size_t bilap_trace_size(const bilap_trace* t);
int bilap_trace_entry(const bilap_trace* t, size_t i, double* p, double* lambda,
                      double* el_residual);
double bilap_trace_estimate(const bilap_trace* t); /* fitted lambda at 1/p = 0 */
int bilap_trace_fit(const bilap_trace* t, double* a, double* b);
int bilap_trace_terminal(const bilap_trace* t, bilap_eigenpair** out); /* copy */

/* closed-form ball values */
int bilap_torsion_ball(int n, double R, double r, double* out);
int bilap_hinged_ball_lambda(int n, double R, double* out);
int bilap_clamped_ball_lambda(int n, double R, double* out);
int bilap_clamped_profile_w(int n, double R, double r, double* out);

/* Full config-driven runs; the CLI is a thin shell over these. out_override
 * replaces the config's output directory when non-NULL; command_check, when
 * non-NULL, must match the config's command key. */
int bilap_run_config_text(const char* text, const char* out_override,
                          const char* command_check);
int bilap_run_config_file(const char* path, const char* out_override,
                          const char* command_check);

#ifdef __cplusplus
}
#endif

#endif /* BILAP_H */
