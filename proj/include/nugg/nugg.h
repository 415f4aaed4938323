/* nugg - non-uniform geometric graphs: generation, density-corrected graph
 * shift operators, degree/spectral formulas and convergence experiments.
 *
 * C API over the C++ core. All objects are opaque handles created and
 * released through these functions; every fallible call returns a
 * nugg_status and leaves a message retrievable with nugg_last_error() on
 * failure. Buffers are caller-allocated; sizes come from the *_num_* and
 * *_dim calls. The library is thread-safe for concurrent calls on distinct
 * handles.
 */
#ifndef NUGG_H
#define NUGG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nugg_status {
    NUGG_OK = 0,
    NUGG_ERR_INVALID = 1,    /* malformed arguments or configuration */
    NUGG_ERR_DOMAIN = 2,     /* value outside the mathematical domain */
    NUGG_ERR_CAPABILITY = 3, /* unsupported combination (space, method, ...) */
    NUGG_ERR_SINGULAR = 4,   /* isolated node under inverse modulation */
    NUGG_ERR_NUMERIC = 5,    /* iteration or tolerance failure */
    NUGG_ERR_IO = 6          /* file read/write failure */
} nugg_status;

typedef struct nugg_space nugg_space;
typedef struct nugg_density nugg_density;
typedef struct nugg_graph nugg_graph;
typedef struct nugg_gso_spec nugg_gso_spec;
typedef struct nugg_matrix nugg_matrix;
typedef struct nugg_report nugg_report;

const char* nugg_version(void);

/* message for the most recent failure on this thread */
const char* nugg_last_error(void);

/* release a string returned through a char** out parameter */
void nugg_string_free(char* s);

/* ---- latent spaces ----------------------------------------------------- */

/* kind: "s1", "disk", "sphere", "hyperbolic" (R used for "hyperbolic" only) */
nugg_status nugg_space_create(const char* kind, double R, nugg_space** out);
void nugg_space_free(nugg_space* s);

nugg_status nugg_space_distance(const nugg_space* s, double theta1, double r1, double theta2,
                                double r2, double* out);
/* measure of a metric ball; normalized != 0 divides by the total measure */
nugg_status nugg_space_ball_measure(const nugg_space* s, double alpha, int normalized,
                                    double* out);

/* ---- angular densities -------------------------------------------------- */

/* spec: "uniform" or a JSON object {"type":"sbrv"|"mvm"|"uniform",
 * "c":[...], "n":[...], "mu":[...], "kappa":[...]} (kappa for mvm only) */
nugg_status nugg_density_create(const char* spec, nugg_density** out);
nugg_status nugg_density_to_json(const nugg_density* d, char** out);
void nugg_density_free(nugg_density* d);

nugg_status nugg_density_eval(const nugg_density* d, double theta, double* out);

/* cosine-series surrogate of a von Mises mixture */
nugg_status nugg_density_mvm_to_series(const nugg_density* d, nugg_density** out);

nugg_status nugg_density_sample_angles(const nugg_density* d, uint64_t seed, long count,
                                       double* out);

/* method: 0 closed form, 1 quadrature */
nugg_status nugg_ball_probability(const nugg_space* s, const nugg_density* d, double theta,
                                  double r, double alpha, int method, double* out);
nugg_status nugg_expected_degree(const nugg_space* s, const nugg_density* d, double theta,
                                 double r, double alpha, double N, int method, double* out);
nugg_status nugg_expected_average_degree(const nugg_space* s, const nugg_density* d, double alpha,
                                         double N, double* out);

/* ---- graph generation --------------------------------------------------- */

typedef struct nugg_hub_config {
    long n;        /* node count, >= 1 */
    long hubs;     /* hub seed count, in [0, n] */
    double alpha;  /* base radius; < 0 selects the connectivity radius */
    double beta;   /* hub radius increment; < 0 defaults to 3 alpha */
    double eps;    /* hub spreading distance; < 0 defaults to alpha / 10 */
    uint64_t seed;
} nugg_hub_config;

nugg_status nugg_graph_generate(const nugg_space* s, const nugg_density* d,
                                const nugg_hub_config* cfg, nugg_graph** out);
void nugg_graph_free(nugg_graph* g);

long nugg_graph_num_nodes(const nugg_graph* g);
long nugg_graph_num_edges(const nugg_graph* g);
long nugg_graph_hub_count(const nugg_graph* g);
double nugg_graph_alpha(const nugg_graph* g);
double nugg_graph_beta(const nugg_graph* g);
double nugg_graph_eps(const nugg_graph* g);

/* fill caller buffers of length num_nodes; any pointer may be NULL */
nugg_status nugg_graph_nodes(const nugg_graph* g, double* theta, double* r, double* rho, int* hub,
                             double* radius, int* degree);
/* fill u, v buffers of length num_edges */
nugg_status nugg_graph_edges(const nugg_graph* g, int* u, int* v);

/* normalized neighborhood volumes (hub-aware on the circle) */
nugg_status nugg_graph_neighborhood_volumes(const nugg_graph* g, double* out);

/* generating context stored with the graph */
nugg_status nugg_graph_space(const nugg_graph* g, nugg_space** out);
nugg_status nugg_graph_density(const nugg_graph* g, nugg_density** out);

nugg_status nugg_graph_write_json(const nugg_graph* g, const char* path);
nugg_status nugg_graph_write_csv(const nugg_graph* g, const char* nodes_path,
                                 const char* edges_path);
nugg_status nugg_graph_read_json(const char* path, nugg_graph** out);

/* ---- graph shift operators ---------------------------------------------- */

/* presets: adjacency, combinatorial, signless, random_walk, right_normalized,
 * sym_norm_adjacency, sym_norm_laplacian, eq8 */
nugg_status nugg_gso_spec_preset(const char* name, nugg_gso_spec** out);
/* json: {"m1":tok,...,"m4":tok} with tok in "0","1","-1","inv:1","inv:0.5",
 * or {"preset":name} */
nugg_status nugg_gso_spec_parse(const char* json, nugg_gso_spec** out);
nugg_status nugg_gso_spec_to_json(const nugg_gso_spec* s, char** out);
/* arbitrary continuous modulations: m(which, x, user) with which in 1..4 */
nugg_status nugg_gso_spec_custom(double (*m)(int which, double x, void* user), void* user,
                                 nugg_gso_spec** out);
void nugg_gso_spec_free(nugg_gso_spec* s);

/* rho_mode: "true" (stored density), "ignore" (all ones), "estimate"
 * (degree-proportional, inverse-mean normalized) */
nugg_status nugg_gso_build_from_graph(const nugg_graph* g, const char* rho_mode,
                                      const nugg_gso_spec* spec, nugg_matrix** out);
/* raw path: adjacency row-major n*n, rho of length n (NULL for ones) */
nugg_status nugg_gso_build_dense(int n, const double* adjacency, const double* rho,
                                 const nugg_gso_spec* spec, nugg_matrix** out);
/* matrix-free action on a signal of length num_nodes */
nugg_status nugg_gso_apply(const nugg_graph* g, const char* rho_mode, const nugg_gso_spec* spec,
                           const double* u, double* out);

nugg_status nugg_matrix_create(int n, const double* data, nugg_matrix** out);
int nugg_matrix_dim(const nugg_matrix* m);
double nugg_matrix_get(const nugg_matrix* m, int i, int j);
nugg_status nugg_matrix_copy(const nugg_matrix* m, double* out);
nugg_status nugg_matrix_write_csv(const nugg_matrix* m, const char* path);
nugg_status nugg_matrix_write_coo(const nugg_matrix* m, const char* path);
void nugg_matrix_free(nugg_matrix* m);

/* affine map from the rho = 1 operator of a preset to its textbook matrix */
nugg_status nugg_matrix_canonical_scale(const nugg_matrix* m, const char* preset, int n_nodes,
                                        nugg_matrix** out);

/* 1 if the matrix is symmetric (the eigensolver precondition), else 0 */
int nugg_matrix_is_symmetric(const nugg_matrix* m);

nugg_status nugg_matrix_spectral_radius(const nugg_matrix* m, double* out);
/* all eigenvalues of a symmetric matrix, ascending, buffer of length dim */
nugg_status nugg_matrix_eigenvalues(const nugg_matrix* m, double* out);
nugg_status nugg_matrix_extreme_eigenvalues(const nugg_matrix* m, double* lambda_min,
                                            double* lambda_max);

/* eigenvalues (with multiplicities) of the fully degree-normalized operator
 * of K_{n,m}; buffers of capacity *count, filled count returned */
nugg_status nugg_bipartite_spectrum(int n, int m, double* values, int* multiplicities,
                                    int* count);

nugg_status nugg_diag_commute_check(int n, const double* a, const double* v, int* identity1,
                                    int* iff_condition, int* identity2);

/* ---- density estimation ------------------------------------------------- */

/* volumes NULL: degree-proportional estimate normalized to mean(1/rho) = 1;
 * else rho_i = (deg_i / n) / volumes_i. defined[i] = 0 marks zero-degree
 * nodes (estimate is the sentinel 0). */
nugg_status nugg_estimate_density(const nugg_graph* g, const double* volumes, double* rho_hat,
                                  int* defined);
nugg_status nugg_pnet_features(const nugg_graph* g, double* inv_degree,
                               double* inv_mean_neighbor_degree, int* isolated);
nugg_status nugg_normalize_inverse_mean(const double* rho, long n, double* out);

/* ---- convergence experiments --------------------------------------------- */

typedef struct nugg_convergence_config {
    const long* n_grid; /* strictly increasing */
    int n_count;
    int trials;
    const char* u;        /* "constant[:v]", "cos:k", "rpoly:k" */
    double p;             /* tail probability for the sup-error scaling */
    double alpha;         /* constant base radius */
    long hubs;            /* hub seeds per trial (circle only) */
    double beta, eps;     /* < 0: defaults */
    const char* rho_mode; /* "true" or "ignore" */
    uint64_t seed;
    int probes;  /* <= 0 defaults to 64 */
    int threads; /* <= 0: NUGG_THREADS env or hardware */
} nugg_convergence_config;

nugg_status nugg_convergence_run(const nugg_space* s, const nugg_density* d,
                                 const nugg_gso_spec* spec, const nugg_convergence_config* cfg,
                                 nugg_report** out);
void nugg_report_free(nugg_report* r);

int nugg_report_grid_size(const nugg_report* r);
double nugg_report_slope(const nugg_report* r);
/* per-N aggregates (medians over trials), buffers of length grid_size */
nugg_status nugg_report_per_n(const nugg_report* r, long* n, double* mse, double* sup_err);
nugg_status nugg_report_write_csv(const nugg_report* r, const char* path);
nugg_status nugg_report_write_json(const nugg_report* r, const char* path);

/* continuous operator value at a point, constant radius field */
nugg_status nugg_continuous_apply(const nugg_space* s, const nugg_gso_spec* spec, const char* u,
                                  double alpha, double theta, double r, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NUGG_H */
