#ifndef VTWIN_VTWIN_H
#define VTWIN_VTWIN_H

/* C interface of the spin-photon interface digital twin. All handles are
 * opaque; every fallible call returns a vtwin_status and leaves a message in
 * vtwin_last_error() (per thread). Lengths are in units of the design
 * wavelength. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(VTWIN_BUILDING_LIBRARY)
#define VTWIN_API __declspec(dllexport)
#else
#define VTWIN_API __declspec(dllimport)
#endif
#else
#define VTWIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vtwin_status
{
    VTWIN_OK = 0,
    VTWIN_ERR_INVALID_ARGUMENT = 1,
    VTWIN_ERR_OUT_OF_RANGE = 2,
    VTWIN_ERR_PARSE = 3,
    VTWIN_ERR_SINGULARITY = 4,
    VTWIN_ERR_UNDEFINED_RATIO = 5,
    VTWIN_ERR_IO = 6,
    VTWIN_ERR_INTERNAL = 99
} vtwin_status;

typedef struct vtwin_config vtwin_config;
typedef struct vtwin_result vtwin_result;
typedef struct vtwin_sweep vtwin_sweep;
typedef struct vtwin_optimization vtwin_optimization;

typedef struct vtwin_report
{
    double eta_zpl;
    double eta_ex;
    double na;
    double eta_col;
    double overlap_gauss;
    double waist_rad;
    double eta_tot;
    int refinement_warning;
    size_t layer1_count;
    size_t layer2_count;
    double folded_u;
    double folded_v;
} vtwin_report;

VTWIN_API const char *vtwin_version(void);
VTWIN_API const char *vtwin_last_error(void);
VTWIN_API const char *vtwin_status_name(vtwin_status status);

/* Worker threads for field evaluation (0 = hardware concurrency). */
VTWIN_API vtwin_status vtwin_set_threads(unsigned threads);

VTWIN_API vtwin_status vtwin_config_default(vtwin_config **out);
VTWIN_API vtwin_status vtwin_config_load(const char *path, vtwin_config **out);
VTWIN_API vtwin_status vtwin_config_set(vtwin_config *config, const char *section, const char *key,
                                        const char *value);
VTWIN_API vtwin_status vtwin_config_write(const vtwin_config *config, const char *path);
VTWIN_API void vtwin_config_free(vtwin_config *config);

VTWIN_API vtwin_status vtwin_simulate(const vtwin_config *config, vtwin_result **out);
VTWIN_API vtwin_status vtwin_result_report(const vtwin_result *result, vtwin_report *out);
VTWIN_API vtwin_status vtwin_result_onaxis_intensity(const vtwin_result *result, double *out);
VTWIN_API vtwin_status vtwin_result_write_map_csv(const vtwin_result *result, const char *path);
VTWIN_API vtwin_status vtwin_result_write_report_json(const vtwin_result *result, const char *path);
VTWIN_API vtwin_status vtwin_result_write_curve_csv(const vtwin_result *result, const char *path);
VTWIN_API void vtwin_result_free(vtwin_result *result);

/* grid_n points per edge of the reduced triangle, grid_n (grid_n + 1) / 2 offsets. */
VTWIN_API vtwin_status vtwin_sweep_run(const vtwin_config *config, int layer, int grid_n, vtwin_sweep **out);
VTWIN_API size_t vtwin_sweep_size(const vtwin_sweep *sweep);
VTWIN_API vtwin_status vtwin_sweep_entry(const vtwin_sweep *sweep, size_t index, double *u, double *v,
                                         double *eta_col);
VTWIN_API vtwin_status vtwin_sweep_stats(const vtwin_sweep *sweep, double *mean, double *stddev);
VTWIN_API vtwin_status vtwin_sweep_write_csv(const vtwin_sweep *sweep, const char *path);
/* One far-field map CSV per offset, named map_0000.csv, ... inside dir. */
VTWIN_API vtwin_status vtwin_sweep_write_snapshots(const vtwin_sweep *sweep, const char *dir);
VTWIN_API void vtwin_sweep_free(vtwin_sweep *sweep);

/* Bounds come from the [optimize] section; the seed from [run]. */
VTWIN_API vtwin_status vtwin_optimize(const vtwin_config *config, int budget, vtwin_optimization **out);
/* params receives the 8 design values r_d, h, a1, a2, d1, d2, r_h1, r_h2. */
VTWIN_API vtwin_status vtwin_optimization_best(const vtwin_optimization *opt, double *objective,
                                               double params[8]);
VTWIN_API size_t vtwin_optimization_trace_size(const vtwin_optimization *opt);
VTWIN_API vtwin_status vtwin_optimization_write_trace_csv(const vtwin_optimization *opt, const char *path);
/* Full run file with the best geometry substituted. */
VTWIN_API vtwin_status vtwin_optimization_write_config(const vtwin_optimization *opt, const char *path);
VTWIN_API void vtwin_optimization_free(vtwin_optimization *opt);

/* Closed-form cross sections (columns L, NA, intensity_IF, intensity_FF). */
VTWIN_API vtwin_status vtwin_fig2_write_csv(const int *charges, size_t count, int samples, const char *path);
/* Discrete-vs-closed-form RMS table (columns N, rms_if, rms_ff). */
VTWIN_API vtwin_status vtwin_compare_write_csv(const int *n_list, size_t count, const char *path);

VTWIN_API vtwin_status vtwin_zpl_efficiency(double purcell, double branch, double *out);
VTWIN_API vtwin_status vtwin_required_purcell(double eta_target, double branch, double *out);
VTWIN_API vtwin_status vtwin_purcell_factor(double q, double mode_volume, double n_eff, double *out);

#ifdef __cplusplus
}
#endif

#endif
