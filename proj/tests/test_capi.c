#include "vtwin/vtwin.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                                                                   \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
        {                                                                                                              \
            fprintf(stderr, "%s:%d: expectation failed: %s (last error: %s)\n", __FILE__, __LINE__, #cond,            \
                    vtwin_last_error());                                                                               \
            ++failures;                                                                                                \
        }                                                                                                              \
    } while (0)

static void scalar_helpers(void)
{
    double v = 0.0;
    EXPECT(vtwin_zpl_efficiency(62.0, 0.25, &v) == VTWIN_OK);
    EXPECT(fabs(v - 0.99598) < 1e-5);
    EXPECT(vtwin_required_purcell(0.9375, 0.25, &v) == VTWIN_OK);
    EXPECT(fabs(v - 3.75) < 1e-12);
    EXPECT(vtwin_purcell_factor(1e4, 3.0, 1.0, &v) == VTWIN_OK);
    EXPECT(fabs(v - 253.3) < 0.05);

    EXPECT(vtwin_required_purcell(1.0, 0.25, &v) == VTWIN_ERR_INVALID_ARGUMENT);
    EXPECT(strlen(vtwin_last_error()) > 0);
    EXPECT(vtwin_zpl_efficiency(1.0, 0.25, NULL) == VTWIN_ERR_INVALID_ARGUMENT);
    EXPECT(strcmp(vtwin_status_name(VTWIN_ERR_PARSE), "parse error") == 0);
}

static void config_errors(void)
{
    vtwin_config *cfg = NULL;
    EXPECT(vtwin_config_load("/nonexistent/run.ini", &cfg) == VTWIN_ERR_IO);
    EXPECT(cfg == NULL);
    EXPECT(vtwin_config_default(&cfg) == VTWIN_OK);
    EXPECT(vtwin_config_set(cfg, "geometry", "radius", "1") == VTWIN_ERR_PARSE);
    EXPECT(strstr(vtwin_last_error(), "radius") != NULL);
    EXPECT(vtwin_config_set(cfg, "run", "na", "0.7x") == VTWIN_ERR_PARSE);
    EXPECT(vtwin_config_set(NULL, "run", "na", "0.5") == VTWIN_ERR_INVALID_ARGUMENT);
    vtwin_config_free(cfg);
    vtwin_config_free(NULL);
}

static void simulate_and_sweep(void)
{
    vtwin_config *cfg = NULL;
    vtwin_result *res = NULL;
    vtwin_report rep;
    double onaxis = 0.0;

    EXPECT(vtwin_config_default(&cfg) == VTWIN_OK);
    EXPECT(vtwin_config_set(cfg, "run", "hemisphere", "41x32") == VTWIN_OK);
    EXPECT(vtwin_simulate(cfg, &res) == VTWIN_OK);
    EXPECT(vtwin_result_report(res, &rep) == VTWIN_OK);
    EXPECT(rep.eta_col > 0.0 && rep.eta_col <= 1.0);
    EXPECT(rep.overlap_gauss > 0.0 && rep.overlap_gauss <= 1.0);
    EXPECT(fabs(rep.eta_tot - rep.eta_zpl * rep.eta_col) < 1e-15);
    EXPECT(rep.layer1_count > 0);
    EXPECT(vtwin_result_onaxis_intensity(res, &onaxis) == VTWIN_OK);
    EXPECT(onaxis > 0.0);
    EXPECT(vtwin_result_write_map_csv(res, "/nonexistent/dir/map.csv") == VTWIN_ERR_IO);
    vtwin_result_free(res);

    vtwin_sweep *sweep = NULL;
    double u = 1.0, v = 1.0, eta = 0.0, m = 0.0, sd = -1.0;
    EXPECT(vtwin_sweep_run(cfg, 2, 2, &sweep) == VTWIN_OK);
    EXPECT(vtwin_sweep_size(sweep) == 3);
    EXPECT(vtwin_sweep_entry(sweep, 0, &u, &v, &eta) == VTWIN_OK);
    EXPECT(u == 0.0 && v == 0.0);
    EXPECT(fabs(eta - rep.eta_col) < 1e-15);
    EXPECT(vtwin_sweep_entry(sweep, 3, &u, &v, &eta) == VTWIN_ERR_OUT_OF_RANGE);
    EXPECT(vtwin_sweep_stats(sweep, &m, &sd) == VTWIN_OK);
    EXPECT(sd >= 0.0);
    vtwin_sweep_free(sweep);
    EXPECT(vtwin_sweep_run(cfg, 3, 2, &sweep) == VTWIN_ERR_INVALID_ARGUMENT);

    EXPECT(vtwin_config_set(cfg, "geometry", "alpha1", "0") == VTWIN_OK);
    EXPECT(vtwin_config_set(cfg, "geometry", "alpha2", "0") == VTWIN_OK);
    EXPECT(vtwin_simulate(cfg, &res) == VTWIN_ERR_UNDEFINED_RATIO);
    EXPECT(res == NULL);
    vtwin_config_free(cfg);
}

static void optimize_small(void)
{
    vtwin_config *cfg = NULL;
    vtwin_optimization *opt = NULL;
    double best = -1.0;
    double x[8];
    EXPECT(vtwin_config_default(&cfg) == VTWIN_OK);
    EXPECT(vtwin_config_set(cfg, "run", "hemisphere", "21x16") == VTWIN_OK);
    EXPECT(vtwin_optimize(cfg, 3, &opt) == VTWIN_OK);
    EXPECT(vtwin_optimization_trace_size(opt) == 3);
    EXPECT(vtwin_optimization_best(opt, &best, x) == VTWIN_OK);
    EXPECT(best >= 0.0);
    EXPECT(x[0] > 1.0);
    vtwin_optimization_free(opt);
    EXPECT(vtwin_optimize(cfg, 0, &opt) == VTWIN_ERR_INVALID_ARGUMENT);
    vtwin_config_free(cfg);
}

int main(void)
{
    EXPECT(strlen(vtwin_version()) > 0);
    scalar_helpers();
    config_errors();
    simulate_and_sweep();
    optimize_small();
    if (failures > 0)
    {
        fprintf(stderr, "%d expectation(s) failed\n", failures);
        return 1;
    }
    printf("C interface: all expectations met\n");
    return 0;
}
