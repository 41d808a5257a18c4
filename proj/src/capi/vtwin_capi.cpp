#include "vtwin/vtwin.h"

#include "vtwin/config.hpp"
#include "vtwin/error.hpp"
#include "vtwin/numfmt.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

struct vtwin_config
{
    vtwin::LoadedConfig cfg;
};

struct vtwin_result
{
    vtwin::PipelineResult result;
};

struct vtwin_sweep
{
    vtwin::SweepResult sweep;
};

struct vtwin_optimization
{
    vtwin::LoadedConfig cfg;
    vtwin::OptimizeResult result;
};

namespace
{
thread_local std::string last_error;

vtwin_status to_status(vtwin::ErrorCode code)
{
    switch (code)
    {
    case vtwin::ErrorCode::InvalidArgument:
        return VTWIN_ERR_INVALID_ARGUMENT;
    case vtwin::ErrorCode::OutOfRange:
        return VTWIN_ERR_OUT_OF_RANGE;
    case vtwin::ErrorCode::Parse:
        return VTWIN_ERR_PARSE;
    case vtwin::ErrorCode::Singularity:
        return VTWIN_ERR_SINGULARITY;
    case vtwin::ErrorCode::UndefinedRatio:
        return VTWIN_ERR_UNDEFINED_RATIO;
    case vtwin::ErrorCode::Io:
        return VTWIN_ERR_IO;
    }
    return VTWIN_ERR_INTERNAL;
}

template <class F> vtwin_status guarded(F &&body)
{
    try
    {
        body();
        last_error.clear();
        return VTWIN_OK;
    }
    catch (const vtwin::Error &e)
    {
        last_error = e.what();
        return to_status(e.code());
    }
    catch (const std::bad_alloc &)
    {
        last_error = "out of memory";
        return VTWIN_ERR_INTERNAL;
    }
    catch (const std::exception &e)
    {
        last_error = e.what();
        return VTWIN_ERR_INTERNAL;
    }
}

void need(const void *p, const char *what)
{
    if (p == nullptr)
    {
        vtwin::fail(vtwin::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
    }
}

std::ofstream open_out(const char *path)
{
    need(path, "path");
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        vtwin::fail(vtwin::ErrorCode::Io, std::string("cannot write ") + path);
    }
    return out;
}

void finish(std::ofstream &out, const char *path)
{
    out.flush();
    if (!out)
    {
        vtwin::fail(vtwin::ErrorCode::Io, std::string("write failed: ") + path);
    }
}

void apply_threads(const vtwin::LoadedConfig &cfg)
{
    if (cfg.threads > 0)
    {
        vtwin::set_worker_threads(cfg.threads);
    }
}
} // namespace

extern "C" {

const char *vtwin_version(void)
{
    return "1.0.0";
}

const char *vtwin_last_error(void)
{
    return last_error.c_str();
}

const char *vtwin_status_name(vtwin_status status)
{
    switch (status)
    {
    case VTWIN_OK:
        return "ok";
    case VTWIN_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case VTWIN_ERR_OUT_OF_RANGE:
        return "out of range";
    case VTWIN_ERR_PARSE:
        return "parse error";
    case VTWIN_ERR_SINGULARITY:
        return "singularity";
    case VTWIN_ERR_UNDEFINED_RATIO:
        return "undefined ratio";
    case VTWIN_ERR_IO:
        return "i/o error";
    case VTWIN_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

vtwin_status vtwin_set_threads(unsigned threads)
{
    return guarded([&] { vtwin::set_worker_threads(threads); });
}

vtwin_status vtwin_config_default(vtwin_config **out)
{
    return guarded([&] {
        need(out, "out");
        *out = new vtwin_config{};
    });
}

vtwin_status vtwin_config_load(const char *path, vtwin_config **out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        auto cfg = std::make_unique<vtwin_config>();
        cfg->cfg = vtwin::load_config(path);
        *out = cfg.release();
    });
}

vtwin_status vtwin_config_set(vtwin_config *config, const char *section, const char *key, const char *value)
{
    return guarded([&] {
        need(config, "config");
        need(section, "section");
        need(key, "key");
        need(value, "value");
        vtwin::LoadedConfig copy = config->cfg;
        vtwin::apply_setting(copy, section, key, value);
        config->cfg = std::move(copy);
    });
}

vtwin_status vtwin_config_write(const vtwin_config *config, const char *path)
{
    return guarded([&] {
        need(config, "config");
        std::ofstream out = open_out(path);
        vtwin::write_config(config->cfg, out);
        finish(out, path);
    });
}

void vtwin_config_free(vtwin_config *config)
{
    delete config;
}

vtwin_status vtwin_simulate(const vtwin_config *config, vtwin_result **out)
{
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        *out = nullptr;
        apply_threads(config->cfg);
        auto r = std::make_unique<vtwin_result>();
        r->result = vtwin::run_pipeline(config->cfg.run);
        *out = r.release();
    });
}

vtwin_status vtwin_result_report(const vtwin_result *result, vtwin_report *out)
{
    return guarded([&] {
        need(result, "result");
        need(out, "out");
        const vtwin::EfficiencyReport &r = result->result.report;
        out->eta_zpl = r.eta_zpl;
        out->eta_ex = r.eta_ex;
        out->na = r.na;
        out->eta_col = r.eta_col;
        out->overlap_gauss = r.overlap_gauss;
        out->waist_rad = r.waist;
        out->eta_tot = r.eta_tot;
        out->refinement_warning = r.refinement_warning ? 1 : 0;
        out->layer1_count = result->result.layer1_count;
        out->layer2_count = result->result.layer2_count;
        out->folded_u = result->result.folded_offset.x;
        out->folded_v = result->result.folded_offset.y;
    });
}

vtwin_status vtwin_result_onaxis_intensity(const vtwin_result *result, double *out)
{
    return guarded([&] {
        need(result, "result");
        need(out, "out");
        const vtwin::FarFieldMap &m = result->result.map;
        double sum = 0.0;
        for (std::size_t ip = 0; ip < m.n_phi(); ++ip)
        {
            sum += m.intensity[m.index(0, ip)];
        }
        *out = sum / static_cast<double>(m.n_phi());
    });
}

vtwin_status vtwin_result_write_map_csv(const vtwin_result *result, const char *path)
{
    return guarded([&] {
        need(result, "result");
        std::ofstream out = open_out(path);
        vtwin::write_map_csv(result->result.map, out);
        finish(out, path);
    });
}

vtwin_status vtwin_result_write_report_json(const vtwin_result *result, const char *path)
{
    return guarded([&] {
        need(result, "result");
        std::ofstream out = open_out(path);
        out << vtwin::report_json(result->result.report) << "\n";
        finish(out, path);
    });
}

vtwin_status vtwin_result_write_curve_csv(const vtwin_result *result, const char *path)
{
    return guarded([&] {
        need(result, "result");
        std::ofstream out = open_out(path);
        vtwin::write_curve_csv(result->result.report.curve, out);
        finish(out, path);
    });
}

void vtwin_result_free(vtwin_result *result)
{
    delete result;
}

vtwin_status vtwin_sweep_run(const vtwin_config *config, int layer, int grid_n, vtwin_sweep **out)
{
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        *out = nullptr;
        apply_threads(config->cfg);
        auto s = std::make_unique<vtwin_sweep>();
        s->sweep = vtwin::alignment_sweep(config->cfg.run, layer, grid_n);
        *out = s.release();
    });
}

size_t vtwin_sweep_size(const vtwin_sweep *sweep)
{
    return sweep == nullptr ? 0 : sweep->sweep.offsets.size();
}

vtwin_status vtwin_sweep_entry(const vtwin_sweep *sweep, size_t index, double *u, double *v, double *eta_col)
{
    return guarded([&] {
        need(sweep, "sweep");
        if (index >= sweep->sweep.offsets.size())
        {
            vtwin::fail(vtwin::ErrorCode::OutOfRange, "sweep index " + std::to_string(index) + " out of range");
        }
        if (u != nullptr)
        {
            *u = sweep->sweep.offsets[index].x;
        }
        if (v != nullptr)
        {
            *v = sweep->sweep.offsets[index].y;
        }
        if (eta_col != nullptr)
        {
            *eta_col = sweep->sweep.eta_col[index];
        }
    });
}

vtwin_status vtwin_sweep_stats(const vtwin_sweep *sweep, double *mean, double *stddev)
{
    return guarded([&] {
        need(sweep, "sweep");
        if (mean != nullptr)
        {
            *mean = vtwin::mean(sweep->sweep.eta_col);
        }
        if (stddev != nullptr)
        {
            *stddev = vtwin::stddev(sweep->sweep.eta_col);
        }
    });
}

vtwin_status vtwin_sweep_write_csv(const vtwin_sweep *sweep, const char *path)
{
    return guarded([&] {
        need(sweep, "sweep");
        std::ofstream out = open_out(path);
        out << "layer,u,v,eta_col\n";
        const vtwin::SweepResult &s = sweep->sweep;
        for (std::size_t i = 0; i < s.offsets.size(); ++i)
        {
            out << s.layer << "," << vtwin::fmt_num(s.offsets[i].x) << "," << vtwin::fmt_num(s.offsets[i].y) << ","
                << vtwin::fmt_num(s.eta_col[i]) << "\n";
        }
        finish(out, path);
    });
}

vtwin_status vtwin_sweep_write_snapshots(const vtwin_sweep *sweep, const char *dir)
{
    return guarded([&] {
        need(sweep, "sweep");
        need(dir, "dir");
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
        {
            vtwin::fail(vtwin::ErrorCode::Io, std::string("cannot create ") + dir + ": " + ec.message());
        }
        for (std::size_t i = 0; i < sweep->sweep.maps.size(); ++i)
        {
            char name[32];
            std::snprintf(name, sizeof name, "map_%04zu.csv", i);
            const std::string path = (std::filesystem::path(dir) / name).string();
            std::ofstream out = open_out(path.c_str());
            vtwin::write_map_csv(sweep->sweep.maps[i], out);
            finish(out, path.c_str());
        }
    });
}

void vtwin_sweep_free(vtwin_sweep *sweep)
{
    delete sweep;
}

vtwin_status vtwin_optimize(const vtwin_config *config, int budget, vtwin_optimization **out)
{
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        *out = nullptr;
        apply_threads(config->cfg);
        auto o = std::make_unique<vtwin_optimization>();
        o->cfg = config->cfg;
        o->result = vtwin::optimize_geometry(config->cfg.run, config->cfg.bounds(), budget, config->cfg.run.seed);
        *out = o.release();
    });
}

vtwin_status vtwin_optimization_best(const vtwin_optimization *opt, double *objective, double params[8])
{
    return guarded([&] {
        need(opt, "optimization");
        if (objective != nullptr)
        {
            *objective = opt->result.best_objective;
        }
        if (params != nullptr)
        {
            const vtwin::DesignVector x = vtwin::design_vector(opt->result.best);
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                params[i] = x[i];
            }
        }
    });
}

size_t vtwin_optimization_trace_size(const vtwin_optimization *opt)
{
    return opt == nullptr ? 0 : opt->result.trace.size();
}

vtwin_status vtwin_optimization_write_trace_csv(const vtwin_optimization *opt, const char *path)
{
    return guarded([&] {
        need(opt, "optimization");
        std::ofstream out = open_out(path);
        out << "evaluation";
        for (const char *name : vtwin::design_parameter_names)
        {
            out << "," << name;
        }
        out << ",objective,best\n";
        for (const vtwin::TraceEntry &t : opt->result.trace)
        {
            out << t.evaluation;
            for (double x : t.x)
            {
                out << "," << vtwin::fmt_num(x);
            }
            out << "," << vtwin::fmt_num(t.objective) << "," << vtwin::fmt_num(t.best) << "\n";
        }
        finish(out, path);
    });
}

vtwin_status vtwin_optimization_write_config(const vtwin_optimization *opt, const char *path)
{
    return guarded([&] {
        need(opt, "optimization");
        vtwin::LoadedConfig best = opt->cfg;
        best.run.geometry = opt->result.best;
        std::ofstream out = open_out(path);
        vtwin::write_config(best, out);
        finish(out, path);
    });
}

void vtwin_optimization_free(vtwin_optimization *opt)
{
    delete opt;
}

vtwin_status vtwin_fig2_write_csv(const int *charges, size_t count, int samples, const char *path)
{
    return guarded([&] {
        need(charges, "charges");
        const std::vector<int> list(charges, charges + count);
        const auto rows = vtwin::fig2_profiles(list, vtwin::RingSpec{}, vtwin::na_samples(samples));
        std::ofstream out = open_out(path);
        out << "L,NA,intensity_IF,intensity_FF\n";
        for (const vtwin::Fig2Row &r : rows)
        {
            out << r.charge << "," << vtwin::fmt_num(r.na) << "," << vtwin::fmt_num(r.intensity_if) << ","
                << vtwin::fmt_num(r.intensity_ff) << "\n";
        }
        finish(out, path);
    });
}

vtwin_status vtwin_compare_write_csv(const int *n_list, size_t count, const char *path)
{
    return guarded([&] {
        need(n_list, "n_list");
        const std::vector<int> list(n_list, n_list + count);
        const auto rows = vtwin::model_compare(vtwin::RingSpec{}, list);
        std::ofstream out = open_out(path);
        out << "N,rms_if,rms_ff\n";
        for (const vtwin::CompareRow &r : rows)
        {
            out << r.N << "," << vtwin::fmt_num(r.rms_if) << "," << vtwin::fmt_num(r.rms_ff) << "\n";
        }
        finish(out, path);
    });
}

vtwin_status vtwin_zpl_efficiency(double purcell, double branch, double *out)
{
    return guarded([&] {
        need(out, "out");
        *out = vtwin::zpl_efficiency(purcell, branch);
    });
}

vtwin_status vtwin_required_purcell(double eta_target, double branch, double *out)
{
    return guarded([&] {
        need(out, "out");
        *out = vtwin::required_purcell(eta_target, branch);
    });
}

vtwin_status vtwin_purcell_factor(double q, double mode_volume, double n_eff, double *out)
{
    return guarded([&] {
        need(out, "out");
        *out = vtwin::purcell_factor(vtwin::CavityMode{q, mode_volume, n_eff});
    });
}

} // extern "C"
