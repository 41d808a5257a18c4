#include "vtwin/vtwin.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace
{
struct Overrides
{
    std::string na;
    std::string eta_ex;
    std::string seed;
    std::string hemisphere;
    bool layer2_only = false;
    unsigned threads = 0;
};

struct Failure
{
    vtwin_status status;
};

void check(vtwin_status s)
{
    if (s != VTWIN_OK)
    {
        std::fprintf(stderr, "vtwin: %s: %s\n", vtwin_status_name(s), vtwin_last_error());
        throw Failure{s};
    }
}

class Config
{
public:
    explicit Config(const std::string &path) { check(vtwin_config_load(path.c_str(), &cfg_)); }
    ~Config() { vtwin_config_free(cfg_); }
    Config(const Config &) = delete;
    Config &operator=(const Config &) = delete;

    void set(const char *section, const char *key, const std::string &value)
    {
        if (!value.empty())
        {
            check(vtwin_config_set(cfg_, section, key, value.c_str()));
        }
    }

    void apply(const Overrides &o)
    {
        set("run", "na", o.na);
        set("run", "eta_ex", o.eta_ex);
        set("run", "seed", o.seed);
        set("run", "hemisphere", o.hemisphere);
        if (o.layer2_only)
        {
            set("run", "layer2_only", "true");
        }
        if (o.threads > 0)
        {
            set("run", "threads", std::to_string(o.threads));
        }
    }

    const vtwin_config *get() const { return cfg_; }

private:
    vtwin_config *cfg_ = nullptr;
};

std::string in_dir(const std::string &dir, const char *name)
{
    return (std::filesystem::path(dir) / name).string();
}

void make_dir(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
    {
        std::fprintf(stderr, "vtwin: cannot create %s: %s\n", dir.c_str(), ec.message().c_str());
        throw Failure{VTWIN_ERR_IO};
    }
}

void add_run_flags(CLI::App *cmd, Overrides &o)
{
    cmd->add_option("--na", o.na, "NA of record");
    cmd->add_option("--eta-ex", o.eta_ex, "Extraction efficiency eta_ex");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--hemisphere", o.hemisphere, "Far-field grid, e.g. 181x256");
    cmd->add_flag("--layer2-only", o.layer2_only, "Drop the direct layer-1 radiation");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

int parse_grid(const std::string &text)
{
    const auto x = text.find_first_of("xX");
    try
    {
        const int a = std::stoi(text.substr(0, x));
        const int b = x == std::string::npos ? a : std::stoi(text.substr(x + 1));
        if (a == b && a >= 1)
        {
            return a;
        }
    }
    catch (const std::exception &)
    {
    }
    std::fprintf(stderr, "vtwin: --grid expects NxN with equal N >= 1, got '%s'\n", text.c_str());
    throw Failure{VTWIN_ERR_INVALID_ARGUMENT};
}

void print_report(const vtwin_report &r)
{
    std::printf("eta_col(NA=%.3g)  %.6f\n", r.na, r.eta_col);
    std::printf("gaussian overlap  %.6f (waist %.4f rad)\n", r.overlap_gauss, r.waist_rad);
    std::printf("eta_zpl           %.6f\n", r.eta_zpl);
    std::printf("eta_tot           %.6f\n", r.eta_tot);
    std::printf("scatterers        %zu + %zu\n", r.layer1_count, r.layer2_count);
    if (r.refinement_warning)
    {
        std::printf("warning: eta_col changes by more than 0.2%% on the halved grid; refine the hemisphere\n");
    }
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Dipole-superposition digital twin of a dual-grating vertical-emission interface"};
    app.require_subcommand(1);
    std::string out_dir = "out";
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    Overrides sim_o;
    std::string sim_cfg;
    CLI::App *sim = app.add_subcommand("simulate", "Single end-to-end run");
    sim->add_option("config", sim_cfg, "Run file")->required();
    sim->add_option("--out", out_dir, "Output directory");
    add_run_flags(sim, sim_o);

    Overrides sw_o;
    std::string sw_cfg;
    int sw_layer = 1;
    std::string sw_grid = "10x10";
    bool snapshots = false;
    CLI::App *sw = app.add_subcommand("sweep", "Alignment sweep over the reduced-symmetry triangle");
    sw->add_option("config", sw_cfg, "Run file")->required();
    sw->add_option("--layer", sw_layer, "Translated grating layer")->check(CLI::IsMember({1, 2}));
    sw->add_option("--grid", sw_grid, "Barycentric sampling NxN")->capture_default_str();
    sw->add_flag("--snapshots", snapshots, "Also write every far-field map");
    sw->add_option("--out", out_dir, "Output directory");
    add_run_flags(sw, sw_o);

    Overrides op_o;
    std::string op_cfg;
    int budget = 200;
    CLI::App *op = app.add_subcommand("optimize", "Derivative-free geometry optimization");
    op->add_option("config", op_cfg, "Run file")->required();
    op->add_option("--budget", budget, "Objective evaluations")->capture_default_str();
    op->add_option("--out", out_dir, "Output directory");
    add_run_flags(op, op_o);

    bool fig2 = false;
    std::vector<int> charges{0, 1, 2, 3};
    int samples = 96;
    CLI::App *an = app.add_subcommand("analytic", "Closed-form ring fields");
    an->add_flag("--fig2", fig2, "Intensity cross sections versus NA")->required();
    an->add_option("--charges", charges, "Beam charges")->delimiter(',');
    an->add_option("--samples", samples, "NA samples on [0, 0.95]")->capture_default_str();
    an->add_option("--out", out_dir, "Output directory");

    std::vector<int> n_list{6, 12, 30, 60, 120};
    CLI::App *cmp = app.add_subcommand("compare", "Discrete ring versus closed form");
    cmp->add_option("--N", n_list, "Ring sizes, ascending")->delimiter(',');
    cmp->add_option("--out", out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try
    {
        make_dir(out_dir);
        if (sim->parsed())
        {
            Config cfg(sim_cfg);
            cfg.apply(sim_o);
            vtwin_result *res = nullptr;
            check(vtwin_simulate(cfg.get(), &res));
            vtwin_report rep{};
            vtwin_result_report(res, &rep);
            const vtwin_status s1 = vtwin_result_write_report_json(res, in_dir(out_dir, "report.json").c_str());
            const vtwin_status s2 = vtwin_result_write_map_csv(res, in_dir(out_dir, "farfield.csv").c_str());
            const vtwin_status s3 = vtwin_result_write_curve_csv(res, in_dir(out_dir, "efficiency_curve.csv").c_str());
            vtwin_result_free(res);
            check(s1);
            check(s2);
            check(s3);
            print_report(rep);
        }
        else if (sw->parsed())
        {
            const int n = parse_grid(sw_grid);
            Config cfg(sw_cfg);
            cfg.apply(sw_o);
            vtwin_sweep *sweep = nullptr;
            check(vtwin_sweep_run(cfg.get(), sw_layer, n, &sweep));
            const std::string name = "sweep_layer" + std::to_string(sw_layer);
            vtwin_status s = vtwin_sweep_write_csv(sweep, in_dir(out_dir, (name + ".csv").c_str()).c_str());
            if (s == VTWIN_OK && snapshots)
            {
                s = vtwin_sweep_write_snapshots(sweep, in_dir(out_dir, (name + "_maps").c_str()).c_str());
            }
            double m = 0.0;
            double sd = 0.0;
            vtwin_sweep_stats(sweep, &m, &sd);
            const size_t count = vtwin_sweep_size(sweep);
            vtwin_sweep_free(sweep);
            check(s);
            std::printf("layer %d: %zu offsets, mean eta_col %.6f, std %.6g\n", sw_layer, count, m, sd);
        }
        else if (op->parsed())
        {
            Config cfg(op_cfg);
            cfg.apply(op_o);
            vtwin_optimization *opt = nullptr;
            check(vtwin_optimize(cfg.get(), budget, &opt));
            double best = 0.0;
            double x[8] = {};
            vtwin_optimization_best(opt, &best, x);
            const size_t evals = vtwin_optimization_trace_size(opt);
            vtwin_status s = vtwin_optimization_write_trace_csv(opt, in_dir(out_dir, "optimize_trace.csv").c_str());
            if (s == VTWIN_OK)
            {
                s = vtwin_optimization_write_config(opt, in_dir(out_dir, "optimized.ini").c_str());
            }
            vtwin_optimization_free(opt);
            check(s);
            std::printf("best objective %.6f after %zu evaluations\n", best, evals);
            const char *names[8] = {"r_d", "h", "a1", "a2", "d1", "d2", "r_h1", "r_h2"};
            for (int i = 0; i < 8; ++i)
            {
                std::printf("  %-5s %.6f\n", names[i], x[i]);
            }
        }
        else if (an->parsed())
        {
            check(vtwin_fig2_write_csv(charges.data(), charges.size(), samples, in_dir(out_dir, "fig2.csv").c_str()));
            std::printf("wrote %s\n", in_dir(out_dir, "fig2.csv").c_str());
        }
        else if (cmp->parsed())
        {
            check(vtwin_compare_write_csv(n_list.data(), n_list.size(), in_dir(out_dir, "compare.csv").c_str()));
            std::printf("wrote %s\n", in_dir(out_dir, "compare.csv").c_str());
        }
    }
    catch (const Failure &f)
    {
        return static_cast<int>(f.status) == 0 ? 1 : static_cast<int>(f.status);
    }
    return 0;
}
