#include "vtwin/config.hpp"

#include "vtwin/error.hpp"
#include "vtwin/numfmt.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vtwin
{
namespace
{
[[noreturn]] void bad_value(const std::string &section, const std::string &key, const std::string &value,
                            const std::string &why)
{
    fail(ErrorCode::Parse, "[" + section + "] " + key + " = '" + value + "': " + why);
}

double to_double(const std::string &section, const std::string &key, const std::string &value)
{
    double v = 0.0;
    if (!parse_double(value, v) || !std::isfinite(v))
    {
        bad_value(section, key, value, "expected a finite number");
    }
    return v;
}

long long to_int(const std::string &section, const std::string &key, const std::string &value)
{
    long long v = 0;
    if (!parse_int(value, v))
    {
        bad_value(section, key, value, "expected an integer");
    }
    return v;
}

bool to_bool(const std::string &section, const std::string &key, const std::string &value)
{
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on")
    {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off")
    {
        return false;
    }
    bad_value(section, key, value, "expected true or false");
}

cplx to_complex(const std::string &section, const std::string &key, const std::string &value)
{
    const auto parts = split(value, ',');
    if (parts.size() == 1)
    {
        return {to_double(section, key, parts[0]), 0.0};
    }
    if (parts.size() == 2)
    {
        return {to_double(section, key, parts[0]), to_double(section, key, parts[1])};
    }
    bad_value(section, key, value, "expected 're' or 're, im'");
}

std::pair<double, double> to_range(const std::string &section, const std::string &key, const std::string &value)
{
    const auto parts = split(value, ',');
    if (parts.size() != 2)
    {
        bad_value(section, key, value, "expected 'lo, hi'");
    }
    return {to_double(section, key, parts[0]), to_double(section, key, parts[1])};
}

std::string complex_text(cplx c)
{
    return c.imag() == 0.0 ? fmt_num(c.real()) : fmt_num(c.real()) + ", " + fmt_num(c.imag());
}

void set_geometry(LoadedConfig &c, const std::string &key, const std::string &value)
{
    DeviceGeometry &g = c.run.geometry;
    const std::string s = "geometry";
    if (key == "M")
    {
        c.run.nearfield.M = static_cast<int>(to_int(s, key, value));
        return;
    }
    if (key == "alpha1" || key == "alpha2")
    {
        (key == "alpha1" ? g.alpha1 : g.alpha2) = to_complex(s, key, value);
        return;
    }
    if (key == "z1")
    {
        g.z1 = to_double(s, key, value);
        return;
    }
    double *target = nullptr;
    if (key == "r_d") target = &g.r_d;
    else if (key == "h") target = &g.h;
    else if (key == "a1") target = &g.a1;
    else if (key == "a2") target = &g.a2;
    else if (key == "d1") target = &g.d1;
    else if (key == "d2") target = &g.d2;
    else if (key == "r_h1") target = &g.r_h1;
    else if (key == "r_h2") target = &g.r_h2;
    else if (key == "z2") target = &g.z2;
    else if (key == "n_diamond") target = &g.n_diamond;
    else if (key == "n_ox") target = &g.n_ox;
    else if (key == "n_sio2") target = &g.n_sio2;
    else if (key == "lambda0") target = &g.lambda0;
    if (target == nullptr)
    {
        fail(ErrorCode::Parse, "[geometry] unknown key '" + key + "'");
    }
    *target = to_double(s, key, value);
}

void set_nearfield(LoadedConfig &c, const std::string &key, const std::string &value, const std::string &base_dir)
{
    NearFieldSpec &nf = c.run.nearfield;
    const std::string s = "nearfield";
    if (key == "type")
    {
        if (value == "analytic")
        {
            nf.variant = NearFieldVariant::Analytic;
        }
        else if (value == "imported")
        {
            nf.variant = NearFieldVariant::Imported;
        }
        else
        {
            bad_value(s, key, value, "expected analytic or imported");
        }
    }
    else if (key == "file")
    {
        std::filesystem::path p(value);
        if (p.is_relative())
        {
            p = std::filesystem::path(base_dir) / p;
        }
        c.run.nearfield_file = p.lexically_normal().string();
        const NearFieldSpec imported = import_nearfield(c.run.nearfield_file);
        nf.grid = imported.grid;
        nf.variant = NearFieldVariant::Imported;
    }
    else if (key == "M")
    {
        nf.M = static_cast<int>(to_int(s, key, value));
    }
    else if (key == "rho_m")
    {
        c.run.rho_m = to_double(s, key, value);
    }
    else if (key == "w")
    {
        nf.w = to_double(s, key, value);
    }
    else if (key == "amp_rho")
    {
        nf.amp_rho = to_complex(s, key, value);
    }
    else if (key == "amp_z")
    {
        nf.amp_z = to_complex(s, key, value);
    }
    else
    {
        fail(ErrorCode::Parse, "[nearfield] unknown key '" + key + "'");
    }
}

void set_emitter(LoadedConfig &c, const std::string &key, const std::string &value)
{
    EmitterSpec &e = c.run.emitter;
    const std::string s = "emitter";
    if (key == "preset")
    {
        try
        {
            const EmitterSpec p = emitter_preset(value);
            e.name = p.name;
            e.branch = p.branch;
        }
        catch (const Error &err)
        {
            bad_value(s, key, value, err.what());
        }
    }
    else if (key == "branch")
    {
        e.branch = to_double(s, key, value);
    }
    else if (key == "Fp")
    {
        e.Fp = to_double(s, key, value);
    }
    else if (key == "Q" || key == "V" || key == "n_eff")
    {
        // Cavity figures replace Fp through the Purcell formula.
        CavityMode &mode = c.cavity ? *c.cavity : c.cavity.emplace();
        const double v = to_double(s, key, value);
        (key == "Q" ? mode.Q : key == "V" ? mode.V : mode.n_eff) = v;
        try
        {
            e.Fp = purcell_factor(mode);
        }
        catch (const Error &err)
        {
            bad_value(s, key, value, err.what());
        }
    }
    else
    {
        fail(ErrorCode::Parse, "[emitter] unknown key '" + key + "'");
    }
}

void set_run(LoadedConfig &c, const std::string &key, const std::string &value)
{
    RunConfig &r = c.run;
    const std::string s = "run";
    if (key == "u") r.alignment.u = to_double(s, key, value);
    else if (key == "v") r.alignment.v = to_double(s, key, value);
    else if (key == "layer")
    {
        const long long l = to_int(s, key, value);
        if (l != 1 && l != 2)
        {
            bad_value(s, key, value, "layer must be 1 or 2");
        }
        r.alignment.layer = static_cast<int>(l);
    }
    else if (key == "na") r.na = to_double(s, key, value);
    else if (key == "eta_ex") r.eta_ex = to_double(s, key, value);
    else if (key == "hemisphere")
    {
        try
        {
            std::tie(r.n_theta, r.n_phi) = parse_hemisphere(value);
        }
        catch (const Error &err)
        {
            bad_value(s, key, value, err.what());
        }
    }
    else if (key == "r_ff") r.cascade.far.r_ff = to_double(s, key, value);
    else if (key == "asymptotic") r.cascade.far.asymptotic = to_bool(s, key, value);
    else if (key == "layer2_only") r.cascade.layer2_only = to_bool(s, key, value);
    else if (key == "max_radius1") r.max_radius1 = to_double(s, key, value);
    else if (key == "max_radius2") r.max_radius2 = to_double(s, key, value);
    else if (key == "annulus_inner") r.annulus_inner = to_double(s, key, value);
    else if (key == "annulus_outer") r.annulus_outer = to_double(s, key, value);
    else if (key == "seed")
    {
        const long long v = to_int(s, key, value);
        if (v < 0)
        {
            bad_value(s, key, value, "seed must be non-negative");
        }
        r.seed = static_cast<std::uint64_t>(v);
    }
    else if (key == "refinement_check") r.refinement_check = to_bool(s, key, value);
    else if (key == "threads")
    {
        const long long v = to_int(s, key, value);
        if (v < 0)
        {
            bad_value(s, key, value, "threads must be non-negative");
        }
        c.threads = static_cast<unsigned>(v);
    }
    else
    {
        fail(ErrorCode::Parse, "[run] unknown key '" + key + "'");
    }
}

void set_optimize(LoadedConfig &c, const std::string &key, const std::string &value)
{
    if (key == "fraction")
    {
        c.bounds_fraction = to_double("optimize", key, value);
        return;
    }
    for (std::size_t i = 0; i < design_parameter_names.size(); ++i)
    {
        if (key == design_parameter_names[i])
        {
            c.bounds_override[i] = to_range("optimize", key, value);
            return;
        }
    }
    fail(ErrorCode::Parse, "[optimize] unknown key '" + key + "'");
}
} // namespace

OptimizeBounds LoadedConfig::bounds() const
{
    OptimizeBounds b = bounds_around(run.geometry, bounds_fraction);
    for (std::size_t i = 0; i < bounds_override.size(); ++i)
    {
        if (bounds_override[i])
        {
            b.lower[i] = bounds_override[i]->first;
            b.upper[i] = bounds_override[i]->second;
        }
    }
    return b;
}

std::pair<int, int> parse_hemisphere(const std::string &text)
{
    const auto x = text.find_first_of("xX");
    long long t = 0;
    long long p = 0;
    if (x == std::string::npos || !parse_int(trim(text.substr(0, x)), t) || !parse_int(trim(text.substr(x + 1)), p))
    {
        fail(ErrorCode::Parse, "hemisphere must look like 181x256, got '" + text + "'");
    }
    require(t >= 3 && p >= 4, "hemisphere needs at least 3x4 nodes");
    return {static_cast<int>(t), static_cast<int>(p)};
}

void apply_setting(LoadedConfig &config, const std::string &section, const std::string &key,
                   const std::string &value, const std::string &base_dir)
{
    if (section == "geometry")
    {
        set_geometry(config, key, value);
    }
    else if (section == "nearfield")
    {
        set_nearfield(config, key, value, base_dir);
    }
    else if (section == "emitter")
    {
        set_emitter(config, key, value);
    }
    else if (section == "run")
    {
        set_run(config, key, value);
    }
    else if (section == "optimize")
    {
        set_optimize(config, key, value);
    }
    else
    {
        fail(ErrorCode::Parse, "unknown section [" + section + "]");
    }
}

LoadedConfig parse_config(std::istream &in, const std::string &source, const std::string &base_dir)
{
    LoadedConfig config;
    std::string section;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
        {
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[')
        {
            if (line.back() != ']')
            {
                fail(ErrorCode::Parse, where + "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            fail(ErrorCode::Parse, where + "expected key = value");
        }
        if (section.empty())
        {
            fail(ErrorCode::Parse, where + "setting outside of a section");
        }
        try
        {
            apply_setting(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
        }
        catch (const Error &e)
        {
            fail(e.code() == ErrorCode::Io ? ErrorCode::Io : ErrorCode::Parse, where + e.what());
        }
    }
    return config;
}

LoadedConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
    {
        fail(ErrorCode::Io, "cannot open config file " + path);
    }
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_config(in, path, dir.empty() ? "." : dir);
}

void write_config(const LoadedConfig &config, std::ostream &out)
{
    const RunConfig &r = config.run;
    const DeviceGeometry &g = r.geometry;
    out << "[geometry]\n";
    out << "r_d = " << fmt_num(g.r_d) << "\n";
    out << "h = " << fmt_num(g.h) << "\n";
    out << "a1 = " << fmt_num(g.a1) << "\n";
    out << "a2 = " << fmt_num(g.a2) << "\n";
    out << "d1 = " << fmt_num(g.d1) << "\n";
    out << "d2 = " << fmt_num(g.d2) << "\n";
    out << "r_h1 = " << fmt_num(g.r_h1) << "\n";
    out << "r_h2 = " << fmt_num(g.r_h2) << "\n";
    if (g.z1)
    {
        out << "z1 = " << fmt_num(*g.z1) << "\n";
    }
    out << "z2 = " << fmt_num(g.z2) << "\n";
    out << "n_diamond = " << fmt_num(g.n_diamond) << "\n";
    out << "n_ox = " << fmt_num(g.n_ox) << "\n";
    out << "n_sio2 = " << fmt_num(g.n_sio2) << "\n";
    out << "lambda0 = " << fmt_num(g.lambda0) << "\n";
    out << "alpha1 = " << complex_text(g.alpha1) << "\n";
    out << "alpha2 = " << complex_text(g.alpha2) << "\n";

    const NearFieldSpec &nf = r.nearfield;
    out << "\n[nearfield]\n";
    if (nf.variant == NearFieldVariant::Imported)
    {
        out << "type = imported\n";
        out << "file = " << r.nearfield_file << "\n";
    }
    else
    {
        out << "type = analytic\n";
        out << "M = " << nf.M << "\n";
        if (r.rho_m)
        {
            out << "rho_m = " << fmt_num(*r.rho_m) << "\n";
        }
        out << "w = " << fmt_num(nf.w) << "\n";
        out << "amp_rho = " << complex_text(nf.amp_rho) << "\n";
        out << "amp_z = " << complex_text(nf.amp_z) << "\n";
    }

    out << "\n[emitter]\n";
    if (!r.emitter.name.empty())
    {
        out << "preset = " << r.emitter.name << "\n";
    }
    out << "branch = " << fmt_num(r.emitter.branch) << "\n";
    out << "Fp = " << fmt_num(r.emitter.Fp) << "\n";

    out << "\n[run]\n";
    out << "u = " << fmt_num(r.alignment.u) << "\n";
    out << "v = " << fmt_num(r.alignment.v) << "\n";
    out << "layer = " << r.alignment.layer << "\n";
    out << "na = " << fmt_num(r.na) << "\n";
    out << "eta_ex = " << fmt_num(r.eta_ex) << "\n";
    out << "hemisphere = " << r.n_theta << "x" << r.n_phi << "\n";
    out << "r_ff = " << fmt_num(r.cascade.far.r_ff) << "\n";
    out << "asymptotic = " << (r.cascade.far.asymptotic ? "true" : "false") << "\n";
    out << "layer2_only = " << (r.cascade.layer2_only ? "true" : "false") << "\n";
    const std::pair<const char *, const std::optional<double> *> radii[] = {
        {"max_radius1", &r.max_radius1},
        {"max_radius2", &r.max_radius2},
        {"annulus_inner", &r.annulus_inner},
        {"annulus_outer", &r.annulus_outer},
    };
    for (const auto &[name, v] : radii)
    {
        if (*v && std::isfinite(**v))
        {
            out << name << " = " << fmt_num(**v) << "\n";
        }
    }
    out << "seed = " << r.seed << "\n";
    out << "refinement_check = " << (r.refinement_check ? "true" : "false") << "\n";
    if (config.threads > 0)
    {
        out << "threads = " << config.threads << "\n";
    }

    out << "\n[optimize]\n";
    out << "fraction = " << fmt_num(config.bounds_fraction) << "\n";
    for (std::size_t i = 0; i < config.bounds_override.size(); ++i)
    {
        if (config.bounds_override[i])
        {
            out << design_parameter_names[i] << " = " << fmt_num(config.bounds_override[i]->first) << ", "
                << fmt_num(config.bounds_override[i]->second) << "\n";
        }
    }
}

} // namespace vtwin
