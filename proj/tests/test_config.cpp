#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vtwin/config.hpp"
#include "vtwin/error.hpp"

#include <sstream>

using namespace vtwin;

namespace
{
LoadedConfig parse(const std::string &text)
{
    std::istringstream in(text);
    return parse_config(in, "test.ini", VTWIN_TEST_DATA);
}

std::string error_of(const std::string &text)
{
    try
    {
        parse(text);
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::Parse);
        return e.what();
    }
    FAIL("no error raised");
    return "";
}
} // namespace

TEST_CASE("full file")
{
    const LoadedConfig c = parse(R"(
# device
[geometry]
r_d = 1.5
a1 = 0.52   ; trailing comment
alpha2 = 0.5, -0.25
M = 19
z1 = 0.2

[nearfield]
type = analytic
w = 0.3
amp_z = 1

[emitter]
preset = SiV
Fp = 10

[run]
u = 0.1
layer = 2
na = 0.8
hemisphere = 91x128
layer2_only = true
seed = 99
threads = 2
)");
    CHECK(c.run.geometry.r_d == 1.5);
    CHECK(c.run.geometry.a1 == 0.52);
    CHECK(c.run.geometry.alpha2 == cplx(0.5, -0.25));
    CHECK(*c.run.geometry.z1 == 0.2);
    CHECK(c.run.nearfield.M == 19);
    CHECK(c.run.nearfield.w == 0.3);
    CHECK(c.run.nearfield.amp_z == cplx(1.0, 0.0));
    CHECK(c.run.emitter.name == "SiV");
    CHECK(c.run.emitter.branch == 0.66);
    CHECK(c.run.emitter.Fp == 10.0);
    CHECK(c.run.alignment.u == 0.1);
    CHECK(c.run.alignment.layer == 2);
    CHECK(c.run.na == 0.8);
    CHECK(c.run.n_theta == 91);
    CHECK(c.run.n_phi == 128);
    CHECK(c.run.cascade.layer2_only);
    CHECK(c.run.seed == 99);
    CHECK(c.threads == 2);
}

TEST_CASE("cavity figures set the Purcell factor")
{
    const LoadedConfig c = parse("[emitter]\nQ = 10000\nV = 3\n");
    CHECK(c.run.emitter.Fp == doctest::Approx(253.3).epsilon(1e-4));
}

TEST_CASE("errors name the key")
{
    CHECK(error_of("[geometry]\nradius = 1\n").find("radius") != std::string::npos);
    CHECK(error_of("[geometry]\nr_d = abc\n").find("r_d") != std::string::npos);
    CHECK(error_of("[run]\nlayer = 3\n").find("layer") != std::string::npos);
    CHECK(error_of("[run]\nhemisphere = 181\n").find("hemisphere") != std::string::npos);
    CHECK(error_of("[emitter]\npreset = XV\n").find("preset") != std::string::npos);
    CHECK(error_of("[bogus]\nx = 1\n").find("bogus") != std::string::npos);
    CHECK(error_of("r_d = 1\n").find("test.ini:1") != std::string::npos);
    CHECK(error_of("[run]\nna 0.7\n").find("test.ini:2") != std::string::npos);
}

TEST_CASE("written files parse back to the same settings")
{
    LoadedConfig c = parse("[geometry]\nalpha1 = 0.3, 0.1\n[run]\nu = 0.05\nmax_radius2 = 2.5\n[optimize]\nr_d = 1.2, 1.6\n");
    std::stringstream out;
    write_config(c, out);
    const LoadedConfig back = parse(out.str());
    std::stringstream again;
    write_config(back, again);
    CHECK(out.str() == again.str());
    CHECK(back.run.geometry.alpha1 == cplx(0.3, 0.1));
    CHECK(*back.run.max_radius2 == 2.5);
    CHECK(back.bounds().lower[0] == 1.2);
    CHECK(back.bounds().upper[0] == 1.6);
    CHECK(back.bounds().lower[1] == doctest::Approx(0.9 * back.run.geometry.h));
}

TEST_CASE("imported near field resolves relative to the file")
{
    const LoadedConfig c = parse("[nearfield]\nfile = toy_nearfield.csv\n");
    CHECK(c.run.nearfield.variant == NearFieldVariant::Imported);
    REQUIRE(c.run.nearfield.grid != nullptr);
    CHECK(c.run.nearfield.grid->values.size() == 4);
    std::istringstream in("[nearfield]\nfile = missing.csv\n");
    CHECK_THROWS_AS(parse_config(in, "x.ini", VTWIN_TEST_DATA), Error);
}

TEST_CASE("shipped example files load")
{
    CHECK_NOTHROW(load_config(std::string(VTWIN_TEST_DATA) + "/device.ini"));
    CHECK_NOTHROW(load_config(std::string(VTWIN_TEST_DATA) + "/zpol.ini"));
}
