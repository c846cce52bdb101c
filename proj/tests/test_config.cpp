// Copyright 2026 The statewalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "statewalk/config.hpp"
#include "statewalk/experiments.hpp"
#include "statewalk/output.hpp"

using namespace statewalk;
namespace fs = std::filesystem;

namespace {

int error_line(const std::string& text)
{
    try
    {
        parse_config(text);
    }
    catch (const ConfigError& e)
    {
        return e.line();
    }
    return -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("statewalk_test_config_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("defaults parse from empty text")
{
    CHECK(parse_config("") == ExperimentConfig{});
    CHECK(parse_config("# only a comment\n\n") == ExperimentConfig{});
}

TEST_CASE("values, sections and comments")
{
    std::map<std::string, int> lines;
    auto c = parse_config("experiment = \"walk\"  # trailing\n"
                          "seed = 7\n"
                          "\n"
                          "[walk]\n"
                          "dim = 16\n"
                          "dt = 2.5e-3\n"
                          "stepper = \"first-order\"\n"
                          "[ensemble]\n"
                          "write_matrices = true\n",
                          &lines);
    CHECK(c.experiment == "walk");
    CHECK(c.seed == 7);
    CHECK(c.walk.dim == 16);
    CHECK(c.walk.dt == 2.5e-3);
    CHECK(c.walk.stepper == "first-order");
    CHECK(c.ensemble.write_matrices);
    CHECK(lines.at("seed") == 2);
    CHECK(lines.at("walk.dt") == 6);
    CHECK(lines.at("ensemble.write_matrices") == 9);
}

TEST_CASE("canonical text round trips")
{
    ExperimentConfig c;
    c.experiment = "drift-walk";
    c.out = "dir with \"quotes\" and # hash";
    c.alpha = 0.05;
    c.hbar = 1e-3;
    c.walk.dt = 0.1 + 0.2;
    c.classical.center = -1.0 / 3.0;
    c.potential.kind = "anharmonic";
    c.potential.stiffness = 1.0;
    c.potential.quartic = 0.25;
    auto text = to_config_text(c);
    CHECK(parse_config(text) == c);
    CHECK(to_config_text(parse_config(text)) == text);
    CHECK(config_to_json(c)["walk"]["dt"].get<double>() == c.walk.dt);
}

TEST_CASE("errors carry the offending line")
{
    CHECK(error_line("seed = 1\n[walk]\nsteps = 10\nbogus = 3\n") == 4);
    CHECK(error_line("[nowhere]\n") == 1);
    CHECK(error_line("seed = 1\nseed = 2\n") == 2);
    CHECK(error_line("\n\nseed = \"abc\"\n") == 3);
    CHECK(error_line("[walk]\ndim = 2.5\n") == 2);
    CHECK(error_line("[ensemble]\nwrite_matrices = 1\n") == 2);
    CHECK(error_line("alpha = 1\n") == 1);
    CHECK(error_line("seed 5\n") == 1);
    CHECK(error_line("out = \"unterminated\n") == 1);
    CHECK(error_line("[walk\n") == 1);
    CHECK(error_line("\n[ensemble]\nkind = \"gse\"\n") == 3);
    CHECK(error_line("experiment = \"dance\"\n") == 1);
    CHECK(error_line("[walk]\nstepper = \"first-order\"\ndt = 0.1\n") == 3);
    CHECK(error_line("[drift]\ntargets = 64\n") == 2);
    CHECK(error_line("[potential]\nkind = \"cubic\"\n") == 2);

    try
    {
        parse_config("[walk]\nsteps = -1\n");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(std::string(e.what()) == "line 2: walk.steps: must be >= 1");
    }
}

TEST_CASE("experiment specific checks")
{
    CHECK(error_line("experiment = \"gaussian-overlap\"\n[grid]\npoints = 40\n") == 3);
    CHECK(error_line("experiment = \"gaussian-overlap\"\n[grid]\nextent = 10.0\npoints = 800\n")
          == 3);
    CHECK(error_line("experiment = \"classical-limit\"\n[classical]\nsigma = 0.1\n") == 3);
    CHECK(error_line("experiment = \"drift-walk\"\n[drift]\ncapture_radius = 0.6\n") == 3);
    CHECK(error_line("experiment = \"gaussian-overlap\"\n[grid]\nextent = 40.0\npoints = 800\n")
          == -1);
}

TEST_CASE("missing file is a config error")
{
    CHECK_THROWS_AS(load_config("/nonexistent/statewalk.conf"), ConfigError);
}

TEST_CASE("output set records checksums")
{
    CHECK(sha256_hex("abc")
          == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
    CsvTable t({"a", "b"});
    t.row({1.0, 0.25}).row_text({"x", "y"});
    CHECK(t.text() == "a,b\n1,0.25\nx,y\n");
    CHECK_THROWS(t.row({1.0}));

    auto dir = scratch("outputs");
    OutputSet out(dir);
    out.write_csv("sub/t.csv", t);
    REQUIRE(out.records().size() == 1);
    CHECK(out.records()[0].path == "sub/t.csv");
    CHECK(out.records()[0].bytes == t.text().size());
    CHECK(out.records()[0].sha256 == sha256_hex(t.text()));
    CHECK(slurp(dir / "sub/t.csv") == t.text());
    fs::remove_all(dir);
}

TEST_CASE("gaussian-overlap writes its schema and manifest")
{
    ExperimentConfig c;
    c.experiment = "gaussian-overlap";
    c.out = scratch("overlap").string();
    c.grid = {40.0, 800};
    c.overlap.pairs = 20;
    RunOutcome r = run_experiment(c);
    CHECK(r.exit_code == kExitOk);
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0].passed);

    auto csv = slurp(fs::path(c.out) / "overlap.csv");
    CHECK(csv.rfind("sigma,delta,separation,closed_form,quadrature,abs_error\n", 0) == 0);
    auto manifest = nlohmann::json::parse(slurp(fs::path(c.out) / "manifest.json"));
    CHECK(manifest["artifact_version"] == kArtifactVersion);
    CHECK(manifest["exit_code"] == 0);
    CHECK(manifest["rng"]["generator"] == "philox4x32-10");
    CHECK(parse_config(manifest["config_text"].get<std::string>()) == c);
    for (const auto& o : manifest["outputs"])
        CHECK(sha256_hex(slurp(fs::path(c.out) / o["path"].get<std::string>()))
              == o["sha256"].get<std::string>());
    fs::remove_all(c.out);
}

TEST_CASE("same seed gives byte-identical outputs")
{
    ExperimentConfig c;
    c.experiment = "sample-goe";
    c.ensemble.dim = 12;
    c.ensemble.samples = 5;
    c.ensemble.write_matrices = true;
    std::vector<std::string> sums[2];
    for (int run = 0; run < 2; ++run)
    {
        c.out = scratch("repeat" + std::to_string(run)).string();
        run_experiment(c);
        auto manifest = nlohmann::json::parse(slurp(fs::path(c.out) / "manifest.json"));
        for (const auto& o : manifest["outputs"])
            sums[run].push_back(o["sha256"]);
        fs::remove_all(c.out);
    }
    CHECK(sums[0].size() == 4);
    CHECK(sums[0] == sums[1]);
}

TEST_CASE("constrained walk reports a test failure at a hostile alpha")
{
    ExperimentConfig c;
    c.experiment = "constrained-walk";
    c.out = scratch("hostile").string();
    c.trials = 500;
    c.stride = 100;
    c.constrained.steps = 200;
    c.alpha = 0.999;
    CHECK(run_experiment(c).exit_code == kExitTestFailure);
    c.alpha = 0.01;
    CHECK(run_experiment(c).exit_code == kExitOk);
    fs::remove_all(c.out);
}

TEST_CASE("packets leaving the grid are runtime errors")
{
    ExperimentConfig c;
    c.experiment = "classical-limit";
    c.out = scratch("exit").string();
    c.classical.sigma = 0.2;
    c.classical.center = -2.0;
    CHECK_THROWS_WITH_AS(run_experiment(c), "domain exit", std::domain_error);
    fs::remove_all(c.out);
}

TEST_CASE("drift walk outcomes")
{
    ExperimentConfig c;
    c.experiment = "drift-walk";
    c.out = scratch("drift").string();
    c.trials = 40;
    c.walk.dim = 6;
    c.walk.steps = 1500;
    c.walk.stepper = "first-order";
    RunOutcome r = run_experiment(c);
    REQUIRE(r.reports.size() == 1);
    auto lines = slurp(fs::path(c.out) / "outcomes.csv");
    CHECK(lines.rfind("trial,outcome,steps\n", 0) == 0);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 41);
    fs::remove_all(c.out);
}
