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

#include "statewalk/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "statewalk/classical.hpp"
#include "statewalk/ensembles.hpp"
#include "statewalk/gaussian.hpp"
#include "statewalk/output.hpp"
#include "statewalk/parallel.hpp"
#include "statewalk/random.hpp"
#include "statewalk/stats.hpp"
#include "statewalk/stattests.hpp"
#include "statewalk/verify.hpp"
#include "statewalk/walk.hpp"

namespace statewalk {

namespace {

/// Index of the stream that draws a random initial state.
constexpr std::uint64_t kInitialStateStream = ~std::uint64_t{0};

using Clock = std::chrono::system_clock;

std::string utc_timestamp(Clock::time_point t)
{
    std::time_t raw = Clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&raw, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

struct Context
{
    const ExperimentConfig& config;
    OutputSet outputs;
    std::ostream* log;
    RunOutcome outcome;
    nlohmann::json lineage = nlohmann::json::array();
    nlohmann::json timings = nlohmann::json::object();

    std::uint64_t seed() const { return static_cast<std::uint64_t>(config.seed); }
    std::size_t trials() const { return static_cast<std::size_t>(config.trials); }

    void say(const std::string& line) const
    {
        if (log)
            *log << line << "\n" << std::flush;
    }

    void add_report(const TestReport& r, const std::string& file)
    {
        outputs.write_json("reports/" + file + ".json", r);
        outcome.reports.push_back(r);
        if (!r.passed)
            outcome.exit_code = kExitTestFailure;
    }

    void stream(const std::string& purpose, const std::string& rule)
    {
        lineage.push_back({{"purpose", purpose}, {"rule", rule}});
    }

    /// Result files echo the config without `out`, so they do not
    /// depend on where they were written.
    nlohmann::json summary_base() const
    {
        nlohmann::json echo = config_to_json(config);
        echo.erase("out");
        return {{"experiment", config.experiment}, {"seed", config.seed}, {"config", echo}};
    }
};

bool take_row(std::int64_t k, std::int64_t last, std::int64_t stride)
{
    return k % stride == 0 || k == last;
}

WalkConfig walk_config(const ExperimentConfig& c)
{
    WalkConfig cfg;
    cfg.dim = static_cast<int>(c.walk.dim);
    cfg.steps = static_cast<int>(c.walk.steps);
    cfg.dt = c.walk.dt;
    cfg.ensemble = {ensemble_kind_from_string(c.ensemble.kind), cfg.dim, c.ensemble.scale,
                    static_cast<std::uint64_t>(c.seed)};
    cfg.hbar = c.hbar;
    cfg.stepper = stepper_from_string(c.walk.stepper);
    cfg.seed = static_cast<std::uint64_t>(c.seed);
    // only FS distances are written, so keep the first and last states
    cfg.stride = cfg.steps;
    return cfg;
}

State initial_state(const ExperimentConfig& c)
{
    const int n = static_cast<int>(c.walk.dim);
    if (c.walk.initial == "basis")
        return normalize(CVector::Unit(n, 0));
    RandomStream rng = split_rng(static_cast<std::uint64_t>(c.seed), kInitialStateStream);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(rng.normal(), rng.normal());
    return normalize(v);
}

PotentialSpec potential(const PotentialSection& p)
{
    switch (potential_kind_from_string(p.kind))
    {
    case PotentialSpec::Kind::Free:
        return PotentialSpec::free_particle();
    case PotentialSpec::Kind::Linear:
        return PotentialSpec::linear(p.force);
    case PotentialSpec::Kind::Harmonic:
        return PotentialSpec::harmonic(p.stiffness);
    case PotentialSpec::Kind::Anharmonic:
        break;
    }
    return PotentialSpec::anharmonic(p.stiffness, p.quartic);
}

// ------------------------------------------------------------------

void gaussian_overlap(Context& ctx)
{
    const auto& c = ctx.config;
    const Grid grid = Grid::centered(c.grid.extent, c.grid.points, c.hbar);
    const auto pairs = static_cast<std::size_t>(c.overlap.pairs);
    struct Row
    {
        double sigma, delta, separation, closed, quad;
    };
    auto rows = run_trials<Row>(pairs, [&](std::size_t i) {
        RandomStream rng = split_rng(ctx.seed(), i);
        const auto& o = c.overlap;
        double s = o.sigma_min + (o.sigma_max - o.sigma_min) * rng.uniform();
        double d = o.sigma_min + (o.sigma_max - o.sigma_min) * rng.uniform();
        double sep = o.separation_max * rng.uniform();
        auto p = GaussianParams::at(-0.5 * sep, s), q = GaussianParams::at(0.5 * sep, d);
        return Row{s, d, sep, overlap_closed_form(p, q),
                   overlap_quadrature(gaussian_state(p, grid), gaussian_state(q, grid))};
    });
    ctx.stream("pair i", "split_rng(seed, i)");

    CsvTable table({"sigma", "delta", "separation", "closed_form", "quadrature", "abs_error"});
    double worst = 0.0;
    for (const Row& r : rows)
    {
        double err = std::abs(r.quad - r.closed);
        worst = std::max(worst, err);
        table.row({r.sigma, r.delta, r.separation, r.closed, r.quad, err});
    }
    ctx.outputs.write_csv("overlap.csv", table);
    ctx.add_report(make_threshold_report("overlap_quadrature_1d", worst, 1e-8,
                                         TestRole::Conformance, pairs, ctx.seed()),
                   "overlap_quadrature_1d");
    nlohmann::json summary = ctx.summary_base();
    summary["pairs"] = pairs;
    summary["max_abs_error"] = worst;
    ctx.outputs.write_json("summary.json", summary);
}

void sample_matrices(Context& ctx, EnsembleKind kind)
{
    const auto& c = ctx.config;
    const int n = static_cast<int>(c.ensemble.dim);
    const auto samples = static_cast<std::size_t>(c.ensemble.samples);
    const EnsembleSpec spec{kind, n, c.ensemble.scale, ctx.seed()};
    const bool keep = c.ensemble.write_matrices;

    struct Draw
    {
        RVector levels;
        CMatrix entries;
    };
    auto draws = run_trials<Draw>(samples, [&](std::size_t t) {
        RandomStream rng = split_rng(ctx.seed(), t);
        HermitianSample h = sample_ensemble(spec, rng, static_cast<std::int64_t>(t));
        return Draw{eigenvalues(h), keep ? h.entries : CMatrix()};
    });
    ctx.stream("sample t", "split_rng(seed, t)");

    CsvTable levels({"sample", "k", "level"});
    CsvTable spacings({"sample", "k", "spacing", "ratio"});
    std::vector<RVector> spectra;
    for (std::size_t t = 0; t < samples; ++t)
    {
        const RVector& ev = draws[t].levels;
        for (int k = 0; k < n; ++k)
            levels.row({double(t), double(k), ev[k]});
        auto ratios = spacing_ratios(ev);
        for (std::size_t k = 0; k < ratios.size(); ++k)
            spacings.row({double(t), double(k), ev[k + 1] - ev[k], ratios[k]});
        spectra.push_back(ev);
    }
    ctx.outputs.write_csv("levels.csv", levels);
    ctx.outputs.write_csv("spacings.csv", spacings);
    if (keep)
    {
        CsvTable matrices({"sample", "row", "col", "re", "im"});
        for (std::size_t t = 0; t < samples; ++t)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                {
                    Complex z = draws[t].entries(i, j);
                    matrices.row({double(t), double(i), double(j), z.real(), z.imag()});
                }
        ctx.outputs.write_csv("matrices.csv", matrices);
    }
    nlohmann::json summary = ctx.summary_base();
    summary["ensemble"] = to_string(kind);
    summary["samples"] = samples;
    summary["mean_spacing_ratio"] = spacing_ratio_stat(std::span<const RVector>(spectra));
    summary["reference_spacing_ratio"] = kind == EnsembleKind::GUE ? 0.600 : 0.536;
    ctx.outputs.write_json("summary.json", summary);
}

void walk(Context& ctx)
{
    const auto& c = ctx.config;
    WalkConfig cfg = walk_config(c);
    State phi0 = initial_state(c);
    auto walks = run_walk_trials(phi0, cfg, ctx.trials());
    ctx.stream("trial t", "split_rng(seed, t)");
    ctx.stream("step k of trial t", "split_rng(seed, t).split(k)");
    if (c.walk.initial == "random")
        ctx.stream("initial state", "split_rng(seed, 2^64 - 1)");

    CsvTable traj({"trial", "k", "t", "theta"});
    for (std::size_t t = 0; t < walks.size(); ++t)
        for (int k = 0; k <= cfg.steps; ++k)
            if (take_row(k, cfg.steps, c.stride))
                traj.row({double(t), double(k), k * cfg.dt, walks[t].fs_distances[k]});
    ctx.outputs.write_csv("trajectory.csv", traj);

    CsvTable msd({"k", "t", "mean_theta2"});
    std::vector<double> ts, m2;
    for (int k = 0; k <= cfg.steps; ++k)
    {
        double acc = 0.0;
        for (const auto& w : walks)
            acc += w.fs_distances[k] * w.fs_distances[k];
        acc /= static_cast<double>(walks.size());
        msd.row({double(k), k * cfg.dt, acc});
        // the small-angle regime where mean theta^2 grows linearly
        if (acc <= 0.25)
        {
            ts.push_back(k * cfg.dt);
            m2.push_back(acc);
        }
    }
    ctx.outputs.write_csv("msd.csv", msd);

    nlohmann::json summary = ctx.summary_base();
    summary["trials"] = walks.size();
    if (ts.size() >= 3)
    {
        LinearFit fit = linear_fit(ts, m2);
        summary["msd_fit"] = {{"slope", fit.slope},
                              {"intercept", fit.intercept},
                              {"r_squared", fit.r_squared},
                              {"points", ts.size()},
                              {"window_theta2", 0.25}};
    }
    const double v = cfg.ensemble.scale;
    summary["small_angle_slope"] = (cfg.dim - 1) * v * v * cfg.dt / (cfg.hbar * cfg.hbar);
    ctx.outputs.write_json("summary.json", summary);
}

void constrained_walk_experiment(Context& ctx)
{
    const auto& c = ctx.config;
    const auto& s = c.constrained;
    const int dim = static_cast<int>(s.dim), steps = static_cast<int>(s.steps);
    auto walks = run_trials<ConstrainedTrajectory>(ctx.trials(), [&](std::size_t t) {
        RandomStream rng = split_rng(ctx.seed(), t);
        return constrained_walk(dim, steps, s.dt, s.step_std, rng);
    });
    ctx.stream("trial t", "split_rng(seed, t)");

    std::vector<std::string> header{"trial", "k", "t"};
    for (int j = 1; j <= dim; ++j)
        header.push_back("d_" + std::to_string(j));
    CsvTable traj(header);
    std::vector<double> row(header.size());
    for (std::size_t t = 0; t < walks.size(); ++t)
    {
        for (int k = 0; k <= steps; ++k)
        {
            if (!take_row(k, steps, c.stride))
                continue;
            row[0] = double(t);
            row[1] = double(k);
            row[2] = k * s.dt;
            for (int j = 0; j < dim; ++j)
                row[3 + j] = k == 0 ? 0.0 : walks[t].displacements(j, k - 1);
            traj.row(row);
        }
    }
    ctx.outputs.write_csv("trajectory.csv", traj);

    TestReport r = gaussian_step_test(walks, c.alpha, TestRole::Conformance, ctx.seed());
    ctx.add_report(r, "gaussian_step_test");
    nlohmann::json summary = ctx.summary_base();
    summary["trials"] = walks.size();
    summary["expected_variance"] = steps * s.dt * s.dt * s.step_std * s.step_std;
    summary["diffusion_coefficient"] = 0.5 * s.step_std * s.step_std * s.dt;
    summary["reports"] = ctx.outcome.reports;
    ctx.outputs.write_json("summary.json", summary);
}

void drift_walk(Context& ctx)
{
    const auto& c = ctx.config;
    WalkConfig cfg = walk_config(c);
    const int n = cfg.dim;
    State phi0 = normalize(CVector::Unit(n, 0));
    std::vector<State> targets;
    const double theta = c.drift.target_theta;
    for (int j = 1; j <= c.drift.targets; ++j)
        targets.push_back(
            normalize(std::cos(theta) * CVector::Unit(n, 0) + std::sin(theta) * CVector::Unit(n, j)));

    auto results = run_trials<DriftResult>(ctx.trials(), [&](std::size_t t) {
        return walk_with_drift(phi0, targets, c.drift.kappa, cfg, c.drift.capture_radius,
                               split_rng(ctx.seed(), t));
    });
    ctx.stream("trial t", "split_rng(seed, t)");
    ctx.stream("step k of trial t", "split_rng(seed, t).split(k)");

    CsvTable traj({"trial", "k", "t", "theta"});
    CsvTable outcomes({"trial", "outcome", "steps"});
    std::vector<std::uint64_t> counts(targets.size(), 0);
    std::uint64_t captured = 0;
    for (std::size_t t = 0; t < results.size(); ++t)
    {
        const auto& d = results[t].trajectory.fs_distances;
        const auto last = static_cast<std::int64_t>(d.size()) - 1;
        for (std::int64_t k = 0; k <= last; ++k)
            if (take_row(k, last, c.stride))
                traj.row({double(t), double(k), k * cfg.dt, d[k]});
        double outcome = -1.0;
        if (results[t].outcome)
        {
            outcome = static_cast<double>(*results[t].outcome);
            ++counts[*results[t].outcome];
            ++captured;
        }
        outcomes.row({double(t), outcome, double(last)});
    }
    ctx.outputs.write_csv("trajectory.csv", traj);
    ctx.outputs.write_csv("outcomes.csv", outcomes);

    nlohmann::json summary = ctx.summary_base();
    summary["trials"] = results.size();
    summary["captured"] = captured;
    summary["counts"] = counts;
    if (targets.size() >= 2)
    {
        // the targets are images of each other under unitaries fixing phi0
        TestOutcome chi = chi_square_equal(counts);
        TestReport r = make_pvalue_report("drift_outcome_equiprobability", chi.statistic,
                                          chi.p_value, c.alpha, TestRole::Conformance, captured,
                                          ctx.seed());
        r.details["counts"] = counts;
        if (captured < 5 * targets.size())
        {
            r.details["inconclusive"] = true;
            r.passed = false;
        }
        ctx.add_report(r, "drift_outcome_equiprobability");
        summary["reports"] = ctx.outcome.reports;
    }
    ctx.outputs.write_json("summary.json", summary);
}

void classical_limit(Context& ctx)
{
    const auto& c = ctx.config;
    const auto& k = c.classical;
    const Grid grid = Grid::centered(c.grid.extent, c.grid.points, c.hbar);
    const PotentialSpec pot = potential(c.potential);
    const int steps = static_cast<int>(k.steps);

    CVector psi = packet_amplitudes(k.center, k.sigma, k.momentum, grid);
    PacketPath path = split_step_evolve(psi, grid, pot, k.mass, k.dt, steps, steps);
    NewtonPath newton = newtonian_path(k.center, k.momentum, pot, k.mass, k.dt, steps);

    CsvTable table({"t", "x_mean", "p_mean", "energy", "sigma_eff"});
    double scale = 0.0, dx = 0.0, dp = 0.0, de = 0.0;
    for (int s = 0; s <= steps; ++s)
    {
        scale = std::max(scale, std::abs(newton.a[s]));
        dx = std::max(dx, std::abs(path.x_mean[s] - newton.a[s]));
        dp = std::max(dp, std::abs(path.p_mean[s] - newton.p[s]));
        de = std::max(de, std::abs(path.energy[s] - path.energy.front())
                              / std::max(1e-300, std::abs(path.energy.front())));
        if (take_row(s, steps, c.stride))
            table.row({path.times[s], path.x_mean[s], path.p_mean[s], path.energy[s],
                       path.sigma_eff[s]});
    }
    ctx.outputs.write_csv("path.csv", table);

    // S_q - S_c along a rigid packet riding the Newtonian path:
    // -(S_q - S_c + [p a]) / T is the constant offset of the reduced
    // Hamiltonian
    auto rigid = rigid_packet_states(newton.a, newton.p, k.sigma, grid);
    double sq = action_quantum(rigid, k.dt, grid, pot, k.mass);
    double sc = action_classical(newton.times, newton.a, newton.p, pot, k.mass);
    const double T = newton.times.back();
    double boundary = newton.p.back() * newton.a.back() - newton.p.front() * newton.a.front();
    double measured = -(sq - sc + boundary) / T;
    const bool exact = pot.kind != PotentialSpec::Kind::Anharmonic;
    // kinetic spread plus <V> - V(a), which is constant up to quadratic order
    double expected = c.hbar * c.hbar / (8.0 * k.mass * k.sigma * k.sigma)
                      + 0.5 * pot.stiffness * k.sigma * k.sigma;
    nlohmann::json comparison = ctx.summary_base();
    comparison["ehrenfest_exact"] = exact;
    comparison["max_center_residual"] = dx;
    comparison["relative_center_residual"] = dx / std::max(1.0, scale);
    comparison["max_momentum_residual"] = dp;
    comparison["energy_drift"] = de;
    comparison["final_sigma_eff"] = path.sigma_eff.back();
    comparison["final_newton"] = {{"a", newton.a.back()}, {"p", newton.p.back()}};
    comparison["action"] = {{"quantum", sq},
                            {"classical", sc},
                            {"boundary_pa", boundary},
                            {"measured_constant", measured}};
    if (exact)
        comparison["action"]["expected_constant"] = expected;
    if (pot.kind == PotentialSpec::Kind::Free)
        comparison["free_spread_width"] = free_spread_width(k.sigma, T, c.hbar, k.mass);

    if (exact)
        ctx.add_report(make_threshold_report("ehrenfest_center", dx / std::max(1.0, scale), 1e-6,
                                             TestRole::Conformance, steps, 0),
                       "ehrenfest_center");
    ctx.add_report(make_threshold_report("energy_conservation", de, 1e-6, TestRole::Conformance,
                                         steps, 0),
                   "energy_conservation");
    comparison["reports"] = ctx.outcome.reports;
    ctx.outputs.write_json("comparison.json", comparison);
}

void verify_all(Context& ctx)
{
    const auto& c = ctx.config;
    VerifyOptions options{ctx.seed(), c.alpha, c.hbar};
    nlohmann::json criteria = nlohmann::json::array();
    bool all = true;
    for (int id = 1; id <= kCriteria; ++id)
    {
        CriterionResult r = run_criterion(id, options);
        bool passed = r.reports_passed();
        all = all && passed;
        ctx.timings["criterion_" + std::to_string(id)] = r.seconds;
        ctx.say("criterion " + std::to_string(id) + (passed ? " passed" : " FAILED") + " ("
                + r.title + ")");
        for (std::size_t i = 0; i < r.reports.size(); ++i)
        {
            std::ostringstream file;
            file << "c" << id << "_" << std::setw(2) << std::setfill('0') << i << "_"
                 << r.reports[i].name;
            ctx.add_report(r.reports[i], file.str());
        }
        for (const auto& t : r.tables)
            ctx.outputs.write_csv(t.name + ".csv", t.table);
        criteria.push_back({{"id", id},
                            {"title", r.title},
                            {"passed", passed},
                            {"time_limit", r.time_limit},
                            {"notes", r.notes},
                            {"reports", r.reports}});
        ctx.stream("criterion " + std::to_string(id),
                   "root mix64(seed + " + std::to_string(id)
                       + "), part j mix64(root + 256 j), trial t split_rng(part, t)");
    }
    nlohmann::json summary = ctx.summary_base();
    summary["alpha"] = c.alpha;
    summary["passed"] = all;
    summary["criteria"] = criteria;
    ctx.outputs.write_json("summary.json", summary);
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, std::ostream* log)
{
    validate(config);
    auto started = Clock::now();
    auto steady = std::chrono::steady_clock::now();
    Context ctx{config, OutputSet(config.out), log, {}, {}, {}};

    const std::string& name = config.experiment;
    if (name == "gaussian-overlap")
        gaussian_overlap(ctx);
    else if (name == "sample-gue")
        sample_matrices(ctx, EnsembleKind::GUE);
    else if (name == "sample-goe")
        sample_matrices(ctx, EnsembleKind::GOE);
    else if (name == "walk")
        walk(ctx);
    else if (name == "constrained-walk")
        constrained_walk_experiment(ctx);
    else if (name == "drift-walk")
        drift_walk(ctx);
    else if (name == "classical-limit")
        classical_limit(ctx);
    else
        verify_all(ctx);

    auto finished = Clock::now();
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& r : ctx.outputs.records())
        outputs.push_back({{"path", r.path}, {"sha256", r.sha256}, {"bytes", r.bytes}});
    nlohmann::json manifest{
        {"artifact_version", kArtifactVersion},
        {"experiment", name},
        {"started_at", utc_timestamp(started)},
        {"finished_at", utc_timestamp(finished)},
        {"wall_seconds",
         std::chrono::duration<double>(std::chrono::steady_clock::now() - steady).count()},
        {"timings", ctx.timings},
        {"lanes", lanes_from_env()},
        {"config", config_to_json(config)},
        {"config_text", to_config_text(config)},
        {"rng",
         {{"generator", std::string(RandomStream::generator_name)},
          {"derivation_rule", std::string(RandomStream::derivation_rule)},
          {"root_seed", config.seed},
          {"streams", ctx.lineage}}},
        {"outputs", outputs},
        {"exit_code", ctx.outcome.exit_code},
    };
    OutputSet(config.out).write_json("manifest.json", manifest);
    ctx.say(std::string(name) + ": "
            + (ctx.outcome.exit_code == kExitOk ? "ok" : "test failure") + ", "
            + std::to_string(outputs.size()) + " outputs in " + config.out);
    return ctx.outcome;
}

}  // namespace statewalk
