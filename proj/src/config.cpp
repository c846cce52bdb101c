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

#include "statewalk/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>
#include <vector>

#include "statewalk/classical.hpp"
#include "statewalk/ensembles.hpp"
#include "statewalk/walk.hpp"

namespace statewalk {

namespace {

constexpr std::array<std::string_view, 8> kExperiments = {
    "gaussian-overlap", "sample-gue", "sample-goe", "walk",
    "constrained-walk", "drift-walk", "classical-limit", "verify-all"};

using Slot = std::variant<std::int64_t*, double*, std::string*, bool*>;

struct Field
{
    std::string section;
    std::string key;
    Slot slot;

    std::string path() const { return section.empty() ? key : section + "." + key; }
};

std::vector<Field> fields(ExperimentConfig& c)
{
    return {
        {"", "experiment", &c.experiment},
        {"", "seed", &c.seed},
        {"", "out", &c.out},
        {"", "trials", &c.trials},
        {"", "stride", &c.stride},
        {"", "alpha", &c.alpha},
        {"", "hbar", &c.hbar},
        {"grid", "extent", &c.grid.extent},
        {"grid", "points", &c.grid.points},
        {"overlap", "sigma_min", &c.overlap.sigma_min},
        {"overlap", "sigma_max", &c.overlap.sigma_max},
        {"overlap", "separation_max", &c.overlap.separation_max},
        {"overlap", "pairs", &c.overlap.pairs},
        {"ensemble", "kind", &c.ensemble.kind},
        {"ensemble", "dim", &c.ensemble.dim},
        {"ensemble", "scale", &c.ensemble.scale},
        {"ensemble", "samples", &c.ensemble.samples},
        {"ensemble", "write_matrices", &c.ensemble.write_matrices},
        {"walk", "dim", &c.walk.dim},
        {"walk", "steps", &c.walk.steps},
        {"walk", "dt", &c.walk.dt},
        {"walk", "stepper", &c.walk.stepper},
        {"walk", "initial", &c.walk.initial},
        {"constrained", "dim", &c.constrained.dim},
        {"constrained", "steps", &c.constrained.steps},
        {"constrained", "dt", &c.constrained.dt},
        {"constrained", "step_std", &c.constrained.step_std},
        {"drift", "kappa", &c.drift.kappa},
        {"drift", "targets", &c.drift.targets},
        {"drift", "target_theta", &c.drift.target_theta},
        {"drift", "capture_radius", &c.drift.capture_radius},
        {"potential", "kind", &c.potential.kind},
        {"potential", "force", &c.potential.force},
        {"potential", "stiffness", &c.potential.stiffness},
        {"potential", "quartic", &c.potential.quartic},
        {"classical", "mass", &c.classical.mass},
        {"classical", "sigma", &c.classical.sigma},
        {"classical", "center", &c.classical.center},
        {"classical", "momentum", &c.classical.momentum},
        {"classical", "dt", &c.classical.dt},
        {"classical", "steps", &c.classical.steps},
    };
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
            return false;
    return true;
}

/// Drops a trailing comment, honoring quoted strings.
std::string_view strip_comment(std::string_view line, int line_no)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char ch = line[i];
        if (quoted && ch == '\\')
            ++i;
        else if (ch == '"')
            quoted = !quoted;
        else if (ch == '#' && !quoted)
            return line.substr(0, i);
    }
    if (quoted)
        throw ConfigError(line_no, "unterminated string");
    return line;
}

std::string unquote(std::string_view v, int line_no)
{
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
        throw ConfigError(line_no, "expected a quoted string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
    {
        char ch = v[i];
        if (ch == '\\')
        {
            if (i + 2 >= v.size() || (v[i + 1] != '"' && v[i + 1] != '\\'))
                throw ConfigError(line_no, "bad escape in string");
            out.push_back(v[++i]);
        }
        else if (ch == '"')
            throw ConfigError(line_no, "stray quote in string");
        else
            out.push_back(ch);
    }
    return out;
}

bool parse_int(std::string_view v, std::int64_t& out)
{
    if (!v.empty() && v.front() == '+')
        v.remove_prefix(1);
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    return ec == std::errc() && end == v.data() + v.size();
}

bool parse_float(std::string_view v, double& out)
{
    if (!v.empty() && v.front() == '+')
        v.remove_prefix(1);
    if (v.empty() || !(std::isdigit(static_cast<unsigned char>(v.front())) || v.front() == '-'
                       || v.front() == '.'))
        return false;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    return ec == std::errc() && end == v.data() + v.size() && std::isfinite(out);
}

void assign(const Field& f, std::string_view raw, int line_no)
{
    std::visit(
        [&](auto* target) {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, std::string>)
            {
                *target = unquote(raw, line_no);
            }
            else if constexpr (std::is_same_v<T, bool>)
            {
                if (raw == "true")
                    *target = true;
                else if (raw == "false")
                    *target = false;
                else
                    throw ConfigError(line_no, f.path() + ": expected true or false, got "
                                                   + std::string(raw));
            }
            else if constexpr (std::is_same_v<T, std::int64_t>)
            {
                if (!parse_int(raw, *target))
                    throw ConfigError(line_no, f.path() + ": expected an integer, got "
                                                   + std::string(raw));
            }
            else
            {
                if (!parse_float(raw, *target))
                    throw ConfigError(line_no, f.path() + ": expected a number, got "
                                                   + std::string(raw));
            }
        },
        f.slot);
}

std::string format_double(double x)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    if (s.find_first_of(".en") == std::string::npos)
        s += ".0";
    return s;
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s)
    {
        if (ch == '"' || ch == '\\')
            out.push_back('\\');
        out.push_back(ch);
    }
    return out + "\"";
}

template <class T>
bool contains(const T& list, std::string_view name)
{
    return std::find(list.begin(), list.end(), name) != list.end();
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : "config: " + message),
      line_(line)
{
}

bool is_experiment_name(std::string_view name) { return contains(kExperiments, name); }

ExperimentConfig parse_config(std::string_view text, std::map<std::string, int>* key_lines)
{
    ExperimentConfig config;
    std::vector<Field> schema = fields(config);
    std::map<std::string, int> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        line = trim(strip_comment(line, line_no));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError(line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!is_identifier(section))
                throw ConfigError(line_no, "malformed section header");
            if (std::none_of(schema.begin(), schema.end(),
                             [&](const Field& f) { return f.section == section; }))
                throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (!is_identifier(key))
            throw ConfigError(line_no, "malformed key '" + key + "'");
        if (value.empty())
            throw ConfigError(line_no, key + ": missing value");

        auto it = std::find_if(schema.begin(), schema.end(), [&](const Field& f) {
            return f.section == section && f.key == key;
        });
        std::string path = section.empty() ? key : section + "." + key;
        if (it == schema.end())
            throw ConfigError(line_no, "unknown key '" + path + "'");
        if (seen.count(path))
            throw ConfigError(line_no, "duplicate key '" + path + "' (first set on line "
                                           + std::to_string(seen[path]) + ")");
        assign(*it, value, line_no);
        seen[path] = line_no;
    }
    validate(config, seen);
    if (key_lines)
        *key_lines = std::move(seen);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::map<std::string, int>* key_lines)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(0, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), key_lines);
}

std::string to_config_text(const ExperimentConfig& config)
{
    ExperimentConfig copy = config;
    std::ostringstream out;
    std::string section;
    for (const Field& f : fields(copy))
    {
        if (f.section != section)
        {
            section = f.section;
            out << "\n[" << section << "]\n";
        }
        out << f.key << " = ";
        std::visit(
            [&](auto* v) {
                using T = std::remove_pointer_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::string>)
                    out << quote(*v);
                else if constexpr (std::is_same_v<T, bool>)
                    out << (*v ? "true" : "false");
                else if constexpr (std::is_same_v<T, std::int64_t>)
                    out << *v;
                else
                    out << format_double(*v);
            },
            f.slot);
        out << "\n";
    }
    return out.str();
}

void validate(const ExperimentConfig& c, const std::map<std::string, int>& key_lines)
{
    auto fail = [&](const std::string& key, const std::string& message) {
        auto it = key_lines.find(key);
        throw ConfigError(it == key_lines.end() ? 0 : it->second, key + ": " + message);
    };
    auto positive = [&](const std::string& key, double v) {
        if (!(v > 0.0))
            fail(key, "must be > 0");
    };
    auto at_least = [&](const std::string& key, std::int64_t v, std::int64_t lo) {
        if (v < lo)
            fail(key, "must be >= " + std::to_string(lo));
    };

    if (!is_experiment_name(c.experiment))
        fail("experiment", "unknown experiment '" + c.experiment + "'");
    at_least("seed", c.seed, 0);
    if (c.out.empty())
        fail("out", "must not be empty");
    at_least("trials", c.trials, 1);
    at_least("stride", c.stride, 1);
    if (!(c.alpha > 0.0 && c.alpha < 1.0))
        fail("alpha", "must lie in (0, 1)");
    positive("hbar", c.hbar);

    positive("grid.extent", c.grid.extent);
    at_least("grid.points", c.grid.points, 8);

    positive("overlap.sigma_min", c.overlap.sigma_min);
    if (c.overlap.sigma_max < c.overlap.sigma_min)
        fail("overlap.sigma_max", "must be >= overlap.sigma_min");
    if (c.overlap.separation_max < 0.0)
        fail("overlap.separation_max", "must be >= 0");
    at_least("overlap.pairs", c.overlap.pairs, 1);

    try
    {
        ensemble_kind_from_string(c.ensemble.kind);
    }
    catch (const std::invalid_argument&)
    {
        fail("ensemble.kind", "expected \"gue\" or \"goe\", got \"" + c.ensemble.kind + "\"");
    }
    at_least("ensemble.dim", c.ensemble.dim, 3);
    positive("ensemble.scale", c.ensemble.scale);
    at_least("ensemble.samples", c.ensemble.samples, 1);

    at_least("walk.dim", c.walk.dim, 2);
    at_least("walk.steps", c.walk.steps, 1);
    positive("walk.dt", c.walk.dt);
    Stepper stepper = Stepper::ExactEigen;
    try
    {
        stepper = stepper_from_string(c.walk.stepper);
    }
    catch (const std::invalid_argument&)
    {
        fail("walk.stepper", "expected \"exact-eigen\" or \"first-order\", got \""
                                 + c.walk.stepper + "\"");
    }
    if (stepper == Stepper::FirstOrder
        && c.ensemble.scale * c.walk.dt / c.hbar > kFirstOrderBound)
        fail("walk.dt", "first-order stepper needs scale * dt / hbar <= "
                            + format_double(kFirstOrderBound));
    if (c.walk.initial != "basis" && c.walk.initial != "random")
        fail("walk.initial", "expected \"basis\" or \"random\", got \"" + c.walk.initial + "\"");

    at_least("constrained.dim", c.constrained.dim, 1);
    at_least("constrained.steps", c.constrained.steps, 1);
    positive("constrained.dt", c.constrained.dt);
    if (c.constrained.step_std < 0.0)
        fail("constrained.step_std", "must be >= 0");

    if (c.drift.kappa < 0.0)
        fail("drift.kappa", "must be >= 0");
    at_least("drift.targets", c.drift.targets, 1);
    if (c.drift.targets >= c.walk.dim)
        fail("drift.targets", "must be < walk.dim");
    if (!(c.drift.target_theta > 0.0 && c.drift.target_theta < 1.5707963267948966))
        fail("drift.target_theta", "must lie in (0, pi/2)");
    positive("drift.capture_radius", c.drift.capture_radius);

    try
    {
        potential_kind_from_string(c.potential.kind);
    }
    catch (const std::invalid_argument&)
    {
        fail("potential.kind", "expected free, linear, harmonic or anharmonic, got \""
                                   + c.potential.kind + "\"");
    }
    if (c.potential.stiffness < 0.0)
        fail("potential.stiffness", "must be >= 0");

    positive("classical.mass", c.classical.mass);
    positive("classical.sigma", c.classical.sigma);
    positive("classical.dt", c.classical.dt);
    at_least("classical.steps", c.classical.steps, 1);

    // grid checks for the experiments that put packets on it; blame the
    // first of the keys involved that the file actually sets
    auto pick = [&](const std::string& a, const std::string& b) {
        return key_lines.count(a) || !key_lines.count(b) ? a : b;
    };
    const double h = c.grid.extent / static_cast<double>(c.grid.points);
    if (c.experiment == "gaussian-overlap")
    {
        if (h > c.overlap.sigma_min / 4.0)
            fail(pick("grid.points", "overlap.sigma_min"),
                 "grid spacing " + format_double(h)
                     + " under-resolves overlap.sigma_min (need <= sigma/4)");
        double reach = 0.5 * c.overlap.separation_max + 6.0 * c.overlap.sigma_max;
        if (reach > 0.5 * c.grid.extent)
            fail(pick("grid.extent", "overlap.sigma_max"),
                 "grid must cover separation_max/2 + 6 sigma_max on each side");
    }
    if (c.experiment == "classical-limit")
    {
        if (h > c.classical.sigma / 4.0)
            fail(pick("grid.points", "classical.sigma"),
                 "grid spacing " + format_double(h)
                     + " under-resolves classical.sigma (need <= sigma/4)");
        if (std::abs(c.classical.center) + 6.0 * c.classical.sigma > 0.5 * c.grid.extent)
            fail(pick("classical.center", "grid.extent"), "packet does not fit inside the grid");
    }
    if (c.experiment == "drift-walk" && c.drift.targets >= 2)
    {
        // targets share the e0 component, so their mutual FS distance is acos(cos^2 theta)
        double cos_t = std::cos(c.drift.target_theta);
        if (std::acos(cos_t * cos_t) <= 2.0 * c.drift.capture_radius)
            fail("drift.capture_radius", "capture regions of neighbouring targets overlap");
    }
}

nlohmann::json config_to_json(const ExperimentConfig& config)
{
    ExperimentConfig copy = config;
    nlohmann::json j = nlohmann::json::object();
    for (const Field& f : fields(copy))
    {
        nlohmann::json& slot = f.section.empty() ? j[f.key] : j[f.section][f.key];
        std::visit([&](auto* v) { slot = *v; }, f.slot);
    }
    return j;
}

}  // namespace statewalk
