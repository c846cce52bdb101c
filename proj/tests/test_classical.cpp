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

#include <cmath>
#include <numbers>
#include <vector>

#include "statewalk/classical.hpp"

using namespace statewalk;

namespace {

const Grid kGrid{-10.0, 0.05, 400, 1.0};

}  // namespace

TEST_CASE("potential kinds")
{
    CHECK(PotentialSpec::linear(2.0).value(3.0) == -6.0);
    CHECK(PotentialSpec::linear(2.0).gradient(3.0) == -2.0);
    CHECK(PotentialSpec::harmonic(4.0).value(0.5) == 0.5);
    CHECK(PotentialSpec::anharmonic(1.0, 4.0).gradient(1.0) == 5.0);
    CHECK(potential_kind_from_string("harmonic") == PotentialSpec::Kind::Harmonic);
    CHECK(to_string(PotentialSpec::Kind::Linear) == "linear");
    CHECK_THROWS(potential_kind_from_string("cubic"));
}

TEST_CASE("free packet at rest stays put and spreads")
{
    CVector psi = packet_amplitudes(0.0, 1.0, 0.0, kGrid);
    PacketPath path = split_step_evolve(psi, kGrid, PotentialSpec::free_particle(), 1.0,
                                        0.01, 100);
    REQUIRE(path.times.size() == 101);
    for (std::size_t k = 0; k < path.times.size(); ++k)
    {
        REQUIRE(std::abs(path.x_mean[k]) < 1e-10);
        REQUIRE(path.sigma_eff[k]
                == doctest::Approx(free_spread_width(1.0, path.times[k], 1.0, 1.0)).epsilon(1e-8));
    }
    CHECK(std::abs(path.energy.back() - path.energy.front()) < 1e-12);
}

TEST_CASE("free packet with unit velocity moves by one")
{
    CVector psi = packet_amplitudes(-1.0, 1.0, 1.0, kGrid);
    PacketPath path = split_step_evolve(psi, kGrid, PotentialSpec::free_particle(), 1.0,
                                        0.01, 100);
    CHECK(std::abs(path.x_mean.back() - path.x_mean.front() - 1.0) < 1e-6);
    CHECK(path.p_mean.back() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("linear potential reproduces the Newtonian parabola")
{
    CVector psi = packet_amplitudes(0.0, 1.0, 0.0, kGrid);
    PacketPath path = split_step_evolve(psi, kGrid, PotentialSpec::linear(2.0), 1.0, 0.01,
                                        100, 10);
    CHECK(std::abs(path.x_mean.back() - 1.0) < 1e-6);
    CHECK(std::abs(path.p_mean.back() - 2.0) < 1e-6);
    CHECK(std::abs(path.energy.back() / path.energy.front() - 1.0) < 1e-6);
    CHECK(path.state_steps == std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
}

TEST_CASE("harmonic energy is conserved")
{
    CVector psi = packet_amplitudes(1.0, 0.7, 0.0, kGrid);
    PacketPath path = split_step_evolve(psi, kGrid, PotentialSpec::harmonic(1.0), 1.0,
                                        1e-3, 1000, 1000);
    double worst = 0.0;
    for (double e : path.energy)
        worst = std::max(worst, std::abs(e / path.energy.front() - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("packet leaving the grid is a domain exit")
{
    CVector psi = packet_amplitudes(0.0, 1.0, 0.0, kGrid);
    CHECK_THROWS_WITH(split_step_evolve(psi, kGrid, PotentialSpec::linear(10.0), 1.0, 0.01,
                                        200),
                      "domain exit");
}

TEST_CASE("anharmonic deviation from Newton scales as sigma squared")
{
    Grid grid = Grid::centered(6.0, 8192, 1e-3);
    PotentialSpec pot = PotentialSpec::anharmonic(1.0, 1.0);
    NewtonPath newton = newtonian_path(1.0, 0.0, pot, 1.0, 1e-3, 1000);
    std::vector<double> dev;
    for (double sigma : {0.1, 0.05})
    {
        PacketPath path = split_step_evolve(packet_amplitudes(1.0, sigma, 0.0, grid), grid,
                                            pot, 1.0, 1e-3, 1000, 1000);
        double worst = 0.0;
        for (std::size_t k = 0; k < newton.a.size(); ++k)
            worst = std::max(worst, std::abs(path.x_mean[k] - newton.a[k]));
        dev.push_back(worst);
    }
    double ratio = dev[1] / dev[0];
    CHECK(ratio > 0.2);
    CHECK(ratio < 0.55);
}

TEST_CASE("linear potential equals an accelerated frame")
{
    Grid grid = Grid::centered(80.0, 4096);
    CVector psi = packet_amplitudes(0.0, 0.1, 0.0, grid);
    PacketPath pushed = split_step_evolve(psi, grid, PotentialSpec::linear(2.0), 1.0, 1e-3,
                                          1000, 1000);
    PacketPath free = split_step_evolve(psi, grid, PotentialSpec::free_particle(), 1.0, 1e-3,
                                        1000, 1000);
    CVector moved = accelerated_frame(free.states.back(), grid, 2.0, 1.0, 1.0);
    CHECK(fs_distance(moved, pushed.states.back()) < 1e-6);
}

TEST_CASE("action of a stationary eigenstate vanishes")
{
    Grid grid = Grid::centered(16.0, 128);
    PotentialSpec pot = PotentialSpec::harmonic(1.0);
    CMatrix h = hamiltonian_matrix(grid, pot, 1.0);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    CVector ground = solver.eigenvectors().col(0);
    double energy = solver.eigenvalues()[0];
    CHECK(energy == doctest::Approx(0.5).epsilon(1e-6));
    const double dt = 1e-3;
    std::vector<CVector> states;
    for (int k = 0; k <= 2000; ++k)
        states.push_back(ground * std::polar(1.0, -energy * k * dt));
    CHECK(std::abs(action_quantum(states, dt, grid, pot, 1.0)) < 1e-6);
}

TEST_CASE("rigid packet at rest has kinetic action")
{
    const double sigma = 0.5, dt = 1e-3;
    std::vector<CVector> states(101, packet_amplitudes(0.0, sigma, 0.0, kGrid));
    double s = action_quantum(states, dt, kGrid, PotentialSpec::free_particle(), 1.0);
    CHECK(s == doctest::Approx(-0.1 / (8.0 * sigma * sigma)).epsilon(1e-8));
}

TEST_CASE("quantum action converges in the time step")
{
    Grid grid = Grid::centered(4.0, 320);
    auto action_at = [&](double dt) {
        int n = static_cast<int>(std::round(1.0 / dt));
        std::vector<double> a, p;
        for (int k = 0; k <= n; ++k)
        {
            double s = k * dt;
            a.push_back(-0.5 + s + 0.3 * std::sin(std::numbers::pi * s));
            p.push_back(0.5 + s);
        }
        auto states = rigid_packet_states(a, p, 0.1, grid);
        return action_quantum(states, dt, grid, PotentialSpec::linear(1.5), 1.0);
    };
    double coarse = action_at(2e-4), fine = action_at(1e-4);
    CHECK(std::abs(coarse / fine - 1.0) < 1e-6);
}

TEST_CASE("coarse stride is rejected")
{
    std::vector<double> a, p;
    for (int k = 0; k <= 10; ++k)
    {
        a.push_back(-0.5 + 0.1 * k);
        p.push_back(std::sin(1.5 * k));
    }
    auto states = rigid_packet_states(a, p, 0.1, Grid::centered(4.0, 320));
    CHECK_THROWS_WITH(action_quantum(states, 0.1, Grid::centered(4.0, 320),
                                     PotentialSpec::free_particle(), 1.0),
                      "stride too coarse");
}

TEST_CASE("classical action closed forms")
{
    std::vector<double> t, rest_a, rest_p, move_a, move_p;
    const double dt = 1e-3, p0 = 1.3, m = 2.0, T = 1.0;
    for (int k = 0; k <= 1000; ++k)
    {
        t.push_back(k * dt);
        rest_a.push_back(0.4);
        rest_p.push_back(0.0);
        move_a.push_back(p0 / m * k * dt);
        move_p.push_back(p0);
    }
    auto free = PotentialSpec::free_particle();
    CHECK(action_classical(t, rest_a, rest_p, free, m) == 0.0);
    CHECK(action_classical(t, move_a, move_p, free, m)
          == doctest::Approx(p0 * p0 / (2.0 * m) * T).epsilon(1e-12));

    // Newtonian path in V = -F x from rest: a = F t^2 / 2m, p = F t,
    // int L dt = F^2 T^3 / 3m
    const double F = 2.0;
    NewtonPath path = newtonian_path(0.0, 0.0, PotentialSpec::linear(F), m, 1e-4, 10000);
    CHECK(path.a.back() == doctest::Approx(F / (2.0 * m)).epsilon(1e-12));
    double s = action_classical(path.times, path.a, path.p, PotentialSpec::linear(F), m);
    CHECK(std::abs(s - F * F / (3.0 * m)) < 1e-8);
}

TEST_CASE("action difference is path independent")
{
    Grid grid = Grid::centered(4.0, 320);
    const double dt = 1e-3, sigma = 0.1;
    for (PotentialSpec pot : {PotentialSpec::linear(1.5), PotentialSpec::harmonic(2.0)})
    {
        std::vector<double> diffs;
        for (int path = 0; path < 3; ++path)
        {
            std::vector<double> t, a, p;
            for (int k = 0; k <= 1000; ++k)
            {
                double s = k * dt, bump = std::sin(std::numbers::pi * s);
                t.push_back(s);
                a.push_back(-0.5 + s + 0.3 * path * bump);
                p.push_back(0.5 + s + (path == 2 ? -2.0 : 1.0 * path) * bump * bump);
            }
            auto states = rigid_packet_states(a, p, sigma, grid);
            diffs.push_back(action_quantum(states, dt, grid, pot, 1.0)
                            - action_classical(t, a, p, pot, 1.0));
        }
        CHECK(std::abs(diffs[1] - diffs[0]) < 1e-4);
        CHECK(std::abs(diffs[2] - diffs[0]) < 1e-4);
    }
}
