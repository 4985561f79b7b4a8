#include "hyperradial/errors.hpp"
#include "hyperradial/solver.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace hyperradial;

namespace {

RadialProblem auto_problem(int D, int l, Potential v, int levels, BoundaryMode boundary = {})
{
    RadialProblem p;
    p.dimension = D;
    p.l = l;
    p.boundary = boundary;
    p.grid = suggest_grid(D, l, v, levels, boundary);
    p.potential = std::move(v);
    return p;
}

RadialProblem uniform_problem(int D, int l, Potential v, double r_min, double r_max, int n)
{
    RadialProblem p;
    p.dimension = D;
    p.l = l;
    p.potential = std::move(v);
    p.grid = {r_min, r_max, n, Spacing::Uniform};
    return p;
}

double coulomb_energy(int D, int l, int n_r)
{
    const double n = n_r + grand_orbital(D, l) + 1.0;
    return -0.5 / (n * n);
}

double oscillator_energy(int D, int l, int n_r)
{
    return 2.0 * n_r + l + D / 2.0;
}

std::vector<double> true_values(const Trajectory& t)
{
    std::vector<double> out(t.u.size());
    const double f = std::exp(t.log_scale);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.u[i] * f;
    return out;
}

} // namespace

TEST_CASE("free particle integrates to sin(r)")
{
    const auto p = uniform_problem(3, 0, Potential{}, 1e-4, 10.0, 10000);
    const double r0 = p.grid.r_min;
    const auto t = numerov_integrate(p, 0.5, {std::sin(r0), std::cos(r0)}, IntegrationDirection::Outward);
    const auto u = true_values(t);
    const RadialGrid grid(p.grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(u[i] - std::sin(grid[i])));
    CHECK(worst <= 1e-8);
    CHECK(t.nodes == 3);
}

TEST_CASE("free particle inward from r_max")
{
    const auto p = uniform_problem(3, 0, Potential{}, 1e-4, 10.0, 10000);
    const double r1 = p.grid.r_max;
    const auto t = numerov_integrate(p, 0.5, {std::sin(r1), std::cos(r1)}, IntegrationDirection::Inward);
    const auto u = true_values(t);
    const RadialGrid grid(p.grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(u[i] - std::sin(grid[i])));
    CHECK(worst <= 1e-8);
}

TEST_CASE("oscillator ground state shape")
{
    for (Spacing spacing : {Spacing::Uniform, Spacing::Logarithmic}) {
        RadialProblem p;
        p.potential = Potential({Harmonic{1.0}});
        p.grid = {1e-4, 4.0, 8001, spacing};
        const double r0 = p.grid.r_min;
        const auto t = numerov_integrate(p, 1.5, {r0, 1.0}, IntegrationDirection::Outward);
        const auto u = true_values(t);
        const RadialGrid grid(p.grid);
        const double ref0 = u[grid.size() / 2] / (grid[grid.size() / 2] * std::exp(-0.5 * grid[grid.size() / 2] * grid[grid.size() / 2]));
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double exact = grid[i] * std::exp(-0.5 * grid[i] * grid[i]);
            worst = std::max(worst, std::abs(u[i] / ref0 - exact) / exact);
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("energy below the effective potential gives monotone growth")
{
    RadialProblem p;
    p.l = 1;
    p.potential = Potential({Harmonic{1.0}});
    p.grid = {1e-4, 8.0, 4001, Spacing::Logarithmic};
    const auto start = series_start(indicial_report(3, 1, classify(p.potential)), Branch::Standard, p.grid.r_min);
    const auto t = numerov_integrate(p, 0.5, start, IntegrationDirection::Outward);
    CHECK(t.nodes == 0);
    for (std::size_t i = 1; i < t.u.size(); ++i) CHECK(t.u[i] > t.u[i - 1]);
}

TEST_CASE("overflow is absorbed into the log scale")
{
    RadialProblem p;
    p.potential = Potential({Harmonic{1.0}});
    p.grid = {1e-4, 40.0, 20001, Spacing::Uniform};
    const auto t = numerov_integrate(p, 0.1, {1e-4, 1.0}, IntegrationDirection::Outward);
    CHECK(t.log_scale > 300.0);
    CHECK(std::all_of(t.u.begin(), t.u.end(), [](double v) { return std::isfinite(v); }));
    CHECK(t.nodes == 0);
}

TEST_CASE("non-finite potential is a hard error")
{
    RadialProblem p;
    p.potential = Potential({PowerLaw{1.0, -400.0}});
    p.grid = {1e-3, 1.0, 101, Spacing::Uniform};
    CHECK_THROWS_AS((void)numerov_integrate(p, 0.0, {1e-3, 1.0}, IntegrationDirection::Outward), EvaluationError);
}

TEST_CASE("eigen_solve examples")
{
    auto level = eigen_solve(auto_problem(3, 0, Potential({Coulomb{1.0}}), 1), 0);
    CHECK(level.energy == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(level.nodes == 0);

    level = eigen_solve(auto_problem(7, 0, Potential({Coulomb{1.0}}), 1), 0);
    CHECK(level.energy == doctest::Approx(-1.0 / 18.0).epsilon(1e-6));

    level = eigen_solve(auto_problem(5, 1, Potential({Harmonic{1.0}}), 1), 0);
    CHECK(level.energy == doctest::Approx(3.5).epsilon(1e-6));

    level = eigen_solve(auto_problem(3, 0, Potential({Coulomb{1.0}, InverseSquare{-3.0 / 32.0}}), 1), 0);
    CHECK(std::abs(level.energy + 8.0 / 9.0) <= 1e-5);
}

TEST_CASE("closed-form spectra, node theorem and normalization")
{
    const std::vector<std::pair<int, int>> cases{{3, 0}, {3, 1}, {5, 0}, {7, 0}};
    for (auto [D, l] : cases) {
        for (bool coulomb : {true, false}) {
            const Potential v = coulomb ? Potential({Coulomb{1.0}}) : Potential({Harmonic{1.0}});
            const auto p = auto_problem(D, l, v, 3);
            const auto spectrum = solve_spectrum(p, 3);
            REQUIRE(spectrum.levels.size() == 3);
            const RadialGrid grid(spectrum.grid);
            for (const auto& level : spectrum.levels) {
                const double exact = coulomb ? coulomb_energy(D, l, level.n_r) : oscillator_energy(D, l, level.n_r);
                CHECK(std::abs(level.energy - exact) <= 1e-6 * std::abs(exact));
                CHECK(level.nodes == level.n_r);
                CHECK(count_nodes(level.u) == level.n_r);
                std::vector<double> sq(level.u.size());
                for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = level.u[i] * level.u[i];
                CHECK(std::abs(grid.integrate(sq) - 1.0) <= 1e-8);
            }
            for (std::size_t i = 1; i < spectrum.levels.size(); ++i)
                CHECK(spectrum.levels[i].energy > spectrum.levels[i - 1].energy);
        }
    }
}

TEST_CASE("eigen_solve agrees with the finite-difference oracle")
{
    const std::vector<std::pair<int, int>> cases{{3, 0}, {3, 1}, {5, 0}, {7, 0}};
    for (auto [D, l] : cases) {
        for (bool coulomb : {true, false}) {
            const Potential v = coulomb ? Potential({Coulomb{1.0}}) : Potential({Harmonic{1.0}});
            auto p = auto_problem(D, l, v, 3);
            const auto spectrum = solve_spectrum(p, 3);
            p.grid.n = 20001;
            const auto fd = fd_oracle(p, 3);
            const double h = fd_step(p.grid);
            for (std::size_t i = 0; i < 3; ++i) {
                const double E = spectrum.levels[i].energy;
                CHECK(std::abs(E - fd[i]) <= 5.0 * h * h * std::abs(E) + 1e-6);
            }
        }
    }
}

TEST_CASE("fd_oracle examples")
{
    auto p = uniform_problem(3, 0, Potential({Coulomb{1.0}}), 1e-5, 80.0, 4000);
    CHECK(fd_oracle(p, 1)[0] == doctest::Approx(-0.5).epsilon(2e-3));

    p = uniform_problem(3, 0, Potential({Harmonic{1.0}}), 1e-5, 10.0, 4000);
    const auto ladder = fd_oracle(p, 3);
    CHECK(std::abs(ladder[0] - 1.5) <= 1e-3);
    CHECK(std::abs(ladder[1] - 3.5) <= 1e-3);
    CHECK(std::abs(ladder[2] - 5.5) <= 1e-3);

    p = uniform_problem(3, 0, Potential{}, 1e-9, 1.0, 4000);
    CHECK(std::abs(fd_oracle(p, 1)[0] - std::numbers::pi * std::numbers::pi / 2.0) <= 1e-3);

    p.boundary = BoundaryMode::sae(0.0);
    CHECK_THROWS_AS((void)fd_oracle(p, 1), DomainError);
    p.boundary = {};
    CHECK_THROWS_AS((void)fd_oracle(p, 0), DomainError);
}

TEST_CASE("fd_oracle matches a dense eigensolver")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> z(0.5, 2.0);
    for (int trial = 0; trial < 4; ++trial) {
        const int D = 3 + trial;
        const int l = trial % 2;
        const auto p = uniform_problem(D, l, Potential({Coulomb{z(rng)}, Harmonic{z(rng)}}), 1e-3, 12.0, 402);
        const auto fd = fd_oracle(p, 5);

        const auto model = build_effective_model(D, l);
        const int m = p.grid.n - 2;
        const double h = fd_step(p.grid);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            H(i, i) = 1.0 / (h * h) + effective_potential(model, p.potential, h * (i + 1));
            if (i + 1 < m) H(i, i + 1) = H(i + 1, i) = -0.5 / (h * h);
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
        for (int j = 0; j < 5; ++j)
            CHECK(fd[j] == doctest::Approx(solver.eigenvalues()(j)).epsilon(1e-10));
    }
}

TEST_CASE("Numerov converges at fourth order")
{
    // Halving h on a uniform grid: n -> 2n - 1.
    const auto error = [](int n) {
        const auto p = uniform_problem(3, 0, Potential({Harmonic{1.0}}), 1e-4, 9.0, n);
        return std::abs(eigen_solve(p, 0).energy - 1.5);
    };
    const double coarse = error(201);
    const double fine = error(401);
    CHECK(coarse > 1e-10);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("spectrum depends on the self-adjoint extension")
{
    const Potential v({Coulomb{1.0}, InverseSquare{-3.0 / 32.0}});
    const double standard = eigen_solve(auto_problem(3, 0, v, 1, BoundaryMode::sae(0.0)), 0).energy;
    const double mixed = eigen_solve(auto_problem(3, 0, v, 1, BoundaryMode::sae(1.0)), 0).energy;
    CHECK(std::abs(standard + 8.0 / 9.0) <= 1e-5);
    CHECK(std::abs(mixed - standard) > 1e-3);
    CHECK(mixed < standard);
}

TEST_CASE("pure additional branch follows its own Coulomb ladder")
{
    // u ~ r^{1/2 - P} near the origin: E = -Z^2 / (2 (n_r + 1/2 - P)^2) with P = 1/4.
    const Potential v({Coulomb{1.0}, InverseSquare{-3.0 / 32.0}});
    const auto p = auto_problem(3, 0, v, 2, BoundaryMode::additional());
    const auto spectrum = solve_spectrum(p, 2);
    CHECK(spectrum.levels[0].energy == doctest::Approx(-8.0).epsilon(1e-6));
    CHECK(spectrum.levels[1].energy == doctest::Approx(-0.5 / (1.25 * 1.25)).epsilon(1e-6));
    CHECK(spectrum.levels[1].nodes == 1);
}

TEST_CASE("Dirichlet spectra do not depend on r_min")
{
    for (bool coulomb : {true, false}) {
        const Potential v = coulomb ? Potential({Coulomb{1.0}}) : Potential({Harmonic{1.0}});
        auto p = auto_problem(3, 0, v, 2);
        std::vector<double> energies;
        for (double r_min : {1e-4, 1e-5, 1e-6}) {
            p.grid.r_min = r_min;
            energies.push_back(eigen_solve(p, 1).energy);
        }
        CHECK(std::abs(energies[0] - energies[1]) <= 1e-8);
        CHECK(std::abs(energies[1] - energies[2]) <= 1e-8);
    }
}

TEST_CASE("solver error paths")
{
    auto p = auto_problem(3, 0, Potential({Coulomb{1.0}}), 1);
    p.settings.max_iterations = 3;
    CHECK_THROWS_AS((void)eigen_solve(p, 0), ConvergenceFailure);

    p = auto_problem(3, 0, Potential({Coulomb{1.0}}), 1);
    p.boundary = BoundaryMode::sae(1.0);
    CHECK_THROWS_AS((void)eigen_solve(p, 0), BranchNotAllowed);

    RadialProblem cubic;
    cubic.potential = Potential({PowerLaw{-1.0, -3.0}});
    CHECK_THROWS_AS((void)eigen_solve(cubic, 0), NoBoundState);

    RadialProblem repulsive;
    repulsive.potential = Potential({Coulomb{-1.0}});
    CHECK_THROWS_AS((void)eigen_solve(repulsive, 0), NoBoundState);

    p = auto_problem(3, 0, Potential({Coulomb{1.0}}), 1);
    p.settings.energy_window = std::pair{-0.4, -0.2};
    CHECK_THROWS_AS((void)eigen_solve(p, 0), NoBoundState);
    CHECK_THROWS_AS((void)eigen_solve(p, -1), DomainError);
    CHECK_THROWS_AS((void)solve_spectrum(p, 0), DomainError);
}

TEST_CASE("normalize examples")
{
    GridSpec uniform{1e-9, 1.0, 1001, Spacing::Uniform};
    const auto one = normalize(std::vector<double>(1001, 2.0), uniform);
    for (double v : one) CHECK(std::abs(v - 1.0) <= 1e-8);

    const GridSpec g{1e-6, 12.0, 6001, Spacing::Logarithmic};
    const RadialGrid grid(g);
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = -grid[i] * std::exp(-0.5 * grid[i] * grid[i]);
    const auto n = normalize(u, g);
    const double c = 2.0 / std::pow(std::numbers::pi, 0.25);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(n[i] + c * u[i]) <= 1e-8);

    CHECK_THROWS_AS((void)normalize(std::vector<double>(1001, 0.0), uniform), ZeroNorm);
    CHECK_THROWS_AS((void)normalize(std::vector<double>(10, 1.0), uniform), DomainError);
}

TEST_CASE("count_nodes ignores zeros")
{
    CHECK(count_nodes(std::vector<double>{}) == 0);
    CHECK(count_nodes(std::vector<double>{0.0, 1.0, 0.0, 2.0}) == 0);
    CHECK(count_nodes(std::vector<double>{1.0, -1.0, 0.0, 1.0, -2.0}) == 3);
}

TEST_CASE("suggested grids")
{
    const auto g = suggest_grid(3, 0, Potential({Coulomb{2.0}}), 1);
    CHECK(g.spacing == Spacing::Logarithmic);
    CHECK(g.r_min == doctest::Approx(0.5e-5));
    CHECK(g.n >= 2001);
    CHECK(std::log(g.r_max / g.r_min) / (g.n - 1) <= 3e-3 + 1e-12);
    CHECK(suggest_grid(3, 0, Potential({Coulomb{1.0}}), 3).r_max > g.r_max);
    CHECK_THROWS_AS((void)suggest_grid(3, 0, Potential({Coulomb{1.0}}), 0), DomainError);
}

TEST_CASE("random oscillators obey the node theorem")
{
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> omega(0.3, 3.0);
    std::uniform_int_distribution<int> small(0, 3);
    for (int trial = 0; trial < 6; ++trial) {
        const double w = omega(rng);
        const int D = 2 + small(rng);
        const int l = small(rng);
        const auto p = auto_problem(D, l, Potential({Harmonic{w}}), 3);
        for (const auto& level : solve_spectrum(p, 3).levels) {
            CHECK(level.nodes == level.n_r);
            CHECK(level.energy == doctest::Approx(w * oscillator_energy(D, l, level.n_r)).epsilon(1e-8));
        }
    }
}
