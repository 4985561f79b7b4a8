#include "hyperradial/diagnostics.hpp"
#include "hyperradial/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hyperradial;

namespace {

const GridSpec kDeltaGrid{1e-9, 12.0, 4001, Spacing::Uniform};

RadialProblem problem(int D, int l, Potential v, int levels)
{
    RadialProblem p;
    p.dimension = D;
    p.l = l;
    p.grid = suggest_grid(D, l, v, levels);
    p.potential = std::move(v);
    return p;
}

} // namespace

TEST_CASE("solid angle")
{
    CHECK(solid_angle(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(solid_angle(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(solid_angle(4) == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    CHECK(solid_angle(5) == doctest::Approx(8.0 * std::pow(std::numbers::pi, 2) / 3.0).epsilon(1e-15));
}

TEST_CASE("delta identity examples")
{
    auto res = delta_identity_check(3, TestFunction::Gaussian, kDeltaGrid);
    CHECK(res.predicted == doctest::Approx(-4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(res.rel_error <= 1e-4);
    CHECK(res.quadrature_value == doctest::Approx(-12.566).epsilon(1e-4));

    res = delta_identity_check(4, TestFunction::Gaussian, kDeltaGrid);
    CHECK(res.quadrature_value == doctest::Approx(-39.478).epsilon(1e-4));
    CHECK(res.rel_error <= 1e-4);

    res = delta_identity_check(3, TestFunction::CompactBump, kDeltaGrid);
    CHECK(res.predicted == 0.0);
    CHECK(std::abs(res.quadrature_value) <= 1e-6);

    for (int D = 5; D <= 8; ++D) CHECK(delta_identity_check(D, TestFunction::Gaussian, kDeltaGrid).rel_error <= 1e-4);

    CHECK_THROWS_AS((void)delta_identity_check(2, TestFunction::Gaussian, kDeltaGrid), DomainError);
}

TEST_CASE("delta identity error falls under refinement")
{
    for (int D : {3, 4}) {
        double previous = INFINITY;
        for (int n : {41, 81, 161, 321}) {
            const auto res = delta_identity_quadrature(D, TestFunction::Gaussian, {1e-9, 12.0, n, Spacing::Uniform});
            CHECK(res.rel_error < previous);
            // Simpson: halving h cuts the error by about 16.
            if (std::isfinite(previous) && previous > 1e-10) CHECK(previous / res.rel_error > 8.0);
            previous = res.rel_error;
        }
    }
}

TEST_CASE("test function names")
{
    CHECK(test_function_from_string("gaussian") == TestFunction::Gaussian);
    CHECK(test_function_from_string("bump") == TestFunction::CompactBump);
    CHECK(to_string(TestFunction::Gaussian) == "gaussian");
    CHECK_THROWS_AS((void)test_function_from_string("box"), SchemaError);
}

TEST_CASE("flux scaling")
{
    auto f = flux_scaling(3, 0.5);
    CHECK(f.exponent == 1.0);
    CHECK(f.verdict == FluxVerdict::Vanishes);
    f = flux_scaling(3, 1.0);
    CHECK(f.exponent == 0.0);
    CHECK(f.verdict == FluxVerdict::Finite);
    f = flux_scaling(5, 2.5);
    CHECK(f.exponent == -1.0);
    CHECK(f.verdict == FluxVerdict::Diverges);
}

TEST_CASE("interdimensional degeneracy")
{
    const std::vector<std::pair<int, int>> to_d3{{-4, 2}, {-2, 1}};
    auto rep = degeneracy_check(problem(7, 0, Potential({Coulomb{1.0}}), 3), to_d3, 3);
    CHECK(rep.rows.size() == 6);
    CHECK(rep.max_discrepancy <= 1e-6);
    for (const auto& row : rep.rows) {
        const double n = row.level + 3.0;
        CHECK(row.energy_base == doctest::Approx(-0.5 / (n * n)).epsilon(1e-6));
    }

    const std::vector<std::pair<int, int>> to_d3l2{{-2, 1}};
    rep = degeneracy_check(problem(5, 1, Potential({Harmonic{1.0}}), 3), to_d3l2, 3);
    CHECK(rep.max_discrepancy <= 1e-6);
    for (const auto& row : rep.rows) CHECK(row.energy_partner == doctest::Approx(2.0 * row.level + 3.5).epsilon(1e-6));

    const std::vector<std::pair<int, int>> self{{0, 0}};
    rep = degeneracy_check(problem(3, 1, Potential({Coulomb{1.0}}), 2), self, 2);
    CHECK(rep.max_discrepancy <= 1e-12);
}

TEST_CASE("degeneracy shift validation")
{
    const auto base = problem(7, 0, Potential({Coulomb{1.0}}), 1);
    const std::vector<std::pair<int, int>> bad{{-1, 1}};
    CHECK_THROWS_AS((void)degeneracy_check(base, bad, 1), DomainError);
    const std::vector<std::pair<int, int>> negative_l{{2, -1}};
    CHECK_THROWS_AS((void)degeneracy_check(base, negative_l, 1), DomainError);
}

TEST_CASE("Dirichlet eigenfunctions have vanishing flux at the origin")
{
    for (auto [D, l] : std::vector<std::pair<int, int>>{{3, 0}, {3, 1}, {5, 0}, {7, 0}}) {
        const auto p = problem(D, l, Potential({Coulomb{1.0}}), 2);
        for (const auto& level : solve_spectrum(p, 2).levels) {
            const auto fit = fit_origin_exponent(level.u, p.grid, D);
            CHECK(std::abs(fit.radial_exponent - l) <= 1e-3);
            CHECK(fit.flux_exponent < (D - 1) / 2.0);
            CHECK(flux_scaling(D, fit.flux_exponent).verdict == FluxVerdict::Vanishes);
        }
    }
}
