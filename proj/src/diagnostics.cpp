#include "hyperradial/diagnostics.hpp"

#include "hyperradial/errors.hpp"
#include "hyperradial/parallel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperradial {

namespace {

struct RadialDerivatives {
    double value;
    double d1;
    double d2;
};

RadialDerivatives gaussian(double r)
{
    const double e = std::exp(-r * r);
    return {e, -2.0 * r * e, (4.0 * r * r - 2.0) * e};
}

/// exp(-1/(1-z^2)) with z = (r - 1)/0.5; vanishes near the origin.
RadialDerivatives compact_bump(double r)
{
    constexpr double center = 1.0;
    constexpr double half_width = 0.5;
    const double z = (r - center) / half_width;
    const double s = 1.0 - z * z;
    if (s <= 0.0) return {0.0, 0.0, 0.0};
    const double phi = std::exp(-1.0 / s);
    if (phi == 0.0) return {0.0, 0.0, 0.0};
    const double g1 = -2.0 * z / (s * s);
    const double g2 = -2.0 / (s * s) - 8.0 * z * z / (s * s * s);
    return {phi, phi * g1 / half_width, phi * (g1 * g1 + g2) / (half_width * half_width)};
}

RadialDerivatives evaluate(TestFunction fn, double r)
{
    return fn == TestFunction::Gaussian ? gaussian(r) : compact_bump(r);
}

double test_value_at_origin(TestFunction fn)
{
    return fn == TestFunction::Gaussian ? 1.0 : 0.0;
}

} // namespace

std::string to_string(TestFunction fn)
{
    return fn == TestFunction::Gaussian ? "gaussian" : "compact_bump";
}

TestFunction test_function_from_string(const std::string& name)
{
    if (name == "gaussian") return TestFunction::Gaussian;
    if (name == "compact_bump" || name == "bump") return TestFunction::CompactBump;
    throw SchemaError("unknown test function '" + name + "' (expected gaussian or compact_bump)");
}

double solid_angle(int dimension)
{
    const double half = 0.5 * dimension;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

DeltaCheckResult delta_identity_quadrature(int dimension, TestFunction fn, const GridSpec& grid)
{
    if (dimension < 3) throw DomainError("delta identity check requires D >= 3");
    GridSpec uniform = grid;
    uniform.spacing = Spacing::Uniform;
    const RadialGrid radial(uniform);

    const double D = dimension;
    std::vector<double> integrand(radial.size());
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double r = radial[i];
        const auto phi = evaluate(fn, r);
        const double laplacian = phi.d2 + (D - 1.0) / r * phi.d1;
        integrand[i] = std::pow(r, 2.0 - D) * laplacian * std::pow(r, D - 1.0);
    }

    DeltaCheckResult res;
    res.dimension = dimension;
    res.test_fn = fn;
    res.n_points = uniform.n;
    res.quadrature_value = solid_angle(dimension) * radial.integrate(integrand);
    res.predicted = -(D - 2.0) * solid_angle(dimension) * test_value_at_origin(fn);
    res.abs_error = std::abs(res.quadrature_value - res.predicted);
    res.rel_error = res.predicted != 0.0 ? res.abs_error / std::abs(res.predicted) : res.abs_error;
    return res;
}

DeltaCheckResult delta_identity_check(int dimension, TestFunction fn, const GridSpec& grid)
{
    constexpr int kMaxPoints = 1 << 22;
    GridSpec g = grid;
    auto prev = delta_identity_quadrature(dimension, fn, g);
    while (2 * g.n - 1 <= kMaxPoints) {
        g.n = 2 * g.n - 1;
        auto cur = delta_identity_quadrature(dimension, fn, g);
        const double change = std::abs(cur.quadrature_value - prev.quadrature_value);
        if (change <= 1e-11 * std::abs(cur.quadrature_value) + 1e-13) return cur;
        prev = cur;
    }
    std::ostringstream msg;
    msg << "delta identity quadrature not converged at " << g.n << " points";
    throw QuadratureFailure(msg.str());
}

std::string to_string(FluxVerdict verdict)
{
    switch (verdict) {
        case FluxVerdict::Vanishes: return "Vanishes";
        case FluxVerdict::Finite: return "Finite";
        case FluxVerdict::Diverges: return "Diverges";
    }
    return "Unknown";
}

FluxScaling flux_scaling(int dimension, double s)
{
    const double exponent = (dimension - 1) - 2.0 * s;
    if (exponent > 0.0) return {exponent, FluxVerdict::Vanishes};
    if (exponent == 0.0) return {exponent, FluxVerdict::Finite};
    return {exponent, FluxVerdict::Diverges};
}

DegeneracyReport degeneracy_check(const RadialProblem& base, std::span<const std::pair<int, int>> shifts,
                                  int n_levels)
{
    if (n_levels < 1) throw DomainError("degeneracy check needs at least one level");
    std::vector<RadialProblem> partners;
    for (auto [dd, dl] : shifts) {
        if (dd + 2 * dl != 0) {
            std::ostringstream msg;
            msg << "shift (" << dd << ", " << dl << ") changes D + 2l";
            throw DomainError(msg.str());
        }
        RadialProblem p = base;
        p.dimension += dd;
        p.l += dl;
        p.validate();
        partners.push_back(std::move(p));
    }
    base.validate();

    // Index 0 is the base problem; all (problem, level) pairs run concurrently.
    const std::size_t levels = static_cast<std::size_t>(n_levels);
    const std::size_t problems = partners.size() + 1;
    std::vector<double> energies(problems * levels);
    parallel_for(energies.size(), [&](std::size_t k) {
        const std::size_t which = k / levels;
        const auto& problem = which == 0 ? base : partners[which - 1];
        energies[k] = eigen_solve(problem, static_cast<int>(k % levels)).energy;
    });

    DegeneracyReport report;
    for (std::size_t j = 0; j < partners.size(); ++j) {
        for (std::size_t n = 0; n < levels; ++n) {
            DegeneracyRow row;
            row.delta_dimension = shifts[j].first;
            row.delta_l = shifts[j].second;
            row.level = static_cast<int>(n);
            row.energy_base = energies[n];
            row.energy_partner = energies[(j + 1) * levels + n];
            row.diff = std::abs(row.energy_base - row.energy_partner);
            report.max_discrepancy = std::max(report.max_discrepancy, row.diff);
            report.rows.push_back(row);
        }
    }
    return report;
}

OriginExponent fit_origin_exponent(std::span<const double> u, const GridSpec& grid, int dimension, int points)
{
    const RadialGrid radial(grid);
    if (u.size() != radial.size()) throw DomainError("fit_origin_exponent: sample count does not match grid");
    if (points < 2 || static_cast<std::size_t>(points) > u.size())
        throw DomainError("fit_origin_exponent: invalid point count");

    // Least-squares slope of log|R| against log r.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int i = 0; i < points; ++i) {
        const double r = radial[static_cast<std::size_t>(i)];
        const double R = std::abs(u[static_cast<std::size_t>(i)]) * std::pow(r, -0.5 * (dimension - 1));
        if (R == 0.0) continue;
        const double x = std::log(r);
        const double y = std::log(R);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) throw DomainError("fit_origin_exponent: wavefunction vanishes near the origin");
    const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    return {slope, -slope};
}

} // namespace hyperradial
