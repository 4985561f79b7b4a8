#pragma once

#include "hyperradial/grid.hpp"
#include "hyperradial/reduction.hpp"
#include "hyperradial/solver.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyperradial {

enum class TestFunction { Gaussian, CompactBump };

[[nodiscard]] std::string to_string(TestFunction fn);
[[nodiscard]] TestFunction test_function_from_string(const std::string& name);

/// Surface area of the unit sphere in D dimensions, 2 pi^{D/2} / Gamma(D/2).
[[nodiscard]] double solid_angle(int dimension);

struct DeltaCheckResult {
    int dimension = 3;
    TestFunction test_fn = TestFunction::Gaussian;
    /// Omega_D * integral of r^{2-D} (Laplacian phi) r^{D-1} dr.
    double quadrature_value = 0.0;
    /// -(D-2) Omega_D phi(0).
    double predicted = 0.0;
    /// Relative error, or the absolute error when predicted is zero.
    double rel_error = 0.0;
    double abs_error = 0.0;
    int n_points = 0;
};

/// Pairs 1/r^{D-2} with the radial Laplacian of a smooth test function on a
/// single uniform grid over [grid.r_min, grid.r_max] with grid.n points.
[[nodiscard]] DeltaCheckResult delta_identity_quadrature(int dimension, TestFunction fn, const GridSpec& grid);

/// As delta_identity_quadrature, doubling the grid until two successive
/// values agree to 1e-11 relative. Throws QuadratureFailure if that does not
/// happen by 2^22 points, DomainError for D < 3.
[[nodiscard]] DeltaCheckResult delta_identity_check(int dimension, TestFunction fn, const GridSpec& grid);

enum class FluxVerdict { Vanishes, Finite, Diverges };

[[nodiscard]] std::string to_string(FluxVerdict verdict);

/// Flux through a sphere of radius a around the origin scales as a^{D-1-2s}
/// for psi ~ r^{-s}.
struct FluxScaling {
    double exponent;
    FluxVerdict verdict;
};

[[nodiscard]] FluxScaling flux_scaling(int dimension, double s);

struct DegeneracyRow {
    int delta_dimension = 0;
    int delta_l = 0;
    int level = 0;
    double energy_base = 0.0;
    double energy_partner = 0.0;
    double diff = 0.0;
};

struct DegeneracyReport {
    std::vector<DegeneracyRow> rows;
    double max_discrepancy = 0.0;
};

/// Solves `base` and every partner (D + dD, l + dl) with dD + 2 dl = 0 on the
/// base grid and compares the lowest n_levels energies. Throws DomainError
/// for an invalid shift.
[[nodiscard]] DegeneracyReport degeneracy_check(const RadialProblem& base,
                                                std::span<const std::pair<int, int>> shifts, int n_levels);

/// Power-law fit of R = r^{-(D-1)/2} u over the innermost grid nodes.
struct OriginExponent {
    /// R ~ r^{radial_exponent}.
    double radial_exponent = 0.0;
    /// The same behavior written as psi ~ r^{-s}.
    double flux_exponent = 0.0;
};

[[nodiscard]] OriginExponent fit_origin_exponent(std::span<const double> u, const GridSpec& grid, int dimension,
                                                 int points = 8);

} // namespace hyperradial
