#pragma once

#include "hyperradial/asymptotics.hpp"
#include "hyperradial/grid.hpp"
#include "hyperradial/reduction.hpp"

#include <span>
#include <vector>

namespace hyperradial {

enum class IntegrationDirection { Outward, Inward };

/// Numerov solution of the reduced equation along the grid.
///
/// `u` holds the solution on every grid node in units of exp(log_scale):
/// the true values are u[i] * exp(log_scale). Values on nodes that were not
/// reached are zero.
struct Trajectory {
    std::vector<double> u;
    double log_scale = 0.0;
    /// Sign changes of u strictly inside the integrated range.
    int nodes = 0;
};

/// Integrates -u''/2 + V_eff u = E u from r_min (Outward) or r_max (Inward),
/// given u and du/dr at the starting end. Standard Numerov is used on uniform
/// grids; on logarithmic grids the equation is integrated for w = r^{-1/2} u
/// in x = ln r, where it reads w'' = [2 r^2 (V_eff - E) + 1/4] w.
/// Throws EvaluationError if the potential is not finite on the grid.
[[nodiscard]] Trajectory numerov_integrate(const RadialProblem& problem, double energy, StartData start,
                                           IntegrationDirection direction);

struct Level {
    int n_r = 0;
    double energy = 0.0;
    int nodes = 0;
    /// Reduced wavefunction on the problem grid, normalized to unit norm.
    std::vector<double> u;
};

struct Spectrum {
    GridSpec grid;
    std::vector<Level> levels;
};

/// Bound state with n_r interior nodes.
///
/// Levels are bracketed by counting nodes of the outward solution, then the
/// discrete Wronskian of the outward and inward solutions at the outermost
/// classical turning point is driven to zero by bisection with a final secant
/// step. Throws NoBoundState when no bracket exists in the energy window (or
/// the potential falls to the center) and ConvergenceFailure when the
/// iteration limit is reached.
[[nodiscard]] Level eigen_solve(const RadialProblem& problem, int n_r);

/// Lowest `count` levels, solved concurrently.
[[nodiscard]] Spectrum solve_spectrum(const RadialProblem& problem, int count);

/// Lowest k eigenvalues of the second-order finite-difference Hamiltonian on a
/// uniform grid over [0, r_max] with problem.grid.n points and
/// u(0) = u(r_max) = 0, computed by Sturm-sequence bisection. r_min and the
/// grid spacing of the problem are ignored.
/// Throws DomainError for non-Dirichlet problems.
[[nodiscard]] std::vector<double> fd_oracle(const RadialProblem& problem, int k);

/// Step of the uniform grid used by fd_oracle.
[[nodiscard]] double fd_step(const GridSpec& grid);

/// Scales u so that the Simpson integral of u^2 dr is one and u is positive
/// just outside r_min. Throws ZeroNorm when the integral is below 1e-300.
[[nodiscard]] std::vector<double> normalize(std::span<const double> u, const GridSpec& grid);

/// Interior sign changes of a sampled function.
[[nodiscard]] int count_nodes(std::span<const double> values);

/// Default grid for the lowest `levels` states: logarithmic, r_min = 1e-5
/// times the potential's length scale, r_max where the WKB decay of the
/// highest requested level reaches exp(-30), and a log step near 3e-3.
[[nodiscard]] GridSpec suggest_grid(int dimension, int l, const Potential& potential, int levels,
                                    BoundaryMode boundary = {});

} // namespace hyperradial
