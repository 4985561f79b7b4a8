#pragma once

#include "hyperradial/grid.hpp"
#include "hyperradial/potentials.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hyperradial {

/// Boundary data at the origin.
///
/// Dirichlet keeps only the standard branch. SAE mixes in the additional
/// branch with ratio tau = A2/A1 measured at r = 1; `pure_additional` encodes
/// tau = infinity.
struct BoundaryMode {
    enum class Kind { Dirichlet, SAE };
    Kind kind = Kind::Dirichlet;
    double tau = 0.0;
    bool pure_additional = false;

    static BoundaryMode dirichlet() { return {}; }
    static BoundaryMode sae(double tau) { return {Kind::SAE, tau, false}; }
    static BoundaryMode additional() { return {Kind::SAE, 0.0, true}; }

    [[nodiscard]] bool mixes_additional() const noexcept
    {
        return kind == Kind::SAE && (pure_additional || tau != 0.0);
    }
};

struct SolverSettings {
    /// Optional [lo, hi] energy window for level bracketing.
    std::optional<std::pair<double, double>> energy_window;
    /// Relative energy tolerance of the final root.
    double energy_tolerance = 1e-12;
    int max_iterations = 400;
};

/// One eigenproblem of the reduced radial equation
///   -u''/2 + [V(r) + L(L+1)/(2 r^2)] u = E u.
struct RadialProblem {
    int dimension = 3;
    int l = 0;
    Potential potential;
    GridSpec grid;
    BoundaryMode boundary;
    SolverSettings settings;

    /// Throws DomainError if dimension < 2, l < 0 or the grid is invalid.
    void validate() const;
};

/// Dimension-dependent quantities of the reduced equation.
struct EffectiveModel {
    int dimension = 3;
    int l = 0;
    /// Grand orbital number l + (D-3)/2.
    double L = 0.0;
    /// l(l+D-2), the hyperangular eigenvalue.
    double centrifugal_coeff = 0.0;
    /// (D-1)(D-3)/4, the purely dimensional part.
    double fictitious_coeff = 0.0;
    int dplus2l = 3;

    /// L(L+1) = centrifugal_coeff + fictitious_coeff.
    [[nodiscard]] double barrier_coeff() const noexcept { return centrifugal_coeff + fictitious_coeff; }
};

/// L = l + (D-3)/2. Throws DomainError for D < 2 or l < 0.
[[nodiscard]] double grand_orbital(int dimension, int l);

[[nodiscard]] EffectiveModel build_effective_model(int dimension, int l);

/// L(L+1)/(2 r^2), the full barrier of the reduced equation.
[[nodiscard]] double centrifugal_term(const EffectiveModel& model, double r);

/// The same barrier written through k = D + 2l: (k^2 - 4k + 3) / (8 r^2).
[[nodiscard]] double centrifugal_term_from_dplus2l(int dplus2l, double r);

/// V(r) + L(L+1)/(2 r^2).
[[nodiscard]] double effective_potential(const EffectiveModel& model, const Potential& potential, double r);

/// u(r_i) = r_i^{(D-1)/2} R(r_i).
[[nodiscard]] std::vector<double> reduce_wavefunction(std::span<const double> R, std::span<const double> radii,
                                                      int dimension);

/// Inverse of reduce_wavefunction: R(r_i) = r_i^{-(D-1)/2} u(r_i).
[[nodiscard]] std::vector<double> expand_wavefunction(std::span<const double> u, std::span<const double> radii,
                                                      int dimension);

} // namespace hyperradial
