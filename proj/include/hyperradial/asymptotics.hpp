#pragma once

#include "hyperradial/potentials.hpp"

#include <array>
#include <optional>
#include <string>

namespace hyperradial {

/// Leading near-origin behavior of solutions of the reduced equation.
struct IndicialReport {
    int dimension = 3;
    int l = 0;
    PotentialClass potential_class;
    double L = 0.0;
    /// sqrt((L+1/2)^2 + 2 lim r^2 V); set only for soft-singular potentials with real P.
    std::optional<double> P;
    /// (L+1, -L) for Regular potentials.
    std::optional<std::array<double, 2>> regular_exponents;
    /// (1/2+P, 1/2-P) for soft-singular potentials with real P.
    std::optional<std::array<double, 2>> soft_exponents;
    bool extra_solution_allowed = false;
    /// P imaginary: 2 V0 > (L+1/2)^2 under attraction.
    bool oscillatory = false;
    /// Singular class or oscillatory P: no lower-bounded spectrum.
    bool fall_to_center = false;

    /// Exponent of the standard branch, u ~ r^{standard_exponent()}.
    [[nodiscard]] double standard_exponent() const;
    /// Exponent of the additional branch, u ~ r^{additional_exponent()}.
    [[nodiscard]] double additional_exponent() const;
    /// Half the gap between the two branch exponents, |L + 1/2| for Regular.
    [[nodiscard]] double branch_half_gap() const;
};

[[nodiscard]] IndicialReport indicial_report(int dimension, int l, const PotentialClass& potential_class);

/// T = (l + (D-2)/2)^2 - 1/4; an additional solution exists iff 2 V0 > T.
[[nodiscard]] double extra_solution_threshold(int dimension, int l);

enum class Criterion { DifferentialProbability, SphereProbability, FiniteNorm, PauliFlux };

[[nodiscard]] std::string to_string(Criterion criterion);

enum class Direction { Greater, Less };

enum class OriginVerdict { MustVanish, MayDiverge };

[[nodiscard]] std::string to_string(OriginVerdict verdict);

/// Strict inequality `s <direction> value` on an origin exponent s.
struct AdmissibilityBound {
    Criterion criterion;
    /// How s is defined for this criterion, e.g. "R ~ r^s" or "psi = u~/r^s".
    std::string convention;
    Direction direction;
    double value;
    /// Exponent of u at the bound; u ~ r^{u_exponent_at_bound}.
    double u_exponent_at_bound;
    OriginVerdict u_origin_verdict;

    [[nodiscard]] bool admits(double s) const noexcept
    {
        return direction == Direction::Greater ? s > value : s < value;
    }
};

[[nodiscard]] AdmissibilityBound admissibility_bound(Criterion criterion, int dimension);

enum class Branch { Standard, Additional };

/// Initial data (u, du/dr) for outward integration at r0.
struct StartData {
    double u;
    double du;
};

/// Initial data at r0 from the near-origin power laws. Radii are measured in
/// units of the reference radius 1, so the SAE mixture is
/// u = r^{1/2+P} + tau r^{1/2-P}.
///
/// With `inverse_r_coeff` = C for a potential containing C/r, each branch
/// r^s carries its first correction factor (1 + C r / s); the default 0 gives
/// the bare leading powers.
///
/// Throws BranchNotAllowed when the additional branch (or tau != 0) is
/// requested without an admissible extra solution, and DomainError for
/// Singular or oscillatory reports.
[[nodiscard]] StartData series_start(const IndicialReport& report, Branch branch, double r0, double tau = 0.0,
                                     double inverse_r_coeff = 0.0);

} // namespace hyperradial
