#include "hyperradial/asymptotics.hpp"

#include "hyperradial/errors.hpp"
#include "hyperradial/reduction.hpp"

#include <cmath>
#include <sstream>

namespace hyperradial {

double IndicialReport::standard_exponent() const
{
    return 0.5 + branch_half_gap();
}

double IndicialReport::additional_exponent() const
{
    return 0.5 - branch_half_gap();
}

double IndicialReport::branch_half_gap() const
{
    if (P) return *P;
    if (regular_exponents) return std::abs(L + 0.5);
    throw DomainError("no real near-origin exponents (fall to the center)");
}

IndicialReport indicial_report(int dimension, int l, const PotentialClass& potential_class)
{
    IndicialReport rep;
    rep.dimension = dimension;
    rep.l = l;
    rep.potential_class = potential_class;
    rep.L = grand_orbital(dimension, l);

    switch (potential_class.kind) {
        case PotentialKind::Regular:
            rep.regular_exponents = std::array<double, 2>{rep.L + 1.0, -rep.L};
            break;
        case PotentialKind::Singular:
            rep.fall_to_center = true;
            break;
        case PotentialKind::SoftSingularAttractive:
        case PotentialKind::SoftSingularRepulsive: {
            const double a = rep.L + 0.5;
            const double p2 = a * a + 2.0 * potential_class.origin_limit;
            if (p2 < 0.0) {
                rep.oscillatory = true;
                rep.fall_to_center = true;
                break;
            }
            const double P = std::sqrt(p2);
            rep.P = P;
            rep.soft_exponents = std::array<double, 2>{0.5 + P, 0.5 - P};
            rep.extra_solution_allowed = P > 0.0 && P < 0.5;
            break;
        }
    }
    return rep;
}

double extra_solution_threshold(int dimension, int l)
{
    if (dimension < 2 || l < 0) throw DomainError("extra_solution_threshold requires D >= 2 and l >= 0");
    const double a = l + 0.5 * (dimension - 2);
    return a * a - 0.25;
}

std::string to_string(Criterion criterion)
{
    switch (criterion) {
        case Criterion::DifferentialProbability: return "DifferentialProbability";
        case Criterion::SphereProbability: return "SphereProbability";
        case Criterion::FiniteNorm: return "FiniteNorm";
        case Criterion::PauliFlux: return "PauliFlux";
    }
    return "Unknown";
}

std::string to_string(OriginVerdict verdict)
{
    return verdict == OriginVerdict::MustVanish ? "MustVanish" : "MayDiverge";
}

AdmissibilityBound admissibility_bound(Criterion criterion, int dimension)
{
    if (dimension < 2) throw DomainError("admissibility_bound requires D >= 2");
    const double D = dimension;
    switch (criterion) {
        case Criterion::DifferentialProbability:
            // |R|^2 r^{D-1} dr finite: 2s + D - 1 > 0, so u ~ r^{(D-1)/2+s} -> 0.
            return {criterion, "R ~ r^s", Direction::Greater, 0.5 * (1.0 - D), 0.0, OriginVerdict::MustVanish};
        case Criterion::SphereProbability:
        case Criterion::FiniteNorm:
            // R may grow like r^{-D/2+eps}; u then behaves as r^{-1/2+eps}.
            return {criterion, "R ~ r^s", Direction::Greater, -0.5 * D, -0.5, OriginVerdict::MayDiverge};
        case Criterion::PauliFlux:
            // Flux through a sphere of radius a scales as a^{D-1-2s}.
            return {criterion, "psi = u~/r^s", Direction::Less, 0.5 * (D - 1.0), 0.0, OriginVerdict::MustVanish};
    }
    throw DomainError("unknown admissibility criterion");
}

StartData series_start(const IndicialReport& report, Branch branch, double r0, double tau, double inverse_r_coeff)
{
    if (!(r0 > 0.0)) throw DomainError("series start requires r0 > 0");
    if (report.fall_to_center)
        throw DomainError("no series start for a potential that falls to the center");
    if ((branch == Branch::Additional || tau != 0.0) && !report.extra_solution_allowed) {
        std::ostringstream msg;
        msg << "additional near-origin branch not admissible (D=" << report.dimension << ", l=" << report.l << ")";
        throw BranchNotAllowed(msg.str());
    }

    // r^s (1 + a r) with a = C / s solves the equation through order r^{s-1}.
    const auto power = [&](double s) -> StartData {
        const double a = inverse_r_coeff != 0.0 ? inverse_r_coeff / s : 0.0;
        const double rs = std::pow(r0, s);
        return {rs * (1.0 + a * r0), rs * (s / r0 + a * (s + 1.0))};
    };
    if (branch == Branch::Additional) return power(report.additional_exponent());
    const auto standard = power(report.standard_exponent());
    if (tau == 0.0) return standard;
    const auto additional = power(report.additional_exponent());
    return {standard.u + tau * additional.u, standard.du + tau * additional.du};
}

} // namespace hyperradial
