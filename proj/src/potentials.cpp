#include "hyperradial/potentials.hpp"

#include "hyperradial/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace hyperradial {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double term_value(const PotentialTerm& term, double r)
{
    return std::visit(overloaded{
                          [r](const Coulomb& t) { return -t.Z / r; },
                          [r](const Harmonic& t) { return 0.5 * t.omega * t.omega * r * r; },
                          [r](const PowerLaw& t) { return t.c == 0.0 ? 0.0 : t.c * std::pow(r, t.p); },
                          [r](const InverseSquare& t) { return t.g / (r * r); },
                      },
                      term);
}

/// r^2 V(r) for one term written as coeff * r^exponent.
struct OriginPower {
    double exponent;
    double coeff;
};

OriginPower origin_power(const PotentialTerm& term)
{
    return std::visit(overloaded{
                          [](const Coulomb& t) { return OriginPower{1.0, -t.Z}; },
                          [](const Harmonic& t) { return OriginPower{4.0, 0.5 * t.omega * t.omega}; },
                          [](const PowerLaw& t) { return OriginPower{t.p + 2.0, t.c}; },
                          [](const InverseSquare& t) { return OriginPower{0.0, t.g}; },
                      },
                      term);
}

void validate(const PotentialTerm& term)
{
    std::visit(overloaded{
                   [](const Coulomb& t) {
                       if (!std::isfinite(t.Z)) throw DomainError("coulomb: Z must be finite");
                   },
                   [](const Harmonic& t) {
                       if (!std::isfinite(t.omega) || t.omega < 0.0)
                           throw DomainError("harmonic: omega must be finite and >= 0");
                   },
                   [](const PowerLaw& t) {
                       if (!std::isfinite(t.c) || !std::isfinite(t.p))
                           throw DomainError("power_law: c and p must be finite");
                   },
                   [](const InverseSquare& t) {
                       if (!std::isfinite(t.g)) throw DomainError("inverse_square: g must be finite");
                   },
               },
               term);
}

PotentialClass from_limit(double limit)
{
    if (std::isinf(limit)) return {PotentialKind::Singular, 0.0, limit};
    if (limit == 0.0) return {PotentialKind::Regular, 0.0, 0.0};
    if (limit < 0.0) return {PotentialKind::SoftSingularAttractive, -limit, limit};
    return {PotentialKind::SoftSingularRepulsive, limit, limit};
}

} // namespace

Potential::Potential(std::vector<PotentialTerm> terms) : terms_(std::move(terms))
{
    for (const auto& t : terms_) validate(t);
}

Potential& Potential::add(PotentialTerm term)
{
    validate(term);
    terms_.push_back(term);
    return *this;
}

double Potential::operator()(double r) const
{
    if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
    double v = 0.0;
    for (const auto& t : terms_) v += term_value(t, r);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "potential not finite at r = " << r;
        throw EvaluationError(msg.str());
    }
    return v;
}

double Potential::limit_at_infinity() const
{
    // V ~ coeff r^(exponent - 2); the largest power with non-zero weight dominates.
    std::map<double, double> powers;
    for (const auto& t : terms_) {
        auto [e, c] = origin_power(t);
        powers[e - 2.0] += c;
    }
    for (auto it = powers.rbegin(); it != powers.rend(); ++it) {
        if (it->second == 0.0) continue;
        if (it->first > 0.0) return it->second > 0.0 ? std::numeric_limits<double>::infinity()
                                                      : -std::numeric_limits<double>::infinity();
        if (it->first == 0.0) return it->second;
        return 0.0;
    }
    return 0.0;
}

double Potential::length_scale() const
{
    double length = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) {
        double a = 1.0;
        if (auto c = std::get_if<Coulomb>(&t); c && c->Z != 0.0) a = 1.0 / std::abs(c->Z);
        if (auto h = std::get_if<Harmonic>(&t); h && h->omega > 0.0) a = 1.0 / std::sqrt(h->omega);
        length = std::min(length, a);
    }
    return std::isfinite(length) ? length : 1.0;
}

double Potential::inverse_r_coeff() const
{
    double c = 0.0;
    for (const auto& t : terms_) {
        if (auto coul = std::get_if<Coulomb>(&t)) c -= coul->Z;
        if (auto pw = std::get_if<PowerLaw>(&t); pw && pw->p == -1.0) c += pw->c;
    }
    return c;
}

Potential Potential::scaled(double factor) const
{
    Potential out;
    for (const auto& t : terms_) {
        out.add(std::visit(overloaded{
                               [factor](const Coulomb& c) -> PotentialTerm { return Coulomb{c.Z * factor}; },
                               [factor](const Harmonic& h) -> PotentialTerm {
                                   // omega^2 scales; a negative factor has no harmonic representation
                                   if (factor < 0.0) return PowerLaw{0.5 * h.omega * h.omega * factor, 2.0};
                                   return Harmonic{h.omega * std::sqrt(factor)};
                               },
                               [factor](const PowerLaw& p) -> PotentialTerm { return PowerLaw{p.c * factor, p.p}; },
                               [factor](const InverseSquare& g) -> PotentialTerm { return InverseSquare{g.g * factor}; },
                           },
                           t));
    }
    return out;
}

std::string to_string(PotentialKind kind)
{
    switch (kind) {
        case PotentialKind::Regular: return "Regular";
        case PotentialKind::SoftSingularAttractive: return "SoftSingularAttractive";
        case PotentialKind::SoftSingularRepulsive: return "SoftSingularRepulsive";
        case PotentialKind::Singular: return "Singular";
    }
    return "Unknown";
}

PotentialClass classify_analytic(const Potential& potential)
{
    // Group terms by the power of r in r^2 V(r); the smallest power with a
    // non-vanishing coefficient fixes the r -> 0 limit.
    std::vector<OriginPower> powers;
    for (const auto& t : potential.terms()) {
        auto op = origin_power(t);
        if (op.coeff == 0.0) continue;
        auto same = std::find_if(powers.begin(), powers.end(), [&](const OriginPower& p) {
            return std::abs(p.exponent - op.exponent) <= 1e-12;
        });
        if (same != powers.end()) same->coeff += op.coeff;
        else powers.push_back(op);
    }
    std::sort(powers.begin(), powers.end(),
              [](const OriginPower& a, const OriginPower& b) { return a.exponent < b.exponent; });
    for (const auto& p : powers) {
        if (p.coeff == 0.0) continue;
        if (p.exponent < -1e-12)
            return from_limit(p.coeff > 0.0 ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity());
        if (std::abs(p.exponent) <= 1e-12) return from_limit(p.coeff);
        return from_limit(0.0);
    }
    return from_limit(0.0);
}

PotentialClass classify_sampled(const Potential& potential)
{
    constexpr std::array<double, 6> radii{1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    std::array<double, radii.size()> y{};
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double v;
        try {
            v = potential(radii[i]);
        }
        catch (const EvaluationError&) {
            v = std::numeric_limits<double>::infinity();
        }
        y[i] = radii[i] * radii[i] * v;
    }
    const double last = y.back();
    if (std::isinf(last)) return from_limit(last);
    if (last == 0.0) return from_limit(0.0);

    // Slope of log|r^2 V| against log r over the two innermost samples.
    const double prev = y[y.size() - 2];
    if (prev == 0.0 || (prev > 0.0) != (last > 0.0)) return from_limit(0.0);
    const double slope = std::log(std::abs(last / prev)) / std::log(radii[radii.size() - 1] / radii[radii.size() - 2]);
    constexpr double flat = 0.05;
    if (slope > flat) return from_limit(0.0);
    if (slope < -flat)
        return from_limit(last > 0.0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity());
    return from_limit(last);
}

PotentialClass classify(const Potential& potential)
{
    const auto analytic = classify_analytic(potential);
    const auto sampled = classify_sampled(potential);
    bool agree = analytic.kind == sampled.kind;
    if (agree && analytic.soft_singular())
        agree = std::abs(analytic.V0 - sampled.V0) <= 1e-3 * analytic.V0 + 1e-9;
    if (!agree) {
        std::ostringstream msg;
        msg << "origin classification indeterminate: analytic " << to_string(analytic.kind)
            << ", sampled " << to_string(sampled.kind);
        throw IndeterminateClass(msg.str());
    }
    return analytic;
}

} // namespace hyperradial
