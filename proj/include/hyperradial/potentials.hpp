#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hyperradial {

/// -Z/r
struct Coulomb {
    double Z = 1.0;
};

/// omega^2 r^2 / 2
struct Harmonic {
    double omega = 1.0;
};

/// c * r^p
struct PowerLaw {
    double c = 0.0;
    double p = 0.0;
};

/// g / r^2
struct InverseSquare {
    double g = 0.0;
};

using PotentialTerm = std::variant<Coulomb, Harmonic, PowerLaw, InverseSquare>;

/// Hypercentral potential V(r) given as a sum of analytic terms.
class Potential {
public:
    Potential() = default;
    explicit Potential(std::vector<PotentialTerm> terms);

    Potential& add(PotentialTerm term);

    [[nodiscard]] const std::vector<PotentialTerm>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// V(r) for r > 0. Throws EvaluationError on overflow or NaN.
    [[nodiscard]] double operator()(double r) const;

    /// Limit of V(r) as r -> infinity: 0, +inf or -inf.
    [[nodiscard]] double limit_at_infinity() const;

    /// Characteristic length: 1/Z for Coulomb, 1/sqrt(omega) for Harmonic, 1 otherwise.
    /// For sums the smallest term length is used.
    [[nodiscard]] double length_scale() const;

    /// Coefficient C of the C/r part of V (Coulomb terms and power laws with p = -1).
    [[nodiscard]] double inverse_r_coeff() const;

    /// Returns a copy with every coefficient multiplied by `factor`.
    [[nodiscard]] Potential scaled(double factor) const;

private:
    std::vector<PotentialTerm> terms_;
};

enum class PotentialKind { Regular, SoftSingularAttractive, SoftSingularRepulsive, Singular };

[[nodiscard]] std::string to_string(PotentialKind kind);

/// Classification by the r -> 0 limit of r^2 V(r).
struct PotentialClass {
    PotentialKind kind = PotentialKind::Regular;
    /// |lim r^2 V| for the soft-singular kinds, 0 otherwise.
    double V0 = 0.0;
    /// lim r^2 V itself (signed); +/-inf for Singular.
    double origin_limit = 0.0;

    [[nodiscard]] bool soft_singular() const noexcept {
        return kind == PotentialKind::SoftSingularAttractive ||
               kind == PotentialKind::SoftSingularRepulsive;
    }
};

/// Exact classification read off the tagged terms.
[[nodiscard]] PotentialClass classify_analytic(const Potential& potential);

/// Sampling classification: r^2 V(r) at r = 1e-3 ... 1e-8 and a log-log slope fit.
[[nodiscard]] PotentialClass classify_sampled(const Potential& potential);

/// Analytic classification, cross-checked against the sampled one.
/// Throws IndeterminateClass if the two disagree.
[[nodiscard]] PotentialClass classify(const Potential& potential);

} // namespace hyperradial
