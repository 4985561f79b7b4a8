#include "hyperradial/reduction.hpp"

#include "hyperradial/errors.hpp"

#include <cmath>
#include <sstream>

namespace hyperradial {

namespace {

void check_quantum_numbers(int dimension, int l)
{
    if (dimension < 2) {
        std::ostringstream msg;
        msg << "dimension must be >= 2 (got " << dimension << ")";
        throw DomainError(msg.str());
    }
    if (l < 0) {
        std::ostringstream msg;
        msg << "hyperangular momentum must be >= 0 (got " << l << ")";
        throw DomainError(msg.str());
    }
}

std::vector<double> rescale(std::span<const double> values, std::span<const double> radii, double power)
{
    if (values.size() != radii.size()) throw DomainError("wavefunction and grid sizes differ");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(radii[i] > 0.0)) throw DomainError("grid radii must be > 0");
        out[i] = std::pow(radii[i], power) * values[i];
    }
    return out;
}

} // namespace

void RadialProblem::validate() const
{
    check_quantum_numbers(dimension, l);
    grid.validate();
    if (boundary.kind == BoundaryMode::Kind::SAE && !std::isfinite(boundary.tau))
        throw DomainError("SAE mixing ratio must be finite (use the pure additional flag for infinity)");
    if (settings.energy_window && !(settings.energy_window->first < settings.energy_window->second))
        throw DomainError("energy window must satisfy lo < hi");
}

double grand_orbital(int dimension, int l)
{
    check_quantum_numbers(dimension, l);
    return l + 0.5 * (dimension - 3);
}

EffectiveModel build_effective_model(int dimension, int l)
{
    EffectiveModel m;
    m.dimension = dimension;
    m.l = l;
    m.L = grand_orbital(dimension, l);
    m.centrifugal_coeff = static_cast<double>(l) * (l + dimension - 2);
    m.fictitious_coeff = 0.25 * (dimension - 1) * (dimension - 3);
    m.dplus2l = dimension + 2 * l;
    return m;
}

double centrifugal_term(const EffectiveModel& model, double r)
{
    return model.barrier_coeff() / (2.0 * r * r);
}

double centrifugal_term_from_dplus2l(int dplus2l, double r)
{
    const double k = dplus2l;
    return (k * k - 4.0 * k + 3.0) / (8.0 * r * r);
}

double effective_potential(const EffectiveModel& model, const Potential& potential, double r)
{
    if (!(r > 0.0)) throw DomainError("effective potential requires r > 0");
    return potential(r) + centrifugal_term(model, r);
}

std::vector<double> reduce_wavefunction(std::span<const double> R, std::span<const double> radii, int dimension)
{
    return rescale(R, radii, 0.5 * (dimension - 1));
}

std::vector<double> expand_wavefunction(std::span<const double> u, std::span<const double> radii, int dimension)
{
    return rescale(u, radii, -0.5 * (dimension - 1));
}

} // namespace hyperradial
