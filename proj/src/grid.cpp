#include "hyperradial/grid.hpp"

#include "hyperradial/errors.hpp"

#include <cmath>
#include <sstream>

namespace hyperradial {

std::string to_string(Spacing spacing)
{
    return spacing == Spacing::Uniform ? "uniform" : "logarithmic";
}

Spacing spacing_from_string(const std::string& name)
{
    if (name == "uniform") return Spacing::Uniform;
    if (name == "logarithmic" || name == "log") return Spacing::Logarithmic;
    throw SchemaError("unknown grid spacing '" + name + "' (expected uniform or logarithmic)");
}

void GridSpec::validate() const
{
    if (!(r_min > 0.0) || !std::isfinite(r_min)) throw DomainError("grid: r_min must be > 0");
    if (!(r_max > r_min) || !std::isfinite(r_max)) throw DomainError("grid: r_max must exceed r_min");
    if (n < 16) throw DomainError("grid: n must be >= 16");
}

RadialGrid::RadialGrid(const GridSpec& spec) : spec_(spec)
{
    spec_.validate();
    const auto n = static_cast<std::size_t>(spec_.n);
    r_.resize(n);
    if (spec_.spacing == Spacing::Uniform) {
        h_ = (spec_.r_max - spec_.r_min) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) r_[i] = spec_.r_min + h_ * static_cast<double>(i);
    }
    else {
        const double x0 = std::log(spec_.r_min);
        h_ = (std::log(spec_.r_max) - x0) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) r_[i] = std::exp(x0 + h_ * static_cast<double>(i));
    }
    r_.front() = spec_.r_min;
    r_.back() = spec_.r_max;
}

double RadialGrid::integrate(std::span<const double> f) const
{
    if (f.size() != r_.size()) throw DomainError("integrate: sample count does not match grid");
    if (spec_.spacing == Spacing::Uniform) return simpson(f, h_);
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] * r_[i];
    return simpson(g, h_);
}

double simpson(std::span<const double> f, double h)
{
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);

    // Simpson over an odd number of points, 3/8 rule on the last four if needed.
    const std::size_t simpson_end = (n % 2 == 1) ? n - 1 : n - 4;
    double total = 0.0;
    if (simpson_end > 0) {
        double s = f[0] + f[simpson_end];
        for (std::size_t i = 1; i < simpson_end; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        total = h / 3.0 * s;
    }
    if (n % 2 == 0) {
        const std::size_t k = n - 4;
        total += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    }
    return total;
}

} // namespace hyperradial
