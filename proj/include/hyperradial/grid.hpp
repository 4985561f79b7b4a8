#pragma once

#include <span>
#include <string>
#include <vector>

namespace hyperradial {

enum class Spacing { Uniform, Logarithmic };

[[nodiscard]] std::string to_string(Spacing spacing);
[[nodiscard]] Spacing spacing_from_string(const std::string& name);

struct GridSpec {
    double r_min = 1e-5;
    double r_max = 50.0;
    int n = 4001;
    Spacing spacing = Spacing::Logarithmic;

    /// Throws DomainError unless 0 < r_min < r_max and n >= 16.
    void validate() const;
};

/// Strictly increasing radii built from a GridSpec.
///
/// Uniform grids are equispaced in r with step h; logarithmic grids are
/// equispaced in x = ln r with step h.
class RadialGrid {
public:
    explicit RadialGrid(const GridSpec& spec);

    [[nodiscard]] const GridSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] Spacing spacing() const noexcept { return spec_.spacing; }
    [[nodiscard]] std::size_t size() const noexcept { return r_.size(); }
    [[nodiscard]] double step() const noexcept { return h_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return r_[i]; }
    [[nodiscard]] std::span<const double> radii() const noexcept { return r_; }

    /// dr/di / h at node i: 1 for uniform grids, r_i for logarithmic ones.
    [[nodiscard]] double jacobian(std::size_t i) const noexcept
    {
        return spec_.spacing == Spacing::Uniform ? 1.0 : r_[i];
    }

    /// Composite Simpson rule for the integral of f dr over the grid.
    /// An even number of points closes with a 3/8 panel.
    [[nodiscard]] double integrate(std::span<const double> f) const;

private:
    GridSpec spec_;
    double h_ = 0.0;
    std::vector<double> r_;
};

/// Composite Simpson on equispaced samples with step h (3/8 closing panel when
/// the sample count is even).
[[nodiscard]] double simpson(std::span<const double> f, double h);

} // namespace hyperradial
