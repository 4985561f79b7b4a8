#include "hyperradial/solver.hpp"

#include "hyperradial/errors.hpp"
#include "hyperradial/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hyperradial {

namespace {

constexpr double kRescale = 1e150;
constexpr int kStartSubsteps = 16;

/// w'' = q(t) w along the grid variable t (r for uniform grids, ln r for
/// logarithmic ones), with q_i = a_i - b_i E.
class Shooter {
public:
    explicit Shooter(const RadialProblem& problem)
        : problem_(problem), grid_(problem.grid), model_(build_effective_model(problem.dimension, problem.l))
    {
        problem.validate();
        const std::size_t n = grid_.size();
        const double barrier = model_.barrier_coeff();
        a_.resize(n);
        b_.resize(n);
        veff_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid_[i];
            const double v = problem.potential(r);
            veff_[i] = v + barrier / (2.0 * r * r);
            if (log_grid()) {
                a_[i] = 2.0 * r * r * v + barrier + 0.25;
                b_[i] = 2.0 * r * r;
            }
            else {
                a_[i] = 2.0 * veff_[i];
                b_[i] = 2.0;
            }
            if (!std::isfinite(a_[i])) throw EvaluationError("effective potential not finite on the grid");
        }
    }

    [[nodiscard]] const RadialGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }
    [[nodiscard]] bool log_grid() const noexcept { return grid_.spacing() == Spacing::Logarithmic; }
    [[nodiscard]] double veff(std::size_t i) const noexcept { return veff_[i]; }
    [[nodiscard]] double q(std::size_t i, double energy) const noexcept { return a_[i] - b_[i] * energy; }

    /// 1 - h^2 q_i / 12, the Numerov weight turning w into the conserved-Wronskian variable.
    [[nodiscard]] double weight(std::size_t i, double energy) const noexcept
    {
        const double h = grid_.step();
        return 1.0 - h * h * q(i, energy) / 12.0;
    }

    struct Run {
        std::vector<double> w;
        double log_scale = 0.0;
        int nodes = 0;
    };

    /// Integrates from the start end down to (and including) node `stop`.
    [[nodiscard]] Run integrate(double energy, StartData start, IntegrationDirection direction,
                                std::size_t stop) const
    {
        const std::size_t n = size();
        const bool outward = direction == IntegrationDirection::Outward;
        const std::size_t first = outward ? 0 : n - 1;
        const std::ptrdiff_t step = outward ? 1 : -1;
        const double h = grid_.step();

        Run run;
        run.w.assign(n, 0.0);
        auto [w0, dw0] = to_grid_variable(start, grid_[first]);
        run.w[first] = w0;
        if (first == stop) return run;

        const std::size_t second = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(first) + step);
        run.w[second] = first_step(energy, t_of(first), w0, dw0, outward ? h : -h);

        int last_sign = sign_of(w0);
        auto track = [&](double value) {
            const int s = sign_of(value);
            if (s != 0) {
                if (last_sign != 0 && s != last_sign) ++run.nodes;
                last_sign = s;
            }
        };
        track(run.w[second]);

        std::size_t prev = first;
        std::size_t cur = second;
        const double h2 = h * h / 12.0;
        while (cur != stop) {
            const std::size_t next = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cur) + step);
            const double tp = 1.0 - h2 * q(prev, energy);
            const double tc = 1.0 + 5.0 * h2 * q(cur, energy);
            const double tn = 1.0 - h2 * q(next, energy);
            double value = (2.0 * tc * run.w[cur] - tp * run.w[prev]) / tn;
            if (std::abs(value) > kRescale) {
                for (std::size_t i = std::min(first, cur); i <= std::max(first, cur); ++i) run.w[i] /= kRescale;
                value /= kRescale;
                run.log_scale += std::log(kRescale);
            }
            if (!std::isfinite(value)) throw ConvergenceFailure("Numerov integration produced a non-finite value");
            run.w[next] = value;
            track(value);
            prev = cur;
            cur = next;
        }
        return run;
    }

    /// u = r^{1/2} w on logarithmic grids, u = w otherwise.
    [[nodiscard]] double to_u(std::size_t i, double w) const
    {
        return log_grid() ? std::sqrt(grid_[i]) * w : w;
    }

    [[nodiscard]] const EffectiveModel& model() const noexcept { return model_; }

private:
    static int sign_of(double v) noexcept { return (v > 0.0) - (v < 0.0); }

    [[nodiscard]] double t_of(std::size_t i) const { return log_grid() ? std::log(grid_[i]) : grid_[i]; }

    [[nodiscard]] std::pair<double, double> to_grid_variable(StartData start, double r) const
    {
        if (!log_grid()) return {start.u, start.du};
        const double sr = std::sqrt(r);
        return {start.u / sr, sr * start.du - 0.5 * start.u / sr};
    }

    /// q at an arbitrary point of the grid variable.
    [[nodiscard]] double q_at(double t, double energy) const
    {
        const double barrier = model_.barrier_coeff();
        if (log_grid()) {
            const double r = std::exp(t);
            return 2.0 * r * r * (problem_.potential(r) - energy) + barrier + 0.25;
        }
        return 2.0 * (problem_.potential(t) - energy) + barrier / (t * t);
    }

    /// Second starting value by RK4 sub-stepping of (w, w') over one grid step.
    [[nodiscard]] double first_step(double energy, double t0, double w, double dw, double h) const
    {
        const double dt = h / kStartSubsteps;
        double t = t0;
        for (int k = 0; k < kStartSubsteps; ++k) {
            const double q0 = q_at(t, energy);
            const double qm = q_at(t + 0.5 * dt, energy);
            const double q1 = q_at(t + dt, energy);
            const double k1w = dw, k1d = q0 * w;
            const double k2w = dw + 0.5 * dt * k1d, k2d = qm * (w + 0.5 * dt * k1w);
            const double k3w = dw + 0.5 * dt * k2d, k3d = qm * (w + 0.5 * dt * k2w);
            const double k4w = dw + dt * k3d, k4d = q1 * (w + dt * k3w);
            w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            dw += dt / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
            t += dt;
        }
        return w;
    }

    const RadialProblem& problem_;
    RadialGrid grid_;
    EffectiveModel model_;
    std::vector<double> a_, b_, veff_;
};

IndicialReport problem_report(const RadialProblem& problem)
{
    const auto cls = classify(problem.potential);
    auto report = indicial_report(problem.dimension, problem.l, cls);
    if (report.fall_to_center) {
        std::ostringstream msg;
        msg << to_string(cls.kind)
            << (report.oscillatory ? " potential with imaginary P" : " potential")
            << " falls to the center";
        throw NoBoundState(msg.str());
    }
    return report;
}

StartData origin_start(const RadialProblem& problem, const IndicialReport& report)
{
    const auto& bc = problem.boundary;
    if (bc.kind == BoundaryMode::Kind::SAE && !report.extra_solution_allowed) {
        std::ostringstream msg;
        msg << "self-adjoint extension requested but no additional solution exists (D=" << problem.dimension
            << ", l=" << problem.l << ")";
        throw BranchNotAllowed(msg.str());
    }
    const double c = problem.potential.inverse_r_coeff();
    if (bc.kind == BoundaryMode::Kind::SAE && bc.pure_additional)
        return series_start(report, Branch::Additional, problem.grid.r_min, 0.0, c);
    return series_start(report, Branch::Standard, problem.grid.r_min,
                        bc.kind == BoundaryMode::Kind::SAE ? bc.tau : 0.0, c);
}

StartData decaying_start(const Shooter& shooter, double energy)
{
    const double kappa = std::sqrt(std::max(0.0, 2.0 * (shooter.veff(shooter.size() - 1) - energy)));
    return {1.0, -kappa};
}

/// Lower bound on the spectrum: V_eff + 1/(8 r^2) is bounded below by its
/// grid minimum and -u''/2 - u/(8 r^2) is non-negative on the standard branch.
double spectral_floor(const Shooter& shooter)
{
    double floor = std::numeric_limits<double>::infinity();
    // Numerov loses the sign of the solution once h^2 q / 12 reaches 1, so
    // energies that deep cannot be node-counted on this grid.
    const double h = shooter.grid().step();
    const double q_limit = 0.9 * 12.0 / (h * h);
    double stable = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shooter.size(); ++i) {
        const double r = shooter.grid()[i];
        floor = std::min(floor, shooter.veff(i) + 1.0 / (8.0 * r * r));
        const double q0 = shooter.q(i, 0.0);
        stable = std::max(stable, (q0 - q_limit) / (q0 - shooter.q(i, 1.0)));
    }
    return std::max(floor, stable);
}

class LevelFinder {
public:
    LevelFinder(const RadialProblem& problem)
        : problem_(problem), report_(problem_report(problem)), shooter_(problem),
          start_(origin_start(problem, report_))
    {
    }

    Level solve(int n_r)
    {
        if (n_r < 0) throw DomainError("n_r must be >= 0");
        auto [lo, hi] = bracket(n_r);
        const double tol = problem_.settings.energy_tolerance;
        const auto width_ok = [&](double a, double b) {
            return b - a <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
        };

        // Node-count bisection down to a loose bracket around the level.
        while (!(hi - lo <= 1e-9 * std::max(1.0, std::max(std::abs(lo), std::abs(hi))))) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (sturm(mid) >= n_r + 1 ? hi : lo) = mid;
        }

        double f_lo = mismatch(lo);
        double f_hi = mismatch(hi);
        double width = hi - lo;
        while (f_lo * f_hi > 0.0) {
            width *= 2.0;
            const double new_lo = lo - width;
            const double new_hi = hi + width;
            if (sturm(new_lo) < n_r || sturm(new_hi) > n_r + 1)
                throw ConvergenceFailure("matching condition has no sign change near the node-count bracket");
            lo = new_lo;
            hi = new_hi;
            f_lo = mismatch(lo);
            f_hi = mismatch(hi);
        }

        while (!width_ok(lo, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double f_mid = mismatch(mid);
            if (f_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((f_mid > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = f_mid;
            }
            else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        double energy = 0.5 * (lo + hi);
        if (hi > lo && f_hi != f_lo) {
            const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            if (secant >= lo && secant <= hi) energy = secant;
        }

        Level level;
        level.n_r = n_r;
        level.energy = energy;
        level.u = matched_wavefunction(energy);
        level.nodes = count_nodes(level.u);
        if (level.nodes != n_r) {
            std::ostringstream msg;
            msg << "level n_r=" << n_r << " converged to a state with " << level.nodes << " nodes";
            throw ConvergenceFailure(msg.str());
        }
        return level;
    }

private:
    void tick()
    {
        if (++iterations_ > problem_.settings.max_iterations) {
            std::ostringstream msg;
            msg << "eigenvalue search exceeded " << problem_.settings.max_iterations << " iterations";
            throw ConvergenceFailure(msg.str());
        }
    }

    int sturm(double energy)
    {
        tick();
        return shooter_.integrate(energy, start_, IntegrationDirection::Outward, shooter_.size() - 1).nodes;
    }

    std::pair<double, double> bracket(int n_r)
    {
        double lo;
        double hi;
        if (problem_.settings.energy_window) {
            std::tie(lo, hi) = *problem_.settings.energy_window;
        }
        else {
            lo = spectral_floor(shooter_);
            const double v_inf = problem_.potential.limit_at_infinity();
            hi = std::min(shooter_.veff(shooter_.size() - 1), v_inf);
        }
        if (!(hi > lo)) throw NoBoundState("empty energy window: no bound states");

        // Boundary data mixing in the additional branch can bind below the floor.
        for (int k = 0; sturm(lo) > n_r; ++k) {
            if (k >= 60 || problem_.settings.energy_window)
                throw NoBoundState("could not find an energy below the requested level");
            lo -= std::abs(lo) + 1.0;
        }
        const int above = sturm(hi);
        if (above < n_r + 1) {
            std::ostringstream msg;
            msg << "no bound state with n_r=" << n_r << ": only " << above << " level(s) below E=" << hi;
            throw NoBoundState(msg.str());
        }
        return {lo, hi};
    }

    std::size_t matching_index(double energy) const
    {
        const std::size_t n = shooter_.size();
        std::size_t m = n;
        for (std::size_t i = n; i-- > 0;) {
            if (shooter_.veff(i) < energy) {
                m = i;
                break;
            }
        }
        if (m == n) {
            m = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (shooter_.veff(i) < shooter_.veff(m)) m = i;
        }
        return std::clamp<std::size_t>(m, 1, n - 3);
    }

    /// Normalized discrete Wronskian of the outward and inward solutions; its
    /// sign does not depend on the matching node.
    double mismatch(double energy)
    {
        tick();
        const std::size_t m = matching_index(energy);
        const auto out = shooter_.integrate(energy, start_, IntegrationDirection::Outward, m + 1);
        const auto in = shooter_.integrate(energy, decaying_start(shooter_, energy), IntegrationDirection::Inward, m);
        const double wm = shooter_.weight(m, energy);
        const double wp = shooter_.weight(m + 1, energy);
        const double yo0 = wm * out.w[m], yo1 = wp * out.w[m + 1];
        const double yi0 = wm * in.w[m], yi1 = wp * in.w[m + 1];
        const double scale = (std::abs(yo0) + std::abs(yo1)) * (std::abs(yi0) + std::abs(yi1));
        if (scale == 0.0) return 0.0;
        return (yo0 * yi1 - yo1 * yi0) / scale;
    }

    std::vector<double> matched_wavefunction(double energy)
    {
        const std::size_t n = shooter_.size();
        std::size_t m = matching_index(energy);
        const auto out = shooter_.integrate(energy, start_, IntegrationDirection::Outward, m + 1);
        const auto in = shooter_.integrate(energy, decaying_start(shooter_, energy), IntegrationDirection::Inward, m);
        // Join at whichever of m, m+1 has the larger inward amplitude.
        const std::size_t join = std::abs(in.w[m + 1]) > std::abs(in.w[m]) ? m + 1 : m;
        if (in.w[join] == 0.0) throw ConvergenceFailure("inward solution vanishes at the matching point");
        const double ratio = out.w[join] / in.w[join];

        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = i <= join ? out.w[i] : ratio * in.w[i];
            u[i] = shooter_.to_u(i, w);
        }
        return normalize(u, problem_.grid);
    }

    const RadialProblem& problem_;
    IndicialReport report_;
    Shooter shooter_;
    StartData start_;
    int iterations_ = 0;
};

} // namespace

Trajectory numerov_integrate(const RadialProblem& problem, double energy, StartData start,
                             IntegrationDirection direction)
{
    const Shooter shooter(problem);
    const std::size_t stop = direction == IntegrationDirection::Outward ? shooter.size() - 1 : 0;
    auto run = shooter.integrate(energy, start, direction, stop);
    Trajectory out;
    out.log_scale = run.log_scale;
    out.nodes = run.nodes;
    out.u.resize(run.w.size());
    for (std::size_t i = 0; i < run.w.size(); ++i) out.u[i] = shooter.to_u(i, run.w[i]);
    return out;
}

Level eigen_solve(const RadialProblem& problem, int n_r)
{
    LevelFinder finder(problem);
    return finder.solve(n_r);
}

Spectrum solve_spectrum(const RadialProblem& problem, int count)
{
    if (count < 1) throw DomainError("at least one level must be requested");
    Spectrum spectrum;
    spectrum.grid = problem.grid;
    spectrum.levels.resize(static_cast<std::size_t>(count));
    parallel_for(spectrum.levels.size(), [&](std::size_t i) {
        spectrum.levels[i] = eigen_solve(problem, static_cast<int>(i));
    });
    for (std::size_t i = 1; i < spectrum.levels.size(); ++i) {
        if (!(spectrum.levels[i].energy > spectrum.levels[i - 1].energy))
            throw ConvergenceFailure("computed energies are not strictly increasing");
    }
    return spectrum;
}

double fd_step(const GridSpec& grid)
{
    grid.validate();
    return grid.r_max / (grid.n - 1);
}

std::vector<double> fd_oracle(const RadialProblem& problem, int k)
{
    problem.validate();
    if (problem.boundary.kind != BoundaryMode::Kind::Dirichlet)
        throw DomainError("finite-difference oracle supports Dirichlet boundaries only");
    if (k < 1) throw DomainError("fd_oracle needs k >= 1");

    const auto model = build_effective_model(problem.dimension, problem.l);
    const double h = fd_step(problem.grid);
    const std::size_t m = static_cast<std::size_t>(problem.grid.n) - 2;
    if (static_cast<std::size_t>(k) > m) throw DomainError("fd_oracle: more eigenvalues requested than unknowns");

    std::vector<double> diag(m);
    const double off = -0.5 / (h * h);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = h * static_cast<double>(i + 1);
        diag[i] = 1.0 / (h * h) + effective_potential(model, problem.potential, r);
    }

    // Sturm count: eigenvalues below x equal negative pivots of LDL^T of T - x.
    const double off2 = off * off;
    auto below = [&](double x) {
        std::size_t count = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            d = diag[i] - x - (i > 0 ? off2 / d : 0.0);
            if (d == 0.0) d = -std::numeric_limits<double>::min();
            if (d < 0.0) ++count;
        }
        return count;
    };

    double gmin = std::numeric_limits<double>::infinity();
    double gmax = -gmin;
    for (double d : diag) {
        gmin = std::min(gmin, d - 2.0 * std::abs(off));
        gmax = std::max(gmax, d + 2.0 * std::abs(off));
    }

    std::vector<double> values(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < values.size(); ++j) {
        double lo = gmin;
        double hi = gmax;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (below(mid) > j ? hi : lo) = mid;
        }
        values[j] = 0.5 * (lo + hi);
    }
    return values;
}

std::vector<double> normalize(std::span<const double> u, const GridSpec& grid)
{
    const RadialGrid radial(grid);
    if (u.size() != radial.size()) throw DomainError("normalize: sample count does not match grid");
    std::vector<double> sq(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
    const double norm2 = radial.integrate(sq);
    if (!(norm2 >= 1e-300)) throw ZeroNorm("wavefunction has zero norm");

    double scale = 1.0 / std::sqrt(norm2);
    const auto first = std::find_if(u.begin() + std::min<std::size_t>(1, u.size() - 1), u.end(),
                                    [](double v) { return v != 0.0; });
    if (first != u.end() && *first < 0.0) scale = -scale;
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = scale * u[i];
    return out;
}

int count_nodes(std::span<const double> values)
{
    int nodes = 0;
    int last = 0;
    for (double v : values) {
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++nodes;
        last = s;
    }
    return nodes;
}

namespace {

/// r beyond the outer turning point where the WKB decay integral reaches `target`.
double wkb_decay_radius(const EffectiveModel& model, const Potential& potential, double energy, double r_min,
                        double target)
{
    auto kappa = [&](double r) {
        return std::sqrt(std::max(0.0, 2.0 * (effective_potential(model, potential, r) - energy)));
    };
    constexpr double kFar = 1e8;
    double turning = r_min;
    for (double r = r_min; r < kFar; r *= 1.01)
        if (effective_potential(model, potential, r) < energy) turning = r;

    double r = turning;
    double integral = 0.0;
    double k_prev = kappa(r);
    while (integral < target && r < kFar) {
        const double dr = 0.01 * r;
        const double k_next = kappa(r + dr);
        integral += 0.5 * dr * (k_prev + k_next);
        k_prev = k_next;
        r += dr;
    }
    return r;
}

GridSpec sized_grid(const EffectiveModel& model, const Potential& potential, double r_min, double r_max)
{
    constexpr double kLogStep = 3e-3;
    GridSpec g;
    g.spacing = Spacing::Logarithmic;
    g.r_min = r_min;
    g.r_max = r_max;
    const double span = std::log(r_max / r_min);
    // Keep h^2 q / 12 small at the outer edge, where q = 2 r^2 (V_eff - E) is largest.
    double q_edge = 0.0;
    for (double r : {r_max, 0.5 * r_max}) {
        const double v = std::abs(effective_potential(model, potential, r));
        q_edge = std::max(q_edge, 4.0 * r * r * v);
    }
    double h = kLogStep;
    if (q_edge > 0.0) h = std::min(h, std::sqrt(0.6 / q_edge));
    g.n = std::max(2001, static_cast<int>(std::ceil(span / h)) + 1);
    return g;
}

} // namespace

GridSpec suggest_grid(int dimension, int l, const Potential& potential, int levels, BoundaryMode boundary)
{
    if (levels < 1) throw DomainError("suggest_grid needs levels >= 1");
    const auto model = build_effective_model(dimension, l);
    const double a = potential.length_scale();
    const double r_min = 1e-5 * a;
    const double N = levels + std::max(0.0, model.L) + 1.0;

    constexpr int kTrialPoints = 20001;
    const double v_inf = potential.limit_at_infinity();
    double r_max = a * 10.0 * N;
    // A confining potential grows fast; keep the trial grid stable without clipping it.
    if (v_inf > 0.0)
        while (r_max > a && sized_grid(model, potential, r_min, r_max).n > kTrialPoints) r_max *= 0.8;
    double energy = std::numeric_limits<double>::quiet_NaN();
    for (int attempt = 0; attempt < 16; ++attempt) {
        RadialProblem trial;
        trial.dimension = dimension;
        trial.l = l;
        trial.potential = potential;
        trial.boundary = boundary;
        trial.grid = sized_grid(model, potential, r_min, r_max);
        trial.grid.n = std::min(trial.grid.n, kTrialPoints);
        try {
            energy = eigen_solve(trial, levels - 1).energy;
        }
        catch (const NoBoundState&) {
            if (v_inf > -std::numeric_limits<double>::infinity()) {
                r_max *= 2.0;
                continue;
            }
            throw;
        }
        const double needed = wkb_decay_radius(model, potential, energy, r_min, 30.0);
        if (needed <= r_max) {
            r_max = needed;
            break;
        }
        r_max = needed;
    }
    return sized_grid(model, potential, r_min, r_max);
}

} // namespace hyperradial
