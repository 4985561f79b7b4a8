#include "hyperradial/cli.hpp"

#include "hyperradial/asymptotics.hpp"
#include "hyperradial/diagnostics.hpp"
#include "hyperradial/errors.hpp"
#include "hyperradial/json_io.hpp"
#include "hyperradial/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace hyperradial::cli {

namespace {

constexpr std::array kCriteria{Criterion::DifferentialProbability, Criterion::SphereProbability,
                               Criterion::FiniteNorm, Criterion::PauliFlux};

int cmd_classify(const std::string& path, std::ostream& out)
{
    const auto file = load_problem(path);
    const auto& p = file.problem;
    const auto cls = classify(p.potential);
    const auto report = indicial_report(p.dimension, p.l, cls);

    Json j;
    j["dimension"] = p.dimension;
    j["l"] = p.l;
    j["potential"] = potential_to_json(p.potential);
    j["class"] = to_json(cls);
    j["indicial"] = to_json(report);
    j["extra_solution_threshold"] = extra_solution_threshold(p.dimension, p.l);
    j["two_V0"] = 2.0 * cls.V0;
    Json bounds = Json::array();
    for (auto c : kCriteria) bounds.push_back(to_json(admissibility_bound(c, p.dimension)));
    j["admissibility"] = bounds;
    if (report.fall_to_center)
        j["note"] = "fall to the center: no lower-bounded spectrum, solving is not attempted";
    write_json(out, j);
    return kSuccess;
}

struct SolveOptions {
    std::string file;
    int levels = 0;
    std::string dump_dir;
    bool verify = false;
    std::string format = "json";
};

void dump_wavefunctions(const Spectrum& spectrum, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    const RadialGrid grid(spectrum.grid);
    for (const auto& level : spectrum.levels) {
        const auto path = std::filesystem::path(dir) / ("level_" + std::to_string(level.n_r) + ".csv");
        std::ofstream os(path);
        if (!os) throw SchemaError("cannot write " + path.string());
        os << "r,u\n";
        for (std::size_t i = 0; i < grid.size(); ++i) os << format_double(grid[i]) << ',' << format_double(level.u[i]) << '\n';
    }
}

int cmd_solve(const SolveOptions& opt, std::ostream& out)
{
    auto file = load_problem(opt.file);
    const int levels = opt.levels > 0 ? opt.levels : file.levels;
    auto problem = file.problem;
    problem.grid = resolve_grid(file, levels);
    const auto spectrum = solve_spectrum(problem, levels);
    if (!opt.dump_dir.empty()) dump_wavefunctions(spectrum, opt.dump_dir);

    Json verify;
    if (opt.verify) {
        if (problem.boundary.kind != BoundaryMode::Kind::Dirichlet) {
            verify["skipped"] = "finite-difference cross-check is Dirichlet-only";
        }
        else {
            RadialProblem fd = problem;
            fd.grid.n = std::max(problem.grid.n, 20001);
            const auto fd_values = fd_oracle(fd, levels);
            const double h = fd_step(fd.grid);
            double max_dev = 0.0;
            bool passed = true;
            Json arr = Json::array();
            for (std::size_t i = 0; i < fd_values.size(); ++i) {
                const double e = spectrum.levels[i].energy;
                const double dev = std::abs(fd_values[i] - e);
                max_dev = std::max(max_dev, dev);
                passed = passed && dev <= 5.0 * h * h * std::abs(e) + 1e-6;
                arr.push_back(fd_values[i]);
            }
            verify["fd_step"] = h;
            verify["fd_energies"] = arr;
            verify["max_deviation"] = max_dev;
            verify["passed"] = passed;
        }
    }

    if (opt.format == "csv") {
        out << "n_r,energy,nodes\n";
        for (const auto& lv : spectrum.levels) out << lv.n_r << ',' << format_double(lv.energy) << ',' << lv.nodes << '\n';
        if (opt.verify && verify.contains("max_deviation"))
            out << "# fd max_deviation=" << format_double(verify["max_deviation"].get<double>()) << '\n';
        return kSuccess;
    }

    Json j;
    j["dimension"] = problem.dimension;
    j["l"] = problem.l;
    j["L"] = grand_orbital(problem.dimension, problem.l);
    j["potential"] = potential_to_json(problem.potential);
    j["boundary"] = to_json(problem.boundary);
    j["grid"] = to_json(problem.grid);
    Json lv = Json::array();
    for (const auto& level : spectrum.levels) {
        Json o;
        o["n_r"] = level.n_r;
        o["energy"] = level.energy;
        o["nodes"] = level.nodes;
        lv.push_back(o);
    }
    j["levels"] = lv;
    if (opt.verify) j["verify"] = verify;
    write_json(out, j);
    return kSuccess;
}

std::pair<int, int> parse_partner(const std::string& text)
{
    static const std::regex pattern(R"(^\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw SchemaError("--partner expects dD,dl (e.g. -4,2)");
    const std::pair shift{std::stoi(m[1]), std::stoi(m[2])};
    if (shift.first + 2 * shift.second != 0)
        throw SchemaError("--partner " + text + " violates dD + 2 dl = 0");
    return shift;
}

int cmd_degeneracy(const std::string& path, const std::vector<std::string>& partners, int levels_opt,
                   const std::string& format, std::ostream& out, std::ostream& err)
{
    std::vector<std::pair<int, int>> shifts;
    for (const auto& p : partners) shifts.push_back(parse_partner(p));
    auto file = load_problem(path);
    const int levels = levels_opt > 0 ? levels_opt : file.levels;
    auto base = file.problem;
    for (auto [dd, dl] : shifts) {
        if (base.dimension + dd < 2 || base.l + dl < 0)
            throw SchemaError("partner problem has D < 2 or l < 0");
    }
    base.grid = resolve_grid(file, levels);
    const auto report = degeneracy_check(base, shifts, levels);

    if (format == "json") {
        write_json(out, to_json(report));
        return kSuccess;
    }
    out << "level,E_left,E_right,diff\n";
    for (const auto& r : report.rows)
        out << r.level << ',' << format_double(r.energy_base) << ',' << format_double(r.energy_partner) << ','
            << format_double(r.diff) << '\n';
    err << "max_discrepancy=" << format_double(report.max_discrepancy) << '\n';
    return kSuccess;
}

int cmd_delta_check(int dimension, const std::string& test_fn, int n, double r_max, std::ostream& out)
{
    if (dimension < 3) throw SchemaError("--dimension must be >= 3 for the delta identity");
    GridSpec grid;
    grid.spacing = Spacing::Uniform;
    grid.r_min = 1e-9;
    grid.r_max = r_max;
    grid.n = n;
    try {
        grid.validate();
    }
    catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
    write_json(out, to_json(delta_identity_check(dimension, test_function_from_string(test_fn), grid)));
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bound states and origin behavior of the D-dimensional hyperradial Schrodinger equation",
                 "hyperradial"};
    app.require_subcommand(1);

    std::string classify_file;
    auto* classify_cmd = app.add_subcommand("classify", "Classify the potential and report near-origin behavior");
    classify_cmd->add_option("file", classify_file, "Problem JSON file")->required();

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Compute bound-state energies");
    solve_cmd->add_option("file", solve.file, "Problem JSON file")->required();
    solve_cmd->add_option("--levels", solve.levels, "Number of levels (overrides solve.levels)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--dump-wavefunctions", solve.dump_dir, "Directory for level_<n>.csv files (r,u)");
    solve_cmd->add_flag("--verify", solve.verify, "Cross-check against the finite-difference oracle");
    solve_cmd->add_option("--format", solve.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    std::string degeneracy_file;
    std::vector<std::string> partners;
    int degeneracy_levels = 0;
    std::string degeneracy_format = "csv";
    auto* degeneracy_cmd = app.add_subcommand("degeneracy", "Compare spectra sharing D + 2l");
    degeneracy_cmd->add_option("file", degeneracy_file, "Problem JSON file")->required();
    degeneracy_cmd->add_option("--partner", partners, "Shift dD,dl with dD + 2 dl = 0 (repeatable)")
        ->required()
        ->allow_extra_args(false);
    degeneracy_cmd->add_option("--levels", degeneracy_levels, "Number of levels")->check(CLI::PositiveNumber);
    degeneracy_cmd->add_option("--format", degeneracy_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    int delta_dimension = 0;
    std::string test_fn = "gaussian";
    int delta_n = 4001;
    double delta_r_max = 12.0;
    auto* delta_cmd = app.add_subcommand("delta-check", "Quadrature check of the D-dimensional delta identity");
    delta_cmd->add_option("--dimension", delta_dimension, "Dimension D >= 3")->required();
    delta_cmd->add_option("--test-fn", test_fn, "gaussian or compact_bump");
    delta_cmd->add_option("--n", delta_n, "Initial quadrature points");
    delta_cmd->add_option("--r-max", delta_r_max, "Outer quadrature radius");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*classify_cmd) return cmd_classify(classify_file, out);
        if (*solve_cmd) return cmd_solve(solve, out);
        if (*degeneracy_cmd) return cmd_degeneracy(degeneracy_file, partners, degeneracy_levels, degeneracy_format, out, err);
        if (*delta_cmd) return cmd_delta_check(delta_dimension, test_fn, delta_n, delta_r_max, out);
    }
    catch (const IndeterminateClass& e) {
        err << "indeterminate: " << e.what() << '\n';
        return kIndeterminate;
    }
    catch (const NoBoundState& e) {
        err << "no bound state: " << e.what() << '\n';
        return kNoBoundState;
    }
    catch (const ConvergenceFailure& e) {
        err << "convergence failure: " << e.what() << '\n';
        return kConvergenceFailure;
    }
    catch (const ZeroNorm& e) {
        err << "convergence failure: " << e.what() << '\n';
        return kConvergenceFailure;
    }
    catch (const QuadratureFailure& e) {
        err << "convergence failure: " << e.what() << '\n';
        return kConvergenceFailure;
    }
    catch (const Error& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    }
    catch (const std::filesystem::filesystem_error& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace hyperradial::cli
