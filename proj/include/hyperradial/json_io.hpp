#pragma once

#include "hyperradial/asymptotics.hpp"
#include "hyperradial/diagnostics.hpp"
#include "hyperradial/potentials.hpp"
#include "hyperradial/reduction.hpp"
#include "hyperradial/solver.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace hyperradial {

using Json = nlohmann::ordered_json;

/// Problem file as read from disk. Grid fields left out are filled in by
/// resolve_grid from suggest_grid.
struct ProblemFile {
    RadialProblem problem;
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::optional<int> n;
    std::optional<Spacing> spacing;
    int levels = 1;
};

/// Parses {"terms":[{"family":"coulomb","Z":1.0}, ...]}. Throws SchemaError.
[[nodiscard]] Potential potential_from_json(const Json& j);
[[nodiscard]] Json potential_to_json(const Potential& potential);

/// Validates and parses a problem document; unknown keys are rejected.
[[nodiscard]] ProblemFile problem_from_json(const Json& j);
[[nodiscard]] ProblemFile load_problem(const std::string& path);

/// Completes the grid of `file` for the first `levels` states.
[[nodiscard]] GridSpec resolve_grid(const ProblemFile& file, int levels);

[[nodiscard]] Json to_json(const PotentialClass& cls);
[[nodiscard]] Json to_json(const IndicialReport& report);
[[nodiscard]] Json to_json(const AdmissibilityBound& bound);
[[nodiscard]] Json to_json(const GridSpec& grid);
[[nodiscard]] Json to_json(const BoundaryMode& boundary);
[[nodiscard]] Json to_json(const DeltaCheckResult& result);
[[nodiscard]] Json to_json(const DegeneracyReport& report);

/// Writes JSON with insertion-ordered keys, two-space indentation and every
/// floating-point number printed with 17 significant digits. Non-finite
/// numbers are written as the strings "inf", "-inf" and "nan".
void write_json(std::ostream& os, const Json& j);

/// %.17g formatting shared by the JSON and CSV writers.
[[nodiscard]] std::string format_double(double v);

} // namespace hyperradial
