#include "hyperradial/json_io.hpp"

#include "hyperradial/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hyperradial {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) throw SchemaError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.contains(key)) throw SchemaError("unknown key '" + key + "' in " + where);
    }
}

const Json& require(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key)) throw SchemaError("missing key '" + key + "' in " + where);
    return j.at(key);
}

double number(const Json& j, const std::string& what)
{
    if (!j.is_number()) throw SchemaError(what + " must be a number");
    return j.get<double>();
}

int integer(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) throw SchemaError(what + " must be an integer");
    return j.get<int>();
}

std::string string_value(const Json& j, const std::string& what)
{
    if (!j.is_string()) throw SchemaError(what + " must be a string");
    return j.get<std::string>();
}

PotentialTerm term_from_json(const Json& t)
{
    const std::string family = string_value(require(t, "family", "potential term"), "family");
    if (family == "coulomb") {
        reject_unknown(t, {"family", "Z"}, "coulomb term");
        return Coulomb{number(require(t, "Z", "coulomb term"), "Z")};
    }
    if (family == "harmonic") {
        reject_unknown(t, {"family", "omega"}, "harmonic term");
        return Harmonic{number(require(t, "omega", "harmonic term"), "omega")};
    }
    if (family == "power_law") {
        reject_unknown(t, {"family", "c", "p"}, "power_law term");
        return PowerLaw{number(require(t, "c", "power_law term"), "c"), number(require(t, "p", "power_law term"), "p")};
    }
    if (family == "inverse_square") {
        reject_unknown(t, {"family", "g"}, "inverse_square term");
        return InverseSquare{number(require(t, "g", "inverse_square term"), "g")};
    }
    throw SchemaError("unknown potential family '" + family + "'");
}

void write_value(std::ostream& os, const Json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(key).dump() << ": ";
                write_value(os, value, indent + 2);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) os << ",\n";
                os << pad;
                write_value(os, j[i], indent + 2);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isfinite(v)) os << format_double(v);
            else os << '"' << (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")) << '"';
            return;
        }
        default: os << j.dump(); return;
    }
}

} // namespace

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep the JSON number a float so readers do not narrow it to an integer.
    if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

Potential potential_from_json(const Json& j)
{
    reject_unknown(j, {"terms"}, "potential");
    const auto& terms = require(j, "terms", "potential");
    if (!terms.is_array() || terms.empty()) throw SchemaError("potential.terms must be a non-empty array");
    Potential p;
    try {
        for (const auto& t : terms) p.add(term_from_json(t));
    }
    catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
    return p;
}

Json potential_to_json(const Potential& potential)
{
    Json terms = Json::array();
    for (const auto& t : potential.terms()) {
        Json o;
        if (auto c = std::get_if<Coulomb>(&t)) {
            o["family"] = "coulomb";
            o["Z"] = c->Z;
        }
        else if (auto h = std::get_if<Harmonic>(&t)) {
            o["family"] = "harmonic";
            o["omega"] = h->omega;
        }
        else if (auto pw = std::get_if<PowerLaw>(&t)) {
            o["family"] = "power_law";
            o["c"] = pw->c;
            o["p"] = pw->p;
        }
        else if (auto g = std::get_if<InverseSquare>(&t)) {
            o["family"] = "inverse_square";
            o["g"] = g->g;
        }
        terms.push_back(o);
    }
    return Json{{"terms", terms}};
}

ProblemFile problem_from_json(const Json& j)
{
    reject_unknown(j, {"dimension", "l", "potential", "grid", "boundary", "solve"}, "problem file");
    ProblemFile f;
    auto& p = f.problem;
    p.dimension = integer(require(j, "dimension", "problem file"), "dimension");
    p.l = integer(require(j, "l", "problem file"), "l");
    if (p.dimension < 2) throw SchemaError("dimension must be >= 2");
    if (p.l < 0) throw SchemaError("l must be >= 0");
    p.potential = potential_from_json(require(j, "potential", "problem file"));

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown(g, {"r_min", "r_max", "n", "spacing"}, "grid");
        if (g.contains("r_min")) f.r_min = number(g.at("r_min"), "grid.r_min");
        if (g.contains("r_max")) f.r_max = number(g.at("r_max"), "grid.r_max");
        if (g.contains("n")) f.n = integer(g.at("n"), "grid.n");
        if (g.contains("spacing")) f.spacing = spacing_from_string(string_value(g.at("spacing"), "grid.spacing"));
        if (f.r_min && !(*f.r_min > 0.0)) throw SchemaError("grid.r_min must be > 0");
        if (f.r_min && f.r_max && !(*f.r_max > *f.r_min)) throw SchemaError("grid.r_max must exceed grid.r_min");
        if (f.n && *f.n < 16) throw SchemaError("grid.n must be >= 16");
    }

    if (j.contains("boundary")) {
        const auto& b = j.at("boundary");
        reject_unknown(b, {"mode", "tau"}, "boundary");
        const std::string mode = string_value(require(b, "mode", "boundary"), "boundary.mode");
        if (mode == "dirichlet") {
            if (b.contains("tau") && number(b.at("tau"), "boundary.tau") != 0.0)
                throw SchemaError("boundary.tau is only meaningful for mode \"sae\"");
            p.boundary = BoundaryMode::dirichlet();
        }
        else if (mode == "sae") {
            const auto& tau = require(b, "tau", "boundary");
            if (tau.is_string()) {
                const auto s = tau.get<std::string>();
                if (s != "inf" && s != "infinity") throw SchemaError("boundary.tau must be a number or \"inf\"");
                p.boundary = BoundaryMode::additional();
            }
            else {
                const double t = number(tau, "boundary.tau");
                if (!std::isfinite(t)) throw SchemaError("boundary.tau must be finite");
                p.boundary = BoundaryMode::sae(t);
            }
        }
        else {
            throw SchemaError("boundary.mode must be \"dirichlet\" or \"sae\"");
        }
    }

    if (j.contains("solve")) {
        const auto& s = j.at("solve");
        reject_unknown(s, {"levels", "energy_window"}, "solve");
        if (s.contains("levels")) {
            f.levels = integer(s.at("levels"), "solve.levels");
            if (f.levels < 1) throw SchemaError("solve.levels must be >= 1");
        }
        if (s.contains("energy_window")) {
            const auto& w = s.at("energy_window");
            if (!w.is_array() || w.size() != 2) throw SchemaError("solve.energy_window must be [lo, hi]");
            const double lo = number(w[0], "energy_window[0]");
            const double hi = number(w[1], "energy_window[1]");
            if (!(lo < hi)) throw SchemaError("solve.energy_window must satisfy lo < hi");
            p.settings.energy_window = std::pair{lo, hi};
        }
    }
    return f;
}

ProblemFile load_problem(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open problem file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return problem_from_json(j);
}

GridSpec resolve_grid(const ProblemFile& file, int levels)
{
    const auto& p = file.problem;
    GridSpec g;
    if (!(file.r_min && file.r_max && file.n)) g = suggest_grid(p.dimension, p.l, p.potential, levels, p.boundary);
    if (file.r_min) g.r_min = *file.r_min;
    if (file.r_max) g.r_max = *file.r_max;
    if (file.n) g.n = *file.n;
    if (file.spacing) g.spacing = *file.spacing;
    try {
        g.validate();
    }
    catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
    return g;
}

Json to_json(const PotentialClass& cls)
{
    Json j;
    j["kind"] = to_string(cls.kind);
    j["V0"] = cls.V0;
    j["origin_limit"] = cls.origin_limit;
    return j;
}

Json to_json(const IndicialReport& report)
{
    Json j;
    j["L"] = report.L;
    j["P"] = report.P ? Json(*report.P) : Json(nullptr);
    j["regular_exponents"] = report.regular_exponents
                                 ? Json::array({(*report.regular_exponents)[0], (*report.regular_exponents)[1]})
                                 : Json(nullptr);
    j["soft_exponents"] = report.soft_exponents
                              ? Json::array({(*report.soft_exponents)[0], (*report.soft_exponents)[1]})
                              : Json(nullptr);
    j["extra_solution_allowed"] = report.extra_solution_allowed;
    j["oscillatory"] = report.oscillatory;
    j["fall_to_center"] = report.fall_to_center;
    return j;
}

Json to_json(const AdmissibilityBound& bound)
{
    Json j;
    j["criterion"] = to_string(bound.criterion);
    j["convention"] = bound.convention;
    j["bound"] = std::string("s ") + (bound.direction == Direction::Greater ? ">" : "<") + " " +
                 format_double(bound.value);
    j["direction"] = bound.direction == Direction::Greater ? "greater" : "less";
    j["value"] = bound.value;
    j["u_exponent_at_bound"] = bound.u_exponent_at_bound;
    j["u_origin_verdict"] = to_string(bound.u_origin_verdict);
    return j;
}

Json to_json(const GridSpec& grid)
{
    Json j;
    j["r_min"] = grid.r_min;
    j["r_max"] = grid.r_max;
    j["n"] = grid.n;
    j["spacing"] = to_string(grid.spacing);
    return j;
}

Json to_json(const BoundaryMode& boundary)
{
    Json j;
    j["mode"] = boundary.kind == BoundaryMode::Kind::Dirichlet ? "dirichlet" : "sae";
    if (boundary.kind == BoundaryMode::Kind::SAE)
        j["tau"] = boundary.pure_additional ? Json("inf") : Json(boundary.tau);
    return j;
}

Json to_json(const DeltaCheckResult& result)
{
    Json j;
    j["dimension"] = result.dimension;
    j["test_fn"] = to_string(result.test_fn);
    j["solid_angle"] = solid_angle(result.dimension);
    j["quadrature_value"] = result.quadrature_value;
    j["predicted"] = result.predicted;
    j["rel_error"] = result.rel_error;
    j["abs_error"] = result.abs_error;
    j["n_points"] = result.n_points;
    return j;
}

Json to_json(const DegeneracyReport& report)
{
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        Json o;
        o["delta_dimension"] = r.delta_dimension;
        o["delta_l"] = r.delta_l;
        o["level"] = r.level;
        o["E_left"] = r.energy_base;
        o["E_right"] = r.energy_partner;
        o["diff"] = r.diff;
        rows.push_back(o);
    }
    Json j;
    j["rows"] = rows;
    j["max_discrepancy"] = report.max_discrepancy;
    return j;
}

void write_json(std::ostream& os, const Json& j)
{
    write_value(os, j, 0);
    os << "\n";
}

} // namespace hyperradial
