#include "lagmin/serialization.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "lagmin/error.hpp"

namespace lagmin {

using nlohmann::json;

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const std::string& text)
{
    if (text == "inf")
        return HUGE_VAL;
    if (text == "-inf")
        return -HUGE_VAL;
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || errno == ERANGE)
        fail(Errc::schema, "not a decimal number: '" + text + "'");
    return v;
}

namespace {

json real(double x) { return format_real(x); }

json cplx(Complex z) { return json::array({real(z.real()), real(z.imag())}); }

[[noreturn]] void schema(const std::string& path, const std::string& what)
{
    fail(Errc::schema, path + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        schema(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema(path, "missing member '" + key + "'");
    return *it;
}

double get_real(const json& v, const std::string& path)
{
    if (v.is_string())
        try {
            return parse_real(v.get<std::string>());
        } catch (const Error&) {
            schema(path, "not a decimal number");
        }
    if (v.is_number())
        return v.get<double>();
    schema(path, "expected a number");
}

int get_int(const json& v, const std::string& path)
{
    if (v.is_number_integer())
        return v.get<int>();
    const double d = get_real(v, path);
    if (d != std::floor(d) || std::abs(d) > 1e9)
        schema(path, "expected an integer");
    return static_cast<int>(d);
}

std::string get_string(const json& v, const std::string& path)
{
    if (!v.is_string())
        schema(path, "expected a string");
    return v.get<std::string>();
}

Complex get_complex(const json& v, const std::string& path)
{
    if (!v.is_array() || v.size() != 2)
        schema(path, "expected [re, im]");
    return {get_real(v[0], path + "[0]"), get_real(v[1], path + "[1]")};
}

json profile_value(const ProfileRecord& rec)
{
    json grid = json::array();
    for (const auto& row : rec.grid)
        grid.push_back(json::array({real(row[0]), real(row[1]), real(row[2])}));
    json deficit = json::array();
    for (double d : rec.deficit)
        deficit.push_back(real(d));
    return json{{"family", std::string(to_string(rec.family.kind))},
                {"n", rec.family.n},
                {"rho", real(rec.family.rho)},
                {"tol", real(rec.tol)},
                {"s_max", real(rec.s_max)},
                {"energy_constant", real(rec.energy_constant)},
                {"energy_residual", real(rec.energy_residual)},
                {"equilibrium", rec.equilibrium},
                {"grid", std::move(grid)},
                {"deficit", std::move(deficit)}};
}

ProfileRecord parse_profile_value(const json& j, const std::string& path)
{
    ProfileRecord rec;
    const auto kind = parse_profile_kind(get_string(member(j, "family", path), path + ".family"));
    if (!kind)
        schema(path + ".family", "unknown profile family");
    rec.family = {*kind, get_int(member(j, "n", path), path + ".n"),
                  get_real(member(j, "rho", path), path + ".rho")};
    rec.tol = get_real(member(j, "tol", path), path + ".tol");
    rec.s_max = get_real(member(j, "s_max", path), path + ".s_max");
    rec.energy_constant = get_real(member(j, "energy_constant", path), path + ".energy_constant");
    if (j.contains("energy_residual"))
        rec.energy_residual = get_real(j["energy_residual"], path + ".energy_residual");
    if (j.contains("equilibrium")) {
        if (!j["equilibrium"].is_boolean())
            schema(path + ".equilibrium", "expected a boolean");
        rec.equilibrium = j["equilibrium"].get<bool>();
    }
    const json& grid = member(j, "grid", path);
    if (!grid.is_array())
        schema(path + ".grid", "expected an array");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::string p = path + ".grid[" + std::to_string(k) + "]";
        if (!grid[k].is_array() || grid[k].size() != 3)
            schema(p, "expected [s, r, rp]");
        rec.grid.push_back({get_real(grid[k][0], p), get_real(grid[k][1], p), get_real(grid[k][2], p)});
    }
    if (j.contains("deficit")) {
        const json& d = j["deficit"];
        if (!d.is_array() || d.size() != grid.size())
            schema(path + ".deficit", "expected one value per grid row");
        for (std::size_t k = 0; k < d.size(); ++k)
            rec.deficit.push_back(get_real(d[k], path + ".deficit"));
    }
    return rec;
}

json parse_document(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::schema, std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

ProfileRecord profile_record(const ProfileSolution& sol)
{
    ProfileRecord rec;
    rec.family = sol.family();
    rec.tol = sol.tol();
    rec.s_max = sol.s_max();
    rec.energy_constant = sol.energy_constant();
    rec.energy_residual = energy_residual(sol);
    rec.equilibrium = sol.is_equilibrium();
    for (std::size_t k = 0; k < sol.nodes().size(); ++k) {
        const auto v = sol.at_node(k);
        rec.grid.push_back({sol.nodes()[k].s, v.r, v.rp});
        rec.deficit.push_back(v.deficit);
    }
    return rec;
}

std::string profile_json(const ProfileRecord& rec, const std::vector<std::pair<std::string, std::string>>& extra)
{
    json j = profile_value(rec);
    for (const auto& [key, value] : extra)
        j[key] = json::parse(value);
    return j.dump(1) + "\n";
}

ProfileRecord parse_profile_json(const std::string& text)
{
    return parse_profile_value(parse_document(text), "$");
}

// ---------------------------------------------------------------------------

ImmersionRecord immersion_record(const SampledImmersion& imm,
                                 const std::vector<std::pair<std::string, double>>& header)
{
    ImmersionRecord rec;
    rec.spec = imm.evaluator.spec();
    rec.grid = imm.grid;
    if (const SeedLagrangian* seed = imm.evaluator.seed(); seed && seed->kind() != SeedKind::custom)
        rec.seed_kind = seed->kind();
    rec.spec.seed_kind = rec.seed_kind;
    rec.spec.seed = nullptr;
    rec.params = imm.params;
    rec.samples = imm.samples;
    if (imm.evaluator.profile())
        rec.profile = profile_record(*imm.evaluator.profile());
    rec.header = header;
    return rec;
}

std::string immersion_json(const ImmersionRecord& rec)
{
    json spec{{"family", std::string(to_string(rec.spec.family))},
              {"n", rec.spec.n},
              {"rho", rec.spec.rho ? real(*rec.spec.rho) : json(nullptr)},
              {"seed", rec.seed_kind ? json(std::string(to_string(*rec.seed_kind))) : json(nullptr)},
              {"c", real(rec.spec.c)},
              {"ode_tol", real(rec.spec.ode_tol)}};
    json grid{{"s_count", rec.grid.s_count}, {"m_count", rec.grid.m_count}, {"s_max", real(rec.grid.s_max)}};
    json header = json::object();
    for (const auto& [k, v] : rec.header)
        header[k] = real(v);
    json samples = json::array();
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        json row = json::array();
        for (double v : rec.params[k])
            row.push_back(real(v));
        for (Complex z : rec.samples[k])
            row.push_back(cplx(z));
        samples.push_back(std::move(row));
    }
    json j{{"spec", std::move(spec)},
           {"grid", std::move(grid)},
           {"header", std::move(header)},
           {"profile", rec.profile ? profile_value(*rec.profile) : json(nullptr)},
           {"samples", std::move(samples)}};
    return j.dump(1) + "\n";
}

ImmersionRecord parse_immersion_json(const std::string& text)
{
    const json j = parse_document(text);
    ImmersionRecord rec;
    const json& spec = member(j, "spec", "$");
    const auto family = parse_family_tag(get_string(member(spec, "family", "$.spec"), "$.spec.family"));
    if (!family)
        schema("$.spec.family", "unknown family");
    rec.spec.family = *family;
    rec.spec.n = get_int(member(spec, "n", "$.spec"), "$.spec.n");
    if (rec.spec.n < 2 || rec.spec.n > 64)
        schema("$.spec.n", "out of range");
    if (spec.contains("rho") && !spec["rho"].is_null())
        rec.spec.rho = get_real(spec["rho"], "$.spec.rho");
    if (spec.contains("seed") && !spec["seed"].is_null()) {
        rec.seed_kind = parse_seed_kind(get_string(spec["seed"], "$.spec.seed"));
        if (!rec.seed_kind)
            schema("$.spec.seed", "unknown seed");
        rec.spec.seed_kind = rec.seed_kind;
    }
    if (spec.contains("c"))
        rec.spec.c = get_real(spec["c"], "$.spec.c");
    if (spec.contains("ode_tol"))
        rec.spec.ode_tol = get_real(spec["ode_tol"], "$.spec.ode_tol");

    const json& grid = member(j, "grid", "$");
    rec.grid.s_count = get_int(member(grid, "s_count", "$.grid"), "$.grid.s_count");
    rec.grid.m_count = get_int(member(grid, "m_count", "$.grid"), "$.grid.m_count");
    rec.grid.s_max = get_real(member(grid, "s_max", "$.grid"), "$.grid.s_max");

    if (j.contains("header") && j["header"].is_object())
        for (const auto& [k, v] : j["header"].items())
            rec.header.emplace_back(k, get_real(v, "$.header." + k));
    if (j.contains("profile") && !j["profile"].is_null())
        rec.profile = parse_profile_value(j["profile"], "$.profile");

    const int n = rec.spec.n;
    const int lift = rec.spec.family == FamilyTag::cn_product ? n : n + 1;
    const json& samples = member(j, "samples", "$");
    if (!samples.is_array())
        schema("$.samples", "expected an array");
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const std::string p = "$.samples[" + std::to_string(k) + "]";
        const json& row = samples[k];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n + lift))
            schema(p, "expected " + std::to_string(n) + " parameters and " + std::to_string(lift) +
                          " complex coordinates");
        RVector par(n);
        for (int i = 0; i < n; ++i)
            par(i) = get_real(row[i], p + "[" + std::to_string(i) + "]");
        CVector z(lift);
        for (int i = 0; i < lift; ++i)
            z(i) = get_complex(row[n + i], p + "[" + std::to_string(n + i) + "]");
        rec.params.push_back(std::move(par));
        rec.samples.push_back(std::move(z));
    }
    return rec;
}

std::string report_json(const CheckReport& report)
{
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back(json{{"name", c.name},
                              {"residual", real(c.residual)},
                              {"tol", real(c.tol)},
                              {"pass", c.pass},
                              {"note", c.note}});
    json tolerances = json::object();
    for (const auto& c : report.checks)
        tolerances[c.name] = real(c.tol);
    json j{{"family", std::string(to_string(report.spec.family))},
           {"n", report.spec.n},
           {"rho", report.spec.rho ? real(*report.spec.rho) : json(nullptr)},
           {"grid",
            {{"s_count", report.grid.s_count}, {"m_count", report.grid.m_count}, {"s_max", real(report.grid.s_max)}}},
           {"checks", std::move(checks)},
           {"pass", report.pass()},
           {"provenance",
            {{"h", real(report.options.jet.h)},
             {"order", report.options.jet.order},
             {"tolerances", std::move(tolerances)},
             {"seed", report.options.prng_seed},
             {"invariance_samples", report.options.invariance_samples}}}};
    return j.dump(1) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

void csv_row(std::ostringstream& os, const std::vector<double>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << format_real(values[i]);
    os << '\n';
}

} // namespace

std::string samples_csv(const ImmersionRecord& rec)
{
    std::ostringstream os;
    const int n = rec.spec.n;
    os << "s";
    for (int i = 1; i < n; ++i)
        os << ",u" << i;
    const auto lift = rec.samples.empty() ? 0 : rec.samples[0].size();
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(lift); ++i)
        os << ",re" << i << ",im" << i;
    os << '\n';
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        std::vector<double> row(rec.params[k].data(), rec.params[k].data() + rec.params[k].size());
        for (Complex z : rec.samples[k]) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        csv_row(os, row);
    }
    return os.str();
}

std::string profile_csv(const ProfileRecord& rec)
{
    std::ostringstream os;
    os << "s,r,rp\n";
    for (const auto& g : rec.grid)
        csv_row(os, {g[0], g[1], g[2]});
    return os.str();
}

std::string phase_portrait_csv(const ProfileSolution& sol, double s_lo, double s_hi, int rows)
{
    if (rows < 2)
        fail(Errc::invalid_argument, "phase portrait needs at least 2 rows");
    std::ostringstream os;
    os << "s,r,rp\n";
    for (int k = 0; k < rows; ++k) {
        // Exact endpoints: the last row must land on s_hi.
        const double s = k == rows - 1 ? s_hi : s_lo + (s_hi - s_lo) * k / (rows - 1);
        const auto v = sol.at(s);
        csv_row(os, {s, v.r, v.rp});
    }
    return os.str();
}

CsvTable parse_csv(const std::string& text)
{
    CsvTable t;
    std::istringstream is(text);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ','))
            out.push_back(cell);
        return out;
    };
    if (!std::getline(is, line))
        fail(Errc::schema, "empty CSV");
    t.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != t.header.size())
            fail(Errc::schema, "CSV line " + std::to_string(lineno) + " has the wrong column count");
        std::vector<double> row;
        for (const auto& c : cells)
            row.push_back(parse_real(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace lagmin
