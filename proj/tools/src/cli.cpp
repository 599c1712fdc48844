#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "lagmin/error.hpp"
#include "lagmin/serialization.hpp"

namespace lagmin::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json real(double x) { return format_real(x); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::invalid_argument, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out)
{
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f || !(f << text))
        fail(Errc::invalid_argument, "cannot write " + *path);
}

int exit_code(Errc code)
{
    switch (code) {
    case Errc::invalid_argument:
    case Errc::precondition_violation:
    case Errc::schema:
        return usage;
    default:
        return numeric_failure;
    }
}

bool near_equilibrium(int n, double rho, double tol)
{
    return std::abs(rho - std::atan(std::sqrt(static_cast<double>(n)))) <= tol;
}

ProfileKind profile_kind_or_fail(const std::string& text)
{
    const auto kind = parse_profile_kind(text);
    if (!kind)
        fail(Errc::invalid_argument, "unknown profile family '" + text + "'");
    return *kind;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string family;
    int n = 0;
    double rho = 0.0;
    std::optional<double> s_max;
    std::optional<double> tol;
    std::optional<std::string> out;
};

int cmd_solve(const SolveArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    const ProfileFamily fam{profile_kind_or_fail(a.family), a.n, a.rho};
    fam.validate();
    const ProfileSolution sol = solve_profile(fam, a.s_max.value_or(cfg.solve_s_max), a.tol.value_or(cfg.ode_tol));
    const ProfileRecord rec = profile_record(sol);
    const bool proximate = fam.kind == ProfileKind::cp_sphere && near_equilibrium(fam.n, fam.rho, cfg.equilibrium_tol);
    emit(profile_json(rec, {{"equilibrium_proximate", proximate ? "true" : "false"}}), a.out, out);
    err << "solve: " << to_string(fam.kind) << " n=" << fam.n << " rho=" << format_real(fam.rho) << ": "
        << rec.grid.size() << " nodes, energy residual " << rec.energy_residual
        << (proximate ? ", equilibrium-proximate" : "") << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::string family;
    int n = 0;
    std::optional<double> rho;
    std::optional<std::string> seed;
    std::optional<std::string> grid;
    std::optional<double> s_max;
    std::optional<double> c;
    std::optional<std::string> out;
};

CheckOptions check_options(const Config& cfg)
{
    CheckOptions o;
    o.jet.h = cfg.fd_step;
    o.jet.order = cfg.fd_order;
    o.prng_seed = cfg.prng_seed;
    o.invariance_samples = cfg.invariance_samples;
    return o;
}

int cmd_build(const BuildArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    const auto tag = parse_family_tag(a.family);
    if (!tag)
        fail(Errc::invalid_argument, "unknown family '" + a.family + "'");
    ImmersionFamilySpec spec;
    spec.family = *tag;
    spec.n = a.n;
    spec.rho = a.rho;
    spec.ode_tol = cfg.ode_tol;
    if (a.c)
        spec.c = *a.c;
    if (a.seed) {
        spec.seed_kind = parse_seed_kind(*a.seed);
        if (!spec.seed_kind)
            fail(Errc::invalid_argument, "unknown seed '" + *a.seed + "'");
    }
    GridSpec grid = cfg.grid;
    grid.s_max = a.s_max.value_or(cfg.grid_s_max);
    if (a.grid) {
        const auto g = parse_grid(*a.grid);
        if (!g)
            fail(Errc::invalid_argument, "--grid must look like 64x64");
        grid.s_count = g->first;
        grid.m_count = g->second;
    }
    const SampledImmersion imm = build_immersion(spec, grid);
    CheckOptions o = check_options(cfg);
    o.checks = {"lagrangian", "horizontal"};
    const CheckReport rep = run_checks(imm, o);
    std::vector<std::pair<std::string, double>> header{{"quadric_residual", imm.quadric_residual}};
    for (const auto& c : rep.checks)
        header.emplace_back(c.name + "_residual", c.residual);
    emit(immersion_json(immersion_record(imm, header)), a.out, out);
    err << "build: " << to_string(spec.family) << " n=" << spec.n << ": " << imm.samples.size() << " samples";
    for (const auto& [k, v] : header)
        err << ", " << k << ' ' << v;
    err << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string in;
    std::optional<std::string> checks;
    std::optional<std::string> report;
};

SampledImmersion rebuild(const ImmersionRecord& rec)
{
    SampledImmersion imm = build_immersion(rec.spec, rec.grid);
    if (imm.params.size() != rec.params.size())
        fail(Errc::schema, "$.samples: expected " + std::to_string(imm.params.size()) + " rows for the grid");
    for (std::size_t k = 0; k < rec.params.size(); ++k)
        if (imm.params[k] != rec.params[k])
            fail(Errc::schema, "$.samples[" + std::to_string(k) + "]: parameters do not match the grid");
    return imm;
}

int cmd_verify(const VerifyArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    const ImmersionRecord rec = parse_immersion_json(read_file(a.in));
    CheckOptions o = check_options(cfg);
    if (a.checks) {
        std::stringstream ss(*a.checks);
        std::string name;
        while (std::getline(ss, name, ','))
            if (!name.empty())
                o.checks.insert(name);
    }
    const SampledImmersion imm = rebuild(rec);
    const CheckReport rep = run_checks(imm, o, rec.samples);
    emit(report_json(rep), a.report, out);
    for (const auto& c : rep.checks)
        err << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.residual << " (tol " << c.tol << ")\n";
    return rep.pass() ? ok : verification_failure;
}

// ---------------------------------------------------------------------------

struct SigmaArgs {
    std::optional<std::string> family;
    std::optional<int> n;
    std::optional<double> rho;
    std::string method = "s";
    std::optional<std::string> in;
};

json sigma_json(const SigmaIntegralResult& r)
{
    return {{"value", real(r.value)},
            {"reduced", real(r.reduced)},
            {"tail_bound", real(r.tail_bound)},
            {"truncation", real(r.truncation)}};
}

int cmd_sigma(const SigmaArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    if (a.in) {
        if (a.family || a.n || a.rho)
            fail(Errc::invalid_argument, "--in excludes --family/--n/--rho");
        const ImmersionRecord rec = parse_immersion_json(read_file(*a.in));
        JetOptions jo{cfg.fd_step, cfg.fd_order, true};
        const SigmaNumeric r = sigma_integral_numeric(rec.spec, rec.grid, jo);
        json j{{"source", "grid"},
               {"family", std::string(to_string(rec.spec.family))},
               {"value", real(r.value)},
               {"doubled", real(r.doubled)},
               {"rel_change", real(r.rel_change)},
               {"low_confidence", r.low_confidence}};
        out << j.dump(1) << '\n';
        err << "sigma-integral (grid): " << r.value << ", doubled " << r.doubled << ", relative change "
            << r.rel_change << (r.low_confidence ? " (low confidence)" : "") << '\n';
        return ok;
    }
    if (!a.family || !a.n || !a.rho)
        fail(Errc::invalid_argument, "sigma-integral needs --family thm1 --n --rho, or --in");
    if (*a.family != "thm1")
        fail(Errc::invalid_argument, "the closed-form sigma integral exists for thm1 only");
    SigmaIntegralSpec spec{*a.n, *a.rho};
    spec.ode_tol = cfg.ode_tol;
    json j{{"family", "thm1"}, {"n", *a.n}, {"rho", real(*a.rho)}};
    if (a.method == "s" || a.method == "t") {
        spec.method = a.method == "s" ? SigmaMethod::s_form : SigmaMethod::t_form;
        const auto r = sigma_integral_thm1(spec);
        j["method"] = a.method;
        j.update(sigma_json(r));
        err << "sigma-integral (" << a.method << "-form): " << r.value << ", tail bound " << r.tail_bound << '\n';
    } else if (a.method == "both") {
        spec.method = SigmaMethod::s_form;
        const auto rs = sigma_integral_thm1(spec);
        spec.method = SigmaMethod::t_form;
        const auto rt = sigma_integral_thm1(spec);
        const double disc = std::abs(rs.value - rt.value) / std::abs(rt.value);
        j["method"] = "both";
        j["s"] = sigma_json(rs);
        j["t"] = sigma_json(rt);
        j["discrepancy"] = real(disc);
        err << "sigma-integral: s-form " << rs.value << ", t-form " << rt.value << ", relative discrepancy " << disc
            << '\n';
    } else {
        fail(Errc::invalid_argument, "--method must be s, t or both");
    }
    out << j.dump(1) << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct PeriodArgs {
    int n = 0;
    double rho = 0.0;
};

int cmd_period(const PeriodArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    ProfileFamily{ProfileKind::cp_sphere, a.n, a.rho}.validate();
    json j{{"n", a.n}, {"rho", real(a.rho)}};
    std::optional<PeriodResult> r;
    if (!near_equilibrium(a.n, a.rho, cfg.equilibrium_tol))
        r = detect_period(a.n, a.rho, std::max(cfg.ode_tol * 0.1, 1e-13));
    if (!r) {
        j["result"] = "equilibrium";
        err << "period: equilibrium\n";
    } else {
        j["result"] = "periodic";
        j["period"] = real(r->period);
        j["closure_residual"] = real(r->closure_residual);
        err << "period: T = " << format_real(r->period) << ", closure residual " << r->closure_residual << '\n';
    }
    out << j.dump(1) << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
    std::string in;
    std::string format = "csv";
    std::optional<std::string> out;
    std::string what = "samples";
};

int cmd_export(const ExportArgs& a, const Config& cfg, std::ostream& out, std::ostream& err)
{
    if (a.format != "csv")
        fail(Errc::invalid_argument, "unknown format '" + a.format + "'");
    const std::string text = read_file(a.in);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::schema, std::string("malformed JSON: ") + e.what());
    }
    const bool is_immersion = doc.is_object() && doc.contains("spec");
    std::optional<ImmersionRecord> imm;
    std::optional<ProfileRecord> prof;
    if (is_immersion) {
        imm = parse_immersion_json(text);
        prof = imm->profile;
    } else {
        prof = parse_profile_json(text);
    }

    std::string csv;
    if (a.what == "samples") {
        if (!imm)
            fail(Errc::invalid_argument, "samples export needs an immersion file");
        csv = samples_csv(*imm);
    } else if (a.what == "profile") {
        if (!prof)
            fail(Errc::invalid_argument, "the input carries no profile");
        csv = profile_csv(*prof);
    } else if (a.what == "phase-portrait") {
        if (!prof)
            fail(Errc::invalid_argument, "the input carries no profile");
        const ProfileFamily fam = prof->family;
        const double tol = std::clamp(prof->tol, 1e-13, 1e-6);
        constexpr int rows = 400;
        std::optional<PeriodResult> period;
        if (fam.kind == ProfileKind::cp_sphere && !near_equilibrium(fam.n, fam.rho, cfg.equilibrium_tol))
            period = detect_period(fam.n, fam.rho, std::min(tol, 1e-12));
        if (period) {
            // One full loop of the closed orbit.
            const ProfileSolution sol = solve_profile(fam, period->period + 0.5, std::min(tol, 1e-12));
            csv = phase_portrait_csv(sol, 0.0, period->period, rows);
        } else {
            const ProfileSolution sol = solve_profile(fam, prof->s_max, tol);
            csv = phase_portrait_csv(sol, -prof->s_max, prof->s_max, rows);
        }
    } else {
        fail(Errc::invalid_argument, "--what must be samples, profile or phase-portrait");
    }
    emit(csv, a.out, out);
    err << "export: " << a.what << ", " << std::count(csv.begin(), csv.end(), '\n') - 1 << " rows\n";
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Minimal Lagrangian immersions: profiles, builders and checks", "lagmin"};
    app.require_subcommand(1);
    std::string config_path = "lagmin.conf";
    app.add_option("--config", config_path, "key=value defaults file");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a profile ODE and write profile JSON");
    solve->add_option("--family", sa.family, "ch-sphere|ch-tube|ch-horo|cp-sphere")->required();
    solve->add_option("--n", sa.n)->required();
    solve->add_option("--rho", sa.rho)->required();
    solve->add_option("--s-max", sa.s_max);
    solve->add_option("--tol", sa.tol);
    solve->add_option("--out", sa.out);

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "Sample an immersion family and write immersion JSON");
    build->add_option("--family", ba.family)->required();
    build->add_option("--n", ba.n)->required();
    build->add_option("--rho", ba.rho);
    build->add_option("--seed", ba.seed, "tg-sphere-cp|tg-rh-ch|tg-plane-c|clifford-cp");
    build->add_option("--grid", ba.grid, "SxM");
    build->add_option("--s-max", ba.s_max);
    build->add_option("--c", ba.c, "cn-product: gamma^n = (s, c)");
    build->add_option("--out", ba.out);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run geometric checks on an immersion file");
    verify->add_option("--in", va.in)->required();
    verify->add_option("--checks", va.checks, "comma-separated subset of the check names");
    verify->add_option("--report", va.report);

    SigmaArgs ga;
    auto* sigma = app.add_subcommand("sigma-integral", "Integral of |sigma|^n dv");
    sigma->add_option("--family", ga.family);
    sigma->add_option("--n", ga.n);
    sigma->add_option("--rho", ga.rho);
    sigma->add_option("--method", ga.method, "s|t|both");
    sigma->add_option("--in", ga.in, "immersion JSON for the grid estimate");

    PeriodArgs pa;
    auto* period = app.add_subcommand("period", "Period of a cp-sphere profile");
    period->add_option("--n", pa.n)->required();
    period->add_option("--rho", pa.rho)->required();

    ExportArgs ea;
    auto* exp = app.add_subcommand("export", "Flatten a profile or immersion file to CSV");
    exp->add_option("--in", ea.in)->required();
    exp->add_option("--format", ea.format);
    exp->add_option("--out", ea.out);
    exp->add_option("--what", ea.what, "samples|profile|phase-portrait");

    std::vector<std::string> argv_store{"lagmin"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        const Config cfg = load_config(config_path);
        if (*solve)
            return cmd_solve(sa, cfg, out, err);
        if (*build)
            return cmd_build(ba, cfg, out, err);
        if (*verify)
            return cmd_verify(va, cfg, out, err);
        if (*sigma)
            return cmd_sigma(ga, cfg, out, err);
        if (*period)
            return cmd_period(pa, cfg, out, err);
        if (*exp)
            return cmd_export(ea, cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numeric_failure;
    }
    return usage;
}

} // namespace lagmin::cli
