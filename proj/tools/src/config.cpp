#include "config.hpp"

#include <fstream>
#include <sstream>

#include "lagmin/error.hpp"
#include "lagmin/serialization.hpp"

namespace lagmin::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double ranged(const std::string& key, const std::string& value, double lo, double hi)
{
    double v = 0.0;
    try {
        v = parse_real(value);
    } catch (const Error&) {
        fail(Errc::invalid_argument, "config: " + key + " is not a number");
    }
    if (!(v >= lo && v <= hi))
        fail(Errc::invalid_argument, "config: " + key + " = " + value + " is out of range");
    return v;
}

int ranged_int(const std::string& key, const std::string& value, int lo, int hi)
{
    const double v = ranged(key, value, lo, hi);
    if (v != static_cast<int>(v))
        fail(Errc::invalid_argument, "config: " + key + " must be an integer");
    return static_cast<int>(v);
}

} // namespace

Config parse_config(const std::string& text, Config cfg)
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::invalid_argument, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "ode_tol")
            cfg.ode_tol = ranged(key, value, 1e-13, 1e-6);
        else if (key == "solve_s_max")
            cfg.solve_s_max = ranged(key, value, 1e-3, 50.0);
        else if (key == "grid_s_max")
            cfg.grid.s_max = cfg.grid_s_max = ranged(key, value, 1e-3, 20.0);
        else if (key == "grid") {
            const auto g = parse_grid(value);
            if (!g)
                fail(Errc::invalid_argument, "config: grid must look like 64x64");
            cfg.grid.s_count = g->first;
            cfg.grid.m_count = g->second;
        } else if (key == "fd_step")
            cfg.fd_step = ranged(key, value, 1e-6, 0.1);
        else if (key == "fd_order") {
            cfg.fd_order = ranged_int(key, value, 2, 4);
            if (cfg.fd_order == 3)
                fail(Errc::invalid_argument, "config: fd_order must be 2 or 4");
        } else if (key == "prng_seed")
            cfg.prng_seed = static_cast<std::uint64_t>(ranged(key, value, 0.0, 9007199254740992.0));
        else if (key == "invariance_samples")
            cfg.invariance_samples = ranged_int(key, value, 1, 100000);
        else if (key == "equilibrium_tol")
            cfg.equilibrium_tol = ranged(key, value, 0.0, 0.1);
        else
            fail(Errc::invalid_argument, "config: unknown key '" + key + "'");
    }
    return cfg;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace lagmin::cli
