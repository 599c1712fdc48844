#pragma once

#include <cstdint>
#include <string>

#include "lagmin/immersions.hpp"

namespace lagmin::cli {

/// Defaults shared by the subcommands. Loaded from a key=value file; flags win.
struct Config {
    double ode_tol = 1e-11;
    double solve_s_max = 8.0;
    double grid_s_max = 2.0;
    GridSpec grid{64, 64, 2.0};
    double fd_step = 1e-3;
    int fd_order = 4;
    std::uint64_t prng_seed = 42;
    int invariance_samples = 16;
    /// cp-sphere radii this close to arctan sqrt(n) count as the equilibrium.
    double equilibrium_tol = 1e-4;
};

/// Parses key=value lines; '#' starts a comment. Throws lagmin::Error
/// (invalid-argument) on unknown keys or out-of-range values.
Config parse_config(const std::string& text, Config base = {});
/// Reads `path` if it exists; a missing file yields the defaults.
Config load_config(const std::string& path);

} // namespace lagmin::cli
