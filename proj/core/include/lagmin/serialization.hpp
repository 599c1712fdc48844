#pragma once

// JSON and CSV forms of profiles, sampled immersions and check reports.
// Every real is written as a 17-significant-digit decimal string so that a
// write/read cycle is bit-exact; readers also accept plain JSON numbers.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lagmin/geomcheck.hpp"

namespace lagmin {

/// "%.17g"
std::string format_real(double x);
/// Strict decimal parse (whole string); throws schema-error.
double parse_real(const std::string& text);

struct ProfileRecord {
    ProfileFamily family;
    double tol = 0.0;
    double s_max = 0.0;
    double energy_constant = 0.0;
    double energy_residual = 0.0;
    bool equilibrium = false;
    /// Rows (s, r, r').
    std::vector<std::array<double, 3>> grid;
    /// 1 - r'^2 per row, computed without cancellation.
    std::vector<double> deficit;
};

ProfileRecord profile_record(const ProfileSolution& sol);
/// Extra top-level members (already serialized JSON values) are appended verbatim.
std::string profile_json(const ProfileRecord& rec,
                         const std::vector<std::pair<std::string, std::string>>& extra = {});
ProfileRecord parse_profile_json(const std::string& text);

struct ImmersionRecord {
    ImmersionFamilySpec spec;
    GridSpec grid;
    /// Named seed, if any (custom seeds are not serializable).
    std::optional<SeedKind> seed_kind;
    std::vector<RVector> params;
    std::vector<CVector> samples;
    std::optional<ProfileRecord> profile;
    /// Header residuals recorded at build time.
    std::vector<std::pair<std::string, double>> header;
};

ImmersionRecord immersion_record(const SampledImmersion& imm,
                                 const std::vector<std::pair<std::string, double>>& header = {});
std::string immersion_json(const ImmersionRecord& rec);
/// Throws schema-error naming the first violation.
ImmersionRecord parse_immersion_json(const std::string& text);

std::string report_json(const CheckReport& report);

/// Header row plus one row per sample: s, u..., re_0, im_0, ...
std::string samples_csv(const ImmersionRecord& rec);
/// Header "s,r,rp" plus one row per grid node.
std::string profile_csv(const ProfileRecord& rec);
/// Rows (s, r, r') sampled uniformly, `rows` of them.
std::string phase_portrait_csv(const ProfileSolution& sol, double s_lo, double s_hi, int rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);

} // namespace lagmin
