#include "lagmin/error.hpp"

#include <sstream>

namespace lagmin {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::precondition_violation: return "precondition-violation";
    case Errc::integration_failure: return "integration-failure";
    case Errc::needs_larger_domain: return "needs-larger-domain";
    case Errc::degenerate_pair: return "degenerate-pair";
    case Errc::detection_failure: return "detection-failure";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::degeneracy: return "degeneracy-error";
    case Errc::not_lagrangian: return "not-lagrangian-error";
    case Errc::singular_input: return "singular-input";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::schema: return "schema-error";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

IntegrationFailure::IntegrationFailure(const std::string& what, double last_s)
    : Error(Errc::integration_failure,
            [&] {
                std::ostringstream os;
                os << what << " (last valid s = " << last_s << ")";
                return os.str();
            }()),
      last_s_(last_s)
{
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace lagmin
