#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lagmin {

enum class Errc {
    invalid_argument,
    precondition_violation,
    integration_failure,
    needs_larger_domain,
    degenerate_pair,
    detection_failure,
    out_of_domain,
    degeneracy,
    not_lagrangian,
    singular_input,
    division_by_zero,
    schema,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// The profile integrator gave up; last_s is the last parameter value reached.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double last_s);
    double last_s() const noexcept { return last_s_; }

private:
    double last_s_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

} // namespace lagmin
