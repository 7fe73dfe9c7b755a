#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coarsedim {

enum class Errc {
    invalid_input,
    resource,
    label_mismatch,
    budget_exhausted,
    precondition,
    not_found,
    conflict,
    inconsistent_input,
    invalid_config,
    hull_coverage,
    control_violation,
    separation_too_small,
    unknown_suite,
};

constexpr std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::resource: return "resource";
    case Errc::label_mismatch: return "label-mismatch";
    case Errc::budget_exhausted: return "budget-exhausted";
    case Errc::precondition: return "precondition";
    case Errc::not_found: return "not-found";
    case Errc::conflict: return "conflict";
    case Errc::inconsistent_input: return "inconsistent-input";
    case Errc::invalid_config: return "invalid-config";
    case Errc::hull_coverage: return "hull-coverage";
    case Errc::control_violation: return "control-violation";
    case Errc::separation_too_small: return "separation-too-small";
    case Errc::unknown_suite: return "unknown-suite";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(detail), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

}  // namespace coarsedim
