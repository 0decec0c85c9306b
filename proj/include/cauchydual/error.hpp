#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cauchydual {

enum class ErrorKind {
    NonConvergence,
    NotARoot,
    NotPSD,
    Singular,
    ParseError,
    ValidationError,
    RootOnCircle,
    PairingFailure,
    PoleHit,
    DegenerateAtom,
    IllConditioned,
    DegenerateAlphas,
    Overflow,
    Headroom,
    DomainError,
    InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the pipeline is reported through this type. `module()`
/// names the stage that raised it so the CLI can surface provenance.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace cauchydual
