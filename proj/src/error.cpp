#include "cauchydual/error.hpp"

namespace cauchydual {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::NotARoot: return "NotARoot";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::RootOnCircle: return "RootOnCircle";
        case ErrorKind::PairingFailure: return "PairingFailure";
        case ErrorKind::PoleHit: return "PoleHit";
        case ErrorKind::DegenerateAtom: return "DegenerateAtom";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::DegenerateAlphas: return "DegenerateAlphas";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::Headroom: return "Headroom";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace cauchydual
