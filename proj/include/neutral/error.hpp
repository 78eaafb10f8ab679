#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neutral {

enum class ErrorCode {
    InfiniteGroup,
    InvalidGroup,
    GroupTooLarge,
    Overflow,
    InvalidPrime,
    NotCyclic,
    NonCyclicPrimaryPart,
    CapExceeded,
    DuplicateCharacter,
    BadCoordinateLength,
    NonPositiveMultiplicity,
    SchemaError,
    MalformedCertificate,
    MissingQuotientGenus,
    MissingFixedDim,
    ExtraneousPrime,
    InvalidGenus,
    InvalidDims,
};

constexpr std::string_view to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NonCyclicPrimaryPart: return "NonCyclicPrimaryPart";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DuplicateCharacter: return "DuplicateCharacter";
    case ErrorCode::BadCoordinateLength: return "BadCoordinateLength";
    case ErrorCode::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::MissingQuotientGenus: return "MissingQuotientGenus";
    case ErrorCode::MissingFixedDim: return "MissingFixedDim";
    case ErrorCode::ExtraneousPrime: return "ExtraneousPrime";
    case ErrorCode::InvalidGenus: return "InvalidGenus";
    case ErrorCode::InvalidDims: return "InvalidDims";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending field or value.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace neutral
