#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hh {

enum class ErrorCode {
    NotPrime,
    FieldTooLarge,
    NoIrreducibleFound,
    AllCubes,
    DegenerateCharacter,
    NotRational,
    BadReduction,
    HasseViolation,
    WrongResidue,
    BadDiscriminant,
    NotADivisor,
    NonIntegralTrace,
    NonIntegralWeight,
    NonIntegralResult,
    TooLargeForMethod,
    Inconsistency,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode c) noexcept
{
    switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::NoIrreducibleFound: return "NoIrreducibleFound";
    case ErrorCode::AllCubes: return "AllCubes";
    case ErrorCode::DegenerateCharacter: return "DegenerateCharacter";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::HasseViolation: return "HasseViolation";
    case ErrorCode::WrongResidue: return "WrongResidue";
    case ErrorCode::BadDiscriminant: return "BadDiscriminant";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NonIntegralTrace: return "NonIntegralTrace";
    case ErrorCode::NonIntegralWeight: return "NonIntegralWeight";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::TooLargeForMethod: return "TooLargeForMethod";
    case ErrorCode::Inconsistency: return "Inconsistency";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

    /// Errors that mean "the mathematics disagreed with itself".
    bool is_inconsistency() const noexcept
    {
        return code_ == ErrorCode::NonIntegralTrace || code_ == ErrorCode::NonIntegralResult ||
               code_ == ErrorCode::Inconsistency || code_ == ErrorCode::NotRational;
    }

    bool is_resource_bound() const noexcept
    {
        return code_ == ErrorCode::FieldTooLarge || code_ == ErrorCode::TooLargeForMethod;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace hh
