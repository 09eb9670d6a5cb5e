#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linepack {

enum class ErrorCode
{
    NotSymmetric,
    NonFinite,
    NotOrthonormal,
    DimensionMismatch,
    IterationLimit,
    SearchFailed,
    Precondition,
    NotAFrame,
    InconsistentVerdict,
    DegenerateComplement,
    NotScalable,
    ParseError,
    NormError,
    ShapeError,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Numerical failures map to "indeterminate" upstream; everything else is a
// contract or input problem.
inline bool is_numerical(ErrorCode code)
{
    return code == ErrorCode::IterationLimit || code == ErrorCode::SearchFailed
           || code == ErrorCode::InconsistentVerdict;
}

inline bool is_input_error(ErrorCode code)
{
    return code == ErrorCode::ParseError || code == ErrorCode::NormError || code == ErrorCode::ShapeError
           || code == ErrorCode::NonFinite;
}

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace linepack
