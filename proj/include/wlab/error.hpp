#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wlab {

enum class ErrorKind {
    DegenerateJet,
    OutOfDomain,
    InternalConsistency,
    NonFiniteInput,
    RadiusNotPositive,
    ConstantCenterCurve,
    InsufficientSamples,
    ZeroOffset,
    RadiusCollapse,
    NonFinite,
    AxisCollision,
    InvalidParameter,
    UnderdeterminedUmbilic,
    InsufficientSpread,
    Config,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Validation problems (bad input, bad config) as opposed to failures of the numerics.
    bool is_validation() const noexcept
    {
        return kind_ == ErrorKind::InvalidParameter || kind_ == ErrorKind::Config ||
               kind_ == ErrorKind::OutOfDomain || kind_ == ErrorKind::ZeroOffset ||
               kind_ == ErrorKind::InsufficientSamples || kind_ == ErrorKind::Io;
    }

private:
    ErrorKind kind_;
};

} // namespace wlab
