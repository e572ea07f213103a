// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace adsim {

/// Base class for every rejected input in the library.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Visibility below the configured floor; attenuation would be unbounded.
class VisibilityTooLow : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// The ratio sensitivity form is singular at d == d_o.
class SingularSensitivity : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// File or stream failure, message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw InvalidInput(what);
}

} // namespace detail

} // namespace adsim
