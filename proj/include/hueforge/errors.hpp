// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hueforge {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates an image or configuration invariant.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Two images that must be aligned have different dimensions.
class DimensionError : public ValidationError
{
public:
    using ValidationError::ValidationError;
};

/// Malformed or truncated file contents.
class FormatError : public Error
{
public:
    using Error::Error;
};

class UnsupportedFormatError : public FormatError
{
public:
    using FormatError::FormatError;
};

/// The file system refused a read or write.
class IoError : public Error
{
public:
    using Error::Error;
};

/// Writes a warning line to stderr unless warnings were silenced.
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

} // namespace hueforge
