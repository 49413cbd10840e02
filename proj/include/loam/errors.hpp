#pragma once

#include <stdexcept>
#include <string>

namespace loam {

/// Raised for out-of-domain inputs (non-finite values, bad orders, malformed tables).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The power budget admits no constellation of the requested shape.
class InfeasibleDesign : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sweep configuration failed validation. `path()` is a JSON pointer to the
/// first offending entry (e.g. "/schemes/2").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace loam
