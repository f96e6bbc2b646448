#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ckeval {

/// Stable-coded finding attached to a location (class path, file:line, JSON pointer).
struct Diagnostic {
    std::string code;
    std::string location;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input documents. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
    InputError(const std::string& what, std::vector<Diagnostic> diagnostics)
        : Error(what), diagnostics_(std::move(diagnostics)) {}

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Failure to write a report, export or chart to its destination.
class OutputError : public Error {
public:
    using Error::Error;
};

} // namespace ckeval
