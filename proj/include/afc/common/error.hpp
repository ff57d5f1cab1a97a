#pragma once

#include <stdexcept>
#include <string>

namespace afc {

/// Failure categories; the CLI maps each to a distinct exit code.
enum class ErrorKind {
    config,     ///< malformed or invalid input
    guard,      ///< a numerical guard rejected the request
    causality,  ///< wrap-around or causality guard in the echo path
    oracle,     ///< FFT path and brute-force oracle disagree
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// A named numerical guard fired. `guard()` is a short stable identifier
/// such as "grid" or "burn-step".
class GuardError : public Error {
public:
    GuardError(std::string guard, const std::string& what,
               ErrorKind kind = ErrorKind::guard)
      : Error(kind, guard + ": " + what), guard_(std::move(guard)) {}

    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

class NotAHoleError : public GuardError {
public:
    explicit NotAHoleError(const std::string& what) : GuardError("not-a-hole", what) {}
};

/// Wraps a module error with the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& inner)
      : Error(inner.kind(), "stage '" + stage + "': " + inner.what()),
        stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace afc
