#pragma once

#include <stdexcept>
#include <string>

namespace juliacheb {

enum class ErrorKind {
    CompositionTooLarge,
    NonConvergence,
    NoAdmissibleRadius,
    GeneratorFailure,
    SolverStalled,
    RankDeficient,
    TauNoConvergence,
    EmptyGrid,
    InvalidArgument,
    Config,
    Io,
};

const char* to_string(ErrorKind kind);

/// Base for every error the library raises; `kind()` lets front ends map
/// failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define JULIACHEB_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what)                            \
            : Error(ErrorKind::Name, what) {}                             \
    };

JULIACHEB_DEFINE_ERROR(CompositionTooLarge)
JULIACHEB_DEFINE_ERROR(NonConvergence)
JULIACHEB_DEFINE_ERROR(NoAdmissibleRadius)
JULIACHEB_DEFINE_ERROR(GeneratorFailure)
JULIACHEB_DEFINE_ERROR(RankDeficient)
JULIACHEB_DEFINE_ERROR(EmptyGrid)
JULIACHEB_DEFINE_ERROR(InvalidArgument)

#undef JULIACHEB_DEFINE_ERROR

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

} // namespace juliacheb
