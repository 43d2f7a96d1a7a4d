#include "juliacheb/errors.hpp"

namespace juliacheb {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::CompositionTooLarge: return "CompositionTooLarge";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NoAdmissibleRadius: return "NoAdmissibleRadius";
    case ErrorKind::GeneratorFailure: return "GeneratorFailure";
    case ErrorKind::SolverStalled: return "SolverStalled";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TauNoConvergence: return "NoConvergence";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    }
    return "Unknown";
}

} // namespace juliacheb
