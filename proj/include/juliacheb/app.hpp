#pragma once

#include "juliacheb/errors.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace juliacheb {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNonConvergence = 3,
    kExitIo = 4,
    kExitOther = 5,
};

int exit_code_for(ErrorKind kind);

const std::vector<std::string>& subcommands();

struct RunOptions {
    std::string config_text;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

/// Runs one subcommand and writes its outputs, a manifest, and on failure an
/// error record. Never throws; the result is the process exit code.
int run_subcommand(const std::string& name, const RunOptions& options, std::ostream& log);

} // namespace juliacheb
