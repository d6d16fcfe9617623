#pragma once

#include <iosfwd>
#include <string>

namespace ftnlab {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitConfig = 2,
    kExitPartial = 3,
};

std::string version_string();

/// Worker count: explicit > 0 wins, then FTNLAB_WORKERS, then hardware threads.
int resolve_workers(int requested);

/// `run`: writes <out_dir>/<prefix>.csv and the requested sidecars.
int run_command(const std::string& config_path, int workers, const std::string& out_dir, std::ostream& log);

/// `validate`: prints the plan, writes nothing.
int validate_command(const std::string& config_path, std::ostream& out, std::ostream& log);

}  // namespace ftnlab
