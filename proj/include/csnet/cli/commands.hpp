#pragma once

#include <iosfwd>
#include <string>

#include "csnet/cli/run_config.hpp"

namespace csnet {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

// Runs one of train, reconstruct, baseline, eval, export-matrix, synth.
// Errors are reported on `err` and mapped to the exit codes above.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_train(const RunConfig& config, std::ostream& out);
int cmd_reconstruct(const RunConfig& config, std::ostream& out);
int cmd_baseline(const RunConfig& config, std::ostream& out);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_export_matrix(const RunConfig& config, std::ostream& out);
int cmd_synth(const RunConfig& config, std::ostream& out);

// Replaces each "{ratio}" in `pattern` with the shortest decimal form of ratio.
std::string expand_template(const std::string& pattern, double ratio);

}  // namespace csnet
