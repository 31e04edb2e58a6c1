#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace vascflow {

struct RunConfig {
  std::string network = "aortic_bif";
  /// CSV path or "synthetic"; empty keeps the network's own inflow.
  std::string waveform;
  std::string solver = "0d";
  std::string mode = "nonlinear";
  double dx_max = 0.2;
  double cfl = 0.9;
  double dt = 1e-3;
  std::optional<double> T0;
  double t_end = 29.7;
  /// Output directory; empty picks run_<solver>[_<mode>] under the output root.
  std::string out;
};

/// Directory under which relative outputs are written: $VASCFLOW_OUTPUT_ROOT, or empty (working directory).
std::filesystem::path output_root();

/// Runs one solver and writes <vessel>.csv per vessel plus run.txt.  Returns the directory.
std::filesystem::path cmd_run(const RunConfig& config, std::ostream& log);

/// Errors of every vessel of test_dir against ref_dir over the final cycle.
/// Writes the error table and returns its path.
std::filesystem::path cmd_compare(const std::filesystem::path& ref_dir, const std::filesystem::path& test_dir,
                                  const std::string& model_label, const std::filesystem::path& out_csv,
                                  std::ostream& log);

/// Stability and, when a 1D run directory is given, dimensional report (key=value lines).
void cmd_analyze(const std::string& network, const std::optional<std::filesystem::path>& run_dir, std::ostream& out);

/// Entry point; returns 0 on success, 1 on user error, 2 on numerical failure.
int run_cli(int argc, char** argv);

}  // namespace vascflow
