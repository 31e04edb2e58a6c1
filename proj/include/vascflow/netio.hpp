#pragma once

// Network files, waveform CSVs and result persistence.
//
// Network files are line oriented.  '#' starts a comment.  A bracketed header
// opens a record and "key = value" lines fill it:
//
//   [fluid]     rho, mu, zeta, p_diastolic, p_ext, p_init
//   [vessel]    id, length, radius | area | radius_in + radius_out,
//               thickness (cm, or "adan"), E, nu, m, n, P0, stiffness
//   [junction]  parent, daughters (comma separated)
//   [inflow]    vessel, waveform (CSV path, "synthetic" or "inline"), period,
//               T0, systole_fraction, q_max (synthetic), samples (inline "t q; ...")
//   [terminal]  vessel, type (RCR or R), R1, C, R2, R, Pv
//
// P0 defaults to p_diastolic; stiffness defaults to the arterial formula.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vascflow/metrics.hpp"
#include "vascflow/network.hpp"
#include "vascflow/series.hpp"
#include "vascflow/waveform.hpp"

namespace vascflow {

/// Parses and validates a network; relative waveform paths resolve against base_dir.
Network parse_network(std::string_view text, const std::filesystem::path& base_dir = {});
/// Text that parses back to the same physical fields (17 significant digits).
std::string serialize_network(const Network& net);
/// A file path, or the name of a bundled benchmark ("aortic_bif").
Network load_network(const std::string& path_or_name);

/// Two-column CSV (t, Q); an optional non-numeric header line is skipped.
/// Without an explicit period the last sample time is taken as the period.
WaveformSeries parse_waveform(std::string_view text, std::optional<double> period = std::nullopt);
WaveformSeries load_waveform(const std::filesystem::path& path, std::optional<double> period = std::nullopt);

/// CSV with header t,P,Q,A and 10 significant digits.
void write_series(const std::filesystem::path& path, const VesselSeries& series);
VesselSeries read_series(const std::filesystem::path& path, std::string id = {});

struct ErrorRow {
  std::string vessel;
  std::string model;
  ErrorReport report;
};

/// Columns vessel,model,eP_RMS,eQ_RMS,eP_SYS,eQ_SYS,eP_DIAS,eQ_DIAS in percent.
void write_error_table(const std::filesystem::path& path, const std::vector<ErrorRow>& rows);

}  // namespace vascflow
