#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vascflow/vessel.hpp"
#include "vascflow/waveform.hpp"

namespace vascflow {

enum class End { left, right };

/// Flow-splitting junction: the parent's right end meets the daughters' left ends.
struct Junction {
  std::size_t parent = 0;
  std::vector<std::size_t> daughters;
};

enum class TerminalKind { rcr, resistance };

/// Windkessel element at a vessel's right end.  For a single-resistance terminal
/// only R1 is used and it carries the whole peripheral resistance.
struct Terminal {
  std::size_t vessel = 0;
  TerminalKind kind = TerminalKind::rcr;
  double R1 = 0.0;
  double C = 0.0;
  double R2 = 0.0;
  double Pv = 0.0;
};

void validate(const Terminal& terminal);

struct Inflow {
  std::size_t vessel = 0;
  WaveformSeries waveform;
  /// Where the waveform came from: a CSV path or a "synthetic ..." descriptor.
  std::string source;
  std::optional<SyntheticInflow> synthetic;
};

/// Raw per-vessel input values kept for serialization.
struct VesselInput {
  bool adan_thickness = false;
  bool stiffness_given = false;
};

struct Network {
  FluidProps fluid;
  double p_diastolic = 0.0;
  double p_ext = 0.0;
  double p_init = 0.0;

  std::vector<VesselSpec> vessels;
  std::vector<VesselInput> inputs;
  std::vector<Junction> junctions;
  std::vector<Terminal> terminals;
  Inflow inflow;
  /// Area at the initial pressure, one per vessel.
  std::vector<double> initial_area;

  std::size_t size() const noexcept { return vessels.size(); }
  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;

  /// Junction in which vessel i is the parent, if any.
  const Junction* junction_at_outlet(std::size_t i) const;
  /// Junction in which vessel i is a daughter, if any.
  const Junction* junction_at_inlet(std::size_t i) const;
  const Terminal* terminal_of(std::size_t i) const;
  bool is_root(std::size_t i) const noexcept { return i == inflow.vessel; }
};

/// Checks ids, end attachment (each vessel end belongs to exactly one of inflow,
/// junction or terminal) and acyclicity.  Throws ConfigError.
void validate_topology(const Network& net);

/// Recomputes initial areas from the tube law at p_init.
void compute_initial_areas(Network& net);

}  // namespace vascflow
