#pragma once

#include <string_view>

#include "vascflow/network.hpp"

namespace vascflow {

/// Network text of the abdominal aorta bifurcating into two identical iliacs
/// under the synthetic half-sine inflow.
std::string_view aortic_bifurcation_text();
Network aortic_bifurcation();

}  // namespace vascflow
