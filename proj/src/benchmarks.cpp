#include "vascflow/benchmarks.hpp"

#include "vascflow/netio.hpp"

namespace vascflow {

std::string_view aortic_bifurcation_text() {
  return R"(# Abdominal aorta and iliac bifurcation
[fluid]
rho = 1.06
mu = 0.04
zeta = 9
p_diastolic = 94666.66666666667
p_ext = 0
p_init = 0

[vessel]
id = aorta
length = 8.6
radius = 0.86
thickness = 0.1032
E = 5.0e6
nu = 0.5

[vessel]
id = iliac_left
length = 8.5
radius = 0.60
thickness = 0.072
E = 7.0e6
nu = 0.5

[vessel]
id = iliac_right
length = 8.5
radius = 0.60
thickness = 0.072
E = 7.0e6
nu = 0.5

[junction]
parent = aorta
daughters = iliac_left, iliac_right

[inflow]
vessel = aorta
waveform = synthetic
T0 = 1.1
systole_fraction = 0.3
q_max = 70

[terminal]
vessel = iliac_left
type = RCR
R1 = 6.8123e2
C = 3.6664e-5
R2 = 3.1013e4
Pv = 0

[terminal]
vessel = iliac_right
type = RCR
R1 = 6.8123e2
C = 3.6664e-5
R2 = 3.1013e4
Pv = 0
)";
}

Network aortic_bifurcation() { return parse_network(aortic_bifurcation_text()); }

}  // namespace vascflow
