#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "vascflow/benchmarks.hpp"
#include "vascflow/errors.hpp"
#include "vascflow/netio.hpp"
#include "vascflow/waveform.hpp"

using namespace vascflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vascflow_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_error_line(std::string_view text) {
  try {
    parse_network(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

constexpr std::string_view kSingle = R"(
[fluid]
rho = 1.06
mu = 0.04
p_diastolic = 1e5

[vessel]
id = tube
length = 10
radius = 0.5
thickness = 0.05
E = 4e6

[inflow]
vessel = tube
waveform = synthetic
T0 = 1.0
systole_fraction = 0.25
q_max = 20

[terminal]
vessel = tube
type = R
R = 5000
)";

}  // namespace

TEST_SUITE("waveform") {
  TEST_CASE("interpolation and periodic extension") {
    const WaveformSeries w({0.0, 0.2, 0.5}, {1.0, 3.0, -1.0}, 1.0);
    CHECK(w.evaluate(0.2) == doctest::Approx(3.0));
    CHECK(w.evaluate(0.1) == doctest::Approx(2.0));
    CHECK(w.evaluate(0.35) == doctest::Approx(1.0));
    CHECK(w.evaluate(1.0 + 0.1) == doctest::Approx(w.evaluate(0.1)));
    CHECK(w.evaluate(7.0 + 0.35) == doctest::Approx(w.evaluate(0.35)));
    CHECK(w.evaluate(0.75) == doctest::Approx(0.0));
  }

  TEST_CASE("exact integral of the interpolant") {
    const WaveformSeries w({0.0, 0.5}, {2.0, 2.0}, 1.0);
    CHECK(w.integral() == doctest::Approx(2.0));
    const WaveformSeries tri({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}, 1.0);
    CHECK(tri.integral() == doctest::Approx(0.5));
    CHECK(tri.mean() == doctest::Approx(0.5));
  }

  TEST_CASE("rejects malformed samples") {
    CHECK_THROWS(WaveformSeries({0.0, 0.3, 0.2}, {1.0, 1.0, 1.0}, 1.0));
    CHECK_THROWS(WaveformSeries({0.0, 1.5}, {1.0, 1.0}, 1.0));
    CHECK_THROWS(WaveformSeries({0.1, 0.5}, {1.0, 1.0}, 1.0));
    CHECK_THROWS(WaveformSeries({0.0, 0.5}, {1.0, NAN}, 1.0));
  }

  TEST_CASE("synthetic half-sine inflow") {
    const auto w = synthetic_inflow(1.1, 0.3, 70.0);
    CHECK(w.period() == doctest::Approx(1.1));
    CHECK(w.evaluate(0.5 * 0.3 * 1.1) == doctest::Approx(70.0).epsilon(1e-9));
    CHECK(w.evaluate(0.6) == 0.0);
    CHECK(w.evaluate(1.05) == 0.0);
    CHECK(w.mean() == doctest::Approx(70.0 * 2.0 * 0.3 / std::numbers::pi).epsilon(1e-5));
    CHECK(w.mean() == doctest::Approx(13.37).epsilon(1e-3));
    for (double t = 0.0; t < 0.33; t += 0.0137) {
      CHECK(w.evaluate(t) == doctest::Approx(70.0 * std::sin(std::numbers::pi * t / 0.33)).epsilon(1e-5));
    }
  }

  TEST_CASE("waveform CSV") {
    const auto w = parse_waveform("t,Q\n0,1\n0.5,3\n1.0,1\n");
    CHECK(w.period() == doctest::Approx(1.0));
    CHECK(w.evaluate(0.25) == doctest::Approx(2.0));
    const auto p = parse_waveform("0,1\n0.5,3\n", 2.0);
    CHECK(p.period() == doctest::Approx(2.0));
    CHECK_THROWS_AS(parse_waveform("0,1\n0.5,3\n0.4,2\n"), ParseError);
    CHECK_THROWS_AS(parse_waveform("0,1\n2.5,3\n", 2.0), ParseError);
    CHECK_THROWS_AS(load_waveform("/nonexistent/inflow.csv"), IoError);
  }
}

TEST_SUITE("netio") {
  TEST_CASE("bundled aortic bifurcation") {
    const auto net = aortic_bifurcation();
    REQUIRE(net.size() == 3);
    CHECK(net.junctions.size() == 1);
    CHECK(net.junctions[0].daughters.size() == 2);
    CHECK(net.terminals.size() == 2);
    CHECK(net.initial_area[0] == doctest::Approx(1.8062).epsilon(5e-4));
    CHECK(net.initial_area[1] == doctest::Approx(0.94789).epsilon(5e-4));
    CHECK(net.initial_area[2] == doctest::Approx(0.94789).epsilon(5e-4));
    CHECK(net.p_diastolic == 94666.66666666667);

    const auto& aorta = net.vessels[0];
    CHECK(aorta.id == "aorta");
    CHECK(aorta.length == 8.6);
    CHECK(aorta.wall.A0 == std::numbers::pi * 0.86 * 0.86);
    CHECK(aorta.wall.h0 == 0.1032);
    CHECK(aorta.wall.E == 5e6);
    CHECK(aorta.wall.P0 == 94666.66666666667);
    for (std::size_t i : {1u, 2u}) {
      CHECK(net.vessels[i].length == 8.5);
      CHECK(net.vessels[i].wall.A0 == std::numbers::pi * 0.6 * 0.6);
      CHECK(net.vessels[i].wall.h0 == 0.072);
      CHECK(net.vessels[i].wall.E == 7e6);
    }
    for (const auto& t : net.terminals) {
      CHECK(t.kind == TerminalKind::rcr);
      CHECK(t.R1 == 6.8123e2);
      CHECK(t.C == 3.6664e-5);
      CHECK(t.R2 == 3.1013e4);
      CHECK(t.Pv == 0.0);
    }
    CHECK(net.inflow.synthetic.has_value());
    CHECK(net.inflow.waveform.period() == 1.1);
  }

  TEST_CASE("bundled data file matches the builtin") {
    const fs::path file = fs::path(VASCFLOW_SOURCE_DIR) / "data" / "aortic_bifurcation.net";
    REQUIRE(fs::exists(file));
    const auto a = load_network(file.string());
    const auto b = load_network("aortic_bif");
    CHECK(serialize_network(a) == serialize_network(b));
  }

  TEST_CASE("serialize then parse is the identity") {
    for (const auto& net : {aortic_bifurcation(), parse_network(kSingle)}) {
      const auto back = parse_network(serialize_network(net));
      REQUIRE(back.size() == net.size());
      CHECK(back.fluid.rho == net.fluid.rho);
      CHECK(back.fluid.mu == net.fluid.mu);
      CHECK(back.fluid.zeta == net.fluid.zeta);
      CHECK(back.p_diastolic == net.p_diastolic);
      for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& u = net.vessels[i];
        const auto& v = back.vessels[i];
        CHECK(u.id == v.id);
        CHECK(u.length == v.length);
        CHECK(u.wall.A0 == v.wall.A0);
        CHECK(u.wall.K == v.wall.K);
        CHECK(u.wall.h0 == v.wall.h0);
        CHECK(u.wall.E == v.wall.E);
        CHECK(u.wall.m == v.wall.m);
        CHECK(u.wall.n == v.wall.n);
        CHECK(u.wall.P0 == v.wall.P0);
        CHECK(net.initial_area[i] == back.initial_area[i]);
      }
      REQUIRE(back.terminals.size() == net.terminals.size());
      for (std::size_t k = 0; k < net.terminals.size(); ++k) {
        CHECK(back.terminals[k].kind == net.terminals[k].kind);
        CHECK(back.terminals[k].R1 == net.terminals[k].R1);
        CHECK(back.terminals[k].C == net.terminals[k].C);
        CHECK(back.terminals[k].R2 == net.terminals[k].R2);
        CHECK(back.terminals[k].Pv == net.terminals[k].Pv);
      }
      CHECK(back.inflow.vessel == net.inflow.vessel);
      CHECK(back.inflow.waveform.period() == net.inflow.waveform.period());
      CHECK(back.inflow.waveform.integral() == doctest::Approx(net.inflow.waveform.integral()).epsilon(1e-14));
    }
  }

  TEST_CASE("inline waveform round trip") {
    std::string text(kSingle);
    const std::string synth = "waveform = synthetic\nT0 = 1.0\nsystole_fraction = 0.25\nq_max = 20\n";
    text.replace(text.find(synth), synth.size(), "waveform = inline\nperiod = 1.0\nsamples = 0 0; 0.2 5; 0.4 0\n");
    const auto net = parse_network(text);
    CHECK(net.inflow.waveform.evaluate(0.1) == doctest::Approx(2.5));
    const auto back = parse_network(serialize_network(net));
    CHECK(back.inflow.waveform.evaluate(0.1) == doctest::Approx(2.5));
    CHECK(back.inflow.waveform.period() == 1.0);
  }

  TEST_CASE("single vessel network") {
    const auto net = parse_network(kSingle);
    REQUIRE(net.size() == 1);
    CHECK(net.terminals[0].kind == TerminalKind::resistance);
    CHECK(net.terminals[0].R1 == 5000.0);
    CHECK(net.vessels[0].wall.A0 == doctest::Approx(std::numbers::pi * 0.25));
    CHECK(net.vessels[0].wall.P0 == 1e5);
  }

  TEST_CASE("schema errors carry line numbers") {
    CHECK_THROWS_AS(parse_network(""), ParseError);
    CHECK_THROWS_AS(parse_network("# only a comment\n"), ParseError);
    CHECK(parse_error_line("[fluid]\nrho = 1.06\nbogus = 3\n") == 3);
    CHECK(parse_error_line("[fluid]\nrho = abc\n") == 2);
    CHECK(parse_error_line("[planet]\n") == 1);
    CHECK(parse_error_line("rho = 1\n") == 1);
    CHECK(parse_error_line("[fluid]\nrho = 1\nrho = 2\n") == 3);
  }

  TEST_CASE("topology violations") {
    std::string dup(kSingle);
    dup += "\n[vessel]\nid = tube\nlength = 3\nradius = 0.3\nthickness = 0.03\nE = 4e6\n";
    CHECK_THROWS_AS(parse_network(dup), Error);

    std::string dangling(kSingle);
    dangling += "\n[vessel]\nid = spare\nlength = 3\nradius = 0.3\nthickness = 0.03\nE = 4e6\n";
    CHECK_THROWS_AS(parse_network(dangling), ConfigError);

    std::string unknown(kSingle);
    unknown.replace(unknown.rfind("vessel = tube"), 13, "vessel = nope");
    CHECK_THROWS_AS(parse_network(unknown), Error);
  }

  TEST_CASE("averaged radius and empirical thickness") {
    std::string text(kSingle);
    text.replace(text.find("radius = 0.5"), 12, "radius_in = 0.6\nradius_out = 0.4");
    text.replace(text.find("thickness = 0.05"), 16, "thickness = adan");
    const auto net = parse_network(text);
    CHECK(net.vessels[0].wall.A0 == doctest::Approx(std::numbers::pi * 0.25));
    CHECK(net.vessels[0].wall.h0 == doctest::Approx(adan_wall_thickness(0.5)));
    const auto back = parse_network(serialize_network(net));
    CHECK(back.vessels[0].wall.h0 == net.vessels[0].wall.h0);
  }

  TEST_CASE("missing network file names the path") {
    try {
      load_network("/nonexistent/net.txt");
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("/nonexistent/net.txt") != std::string::npos);
    }
  }

  TEST_CASE("series CSV round trip") {
    const auto dir = scratch_dir("series");
    VesselSeries s;
    s.id = "v";
    for (int i = 0; i < 50; ++i) {
      const double t = 1e-3 * i;
      s.push(t, 94666.66666666667 + 1234.56789 * std::sin(t), 1e-7 + std::cos(10.0 * t) / 3.0, 1.8062 + t / 7.0);
    }
    write_series(dir / "v.csv", s);
    const auto back = read_series(dir / "v.csv", "v");
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(back.t[i] == doctest::Approx(s.t[i]).epsilon(1e-9));
      CHECK(back.P[i] == doctest::Approx(s.P[i]).epsilon(1e-9));
      CHECK(back.Q[i] == doctest::Approx(s.Q[i]).epsilon(1e-9));
      CHECK(back.A[i] == doctest::Approx(s.A[i]).epsilon(1e-9));
    }

    write_series(dir / "empty.csv", VesselSeries{});
    CHECK(slurp(dir / "empty.csv") == "t,P,Q,A\n");
    CHECK(read_series(dir / "empty.csv").size() == 0);
    CHECK_THROWS_AS(write_series(dir / "missing" / "x.csv", s), IoError);
  }

  TEST_CASE("error table") {
    const auto dir = scratch_dir("table");
    std::vector<ErrorRow> rows;
    for (const char* v : {"aorta", "iliac"}) {
      for (const char* m : {"0D-L", "0D-NL"}) rows.push_back({v, m, {0.01, 0.02, -0.003, 0.004, 0.0, -0.001}});
    }
    write_error_table(dir / "errors.csv", rows);
    std::ifstream in(dir / "errors.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "vessel,model,eP_RMS,eQ_RMS,eP_SYS,eQ_SYS,eP_DIAS,eQ_DIAS");
    int n = 0;
    while (std::getline(in, line)) {
      if (!line.empty()) ++n;
    }
    CHECK(n == 4);
  }
}
