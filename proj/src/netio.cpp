#include "vascflow/netio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "vascflow/benchmarks.hpp"
#include "vascflow/errors.hpp"

namespace vascflow {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Record {
  std::string section;
  int line = 0;
  std::map<std::string, Entry> keys;

  bool has(const std::string& k) const { return keys.count(k) != 0; }

  const Entry& entry(const std::string& k) {
    auto it = keys.find(k);
    if (it == keys.end()) throw ParseError("[" + section + "] record is missing key '" + k + "'", line);
    it->second.used = true;
    return it->second;
  }

  std::string text(const std::string& k) { return entry(k).value; }

  double number(const std::string& k) {
    const auto& e = entry(k);
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size() || !std::isfinite(v)) throw std::invalid_argument(k);
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("key '" + k + "': '" + e.value + "' is not a finite number", e.line);
    }
  }

  double number_or(const std::string& k, double fallback) { return has(k) ? number(k) : fallback; }

  void reject_unused() const {
    for (const auto& [k, e] : keys) {
      if (!e.used) throw ParseError("unknown key '" + k + "' in [" + section + "] record", e.line);
    }
  }
};

std::vector<Record> tokenize(std::string_view text) {
  std::vector<Record> records;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("malformed section header '" + line + "'", line_no);
      const std::string name = lower(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string> known{"fluid", "vessel", "junction", "inflow", "terminal"};
      if (!known.count(name)) throw ParseError("unknown section [" + name + "]", line_no);
      records.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value', got '" + line + "'", line_no);
    if (records.empty()) throw ParseError("key outside of any section", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("key '" + key + "' has no value", line_no);
    if (!records.back().keys.emplace(key, Entry{value, line_no, false}).second) {
      throw ParseError("duplicate key '" + key + "'", line_no);
    }
  }
  return records;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t vessel_ref(const Network& net, Record& r, const std::string& key) {
  const auto& e = r.entry(key);
  if (auto i = net.find(e.value)) return *i;
  throw ParseError("unknown vessel '" + e.value + "'", e.line);
}

WaveformSeries parse_inline_samples(const Entry& e, double period) {
  std::vector<double> t;
  std::vector<double> q;
  for (const auto& pair : split_list(e.value, ';')) {
    std::istringstream in(pair);
    double a = 0.0;
    double b = 0.0;
    std::string rest;
    if (!(in >> a >> b) || (in >> rest)) throw ParseError("malformed inline sample '" + pair + "'", e.line);
    t.push_back(a);
    q.push_back(b);
  }
  try {
    return WaveformSeries(std::move(t), std::move(q), period);
  } catch (const Error& err) {
    throw ParseError(err.what(), e.line);
  }
}

}  // namespace

Network parse_network(std::string_view text, const std::filesystem::path& base_dir) {
  auto records = tokenize(text);
  if (records.empty()) throw ParseError("network file is empty", 0);

  Network net;
  int fluid_records = 0;
  for (auto& r : records) {
    if (r.section != "fluid") continue;
    if (++fluid_records > 1) throw ParseError("more than one [fluid] record", r.line);
    net.fluid.rho = r.number_or("rho", net.fluid.rho);
    net.fluid.mu = r.number_or("mu", net.fluid.mu);
    net.fluid.zeta = r.number_or("zeta", net.fluid.zeta);
    net.p_diastolic = r.number_or("p_diastolic", 0.0);
    net.p_ext = r.number_or("p_ext", 0.0);
    net.p_init = r.number_or("p_init", 0.0);
    r.reject_unused();
    try {
      validate(net.fluid);
    } catch (const Error& e) {
      throw ParseError(e.what(), r.line);
    }
  }

  for (auto& r : records) {
    if (r.section != "vessel") continue;
    VesselSpec v;
    VesselInput input;
    v.id = r.text("id");
    if (net.find(v.id)) throw ParseError("duplicate vessel id '" + v.id + "'", r.keys.at("id").line);
    v.length = r.number("length");
    v.fluid = net.fluid;
    auto& w = v.wall;
    const int geometry = static_cast<int>(r.has("radius")) + static_cast<int>(r.has("area")) +
                         static_cast<int>(r.has("radius_in") || r.has("radius_out"));
    if (geometry != 1) throw ParseError("vessel '" + v.id + "' needs exactly one of radius, area, radius_in/radius_out", r.line);
    double r0 = 0.0;
    if (r.has("radius")) {
      r0 = r.number("radius");
      w.A0 = std::numbers::pi * r0 * r0;
    } else if (r.has("area")) {
      w.A0 = r.number("area");
      r0 = std::sqrt(w.A0 / std::numbers::pi);
    } else {
      r0 = 0.5 * (r.number("radius_in") + r.number("radius_out"));
      w.A0 = std::numbers::pi * r0 * r0;
    }
    if (!(r0 > 0.0)) throw ParseError("vessel '" + v.id + "' has a non-positive radius", r.line);
    if (r.has("thickness")) {
      if (lower(r.keys.at("thickness").value) == "adan") {
        r.entry("thickness");
        w.h0 = adan_wall_thickness(r0);
        input.adan_thickness = true;
      } else {
        w.h0 = r.number("thickness");
      }
    }
    w.E = r.number_or("E", 0.0);
    w.nu = r.number_or("nu", 0.5);
    w.m = r.number_or("m", 0.5);
    w.n = r.number_or("n", 0.0);
    w.P0 = r.number_or("P0", net.p_diastolic);
    w.p_ext = net.p_ext;
    try {
      if (r.has("stiffness")) {
        w.K = r.number("stiffness");
        input.stiffness_given = true;
      } else {
        if (!r.has("thickness") || !r.has("E")) {
          throw ParseError("vessel '" + v.id + "' needs thickness and E, or stiffness", r.line);
        }
        w.K = arterial_stiffness(w);
      }
      validate(v);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("vessel '" + v.id + "': " + e.what(), r.line);
    }
    r.reject_unused();
    net.vessels.push_back(std::move(v));
    net.inputs.push_back(input);
  }
  if (net.vessels.empty()) throw ParseError("network defines no vessels", 0);

  int inflow_records = 0;
  for (auto& r : records) {
    if (r.section == "junction") {
      Junction j;
      j.parent = vessel_ref(net, r, "parent");
      const auto& e = r.entry("daughters");
      for (const auto& name : split_list(e.value, ',')) {
        const auto d = net.find(name);
        if (!d) throw ParseError("unknown vessel '" + name + "'", e.line);
        j.daughters.push_back(*d);
      }
      if (j.daughters.empty()) throw ParseError("junction has no daughters", e.line);
      r.reject_unused();
      net.junctions.push_back(std::move(j));
    } else if (r.section == "terminal") {
      Terminal t;
      t.vessel = vessel_ref(net, r, "vessel");
      const std::string type = lower(r.text("type"));
      if (type == "rcr") {
        t.kind = TerminalKind::rcr;
        t.R1 = r.number("R1");
        t.C = r.number("C");
        t.R2 = r.number("R2");
      } else if (type == "r") {
        t.kind = TerminalKind::resistance;
        t.R1 = r.number("R");
      } else {
        throw ParseError("terminal type must be RCR or R", r.keys.at("type").line);
      }
      t.Pv = r.number_or("Pv", 0.0);
      try {
        validate(t);
      } catch (const Error& e) {
        throw ParseError(e.what(), r.line);
      }
      r.reject_unused();
      net.terminals.push_back(t);
    } else if (r.section == "inflow") {
      if (++inflow_records > 1) throw ParseError("more than one [inflow] record", r.line);
      net.inflow.vessel = vessel_ref(net, r, "vessel");
      const auto& e = r.entry("waveform");
      const std::string kind = lower(e.value);
      try {
        if (kind == "synthetic") {
          SyntheticInflow s;
          s.period = r.number_or("T0", s.period);
          s.systole_fraction = r.number_or("systole_fraction", s.systole_fraction);
          s.q_max = r.number_or("q_max", s.q_max);
          net.inflow.waveform = synthetic_inflow(s);
          net.inflow.synthetic = s;
          net.inflow.source = "synthetic";
        } else if (kind == "inline") {
          const double period = r.number("period");
          net.inflow.waveform = parse_inline_samples(r.entry("samples"), period);
          net.inflow.source = "inline";
        } else {
          std::optional<double> period;
          if (r.has("period")) period = r.number("period");
          std::filesystem::path p(e.value);
          if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
          net.inflow.waveform = load_waveform(p, period);
          net.inflow.source = p.string();
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError(err.what(), e.line);
      }
      r.reject_unused();
    }
  }
  if (inflow_records == 0) throw ParseError("network defines no [inflow] record", 0);

  try {
    validate_topology(net);
    compute_initial_areas(net);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return net;
}

std::string serialize_network(const Network& net) {
  std::ostringstream os;
  os << "[fluid]\n"
     << "rho = " << fmt17(net.fluid.rho) << "\n"
     << "mu = " << fmt17(net.fluid.mu) << "\n"
     << "zeta = " << fmt17(net.fluid.zeta) << "\n"
     << "p_diastolic = " << fmt17(net.p_diastolic) << "\n"
     << "p_ext = " << fmt17(net.p_ext) << "\n"
     << "p_init = " << fmt17(net.p_init) << "\n";
  for (const auto& v : net.vessels) {
    const auto& w = v.wall;
    os << "\n[vessel]\n"
       << "id = " << v.id << "\n"
       << "length = " << fmt17(v.length) << "\n"
       << "area = " << fmt17(w.A0) << "\n"
       << "thickness = " << fmt17(w.h0) << "\n"
       << "E = " << fmt17(w.E) << "\n"
       << "nu = " << fmt17(w.nu) << "\n"
       << "m = " << fmt17(w.m) << "\n"
       << "n = " << fmt17(w.n) << "\n"
       << "P0 = " << fmt17(w.P0) << "\n"
       << "stiffness = " << fmt17(w.K) << "\n";
  }
  for (const auto& j : net.junctions) {
    os << "\n[junction]\nparent = " << net.vessels[j.parent].id << "\ndaughters = ";
    for (std::size_t k = 0; k < j.daughters.size(); ++k) os << (k ? ", " : "") << net.vessels[j.daughters[k]].id;
    os << "\n";
  }
  os << "\n[inflow]\nvessel = " << net.vessels[net.inflow.vessel].id << "\n";
  if (net.inflow.synthetic) {
    const auto& s = *net.inflow.synthetic;
    os << "waveform = synthetic\n"
       << "T0 = " << fmt17(s.period) << "\n"
       << "systole_fraction = " << fmt17(s.systole_fraction) << "\n"
       << "q_max = " << fmt17(s.q_max) << "\n";
  } else {
    const auto& w = net.inflow.waveform;
    os << "waveform = inline\nperiod = " << fmt17(w.period()) << "\nsamples = ";
    for (std::size_t i = 0; i < w.times().size(); ++i) {
      os << (i ? "; " : "") << fmt17(w.times()[i]) << " " << fmt17(w.values()[i]);
    }
    os << "\n";
  }
  for (const auto& t : net.terminals) {
    os << "\n[terminal]\nvessel = " << net.vessels[t.vessel].id << "\n";
    if (t.kind == TerminalKind::rcr) {
      os << "type = RCR\nR1 = " << fmt17(t.R1) << "\nC = " << fmt17(t.C) << "\nR2 = " << fmt17(t.R2) << "\n";
    } else {
      os << "type = R\nR = " << fmt17(t.R1) << "\n";
    }
    os << "Pv = " << fmt17(t.Pv) << "\n";
  }
  return os.str();
}

Network load_network(const std::string& path_or_name) {
  if (path_or_name == "aortic_bif") return aortic_bifurcation();
  std::ifstream in(path_or_name);
  if (!in) throw IoError("cannot open network file '" + path_or_name + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path p(path_or_name);
  try {
    return parse_network(buf.str(), p.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path_or_name + ": " + e.what(), 0);
  }
}

WaveformSeries parse_waveform(std::string_view text, std::optional<double> period) {
  std::vector<double> t;
  std::vector<double> q;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool first_content = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    for (auto& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest)) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      throw ParseError("expected two numeric columns (t, Q)", line_no);
    }
    first_content = false;
    if (!t.empty() && !(a > t.back())) throw ParseError("waveform times must be strictly increasing", line_no);
    if (period && a > *period * (1.0 + 1e-12)) throw ParseError("waveform time beyond the period", line_no);
    t.push_back(a);
    q.push_back(b);
  }
  if (t.size() < 2) throw ParseError("waveform needs at least two samples", line_no);
  const double T0 = period ? *period : t.back();
  try {
    return WaveformSeries(std::move(t), std::move(q), T0);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

WaveformSeries load_waveform(const std::filesystem::path& path, std::optional<double> period) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open waveform file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_waveform(buf.str(), period);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_series(const std::filesystem::path& path, const VesselSeries& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "t,P,Q,A\n" << std::scientific << std::setprecision(9);
  for (std::size_t i = 0; i < s.size(); ++i) out << s.t[i] << ',' << s.P[i] << ',' << s.Q[i] << ',' << s.A[i] << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

VesselSeries read_series(const std::filesystem::path& path, std::string id) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open series file '" + path.string() + "'");
  VesselSeries s;
  s.id = id.empty() ? path.stem().string() : std::move(id);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line) || trim(line) != "t,P,Q,A") {
    throw ParseError(path.string() + ": expected header t,P,Q,A", 1);
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split_list(line, ',');
    if (cols.size() != 4) throw ParseError(path.string() + ": expected 4 columns", line_no);
    double v[4];
    for (int k = 0; k < 4; ++k) {
      try {
        v[k] = std::stod(cols[static_cast<std::size_t>(k)]);
      } catch (const std::logic_error&) {
        throw ParseError(path.string() + ": non-numeric value '" + cols[static_cast<std::size_t>(k)] + "'", line_no);
      }
    }
    s.push(v[0], v[1], v[2], v[3]);
  }
  return s;
}

void write_error_table(const std::filesystem::path& path, const std::vector<ErrorRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "vessel,model,eP_RMS,eQ_RMS,eP_SYS,eQ_SYS,eP_DIAS,eQ_DIAS\n" << std::scientific << std::setprecision(9);
  for (const auto& r : rows) {
    const auto& e = r.report;
    out << r.vessel << ',' << r.model << ',' << 100.0 * e.P_rms << ',' << 100.0 * e.Q_rms << ',' << 100.0 * e.P_sys
        << ',' << 100.0 * e.Q_sys << ',' << 100.0 * e.P_dias << ',' << 100.0 * e.Q_dias << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace vascflow
