#include "vascflow/network.hpp"

#include <set>

#include "vascflow/errors.hpp"

namespace vascflow {

void validate(const Terminal& t) {
  if (t.kind == TerminalKind::rcr) {
    if (!(t.C > 0.0)) throw ConfigError("RCR terminal needs C > 0");
    if (!(t.R2 > 0.0)) throw ConfigError("RCR terminal needs R2 > 0");
    if (!(t.R1 >= 0.0)) throw ConfigError("RCR terminal needs R1 >= 0");
  } else if (!(t.R1 > 0.0)) {
    throw ConfigError("resistance terminal needs R > 0");
  }
}

std::optional<std::size_t> Network::find(std::string_view id) const {
  for (std::size_t i = 0; i < vessels.size(); ++i) {
    if (vessels[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Network::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw ConfigError("unknown vessel id '" + std::string(id) + "'");
}

const Junction* Network::junction_at_outlet(std::size_t i) const {
  for (const auto& j : junctions) {
    if (j.parent == i) return &j;
  }
  return nullptr;
}

const Junction* Network::junction_at_inlet(std::size_t i) const {
  for (const auto& j : junctions) {
    for (auto d : j.daughters) {
      if (d == i) return &j;
    }
  }
  return nullptr;
}

const Terminal* Network::terminal_of(std::size_t i) const {
  for (const auto& t : terminals) {
    if (t.vessel == i) return &t;
  }
  return nullptr;
}

void validate_topology(const Network& net) {
  const std::size_t n = net.vessels.size();
  if (n == 0) throw ConfigError("network has no vessels");

  std::set<std::string> ids;
  for (const auto& v : net.vessels) {
    if (v.id.empty()) throw ConfigError("vessel with empty id");
    if (!ids.insert(v.id).second) throw ConfigError("duplicate vessel id '" + v.id + "'");
  }
  if (net.inflow.vessel >= n) throw ConfigError("inflow references an unknown vessel");

  std::vector<int> left_uses(n, 0);
  std::vector<int> right_uses(n, 0);
  std::vector<std::size_t> parent_of(n, n);
  left_uses[net.inflow.vessel]++;
  for (const auto& j : net.junctions) {
    if (j.parent >= n) throw ConfigError("junction references an unknown parent vessel");
    if (j.daughters.empty()) throw ConfigError("junction at '" + net.vessels[j.parent].id + "' has no daughters");
    right_uses[j.parent]++;
    for (auto d : j.daughters) {
      if (d >= n) throw ConfigError("junction references an unknown daughter vessel");
      if (d == j.parent) throw ConfigError("vessel '" + net.vessels[d].id + "' joins itself");
      left_uses[d]++;
      parent_of[d] = j.parent;
    }
  }
  for (const auto& t : net.terminals) {
    if (t.vessel >= n) throw ConfigError("terminal references an unknown vessel");
    right_uses[t.vessel]++;
    validate(t);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& id = net.vessels[i].id;
    if (left_uses[i] == 0) throw ConfigError("dangling inlet of vessel '" + id + "'");
    if (left_uses[i] > 1) throw ConfigError("inlet of vessel '" + id + "' is attached more than once");
    if (right_uses[i] == 0) throw ConfigError("dangling outlet of vessel '" + id + "'");
    if (right_uses[i] > 1) throw ConfigError("outlet of vessel '" + id + "' is attached more than once");
  }
  // Every vessel must reach the root by following parents.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    std::size_t steps = 0;
    while (cur != net.inflow.vessel) {
      cur = parent_of[cur];
      if (cur == n || ++steps > n) {
        throw ConfigError("network is not a tree rooted at the inflow (cycle through '" + net.vessels[i].id + "')");
      }
    }
  }
}

void compute_initial_areas(Network& net) {
  net.initial_area.resize(net.vessels.size());
  for (std::size_t i = 0; i < net.vessels.size(); ++i) {
    net.initial_area[i] = tube_law_area(net.p_init, net.vessels[i].wall);
  }
}

}  // namespace vascflow
