#include "vnep/graph_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace vnep {

namespace {

// Dense index assignment: sorted unique ids, throws on duplicates.
std::vector<std::string> sorted_unique_ids(std::vector<std::string> ids, const char* what) {
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end()) {
    throw InstanceError(std::string("duplicate ") + what + " id '" + *dup + "'");
  }
  return ids;
}

std::optional<int> index_of(const std::vector<std::string>& sorted, std::string_view id) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it == sorted.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - sorted.begin());
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::optional<int> Digraph::find(std::string_view name) const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

bool Digraph::weakly_connected() const {
  const int n = num_nodes();
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (auto [a, b] : arcs) {
    int ra = root(a), rb = root(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

// ---------------------------------------------------------------------------
// Substrate

std::optional<int> Substrate::find_node(std::string_view id) const {
  return index_of(node_ids_, id);
}

std::optional<int> Substrate::find_type(std::string_view id) const {
  return index_of(type_ids_, id);
}

std::optional<int> Substrate::find_edge(int tail, int head) const {
  if (tail < 0 || tail >= num_nodes()) return std::nullopt;
  for (int e : out_edges_[tail]) {
    if (edges_[e].head == head) return e;
  }
  return std::nullopt;
}

int Substrate::node_resource_index(int type, int node) const {
  if (type < 0 || type >= num_types() || node < 0 || node >= num_nodes()) return -1;
  return resource_lookup_[type][node];
}

double Substrate::resource_capacity(int resource) const {
  if (is_node_resource(resource)) return node_resources_.at(resource).capacity;
  return edges_.at(resource - num_node_resources()).capacity;
}

double Substrate::resource_cost(int resource) const {
  if (is_node_resource(resource)) return node_resources_.at(resource).cost;
  return edges_.at(resource - num_node_resources()).cost;
}

std::string Substrate::resource_label(int resource) const {
  if (is_node_resource(resource)) {
    const auto& nr = node_resources_.at(resource);
    return "(" + type_ids_[nr.type] + "," + node_ids_[nr.node] + ")";
  }
  const auto& e = edges_.at(resource - num_node_resources());
  return "(" + node_ids_[e.tail] + "," + node_ids_[e.head] + ")";
}

SubstrateBuilder& SubstrateBuilder::add_node(std::string id) {
  nodes_.push_back(std::move(id));
  return *this;
}

SubstrateBuilder& SubstrateBuilder::add_node_type(std::string node, std::string type,
                                                  double capacity, double cost) {
  types_.push_back({std::move(node), std::move(type), capacity, cost});
  return *this;
}

SubstrateBuilder& SubstrateBuilder::add_edge(std::string tail, std::string head, double capacity,
                                             double cost) {
  edges_.push_back({std::move(tail), std::move(head), capacity, cost});
  return *this;
}

Substrate SubstrateBuilder::build() const {
  Substrate s;
  s.node_ids_ = sorted_unique_ids(nodes_, "substrate node");
  const int n = s.num_nodes();

  std::vector<std::string> type_names;
  for (const auto& t : types_) type_names.push_back(t.type);
  std::sort(type_names.begin(), type_names.end());
  type_names.erase(std::unique(type_names.begin(), type_names.end()), type_names.end());
  s.type_ids_ = type_names;

  std::vector<Substrate::NodeResource> resources;
  std::set<std::pair<int, int>> seen_resources;
  for (const auto& t : types_) {
    auto u = index_of(s.node_ids_, t.node);
    if (!u) throw InstanceError("node type references unknown substrate node '" + t.node + "'");
    int type = *index_of(s.type_ids_, t.type);
    if (!seen_resources.insert({type, *u}).second) {
      throw InstanceError("duplicate node resource (" + t.type + "," + t.node + ")");
    }
    resources.push_back({type, *u, t.capacity, t.cost});
  }
  std::sort(resources.begin(), resources.end(), [](const auto& a, const auto& b) {
    return std::tie(a.type, a.node) < std::tie(b.type, b.node);
  });
  s.node_resources_ = resources;
  s.resource_lookup_.assign(s.num_types(), std::vector<int>(n, -1));
  s.typed_nodes_.assign(s.num_types(), {});
  for (int r = 0; r < static_cast<int>(resources.size()); ++r) {
    s.resource_lookup_[resources[r].type][resources[r].node] = r;
    s.typed_nodes_[resources[r].type].push_back(resources[r].node);
  }

  std::vector<Substrate::Edge> edges;
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& e : edges_) {
    auto t = index_of(s.node_ids_, e.tail);
    auto h = index_of(s.node_ids_, e.head);
    if (!t || !h) {
      throw InstanceError("substrate edge (" + e.tail + "," + e.head + ") has unknown endpoint");
    }
    if (!seen_edges.insert({*t, *h}).second) {
      throw InstanceError("duplicate substrate edge (" + e.tail + "," + e.head + ")");
    }
    edges.push_back({*t, *h, e.capacity, e.cost});
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  s.edges_ = edges;
  s.out_edges_.assign(n, {});
  s.in_edges_.assign(n, {});
  for (int e = 0; e < s.num_edges(); ++e) {
    s.out_edges_[edges[e].tail].push_back(e);
    s.in_edges_[edges[e].head].push_back(e);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Request

std::optional<int> Request::find_edge(int tail, int head) const {
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].tail == tail && edges_[e].head == head) return e;
  }
  return std::nullopt;
}

std::string Request::edge_label(int e) const {
  const auto& ed = edges_.at(e);
  return "(" + node_id(ed.tail) + "," + node_id(ed.head) + ")";
}

bool Request::allows_node(int i, int u) const {
  const auto& a = nodes_.at(i).allowed;
  return std::binary_search(a.begin(), a.end(), u);
}

bool Request::allows_edge(int e, int substrate_edge) const {
  const auto& a = edges_.at(e).allowed;
  return std::binary_search(a.begin(), a.end(), substrate_edge);
}

RequestBuilder::RequestBuilder(const Substrate& substrate, std::string id, double profit)
    : substrate_(&substrate), id_(std::move(id)), profit_(profit) {}

RequestBuilder& RequestBuilder::add_node(std::string id, std::string type, double demand,
                                         std::optional<std::vector<std::string>> allowed) {
  nodes_.push_back({std::move(id), std::move(type), demand, std::move(allowed)});
  return *this;
}

RequestBuilder& RequestBuilder::add_edge(
    std::string tail, std::string head, double demand,
    std::optional<std::vector<std::pair<std::string, std::string>>> allowed) {
  edges_.push_back({std::move(tail), std::move(head), demand, std::move(allowed)});
  return *this;
}

Request RequestBuilder::build() const {
  const Substrate& s = *substrate_;
  Request r;
  r.id_ = id_;
  r.profit_ = profit_;

  std::vector<std::string> ids;
  for (const auto& n : nodes_) ids.push_back(n.id);
  ids = sorted_unique_ids(ids, "request node");
  r.topology_.names = ids;
  r.nodes_.resize(ids.size());
  for (const auto& entry : nodes_) {
    int i = *index_of(ids, entry.id);
    auto type = s.find_type(entry.type);
    if (!type) {
      throw InstanceError("request '" + id_ + "' node '" + entry.id + "' has unknown type '" +
                          entry.type + "'");
    }
    Request::Node& node = r.nodes_[i];
    node.type = *type;
    node.demand = entry.demand;
    if (entry.allowed) {
      for (const auto& uid : *entry.allowed) {
        auto u = s.find_node(uid);
        if (!u) {
          throw InstanceError("request '" + id_ + "' node '" + entry.id +
                              "' allows unknown substrate node '" + uid + "'");
        }
        node.allowed.push_back(*u);
      }
    } else {
      for (int u : s.typed_nodes(*type)) {
        int res = s.node_resource_index(*type, u);
        if (s.resource_capacity(res) + kFeasibilityTolerance >= entry.demand) {
          node.allowed.push_back(u);
        }
      }
    }
    std::sort(node.allowed.begin(), node.allowed.end());
    node.allowed.erase(std::unique(node.allowed.begin(), node.allowed.end()), node.allowed.end());
  }

  std::set<std::pair<int, int>> seen;
  for (const auto& entry : edges_) {
    auto t = index_of(ids, entry.tail);
    auto h = index_of(ids, entry.head);
    if (!t || !h) {
      throw InstanceError("request '" + id_ + "' edge (" + entry.tail + "," + entry.head +
                          ") has unknown endpoint");
    }
    if (!seen.insert({*t, *h}).second) {
      throw InstanceError("request '" + id_ + "' has duplicate edge (" + entry.tail + "," +
                          entry.head + ")");
    }
    Request::Edge edge{*t, *h, entry.demand, {}};
    if (entry.allowed) {
      for (const auto& [a, b] : *entry.allowed) {
        auto u = s.find_node(a);
        auto v = s.find_node(b);
        std::optional<int> se;
        if (u && v) se = s.find_edge(*u, *v);
        if (!se) {
          throw InstanceError("request '" + id_ + "' edge (" + entry.tail + "," + entry.head +
                              ") allows unknown substrate edge (" + a + "," + b + ")");
        }
        edge.allowed.push_back(*se);
      }
    } else {
      for (int se = 0; se < s.num_edges(); ++se) {
        if (s.edge(se).capacity + kFeasibilityTolerance >= entry.demand) edge.allowed.push_back(se);
      }
    }
    std::sort(edge.allowed.begin(), edge.allowed.end());
    edge.allowed.erase(std::unique(edge.allowed.begin(), edge.allowed.end()), edge.allowed.end());
    r.edges_.push_back(std::move(edge));
  }
  std::sort(r.edges_.begin(), r.edges_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  for (const auto& e : r.edges_) r.topology_.arcs.emplace_back(e.tail, e.head);
  return r;
}

// ---------------------------------------------------------------------------
// Validation and evaluation

ValidationReport validate_instance(const Substrate& s, std::span<const Request> requests) {
  ValidationReport report;
  auto issue = [&](std::string msg) { report.issues.push_back(std::move(msg)); };

  for (const auto& nr : s.node_resources()) {
    std::string label = "(" + s.type_id(nr.type) + "," + s.node_id(nr.node) + ")";
    if (!(nr.capacity > 0)) issue("substrate node resource " + label + ": capacity must be positive");
    if (nr.cost < 0) issue("substrate node resource " + label + ": negative cost");
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& ed = s.edge(e);
    std::string label = s.resource_label(s.edge_resource(e));
    if (ed.tail == ed.head) issue("substrate edge " + label + ": self-loop");
    if (!(ed.capacity > 0)) issue("substrate edge " + label + ": capacity must be positive");
    if (ed.cost < 0) issue("substrate edge " + label + ": negative cost");
  }

  std::set<std::string> request_ids;
  for (const auto& r : requests) {
    const std::string where = "request '" + r.id() + "'";
    if (!request_ids.insert(r.id()).second) issue(where + ": duplicate request id");
    if (!(r.profit() > 0)) issue(where + ": profit must be positive");
    if (r.num_nodes() == 0) issue(where + ": no nodes");
    if (!r.topology().weakly_connected()) issue(where + ": request graph not weakly connected");
    for (int i = 0; i < r.num_nodes(); ++i) {
      const auto& node = r.node(i);
      const std::string nw = where + " node '" + r.node_id(i) + "'";
      if (node.demand < 0) issue(nw + ": negative demand");
      if (node.allowed.empty()) issue(nw + ": empty allowed set");
      for (int u : node.allowed) {
        int res = s.node_resource_index(node.type, u);
        if (res < 0) {
          issue(nw + ": allowed node '" + s.node_id(u) + "' does not offer type '" +
                s.type_id(node.type) + "'");
        } else if (s.resource_capacity(res) + kFeasibilityTolerance < node.demand) {
          issue(nw + ": capacity filter violated on '" + s.node_id(u) + "' (demand " +
                fmt_double(node.demand) + " > capacity " + fmt_double(s.resource_capacity(res)) +
                ")");
        }
      }
    }
    for (int e = 0; e < r.num_edges(); ++e) {
      const auto& edge = r.edge(e);
      const std::string ew = where + " edge " + r.edge_label(e);
      if (edge.tail == edge.head) issue(ew + ": self-loop");
      if (edge.demand < 0) issue(ew + ": negative demand");
      if (edge.allowed.empty()) issue(ew + ": empty allowed set");
      for (int se : edge.allowed) {
        if (s.edge(se).capacity + kFeasibilityTolerance < edge.demand) {
          issue(ew + ": capacity filter violated on " + s.resource_label(s.edge_resource(se)) +
                " (demand " + fmt_double(edge.demand) + " > capacity " +
                fmt_double(s.edge(se).capacity) + ")");
        }
      }
    }
  }
  return report;
}

MappingCheck check_valid_mapping(const Substrate& s, const Request& r, const Mapping& m) {
  auto fail = [](std::string why) { return MappingCheck{false, std::move(why)}; };
  if (static_cast<int>(m.nodes.size()) != r.num_nodes() ||
      static_cast<int>(m.edges.size()) != r.num_edges()) {
    return fail("incomplete mapping");
  }
  for (int i = 0; i < r.num_nodes(); ++i) {
    int u = m.nodes[i];
    if (u < 0) return fail("incomplete mapping: node '" + r.node_id(i) + "' unmapped");
    if (u >= s.num_nodes() || !r.allows_node(i, u)) {
      return fail("node '" + r.node_id(i) + "' mapped to disallowed substrate node");
    }
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    const auto& edge = r.edge(e);
    const auto& path = m.edges[e];
    int src = m.nodes[edge.tail];
    int dst = m.nodes[edge.head];
    const std::string ew = "edge " + r.edge_label(e);
    if (path.empty()) {
      if (src != dst) return fail(ew + ": empty path between distinct substrate nodes");
      continue;
    }
    int at = src;
    std::set<int> visited{src};
    for (int se : path) {
      if (se < 0 || se >= s.num_edges()) return fail(ew + ": unknown substrate edge");
      if (!r.allows_edge(e, se)) {
        return fail(ew + ": uses disallowed substrate edge " + s.resource_label(s.edge_resource(se)));
      }
      if (s.edge(se).tail != at) return fail(ew + ": path is not contiguous");
      at = s.edge(se).head;
      if (!visited.insert(at).second) return fail(ew + ": path is not simple");
    }
    if (at != dst) {
      return fail(ew + ": path ends at '" + s.node_id(at) + "' instead of '" + s.node_id(dst) +
                  "'");
    }
  }
  return {true, ""};
}

AllocationVector compute_allocations(const Substrate& s, const Request& r, const Mapping& m) {
  auto check = check_valid_mapping(s, r, m);
  if (!check.valid) throw std::invalid_argument("invalid mapping: " + check.violation);
  AllocationVector a;
  a.values.assign(s.num_resources(), 0.0);
  for (int i = 0; i < r.num_nodes(); ++i) {
    a[s.node_resource_index(r.node(i).type, m.nodes[i])] += r.node(i).demand;
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    for (int se : m.edges[e]) a[s.edge_resource(se)] += r.edge(e).demand;
  }
  return a;
}

FeasibilityReport collection_feasible(const Substrate& s, std::span<const PlacedMapping> mappings,
                                      double node_slack, double edge_slack) {
  std::vector<double> load(s.num_resources(), 0.0);
  for (const auto& pm : mappings) {
    auto a = compute_allocations(s, *pm.request, *pm.mapping);
    for (int res = 0; res < s.num_resources(); ++res) load[res] += a[res];
  }
  FeasibilityReport rep;
  rep.utilization.resize(s.num_resources());
  for (int res = 0; res < s.num_resources(); ++res) {
    double cap = s.resource_capacity(res);
    rep.utilization[res] = load[res] / cap;
    bool node = s.is_node_resource(res);
    double slack = node ? node_slack : edge_slack;
    if (load[res] > slack * cap + kFeasibilityTolerance) rep.feasible = false;
    double& mx = node ? rep.max_node_utilization : rep.max_edge_utilization;
    mx = std::max(mx, rep.utilization[res]);
  }
  return rep;
}

double mapping_cost(const Substrate& s, const Request& r, const Mapping& m) {
  auto a = compute_allocations(s, r, m);
  double cost = 0.0;
  for (int res = 0; res < s.num_resources(); ++res) cost += s.resource_cost(res) * a[res];
  return cost;
}

ResourceStats resource_stats(const Substrate& s, std::span<const Request> requests) {
  ResourceStats st;
  for (const auto& r : requests) {
    std::vector<double> dmax(s.num_resources(), 0.0), amax(s.num_resources(), 0.0);
    for (const auto& node : r.nodes()) {
      for (int u : node.allowed) {
        int res = s.node_resource_index(node.type, u);
        if (res < 0) continue;
        dmax[res] = std::max(dmax[res], node.demand);
        amax[res] += node.demand;
      }
    }
    for (const auto& edge : r.edges()) {
      for (int se : edge.allowed) {
        int res = s.edge_resource(se);
        dmax[res] = std::max(dmax[res], edge.demand);
        amax[res] += edge.demand;
      }
    }
    st.d_max.push_back(std::move(dmax));
    st.a_max_upper.push_back(std::move(amax));
  }
  return st;
}

}  // namespace vnep
