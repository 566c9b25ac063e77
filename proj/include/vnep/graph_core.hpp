#pragma once

// Data model for the offline virtual network embedding problem: substrates
// with typed node resources, requests with placement/routing restrictions,
// valid mappings and the allocations they induce.
//
// External string ids are mapped to dense indices ordered lexicographically by
// id. Everything below is immutable after construction.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vnep {

/// Absolute tolerance used for every capacity/feasibility comparison.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Thrown for structurally malformed instances (duplicate or unknown ids).
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain directed (multi)graph over dense node indices. Used for request
/// topologies and for the graph gadgets the extraction module works on.
struct Digraph {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> arcs;

  int num_nodes() const { return static_cast<int>(names.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  std::optional<int> find(std::string_view name) const;
  // Weak connectivity of the undirected interpretation. The empty graph
  // counts as connected.
  bool weakly_connected() const;
};

class Substrate {
 public:
  struct NodeResource {
    int type;
    int node;
    double capacity;
    double cost;
  };
  struct Edge {
    int tail;
    int head;
    double capacity;
    double cost;
  };

  int num_nodes() const { return static_cast<int>(node_ids_.size()); }
  const std::string& node_id(int u) const { return node_ids_.at(u); }
  std::optional<int> find_node(std::string_view id) const;

  int num_types() const { return static_cast<int>(type_ids_.size()); }
  const std::string& type_id(int t) const { return type_ids_.at(t); }
  std::optional<int> find_type(std::string_view id) const;

  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> find_edge(int tail, int head) const;
  // Edge indices sorted ascending (equivalently by the opposite endpoint).
  const std::vector<int>& out_edges(int u) const { return out_edges_.at(u); }
  const std::vector<int>& in_edges(int u) const { return in_edges_.at(u); }

  const std::vector<NodeResource>& node_resources() const { return node_resources_; }
  // -1 when node u does not offer type t.
  int node_resource_index(int type, int node) const;
  // Nodes offering type t, ascending.
  const std::vector<int>& typed_nodes(int type) const { return typed_nodes_.at(type); }

  // Resource ids: node resources first (sorted by (type, node)), then edges.
  int num_node_resources() const { return static_cast<int>(node_resources_.size()); }
  int num_resources() const { return num_node_resources() + num_edges(); }
  int edge_resource(int edge) const { return num_node_resources() + edge; }
  bool is_node_resource(int resource) const { return resource < num_node_resources(); }
  double resource_capacity(int resource) const;
  double resource_cost(int resource) const;
  // Human readable "(type,node)" or "(tail,head)".
  std::string resource_label(int resource) const;

 private:
  friend class SubstrateBuilder;
  std::vector<std::string> node_ids_;
  std::vector<std::string> type_ids_;
  std::vector<Edge> edges_;
  std::vector<NodeResource> node_resources_;
  std::vector<std::vector<int>> resource_lookup_;  // [type][node]
  std::vector<std::vector<int>> typed_nodes_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
};

class SubstrateBuilder {
 public:
  SubstrateBuilder& add_node(std::string id);
  SubstrateBuilder& add_node_type(std::string node, std::string type, double capacity, double cost);
  SubstrateBuilder& add_edge(std::string tail, std::string head, double capacity, double cost);
  // Throws InstanceError on duplicate ids or edges with unknown endpoints.
  Substrate build() const;

 private:
  struct TypeEntry {
    std::string node, type;
    double capacity, cost;
  };
  struct EdgeEntry {
    std::string tail, head;
    double capacity, cost;
  };
  std::vector<std::string> nodes_;
  std::vector<TypeEntry> types_;
  std::vector<EdgeEntry> edges_;
};

class Request {
 public:
  struct Node {
    int type;
    double demand;
    std::vector<int> allowed;  // substrate nodes, ascending
  };
  struct Edge {
    int tail;
    int head;
    double demand;
    std::vector<int> allowed;  // substrate edges, ascending
  };

  const std::string& id() const { return id_; }
  double profit() const { return profit_; }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::string& node_id(int i) const { return topology_.names.at(i); }
  std::optional<int> find_node(std::string_view id) const { return topology_.find(id); }
  const Node& node(int i) const { return nodes_.at(i); }
  const std::vector<Node>& nodes() const { return nodes_; }

  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> find_edge(int tail, int head) const;
  std::string edge_label(int e) const;

  bool allows_node(int i, int u) const;
  bool allows_edge(int e, int substrate_edge) const;

  // Node and arc indices coincide with the request's node and edge indices.
  const Digraph& topology() const { return topology_; }

 private:
  friend class RequestBuilder;
  std::string id_;
  double profit_ = 0.0;
  Digraph topology_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

class RequestBuilder {
 public:
  RequestBuilder(const Substrate& substrate, std::string id, double profit);

  // Omitted allowed sets default to every capacity-sufficient node of the
  // node's type (resp. every capacity-sufficient substrate edge).
  RequestBuilder& add_node(std::string id, std::string type, double demand,
                           std::optional<std::vector<std::string>> allowed = std::nullopt);
  RequestBuilder& add_edge(std::string tail, std::string head, double demand,
                           std::optional<std::vector<std::pair<std::string, std::string>>> allowed =
                               std::nullopt);
  // Throws InstanceError on duplicate or unknown ids.
  Request build() const;

 private:
  struct NodeEntry {
    std::string id, type;
    double demand;
    std::optional<std::vector<std::string>> allowed;
  };
  struct EdgeEntry {
    std::string tail, head;
    double demand;
    std::optional<std::vector<std::pair<std::string, std::string>>> allowed;
  };
  const Substrate* substrate_;
  std::string id_;
  double profit_;
  std::vector<NodeEntry> nodes_;
  std::vector<EdgeEntry> edges_;
};

struct Instance {
  Substrate substrate;
  std::vector<Request> requests;  // sorted by request id
};

/// Node map plus one substrate path (edge indices, in order) per request edge.
/// An empty node entry is encoded as -1.
struct Mapping {
  std::vector<int> nodes;
  std::vector<std::vector<int>> edges;

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend auto operator<=>(const Mapping&, const Mapping&) = default;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

struct MappingCheck {
  bool valid = false;
  std::string violation;  // first violation, empty when valid
};

/// Per-resource allocation, indexed by substrate resource id.
struct AllocationVector {
  std::vector<double> values;

  double operator[](int resource) const { return values[resource]; }
  double& operator[](int resource) { return values[resource]; }
  int size() const { return static_cast<int>(values.size()); }
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<double> utilization;  // load / capacity per resource
  double max_node_utilization = 0.0;
  double max_edge_utilization = 0.0;
};

/// d_max and the safe upper bound on A_max, per request and resource.
struct ResourceStats {
  std::vector<std::vector<double>> d_max;        // [request][resource]
  std::vector<std::vector<double>> a_max_upper;  // [request][resource]
};

ValidationReport validate_instance(const Substrate& substrate, std::span<const Request> requests);

MappingCheck check_valid_mapping(const Substrate& substrate, const Request& request,
                                 const Mapping& mapping);

/// Throws std::invalid_argument for invalid mappings.
AllocationVector compute_allocations(const Substrate& substrate, const Request& request,
                                     const Mapping& mapping);

struct PlacedMapping {
  const Request* request;
  const Mapping* mapping;
};

/// Feasibility of a collection with node slack beta and edge slack gamma.
FeasibilityReport collection_feasible(const Substrate& substrate,
                                      std::span<const PlacedMapping> mappings,
                                      double node_slack = 1.0, double edge_slack = 1.0);

double mapping_cost(const Substrate& substrate, const Request& request, const Mapping& mapping);

ResourceStats resource_stats(const Substrate& substrate, std::span<const Request> requests);

}  // namespace vnep
