#include "vnep/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace vnep {

Instance parse_instance(const Json& doc) {
  const Json& sj = doc.at("substrate");
  SubstrateBuilder sb;
  for (const auto& node : sj.at("nodes")) {
    std::string id = node.at("id").get<std::string>();
    sb.add_node(id);
    for (const auto& t : node.value("types", Json::array())) {
      sb.add_node_type(id, t.at("type").get<std::string>(), t.at("capacity").get<double>(),
                       t.value("cost", 0.0));
    }
  }
  for (const auto& e : sj.value("edges", Json::array())) {
    sb.add_edge(e.at("tail").get<std::string>(), e.at("head").get<std::string>(),
                e.at("capacity").get<double>(), e.value("cost", 0.0));
  }
  Instance inst{sb.build(), {}};

  std::set<std::string> ids;
  for (const auto& rj : doc.value("requests", Json::array())) {
    std::string rid = rj.at("id").get<std::string>();
    if (!ids.insert(rid).second) throw InstanceError("duplicate request id '" + rid + "'");
    RequestBuilder rb(inst.substrate, rid, rj.at("profit").get<double>());
    for (const auto& n : rj.at("nodes")) {
      std::optional<std::vector<std::string>> allowed;
      if (n.contains("allowed_nodes")) allowed = n.at("allowed_nodes").get<std::vector<std::string>>();
      rb.add_node(n.at("id").get<std::string>(), n.at("type").get<std::string>(),
                  n.at("demand").get<double>(), allowed);
    }
    for (const auto& e : rj.value("edges", Json::array())) {
      std::optional<std::vector<std::pair<std::string, std::string>>> allowed;
      if (e.contains("allowed_edges")) {
        allowed.emplace();
        for (const auto& p : e.at("allowed_edges")) {
          allowed->emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        }
      }
      rb.add_edge(e.at("tail").get<std::string>(), e.at("head").get<std::string>(),
                  e.at("demand").get<double>(), allowed);
    }
    inst.requests.push_back(rb.build());
  }
  std::sort(inst.requests.begin(), inst.requests.end(),
            [](const Request& a, const Request& b) { return a.id() < b.id(); });
  return inst;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return Json::parse(in);
}

Instance load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

Json instance_to_json(const Instance& inst) {
  const Substrate& s = inst.substrate;
  Json nodes = Json::array();
  for (int u = 0; u < s.num_nodes(); ++u) {
    Json types = Json::array();
    for (int t = 0; t < s.num_types(); ++t) {
      int res = s.node_resource_index(t, u);
      if (res < 0) continue;
      types.push_back({{"type", s.type_id(t)},
                       {"capacity", s.resource_capacity(res)},
                       {"cost", s.resource_cost(res)}});
    }
    nodes.push_back({{"id", s.node_id(u)}, {"types", types}});
  }
  Json edges = Json::array();
  for (const auto& e : s.edges()) {
    edges.push_back({{"tail", s.node_id(e.tail)},
                     {"head", s.node_id(e.head)},
                     {"capacity", e.capacity},
                     {"cost", e.cost}});
  }
  Json requests = Json::array();
  for (const auto& r : inst.requests) {
    Json rn = Json::array();
    for (int i = 0; i < r.num_nodes(); ++i) {
      Json allowed = Json::array();
      for (int u : r.node(i).allowed) allowed.push_back(s.node_id(u));
      rn.push_back({{"id", r.node_id(i)},
                    {"type", s.type_id(r.node(i).type)},
                    {"demand", r.node(i).demand},
                    {"allowed_nodes", allowed}});
    }
    Json re = Json::array();
    for (const auto& e : r.edges()) {
      Json allowed = Json::array();
      for (int se : e.allowed) {
        allowed.push_back({s.node_id(s.edge(se).tail), s.node_id(s.edge(se).head)});
      }
      re.push_back({{"tail", r.node_id(e.tail)},
                    {"head", r.node_id(e.head)},
                    {"demand", e.demand},
                    {"allowed_edges", allowed}});
    }
    requests.push_back({{"id", r.id()}, {"profit", r.profit()}, {"nodes", rn}, {"edges", re}});
  }
  return {{"substrate", {{"nodes", nodes}, {"edges", edges}}}, {"requests", requests}};
}

Json mapping_to_json(const Substrate& s, const Request& r, const Mapping& m) {
  Json node_map = Json::object();
  for (int i = 0; i < r.num_nodes(); ++i) {
    node_map[r.node_id(i)] = m.nodes[i] >= 0 ? Json(s.node_id(m.nodes[i])) : Json(nullptr);
  }
  Json edge_map = Json::array();
  for (int e = 0; e < r.num_edges(); ++e) {
    Json path = Json::array();
    for (int se : m.edges[e]) path.push_back({s.node_id(s.edge(se).tail), s.node_id(s.edge(se).head)});
    edge_map.push_back({{"edge", {r.node_id(r.edge(e).tail), r.node_id(r.edge(e).head)}},
                        {"path", path}});
  }
  return {{"node_map", node_map}, {"edge_map", edge_map}};
}

Mapping mapping_from_json(const Substrate& s, const Request& r, const Json& doc) {
  Mapping m;
  m.nodes.assign(r.num_nodes(), -1);
  m.edges.assign(r.num_edges(), {});
  for (const auto& [key, val] : doc.at("node_map").items()) {
    auto i = r.find_node(key);
    if (!i) throw InstanceError("mapping references unknown request node '" + key + "'");
    if (val.is_null()) continue;
    auto u = s.find_node(val.get<std::string>());
    if (!u) throw InstanceError("mapping references unknown substrate node");
    m.nodes[*i] = *u;
  }
  for (const auto& entry : doc.at("edge_map")) {
    auto t = r.find_node(entry.at("edge").at(0).get<std::string>());
    auto h = r.find_node(entry.at("edge").at(1).get<std::string>());
    std::optional<int> e;
    if (t && h) e = r.find_edge(*t, *h);
    if (!e) throw InstanceError("mapping references unknown request edge");
    for (const auto& hop : entry.at("path")) {
      auto u = s.find_node(hop.at(0).get<std::string>());
      auto v = s.find_node(hop.at(1).get<std::string>());
      std::optional<int> se;
      if (u && v) se = s.find_edge(*u, *v);
      if (!se) throw InstanceError("mapping references unknown substrate edge");
      m.edges[*e].push_back(*se);
    }
  }
  return m;
}

bool same_instance(const Instance& a, const Instance& b) {
  return instance_to_json(a) == instance_to_json(b);
}

}  // namespace vnep
