// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "vnep/decomposition.hpp"
#include "vnep/oracle.hpp"
#include "vnep/pipeline.hpp"
#include "vnep/rounding.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Formulation sizes seen while running the other criteria, checked by the
// size criterion at the end.
struct SizeRecord {
  std::string where;
  std::int64_t variables;
  double bound;
};
std::vector<SizeRecord> g_sizes;

void record_sizes(const std::string& where, const Instance& inst, const std::vector<LabeledExtractionOrder>& orders) {
  for (std::size_t k = 0; k < inst.requests.size(); ++k) {
    const Request& r = inst.requests[k];
    double bound = 10.0 * r.num_nodes() * std::pow(inst.substrate.num_nodes(), orders[k].width);
    g_sizes.push_back({where + "/" + r.id(), novel_variable_count(inst.substrate, r, orders[k]), bound});
  }
}

std::vector<LabeledExtractionOrder> bfs_orders(const Instance& inst) {
  std::vector<LabeledExtractionOrder> out;
  for (const auto& r : inst.requests) out.push_back(min_width_order_search(r, OrderSearch::kPerRootBfs));
  return out;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome fig3_gap() {
  Outcome out;
  Instance inst = fig3_instance();
  double profit = inst.requests[0].profit();
  auto mcf = solve(build_mcf(inst, Objective::kProfit).model);
  auto orders = bfs_orders(inst);
  record_sizes("fig3", inst, orders);
  auto novel = solve(build_novel(inst, orders, Objective::kProfit).model);
  auto count = enumerate_valid_mappings(inst.substrate, inst.requests[0]).mappings.size();
  out.pass = mcf.optimal() && novel.optimal() && std::abs(mcf.objective - profit) <= 1e-6 &&
             std::abs(novel.objective) <= 1e-6 && count == 0;
  out.detail = "mcf=" + fmt("%.9g", mcf.objective) + " novel=" + fmt("%.9g", novel.objective) +
               " mappings=" + std::to_string(count);
  return out;
}

Outcome tree_decomposition() {
  Outcome out;
  Rng rng(2024);
  int requests = 0, failures = 0;
  double worst_gap = 0, worst_excess = 0;
  for (int inst_no = 0; requests < 50; ++inst_no) {
    RandomInstanceSpec spec;
    spec.shape = "tree";
    spec.requests = 2;
    spec.request_nodes = 2 + rng.below(7);   // 2..8
    spec.substrate_nodes = 4 + rng.below(7);  // 4..10
    spec.substrate_chords = rng.below(3);
    spec.seed = 1000 + inst_no;
    Instance inst = random_instance(spec);
    auto mcf = build_mcf(inst, Objective::kProfit);
    auto sol = solve(mcf.model);
    if (!sol.optimal()) {
      ++failures;
      continue;
    }
    for (std::size_t k = 0; k < inst.requests.size() && requests < 50; ++k, ++requests) {
      const Request& r = inst.requests[k];
      try {
        auto d = decompose_mcf_tree(inst.substrate, r, build_extraction_order(r, 0), mcf.requests[k], sol.values);
        auto rep = verify_decomposition(inst.substrate, r, d, slice_of(mcf.requests[k], sol.values));
        worst_gap = std::max(worst_gap, rep.completeness_gap);
        worst_excess = std::max(worst_excess, rep.max_allocation_excess);
        failures += !rep.ok();
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  out.pass = failures == 0;
  out.detail = std::to_string(requests) + " requests, failures=" + std::to_string(failures) +
               " max|sum f - x|=" + fmt("%.2e", worst_gap) + " max excess=" + fmt("%.2e", worst_excess);
  return out;
}

Outcome novel_decomposition() {
  Outcome out;
  Rng rng(77);
  int requests = 0, failures = 0, too_wide = 0, fractional = 0;
  double worst_gap = 0, worst_excess = 0;
  std::map<int, int> widths;
  for (int inst_no = 0; requests < 50; ++inst_no) {
    RandomInstanceSpec spec;
    spec.shape = inst_no % 2 ? "parallel" : "cactus";
    spec.requests = 1;
    spec.request_nodes = 3 + rng.below(4);
    spec.substrate_nodes = 4 + rng.below(4);
    spec.substrate_chords = 1 + rng.below(2);
    spec.seed = 5000 + inst_no;
    Instance inst = random_instance(spec);
    auto orders = bfs_orders(inst);
    if (orders[0].width > 3) {
      ++too_wide;
      continue;
    }
    record_sizes("novel", inst, orders);
    auto model = build_novel(inst, orders, Objective::kProfit);
    auto sol = solve(model.model);
    ++requests;
    if (!sol.optimal()) {
      ++failures;
      continue;
    }
    ++widths[orders[0].width];
    const Request& r = inst.requests[0];
    try {
      auto d = decompose_novel(inst.substrate, r, orders[0], model.requests[0], sol.values);
      auto rep = verify_decomposition(inst.substrate, r, d, slice_of(model.requests[0], sol.values));
      worst_gap = std::max(worst_gap, rep.completeness_gap);
      worst_excess = std::max(worst_excess, rep.max_allocation_excess);
      failures += !rep.ok();
      fractional += d.entries.size() > 1;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  out.pass = failures == 0;
  std::ostringstream w;
  for (auto [k, v] : widths) w << " w" << k << "=" << v;
  out.detail = std::to_string(requests) + " requests (" + w.str().substr(1) + ", multi-entry " +
               std::to_string(fractional) + ", skipped width>3: " + std::to_string(too_wide) +
               "), failures=" + std::to_string(failures) + " max|sum f - x|=" + fmt("%.2e", worst_gap) +
               " max excess=" + fmt("%.2e", worst_excess);
  return out;
}

Outcome lp_equals_oracle() {
  Outcome out;
  int compared = 0, mismatches = 0, both_infeasible = 0;
  double worst = 0;
  const char* shapes[] = {"tree", "cactus", "parallel"};
  int instances = 0;
  for (int k = 0; instances < 20 && k < 200; ++k) {
    RandomInstanceSpec spec;
    spec.shape = shapes[k % 3];
    spec.requests = 2;
    spec.request_nodes = 2 + k % 3;
    spec.substrate_nodes = 4 + k % 3;
    spec.substrate_chords = 1;
    spec.seed = 9000 + k;
    Instance inst = random_instance(spec);
    // Parallel augmentation may add relay nodes; stay within four.
    bool small = true;
    for (const auto& r : inst.requests) small &= r.num_nodes() <= 4;
    if (!small) continue;
    ++instances;
    auto orders = bfs_orders(inst);
    record_sizes("oracle", inst, orders);
    std::vector<MappingEnumeration> en;
    for (const auto& r : inst.requests) en.push_back(enumerate_valid_mappings(inst.substrate, r));
    for (Objective v : {Objective::kProfit, Objective::kCost}) {
      auto nov = solve(build_novel(inst, orders, v).model);
      auto ref = solve_enumerative(inst.substrate, inst.requests, en, v, Relaxation::kLp);
      if (nov.status != ref.status) {
        ++mismatches;
        continue;
      }
      if (!nov.optimal()) {
        ++both_infeasible;
        continue;
      }
      ++compared;
      double gap = rel_gap(nov.objective, ref.objective);
      worst = std::max(worst, gap);
      mismatches += gap > 1e-5;
    }
  }
  out.pass = mismatches == 0 && compared > 0 && instances == 20;
  out.detail = std::to_string(instances) + " instances, " + std::to_string(compared) + " optimal pairs, " + std::to_string(both_infeasible) +
               " both infeasible, mismatches=" + std::to_string(mismatches) + " max rel gap=" + fmt("%.2e", worst);
  return out;
}

Outcome width_facts() {
  Outcome out;
  std::vector<std::string> notes;
  // Cactus corpus.
  Rng rng(31);
  int cactus_bad = 0;
  for (int g = 0; g < 100; ++g) {
    Digraph graph = random_cactus_graph(rng, 4 + rng.below(7));
    for (int k = 0; k < 5; ++k) {
      cactus_bad += label_order(build_extraction_order(graph, rng.below(graph.num_nodes()))).width > 2;
    }
  }
  notes.push_back("cactus>2: " + std::to_string(cactus_bad));

  // Figure-4 labels and bags.
  Digraph f4 = fig4_graph();
  auto lab = label_order(fig4_order());
  auto id = [&](const char* n) { return *f4.find(n); };
  std::set<std::pair<int, int>> confluences;
  for (int i = 0; i < f4.num_nodes(); ++i) {
    for (int j = 0; j < f4.num_nodes(); ++j) {
      if (i == j) continue;
      auto paths = testing::all_paths(lab.order, i, j);
      for (std::size_t p = 0; p < paths.size(); ++p) {
        for (std::size_t q = p + 1; q < paths.size(); ++q) {
          auto a = testing::inner_nodes(lab.order, paths[p]), b = testing::inner_nodes(lab.order, paths[q]);
          bool disjoint = true;
          for (int v : a) disjoint &= !b.count(v);
          if (disjoint) confluences.insert({i, j});
        }
      }
    }
  }
  std::set<std::pair<int, int>> want_conf{
      {id("a"), id("i")}, {id("i"), id("j")}, {id("a"), id("l")}, {id("b"), id("l")}, {id("f"), id("k")}};
  bool labels_ok = lab.arc_labels == testing::brute_force_labels(lab.order);
  auto bag_view = [&](const char* n) {
    std::set<std::pair<std::set<int>, std::set<int>>> v;
    for (const auto& b : lab.bags[id(n)]) v.insert({{b.arcs.begin(), b.arcs.end()}, {b.labels.begin(), b.labels.end()}});
    return v;
  };
  auto arc = [&](const char* t, const char* h) {
    for (int a = 0; a < f4.num_arcs(); ++a) {
      if (f4.arcs[a] == std::pair{id(t), id(h)}) return a;
    }
    return -1;
  };
  std::set<std::pair<std::set<int>, std::set<int>>> f_want{{{arc("f", "j")}, {id("j")}},
                                                           {{arc("f", "g"), arc("f", "k")}, {id("k")}},
                                                           {{arc("f", "l")}, {id("l")}}};
  std::set<std::pair<std::set<int>, std::set<int>>> i_want{{{arc("i", "c"), arc("i", "f")}, {id("j"), id("l")}}};
  bool fig4_ok = confluences == want_conf && labels_ok && bag_view("f") == f_want && bag_view("i") == i_want;
  notes.push_back(std::string("fig4 ") + (fig4_ok ? "exact" : "MISMATCH"));

  // Half wheels.
  bool wheel_ok = true;
  for (int n : {6, 8, 10}) {
    Digraph hw = generate_half_wheel(n);
    int center = label_order(half_wheel_center_order(hw, n)).width;
    int low = 1 << 20;
    std::int64_t count = for_each_extraction_order(hw, *hw.find("w_c"), [&](const ExtractionOrder& o) {
      low = std::min(low, label_order(o).width);
      return true;
    });
    wheel_ok &= center == 2 && low >= n / 2 + 1;
    notes.push_back("halfwheel" + std::to_string(n) + " centre=" + std::to_string(center) + " min(w_c)=" +
                    std::to_string(low) + " over " + std::to_string(count) + " orders");
  }

  // Vertex-cover gadgets.
  bool vc_ok = true;
  for (const char* g : {"triangle", "c4", "path4", "star3", "k4"}) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    named_undirected_graph(g, names, edges);
    Digraph gadget = generate_vc_gadget(names, edges);
    int w = min_width_order_search(gadget, OrderSearch::kExhaustive, *gadget.find(kVcGadgetRoot)).width;
    int vc = testing::brute_force_vertex_cover(static_cast<int>(names.size()), edges);
    vc_ok &= w == vc + 1;
    notes.push_back(std::string(g) + " " + std::to_string(w) + "=" + std::to_string(vc) + "+1");
  }
  out.pass = cactus_bad == 0 && fig4_ok && wheel_ok && vc_ok;
  for (const auto& n : notes) out.detail += (out.detail.empty() ? "" : "; ") + n;
  return out;
}

Outcome formulation_size() {
  Outcome out;
  int violations = 0;
  double worst = 0;
  std::string worst_at;
  for (const auto& s : g_sizes) {
    double ratio = s.variables / s.bound;
    if (ratio > worst) {
      worst = ratio;
      worst_at = s.where;
    }
    violations += s.variables > s.bound;
  }
  out.pass = violations == 0 && !g_sizes.empty();
  out.detail = std::to_string(g_sizes.size()) + " requests, violations=" + std::to_string(violations) +
               " max vars/bound=" + fmt("%.3f", worst) + " (" + worst_at + ")";
  return out;
}

Outcome rounding_statistics() {
  Outcome out;
  // First seed whose three requests all survive preprocessing, decompose into
  // several mappings and are not all embedded with weight one, so both the
  // choice of mapping and the profit are random.
  Instance inst;
  std::vector<LabeledExtractionOrder> orders;
  std::vector<ConvexDecomposition> decs;
  LpSolution sol;
  std::uint64_t used_seed = 0;
  for (std::uint64_t seed = 4200; seed < 4600 && used_seed == 0; ++seed) {
    // Twelve unit node demands against nine units of node capacity.
    Rng rng(seed);
    Substrate s = ring_substrate(6, 1.5, 2.0, 2, seed);
    Instance raw{s, {}};
    for (int k = 0; k < 3; ++k) {
      raw.requests.push_back(request_from_digraph(s, random_cactus_graph(rng, 4), "r" + std::to_string(k),
                                                  1.0 + std::floor(rng.uniform(0, 9))));
    }
    inst = preprocess_profit(raw).kept;
    if (inst.requests.size() != 3) continue;
    orders = bfs_orders(inst);
    auto model = build_novel(inst, orders, Objective::kProfit);
    sol = solve(model.model);
    if (!sol.optimal()) continue;
    decs.clear();
    bool fractional = true, partial = false;
    for (std::size_t k = 0; k < inst.requests.size(); ++k) {
      decs.push_back(decompose_novel(inst.substrate, inst.requests[k], orders[k], model.requests[k], sol.values));
      fractional &= decs.back().entries.size() > 1;
      partial |= decs.back().total_weight() < 1.0 - 1e-6;
    }
    if (fractional && partial) used_seed = seed;
  }
  if (used_seed == 0) {
    out.pass = false;
    out.detail = "no usable instance among the scanned seeds";
    return out;
  }
  record_sizes("montecarlo", inst, orders);
  const int trials = 10000;
  const std::uint64_t seed = 7;
  std::vector<std::vector<int>> hits(decs.size());
  for (std::size_t k = 0; k < decs.size(); ++k) hits[k].assign(decs[k].entries.size(), 0);
  double profit_sum = 0;
  int low = 0;
  for (int t = 0; t < trials; ++t) {
    auto pick = sample_selection(decs, seed, t);
    double profit = 0;
    for (std::size_t k = 0; k < decs.size(); ++k) {
      if (pick[k] < 0) continue;
      ++hits[k][pick[k]];
      profit += inst.requests[k].profit();
    }
    profit_sum += profit;
    low += profit <= sol.objective / 3.0;
  }
  int outside = 0, entries = 0;
  double worst_z = 0;
  for (std::size_t k = 0; k < decs.size(); ++k) {
    for (std::size_t e = 0; e < decs[k].entries.size(); ++e) {
      double f = decs[k].entries[e].weight;
      double sigma = std::sqrt(trials * f * (1 - f));
      double z = sigma > 0 ? std::abs(hits[k][e] - trials * f) / sigma : 0.0;
      worst_z = std::max(worst_z, z);
      outside += z > 3.0;
      ++entries;
    }
  }
  double mean = profit_sum / trials;
  double mean_gap = rel_gap(mean, sol.objective);
  double low_freq = static_cast<double>(low) / trials;
  double tail_cap = std::exp(-2.0 / 9.0) + 0.05;
  out.pass = outside == 0 && std::abs(mean - sol.objective) <= 0.02 * sol.objective && low_freq <= tail_cap;
  out.detail = "seed " + std::to_string(used_seed) + ", (a) " + std::to_string(entries) + " entries, max |z|=" + fmt("%.2f", worst_z) + "; (b) mean=" +
               fmt("%.4f", mean) + " lp=" + fmt("%.4f", sol.objective) + " rel=" + fmt("%.4f", mean_gap) +
               "; (c) P(profit<=lp/3)=" + fmt("%.4f", low_freq) + " cap=" + fmt("%.4f", tail_cap);
  return out;
}

Outcome cost_guarantees() {
  Outcome out;
  int instances = 0, skipped = 0, cap_failures = 0, prune_failures = 0, samples = 0;
  double worst_ratio = 0, worst_survival = 1;
  const char* shapes[] = {"tree", "cactus", "parallel"};
  for (int k = 0; instances < 20 && k < 200; ++k) {
    RandomInstanceSpec spec;
    spec.shape = shapes[k % 3];
    spec.requests = 2;
    spec.request_nodes = 3 + k % 2;
    spec.substrate_nodes = 5 + k % 3;
    spec.seed = 12000 + k;
    Instance inst = random_instance(spec);
    auto orders = bfs_orders(inst);
    auto model = build_novel(inst, orders, Objective::kCost);
    auto sol = solve(model.model);
    if (!sol.optimal()) {
      ++skipped;
      continue;
    }
    record_sizes("cost", inst, orders);
    ++instances;
    std::vector<ConvexDecomposition> pruned;
    for (std::size_t r = 0; r < inst.requests.size(); ++r) {
      auto d = decompose_novel(inst.substrate, inst.requests[r], orders[r], model.requests[r], sol.values);
      try {
        auto p = prune_costly_mappings(inst.substrate, inst.requests[r], d);
        worst_survival = std::min(worst_survival, p.surviving_weight);
        prune_failures += p.surviving_weight < 0.5;
        pruned.push_back(std::move(p.decomposition));
      } catch (const std::exception&) {
        ++prune_failures;
        pruned.push_back(ConvexDecomposition{});
      }
    }
    // The library's own rounding asserts the cap on each of its tries.
    try {
      auto bounds = compute_bounds(inst, resource_stats(inst.substrate, inst.requests), Objective::kCost);
      round_cost(inst.substrate, inst.requests, pruned, bounds, sol.objective, kDefaultMaxTries, k);
    } catch (const std::exception&) {
      ++cap_failures;
    }
    double cap = 2.0 * sol.objective + 1e-6 * std::max(1.0, sol.objective);
    for (int t = 0; t < 500; ++t) {
      auto pick = sample_selection(pruned, 31 + k, t);
      double cost = 0;
      for (std::size_t r = 0; r < pruned.size(); ++r) {
        // Cost rounding always embeds; draws past the total weight land on the last entry.
        int e = pick[r] < 0 ? static_cast<int>(pruned[r].entries.size()) - 1 : pick[r];
        if (e < 0) {
          cost = std::numeric_limits<double>::infinity();
          break;
        }
        cost += mapping_cost(inst.substrate, inst.requests[r], pruned[r].entries[e].mapping);
      }
      ++samples;
      cap_failures += cost > cap;
      if (sol.objective > 0) worst_ratio = std::max(worst_ratio, cost / sol.objective);
    }
  }
  out.pass = instances == 20 && cap_failures == 0 && prune_failures == 0;
  out.detail = std::to_string(instances) + " instances (" + std::to_string(skipped) + " infeasible seeds skipped), " +
               std::to_string(samples) + " samples, cap failures=" + std::to_string(cap_failures) +
               " max cost/C_LP=" + fmt("%.3f", worst_ratio) + ", prune failures=" + std::to_string(prune_failures) +
               " min surviving weight=" + fmt("%.3f", worst_survival);
  return out;
}

Outcome bound_formulas() {
  Outcome out;
  int bad = 0;
  auto check = [&](double got, double want) {
    if (std::abs(got - want) > 1e-9) ++bad;
  };
  // Ten single-type nodes of capacity 2, one request with one node of demand 1.
  {
    testing::TinySubstrate t;
    for (int k = 0; k < 10; ++k) t.nodes.push_back("n" + std::to_string(k));
    t.node_capacity = 2.0;
    Substrate s = t.build();
    RequestBuilder b(s, "r", 1.0);
    b.add_node("i", "cpu", 1.0);
    Instance inst{s, {b.build()}};
    auto stats = resource_stats(s, inst.requests);
    auto p = compute_bounds(inst, stats, Objective::kProfit);
    check(p.beta, 2.0729830131446736);
    check(p.gamma, 1.0);
    auto c = compute_bounds(inst, stats, Objective::kCost);
    check(c.beta, 3.0729830131446736);
    check(c.gamma, 2.0);
  }
  // Four nodes with cpu and gpu (capacity 4), bidirected ring of capacity 2.
  // cpu: two nodes of demand 1 may share a location, Delta = 4; gpu demand
  // 2 gives the worst ratio 1/2; one edge of demand 1, Delta = 1.
  {
    SubstrateBuilder sb;
    for (int k = 0; k < 4; ++k) {
      std::string u = "m" + std::to_string(k);
      sb.add_node(u).add_node_type(u, "cpu", 4, 1).add_node_type(u, "gpu", 4, 1);
    }
    for (int k = 0; k < 4; ++k) {
      std::string a = "m" + std::to_string(k), b = "m" + std::to_string((k + 1) % 4);
      sb.add_edge(a, b, 2, 1).add_edge(b, a, 2, 1);
    }
    Substrate s = sb.build();
    RequestBuilder r1(s, "r1", 1.0), r2(s, "r2", 1.0);
    r1.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_edge("i", "j", 1);
    r2.add_node("k", "gpu", 2);
    Instance inst{s, {r1.build(), r2.build()}};
    auto stats = resource_stats(s, inst.requests);
    auto p = compute_bounds(inst, stats, Objective::kProfit);
    check(p.epsilon, 0.5);
    check(p.beta, 3.039333980337618);
    check(p.gamma, 1.8325546111576978);
    auto c = compute_bounds(inst, stats, Objective::kCost);
    check(c.beta, 4.039333980337618);
    check(c.gamma, 2.832554611157698);
  }
  // The epsilon -> 0 limit.
  for (double eps : {1e-12, 0.0}) {
    auto p = bounds_from_parameters(Objective::kProfit, eps, 5.0, 3.0, 12, 2);
    auto c = bounds_from_parameters(Objective::kCost, eps, 5.0, 3.0, 12, 2);
    check(p.beta, 1.0);
    check(p.gamma, 1.0);
    check(c.beta, 2.0);
    check(c.gamma, 2.0);
  }
  out.pass = bad == 0;
  out.detail = "5 parameter sets, mismatches=" + std::to_string(bad);
  return out;
}

Outcome determinism() {
  Outcome out;
  int runs = 0, differ = 0;
  std::vector<Instance> instances{fig3_instance(true), testing::tiny_random_instance(3, "cactus", 3, 4, 6),
                                  testing::tiny_random_instance(8, "parallel", 2, 4, 6),
                                  testing::tiny_random_instance(5, "tree", 3, 5, 7)};
  for (const auto& inst : instances) {
    for (Objective v : {Objective::kProfit, Objective::kCost}) {
      PipelineConfig cfg;
      cfg.variant = v;
      cfg.seed = 99;
      std::string a, b;
      try {
        a = run_pipeline(inst, cfg).to_json().dump();
      } catch (const PipelineError& e) {
        a = e.what();
      }
      try {
        b = run_pipeline(inst, cfg).to_json().dump();
      } catch (const PipelineError& e) {
        b = e.what();
      }
      ++runs;
      differ += a != b;
    }
  }
  out.pass = differ == 0;
  out.detail = std::to_string(runs) + " repeated runs, differing=" + std::to_string(differ);
  return out;
}

struct Criterion {
  int number;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace vnep

int main() {
  using namespace vnep;
  // Size checks run last so they see every formulation built before.
  std::vector<Criterion> criteria{
      {1, "fig3 integrality gap", 5.0, fig3_gap},
      {2, "tree decomposability", 0, tree_decomposition},
      {3, "novel decomposability", 0, novel_decomposition},
      {4, "novel LP equals enumerative LP", 0, lp_equals_oracle},
      {5, "width facts", 30.0, width_facts},
      {7, "rounding statistics", 60.0, rounding_statistics},
      {8, "cost guarantees", 0, cost_guarantees},
      {9, "bound formulas", 0, bound_formulas},
      {10, "determinism", 0, determinism},
      {6, "formulation size", 0, formulation_size},
  };
  std::map<int, std::string> lines;
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.time_limit)) + " s limit)";
    }
    all &= o.pass;
    char head[128];
    std::snprintf(head, sizeof head, "%s criterion %d (%s) [%.2f s]: ", o.pass ? "PASS" : "FAIL", c.number, c.name,
                  secs);
    lines[c.number] = head + o.detail;
  }
  for (const auto& [n, line] : lines) std::printf("%s\n", line.c_str());
  return all ? 0 : 1;
}
