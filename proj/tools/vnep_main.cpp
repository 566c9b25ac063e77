// Command line driver: validate | width | solve-lp | decompose | round | exact
// | generate | run.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vnep/decomposition.hpp"
#include "vnep/instance_io.hpp"
#include "vnep/oracle.hpp"
#include "vnep/pipeline.hpp"
#include "vnep/scenario.hpp"

namespace {

using vnep::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUnaccepted = 4;
constexpr int kExitInternal = 5;

// Thrown by subcommands that finished their output but want a non-zero exit.
struct ExitWith {
  int code;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    vnep::write_text(out, text);
  }
}

vnep::Objective parse_variant(const std::string& v) {
  return v == "cost" ? vnep::Objective::kCost : vnep::Objective::kProfit;
}

Json order_json(const vnep::Request& r, const vnep::LabeledExtractionOrder& lo) {
  Json arcs = Json::array();
  for (const auto& a : lo.order.arcs) {
    Json labels = Json::array();
    for (int l : lo.arc_labels[a.request_edge]) labels.push_back(r.node_id(l));
    arcs.push_back({{"edge", {r.node_id(r.edge(a.request_edge).tail), r.node_id(r.edge(a.request_edge).head)}},
                    {"oriented", {r.node_id(a.tail), r.node_id(a.head)}},
                    {"reversed", a.reversed},
                    {"labels", labels}});
  }
  Json bags = Json::object();
  for (int i = 0; i < r.num_nodes(); ++i) {
    Json list = Json::array();
    for (const auto& bag : lo.bags[i]) {
      Json members = Json::array(), labels = Json::array();
      for (int a : bag.arcs) members.push_back({r.node_id(lo.order.arcs[a].tail), r.node_id(lo.order.arcs[a].head)});
      for (int l : bag.labels) labels.push_back(r.node_id(l));
      list.push_back({{"arcs", members}, {"labels", labels}});
    }
    bags[r.node_id(i)] = list;
  }
  return {{"id", r.id()}, {"root", r.node_id(lo.order.root)}, {"width", lo.width}, {"arcs", arcs}, {"bags", bags}};
}

std::vector<vnep::LabeledExtractionOrder> heuristic_orders(const vnep::Instance& inst) {
  std::vector<vnep::LabeledExtractionOrder> orders;
  for (const auto& r : inst.requests) orders.push_back(vnep::min_width_order_search(r, vnep::OrderSearch::kPerRootBfs));
  return orders;
}

vnep::LpModel build_model(const vnep::Instance& inst, const std::string& formulation, vnep::Objective variant,
                          std::optional<std::int64_t> budget, vnep::McfModel* mcf, vnep::NovelModel* novel) {
  if (formulation == "mcf") {
    *mcf = vnep::build_mcf(inst, variant);
    return mcf->model;
  }
  if (formulation != "novel") throw std::invalid_argument("unknown formulation '" + formulation + "'");
  *novel = vnep::build_novel(inst, heuristic_orders(inst), variant, budget);
  return novel->model;
}

vnep::Instance load_checked(const std::string& path) {
  vnep::Instance inst = vnep::load_instance(path);
  auto report = vnep::validate_instance(inst.substrate, inst.requests);
  if (!report.ok()) {
    for (const auto& issue : report.issues) std::cerr << "invalid instance: " << issue << '\n';
    throw ExitWith{kExitValidation};
  }
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual network embedding: extraction width, LP relaxations, decomposition and rounding"};
  app.require_subcommand(1);

  std::string instance_path, out, solver, variant = "profit", formulation = "novel", solution_path;
  std::string strategy = "bfs", relaxation = "lp", fixture, shape = "tree", csv_path, plot_path, export_lp;
  std::optional<std::int64_t> var_budget;
  std::optional<double> alpha, beta, gamma;
  std::uint64_t seed = 0;
  int max_tries = vnep::kDefaultMaxTries, jobs = 1;
  int requests = 1, substrate_nodes = 6, request_nodes = 4, chords = 2;
  std::int64_t cap = vnep::kDefaultEnumerationCap;
  bool timings = false;
  std::vector<std::string> instance_paths;

  auto add_common = [&](CLI::App* cmd) { cmd->add_option("-o,--out", out, "Write output here instead of stdout"); };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--solver", solver, "LP backend (default: $VNEP_SOLVER or highs)");
  };
  auto add_variant = [&](CLI::App* cmd) {
    cmd->add_option("--variant", variant, "profit or cost")->check(CLI::IsMember({"profit", "cost"}));
  };
  auto add_rounding = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Rounding seed");
    cmd->add_option("--max-tries", max_tries, "Rounding attempts")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", alpha, "Override the objective factor");
    cmd->add_option("--beta", beta, "Override the node capacity factor");
    cmd->add_option("--gamma", gamma, "Override the edge capacity factor");
    cmd->add_option("--var-budget", var_budget, "Cap on LP variables");
    cmd->add_option("--csv", csv_path, "Per-try diagnostics CSV");
    cmd->add_option("--plot-data", plot_path, "Per-try diagnostics as long-format CSV");
    cmd->add_flag("--timings", timings, "Include solver timings in the report");
  };

  auto* validate = app.add_subcommand("validate", "Check an instance against the model invariants");
  validate->add_option("instance", instance_path)->required();
  add_common(validate);

  auto* width = app.add_subcommand("width", "Extraction orders, labels, bags and width per request");
  width->add_option("instance", instance_path)->required();
  width->add_option("--strategy", strategy, "bfs or exhaustive")->check(CLI::IsMember({"bfs", "exhaustive"}));
  add_common(width);

  auto* solve_lp = app.add_subcommand("solve-lp", "Build and solve the LP relaxation");
  solve_lp->add_option("instance", instance_path)->required();
  solve_lp->add_option("--formulation", formulation, "novel or mcf")->check(CLI::IsMember({"novel", "mcf"}));
  solve_lp->add_option("--var-budget", var_budget, "Cap on LP variables");
  solve_lp->add_option("--export-lp", export_lp, "Also write the model in LP text format");
  add_variant(solve_lp);
  add_solver(solve_lp);
  add_common(solve_lp);

  auto* decompose = app.add_subcommand("decompose", "Decompose a stored LP solution into valid mappings");
  decompose->add_option("instance", instance_path)->required();
  decompose->add_option("--solution", solution_path, "Output of solve-lp")->required();
  add_common(decompose);

  auto* round = app.add_subcommand("round", "Full pipeline, printing the rounded solution");
  round->add_option("instance", instance_path)->required();
  add_variant(round);
  add_solver(round);
  add_rounding(round);
  add_common(round);

  auto* exact = app.add_subcommand("exact", "Enumerative LP or IP over all valid mappings (tiny instances)");
  exact->add_option("instance", instance_path)->required();
  exact->add_option("--relaxation", relaxation, "lp or ip")->check(CLI::IsMember({"lp", "ip"}));
  exact->add_option("--cap", cap, "Mappings per request before giving up");
  add_variant(exact);
  add_solver(exact);
  add_common(exact);

  auto* generate = app.add_subcommand("generate", "Write a fixture or a random instance");
  generate->add_option("--fixture", fixture, "fig3, fig3-cost-gadget, fig4, servicechain, virtualcluster:n, "
                                             "halfwheel:n, vc-gadget:<graph>, cactus:n, tree:n");
  generate->add_option("--shape", shape, "Random request shape: tree, cactus or parallel");
  generate->add_option("--requests", requests)->check(CLI::PositiveNumber);
  generate->add_option("--substrate-nodes", substrate_nodes)->check(CLI::Range(2, 1000));
  generate->add_option("--request-nodes", request_nodes)->check(CLI::PositiveNumber);
  generate->add_option("--chords", chords)->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", seed);
  add_common(generate);

  auto* run = app.add_subcommand("run", "Full pipeline with a run report per instance");
  run->add_option("instances", instance_paths)->required();
  run->add_option("--jobs", jobs, "Instances processed in parallel")->check(CLI::PositiveNumber);
  add_variant(run);
  add_solver(run);
  add_rounding(run);
  add_common(run);

  CLI11_PARSE(app, argc, argv);

  try {
    const vnep::Objective obj = parse_variant(variant);

    if (*validate) {
      vnep::Instance inst = vnep::load_instance(instance_path);
      auto report = vnep::validate_instance(inst.substrate, inst.requests);
      emit(out, Json{{"ok", report.ok()}, {"issues", report.issues}}.dump(2));
      return report.ok() ? kExitOk : kExitValidation;
    }

    if (*width) {
      vnep::Instance inst = load_checked(instance_path);
      Json doc = Json::array();
      for (const auto& r : inst.requests) {
        auto how = strategy == "exhaustive" ? vnep::OrderSearch::kExhaustive : vnep::OrderSearch::kPerRootBfs;
        doc.push_back(order_json(r, vnep::min_width_order_search(r, how)));
      }
      emit(out, doc.dump(2));
      return kExitOk;
    }

    if (*solve_lp) {
      vnep::Instance inst = load_checked(instance_path);
      vnep::McfModel mcf;
      vnep::NovelModel novel;
      vnep::LpModel model = build_model(inst, formulation, obj, var_budget, &mcf, &novel);
      if (!export_lp.empty()) vnep::write_text(export_lp, model.to_lp_format());
      vnep::LpSolution sol = vnep::solve(model, solver);
      Json doc{{"formulation", formulation},
               {"variant", vnep::to_string(obj)},
               {"status", vnep::to_string(sol.status)},
               {"variables", model.num_variables()},
               {"constraints", model.num_constraints()}};
      if (sol.optimal()) {
        doc["objective"] = sol.objective;
        Json xs = Json::array();
        for (std::size_t k = 0; k < inst.requests.size(); ++k) {
          int x = formulation == "mcf" ? mcf.requests[k].x : novel.requests[k].x;
          xs.push_back({{"id", inst.requests[k].id()}, {"x", sol.values[x]}});
        }
        doc["requests"] = xs;
        Json values = Json::object();
        for (int v = 0; v < model.num_variables(); ++v) {
          if (sol.values[v] != 0.0) values[model.variable(v).name] = sol.values[v];
        }
        doc["values"] = values;
      }
      emit(out, doc.dump(2));
      if (sol.status == vnep::LpStatus::kInfeasible) return kExitInfeasible;
      return sol.optimal() ? kExitOk : 1;
    }

    if (*decompose) {
      vnep::Instance inst = load_checked(instance_path);
      Json stored = vnep::read_json_file(solution_path);
      if (stored.at("status") != "optimal") throw std::runtime_error("stored solution is not optimal");
      const std::string form = stored.at("formulation").get<std::string>();
      const vnep::Objective stored_obj = parse_variant(stored.at("variant").get<std::string>());
      vnep::McfModel mcf;
      vnep::NovelModel novel;
      vnep::LpModel model = build_model(inst, form, stored_obj, std::nullopt, &mcf, &novel);
      std::map<std::string, int> by_name;
      for (int v = 0; v < model.num_variables(); ++v) {
        if (!by_name.emplace(model.variable(v).name, v).second) {
          throw std::runtime_error("ambiguous variable name '" + model.variable(v).name + "'");
        }
      }
      std::vector<double> values(model.num_variables(), 0.0);
      for (const auto& [name, val] : stored.at("values").items()) {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw std::runtime_error("solution names unknown variable '" + name + "'");
        values[it->second] = val.get<double>();
      }
      auto orders = form == "novel" ? heuristic_orders(inst) : std::vector<vnep::LabeledExtractionOrder>{};
      Json doc = Json::array();
      bool all_ok = true;
      for (std::size_t k = 0; k < inst.requests.size(); ++k) {
        const auto& r = inst.requests[k];
        vnep::ConvexDecomposition d;
        vnep::RequestLpSlice slice;
        if (form == "mcf") {
          d = vnep::decompose_mcf_tree(inst.substrate, r, vnep::build_extraction_order(r, 0), mcf.requests[k], values);
          slice = vnep::slice_of(mcf.requests[k], values);
        } else {
          d = vnep::decompose_novel(inst.substrate, r, orders[k], novel.requests[k], values);
          slice = vnep::slice_of(novel.requests[k], values);
        }
        auto check = vnep::verify_decomposition(inst.substrate, r, d, slice);
        all_ok = all_ok && check.ok();
        Json entries = Json::array();
        for (const auto& e : d.entries) {
          Json j = vnep::mapping_to_json(inst.substrate, r, e.mapping);
          j["weight"] = e.weight;
          entries.push_back(j);
        }
        doc.push_back({{"id", r.id()},
                       {"x", slice.x},
                       {"entries", entries},
                       {"verified", check.ok()},
                       {"completeness_gap", check.completeness_gap},
                       {"max_allocation_excess", check.max_allocation_excess}});
      }
      emit(out, doc.dump(2));
      return all_ok ? kExitOk : kExitInternal;
    }

    if (*exact) {
      vnep::Instance inst = load_checked(instance_path);
      std::vector<vnep::MappingEnumeration> enums;
      for (const auto& r : inst.requests) enums.push_back(vnep::enumerate_valid_mappings(inst.substrate, r, cap));
      auto rel = relaxation == "ip" ? vnep::Relaxation::kIp : vnep::Relaxation::kLp;
      auto result = vnep::solve_enumerative(inst.substrate, inst.requests, enums, obj, rel, solver);
      Json reqs = Json::array();
      for (std::size_t k = 0; k < inst.requests.size(); ++k) {
        Json assignment = Json::array();
        for (auto [idx, w] : result.assignment[k]) {
          Json j = vnep::mapping_to_json(inst.substrate, inst.requests[k], enums[k].mappings[idx]);
          j["weight"] = w;
          assignment.push_back(j);
        }
        reqs.push_back({{"id", inst.requests[k].id()},
                        {"valid_mappings", result.mapping_counts[k]},
                        {"assignment", assignment}});
      }
      Json doc{{"variant", vnep::to_string(obj)},
               {"relaxation", vnep::to_string(rel)},
               {"status", vnep::to_string(result.status)},
               {"requests", reqs}};
      if (result.status == vnep::LpStatus::kOptimal) doc["objective"] = result.objective;
      emit(out, doc.dump(2));
      return result.status == vnep::LpStatus::kInfeasible ? kExitInfeasible : kExitOk;
    }

    if (*generate) {
      vnep::Instance inst;
      if (!fixture.empty()) {
        inst = vnep::make_fixture(fixture, seed);
      } else {
        vnep::RandomInstanceSpec spec;
        spec.shape = shape;
        spec.requests = requests;
        spec.substrate_nodes = substrate_nodes;
        spec.substrate_chords = chords;
        spec.request_nodes = request_nodes;
        spec.seed = seed;
        inst = vnep::random_instance(spec);
      }
      emit(out, vnep::instance_to_json(inst).dump(2));
      return kExitOk;
    }

    vnep::PipelineConfig config;
    config.variant = obj;
    config.backend = solver;
    config.seed = seed;
    config.max_tries = max_tries;
    config.variable_budget = var_budget;
    config.alpha = alpha;
    config.beta = beta;
    config.gamma = gamma;
    config.include_timings = timings;

    if (*round) {
      vnep::Instance inst = load_checked(instance_path);
      vnep::RunReport report = vnep::run_pipeline(inst, config);
      Json doc = report.to_json()["rounding"];
      doc["variant"] = vnep::to_string(obj);
      doc["seed"] = seed;
      doc["lp_objective"] = report.lp_objective;
      emit(out, doc.dump(2));
      if (!csv_path.empty()) vnep::write_text(csv_path, vnep::tries_to_csv(report.rounding.tries));
      if (!plot_path.empty()) vnep::write_text(plot_path, vnep::tries_to_long_csv(report.rounding.tries));
      return report.rounding.accepted ? kExitOk : kExitUnaccepted;
    }

    if (*run) {
      const std::size_t n = instance_paths.size();
      std::vector<Json> docs(n);
      std::vector<int> codes(n, kExitOk);
      std::vector<std::vector<vnep::TryRecord>> tries(n);
      std::size_t next = 0;
      std::mutex lock;
      auto worker = [&]() {
        for (;;) {
          std::size_t k;
          {
            std::lock_guard<std::mutex> guard(lock);
            if (next >= n) return;
            k = next++;
          }
          try {
            vnep::Instance inst = vnep::load_instance(instance_paths[k]);
            vnep::RunReport report = vnep::run_pipeline(inst, config);
            docs[k] = report.to_json();
            tries[k] = report.rounding.tries;
            if (!report.rounding.accepted) codes[k] = kExitUnaccepted;
          } catch (const vnep::PipelineError& e) {
            docs[k] = {{"error", e.what()}, {"stage", e.stage()}};
            codes[k] = e.exit_code();
          } catch (const vnep::InstanceError& e) {
            docs[k] = {{"error", e.what()}, {"stage", "validate"}};
            codes[k] = kExitValidation;
          } catch (const std::exception& e) {
            docs[k] = {{"error", e.what()}};
            codes[k] = 1;
          }
          docs[k]["instance"] = instance_paths[k];
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < std::min<int>(jobs, static_cast<int>(n)); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      Json doc = n == 1 ? docs[0] : Json(docs);
      emit(out, doc.dump(2));
      std::vector<vnep::TryRecord> all;
      for (const auto& t : tries) all.insert(all.end(), t.begin(), t.end());
      if (!csv_path.empty()) vnep::write_text(csv_path, vnep::tries_to_csv(all));
      if (!plot_path.empty()) vnep::write_text(plot_path, vnep::tries_to_long_csv(all));
      for (int c : codes) {
        if (c != kExitOk) return c;
      }
      return kExitOk;
    }
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const vnep::PipelineError& e) {
    std::cerr << "error in stage " << e.what() << '\n';
    return e.exit_code();
  } catch (const vnep::InstanceError& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << '\n';
    return kExitValidation;
  } catch (const vnep::DecompositionError& e) {
    std::cerr << "decomposition failed: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
