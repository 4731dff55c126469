#include "postman/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "postman/gen.hpp"
#include "postman/io.hpp"
#include "postman/mcpp.hpp"
#include "postman/pathwidth.hpp"
#include "postman/pbs.hpp"
#include "postman/reductions.hpp"
#include "postman/treedepth.hpp"

namespace postman {

namespace {

using nlohmann::json;

bool log_enabled() {
  static bool on = std::getenv("POSTMAN_LOG") != nullptr;
  return on;
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[postman] " << msg << "\n";
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Report {
  std::string command;
  std::string digest;
  bool complete = true;
  json result;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void emit(bool quiet, const std::string& quiet_line) const {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    if (quiet) {
      std::cout << quiet_line << "\n";
      return;
    }
    json j;
    j["command"] = command;
    j["instance"] = digest;
    j["complete"] = complete;
    j["wall_ms"] = ms;
    j["result"] = result;
    std::cout << j.dump(2) << "\n";
  }
};

json walk_to_json(const ClosedWalk& walk) {
  json arr = json::array();
  for (const auto& s : walk) {
    json e;
    e["element"] = s.element;
    e["dir"] = s.forward ? "fwd" : "bwd";
    arr.push_back(e);
  }
  return arr;
}

json solution_counts_json(const McppSolution& sol) {
  json j;
  j["arc_counts"] = sol.arc_count;
  j["edge_fwd"] = sol.edge_fwd;
  j["edge_bwd"] = sol.edge_bwd;
  return j;
}

MixedGraph load_mixed(const std::string& path) { return parse_mixed_graph(read_file(path)); }
PbsInstance load_pbs(const std::string& path) { return parse_pbs_instance(read_file(path)); }

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Mixed Chinese Postman toolkit: PBS solvers, tree-depth pipeline, reductions"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "one-line human summary instead of JSON");

  // solve-mcpp
  auto* sm = app.add_subcommand("solve-mcpp", "solve an MCPP instance");
  std::string sm_mode = "fpt", sm_file;
  int sm_cap = 12, sm_jobs = 1;
  sm->add_option("--mode", sm_mode, "exact|fpt|naive")->check(CLI::IsMember({"exact", "fpt", "naive"}));
  sm->add_option("--arc-cap", sm_cap, "pattern size cap for the fpt search");
  sm->add_option("--jobs", sm_jobs, "parallel embedding workers");
  sm->add_option("file", sm_file, "mixed-graph file")->required();

  // solve-pbs
  auto* sp = app.add_subcommand("solve-pbs", "find a negative properly balanced subgraph");
  std::string sp_mode = "brute", sp_file;
  int sp_cap = 12, sp_jobs = 1;
  sp->add_option("--mode", sp_mode, "brute|fpt")->check(CLI::IsMember({"brute", "fpt"}));
  sp->add_option("--arc-cap", sp_cap, "pattern size cap (fpt) / subset size cap (brute)");
  sp->add_option("--jobs", sp_jobs, "parallel embedding workers");
  sp->add_option("file", sp_file, "PBS instance file")->required();
  bool sp_cap_set = false;
  sp->callback([&] { sp_cap_set = sp->count("--arc-cap") > 0; });

  // reduce
  auto* red = app.add_subcommand("reduce", "gadget reductions");
  red->require_subcommand(1);
  auto* rc = red->add_subcommand("clique-to-pbs", "k-Multicolored-Clique -> PBS");
  std::string rc_in, rc_out, rc_cert;
  rc->add_option("file", rc_in, "colored-graph file")->required();
  rc->add_option("-o,--out", rc_out, "output PBS file")->required();
  rc->add_option("--cert", rc_cert, "certificate sidecar (default <out>.cert.json)");
  auto* rm = red->add_subcommand("pbs-to-mcpp", "PBS -> MCPP");
  std::string rm_in, rm_out, rm_cert;
  bool rm_expand = false;
  rm->add_option("file", rm_in, "PBS instance file")->required();
  rm->add_option("-o,--out", rm_out, "output mixed-graph file")->required();
  rm->add_option("--cert", rm_cert, "certificate sidecar (default <out>.cert.json)");
  rm->add_flag("--expand-heavy", rm_expand, "expand heavy elements into unit paths");

  // lift
  auto* lf = app.add_subcommand("lift", "move solutions across a reduction");
  std::string lf_dir, lf_cert, lf_instance, lf_payload, lf_out;
  lf->add_option("--direction", lf_dir, "pbs-to-clique|pbs-to-mcpp|mcpp-to-pbs")
      ->required()
      ->check(CLI::IsMember({"pbs-to-clique", "pbs-to-mcpp", "mcpp-to-pbs"}));
  lf->add_option("--cert", lf_cert, "certificate sidecar")->required();
  lf->add_option("--instance", lf_instance, "instance file the payload refers to");
  lf->add_option("payload", lf_payload, "selection/solution JSON file (omit for all-passive)");
  lf->add_option("-o,--out", lf_out, "output JSON file");

  // verify
  auto* vf = app.add_subcommand("verify", "check a solution certificate");
  std::string vf_kind = "mcpp", vf_instance, vf_payload;
  vf->add_option("--kind", vf_kind, "mcpp|pbs")->check(CLI::IsMember({"mcpp", "pbs"}));
  vf->add_option("instance", vf_instance, "instance file")->required();
  vf->add_option("payload", vf_payload, "solution/selection JSON file")->required();

  // params
  auto* pr = app.add_subcommand("params", "tree-depth, embedding, pathwidth bound");
  std::string pr_kind = "mixed", pr_file;
  pr->add_option("--kind", pr_kind, "mixed|pbs")->check(CLI::IsMember({"mixed", "pbs"}));
  pr->add_option("file", pr_file, "instance file")->required();

  // gen
  auto* gn = app.add_subcommand("gen", "deterministic instance generator");
  std::string gn_kind, gn_out, gn_form = "t5";
  uint64_t gn_seed = 1;
  int gn_n = 6, gn_m = 10, gn_k = 3, gn_class = 2, gn_prob = 50;
  int gn_zero = 3, gn_dbl = 1, gn_neg = 2, gn_pos = 3, gn_forb = 1;
  gn->add_option("kind", gn_kind, "mixed|pbs|colored")
      ->required()
      ->check(CLI::IsMember({"mixed", "pbs", "colored"}));
  gn->add_option("--seed", gn_seed, "RNG seed");
  gn->add_option("--n", gn_n, "vertices (mixed/pbs)");
  gn->add_option("--m", gn_m, "elements (mixed)");
  gn->add_option("--k", gn_k, "classes (colored)");
  gn->add_option("--class-size", gn_class, "vertices per class (colored)");
  gn->add_option("--edge-prob", gn_prob, "edge probability in percent (colored)");
  gn->add_option("--form", gn_form, "pbs flavor: t2 (reduction input) | t5 (restricted)")
      ->check(CLI::IsMember({"t2", "t5"}));
  gn->add_option("--zero-arcs", gn_zero, "weight-0 arcs (pbs t2)");
  gn->add_option("--double-pairs", gn_dbl, "double pairs (pbs)");
  gn->add_option("--neg", gn_neg, "negative arcs (pbs t5)");
  gn->add_option("--pos", gn_pos, "positive arcs (pbs t5)");
  gn->add_option("--forbidden", gn_forb, "forbidden pairs (pbs t5)");
  gn->add_option("-o,--out", gn_out, "output file")->required();

  // bench
  auto* bn = app.add_subcommand("bench", "serial vs parallel pattern search");
  uint64_t bn_seed = 1;
  int bn_jobs = 4, bn_repeat = 3, bn_cases = 5;
  bn->add_option("--seed", bn_seed, "RNG seed");
  bn->add_option("--jobs", bn_jobs, "parallel workers to compare against");
  bn->add_option("--repeat", bn_repeat, "repetitions per case");
  bn->add_option("--cases", bn_cases, "number of generated cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    if (sm->parsed()) {
      std::string text = read_file(sm_file);
      MixedGraph g = parse_mixed_graph(text);
      report.command = "solve-mcpp";
      report.digest = fnv1a_hex(text);
      if (auto witness = validate_mcpp_instance(g))
        throw InstanceError("not strongly connected: no path from " +
                            std::to_string(witness->first) + " to " +
                            std::to_string(witness->second));
      McppSolution sol;
      json extra;
      if (sm_mode == "naive") {
        sol = naive_mcpp_solution(g);
        extra["iterations"] = 0;
        extra["optimal"] = false;
      } else if (sm_mode == "exact") {
        sol = exact_mcpp_oracle(g);
        extra["iterations"] = 0;
        extra["optimal"] = true;
      } else {
        FptOptions opt;
        opt.arc_cap = sm_cap;
        opt.jobs = sm_jobs;
        McppSolveResult r = solve_mcpp_treedepth(g, opt);
        sol = r.solution;
        extra["iterations"] = r.iterations;
        extra["optimal"] = r.optimal;
        report.complete = r.optimal;
      }
      McppCheck check = verify_mcpp_solution(g, sol);
      report.result = extra;
      report.result["weight"] = check.weight;
      report.result["counts"] = solution_counts_json(sol);
      report.result["walk"] = walk_to_json(extract_closed_walk(g, sol));
      report.emit(quiet, "weight " + std::to_string(check.weight));
      return 0;
    }
    if (sp->parsed()) {
      std::string text = read_file(sp_file);
      PbsInstance p = parse_pbs_instance(text);
      report.command = "solve-pbs";
      report.digest = fnv1a_hex(text);
      std::optional<ArcSelection> sel;
      bool complete = true;
      if (sp_mode == "brute") {
        sel = brute_force_negative_pbs(
            p, sp_cap_set ? std::optional<int>(sp_cap) : std::nullopt);
      } else {
        FptOptions opt;
        opt.arc_cap = sp_cap;
        opt.jobs = sp_jobs;
        FptResult r = fpt_negative_pbs(p, opt);
        sel = r.selection;
        complete = r.complete;
        report.result["tree_depth"] = r.tree_depth;
        report.result["bound"] = r.bound;
        report.result["patterns_tried"] = r.patterns_tried;
      }
      report.complete = complete;
      report.result["found"] = sel.has_value();
      report.result["complete"] = complete;
      if (sel) {
        report.result["weight"] = selection_weight(p, *sel);
        report.result["arcs"] = sel->ids;
      }
      report.emit(quiet, sel ? "found weight " + std::to_string(selection_weight(p, *sel))
                             : "none");
      return 0;
    }
    if (rc->parsed()) {
      std::string text = read_file(rc_in);
      ColoredGraph cg = parse_colored_graph(text);
      report.command = "reduce clique-to-pbs";
      report.digest = fnv1a_hex(text);
      auto [p, cert] = clique_to_pbs(cg);
      write_file(rc_out, serialize_pbs_instance(p));
      std::string cert_path = rc_cert.empty() ? rc_out + ".cert.json" : rc_cert;
      write_file(cert_path, clique_cert_to_json(cert));
      report.result["vertices"] = p.vertex_count();
      report.result["arcs"] = p.arc_count();
      report.result["double_pairs"] = p.double_pairs().size();
      report.result["a_star"] = cert.a_star;
      report.result["decomposition_width"] = cert.decomposition.width();
      report.result["cert"] = cert_path;
      report.emit(quiet, "pbs with " + std::to_string(p.arc_count()) + " arcs -> " + rc_out);
      return 0;
    }
    if (rm->parsed()) {
      std::string text = read_file(rm_in);
      PbsInstance p = parse_pbs_instance(text);
      report.command = "reduce pbs-to-mcpp";
      report.digest = fnv1a_hex(text);
      auto [g, W, cert] = pbs_to_mcpp(p, rm_expand);
      write_file(rm_out, serialize_mixed_graph(g));
      std::string cert_path = rm_cert.empty() ? rm_out + ".cert.json" : rm_cert;
      write_file(cert_path, mcpp_cert_to_json(cert));
      report.result["W"] = W;
      report.result["M"] = cert.M;
      report.result["m1"] = cert.m1;
      report.result["m2"] = cert.m2;
      report.result["vertices"] = g.vertex_count();
      report.result["elements"] = g.element_count();
      report.result["total_weight"] = g.total_weight();
      report.result["strongly_connected"] = !validate_mcpp_instance(g).has_value();
      report.result["decomposition_width"] = cert.decomposition.width();
      report.result["cert"] = cert_path;
      report.emit(quiet, "mcpp with W=" + std::to_string(W) + " -> " + rm_out);
      return 0;
    }
    if (lf->parsed()) {
      report.command = "lift " + lf_dir;
      std::string cert_text = read_file(lf_cert);
      report.digest = fnv1a_hex(cert_text);
      json out;
      if (lf_dir == "pbs-to-clique") {
        CliquePbsCert cert = clique_cert_from_json(cert_text);
        if (lf_instance.empty()) throw InstanceError("--instance (PBS file) required");
        PbsInstance p = load_pbs(lf_instance);
        if (lf_payload.empty()) throw InstanceError("selection payload required");
        ArcSelection s = selection_from_json(read_file(lf_payload));
        out["clique"] = clique_from_pbs_solution(p, cert, s);
      } else if (lf_dir == "pbs-to-mcpp") {
        McppReductionCert cert = mcpp_cert_from_json(cert_text);
        if (lf_instance.empty()) throw InstanceError("--instance (mixed-graph file) required");
        MixedGraph g = load_mixed(lf_instance);
        std::optional<ArcSelection> s;
        if (!lf_payload.empty()) s = selection_from_json(read_file(lf_payload));
        McppSolution sol = mcpp_solution_from_pbs_solution(cert, g, s);
        McppCheck check = verify_mcpp_solution(g, sol);
        if (!check.ok) throw InstanceError("lifted solution does not verify: " + check.why);
        out = json::parse(solution_to_json(sol));
        out["weight"] = check.weight;
      } else {
        McppReductionCert cert = mcpp_cert_from_json(cert_text);
        if (lf_instance.empty()) throw InstanceError("--instance (mixed-graph file) required");
        MixedGraph g = load_mixed(lf_instance);
        if (lf_payload.empty()) throw InstanceError("solution payload required");
        McppSolution sol = solution_from_json(read_file(lf_payload), g);
        ArcSelection s = pbs_solution_from_mcpp_solution(cert, g, sol);
        out = json::parse(selection_to_json(s));
      }
      if (!lf_out.empty()) write_file(lf_out, out.dump(2));
      report.result = out;
      report.emit(quiet, "lifted");
      return 0;
    }
    if (vf->parsed()) {
      report.command = "verify";
      std::string itext = read_file(vf_instance);
      report.digest = fnv1a_hex(itext);
      if (vf_kind == "mcpp") {
        MixedGraph g = parse_mixed_graph(itext);
        McppSolution sol = solution_from_json(read_file(vf_payload), g);
        McppCheck check = verify_mcpp_solution(g, sol);
        report.result["ok"] = check.ok;
        if (check.ok) report.result["weight"] = check.weight;
        else report.result["why"] = check.why;
        report.emit(quiet, check.ok ? "ok weight " + std::to_string(check.weight)
                                    : "invalid: " + check.why);
        return check.ok ? 0 : 1;
      }
      PbsInstance p = parse_pbs_instance(itext);
      ArcSelection s = selection_from_json(read_file(vf_payload));
      PbsViolation viol;
      bool ok = check_properly_balanced(p, s, &viol);
      report.result["ok"] = ok;
      report.result["weight"] = selection_weight(p, s);
      if (!ok) report.result["why"] = viol.to_string();
      report.emit(quiet, ok ? "properly balanced, weight " +
                                  std::to_string(selection_weight(p, s))
                            : "invalid: " + viol.to_string());
      return ok ? 0 : 1;
    }
    if (pr->parsed()) {
      report.command = "params";
      std::string text = read_file(pr_file);
      report.digest = fnv1a_hex(text);
      SimpleGraph g = pr_kind == "mixed" ? underlying_graph(parse_mixed_graph(text))
                                         : underlying_graph(parse_pbs_instance(text));
      auto [td, emb] = tree_depth_exact(g);
      PathDecomposition pd = pathwidth_upper_bound(g);
      std::string why;
      report.result["tree_depth"] = td;
      report.result["embedding_parent"] = emb.parent;
      report.result["embedding_valid"] = verify_tree_embedding(g, emb, &why);
      report.result["pathwidth_bound"] = pd.width();
      report.emit(quiet, "tree-depth " + std::to_string(td) + ", pathwidth <= " +
                             std::to_string(pd.width()));
      return 0;
    }
    if (gn->parsed()) {
      report.command = "gen " + gn_kind;
      std::string payload;
      if (gn_kind == "mixed") {
        payload = serialize_mixed_graph(gen_random_mixed(gn_n, gn_m, gn_seed));
      } else if (gn_kind == "colored") {
        payload = serialize_colored_graph(
            gen_random_colored(gn_k, gn_class, gn_prob, gn_seed));
      } else if (gn_form == "t2") {
        payload = serialize_pbs_instance(
            gen_random_pbs_theorem2(gn_n, gn_zero, gn_dbl, gn_seed));
      } else {
        payload = serialize_pbs_instance(
            gen_random_pbs_restricted(gn_n, gn_neg, gn_pos, gn_dbl, gn_forb, gn_seed));
      }
      write_file(gn_out, payload);
      report.digest = fnv1a_hex(payload);
      report.result["out"] = gn_out;
      report.result["seed"] = gn_seed;
      report.emit(quiet, "wrote " + gn_out);
      return 0;
    }
    if (bn->parsed()) {
      report.command = "bench";
      report.digest = "-";
      json rows = json::array();
      for (int c = 0; c < bn_cases; ++c) {
        MixedGraph g = gen_random_mixed(5 + static_cast<int>(c % 2), 8 + c % 3,
                                        bn_seed + 1000 * c);
        McppSolution h = normalize_solution(g, naive_mcpp_solution(g));
        auto [p, map] = build_comp_pbs(g, h);
        json row;
        row["case"] = c;
        row["arcs"] = p.arc_count();
        double best_serial = 0, best_parallel = 0;
        bool agree = true;
        std::optional<long long> w_serial, w_parallel;
        for (int r = 0; r < bn_repeat; ++r) {
          FptOptions o1;
          o1.jobs = 1;
          auto t0 = std::chrono::steady_clock::now();
          FptResult r1 = fpt_negative_pbs(p, o1);
          double ms1 =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
          FptOptions o2;
          o2.jobs = bn_jobs;
          t0 = std::chrono::steady_clock::now();
          FptResult r2 = fpt_negative_pbs(p, o2);
          double ms2 =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
          if (r == 0 || ms1 < best_serial) best_serial = ms1;
          if (r == 0 || ms2 < best_parallel) best_parallel = ms2;
          w_serial = r1.selection ? std::optional<long long>(selection_weight(p, *r1.selection))
                                  : std::nullopt;
          w_parallel = r2.selection
                           ? std::optional<long long>(selection_weight(p, *r2.selection))
                           : std::nullopt;
          if (r1.selection.has_value() != r2.selection.has_value()) agree = false;
          if (w_serial != w_parallel) agree = false;
        }
        row["serial_ms"] = best_serial;
        row["parallel_ms"] = best_parallel;
        row["jobs"] = bn_jobs;
        row["agree"] = agree;
        rows.push_back(row);
        log_line("bench case " + std::to_string(c) + " done");
      }
      report.result["rows"] = rows;
      report.emit(quiet, "bench done");
      return 0;
    }
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}

}  // namespace postman
