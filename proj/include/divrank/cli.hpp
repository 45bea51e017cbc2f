#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divrank/corpus.hpp"
#include "divrank/io.hpp"
#include "divrank/parallel.hpp"
#include "divrank/structure.hpp"

namespace divrank {

struct CliResult {
  int exit_code = 0;
  std::string out;  // json (one document, or help text)
  std::string err;  // plain text diagnostics only
};

namespace detail {

/// Seeded generator with a fixed mapping to ranges, so identical seeds give
/// identical streams everywhere.
struct Rng {
  std::mt19937 gen;
  explicit Rng(uint32_t seed) : gen(seed) {}
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<uint64_t>(hi - lo + 1));
  }
};

inline std::pair<long long, long long> parse_window(const std::string& spec) {
  auto pos = spec.find("..");
  if (pos == std::string::npos) fail(Errc::ParseError, "window must look like 'a..b'");
  Rational lo = parse_rational(spec.substr(0, pos));
  Rational hi = parse_rational(spec.substr(pos + 2));
  if (lo.den != 1 || hi.den != 1 || lo.num > hi.num)
    fail(Errc::ParseError, "window must be two integers a..b with a <= b");
  return {lo.num, hi.num};
}

inline json divisor_spec_json(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_json_text(spec);
  return load_json_file(spec);
}

inline json bridge_report_json(const BridgeReport& rep) {
  return json{{"bridge", rep.bridge},
              {"v1", rep.v1},
              {"v2", rep.v2},
              {"d1", divisor_to_json(rep.d1)},
              {"d2", divisor_to_json(rep.d2)},
              {"r", rep.r},
              {"r1", rep.r1},
              {"r2", rep.r2},
              {"r1_minus", rep.r1_minus},
              {"r2_minus", rep.r2_minus},
              {"v1_base", rep.v1_base},
              {"v2_base", rep.v2_base},
              {"basepoint_case", rep.basepoint_case},
              {"bound_sum", rep.bound_sum},
              {"bound_punctured", rep.bound_punctured},
              {"holds", rep.holds}};
}

/// All coefficient vectors of [lo,hi]^n by linear index; deterministic.
struct WindowIter {
  long long lo, hi, span;
  int n;
  long long count;

  WindowIter(long long lo_, long long hi_, int n_) : lo(lo_), hi(hi_), span(hi_ - lo_ + 1), n(n_) {
    count = 1;
    for (int i = 0; i < n; ++i) {
      count *= span;
      if (count > 50'000'000) fail(Errc::TooLarge, "window sweep too large");
    }
  }

  std::vector<long long> at(long long index) const {
    std::vector<long long> c(n);
    for (int i = 0; i < n; ++i) {
      c[i] = lo + index % span;
      index /= span;
    }
    return c;
  }
};

inline void require_unweighted(const WeightedGraph& wg, const char* hint) {
  if (wg.total_weight() != 0)
    fail(Errc::InvalidArgument, std::string("graph carries vertex weights; ") + hint);
}

}  // namespace detail

/// Runs one CLI invocation. Exit codes: 0 success / all checked properties
/// hold, 1 a checked property failed, 2 input error.
inline CliResult run_cli(std::vector<std::string> args) {
  CliResult result;
  CLI::App app{"divisor theory on vertex-weighted graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent json output (cosmetic only)");

  std::string graph_path, divisor_spec, base_vertex, window_spec;
  long long s_max = 12, edge_id = -1, deg_bound = 2, samples = 0, seed = 1, refine = 1;
  long long max_v = 4, max_e = 6;
  bool weighted = false, bridges_only = false, n_auto = true;
  std::string out_dir;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("graph", graph_path, "graph json file")->required();
  };

  auto* cmd_genus = app.add_subcommand("genus", "genus and weighted genus");
  add_graph(cmd_genus);

  auto* cmd_canonical = app.add_subcommand("canonical", "canonical divisor");
  add_graph(cmd_canonical);
  cmd_canonical->add_flag("--weighted", weighted, "use the weighted canonical divisor");

  auto* cmd_reduce = app.add_subcommand("reduce", "base-reduced form and witness");
  add_graph(cmd_reduce);
  cmd_reduce->add_option("--divisor", divisor_spec, "divisor json or file")->required();
  cmd_reduce->add_option("--base", base_vertex, "base vertex")->required();

  auto* cmd_rank = app.add_subcommand("rank", "divisor rank");
  add_graph(cmd_rank);
  cmd_rank->add_option("--divisor", divisor_spec, "divisor json or file")->required();
  cmd_rank->add_flag("--weighted", weighted, "rank on the virtual loopless graph");

  auto* cmd_oracle = app.add_subcommand("rank-oracle", "rank by definitional enumeration");
  add_graph(cmd_oracle);
  cmd_oracle->add_option("--divisor", divisor_spec, "divisor json or file")->required();
  cmd_oracle->add_option("--s-max", s_max, "enumeration budget (default 12)");

  auto* cmd_bridges = app.add_subcommand("bridges", "bridge edges");
  add_graph(cmd_bridges);

  auto* cmd_split = app.add_subcommand("split", "split at a bridge");
  add_graph(cmd_split);
  cmd_split->add_option("--edge", edge_id, "bridge edge id")->required();

  auto* cmd_hyper = app.add_subcommand("hyperelliptic", "degree-2 rank-1 class search");
  add_graph(cmd_hyper);

  auto* cmd_cb = app.add_subcommand("check-bridge", "bridge rank inequalities");
  add_graph(cmd_cb);
  cmd_cb->add_option("--divisor", divisor_spec, "single divisor to check");
  cmd_cb->add_option("--edge", edge_id, "restrict to one bridge");
  cmd_cb->add_option("--window", window_spec, "sweep coefficients in a..b (default -1..2)");
  cmd_cb->add_option("--out", out_dir, "directory for the full jsonl report");

  auto* cmd_g3 = app.add_subcommand("check-genus3", "small-degree rank bound on genus-3 graphs");
  add_graph(cmd_g3);
  cmd_g3->add_option("--deg-bound", deg_bound, "degree bound (default 2)");

  auto* cmd_rr = app.add_subcommand("check-rr", "riemann-roch residual sweep");
  add_graph(cmd_rr);
  cmd_rr->add_option("--window", window_spec, "exhaustive coefficients a..b (default -2..3)");
  cmd_rr->add_option("--samples", samples, "random divisors instead of a window");
  cmd_rr->add_option("--seed", seed, "sample seed (default 1)");

  auto* cmd_jac = app.add_subcommand("jacobian", "invariant factors of the class group");
  add_graph(cmd_jac);

  auto* cmd_metric = app.add_subcommand("metric-rank", "rank of a metric divisor");
  add_graph(cmd_metric);
  cmd_metric->add_option("--divisor", divisor_spec, "metric divisor json or file")->required();
  cmd_metric->add_flag("--n-auto", n_auto, "choose the model from the denominators (default)");
  cmd_metric->add_option("--refine", refine, "extra uniform refinement factor");

  auto* cmd_corpus = app.add_subcommand("corpus", "enumerate the small-graph corpus");
  cmd_corpus->add_option("--max-v", max_v, "vertex bound")->required();
  cmd_corpus->add_option("--max-e", max_e, "edge bound")->required();
  cmd_corpus->add_flag("--bridges-only", bridges_only, "keep only graphs with a bridge");
  cmd_corpus->add_option("--out", out_dir, "write graph files and manifest here");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    os << app.help();
    result.out = os.str();
    return result;
  } catch (const CLI::ParseError& e) {
    result.err = std::string(e.what()) + "\n";
    result.exit_code = 2;
    return result;
  }

  json out;
  try {
    auto load_graph = [&] { return graph_from_json(load_json_file(graph_path)); };

    if (app.got_subcommand(cmd_genus)) {
      WeightedGraph wg = load_graph();
      wg.graph().ensure_valid();
      out = {{"genus", genus(wg.graph())}, {"weighted_genus", weighted_genus(wg)}};
    } else if (app.got_subcommand(cmd_canonical)) {
      WeightedGraph wg = load_graph();
      Divisor k = weighted ? canonical_weighted(wg) : canonical(wg.graph());
      out = {{"canonical", divisor_to_json(k)}, {"degree", k.degree()}};
    } else if (app.got_subcommand(cmd_reduce)) {
      WeightedGraph wg = load_graph();
      Divisor d = divisor_from_json(detail::divisor_spec_json(divisor_spec), wg.graph());
      ReducedForm rf = reduce(d, base_vertex);
      out = {{"reduced", divisor_to_json(rf.reduced)},
             {"witness", intfunction_to_json(rf.witness)},
             {"base", rf.base}};
    } else if (app.got_subcommand(cmd_rank)) {
      WeightedGraph wg = load_graph();
      Divisor d = divisor_from_json(detail::divisor_spec_json(divisor_spec), wg.graph());
      int r;
      if (weighted) {
        r = rank_weighted(wg, d);
      } else {
        detail::require_unweighted(wg, "pass --weighted");
        r = rank(d);
      }
      out = {{"rank", r}};
    } else if (app.got_subcommand(cmd_oracle)) {
      WeightedGraph wg = load_graph();
      detail::require_unweighted(wg, "the oracle works on unweighted graphs");
      Divisor d = divisor_from_json(detail::divisor_spec_json(divisor_spec), wg.graph());
      out = {{"rank", rank_oracle(d, s_max)}};
    } else if (app.got_subcommand(cmd_bridges)) {
      WeightedGraph wg = load_graph();
      json list = json::array();
      for (int e : bridges(wg.graph())) {
        const auto& [a, b] = wg.graph().edges()[e];
        list.push_back({{"edge", e}, {"endpoints", {a, b}}});
      }
      out = {{"bridges", list}};
    } else if (app.got_subcommand(cmd_split)) {
      WeightedGraph wg = load_graph();
      BridgeSplit split = split_at_bridge(wg.graph(), static_cast<int>(edge_id));
      out = {{"v1", split.v1},
             {"g1", graph_to_json(detail::restrict_weights(wg, split.g1))},
             {"v2", split.v2},
             {"g2", graph_to_json(detail::restrict_weights(wg, split.g2))}};
    } else if (app.got_subcommand(cmd_hyper)) {
      WeightedGraph wg = load_graph();
      auto witness = hyperelliptic_witness(wg);
      out = {{"hyperelliptic", witness.has_value()}};
      if (witness) out["witness"] = divisor_to_json(*witness);
    } else if (app.got_subcommand(cmd_cb)) {
      WeightedGraph wg = load_graph();
      auto bridge_ids = bridges(wg.graph());
      if (edge_id >= 0) {
        bridge_ids.clear();
        bridge_ids.push_back(static_cast<int>(edge_id));
      }
      if (bridge_ids.empty()) fail(Errc::NotABridge, "graph has no bridge");
      bool all_hold = true;

      if (!divisor_spec.empty()) {
        Divisor d = divisor_from_json(detail::divisor_spec_json(divisor_spec), wg.graph());
        json reports = json::array();
        for (int e : bridge_ids) {
          BridgeReport rep = check_bridge_inequalities(wg, e, d);
          all_hold = all_hold && rep.holds;
          reports.push_back(detail::bridge_report_json(rep));
        }
        out = {{"reports", reports}, {"all_hold", all_hold}};
      } else {
        auto [lo, hi] = detail::parse_window(window_spec.empty() ? "-1..2" : window_spec);
        detail::WindowIter window(lo, hi, wg.graph().vertex_count());
        const long long total = window.count * static_cast<long long>(bridge_ids.size());
        std::vector<std::optional<json>> reports(static_cast<size_t>(total));
        std::vector<char> holds(static_cast<size_t>(total), 1);
        bool want_full = !out_dir.empty();
        detail::parallel_for(total, [&](long long i) {
          long long div_index = i / static_cast<long long>(bridge_ids.size());
          int e = bridge_ids[static_cast<size_t>(i % bridge_ids.size())];
          Divisor d = Divisor::from_dense(wg.graph(), window.at(div_index));
          BridgeReport rep = check_bridge_inequalities(wg, e, d);
          holds[static_cast<size_t>(i)] = rep.holds ? 1 : 0;
          if (!rep.holds || want_full)
            reports[static_cast<size_t>(i)] = detail::bridge_report_json(rep);
        });
        json violations = json::array();
        for (long long i = 0; i < total; ++i)
          if (!holds[static_cast<size_t>(i)]) {
            violations.push_back(*reports[static_cast<size_t>(i)]);
            all_hold = false;
          }
        out = {{"bridges", bridge_ids},
               {"checked", total},
               {"window", json::array({lo, hi})},
               {"violations", violations}};
        if (want_full) {
          std::filesystem::create_directories(out_dir);
          std::ofstream jsonl(std::filesystem::path(out_dir) / "bridge_checks.jsonl");
          for (long long i = 0; i < total; ++i) jsonl << reports[static_cast<size_t>(i)]->dump() << "\n";
          jsonl << json{{"summary", out}}.dump() << "\n";
          out["out"] = out_dir;
        }
      }
      if (!all_hold) result.exit_code = 1;
    } else if (app.got_subcommand(cmd_g3)) {
      WeightedGraph wg = load_graph();
      auto violations = check_genus3_claim(wg, deg_bound);
      json list = json::array();
      for (const auto& d : violations) list.push_back(divisor_to_json(d));
      out = {{"deg_bound", deg_bound}, {"violations", list}};
      if (!violations.empty()) result.exit_code = 1;
    } else if (app.got_subcommand(cmd_rr)) {
      WeightedGraph wg = load_graph();
      const int n = wg.graph().vertex_count();
      std::vector<std::vector<long long>> divisors;
      json meta;
      if (samples > 0) {
        auto [lo, hi] = detail::parse_window(window_spec.empty() ? "-2..3" : window_spec);
        detail::Rng rng(static_cast<uint32_t>(seed));
        for (long long s = 0; s < samples; ++s) {
          std::vector<long long> c(n);
          for (auto& v : c) v = rng.uniform(lo, hi);
          divisors.push_back(std::move(c));
        }
        meta = {{"mode", "samples"}, {"samples", samples}, {"seed", seed}};
      } else {
        auto [lo, hi] = detail::parse_window(window_spec.empty() ? "-2..3" : window_spec);
        detail::WindowIter window(lo, hi, n);
        for (long long i = 0; i < window.count; ++i) divisors.push_back(window.at(i));
        meta = {{"mode", "window"}, {"window", json::array({lo, hi})}};
      }
      std::vector<long long> residuals(divisors.size(), 0);
      detail::parallel_for(static_cast<long long>(divisors.size()), [&](long long i) {
        Divisor d = Divisor::from_dense(wg.graph(), divisors[static_cast<size_t>(i)]);
        residuals[static_cast<size_t>(i)] = riemann_roch_residual(wg, d);
      });
      json violations = json::array();
      for (size_t i = 0; i < divisors.size(); ++i)
        if (residuals[i] != 0)
          violations.push_back(
              {{"divisor", divisor_to_json(Divisor::from_dense(wg.graph(), divisors[i]))},
               {"residual", residuals[i]}});
      out = meta;
      out["checked"] = divisors.size();
      out["violations"] = violations;
      if (!violations.empty()) result.exit_code = 1;
    } else if (app.got_subcommand(cmd_jac)) {
      WeightedGraph wg = load_graph();
      out = {{"invariants", jacobian_invariants(wg.graph())},
             {"spanning_trees", spanning_tree_count(wg.graph())}};
    } else if (app.got_subcommand(cmd_metric)) {
      WeightedGraph wg = load_graph();
      MetricDivisor md = metric_divisor_from_json(detail::divisor_spec_json(divisor_spec), wg);
      (void)n_auto;  // the model is always denominator-derived; kept as an explicit flag
      int r = metric_rank_refined(md, refine);
      out = {{"rank", r}, {"model_n", md.model_n() * refine}};
    } else if (app.got_subcommand(cmd_corpus)) {
      Corpus corpus =
          enumerate_small(static_cast<int>(max_v), static_cast<int>(max_e), bridges_only);
      json names = json::array();
      for (const auto& [name, g] : corpus.graphs) names.push_back(name);
      out = {{"count", corpus.graphs.size()}, {"names", names}};
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream manifest(std::filesystem::path(out_dir) / "manifest.jsonl");
        for (const auto& [name, g] : corpus.graphs) {
          std::string file = name + ".json";
          std::ofstream gf(std::filesystem::path(out_dir) / file);
          gf << graph_to_json(g).dump() << "\n";
          manifest << json{{"name", name},
                           {"file", file},
                           {"vertices", g.graph().vertex_count()},
                           {"edges", g.graph().edge_count()},
                           {"genus", genus(g.graph())},
                           {"bridges", bridges(g.graph())}}
                          .dump()
                   << "\n";
        }
        out["out"] = out_dir;
      }
    }
  } catch (const Error& e) {
    result.err = std::string(e.what()) + "\n";
    result.exit_code = 2;
    return result;
  } catch (const std::exception& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  }

  result.out = out.dump(pretty ? 2 : -1) + "\n";
  return result;
}

}  // namespace divrank
