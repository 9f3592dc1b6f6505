#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "hgsparse/cuts.hpp"
#include "hgsparse/hgr_io.hpp"
#include "hgsparse/hypergraph_sparsify.hpp"
#include "hgsparse/linalg.hpp"
#include "hgsparse/overestimate.hpp"
#include "hgsparse/verify.hpp"

namespace hgsparse::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

inline constexpr int kFormatVersion = 1;

/// Text report: a "format=1" line followed by key=value lines. With --json the
/// same fields are written as one JSON object instead.
class Report {
 public:
  Report(std::string command, bool json) : json_(json) {
    doc_["format"] = kFormatVersion;
    doc_["command"] = command;
    text_ += "format=" + std::to_string(kFormatVersion) + "\n";
    text_ += "command=" + command + "\n";
  }

  void put(const std::string& key, double v) {
    doc_[key] = v;
    line(key, format_weight(v));
  }
  void put(const std::string& key, std::size_t v) {
    doc_[key] = v;
    line(key, std::to_string(v));
  }
  void put(const std::string& key, bool v) {
    doc_[key] = v;
    line(key, v ? "true" : "false");
  }
  void put(const std::string& key, const std::string& v) {
    doc_[key] = v;
    line(key, v);
  }
  void put(const std::string& key, const char* v) { put(key, std::string(v)); }

  /// 1-indexed vertex list, space separated in text form.
  void put_vertices(const std::string& key, const std::vector<Vertex>& vs) {
    std::string s;
    auto arr = nlohmann::ordered_json::array();
    for (Vertex v : vs) {
      if (!s.empty()) s += ' ';
      s += std::to_string(v + 1);
      arr.push_back(v + 1);
    }
    doc_[key] = arr;
    line(key, s);
  }

  /// Bare "index value" rows, stored under `key` in JSON.
  void put_rows(const std::string& key, const std::vector<std::pair<std::string, double>>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [label, value] : rows) {
      text_ += label + " " + format_weight(value) + "\n";
      arr.push_back({{"key", label}, {"value", value}});
    }
    doc_[key] = arr;
  }

  void write(std::ostream& out) const {
    if (json_)
      out << doc_.dump(2) << "\n";
    else
      out << text_;
  }

 private:
  void line(const std::string& key, const std::string& value) {
    text_ += key + "=" + value + "\n";
  }

  bool json_;
  std::string text_;
  nlohmann::ordered_json doc_;
};

namespace detail {

struct Options {
  std::string input;
  std::string second;
  std::string output;
  double epsilon = 0.25;
  double cut_epsilon = 0.0;
  Seed seed = 0;
  double sample_constant = 4.0;
  double sum_estimate_eps = 0.0;
  double graph_oversampling = 9.0;
  std::string mode = "cut";
  std::size_t trials = 100;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<std::size_t> pairs;
  double sketch_eps = 0.0;
  std::size_t rounds = 0;
  double alpha1 = 0.1;
  double alpha2 = 0.1;
  bool exact = false;
  bool validate = false;
  bool json = false;
};

inline SparsifyConfig sparsify_config(const Options& o) {
  SparsifyConfig cfg;
  cfg.seed = derive_seed(o.seed, "sparsify");
  cfg.sample_constant = o.sample_constant;
  cfg.sum_estimate_eps = o.sum_estimate_eps;
  cfg.overestimate.graph.oversampling = o.graph_oversampling;
  return cfg;
}

inline int cmd_sparsify(const Options& o, std::ostream& out) {
  const auto h = parse_hypergraph(o.input);
  const auto rep = sparsify_hypergraph(h, [&] {
    auto cfg = sparsify_config(o);
    cfg.eps = o.epsilon;
    return cfg;
  }());
  if (!o.output.empty()) serialize_hypergraph(rep.output, o.output);
  Report r("sparsify", o.json);
  r.put("input", o.input);
  r.put("n", h.num_vertices());
  r.put("m", h.num_edges());
  r.put("rank", h.rank());
  r.put("epsilon", o.epsilon);
  r.put("seed", static_cast<std::size_t>(o.seed));
  r.put("sample_constant", o.sample_constant);
  r.put("sum_estimate_eps", o.sum_estimate_eps);
  r.put("rounds", rep.overestimate.rounds.size());
  r.put("c1", rep.overestimate.c1);
  r.put("z_l1", rep.z_l1);
  r.put("nu_bound", rep.overestimate.nu_bound);
  r.put("s_tilde", rep.s_tilde);
  r.put("samples", rep.samples);
  r.put("distinct_edges", rep.distinct_edges);
  r.put("output", o.output.empty() ? std::string("-") : o.output);
  r.write(out);
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto h = parse_hypergraph(o.input);
  const auto s = parse_hypergraph(o.second);
  Report r("verify", o.json);
  r.put("mode", o.mode);
  r.put("epsilon", o.epsilon);
  bool passed = false;
  if (o.mode == "cut") {
    const auto v = verify_cut_sparsifier(h, s, o.epsilon);
    r.put("max_rel_error", v.max_rel_error);
    r.put_vertices("worst_cut", v.worst_cut);
    r.put("cuts_checked", v.cuts_checked);
    r.put("zero_cut_violations", v.zero_cut_violations);
    passed = v.passed();
  } else {
    const auto v = verify_spectral_sampled(h, s, o.epsilon, o.trials,
                                           derive_seed(o.seed, "verify"));
    r.put("kind", SpectralVerification::kind);
    r.put("max_rel_error", v.max_rel_error);
    r.put("directions_checked", v.directions_checked);
    r.put("sign_vectors", v.sign_vectors);
    r.put("zero_energy_violations", v.zero_energy_violations);
    passed = v.passed();
  }
  r.put("status", passed ? "pass" : "fail");
  r.write(out);
  return passed ? kOk : kViolation;
}

inline int cmd_mincut(const Options& o, std::ostream& out) {
  const auto h = parse_hypergraph(o.input);
  const auto cut = global_mincut(h, o.cut_epsilon, sparsify_config(o));
  Report r("mincut", o.json);
  r.put("epsilon", o.cut_epsilon);
  r.put("approximate", cut.approximate);
  r.put("value", cut.value);
  r.put_vertices("witness", cut.witness);
  r.write(out);
  return kOk;
}

inline int cmd_stmincut(const Options& o, std::ostream& out, std::ostream& err) {
  const auto h = parse_hypergraph(o.input);
  const auto n = h.num_vertices();
  if (o.source < 1 || o.source > n || o.sink < 1 || o.sink > n || o.source == o.sink) {
    err << "error: --source and --sink must be distinct vertex ids in [1, " << n << "]\n";
    return kUsage;
  }
  const auto cut = st_mincut(h, o.source - 1, o.sink - 1, o.cut_epsilon,
                             sparsify_config(o));
  Report r("stmincut", o.json);
  r.put("source", o.source);
  r.put("sink", o.sink);
  r.put("epsilon", o.cut_epsilon);
  r.put("approximate", cut.approximate);
  r.put("value", cut.value);
  r.put_vertices("source_side", cut.source_side);
  r.write(out);
  return kOk;
}

inline int cmd_resistance(const Options& o, std::ostream& out, std::ostream& err) {
  const auto h = parse_hypergraph(o.input);
  const auto n = h.num_vertices();
  if (o.pairs.size() % 2 != 0) {
    err << "error: resistance expects vertex ids in pairs\n";
    return kUsage;
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < o.pairs.size(); i += 2) {
    const auto a = o.pairs[i], b = o.pairs[i + 1];
    if (a < 1 || a > n || b < 1 || b > n || a == b) {
      err << "error: pair (" << a << ", " << b << ") must be distinct ids in [1, " << n << "]\n";
      return kUsage;
    }
    pairs.emplace_back(a - 1, b - 1);
  }
  if (pairs.empty())
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  const auto g = flatten(init_underlying(h));
  std::vector<std::pair<std::string, double>> rows;
  auto label = [](Vertex a, Vertex b) {
    return std::to_string(a + 1) + " " + std::to_string(b + 1);
  };
  Report r("resistance", o.json);
  if (o.sketch_eps > 0.0) {
    const auto sk = build_sketch(g, o.sketch_eps, derive_seed(o.seed, "resistance"));
    r.put("method", "sketch");
    r.put("sketch_eps", o.sketch_eps);
    r.put("sketch_rows", sk.rows());
    for (auto [a, b] : pairs) rows.emplace_back(label(a, b), sk(a, b));
  } else {
    const ResistanceOracle oracle(g);
    r.put("method", "exact");
    for (auto [a, b] : pairs) rows.emplace_back(label(a, b), oracle(a, b));
  }
  r.put("pairs", pairs.size());
  r.put_rows("resistance", rows);
  r.write(out);
  return kOk;
}

inline int cmd_overestimate(const Options& o, std::ostream& out) {
  const auto h = parse_hypergraph(o.input);
  OverestimateConfig cfg;
  cfg.rounds = o.rounds;
  cfg.alpha1 = o.alpha1;
  cfg.alpha2 = o.alpha2;
  cfg.exact = o.exact;
  cfg.seed = derive_seed(o.seed, "overestimate");
  cfg.graph.oversampling = o.graph_oversampling;
  const auto res = compute_overestimate(h, cfg);

  Report r("overestimate", o.json);
  r.put("n", h.num_vertices());
  r.put("m", h.num_edges());
  r.put("rank", h.rank());
  r.put("exact", o.exact);
  r.put("rounds", res.rounds.size());
  r.put("alpha1", res.alpha1);
  r.put("alpha2", res.alpha2);
  r.put("c1", res.c1);
  std::vector<std::pair<std::string, double>> rows;
  for (EdgeId e = 0; e < res.z.size(); ++e) rows.emplace_back(std::to_string(e + 1), res.z[e]);
  r.put_rows("z", rows);
  r.put("z_l1", res.l1());
  r.put("nu_bound", res.nu_bound);
  int code = kOk;
  if (o.validate) {
    const auto v = validate_overestimate(h, res);
    r.put("violations", v.violations.size());
    r.put("l1_within_bound", v.l1_ok);
    r.put("nu_bound_loose", v.nu_bound_loose);
    r.put("witness_deviation", v.witness_deviation);
    r.put("status", v.ok() ? "pass" : "fail");
    if (!v.ok()) code = kViolation;
  }
  r.write(out);
  return code;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  detail::Options o;
  CLI::App app{"Hypergraph spectral sparsification toolkit", "hgsparse"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Global random seed")->capture_default_str();
    sub->add_flag("--json", o.json, "Emit the report as JSON");
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--sample-constant", o.sample_constant, "Hyperedge sampling constant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--graph-oversampling", o.graph_oversampling,
                    "Oversampling constant of the graph sparsifier")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--sum-estimate-eps", o.sum_estimate_eps,
                    "Relative error emulated on the mass estimate (0 = exact)")
        ->check(CLI::Range(0.0, 0.999999))
        ->capture_default_str();
  };

  auto* sp = app.add_subcommand("sparsify", "Sparsify a hypergraph");
  sp->add_option("input", o.input, "Input .hgr file")->required();
  sp->add_option("--epsilon", o.epsilon, "Target accuracy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sp->add_option("-o,--output", o.output, "Write the sparsifier here");
  sampling(sp);
  common(sp);

  auto* ve = app.add_subcommand("verify", "Check a sparsifier against its source");
  ve->add_option("input", o.input, "Original .hgr file")->required();
  ve->add_option("sparsifier", o.second, "Sparsifier .hgr file")->required();
  ve->add_option("--mode", o.mode, "cut (exhaustive) or spectral (sampled)")
      ->check(CLI::IsMember({"cut", "spectral"}))
      ->capture_default_str();
  ve->add_option("--epsilon", o.epsilon, "Accepted relative error")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ve->add_option("--trials", o.trials, "Random directions for spectral mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common(ve);

  auto* mc = app.add_subcommand("mincut", "Global hypergraph minimum cut");
  mc->add_option("input", o.input, "Input .hgr file")->required();
  mc->add_option("--epsilon", o.cut_epsilon, "Approximation (0 = exact)")
      ->check(CLI::NonNegativeNumber);
  sampling(mc);
  common(mc);

  auto* st = app.add_subcommand("stmincut", "s-t hypergraph minimum cut");
  st->add_option("input", o.input, "Input .hgr file")->required();
  st->add_option("--source", o.source, "Source vertex (1-indexed)")->required();
  st->add_option("--sink", o.sink, "Sink vertex (1-indexed)")->required();
  st->add_option("--epsilon", o.cut_epsilon, "Approximation (0 = exact)")
      ->check(CLI::NonNegativeNumber);
  sampling(st);
  common(st);

  auto* rs = app.add_subcommand("resistance",
                                "Effective resistances in the initial star underlying graph");
  rs->add_option("input", o.input, "Input .hgr file")->required();
  rs->add_option("pairs", o.pairs, "Vertex pairs a b [a b ...] (1-indexed; default: all)");
  rs->add_option("--sketch-eps", o.sketch_eps, "Use a resistance sketch (0 = exact)")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  common(rs);

  auto* ov = app.add_subcommand("overestimate", "Hyperedge leverage-score overestimates");
  ov->add_option("input", o.input, "Input .hgr file")->required();
  ov->add_option("--rounds", o.rounds, "Reweighting rounds (0 = default for the rank)")
      ->capture_default_str();
  ov->add_option("--alpha1", o.alpha1, "Graph sparsifier accuracy")
      ->check(CLI::Range(1e-9, 0.999999))
      ->capture_default_str();
  ov->add_option("--alpha2", o.alpha2, "Resistance sketch accuracy")
      ->check(CLI::Range(1e-9, 0.999999))
      ->capture_default_str();
  ov->add_option("--graph-oversampling", o.graph_oversampling,
                 "Oversampling constant of the graph sparsifier")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ov->add_flag("--exact", o.exact, "Exact resistances, no graph sparsification");
  ov->add_flag("--validate", o.validate, "Check the overestimate against its witness");
  common(ov);

  std::vector<const char*> argv{"hgsparse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  try {
    if (sp->parsed()) return detail::cmd_sparsify(o, out);
    if (ve->parsed()) return detail::cmd_verify(o, out);
    if (mc->parsed()) return detail::cmd_mincut(o, out);
    if (st->parsed()) return detail::cmd_stmincut(o, out, err);
    if (rs->parsed()) return detail::cmd_resistance(o, out, err);
    if (ov->parsed()) return detail::cmd_overestimate(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.get_subcommands().front()->help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace hgsparse::cli
