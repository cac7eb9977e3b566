#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "inducilab/inducilab.hpp"

namespace {

using namespace inducilab;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSoftware = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw UsageError(std::string("bad ") + what + " '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

Rational parse_fraction(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " '" + s + "'");
  }
}

double parse_probability(const std::string& s) {
  char* end = nullptr;
  const double p = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !(p > 0 && p < 1)) throw UsageError("--p must lie strictly between 0 and 1, got '" + s + "'");
  return p;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A graph given by name (C5, K3, P4, E2), a Cayley JSON file, or a graph6 file.
Graph load_graph(const std::string& spec) {
  if (auto g = graphs::named(spec)) return *g;
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return cayley_from_json(read_json_file(spec)).graph;
  std::string text = read_text(spec);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (auto nl = text.find('\n'); nl != std::string::npos) text = text.substr(0, nl);
  return graph6_decode(text);
}

CayleyGraph load_cayley(const std::string& spec) {
  if (auto g = graphs::named(spec); g && spec[0] == 'C' && g->order() >= 3) {
    auto z = AbelianGroup::cyclic(g->order());
    return build_cayley(z, ConnectionSet(z, {1, g->order() - 1}));
  }
  if (auto g = graphs::named(spec); g && spec[0] == 'K') {
    auto z = AbelianGroup::cyclic(g->order());
    std::vector<std::size_t> all;
    for (std::size_t i = 1; i < g->order(); ++i) all.push_back(i);
    return build_cayley(z, ConnectionSet(z, all));
  }
  return cayley_from_json(read_json_file(spec));
}

LeafPolicy parse_leaf(const std::string& s, const Graph& h) {
  if (s == "empty") return LeafPolicy::empty_graph();
  if (s == "emb-max") return LeafPolicy::emb_maximizer(h);
  throw UsageError("--leaf must be 'empty' or 'emb-max'");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ParseError("cannot write '" + out + "'", 0);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

unsigned default_workers() {
  if (const char* env = std::getenv("INDUCILAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  return 1;
}

RunManifest start_manifest(const std::string& command, std::uint64_t seed, unsigned workers) {
  RunManifest m;
  m.command = command;
  m.seed = seed;
  m.workers = workers;
  m.started = utc_timestamp();
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley-graph inducibility toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  std::string out;
  auto common = [&](CLI::App* sub, bool with_seed) {
    if (with_seed) sub->add_option("--seed", seed, "random seed");
    sub->add_option("--workers", workers, "worker threads (INDUCILAB_WORKERS when unset)")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "output file (default stdout)");
  };

  // sample
  std::string factors = "5", p_text = "0.5", graph6_out;
  auto* sample = app.add_subcommand("sample", "sample a random Cayley graph");
  sample->add_option("--factors", factors, "cyclic factor orders, e.g. 3,4");
  sample->add_option("--p", p_text, "inclusion probability per class {g,-g}");
  sample->add_option("--graph6-out", graph6_out, "also write the graph in graph6 format");
  common(sample, true);

  // check
  std::string cayley_file, q0_text = "1/100", d0_text = "1/200", variant = "iv", replay_file, delete_text, q_text, d_text;
  long budget_ms = 0;
  bool reasonable = false;
  auto* check = app.add_subcommand("check", "check typicality (or reasonableness) of a Cayley graph");
  check->add_option("cayley", cayley_file, "Cayley JSON file, or Cn / Kn")->required();
  check->add_option("--q0", q0_text, "typicality parameter q0");
  check->add_option("--delta0", d0_text, "typicality parameter delta0");
  check->add_option("--variant", variant, "iv or iv-prime")->check(CLI::IsMember({"iv", "iv-prime"}));
  check->add_option("--budget-ms", budget_ms, "time budget for searches; exhausted searches report Skipped");
  check->add_option("--replay", replay_file, "re-verify the witnesses stored in a report");
  check->add_flag("--reasonable", reasonable, "check the reasonable-subgraph conditions instead");
  check->add_option("--delete", delete_text, "vertices removed to form H (with --reasonable)");
  check->add_option("--q", q_text, "reasonableness parameter q");
  check->add_option("--delta", d_text, "reasonableness parameter delta");
  common(check, false);

  // count
  std::string h_spec, g_spec;
  auto* count = app.add_subcommand("count", "exact emb, aut and ind counts");
  count->add_option("H", h_spec, "pattern: name (C5, K3, P4), graph6 file or Cayley JSON")->required();
  count->add_option("Gamma", g_spec, "host graph")->required();
  common(count, false);

  // blowup
  std::string base_spec = "C5", leaf_text = "empty", h_vertices_text;
  std::size_t n = 0;
  bool random_tree = false;
  auto* blowup = app.add_subcommand("blowup", "build a balanced iterated (or random) blow-up");
  blowup->add_option("--base", base_spec, "base graph");
  blowup->add_option("--n", n, "number of vertices")->required();
  blowup->add_option("--leaf", leaf_text, "leaf policy: empty or emb-max");
  blowup->add_flag("--random", random_tree, "random part sizes instead of balanced ones");
  blowup->add_option("--graph6-out", graph6_out, "also write the materialized graph in graph6 format");
  common(blowup, true);

  // optimize
  bool reduce = false, positive = false;
  auto* optimize = app.add_subcommand("optimize", "maximize T over part sizes of a one-level blow-up");
  optimize->add_option("--base", base_spec, "Cayley base: Cn or a Cayley JSON file");
  optimize->add_option("--n", n, "number of vertices")->required();
  optimize->add_option("--h-vertices", h_vertices_text, "vertices of H inside the base (default all)");
  optimize->add_option("--leaf", leaf_text, "leaf policy: empty or emb-max");
  optimize->add_flag("--reduce", reduce, "evaluate one composition per symmetry class");
  optimize->add_flag("--positive-parts", positive, "only compositions with every part non-empty");
  common(optimize, false);

  // verify-suite
  bool quick = false;
  auto* verify = app.add_subcommand("verify-suite", "run every invariant suite and print a pass/fail matrix");
  verify->add_flag("--quick", quick, "reduced sizes");
  common(verify, true);

  // sweep
  std::string ktilde_text = "11,13,17", ps_text = "0.3,0.5";
  std::size_t samples = 50;
  double alpha = 0.05, target = 0.5;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo typicality frequencies on cyclic groups (CSV)");
  sweep->add_option("--ktilde", ktilde_text, "group orders");
  sweep->add_option("--p", ps_text, "probabilities");
  sweep->add_option("--samples", samples, "samples per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--alpha", alpha, "Wilson interval level")->check(CLI::Range(1e-6, 0.5));
  sweep->add_option("--target", target, "pass rate a Consistent cell must be able to reach")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--budget-ms", budget_ms, "time budget per check");
  common(sweep, true);

  // signature
  std::string trials_text = "20", log_base_text = "e";
  bool super = false;
  auto* signature = app.add_subcommand("signature", "find a (super-)signature by random sampling");
  signature->add_option("graph", g_spec, "graph")->required();
  signature->add_option("--q", q_text, "parameter q")->required();
  signature->add_option("--trials", trials_text, "attempts");
  signature->add_option("--log-base", log_base_text, "logarithm base: e, 2 or 10")->check(CLI::IsMember({"e", "2", "10"}));
  signature->add_flag("--super", super, "search for a q/4-super-signature");
  common(signature, true);

  // preconditions / ledger
  std::string ktilde_mag = "10^200", k_mag;
  std::size_t deleted = 0;
  auto* pre = app.add_subcommand("preconditions", "theorem precondition arithmetic in log space");
  pre->add_option("--ktilde", ktilde_mag, "group order, e.g. 10^200");
  pre->add_option("--p", p_text, "edge probability");
  pre->add_option("--deleted", deleted, "number of deleted vertices");
  pre->add_option("--q", q_text, "override q");
  pre->add_option("--delta", d_text, "override delta");
  common(pre, false);

  std::string qs_text = "1/100000000000000000000";
  auto* ledger = app.add_subcommand("ledger", "epsilon parameter ledger (CSV, or JSON for one q)");
  ledger->add_option("--q", qs_text, "comma-separated q values");
  ledger->add_option("--k", k_mag, "k, e.g. 10^200");
  ledger->add_option("--delta", d_text, "delta");
  ledger->add_flag("--json", quick, "JSON report for the first q");
  common(ledger, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) {
      const double p = parse_probability(p_text);
      AbelianGroup g(parse_sizes(factors, "--factors"));
      auto h = build_cayley(g, sample_connection_set(g, p, seed));
      emit(dump(cayley_to_json(h, p, seed)), out);
      if (!graph6_out.empty()) emit(graph6_encode(h.graph) + "\n", graph6_out);
      return 0;
    }

    if (*check) {
      auto manifest = start_manifest(reasonable ? "check --reasonable" : "check", 0, workers);
      auto h = load_cayley(cayley_file);
      const Rational q0 = parse_fraction(q0_text, "--q0"), d0 = parse_fraction(d0_text, "--delta0");
      manifest.parameters = {{"cayley", cayley_file}, {"budget_ms", budget_ms}};
      if (!replay_file.empty()) {
        auto stored = read_json_file(replay_file);
        const auto& params = stored.at("manifest").at("parameters");
        const Rational q = parse_fraction(params.value("q0", params.value("q", q0_text)), "stored q");
        const Rational d = parse_fraction(params.value("delta0", params.value("delta", d0_text)), "stored delta");
        std::optional<VertexSet> hv;
        if (params.contains("deleted")) {
          hv = h.graph.all_vertices();
          for (auto v : params["deleted"].get<std::vector<std::size_t>>()) hv->erase(v);
        }
        Json results = Json::object();
        bool all = true;
        for (auto& [name, v] : stored.at("conditions").items()) {
          if (v.at("verdict") != "Fail") continue;
          const std::string cond = hv && name == "distinguishers" ? "reasonable_distinguishers" : name;
          const bool ok = replay_witness(h, cond, witness_from_json(v.at("witness")), q, d, hv);
          results[name] = ok ? "reproduced" : "not reproduced";
          all = all && ok;
        }
        manifest.parameters["replay"] = replay_file;
        manifest.finished = utc_timestamp();
        emit(dump(make_report("witness_replay", {{"results", results}}, manifest)), out);
        return all ? 0 : 1;
      }
      if (reasonable) {
        VertexSet hv = h.graph.all_vertices();
        std::vector<std::size_t> del;
        if (!delete_text.empty()) del = parse_sizes(delete_text, "--delete");
        for (auto v : del) {
          if (v >= h.graph.order()) throw UsageError("--delete vertex out of range");
          hv.erase(v);
        }
        const Rational q = q_text.empty() ? q0 : parse_fraction(q_text, "--q"), d = d_text.empty() ? d0 : parse_fraction(d_text, "--delta");
        manifest.parameters["q"] = to_string(q);
        manifest.parameters["delta"] = to_string(d);
        manifest.parameters["deleted"] = del;
        auto rep = check_reasonable(h, hv, q, d, std::chrono::milliseconds(budget_ms), workers);
        manifest.finished = utc_timestamp();
        emit(dump(make_report("reasonable_report", reasonable_to_json(rep), manifest)), out);
        return rep.exit_code();
      }
      manifest.parameters["q0"] = to_string(q0);
      manifest.parameters["delta0"] = to_string(d0);
      manifest.parameters["variant"] = variant;
      TypicalityOptions opt;
      opt.budget = std::chrono::milliseconds(budget_ms);
      opt.workers = workers;
      opt.include_iv_prime = variant == "iv-prime";
      auto rep = check_typical(h, q0, d0, opt);
      manifest.finished = utc_timestamp();
      emit(dump(make_report("typicality_report", typicality_to_json(rep), manifest)), out);
      return rep.exit_code();
    }

    if (*count) {
      auto manifest = start_manifest("count", 0, workers);
      manifest.parameters = {{"H", h_spec}, {"Gamma", g_spec}};
      auto h = load_graph(h_spec), g = load_graph(g_spec);
      const BigCount emb = count_embeddings(h, g, {}, workers), aut = count_automorphisms(h);
      manifest.finished = utc_timestamp();
      Json body{{"emb", to_string(emb)}, {"aut", to_string(aut)}, {"ind", to_string(BigCount(emb / aut))}};
      emit(dump(make_report("count_report", body, manifest)), out);
      return 0;
    }

    if (*blowup) {
      auto base = load_graph(base_spec);
      auto policy = parse_leaf(leaf_text, base);
      auto tree = random_tree ? random_blowup_tree(base, n, seed) : balanced_iterated_tree(base, n, policy);
      emit(dump(blowup_tree_to_json(tree)), out);
      if (!graph6_out.empty()) emit(graph6_encode(build_blowup(tree)) + "\n", graph6_out);
      return 0;
    }

    if (*optimize) {
      auto manifest = start_manifest("optimize", 0, workers);
      auto host = load_cayley(base_spec);
      VertexSet hv = host.graph.all_vertices();
      if (!h_vertices_text.empty()) hv = VertexSet::from_range(host.graph.order(), parse_sizes(h_vertices_text, "--h-vertices"));
      PatternInCayley p(host, hv);
      auto policy = parse_leaf(leaf_text, p.graph());
      PartitionOptions opt;
      opt.reduce = reduce;
      opt.min_part = positive ? 1 : 0;
      opt.workers = workers;
      manifest.parameters = {{"base", base_spec}, {"n", n}, {"h_vertices", hv.members()}, {"leaf", policy.name()}, {"reduce", reduce}, {"positive_parts", positive}};
      auto rep = optimize_partition(p, n, policy, opt);
      manifest.finished = utc_timestamp();
      Json body = partition_to_json(rep, policy);
      body["maximizer_count"] = rep.maximizers.size();
      emit(dump(make_report("partition_report", body, manifest)), out);
      return 0;
    }

    if (*verify) {
      auto manifest = start_manifest("verify-suite", seed, workers);
      manifest.parameters = {{"quick", quick}};
      SuiteOptions opt;
      opt.quick = quick;
      opt.seed = seed;
      opt.workers = workers;
      Json matrix = Json::array();
      bool all = true;
      for (const auto& c : verify_suite_checks()) {
        auto item = run_check(c, opt);
        all = all && item.passed;
        std::cerr << (item.passed ? "PASS " : "FAIL ") << item.key << ": " << item.detail << '\n';
        matrix.push_back({{"key", item.key}, {"statement", item.statement}, {"passed", item.passed}, {"detail", item.detail}, {"elapsed_ms", item.elapsed_ms}});
      }
      manifest.finished = utc_timestamp();
      emit(dump(make_report("verify_suite", {{"all_passed", all}, {"results", matrix}}, manifest)), out);
      return all ? 0 : 1;
    }

    if (*sweep) {
      std::vector<double> ps;
      for (const auto& s : split(ps_text)) ps.push_back(parse_probability(s));
      SweepOptions opt;
      opt.samples = samples;
      opt.seed = seed;
      opt.alpha = alpha;
      opt.target = target;
      if (budget_ms > 0) opt.budget_per_check = std::chrono::milliseconds(budget_ms);
      auto cells = typicality_sweep(parse_sizes(ktilde_text, "--ktilde"), ps, opt);
      emit(sweep_csv(cells, alpha), out);
      return 0;
    }

    if (*signature) {
      auto manifest = start_manifest(super ? "signature --super" : "signature", seed, workers);
      auto g = load_graph(g_spec);
      const Rational q = parse_fraction(q_text, "--q");
      const auto trials = parse_sizes(trials_text, "--trials").front();
      const auto base = parse_log_base(log_base_text);
      manifest.parameters = {{"graph", g_spec}, {"q", to_string(q)}, {"trials", trials}, {"log_base", to_string(base)}};
      auto found = super ? find_super_signature(g, g.all_vertices(), q, trials, seed, base) : find_signature(g, g.all_vertices(), q, trials, seed, base);
      manifest.finished = utc_timestamp();
      Json body{{"sample_size", found.sample_size}, {"trials_used", found.trials_used}, {"found", found.set.has_value()}};
      if (found.set) body["set"] = found.set->members();
      emit(dump(make_report(super ? "super_signature" : "signature", body, manifest)), out);
      return found.set ? 0 : 1;
    }

    if (*pre) {
      auto manifest = start_manifest("preconditions", 0, workers);
      PreconditionOptions opt;
      opt.deleted = deleted;
      if (!q_text.empty()) opt.q = parse_fraction(q_text, "--q");
      if (!d_text.empty()) opt.delta = parse_fraction(d_text, "--delta");
      parse_probability(p_text);
      manifest.parameters = {{"ktilde", ktilde_mag}, {"p", p_text}, {"deleted", deleted}};
      auto rep = check_preconditions(parse_magnitude(ktilde_mag), parse_fraction(p_text, "--p"), opt);
      manifest.finished = utc_timestamp();
      emit(dump(make_report("precondition_report", precondition_to_json(rep), manifest)), out);
      return 0;
    }

    if (*ledger) {
      const Rational delta = d_text.empty() ? Rational(1, 2) : parse_fraction(d_text, "--delta");
      const Magnitude k = k_mag.empty() ? Magnitude{10, 200} : parse_magnitude(k_mag);
      std::vector<EpsilonLedger> rows;
      for (const auto& s : split(qs_text)) rows.push_back(epsilon_ledger(parse_fraction(s, "--q"), k, delta));
      if (rows.empty()) throw UsageError("no q values");
      if (quick) {
        auto manifest = start_manifest("ledger", 0, workers);
        manifest.parameters = {{"q", qs_text}, {"k", k.to_string()}, {"delta", to_string(delta)}};
        manifest.finished = utc_timestamp();
        emit(dump(make_report("epsilon_ledger", epsilon_ledger_to_json(rows.front()), manifest)), out);
      } else {
        emit(epsilon_ledger_csv(rows), out);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSoftware;
  }
  return kExitUsage;
}
