#include "bansync/cli.hpp"

#include "bansync/cycles.hpp"
#include "bansync/errors.hpp"
#include "bansync/expression.hpp"
#include "bansync/impact.hpp"
#include "bansync/report.hpp"
#include "bansync/search.hpp"
#include "bansync/sequential.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace bansync::cli {

namespace {

struct Options {
  bool json = false;
  int max_n = 0;
  std::string file;
  std::string graph = "sig";
  std::string from;
  std::string to;
  std::string at;
  std::string add;
  std::string reading = "strictly-smaller";
  bool dot = false;
  int size = 0;
  bool monotone = false;
  bool canonical = false;
  std::uint64_t seed = 1;
  std::size_t sample = 0;
  unsigned workers = 0;
  std::vector<std::string> claims;
  std::string witness_dir;
};

Limits limits_for(const Options& o) {
  Limits l;
  if (o.max_n > 0) {
    if (o.max_n > kHardMaxSize) throw SizeCeilingError("--max-n", o.max_n, kHardMaxSize);
    l.eig_max = o.max_n;
    l.sig_max = std::max(o.max_n, l.sig_max);
  }
  return l;
}

Configuration config_for(const Network& net, const std::string& bits, const char* flag) {
  if (bits.empty()) throw InputError(std::string(flag) + " is required");
  const Configuration c = Configuration::parse(bits);
  if (c.size() != net.size()) {
    throw InputError(std::string(flag) + " " + bits + " has length " + std::to_string(c.size()) + ", expected " +
                     std::to_string(net.size()));
  }
  return c;
}

Reading reading_for(const std::string& s) {
  if (s == "strictly-smaller") return Reading::StrictlySmaller;
  if (s == "smaller-than-n") return Reading::SmallerThanSize;
  if (s == "within-subcube") return Reading::WithinSubcube;
  throw InputError("unknown reading '" + s + "'");
}

TransitionGraph graph_for(const Network& net, const std::string& variant, const Limits& limits) {
  if (variant == "sig") return TransitionGraph::asynchronous(net, limits);
  if (variant == "eig") return TransitionGraph::elementary(net, limits);
  throw InputError("unknown graph '" + variant + "', expected sig or eig");
}

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
  if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  emit(out, o, analysis_json(net), analysis_text(net));
  return kExitOk;
}

int cmd_attractors(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const TransitionGraph g = graph_for(net, o.graph, limits_for(o));
  emit(out, o, graph_json(g), graph_text(g));
  return kExitOk;
}

int cmd_cycles(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const Limits limits = limits_for(o);
  std::optional<Configuration> at;
  if (!o.at.empty()) at = config_for(net, o.at, "--at");
  if (o.dot) {
    out << structure_dot(net, at ? std::optional<State>(at->bits()) : std::nullopt);
    return kExitOk;
  }
  const auto cycles = at ? x_critical_cycles(net, *at) : critical_cycles(net, limits);
  Json j = Json::array();
  for (const auto& c : cycles) j.push_back(cycle_json(c));
  emit(out, o, j, cycles_text(cycles));
  return kExitOk;
}

int cmd_normal(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const Limits limits = limits_for(o);
  const Reading reading = reading_for(o.reading);
  if (!o.from.empty() || !o.to.empty()) {
    const Transition t =
        make_synchronous(net, config_for(net, o.from, "--from"), config_for(net, o.to, "--to"));
    const auto v = is_sequentialisable(net, t, reading, limits);
    std::string text = t.from.str() + (v.verdict == Verdict::Normal ? " => " : " -> ") + t.to.str() + "  " +
                       to_string(v.verdict) + (v.totally ? " (totally)" : "") + "\n";
    if (v.witness) {
      for (const auto& s : v.witness->steps) text += "  " + s.str() + "\n";
    }
    emit(out, o, verdict_json(v), text);
    return kExitOk;
  }
  const auto verdicts = normal_transitions(net, reading, limits);
  Json j = Json::array();
  for (const auto& v : verdicts) j.push_back(verdict_json(v));
  emit(out, o, j, verdicts_text(verdicts));
  return kExitOk;
}

int cmd_impact(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const Transition t = make_synchronous(net, config_for(net, o.from, "--from"), config_for(net, o.to, "--to"));
  const ImpactReport r = classify_impact(net, t, limits_for(o));
  emit(out, o, impact_json(r), impact_text(r));
  return kExitOk;
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const SensitivityReport r = classify_sensitivity(net, reading_for(o.reading), limits_for(o));
  emit(out, o, sensitivity_json(r), sensitivity_text(r));
  return kExitOk;
}

void write_witnesses(const VerificationLedger& ledger, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const ClaimRecord& c : ledger.claims) {
    for (const Witness& w : c.witnesses) {
      if (w.network.size() == 0) continue;
      const auto path = std::filesystem::path(dir) / (c.id + "-" + std::to_string(w.index) + ".ban");
      std::ofstream file(path);
      file << "# " << c.id << ": " << c.statement << "\n";
      file << "# " << c.domain << ", candidate " << w.index << "\n";
      file << "# " << w.trace << "\n";
      file << format_network(w.network);
    }
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  EnumerationSpec spec;
  spec.n = o.size;
  spec.monotone_only = o.monotone;
  spec.canonical_only = o.canonical;
  spec.predicates = o.claims;
  spec.seed = o.seed;
  if (o.sample > 0) spec.sample = o.sample;
  spec.workers = o.workers;
  spec.limits = limits_for(o);
  VerificationLedger ledger = verify_lemmas_and_propositions(spec);
  if (o.claims.empty() && !spec.sample && !spec.canonical_only) {
    if (spec.n == 2) ledger.append(verify_size2_claims(o.workers));
    if (spec.n == 3 && spec.monotone_only) ledger.append(verify_size3_claims(o.workers));
  }
  if (!o.witness_dir.empty()) write_witnesses(ledger, o.witness_dir);
  emit(out, o, ledger_json(ledger), ledger_text(ledger));
  return ledger.refuted() ? kExitRefuted : kExitOk;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  const Network net = load_network(o.file);
  const Limits limits = limits_for(o);
  if (!o.add.empty()) {
    const auto comma = o.add.find(',');
    if (comma == std::string::npos) throw InputError("--add-transition expects FROM,TO");
    const Transition t = make_synchronous(net, config_for(net, o.add.substr(0, comma), "--add-transition"),
                                          config_for(net, o.add.substr(comma + 1), "--add-transition"));
    if (o.graph != "sig") throw InputError("--add-transition needs --graph sig");
    out << graph_dot(TransitionGraph::augmented(net, t, limits));
    return kExitOk;
  }
  out << graph_dot(graph_for(net, o.graph, limits));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Synchronism sensitivity analysis of Boolean automata networks", "bansync"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print JSON instead of text");
  app.add_option("--max-n", o.max_n, "Raise the size ceilings (at most 20)");

  auto file_arg = [&o](CLI::App* sub) { sub->add_option("file", o.file, "Network file")->required(); };

  auto* analyze = app.add_subcommand("analyze", "Structure, signs, monotony and instabilities");
  file_arg(analyze);

  auto* attractors = app.add_subcommand("attractors", "Attractors of the transition graph");
  file_arg(attractors);
  attractors->add_option("--graph", o.graph, "sig or eig");

  auto* cycles = app.add_subcommand("critical-cycles", "Critical cycles, or the x-critical cycles at --at");
  file_arg(cycles);
  cycles->add_option("--at", o.at, "Configuration");
  cycles->add_flag("--dot", o.dot, "Print the signed structure as DOT, frustrations at --at highlighted");

  auto* normal = app.add_subcommand("normal", "Normal transitions, or one verdict with --from/--to");
  file_arg(normal);
  normal->add_option("--from", o.from, "Source configuration");
  normal->add_option("--to", o.to, "Target configuration");
  normal->add_option("--reading", o.reading, "strictly-smaller, smaller-than-n or within-subcube");

  auto* impact = app.add_subcommand("impact", "Impact of adding one synchronous transition");
  file_arg(impact);
  impact->add_option("--from", o.from, "Source configuration")->required();
  impact->add_option("--to", o.to, "Target configuration")->required();

  auto* sensitivity = app.add_subcommand("sensitivity", "Sensitivity to synchronism");
  file_arg(sensitivity);
  sensitivity->add_option("--reading", o.reading, "strictly-smaller, smaller-than-n or within-subcube");

  auto* verify = app.add_subcommand("verify", "Check the structural claims over enumerated networks");
  verify->add_option("--size", o.size, "Network size")->required();
  verify->add_flag("--monotone", o.monotone, "Only locally monotone networks");
  verify->add_flag("--canonical", o.canonical, "One network per relabeling class");
  verify->add_option("--seed", o.seed, "Sampling seed");
  verify->add_option("--sample", o.sample, "Draw this many random networks");
  verify->add_option("--workers", o.workers, "Worker threads (default BANSYNC_WORKERS or all cores)");
  verify->add_option("--claims", o.claims, "Claim ids to check")->delimiter(',');
  verify->add_option("--witness-dir", o.witness_dir, "Write refutation witnesses here");

  auto* dot = app.add_subcommand("export-dot", "Transition graph as DOT");
  file_arg(dot);
  dot->add_option("--graph", o.graph, "sig or eig");
  dot->add_option("--add-transition", o.add, "FROM,TO synchronous transition to add");

  // Global flags may follow the subcommand.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    limits_for(o);
    if (*analyze) return cmd_analyze(o, out);
    if (*attractors) return cmd_attractors(o, out);
    if (*cycles) return cmd_cycles(o, out);
    if (*normal) return cmd_normal(o, out);
    if (*impact) return cmd_impact(o, out);
    if (*sensitivity) return cmd_sensitivity(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*dot) return cmd_export_dot(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonMonotoneNetworkError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace bansync::cli
