#include "bansync/search.hpp"

#include "bansync/cycles.hpp"
#include "bansync/dynamics.hpp"
#include "bansync/errors.hpp"
#include "bansync/impact.hpp"
#include "bansync/sequential.hpp"
#include "bansync/structure.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace bansync {

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr std::size_t kMaxExamples = 32;
constexpr std::size_t kChunk = 512;

FunctionTable table_mask(int n) {
  const unsigned bits = 1u << n;
  return bits >= 64 ? ~FunctionTable{0} : (FunctionTable{1} << bits) - 1;
}

/// States with bit j clear.
FunctionTable low_half(int j, int n) {
  FunctionTable m = 0;
  for (State x = 0; x < (State{1} << n); ++x) {
    if (!(x >> j & 1u)) m |= FunctionTable{1} << x;
  }
  return m;
}

}  // namespace

bool is_unate(FunctionTable f, int n) {
  for (int j = 0; j < n; ++j) {
    const FunctionTable low = f & low_half(j, n);
    const FunctionTable high = (f >> (1u << j)) & low_half(j, n);
    if ((low & ~high) != 0 && (high & ~low) != 0) return false;
  }
  return true;
}

const std::vector<FunctionTable>& unate_functions(int n) {
  static const std::array<std::vector<FunctionTable>, 5> lists = [] {
    std::array<std::vector<FunctionTable>, 5> out;
    for (int k = 1; k <= 4; ++k) {
      for (FunctionTable f = 0; f <= table_mask(k); ++f) {
        if (is_unate(f, k)) out[static_cast<std::size_t>(k)].push_back(f);
      }
    }
    return out;
  }();
  if (n < 1 || n > 4) throw SizeCeilingError("unate function list", n, 4);
  return lists[static_cast<std::size_t>(n)];
}

Network network_from_functions(int n, std::span<const FunctionTable> functions) {
  if (n < 1 || n > 6 || functions.size() != static_cast<std::size_t>(n)) {
    throw InputError("expected one function table per automaton, n <= 6");
  }
  std::vector<State> image(std::size_t{1} << n, 0);
  for (State x = 0; x < image.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      if (functions[static_cast<std::size_t>(i)] >> x & 1u) image[x] |= automaton_bit(i);
    }
  }
  return Network::from_image(n, std::move(image));
}

FunctionTable function_of(const Network& net, int i) {
  if (net.size() > 6) throw SizeCeilingError("function table", net.size(), 6);
  FunctionTable f = 0;
  for (State x = 0; x < net.state_count(); ++x) {
    if (net.value(i, x)) f |= FunctionTable{1} << x;
  }
  return f;
}

bool is_canonical(const Network& net) {
  const int n = net.size();
  std::vector<FunctionTable> own(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) own[static_cast<std::size_t>(i)] = function_of(net, i);
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<FunctionTable> relabeled(static_cast<std::size_t>(n));
  while (std::next_permutation(p.begin(), p.end())) {
    // Automaton i becomes p[i]: g_{p[i]}(pi(x)) = f_i(x).
    std::fill(relabeled.begin(), relabeled.end(), 0);
    for (State x = 0; x < net.state_count(); ++x) {
      State px = 0;
      for (int i = 0; i < n; ++i) {
        if (x >> i & 1u) px |= automaton_bit(p[static_cast<std::size_t>(i)]);
      }
      for (int i = 0; i < n; ++i) {
        if (own[static_cast<std::size_t>(i)] >> x & 1u) {
          relabeled[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] |= FunctionTable{1} << px;
        }
      }
    }
    if (relabeled < own) return false;
  }
  return true;
}

std::string EnumerationSpec::domain() const {
  std::string s = "n=" + std::to_string(n) + (monotone_only ? " monotone" : " all");
  if (sample) {
    s += " sample of " + std::to_string(*sample) + " (seed " + std::to_string(seed) + ")";
  } else {
    s += " exhaustive";
  }
  if (canonical_only) s += ", canonical representatives";
  return s;
}

std::size_t candidate_count(const EnumerationSpec& spec) {
  if (spec.n < 1) throw InputError("network size must be at least 1");
  if (spec.sample) {
    if (spec.n > 5) throw SizeCeilingError("sampled verification", spec.n, 5);
    return *spec.sample;
  }
  if (spec.n > 3) throw SizeCeilingError("exhaustive enumeration", spec.n, 3);
  if (spec.n > 2 && !spec.monotone_only) throw SizeCeilingError("exhaustive enumeration of all networks", spec.n, 2);
  const std::size_t per = spec.monotone_only ? unate_functions(spec.n).size() : std::size_t{1} << (1u << spec.n);
  std::size_t total = 1;
  for (int i = 0; i < spec.n; ++i) total *= per;
  return total;
}

namespace {

FunctionTable random_unate(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> terms_dist(0, 3);
  const int terms = terms_dist(rng);
  if (terms == 0) return (rng() & 1u) ? table_mask(n) : 0;
  const State negated = static_cast<State>(rng()) & full_mask(n);
  FunctionTable f = 0;
  for (int t = 0; t < terms; ++t) {
    State vars = 0;
    while (vars == 0) vars = static_cast<State>(rng()) & full_mask(n);
    for (State x = 0; x < (State{1} << n); ++x) {
      // Literal of variable j is x_j, or !x_j when j is negated.
      if (((x ^ negated) & vars) == vars) f |= FunctionTable{1} << x;
    }
  }
  return f;
}

}  // namespace

Network candidate_at(const EnumerationSpec& spec, std::size_t k) {
  const int n = spec.n;
  std::vector<FunctionTable> fs(static_cast<std::size_t>(n));
  if (spec.sample) {
    if (n > 5) throw SizeCeilingError("sampled verification", n, 5);
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 rng(seq);
    for (auto& f : fs) {
      if (!spec.monotone_only) {
        f = rng() & table_mask(n);
      } else if (n <= 4) {
        const auto& list = unate_functions(n);
        f = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
      } else {
        f = random_unate(rng, n);
      }
    }
    return network_from_functions(n, fs);
  }
  const std::size_t per = spec.monotone_only ? unate_functions(n).size() : std::size_t{1} << (1u << n);
  for (int i = n - 1; i >= 0; --i) {
    const std::size_t digit = k % per;
    k /= per;
    fs[static_cast<std::size_t>(i)] = spec.monotone_only ? unate_functions(n)[digit] : digit;
  }
  return network_from_functions(n, fs);
}

void enumerate_networks(const EnumerationSpec& spec,
                        const std::function<bool(std::size_t, const Network&)>& visit) {
  const std::size_t count = candidate_count(spec);
  for (std::size_t k = 0; k < count; ++k) {
    const Network net = candidate_at(spec, k);
    if (spec.canonical_only && !is_canonical(net)) continue;
    if (!visit(k, net)) return;
  }
}

const char* to_string(ClaimVerdict verdict) {
  switch (verdict) {
    case ClaimVerdict::Confirmed:
      return "confirmed";
    case ClaimVerdict::Refuted:
      return "refuted";
    case ClaimVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::size_t ClaimRecord::count(const std::string& key) const {
  for (const auto& [k, v] : counts) {
    if (k == key) return v;
  }
  return 0;
}

const ClaimRecord* VerificationLedger::find(const std::string& id) const {
  for (const auto& c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

bool VerificationLedger::refuted() const {
  return std::any_of(claims.begin(), claims.end(),
                     [](const ClaimRecord& c) { return !c.advisory && c.verdict == ClaimVerdict::Refuted; });
}

void VerificationLedger::append(const VerificationLedger& other) {
  if (domain.empty()) {
    domain = other.domain;
    networks = other.networks;
  } else if (other.domain != domain) {
    domain += "; " + other.domain;
    networks += other.networks;
  }
  if (!seed) seed = other.seed;
  for (const ClaimRecord& c : other.claims) {
    const bool repeated = std::any_of(claims.begin(), claims.end(), [&c](const ClaimRecord& mine) {
      return mine.id == c.id && mine.domain == c.domain;
    });
    if (!repeated) claims.push_back(c);
  }
}

namespace {

/// Everything the checks need about one network, computed on demand.
class NetworkFacts {
 public:
  NetworkFacts(const Network& net, const Limits& limits)
      : net(net), limits(limits), structure(net), n(net.size()) {}

  const Network& net;
  const Limits& limits;
  const SignedStructure structure;
  const int n;

  bool monotone() const { return structure.monotone(); }

  ReachOracle& oracle() {
    if (!oracle_) oracle_.emplace(net);
    return *oracle_;
  }

  const ImpactAnalyzer& analyzer() {
    if (!analyzer_) analyzer_.emplace(net, limits);
    return *analyzer_;
  }

  const std::vector<Transition>& synchronous() {
    if (!synchronous_) {
      synchronous_.emplace();
      for (State r = 0; r < net.state_count(); ++r) {
        const State x = lex_state(r, n);
        for (State w : ordered_subsets(net.unstable(x), 2, n)) {
          synchronous_->push_back({Configuration(n, x), Configuration(n, x ^ w)});
        }
      }
    }
    return *synchronous_;
  }

  bool sequentialisable(const Transition& t) {
    return oracle().reaches(t.from.bits(), t.to.bits(), t.size() - 1);
  }

  const std::vector<SequentialisationVerdict>& normals() {
    if (!normals_) {
      normals_.emplace();
      for (const Transition& t : synchronous()) {
        if (!sequentialisable(t)) normals_->push_back({t, Verdict::Normal, std::nullopt, false, Method::Search});
      }
    }
    return *normals_;
  }

  const SensitivityReport& sensitivity() {
    if (!sensitivity_) sensitivity_ = classify_sensitivity(analyzer(), normals());
    return *sensitivity_;
  }

  /// Successor masks of H_x.
  const std::vector<State>& critical(State x) {
    ensure_cycles();
    return critical_[x];
  }
  const std::vector<std::vector<int>>& cycles(State x) {
    ensure_cycles();
    return cycles_[x];
  }

  std::optional<int> min_critical() {
    ensure_cycles();
    std::optional<int> best;
    for (const auto& cs : cycles_) {
      if (!cs.empty() && (!best || static_cast<int>(cs.front().size()) < *best)) {
        best = static_cast<int>(cs.front().size());
      }
    }
    return best;
  }

  bool negative_cycle() {
    if (!negative_) negative_ = has_negative_cycle(structure);
    return *negative_;
  }

  int arc_sign(int from, int to) const {
    return (structure.negative_sources(to) >> from & 1u) ? -1 : 1;
  }

 private:
  void ensure_cycles() {
    if (!critical_.empty()) return;
    critical_.resize(net.state_count());
    cycles_.resize(net.state_count());
    for (State x = 0; x < net.state_count(); ++x) {
      critical_[x] = critical_graph(net, structure, x);
      if (net.unstable(x) != 0) cycles_[x] = simple_cycles(critical_[x]);
    }
  }

  std::optional<ReachOracle> oracle_;
  std::optional<ImpactAnalyzer> analyzer_;
  std::optional<std::vector<Transition>> synchronous_;
  std::optional<std::vector<SequentialisationVerdict>> normals_;
  std::optional<SensitivityReport> sensitivity_;
  std::vector<std::vector<State>> critical_;
  std::vector<std::vector<std::vector<int>>> cycles_;
  std::optional<bool> negative_;
};

/// Outcome of one claim on one network.
struct Tally {
  std::size_t instances = 0;
  bool violated = false;
  std::string trace;
  std::map<std::string, std::size_t> counts;
  bool example = false;

  void fail(const std::string& why) {
    if (!violated) trace = why;
    violated = true;
  }
};

using CheckFn = void (*)(NetworkFacts&, Tally&);

struct ClaimDef {
  const char* id;
  const char* statement;
  CheckFn check;
  bool monotone_only = true;
  bool advisory = false;
  /// Informational census: records examples, never fails.
  bool record = false;
  /// Fails the claim when fewer instances were seen over the whole domain.
  std::size_t min_instances = 0;
};

std::string bits(State x, int n) { return format_state(x, n); }

// ---- structural claims ----

void check_lemma1(NetworkFacts& f, Tally& t) {
  for (State x = 0; x < f.net.state_count(); ++x) {
    const State u = f.net.unstable(x);
    for (int i = 0; i < f.n; ++i) {
      const State b = automaton_bit(i);
      const bool here = u & b;
      const bool there = f.net.unstable(x ^ b) & b;
      if (here != there) continue;
      ++t.instances;
      const bool ok = here ? f.structure.has_negative_loop(i) : f.structure.has_positive_loop(i);
      if (!ok) {
        t.fail("automaton " + std::to_string(i) + (here ? " unstable" : " stable") + " in " + bits(x, f.n) +
               " and its flip, but no " + (here ? "negative" : "positive") + " loop");
      }
    }
  }
}

enum class Lemma2Form { Subset, Strict, SameState };

template <Lemma2Form form>
void check_lemma2(NetworkFacts& f, Tally& t) {
  const std::size_t count = f.net.state_count();
  for (int i = 0; i < f.n; ++i) {
    const State b = automaton_bit(i);
    for (State x = 0; x < count; ++x) {
      if (!(f.net.unstable(x) & b)) continue;
      const State fx = f.structure.frustrated_sources(i, x);
      for (State y = 0; y < count; ++y) {
        const State fy = f.structure.frustrated_sources(i, y);
        if ((fx & ~fy) != 0) continue;
        if (form == Lemma2Form::Strict && fx == fy) continue;
        if (form == Lemma2Form::SameState && ((x ^ y) & b)) continue;
        ++t.instances;
        if (!(f.net.unstable(y) & b)) {
          t.fail("automaton " + std::to_string(i) + " unstable in " + bits(x, f.n) + ", stable in " +
                 bits(y, f.n) + ", frustrated sources " + format_state(fx, f.n) + " vs " + format_state(fy, f.n));
        }
      }
    }
  }
}

void check_prop1(NetworkFacts& f, Tally& t) {
  for (State x = 0; x < f.net.state_count(); ++x) {
    for (const auto& c : f.cycles(x)) {
      ++t.instances;
      int sign = 1;
      for (std::size_t k = 0; k < c.size(); ++k) sign *= f.arc_sign(c[k], c[(k + 1) % c.size()]);
      const bool even = c.size() % 2 == 0;
      if ((sign == 1) != even) {
        std::string nodes;
        for (int v : c) nodes += std::to_string(v) + " ";
        t.fail("cycle " + nodes + "at " + bits(x, f.n) + " has sign " + std::to_string(sign) + " and length " +
               std::to_string(c.size()));
      }
    }
  }
}

std::vector<State> restrict_to(std::span<const State> succ, State nodes) {
  std::vector<State> out(succ.size(), 0);
  for (State m = nodes; m != 0; m &= m - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(m));
    out[v] = succ[v] & nodes;
  }
  return out;
}

void check_prop2_total(NetworkFacts& f, Tally& t) {
  for (const Transition& tr : f.synchronous()) {
    const State x = tr.from.bits();
    if (shortest_cycle(restrict_to(f.critical(x), tr.changed_mask()))) continue;
    ++t.instances;
    if (!f.oracle().reaches(x, tr.to.bits(), 1)) {
      t.fail(tr.str() + " induces no critical cycle but is not totally sequentialisable");
    }
  }
}

void check_prop2_decomposition(NetworkFacts& f, Tally& t) {
  for (const Transition& tr : f.synchronous()) {
    ++t.instances;
    const State x = tr.from.bits();
    const State delta = tr.changed_mask();
    Decomposition d;
    try {
      d = decompose(f.net, f.structure, tr);
    } catch (const StepInvalidError& e) {
      t.fail(e.what());
      continue;
    }
    std::vector<int> layer(static_cast<std::size_t>(f.n), -1);
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
      for (int i : d.blocks[b]) layer[static_cast<std::size_t>(i)] = static_cast<int>(b);
      if (d.blocks[b].size() > 1 &&
          !covered_by_closed_trail(f.critical(x), indices_mask(d.blocks[b], f.n))) {
        t.fail(tr.str() + ": block " + std::to_string(b) + " shares no critical cycle");
      }
    }
    for (int i : mask_indices(delta)) {
      for (State src = f.structure.frustrated_sources(i, x) & delta; src != 0; src &= src - 1) {
        const int j = std::countr_zero(src);
        if (layer[static_cast<std::size_t>(i)] > layer[static_cast<std::size_t>(j)]) {
          t.fail(tr.str() + ": frustrated arc (" + std::to_string(j) + "," + std::to_string(i) +
                 ") flips its head after its tail");
        }
      }
    }
    if (!replays(f.net, d.derivation) || d.derivation.target() != tr.to) {
      t.fail(tr.str() + ": block derivation does not replay");
    }
  }
}

bool witness_ok(const Network& net, const Derivation& d, const Transition& tr) {
  return d.steps.size() >= 2 && replays(net, d) && d.source() == tr.from && d.target() == tr.to &&
         d.max_step_size() < tr.size();
}

void check_oracle_agreement(NetworkFacts& f, Tally& t) {
  for (const Transition& tr : f.synchronous()) {
    ++t.instances;
    const Decomposition d = decompose(f.net, f.structure, tr);
    const bool seq = f.sequentialisable(tr);
    if (d.split()) {
      if (!seq) t.fail(tr.str() + ": decomposition splits but the search finds no derivation");
      if (!witness_ok(f.net, d.derivation, tr)) t.fail(tr.str() + ": block derivation is not a witness");
    } else if (seq && !covered_by_closed_trail(f.critical(tr.from.bits()), tr.changed_mask())) {
      t.fail(tr.str() + ": unsplit, sequentialisable, and its automata share no critical cycle");
    }
    if (seq) {
      const auto w = f.oracle().witness(tr.from.bits(), tr.to.bits(), tr.size() - 1);
      if (!w || !witness_ok(f.net, *w, tr)) t.fail(tr.str() + ": search witness does not replay");
    }
  }
}

void check_lemma3(NetworkFacts& f, Tally& t) {
  if (const auto m = f.min_critical(); m && *m < f.n) return;
  ++t.instances;
  if (f.normals().empty()) return;
  for (const auto& c : check_lemma_hamiltonian(f.net, f.limits).checks) {
    if (!c.holds) t.fail(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
}

void check_lemma4(NetworkFacts& f, Tally& t) {
  for (const auto& v : f.normals()) {
    if (v.transition.size() < f.n) return;
  }
  ++t.instances;
  if (f.normals().empty()) return;
  for (const auto& c : check_lemma_full_size(f.net, f.limits).checks) {
    if (!c.holds) t.fail(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
}

void check_prop3(NetworkFacts& f, Tally& t) {
  ++t.instances;
  const SensitivityReport& s = f.sensitivity();
  if (s.sensitivities.empty()) return;
  const LemmaReport r = check_structural_prerequisites(f.net, s, f.limits);
  for (std::size_t k = 0; k < 3 && k < r.checks.size(); ++k) {
    if (!r.checks[k].holds) t.fail(r.checks[k].name + (r.checks[k].detail.empty() ? "" : ": " + r.checks[k].detail));
  }
}

void check_unstable_attractor(NetworkFacts& f, Tally& t) {
  for (const auto& a : f.analyzer().sig().attractors()) {
    if (a.kind != AttractorKind::Unstable) continue;
    ++t.instances;
    if (!f.negative_cycle()) {
      t.fail("unstable attractor at " + bits(a.states.front(), f.n) + " without a negative cycle");
    }
  }
}

void check_dynamics(NetworkFacts& f, Tally& t) {
  const TransitionGraph& sig = f.analyzer().sig();
  for (State x = 0; x < sig.state_count(); ++x) {
    ++t.instances;
    if (f.analyzer().reachable(x).empty()) t.fail(bits(x, f.n) + " reaches no attractor");
  }
  for (const auto& a : sig.attractors()) {
    const bool fixed = a.states.size() == 1;
    if (fixed != (a.kind == AttractorKind::Stable)) t.fail("attractor kind mismatch");
    if (fixed && f.net.unstable(a.states.front()) != 0) t.fail("single-state attractor is not stable");
    const StateSet orbit = forward_closure(sig, a.states.front());
    if (static_cast<std::size_t>(std::count(orbit.begin(), orbit.end(), 1)) != a.states.size()) {
      t.fail("orbit of recurrent " + bits(a.states.front(), f.n) + " leaves its attractor");
    }
  }
}

// ---- impact claims ----

void check_coverage(NetworkFacts& f, Tally& t) {
  const SensitivityReport& s = f.sensitivity();
  for (const auto& r : s.impacts) {
    ++t.instances;
    ++t.counts[to_string(r.label)];
    if (r.label == ImpactLabel::Extended) t.fail(r.transition.str() + ": " + r.detail);
  }
}

void check_seq_no_impact(NetworkFacts& f, Tally& t) {
  for (const Transition& tr : f.synchronous()) {
    if (!f.sequentialisable(tr)) continue;
    ++t.instances;
    const bool total = f.oracle().reaches(tr.from.bits(), tr.to.bits(), 1);
    const ImpactLabel label = impact_label(f.analyzer().facts(tr)).label;
    ++t.counts[total ? "totally" : "not-totally"];
    if (label != ImpactLabel::NoImpact) {
      ++t.counts[std::string(total ? "totally-impact-" : "impact-") + to_string(label)];
      t.fail(tr.str() + " is sequentialisable" + (total ? " (totally)" : "") + " with impact " + to_string(label));
    }
  }
}

bool contains_state(const std::vector<State>& sorted_lex, State x) {
  return std::find(sorted_lex.begin(), sorted_lex.end(), x) != sorted_lex.end();
}

void check_conservation(NetworkFacts& f, Tally& t) {
  for (const auto& r : f.sensitivity().impacts) {
    ++t.instances;
    const auto& e = r.evidence;
    const std::string tag = r.transition.str() + " (" + to_string(r.label) + ")";
    if (!e.from_scratch.empty()) t.fail(tag + ": new attractor from scratch");
    switch (r.label) {
      case ImpactLabel::NoImpact:
      case ImpactLabel::F:
        if (!e.became_transient.empty() || !e.became_recurrent.empty()) t.fail(tag + ": recurrent set changed");
        break;
      case ImpactLabel::D:
        for (State s : r.sig_attractors[static_cast<std::size_t>(r.facts.att_x)].states) {
          if (!contains_state(e.became_transient, s)) t.fail(tag + ": " + bits(s, f.n) + " stays recurrent");
        }
        break;
      case ImpactLabel::G: {
        const int image = e.image[static_cast<std::size_t>(r.facts.att_x)];
        if (image < 0 || e.fate[static_cast<std::size_t>(r.facts.att_x)] != AttractorFate::Grown ||
            !contains_state(r.augmented_attractors[static_cast<std::size_t>(image)].states, r.transition.to.bits())) {
          t.fail(tag + ": attractor of x does not grow to absorb y");
        }
        break;
      }
      case ImpactLabel::Extended:
        break;
    }
  }
}

void check_no_merge(NetworkFacts& f, Tally& t) {
  for (const auto& r : f.sensitivity().impacts) {
    ++t.instances;
    for (const auto& inside : r.evidence.contains) {
      if (inside.size() > 1) t.fail(r.transition.str() + " merges two attractors");
    }
  }
}

void check_reachable_identity(NetworkFacts& f, Tally& t) {
  const TransitionGraph& sig = f.analyzer().sig();
  const StateSet none;
  for (const auto& r : f.sensitivity().impacts) {
    const TransitionGraph aug = sig.augment(f.net, r.transition);
    const std::vector<int>& ay = f.analyzer().reachable(r.transition.to.bits());
    const ReachabilitySets back = reachability(sig, r.transition.from.bits());
    for (State z : back.backward) {
      ++t.instances;
      std::vector<int> expected;
      const auto& az = f.analyzer().reachable(z);
      std::set_union(az.begin(), az.end(), ay.begin(), ay.end(), std::back_inserter(expected));
      std::erase_if(expected, [&r](int a) {
        return std::find(r.destroyed.begin(), r.destroyed.end(), a) != r.destroyed.end();
      });
      std::vector<int> mapped;
      for (int b : reachable_attractors(aug, z)) {
        const auto& inside = r.evidence.contains[static_cast<std::size_t>(b)];
        mapped.insert(mapped.end(), inside.begin(), inside.end());
      }
      std::sort(mapped.begin(), mapped.end());
      if (mapped != expected) t.fail(r.transition.str() + ": A(" + bits(z, f.n) + ") differs from A_a(z) u A_a(y)");
    }
  }
}

// ---- small-size claims ----

bool is_xor_pair(NetworkFacts& f) {
  for (int i = 0; i < 2; ++i) {
    const FunctionTable g = function_of(f.net, i);
    if (g != 0b0110 && g != 0b1001) return false;
  }
  return true;
}

void check_size2_monotone(NetworkFacts& f, Tally& t) {
  ++t.instances;
  if (f.sensitivity().very_sensitive) t.fail("monotone size-2 network is very sensitive");
}

void check_size2_xor(NetworkFacts& f, Tally& t) {
  if (!is_xor_pair(f)) return;
  ++t.instances;
  if (!f.sensitivity().has(Sensitivity::D)) t.fail("XOR/XNOR network is not D-sensitive");
}

void census(NetworkFacts& f, Tally& t) {
  const SensitivityReport& s = f.sensitivity();
  ++t.instances;
  for (Sensitivity k : s.sensitivities) ++t.counts[std::string("sensitive-") + to_string(k)];
  if (!s.very_sensitive) return;
  ++t.counts["very-sensitive"];
  if (f.monotone()) ++t.counts["very-sensitive-monotone"];
  t.example = true;
}

void check_size3_is_d(NetworkFacts& f, Tally& t) {
  const SensitivityReport& s = f.sensitivity();
  if (!s.very_sensitive) return;
  ++t.instances;
  if (s.has(Sensitivity::M)) t.fail("very sensitive network is M-sensitive");
  if (!s.has(Sensitivity::D)) t.fail("very sensitive network is not D-sensitive");
}

void check_size3_size2_normal(NetworkFacts& f, Tally& t) {
  if (!f.sensitivity().very_sensitive) return;
  ++t.instances;
  const auto& ns = f.normals();
  if (std::none_of(ns.begin(), ns.end(), [](const auto& v) { return v.transition.size() == 2; })) {
    t.fail("very sensitive network without a size-2 normal transition");
  }
}

void check_size3_symmetry(NetworkFacts& f, Tally& t) {
  if (!f.sensitivity().very_sensitive) return;
  ++t.instances;
  for (int i = 0; i < f.n; ++i) {
    for (int j = i + 1; j < f.n; ++j) {
      if (f.structure.sign(i, j) != f.structure.sign(j, i)) {
        t.fail("sign(" + std::to_string(i) + "," + std::to_string(j) + ") != sign(" + std::to_string(j) + "," +
               std::to_string(i) + ")");
      }
    }
  }
}

const Network& caption_instance() {
  // f0 = x2 | (x0 & !x1), f1 = x2 | (!x0 & x1), f2 = !x2 & (x0 | x1)
  static const Network net = [] {
    std::vector<State> image(8);
    for (State x = 0; x < 8; ++x) {
      const bool x0 = x & 1u, x1 = x & 2u, x2 = x & 4u;
      image[x] = State{x2 || (x0 && !x1)} | State{x2 || (!x0 && x1)} << 1 | State{!x2 && (x0 || x1)} << 2;
    }
    return Network::from_image(3, image);
  }();
  return net;
}

void check_size3_caption(NetworkFacts& f, Tally& t) {
  if (!(f.net == caption_instance())) return;
  ++t.instances;
  const SensitivityReport& s = f.sensitivity();
  if (!s.very_sensitive || !s.has(Sensitivity::D)) t.fail("named instance is not very sensitive and D-sensitive");
}

const std::vector<ClaimDef>& property_claims() {
  static const std::vector<ClaimDef> defs = {
      {"lemma1-loops", "stable (unstable) in x and its i-flip implies a positive (negative) loop on i",
       check_lemma1},
      {"lemma2-subset", "i in U(x) and FRUS(x) into i is a subset of FRUS(y) into i implies i in U(y)",
       check_lemma2<Lemma2Form::Subset>},
      {"lemma2-strict", "as lemma2-subset with a strict inclusion", check_lemma2<Lemma2Form::Strict>},
      {"lemma2-same-state", "as lemma2-subset restricted to x_i = y_i", check_lemma2<Lemma2Form::SameState>},
      {"prop1-sign-parity", "critical cycles are positive with even length or negative with odd length",
       check_prop1},
      {"prop2-corollary-total",
       "a transition whose changed automata induce no critical cycle is totally sequentialisable",
       check_prop2_total},
      {"prop2-decomposition-valid",
       "the block construction yields valid steps, heads before tails, and multi-automaton blocks share a "
       "critical cycle",
       check_prop2_decomposition},
      {"oracle-agreement",
       "decomposition splits implies sequentialisable; unsplit and sequentialisable implies a shared critical "
       "cycle; witnesses replay",
       check_oracle_agreement},
      {"lemma3-hamiltonian", "networks whose critical cycles are all Hamiltonian satisfy the two-transition lemma",
       check_lemma3},
      {"lemma4-full-size", "without normal transitions smaller than n, normal transitions have no or F-impact",
       check_lemma4},
      {"prop3-structural", "sensitivity requires critical, short critical and negative cycles", check_prop3},
      {"unstable-attractor-negative-cycle", "an unstable asynchronous attractor requires a negative cycle",
       check_unstable_attractor},
      {"dynamics-basics", "every configuration reaches an attractor; recurrent orbits stay in their attractor",
       check_dynamics, false},
      {"impact-coverage", "every normal transition gets one of the four impact labels", check_coverage},
      {"sequentialisable-no-impact", "sequentialisable transitions have no impact", check_seq_no_impact},
      {"conservation", "no/F-impact keeps recurrence, D destroys att(x), G grows it, nothing from scratch",
       check_conservation, false},
      {"no-merge", "a single added transition never merges attractors", check_no_merge, false},
      {"reachable-attractor-identity", "A(z) = (A_a(z) u A_a(y)) minus destroyed attractors for z in B_a(x)",
       check_reachable_identity, false},
  };
  return defs;
}

const ClaimDef* find_property(const std::string& id) {
  for (const auto& d : property_claims()) {
    if (id == d.id) return &d;
  }
  return nullptr;
}

std::vector<ClaimDef> size2_claims() {
  return {
      {"size2-monotone-not-very-sensitive", "no monotone size-2 network is D- or M-sensitive",
       check_size2_monotone},
      {"size2-xor-d-sensitive", "networks with f0, f1 in {XOR, XNOR} are D-sensitive", check_size2_xor, false,
       false, false, 4},
      {"size2-census", "sensitivities of all size-2 networks", census, false, false, true},
      *find_property("conservation"),
      *find_property("no-merge"),
      *find_property("reachable-attractor-identity"),
  };
}

std::vector<ClaimDef> size3_claims() {
  return {
      {"size3-very-sensitive-is-d", "very sensitive monotone size-3 networks are D-sensitive, never M",
       check_size3_is_d},
      {"size3-very-sensitive-size2-normal", "very sensitive monotone size-3 networks have a size-2 normal transition",
       check_size3_size2_normal},
      {"size3-sign-symmetry", "very sensitive monotone size-3 networks have symmetric arc signs",
       check_size3_symmetry, true, true},
      {"size3-named-instance", "the named size-3 instance is very sensitive and D-sensitive", check_size3_caption,
       true, false, false, 1},
      {"size3-census", "sensitivities of monotone size-3 networks", census, true, false, true},
      *find_property("conservation"),
      *find_property("no-merge"),
      *find_property("reachable-attractor-identity"),
  };
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BANSYNC_WORKERS")) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    if (std::from_chars(env, end, v).ec == std::errc{} && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void keep_first(std::vector<Witness>& ws, std::size_t limit) {
  std::sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) { return a.index < b.index; });
  if (ws.size() > limit) ws.resize(limit);
}

struct Partial {
  std::size_t networks = 0;
  std::vector<ClaimRecord> records;
  std::vector<std::map<std::string, std::size_t>> counts;
};

void run_one(std::size_t k, const Network& net, const Limits& limits, const std::vector<ClaimDef>& defs,
             Partial& p) {
  NetworkFacts facts(net, limits);
  ++p.networks;
  for (std::size_t c = 0; c < defs.size(); ++c) {
    const ClaimDef& d = defs[c];
    if (d.monotone_only && !facts.monotone()) continue;
    Tally t;
    try {
      d.check(facts, t);
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    ClaimRecord& r = p.records[c];
    ++r.networks;
    r.instances += t.instances;
    for (const auto& [key, v] : t.counts) p.counts[c][key] += v;
    if (t.violated && !d.record) {
      ++r.violating_networks;
      if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back({k, net, t.trace});
    }
    if (t.example && r.examples.size() < kMaxExamples) r.examples.push_back({k, net, ""});
  }
}

VerificationLedger run_claims(const EnumerationSpec& spec, const std::vector<ClaimDef>& defs) {
  const std::size_t total = candidate_count(spec);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_workers(spec.workers), std::max<std::size_t>(1, total / kChunk)));
  std::vector<Partial> partials(workers);
  for (auto& p : partials) {
    p.records.resize(defs.size());
    p.counts.resize(defs.size());
  }
  std::atomic<std::size_t> next{0};
  auto work = [&](Partial& p) {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      const std::size_t end = std::min(total, begin + kChunk);
      for (std::size_t k = begin; k < end; ++k) {
        const Network net = candidate_at(spec, k);
        if (spec.canonical_only && !is_canonical(net)) continue;
        run_one(k, net, spec.limits, defs, p);
      }
    }
  };
  if (workers == 1) {
    work(partials.front());
  } else {
    std::vector<std::thread> threads;
    for (auto& p : partials) threads.emplace_back(work, std::ref(p));
    for (auto& th : threads) th.join();
  }

  VerificationLedger ledger;
  ledger.domain = spec.domain();
  if (spec.sample) ledger.seed = spec.seed;
  for (const auto& p : partials) ledger.networks += p.networks;
  for (std::size_t c = 0; c < defs.size(); ++c) {
    ClaimRecord r;
    r.id = defs[c].id;
    r.statement = defs[c].statement;
    r.domain = spec.domain() + (defs[c].monotone_only && !spec.monotone_only ? ", monotone members" : "");
    r.advisory = defs[c].advisory;
    std::map<std::string, std::size_t> counts;
    for (const auto& p : partials) {
      const ClaimRecord& q = p.records[c];
      r.networks += q.networks;
      r.instances += q.instances;
      r.violating_networks += q.violating_networks;
      r.witnesses.insert(r.witnesses.end(), q.witnesses.begin(), q.witnesses.end());
      r.examples.insert(r.examples.end(), q.examples.begin(), q.examples.end());
      for (const auto& [key, v] : p.counts[c]) counts[key] += v;
    }
    keep_first(r.witnesses, kMaxWitnesses);
    keep_first(r.examples, kMaxExamples);
    r.counts.assign(counts.begin(), counts.end());
    if (r.instances < defs[c].min_instances) {
      ++r.violating_networks;
      r.witnesses.push_back({0, Network{}, "expected at least " + std::to_string(defs[c].min_instances) +
                                               " instances, saw " + std::to_string(r.instances)});
    }
    if (r.violating_networks > 0) {
      r.verdict = ClaimVerdict::Refuted;
    } else if (spec.sample && !defs[c].record) {
      r.verdict = ClaimVerdict::Inconclusive;
    }
    ledger.claims.push_back(std::move(r));
  }
  return ledger;
}

std::vector<ClaimDef> select(const std::vector<std::string>& ids) {
  std::vector<ClaimDef> out;
  if (ids.empty()) return property_claims();
  for (const auto& id : ids) {
    const ClaimDef* d = find_property(id);
    if (!d) throw InputError("unknown claim '" + id + "'");
    out.push_back(*d);
  }
  return out;
}

}  // namespace

std::vector<std::string> claim_ids() {
  std::vector<std::string> out;
  for (const auto& d : property_claims()) out.emplace_back(d.id);
  return out;
}

VerificationLedger verify_size2_claims(unsigned workers) {
  EnumerationSpec spec;
  spec.n = 2;
  spec.workers = workers;
  return run_claims(spec, size2_claims());
}

VerificationLedger verify_size3_claims(unsigned workers) {
  VerificationLedger ledger = verify_size2_claims(workers);
  EnumerationSpec spec;
  spec.n = 3;
  spec.monotone_only = true;
  spec.workers = workers;
  ledger.append(run_claims(spec, size3_claims()));
  return ledger;
}

VerificationLedger verify_lemmas_and_propositions(const EnumerationSpec& spec) {
  return run_claims(spec, select(spec.predicates));
}

VerificationLedger replay(const Network& net, const std::vector<std::string>& claims) {
  const std::vector<ClaimDef> defs = select(claims);
  Partial p;
  p.records.resize(defs.size());
  p.counts.resize(defs.size());
  run_one(0, net, Limits{}, defs, p);
  VerificationLedger ledger;
  ledger.domain = "replay of a single network";
  ledger.networks = 1;
  for (std::size_t c = 0; c < defs.size(); ++c) {
    ClaimRecord r = p.records[c];
    r.id = defs[c].id;
    r.statement = defs[c].statement;
    r.domain = ledger.domain;
    r.advisory = defs[c].advisory;
    r.counts.assign(p.counts[c].begin(), p.counts[c].end());
    if (r.violating_networks > 0) r.verdict = ClaimVerdict::Refuted;
    ledger.claims.push_back(std::move(r));
  }
  return ledger;
}

}  // namespace bansync
