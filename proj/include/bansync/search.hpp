#pragma once

#include "bansync/network.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bansync {

/// f over B^n (n <= 6) as a bitmask: bit x holds f(x) for packed state x.
using FunctionTable = std::uint64_t;

/// Locally monotone in every variable.
bool is_unate(FunctionTable f, int n);
/// All unate functions of n <= 4 variables, ascending.
const std::vector<FunctionTable>& unate_functions(int n);
Network network_from_functions(int n, std::span<const FunctionTable> functions);
FunctionTable function_of(const Network& net, int i);

/// True if no relabeling of the automata gives a smaller function tuple.
bool is_canonical(const Network& net);

struct EnumerationSpec {
  int n = 2;
  bool monotone_only = false;
  /// Keep one network per relabeling class.
  bool canonical_only = false;
  /// Claim ids to evaluate; empty means every claim of the verification.
  std::vector<std::string> predicates;
  /// Draw this many seeded random networks instead of enumerating.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  /// 0 means the BANSYNC_WORKERS environment variable, else the hardware count.
  unsigned workers = 0;
  Limits limits;

  std::string domain() const;
};

/// Number of candidates before canonical filtering. Throws SizeCeilingError
/// when exhaustive enumeration is out of reach (n > 3, or n > 2 unless monotone).
std::size_t candidate_count(const EnumerationSpec& spec);
/// The k-th candidate: tuples in lexicographic order with automaton 0 most
/// significant, or the k-th draw of the seeded sampler. Monotone samples
/// draw each function uniformly from the unate ones (n <= 4) or from random
/// unate formulas (n = 5); other samples use uniform truth tables.
Network candidate_at(const EnumerationSpec& spec, std::size_t k);
/// Visits (candidate index, network) in order; stops when visit returns false.
void enumerate_networks(const EnumerationSpec& spec,
                        const std::function<bool(std::size_t, const Network&)>& visit);

enum class ClaimVerdict { Confirmed, Refuted, Inconclusive };
const char* to_string(ClaimVerdict verdict);

struct Witness {
  std::size_t index = 0;  ///< candidate index within its domain
  Network network;
  std::string trace;
};

struct ClaimRecord {
  std::string id;
  std::string statement;
  std::string domain;
  /// Failures are reported but do not make the ledger refuted.
  bool advisory = false;
  ClaimVerdict verdict = ClaimVerdict::Confirmed;
  std::size_t networks = 0;   ///< networks scanned
  std::size_t instances = 0;  ///< individual cases checked
  std::size_t violating_networks = 0;
  std::vector<Witness> witnesses;  ///< smallest candidate indices first
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<Witness> examples;  ///< networks the claim records, not failures

  std::size_t count(const std::string& key) const;
};

struct VerificationLedger {
  std::string domain;
  std::size_t networks = 0;
  std::optional<std::uint64_t> seed;
  std::vector<ClaimRecord> claims;

  const ClaimRecord* find(const std::string& id) const;
  /// Some non-advisory claim is refuted.
  bool refuted() const;
  void append(const VerificationLedger& other);
};

/// Every claim id understood by verify_lemmas_and_propositions and replay.
std::vector<std::string> claim_ids();

/// All 256 size-2 networks: no monotone one is very sensitive, the four
/// XOR/XNOR networks are D-sensitive, plus conservation checks.
VerificationLedger verify_size2_claims(unsigned workers = 0);

/// All monotone size-3 networks: very-sensitive ones are D-sensitive, have a
/// size-2 normal transition and include the named instance; signs are
/// checked for symmetry (advisory). Prefixed with the size-2 ledger.
VerificationLedger verify_size3_claims(unsigned workers = 0);

/// Structural lemmas and propositions, impact invariants and the decomposition
/// vs search cross-check over the networks of spec.
VerificationLedger verify_lemmas_and_propositions(const EnumerationSpec& spec);

/// Re-runs claims on a single network, e.g. a refutation witness.
VerificationLedger replay(const Network& net, const std::vector<std::string>& claims = {});

}  // namespace bansync
