#pragma once

#include <boolsynth/classify.hpp>
#include <boolsynth/gf2.hpp>
#include <boolsynth/interaction.hpp>
#include <boolsynth/ts.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boolsynth {

struct Region {
  std::vector<std::uint8_t> sup;   // per state
  std::vector<Interaction> sig;    // per event
  bool operator==(const Region&) const = default;
  auto operator<=>(const Region&) const = default;
};

enum class AtomKind { SSP, ESSP };

// SSP: a < b are states. ESSP: a is the event, b the state.
struct Atom {
  AtomKind kind;
  int a;
  int b;
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

inline Atom ssp(int s, int t) { return {AtomKind::SSP, s < t ? s : t, s < t ? t : s}; }
inline Atom essp(int e, int s) { return {AtomKind::ESSP, e, s}; }

// SSP atoms by (s, s'), then ESSP atoms by (event, state).
std::vector<Atom> enumerate_atoms(const TransitionSystem& a, bool include_ssp = true, bool include_essp = true);
std::string describe_atom(const TransitionSystem& a, const Atom& atom);

struct RegionViolation {
  enum Kind { Shape, SignatureOutsideType, Arc } kind;
  int index;  // event for SignatureOutsideType, arc index for Arc
};

std::optional<RegionViolation> validate_region(const TransitionSystem& a, NetType tau, const Region& r);
std::string describe_violation(const TransitionSystem& a, const RegionViolation& v);
bool satisfies(const Region& r, const Atom& atom);

// (sup, sig) -> (1 - sup, mirror o sig)
Region mirror_region(const Region& r);

using Support = std::vector<std::uint8_t>;

Support grow_support(const TransitionSystem& a, const Support& q);

// All members of tau consistent with every e-arc under sup.
NetType signature_candidates(const TransitionSystem& a, NetType tau, const Support& sup, int e);

// Fixed preference among candidates. For the target event of an ESSP atom:
// inp, out, used, free, res, set, swap, nop. Otherwise nop first, then
// res, set, swap, inp, out, used, free.
Interaction pick_signature(NetType candidates, bool target);

// Fills every signature from the candidates; nullopt if some event has none.
// Entries of `fixed` that are set are kept as they are.
std::optional<Region> complete_region(const TransitionSystem& a, NetType tau, const Support& sup,
                                      int target_event = -1,
                                      const std::vector<std::optional<Interaction>>& fixed = {});

class WrongFamily : public std::invalid_argument {
 public:
  explicit WrongFamily(NetType tau) : std::invalid_argument("solver does not handle type {" + format_type(tau) + "}") {}
};

std::optional<Region> solve_atom_res_family(const TransitionSystem& a, NetType tau, const Atom& atom);
std::optional<Region> solve_atom_set_family(const TransitionSystem& a, NetType tau, const Atom& atom);

struct ParityIndex {
  std::vector<int> parent_arc;        // per state, -1 for the root
  std::vector<int> chords;            // arc indices outside the tree
  int words = 0;                      // 64-bit words per parity vector
  std::vector<std::uint64_t> psi;     // states x words

  const std::uint64_t* parity(int s) const { return psi.data() + static_cast<std::size_t>(s) * words; }
  bool parity(int s, int e) const { return (parity(s)[e >> 6] >> (e & 63)) & 1u; }
};

ParityIndex build_parity_index(const TransitionSystem& a);
Gf2System build_chord_system(const TransitionSystem& a, const ParityIndex& idx);

class ChordViolation : public std::runtime_error {
 public:
  ChordViolation() : std::runtime_error("valuation violates a chord equation") {}
};

Region abstract_to_region(const TransitionSystem& a, const ParityIndex& idx, NetType tau,
                          const std::vector<std::uint8_t>& rho, bool complement);
Region abstract_to_region(const TransitionSystem& a, NetType tau, const std::vector<std::uint8_t>& rho,
                          bool complement);

std::optional<Region> solve_atom_gf2(const TransitionSystem& a, NetType tau, const Atom& atom);
std::optional<Region> solve_atom_gf2(const TransitionSystem& a, const ParityIndex& idx, NetType tau,
                                     const Atom& atom);

std::optional<Region> solve_atom_trivial(const TransitionSystem& a, NetType tau, const Atom& atom);

enum class Verdict { Solved, Unsolvable, BudgetExceeded };

struct AtomResult {
  Verdict verdict = Verdict::Unsolvable;
  std::optional<Region> region;
  std::uint64_t nodes = 0;
};

struct OracleBudget {
  std::uint64_t max_nodes = 10'000'000;
  double max_seconds = 600.0;
};

// Backtracking over signatures with incremental support propagation
// (union-find with parity). Reusable across atoms of one (A, tau).
class Oracle {
 public:
  Oracle(const TransitionSystem& a, NetType tau, OracleBudget budget = {});

  AtomResult solve(const Atom& atom) const;

  enum class End { Completed, Stopped, BudgetExceeded };

  // Visits every valid region, optionally only those satisfying `atom`.
  // The callback returns false to stop.
  End for_each_region(const std::function<bool(const Region&)>& visit,
                          const std::optional<Atom>& atom = std::nullopt,
                          std::uint64_t* nodes = nullptr) const;

 private:
  const TransitionSystem& a_;
  NetType tau_;
  OracleBudget budget_;
};

AtomResult solve_atom_oracle(const TransitionSystem& a, NetType tau, const Atom& atom,
                             OracleBudget budget = {});

enum class Strategy { Auto, Oracle };

struct FeasibilityOptions {
  Strategy strategy = Strategy::Auto;
  OracleBudget budget;
  bool essp_only = false;  // language viability
  bool ssp_only = false;
  int jobs = 1;
};

struct FeasibilityReport {
  bool out_of_scope = false;
  bool budget_exceeded = false;
  bool feasible = false;
  std::vector<Atom> atoms;           // canonical order
  std::vector<Verdict> verdicts;     // per atom
  std::vector<Region> regions;       // one per solved atom, in atom order
  std::vector<Atom> unsolved;        // canonical order
  std::vector<Atom> exceeded;        // atoms whose oracle run hit the budget
};

// Solves one atom with the procedure matching tau (or the oracle).
AtomResult solve_atom(const TransitionSystem& a, NetType tau, const Atom& atom, Strategy strategy,
                      OracleBudget budget = {});

FeasibilityReport decide_feasibility(const TransitionSystem& a, NetType tau,
                                     const FeasibilityOptions& opts = {});

std::string serialize_region(const TransitionSystem& a, const Region& r);
Region parse_region(const TransitionSystem& a, std::string_view text);  // throws ParseError

}  // namespace boolsynth
