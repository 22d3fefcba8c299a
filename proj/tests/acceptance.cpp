#include <boolsynth/classify.hpp>
#include <boolsynth/hardness.hpp>
#include <boolsynth/net.hpp>
#include <boolsynth/region.hpp>
#include <boolsynth/synthesis.hpp>

#include "support.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace boolsynth;
using I = Interaction;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, bool pass, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s (%.1f s)\n", n, pass ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
}

template <class... T>
std::string cat(const T&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

// Interactions written out from their informal meaning.
int expected_effect(std::string_view name, int b) {
  if (name == "nop") return b;
  if (name == "inp") return b == 1 ? 0 : -1;
  if (name == "out") return b == 0 ? 1 : -1;
  if (name == "set") return 1;
  if (name == "res") return 0;
  if (name == "swap") return 1 - b;
  if (name == "used") return b == 1 ? 1 : -1;
  if (name == "free") return b == 0 ? 0 : -1;
  return -2;
}

void criterion1() {
  auto t0 = Clock::now();
  int cells = 0, undefined = 0, bad = 0;
  for (auto i : kAllInteractions)
    for (int b = 0; b < 2; ++b) {
      ++cells;
      const int got = apply_interaction(i, b);
      if (got < 0) ++undefined;
      if (got != expected_effect(to_string(i), b)) ++bad;
    }
  report(1, cells == 16 && undefined == 4 && bad == 0,
         cat(cells, " cells, ", undefined, " undefined, ", bad, " mismatches"), t0);
}

constexpr NetType kT1{I::nop, I::inp, I::out};
constexpr NetType kT2{I::nop, I::inp, I::res, I::swap};
constexpr NetType kT2m{I::nop, I::out, I::set, I::swap};
constexpr NetType kT3{I::nop, I::inp, I::set};
constexpr NetType kT3m{I::nop, I::out, I::res};
constexpr NetType kT4{I::nop, I::set, I::swap};
constexpr NetType kT4m{I::nop, I::res, I::swap};
constexpr NetType kUF{I::used, I::free};

bool extends_by_tests(NetType tau, NetType base, bool nonempty) {
  if (!tau.contains(base)) return false;
  NetType rest = tau.without(base);
  return kUF.contains(rest) && (!nonempty || !rest.empty());
}

void criterion2() {
  auto t0 = Clock::now();
  std::map<Complexity, int> counts;
  int c1 = 0, c2 = 0, c3 = 0, covered = 0, overlaps = 0, mirror_bad = 0, cond_bad = 0;
  for (int bits = 0; bits < 256; ++bits) {
    NetType tau(static_cast<std::uint8_t>(bits));
    auto k = classify_type(tau).kind;
    if (k != classify_type(mirror_type(tau)).kind) ++mirror_bad;
    if (!tau.has(I::nop)) continue;
    ++counts[k];
    const bool a = extends_by_tests(tau, kT1, false) || extends_by_tests(tau, kT2, false) ||
                   extends_by_tests(tau, kT2m, false);
    const bool b = tau.contains(kT3) || tau.contains(kT3m);
    const bool c = extends_by_tests(tau, kT4, true) || extends_by_tests(tau, kT4m, true) ||
                   extends_by_tests(tau, kT4 | kT4m, true);
    c1 += a;
    c2 += b;
    c3 += c;
    if (a + b + c > 1) ++overlaps;
    if (a || b || c) {
      ++covered;
      if (k != Complexity::NPComplete) ++cond_bad;
    }
    const int hc = hardness_condition(tau);
    if (hc != (a ? 1 : b ? 2 : c ? 3 : 0)) ++cond_bad;
  }
  const int np = counts[Complexity::NPComplete], poly = counts[Complexity::PolyTime], open = counts[Complexity::Open];
  report(2,
         np == 84 && poly == 36 && open == 8 && covered == 77 && overlaps == 0 && mirror_bad == 0 && cond_bad == 0,
         cat(np, " NP-complete, ", poly, " polynomial, ", open, " open; conditions ", c1, "+", c2, "+", c3, "=",
             covered, " with ", overlaps, " overlaps; ", mirror_bad, " mirror mismatches"),
         t0);
}

// Interactions consistent with every arc of e under the given support bits.
std::uint8_t consistent(const TransitionSystem& a, int e, unsigned sup) {
  std::uint8_t m = 0;
  for (auto i : kAllInteractions) {
    bool ok = true;
    for (int x : a.arcs_of_event(e)) {
      const Arc& arc = a.arcs()[x];
      ok = ok && apply_interaction(i, sup >> arc.src & 1) == static_cast<int>(sup >> arc.dst & 1);
    }
    if (ok) m |= NetType::bit(i);
  }
  return m;
}

std::uint8_t undefined_at(int b) {
  std::uint8_t m = 0;
  for (auto i : kAllInteractions)
    if (apply_interaction(i, b) < 0) m |= NetType::bit(i);
  return m;
}

// Brute-force solvability of every atom for a list of types over all supports.
// Returns one bitmask over the type list per atom.
std::vector<std::uint32_t> brute_verdicts(const TransitionSystem& a, const std::vector<Atom>& atoms,
                                          const std::vector<NetType>& types, std::uint64_t* regions_in_max,
                                          NetType tmax) {
  const int n = a.num_states(), k = a.num_events();
  std::vector<std::uint32_t> out(atoms.size(), 0);
  std::uint64_t count = 0;
  std::vector<std::uint8_t> cand(k);
  for (unsigned sup = 0; sup < (1u << n); ++sup) {
    for (int e = 0; e < k; ++e) cand[e] = consistent(a, e, sup);
    std::uint64_t prod = 1;
    for (int e = 0; e < k; ++e) prod *= std::popcount(static_cast<unsigned>(cand[e] & tmax.bits()));
    count += prod;
    for (std::size_t t = 0; t < types.size(); ++t) {
      const std::uint8_t tb = types[t].bits();
      bool valid = true;
      for (int e = 0; e < k; ++e) valid = valid && (cand[e] & tb);
      if (!valid) continue;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& x = atoms[i];
        bool ok = x.kind == AtomKind::SSP ? ((sup >> x.a & 1) != (sup >> x.b & 1))
                                          : (cand[x.a] & tb & undefined_at(sup >> x.b & 1)) != 0;
        if (ok) out[i] |= 1u << t;
      }
    }
  }
  if (regions_in_max) *regions_in_max = count;
  return out;
}

// Per atom, the types (as a bitmask over the list) in which the oracle finds a region.
std::vector<std::uint32_t> oracle_verdicts(const TransitionSystem& a, const std::vector<Atom>& atoms,
                                           const std::vector<NetType>& types, NetType tmax,
                                           std::uint64_t* regions, std::vector<unsigned>* supports) {
  std::vector<std::uint32_t> out(atoms.size(), 0);
  std::uint64_t count = 0;
  Oracle o(a, tmax);
  o.for_each_region([&](const Region& r) {
    ++count;
    std::uint8_t used = 0;
    for (auto i : r.sig) used |= NetType::bit(i);
    std::uint32_t in_types = 0;
    for (std::size_t t = 0; t < types.size(); ++t)
      if (types[t].contains(NetType(used))) in_types |= 1u << t;
    if (supports) {
      unsigned s = 0;
      for (int q = 0; q < a.num_states(); ++q) s |= unsigned(r.sup[q]) << q;
      supports->push_back(s | (in_types << 8));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (satisfies(r, atoms[i])) out[i] |= in_types;
    return true;
  });
  if (regions) *regions = count;
  return out;
}

struct SynthStats {
  std::uint64_t attempts = 0, synthesized = 0, verified = 0;
  void run(const TransitionSystem& a, NetType tau) {
    ++attempts;
    auto r = synthesize(a, tau);
    if (r.status != SynthesisStatus::Synthesized) return;
    ++synthesized;
    if (r.verified && verify_net(a, r.net)) ++verified;
  }
  bool ok() const { return attempts == synthesized && synthesized == verified; }
};

struct FamilyResult {
  std::uint64_t systems = 0, atoms = 0;
  // criterion 3
  std::uint64_t grow_checks = 0, grow_bad = 0, res_calls = 0, res_bad = 0, oracle_vs_brute_bad = 0;
  std::uint64_t region_count_bad = 0;
  // criterion 4
  std::uint64_t gf2_calls = 0, gf2_bad = 0, chord_checks = 0, chord_bad = 0;
  // direct oracle sample
  std::uint64_t direct_calls = 0, direct_bad = 0;
  double secs = 0;
};

std::vector<NetType> res_types() {
  std::vector<NetType> out;
  const NetType extra[] = {{I::inp}, {I::used}, {I::free}};
  for (int m = 0; m < 8; ++m) {
    NetType t{I::nop, I::res};
    for (int i = 0; i < 3; ++i)
      if (m >> i & 1) t = t | extra[i];
    out.push_back(t);
  }
  return out;
}

std::vector<NetType> swap_types() {
  std::vector<NetType> out;
  const NetType extra[] = {{I::inp}, {I::out}, {I::used}, {I::free}};
  for (int m = 0; m < 16; ++m) {
    NetType t{I::nop, I::swap};
    for (int i = 0; i < 4; ++i)
      if (m >> i & 1) t = t | extra[i];
    out.push_back(t);
  }
  return out;
}

FamilyResult run_family(int max_states, int max_events, int direct_stride, SynthStats& synth) {
  FamilyResult fr;
  auto t0 = Clock::now();
  const auto rt = res_types(), st = swap_types();
  const NetType rmax = rt.back(), smax = swap_types().back();
  std::vector<unsigned> supports;
  testsupport::for_each_small_ts_upto(max_states, max_events, [&](const TransitionSystem& a) {
    ++fr.systems;
    const auto atoms = enumerate_atoms(a);
    fr.atoms += atoms.size();
    const int n = a.num_states();

    // res family
    supports.clear();
    std::uint64_t oracle_regions = 0, brute_regions = 0;
    auto ov = oracle_verdicts(a, atoms, rt, rmax, &oracle_regions, &supports);
    auto bv = brute_verdicts(a, atoms, rt, &brute_regions, rmax);
    if (ov != bv) ++fr.oracle_vs_brute_bad;
    if (oracle_regions != brute_regions) ++fr.region_count_bad;
    for (unsigned q = 1; q < (1u << n); ++q) {
      Support qs(n);
      for (int s = 0; s < n; ++s) qs[s] = q >> s & 1;
      auto g = grow_support(a, qs);
      unsigned gm = 0;
      for (int s = 0; s < n; ++s) gm |= unsigned(g[s] != 0) << s;
      for (unsigned packed : supports) {
        const unsigned sup = packed & 0xff, in_types = packed >> 8;
        if ((sup & q) != q) continue;
        fr.grow_checks += std::popcount(in_types);
        if ((gm & sup) != gm) fr.grow_bad += std::popcount(in_types);
      }
    }
    for (std::size_t t = 0; t < rt.size(); ++t) {
      bool feasible = true;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const bool want = ov[i] >> t & 1;
        feasible = feasible && want;
        ++fr.res_calls;
        auto r = solve_atom_res_family(a, rt[t], atoms[i]);
        if (r.has_value() != want || (r && (validate_region(a, rt[t], *r) || !satisfies(*r, atoms[i]))))
          ++fr.res_bad;
      }
      if (feasible) synth.run(a, rt[t]);
    }

    // swap family
    ov = oracle_verdicts(a, atoms, st, smax, &oracle_regions, nullptr);
    bv = brute_verdicts(a, atoms, st, &brute_regions, smax);
    if (ov != bv) ++fr.oracle_vs_brute_bad;
    if (oracle_regions != brute_regions) ++fr.region_count_bad;
    const auto idx = build_parity_index(a);
    const auto chords = build_chord_system(a, idx);
    for (std::size_t t = 0; t < st.size(); ++t) {
      bool feasible = true;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const bool want = ov[i] >> t & 1;
        feasible = feasible && want;
        ++fr.gf2_calls;
        auto r = solve_atom_gf2(a, idx, st[t], atoms[i]);
        if (r.has_value() != want || (r && (validate_region(a, st[t], *r) || !satisfies(*r, atoms[i])))) {
          ++fr.gf2_bad;
          continue;
        }
        if (!r) continue;
        std::vector<std::uint8_t> rho(a.num_events(), 0);
        for (int e = 0; e < a.num_events(); ++e)
          if (!a.arcs_of_event(e).empty()) {
            const Arc& x = a.arcs()[a.arcs_of_event(e).front()];
            rho[e] = r->sup[x.src] ^ r->sup[x.dst];
          }
        ++fr.chord_checks;
        if (!chords.satisfied_by(rho)) ++fr.chord_bad;
      }
      if (feasible) synth.run(a, st[t]);
    }

    if (direct_stride > 0 && fr.systems % direct_stride == 0) {
      auto check = [&](const std::vector<NetType>& types, const std::vector<std::uint32_t>& want) {
        for (std::size_t t = 0; t < types.size(); ++t)
          for (std::size_t i = 0; i < atoms.size(); ++i) {
            ++fr.direct_calls;
            auto v = solve_atom_oracle(a, types[t], atoms[i]).verdict;
            if ((v == Verdict::Solved) != bool(want[i] >> t & 1) || v == Verdict::BudgetExceeded) ++fr.direct_bad;
          }
      };
      check(rt, brute_verdicts(a, atoms, rt, nullptr, rmax));
      check(st, brute_verdicts(a, atoms, st, nullptr, smax));
    }
  });
  fr.secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return fr;
}

bool all_events_occur(const TransitionSystem& a) {
  for (int e = 0; e < a.num_events(); ++e)
    if (a.arcs_of_event(e).empty()) return false;
  return true;
}

void criterion5(std::mt19937& rng, SynthStats& synth) {
  auto t0 = Clock::now();
  int checked = 0, bad = 0, singles = 0;
  std::vector<NetType> types;
  for (int m = 0; m < 4; ++m) {
    NetType t{I::nop};
    if (m & 1) t = t | NetType{I::used};
    if (m & 2) t = t | NetType{I::free};
    types.push_back(t);
  }
  for (int i = 0; i < 200; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    TransitionSystem a;
    do a = testsupport::random_ts(rng, n, k); while (!all_events_occur(a));
    singles += n == 1;
    for (auto tau : types) {
      ++checked;
      auto rep = decide_feasibility(a, tau);
      if (rep.feasible != (n == 1)) ++bad;
      if (rep.feasible) synth.run(a, tau);
    }
  }
  report(5, bad == 0, cat(checked, " decisions on 200 systems (", singles, " with one state), ", bad, " wrong"), t0);
}

void criterion6(std::mt19937& rng, SynthStats& family, SynthStats& trivial, double family_secs) {
  auto t0 = Clock::now();
  std::vector<NetType> poly;
  for (int bits = 0; bits < 256; ++bits) {
    NetType t(static_cast<std::uint8_t>(bits));
    if (classify_type(t).kind == Complexity::PolyTime) poly.push_back(t);
  }
  SynthStats random;
  std::uint64_t disagree = 0;
  FeasibilityOptions oracle_opts;
  oracle_opts.strategy = Strategy::Oracle;
  for (int i = 0; i < 500; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    auto a = testsupport::random_ts(rng, n, k);
    for (auto tau : poly) {
      auto r = synthesize(a, tau);
      ++random.attempts;
      const bool feasible = r.status == SynthesisStatus::Synthesized;
      if (feasible) {
        ++random.synthesized;
        if (r.verified && verify_net(a, r.net)) ++random.verified;
      }
      if (decide_feasibility(a, tau, oracle_opts).feasible != feasible) ++disagree;
    }
  }
  const bool pass = poly.size() == 36 && family.ok() && trivial.ok() && random.synthesized == random.verified &&
                    disagree == 0 && random.synthesized > 0;
  report(6, pass,
         cat("small family ", family.verified, "/", family.attempts, " feasible instances verified (",
             static_cast<int>(family_secs), " s inside criteria 3-4), trivial ", trivial.verified, "/",
             trivial.attempts, ", random ", random.verified, "/", random.synthesized, " synthesized of ",
             random.attempts, " over ", poly.size(), " types, ", disagree, " oracle disagreements"),
         t0);
}

const char* kTriple = "cnf triple\nclause x y z\nclause x y z\nclause x y z\n";
const char* kSix =
    "cnf six\nclause X0 X1 X2\nclause X2 X0 X3\nclause X1 X3 X0\nclause X2 X4 X5\nclause X1 X5 X4\nclause X4 X3 X5\n";
const char* kNoModel = "cnf none\nclause a b c\nclause a b d\nclause a c d\nclause b c d\n";

bool same_structure(const TransitionSystem& a, const TransitionSystem& b) {
  return a.state_names() == b.state_names() && a.event_names() == b.event_names() && a.arcs() == b.arcs() &&
         a.initial() == b.initial();
}

void criterion7() {
  auto t0 = Clock::now();
  auto six = parse_cnf(kSix), three = parse_cnf(kTriple);
  auto r4 = build_reduction(six, Sigma::S4);
  const auto comps = r4.union_.components.size();
  const bool modest = modesty(r4.joined).modest;
  const bool connector = r4.joined.find_state(connector_state(97)).has_value() &&
                         !r4.joined.find_state(connector_state(98)).has_value();
  bool same = true, heads = true;
  for (auto* phi : {&three, &six}) {
    same = same && same_structure(build_reduction(*phi, Sigma::S1).joined, build_reduction(*phi, Sigma::S2).joined);
    for (auto s : {Sigma::S1, Sigma::S2, Sigma::S3, Sigma::S4})
      heads = heads && build_reduction(*phi, s).key_union.components.front().num_states() ==
                           42 * static_cast<int>(phi->num_clauses());
  }
  report(7, comps == 98 && modest && connector && same && heads,
         cat(comps, " components, modest=", modest, ", last connector 97=", connector,
             ", sigma1==sigma2 ", same, ", head 42m ", heads),
         t0);
}

// One-in-three check written against the clause list directly.
bool hits_once(const CnfInstance& phi, const std::vector<std::string>& chosen) {
  std::set<std::string> in(chosen.begin(), chosen.end());
  for (auto& c : phi.clauses) {
    int hits = 0;
    for (int v : c) hits += in.count(phi.variables[v]);
    if (hits != 1) return false;
  }
  return true;
}

std::optional<std::vector<std::string>> least_model(const CnfInstance& phi) {
  const int n = static_cast<int>(phi.variables.size());
  std::optional<std::vector<std::string>> best;
  std::vector<int> bestidx;
  for (unsigned long m = 0; m < (1ul << n); ++m) {
    std::vector<std::string> names;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) {
        names.push_back(phi.variables[i]);
        idx.push_back(i);
      }
    if (hits_once(phi, names) && (!best || idx < bestidx)) {
      best = names;
      bestidx = idx;
    }
  }
  return best;
}

bool inhibits(const TransitionSystem& a, const Region& r, const std::string& e, const std::string& s) {
  return apply_interaction(r.sig[*a.find_event(e)], r.sup[*a.find_state(s)]) < 0;
}

void criterion8() {
  auto t0 = Clock::now();
  int witnesses = 0, bad = 0;
  std::string models;
  for (auto text : {kTriple, kSix}) {
    auto phi = parse_cnf(text);
    auto want = least_model(phi);
    auto m = one_in_three_bruteforce(phi);
    if (!m || !want || model_names(phi, *m) != *want) {
      ++bad;
      continue;
    }
    models += " {";
    for (auto& v : *want) models += (models.back() == '{' ? "" : ",") + v;
    models += "}";
    for (int s = 1; s <= 6; ++s) {
      auto red = build_reduction(phi, static_cast<Sigma>(s));
      auto r = combine_witness(phi, red, *m);
      auto back = extract_model(phi, red.joined, r);
      ++witnesses;
      if (validate_region(red.joined, red.tau, r) || !inhibits(red.joined, r, red.key_event, red.key_state) ||
          back != *m || !is_one_in_three_model(phi, back) || !hits_once(phi, model_names(phi, back)))
        ++bad;
    }
  }
  report(8, bad == 0 && witnesses == 12, cat(witnesses, " witnesses, models", models, ", ", bad, " failures"), t0);
}

void criterion9() {
  auto t0 = Clock::now();
  const NetType tau{I::nop, I::inp, I::free};
  auto phi = parse_cnf(kTriple);
  auto pos = build_theorem2_ts(phi, tau);
  const Atom key = essp(*pos.ts.find_event(pos.key_event), *pos.ts.find_state(pos.key_state));
  auto solved = solve_atom_oracle(pos.ts, tau, key);
  bool a_ok = pos.ts.num_states() == 30 && pos.ts.num_events() == 11 && solved.verdict == Verdict::Solved &&
              solved.region && !validate_region(pos.ts, tau, *solved.region);
  auto w = theorem2_witness(phi, pos, *one_in_three_bruteforce(phi));
  a_ok = a_ok && !validate_region(pos.ts, tau, w) && inhibits(pos.ts, w, pos.key_event, pos.key_state);
  int enumerated = 0, non_models = 0;
  Oracle(pos.ts, tau).for_each_region(
      [&](const Region& r) {
        ++enumerated;
        if (!hits_once(phi, model_names(phi, extract_model(phi, pos.ts, r)))) ++non_models;
        return enumerated < 20000;
      },
      key);
  a_ok = a_ok && non_models == 0 && enumerated > 0;

  auto none = parse_cnf(kNoModel);
  auto neg = build_theorem2_ts(none, tau);
  const Atom nkey = essp(*neg.ts.find_event(neg.key_event), *neg.ts.find_state(neg.key_state));
  auto res = solve_atom_oracle(neg.ts, tau, nkey, {10'000'000, 600.0});
  const bool b_ok = neg.ts.num_states() == 39 && neg.ts.num_events() == 14 && res.verdict == Verdict::Unsolvable &&
                    !one_in_three_bruteforce(none);
  report(9, a_ok && b_ok,
         cat("positive 30/11 solved in ", solved.nodes, " nodes, ", enumerated, " key regions all encode models; ",
             "negative ", neg.ts.num_states(), "/", neg.ts.num_events(), " ",
             res.verdict == Verdict::Unsolvable ? "unsolvable" : "not refuted", " after ", res.nodes, " nodes"),
         t0);
}

void criterion10() {
  auto t0 = Clock::now();
  std::map<I, std::uint64_t> seen;
  std::uint64_t bad = 0;
  auto brute = [&](const TransitionSystem& g, const std::string& a, const std::string& b) {
    const int k = *g.find_event("k"), ea = *g.find_event(a), eb = *g.find_event(b);
    const int n = g.num_states(), events = g.num_events();
    std::vector<int> sig(events, 0);
    for (unsigned sup = 0; sup < (1u << n); ++sup) {
      std::fill(sig.begin(), sig.end(), 0);
      for (;;) {
        bool valid = true;
        for (auto& x : g.arcs())
          valid = valid && apply_interaction(static_cast<I>(sig[x.event]), sup >> x.src & 1) ==
                               static_cast<int>(sup >> x.dst & 1);
        if (valid) {
          const I sk = static_cast<I>(sig[k]), sa = static_cast<I>(sig[ea]), sb = static_cast<I>(sig[eb]);
          ++seen[sk];
          bool ok = true;
          if (sk == I::inp) ok = kKeepPlus.has(sa) && kKeepMinus.has(sb);
          if (sk == I::out) ok = kKeepMinus.has(sa) && kKeepPlus.has(sb);
          if (sk == I::used) ok = kKeepPlus.has(sa) && kKeepPlus.has(sb);
          if (sk == I::free) ok = kKeepMinus.has(sa) && kKeepMinus.has(sb);
          if (!ok) ++bad;
        }
        int i = 0;
        while (i < events && ++sig[i] == 8) sig[i++] = 0;
        if (i == events) break;
      }
    }
  };
  brute(generator_gadget("g", 0, "a_0", "b_0"), "a_0", "b_0");
  brute(generator_gadget("g", 1, "c_1", "c_1"), "c_1", "c_1");
  const bool covered = seen[I::inp] && seen[I::out] && seen[I::used] && seen[I::free];
  report(10, bad == 0 && covered,
         cat("regions with sig(k) inp/out/used/free: ", seen[I::inp], "/", seen[I::out], "/", seen[I::used], "/",
             seen[I::free], ", ", bad, " violations"),
         t0);
}

std::pair<int, std::string> run(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return {-1, ""};
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  return {pclose(p), out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion11(const std::string& cli) {
  auto t0 = Clock::now();
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / cat("boolsynth-acceptance-", getpid());
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  };
  const auto ts = put("cycle.ts",
                      "ts cycle\ninitial s0\narc s0 a s1\narc s1 b s2\narc s2 a s3\narc s3 b s0\narc s1 c s3\n");
  const auto ts2 = put("cycle2.ts",
                       "ts other\ninitial t0\narc t0 a t1\narc t1 b t2\narc t2 a t3\narc t3 b t0\narc t1 c t3\n");
  const auto net = put("toggle.net", "net toggle\ntransitions a b\nplace p initial=1 a=inp b=out\n"
                                     "place q initial=0 a=out b=inp\n");
  const auto three = put("triple.cnf", kTriple);
  const auto six = put("six.cnf", kSix);
  const auto bad = put("bad.ts", "ts bad\ninitial s0\narc s0 a s1\narc s0 a s2\n");

  std::vector<std::string> commands = {
      "validate " + ts,
      "validate " + net,
      "validate " + six,
      "validate " + bad,
      "classify --all",
      "classify --type nop,inp,out",
      "classify --type nop,set,res",
      "stategraph " + net,
      "iso " + ts + " " + ts2,
      "iso " + ts + " " + net,
      "reduce " + six + " --scheme sigma4",
      "reduce " + three + " --scheme sigma5 --model auto",
      "reduce " + three + " --scheme t2:nop,inp,free --model auto",
      "t2gen " + three + " --variant basic",
      "t2gen " + three + " --variant plus",
      "t2gen " + three + " --variant cross",
  };
  const std::vector<std::string> with_jobs = {
      "synth " + ts + " --type nop,inp,out,swap --verify",
      "synth " + ts + " --type nop,res,inp --verify",
      "synth " + ts + " --type nop,swap --strategy oracle",
      "check " + ts + " --type nop,inp,out --property both",
      "check " + ts + " --type nop,res,inp,used --property essp --strategy oracle",
  };
  int runs = 0, mismatches = 0;
  std::string first_bad;
  auto compare = [&](const std::string& label, const std::pair<int, std::string>& x,
                     const std::pair<int, std::string>& y) {
    if (x != y) {
      ++mismatches;
      if (first_bad.empty()) first_bad = label;
    }
  };
  for (std::string format : {"text", "json"}) {
    for (auto& c : commands) {
      const std::string cmd = cli + " --format " + format + " " + c;
      auto x = run(cmd), y = run(cmd);
      runs += 2;
      compare(cmd, x, y);
    }
    for (auto& c : with_jobs) {
      const std::string cmd = cli + " --format " + format + " " + c;
      auto base = run(cmd + " --jobs 1");
      ++runs;
      for (int jobs : {1, 2, 4}) {
        auto y = run(cmd + " --jobs " + std::to_string(jobs));
        ++runs;
        compare(cmd + " --jobs " + std::to_string(jobs), base, y);
      }
    }
  }
  // commands writing files
  const std::vector<std::pair<std::string, std::vector<std::string>>> writers = {
      {"synth " + ts + " --type nop,inp,out,swap -o " + (dir / "out.net").string(), {"out.net"}},
      {"stategraph " + net + " -o " + (dir / "out.ts").string(), {"out.ts"}},
      {"reduce " + six + " --scheme sigma1 --model auto -o " + (dir / "red.ts").string() + " --witness " +
           (dir / "red.region").string(),
       {"red.ts", "red.region"}},
      {"t2gen " + six + " --variant cross -o " + (dir / "t2.ts").string(), {"t2.ts"}},
  };
  for (auto& [c, files] : writers) {
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      for (auto& f : files) fs::remove(dir / f);
      auto r = run(cli + " " + c);
      ++runs;
      std::string all = std::to_string(r.first) + r.second;
      for (auto& f : files) all += "\n--\n" + slurp(dir / f);
      if (rep == 0)
        first.push_back(all);
      else
        compare(c, {0, first[0]}, {0, all});
    }
  }
  fs::remove_all(dir);
  report(11, mismatches == 0, cat(runs, " invocations, ", mismatches, " differing", first_bad.empty() ? "" : " first: ",
                                   first_bad),
         t0);
}

}  // namespace

int main(int argc, char** argv) {
  int max_states = 4, max_events = 3;
  std::string cli = BOOLSYNTH_CLI;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--max-states") max_states = std::atoi(argv[i + 1]);
    else if (flag == "--max-events") max_events = std::atoi(argv[i + 1]);
    else if (flag == "--cli") cli = argv[i + 1];
  }
  std::mt19937 rng(20191);

  criterion1();
  criterion2();

  SynthStats family_synth;
  auto t0 = Clock::now();
  auto fr = run_family(max_states, max_events, 997, family_synth);
  report(3, fr.grow_bad == 0 && fr.res_bad == 0 && fr.oracle_vs_brute_bad == 0 && fr.region_count_bad == 0 &&
                fr.direct_bad == 0 && fr.systems > 0,
         cat(fr.systems, " systems, ", fr.atoms, " atoms; ", fr.grow_checks, " support inclusions (", fr.grow_bad,
             " violated); ", fr.res_calls, " res-family verdicts (", fr.res_bad, " wrong); oracle vs brute force ",
             fr.oracle_vs_brute_bad, " mismatches, region counts ", fr.region_count_bad, " mismatches; ",
             fr.direct_calls, " direct oracle calls (", fr.direct_bad, " wrong)"),
         t0);
  t0 = Clock::now();
  report(4, fr.gf2_bad == 0 && fr.chord_bad == 0 && fr.oracle_vs_brute_bad == 0 && fr.chord_checks > 0,
         cat(fr.gf2_calls, " gf2 verdicts (", fr.gf2_bad, " wrong), ", fr.chord_checks, " regions re-substituted (",
             fr.chord_bad, " violate a chord); shared pass above took ", static_cast<int>(fr.secs), " s"),
         t0);

  SynthStats trivial_synth;
  criterion5(rng, trivial_synth);
  criterion6(rng, family_synth, trivial_synth, fr.secs);
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11(cli);
  return failures == 0 ? 0 : 1;
}
