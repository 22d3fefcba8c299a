#include <boolsynth/region.hpp>

#include <algorithm>
#include <chrono>
#include <deque>
#include <span>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace boolsynth {

using I = Interaction;

std::vector<Atom> enumerate_atoms(const TransitionSystem& a, bool include_ssp, bool include_essp) {
  std::vector<Atom> out;
  const int n = a.num_states();
  if (include_ssp)
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t) out.push_back({AtomKind::SSP, s, t});
  if (include_essp)
    for (int e = 0; e < a.num_events(); ++e)
      for (int s = 0; s < n; ++s)
        if (!a.occurs(s, e)) out.push_back({AtomKind::ESSP, e, s});
  return out;
}

std::string describe_atom(const TransitionSystem& a, const Atom& atom) {
  if (atom.kind == AtomKind::SSP) return "SSP(" + a.state_name(atom.a) + "," + a.state_name(atom.b) + ")";
  return "ESSP(" + a.event_name(atom.a) + "," + a.state_name(atom.b) + ")";
}

std::optional<RegionViolation> validate_region(const TransitionSystem& a, NetType tau, const Region& r) {
  if (static_cast<int>(r.sup.size()) != a.num_states() || static_cast<int>(r.sig.size()) != a.num_events())
    return RegionViolation{RegionViolation::Shape, -1};
  for (int e = 0; e < a.num_events(); ++e)
    if (!tau.has(r.sig[e])) return RegionViolation{RegionViolation::SignatureOutsideType, e};
  for (int i = 0; i < static_cast<int>(a.arcs().size()); ++i) {
    const Arc& x = a.arcs()[i];
    if (r.sup[x.src] > 1 || apply_interaction(r.sig[x.event], r.sup[x.src]) != r.sup[x.dst])
      return RegionViolation{RegionViolation::Arc, i};
  }
  return std::nullopt;
}

std::string describe_violation(const TransitionSystem& a, const RegionViolation& v) {
  switch (v.kind) {
    case RegionViolation::Shape: return "region does not cover the states and events";
    case RegionViolation::SignatureOutsideType: return "signature of " + a.event_name(v.index) + " outside the type";
    case RegionViolation::Arc: {
      const Arc& x = a.arcs()[v.index];
      return "arc " + a.state_name(x.src) + " " + a.event_name(x.event) + " " + a.state_name(x.dst) +
             " is not mapped into the type";
    }
  }
  return "";
}

bool satisfies(const Region& r, const Atom& atom) {
  if (atom.kind == AtomKind::SSP) return r.sup[atom.a] != r.sup[atom.b];
  return apply_interaction(r.sig[atom.a], r.sup[atom.b]) < 0;
}

Region mirror_region(const Region& r) {
  Region m;
  m.sup.reserve(r.sup.size());
  for (auto v : r.sup) m.sup.push_back(static_cast<std::uint8_t>(1 - v));
  m.sig.reserve(r.sig.size());
  for (auto i : r.sig) m.sig.push_back(mirror(i));
  return m;
}

Support grow_support(const TransitionSystem& a, const Support& q) {
  const auto& arcs = a.arcs();
  Support in = q;
  in.resize(a.num_states(), 0);
  std::vector<char> internal(a.num_events(), 0);
  std::vector<int> work;
  for (int s = 0; s < a.num_states(); ++s)
    if (in[s]) work.push_back(s);

  std::vector<int> fresh_internal;
  auto note_inside = [&](const Arc& x) {
    if (in[x.src] && in[x.dst] && !internal[x.event]) {
      internal[x.event] = 1;
      fresh_internal.push_back(x.event);
    }
  };
  auto add = [&](int s) {
    if (in[s]) return;
    in[s] = 1;
    work.push_back(s);
    for (int i : a.arcs_into(s)) note_inside(arcs[i]);
    for (int i : a.arcs_out_of(s)) note_inside(arcs[i]);
  };
  for (auto& x : arcs) note_inside(x);

  while (!work.empty() || !fresh_internal.empty()) {
    while (!fresh_internal.empty()) {
      int e = fresh_internal.back();
      fresh_internal.pop_back();
      for (int i : a.arcs_of_event(e))
        if (in[arcs[i].src]) add(arcs[i].dst);
    }
    if (work.empty()) break;
    int s = work.back();
    work.pop_back();
    for (int i : a.arcs_into(s)) add(arcs[i].src);
    for (int i : a.arcs_out_of(s))
      if (internal[arcs[i].event]) add(arcs[i].dst);
  }
  return in;
}

namespace {

// Allowed (sup(src), sup(dst)) pairs per interaction; bit = 2*src + dst.
constexpr std::uint8_t kAllowed[8] = {
    0b1001,  // nop: 00, 11
    0b0100,  // inp: 10
    0b0010,  // out: 01
    0b1010,  // set: 01, 11
    0b0101,  // res: 00, 10
    0b0110,  // swap: 01, 10
    0b1000,  // used: 11
    0b0001,  // free: 00
};

constexpr I kTargetOrder[] = {I::inp, I::out, I::used, I::free, I::res, I::set, I::swap, I::nop};
constexpr I kOtherOrder[] = {I::nop, I::res, I::set, I::swap, I::inp, I::out, I::used, I::free};
constexpr I kInhibitors[] = {I::inp, I::out, I::used, I::free};

// The sup value at which an inhibitor is undefined.
int undefined_at(I i) { return apply_interaction(i, 0) < 0 ? 0 : 1; }

}  // namespace

NetType signature_candidates(const TransitionSystem& a, NetType tau, const Support& sup, int e) {
  std::uint8_t present = 0;
  for (int i : a.arcs_of_event(e)) {
    const Arc& x = a.arcs()[i];
    present |= static_cast<std::uint8_t>(1u << (2 * sup[x.src] + sup[x.dst]));
  }
  std::uint8_t bits = 0;
  for (int i = 0; i < 8; ++i)
    if (tau.has(static_cast<I>(i)) && (present & ~kAllowed[i]) == 0) bits |= static_cast<std::uint8_t>(1u << i);
  return NetType(bits);
}

Interaction pick_signature(NetType candidates, bool target) {
  for (auto i : target ? std::span<const I>(kTargetOrder) : std::span<const I>(kOtherOrder))
    if (candidates.has(i)) return i;
  throw std::invalid_argument("no candidate signature");
}

std::optional<Region> complete_region(const TransitionSystem& a, NetType tau, const Support& sup, int target_event,
                                      const std::vector<std::optional<Interaction>>& fixed) {
  Region r;
  r.sup = sup;
  r.sig.resize(a.num_events(), I::nop);
  for (int e = 0; e < a.num_events(); ++e) {
    if (e < static_cast<int>(fixed.size()) && fixed[e]) {
      r.sig[e] = *fixed[e];
      continue;
    }
    NetType c = signature_candidates(a, tau, sup, e);
    if (c.empty()) return std::nullopt;
    r.sig[e] = pick_signature(c, e == target_event);
  }
  return r;
}

namespace {

Support singleton(const TransitionSystem& a, int s) {
  Support q(a.num_states(), 0);
  q[s] = 1;
  return q;
}

std::optional<Region> with_target(const TransitionSystem& a, NetType tau, const Support& sup, int e, I sig) {
  std::vector<std::optional<I>> fixed(a.num_events());
  fixed[e] = sig;
  return complete_region(a, tau, sup, e, fixed);
}

}  // namespace

std::optional<Region> solve_atom_res_family(const TransitionSystem& a, NetType tau, const Atom& atom) {
  if (poly_family(tau) != PolyFamily::Res) throw WrongFamily(tau);
  const auto& arcs = a.arcs();
  if (atom.kind == AtomKind::SSP) {
    for (auto [from, other] : {std::pair{atom.a, atom.b}, std::pair{atom.b, atom.a}}) {
      Support sup = grow_support(a, singleton(a, from));
      if (!sup[other]) return complete_region(a, tau, sup);
    }
    return std::nullopt;
  }
  const int e = atom.a, s = atom.b;
  if (tau.has(I::inp)) {
    Support q(a.num_states(), 0);
    for (int i : a.arcs_of_event(e)) q[arcs[i].src] = 1;
    Support sup = grow_support(a, q);
    if (!sup[s] && signature_candidates(a, tau, sup, e).has(I::inp)) return with_target(a, tau, sup, e, I::inp);
  }
  if (tau.has(I::used)) {
    Support q(a.num_states(), 0);
    for (int i : a.arcs_of_event(e)) q[arcs[i].src] = q[arcs[i].dst] = 1;
    Support sup = grow_support(a, q);
    if (!sup[s] && signature_candidates(a, tau, sup, e).has(I::used)) return with_target(a, tau, sup, e, I::used);
  }
  if (tau.has(I::free)) {
    Support sup = grow_support(a, singleton(a, s));
    if (signature_candidates(a, tau, sup, e).has(I::free)) return with_target(a, tau, sup, e, I::free);
  }
  return std::nullopt;
}

std::optional<Region> solve_atom_set_family(const TransitionSystem& a, NetType tau, const Atom& atom) {
  if (poly_family(tau) != PolyFamily::Set) throw WrongFamily(tau);
  auto r = solve_atom_res_family(a, mirror_type(tau), atom);
  if (!r) return std::nullopt;
  return mirror_region(*r);
}

ParityIndex build_parity_index(const TransitionSystem& a) {
  ParityIndex idx;
  const int n = a.num_states();
  idx.words = std::max(1, (a.num_events() + 63) / 64);
  idx.parent_arc.assign(n, -1);
  idx.psi.assign(static_cast<std::size_t>(n) * idx.words, 0);
  std::vector<char> seen(n, 0), tree(a.arcs().size(), 0);
  std::vector<int> queue{a.initial()};
  seen[a.initial()] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int s = queue[qi];
    for (int i : a.arcs_out_of(s)) {
      const Arc& x = a.arcs()[i];
      if (seen[x.dst]) continue;
      seen[x.dst] = 1;
      tree[i] = 1;
      idx.parent_arc[x.dst] = i;
      std::uint64_t* dst = idx.psi.data() + static_cast<std::size_t>(x.dst) * idx.words;
      std::copy(idx.parity(s), idx.parity(s) + idx.words, dst);
      dst[x.event >> 6] ^= std::uint64_t{1} << (x.event & 63);
      queue.push_back(x.dst);
    }
  }
  for (int i = 0; i < static_cast<int>(a.arcs().size()); ++i)
    if (!tree[i]) idx.chords.push_back(i);
  return idx;
}

namespace {

void xor_parity(std::uint64_t* row, const ParityIndex& idx, int s) {
  const std::uint64_t* p = idx.parity(s);
  for (int w = 0; w < idx.words; ++w) row[w] ^= p[w];
}

void flip(std::uint64_t* row, int e) { row[e >> 6] ^= std::uint64_t{1} << (e & 63); }

void add_chord_rows(Gf2System& sys, const TransitionSystem& a, const ParityIndex& idx) {
  for (int i : idx.chords) {
    const Arc& x = a.arcs()[i];
    std::uint64_t* row = sys.add_row(false);
    flip(row, x.event);
    xor_parity(row, idx, x.src);
    xor_parity(row, idx, x.dst);
  }
}

}  // namespace

Gf2System build_chord_system(const TransitionSystem& a, const ParityIndex& idx) {
  Gf2System sys(a.num_events(), a.event_names());
  add_chord_rows(sys, a, idx);
  return sys;
}

Region abstract_to_region(const TransitionSystem& a, const ParityIndex& idx, NetType tau,
                          const std::vector<std::uint8_t>& rho, bool complement) {
  if (!tau.contains({I::nop, I::swap})) throw WrongFamily(tau);
  for (int i : idx.chords) {
    const Arc& x = a.arcs()[i];
    int acc = rho[x.event];
    for (int e = 0; e < a.num_events(); ++e)
      if (rho[e] && (idx.parity(x.src, e) != idx.parity(x.dst, e))) acc ^= 1;
    if (acc) throw ChordViolation();
  }
  Region r;
  r.sup.resize(a.num_states());
  for (int s = 0; s < a.num_states(); ++s) {
    int v = complement ? 1 : 0;
    for (int e = 0; e < a.num_events(); ++e)
      if (rho[e] && idx.parity(s, e)) v ^= 1;
    r.sup[s] = static_cast<std::uint8_t>(v);
  }
  r.sig.resize(a.num_events());
  for (int e = 0; e < a.num_events(); ++e) r.sig[e] = rho[e] ? I::swap : I::nop;
  return r;
}

Region abstract_to_region(const TransitionSystem& a, NetType tau, const std::vector<std::uint8_t>& rho,
                          bool complement) {
  return abstract_to_region(a, build_parity_index(a), tau, rho, complement);
}

std::optional<Region> solve_atom_gf2(const TransitionSystem& a, NetType tau, const Atom& atom) {
  return solve_atom_gf2(a, build_parity_index(a), tau, atom);
}

std::optional<Region> solve_atom_gf2(const TransitionSystem& a, const ParityIndex& idx, NetType tau,
                                     const Atom& atom) {
  if (poly_family(tau) != PolyFamily::Swap) throw WrongFamily(tau);
  if (atom.kind == AtomKind::SSP) {
    Gf2System sys(a.num_events());
    add_chord_rows(sys, a, idx);
    std::uint64_t* row = sys.add_row(true);
    xor_parity(row, idx, atom.a);
    xor_parity(row, idx, atom.b);
    auto rho = solve_gf2(sys);
    if (!rho) return std::nullopt;
    return abstract_to_region(a, idx, tau, *rho, false);
  }
  const int e = atom.a, s = atom.b;
  auto attempt = [&](bool flips, I inhibitor) -> std::optional<Region> {
    Gf2System sys(a.num_events());
    add_chord_rows(sys, a, idx);
    flip(sys.add_row(flips), e);
    for (int i : a.arcs_of_event(e)) {
      std::uint64_t* row = sys.add_row(true);
      xor_parity(row, idx, s);
      xor_parity(row, idx, a.arcs()[i].src);
    }
    auto rho = solve_gf2(sys);
    if (!rho) return std::nullopt;
    Region r = abstract_to_region(a, idx, tau, *rho, false);
    if (r.sup[s] != undefined_at(inhibitor)) r = abstract_to_region(a, idx, tau, *rho, true);
    r.sig[e] = inhibitor;
    return r;
  };
  if (tau.has(I::inp) || tau.has(I::out))
    if (auto r = attempt(true, tau.has(I::inp) ? I::inp : I::out)) return r;
  if (tau.has(I::used) || tau.has(I::free))
    if (auto r = attempt(false, tau.has(I::used) ? I::used : I::free)) return r;
  return std::nullopt;
}

std::optional<Region> solve_atom_trivial(const TransitionSystem& a, NetType tau, const Atom& atom) {
  if (poly_family(tau) != PolyFamily::Trivial) throw WrongFamily(tau);
  const auto& arcs = a.arcs();
  if (atom.kind == AtomKind::SSP) {
    // every interaction of the family keeps the value, so supports are unions of weak components
    Support comp(a.num_states(), 0);
    std::vector<int> stack{atom.a};
    comp[atom.a] = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      auto visit = [&](int t) {
        if (!comp[t]) {
          comp[t] = 1;
          stack.push_back(t);
        }
      };
      for (int i : a.arcs_out_of(s)) visit(arcs[i].dst);
      for (int i : a.arcs_into(s)) visit(arcs[i].src);
    }
    if (comp[atom.b]) return std::nullopt;
    return complete_region(a, tau, comp);
  }
  const int e = atom.a, s = atom.b;
  Support ends(a.num_states(), 0);
  for (int i : a.arcs_of_event(e)) ends[arcs[i].src] = ends[arcs[i].dst] = 1;
  if (tau.has(I::used) && !ends[s])
    if (auto r = with_target(a, tau, ends, e, I::used)) return r;
  if (tau.has(I::free)) {
    Support rest(a.num_states());
    for (int t = 0; t < a.num_states(); ++t) rest[t] = static_cast<std::uint8_t>(1 - ends[t]);
    if (rest[s])
      if (auto r = with_target(a, tau, rest, e, I::free)) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// Union-find with parity over states plus a constant-0 node; undo by history.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(n), size_(n, 1), parity_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<int, int> find(int x) const {
    int p = 0;
    while (parent_[x] != x) {
      p ^= parity_[x];
      x = parent_[x];
    }
    return {x, p};
  }

  bool unite(int x, int y, int p) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == p;
    if (size_[rx] < size_[ry]) std::swap(rx, ry);
    parent_[ry] = rx;
    parity_[ry] = static_cast<std::uint8_t>(px ^ py ^ p);
    size_[rx] += size_[ry];
    history_.push_back(ry);
    return true;
  }

  std::size_t mark() const { return history_.size(); }

  void rollback(std::size_t m) {
    while (history_.size() > m) {
      int ry = history_.back();
      history_.pop_back();
      size_[parent_[ry]] -= size_[ry];
      parent_[ry] = ry;
      parity_[ry] = 0;
    }
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::uint8_t> parity_;
  std::vector<int> history_;
};

bool apply_constraint(ParityUnionFind& uf, int zero, const Arc& x, I i) {
  switch (i) {
    case I::nop: return uf.unite(x.src, x.dst, 0);
    case I::swap: return uf.unite(x.src, x.dst, 1);
    case I::inp: return uf.unite(x.src, zero, 1) && uf.unite(x.dst, zero, 0);
    case I::out: return uf.unite(x.src, zero, 0) && uf.unite(x.dst, zero, 1);
    case I::set: return uf.unite(x.dst, zero, 1);
    case I::res: return uf.unite(x.dst, zero, 0);
    case I::used: return uf.unite(x.src, zero, 1) && uf.unite(x.dst, zero, 1);
    case I::free: return uf.unite(x.src, zero, 0) && uf.unite(x.dst, zero, 0);
  }
  return false;
}

class Search {
 public:
  Search(const TransitionSystem& a, NetType tau, const OracleBudget& budget, const std::optional<Atom>& atom)
      : a_(a), tau_(tau), budget_(budget), atom_(atom), uf_(a.num_states() + 1), zero_(a.num_states()),
        sig_(a.num_events(), I::nop), start_(std::chrono::steady_clock::now()) {
    order_events();
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exceeded() const { return exceeded_; }

  // Returns false if the root constraints are already contradictory.
  bool setup_root() {
    if (atom_ && atom_->kind == AtomKind::SSP) return uf_.unite(atom_->a, atom_->b, 1);
    return true;
  }

  // visit(sig, uf) returns true to stop.
  template <class Visit>
  bool dfs(std::size_t depth, Visit& visit) {
    if (depth == order_.size()) return visit(sig_, uf_);
    const int e = order_[depth];
    const bool target = atom_ && atom_->kind == AtomKind::ESSP && atom_->a == e;
    for (I i : choices_[depth]) {
      if (++nodes_ > budget_.max_nodes || ((nodes_ & 0xfff) == 0 && over_time())) {
        exceeded_ = true;
        return true;
      }
      const std::size_t m = uf_.mark();
      bool ok = !target || uf_.unite(atom_->b, zero_, undefined_at(i));
      for (int arc : a_.arcs_of_event(e)) {
        if (!ok) break;
        ok = apply_constraint(uf_, zero_, a_.arcs()[arc], i);
      }
      if (ok) {
        sig_[e] = i;
        if (dfs(depth + 1, visit)) return true;
      }
      uf_.rollback(m);
    }
    return false;
  }

  int zero() const { return zero_; }

 private:
  bool over_time() const {
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    return d.count() > budget_.max_seconds;
  }

  void order_events() {
    const int n = a_.num_states(), k = a_.num_events();
    std::vector<char> placed(k, 0), seen(n, 0);
    std::vector<int> queue;
    auto seed = [&](int s) {
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
    };
    auto place = [&](int e) {
      if (!placed[e]) {
        placed[e] = 1;
        order_.push_back(e);
      }
    };
    if (atom_ && atom_->kind == AtomKind::ESSP) {
      place(atom_->a);
      seed(atom_->b);
      for (int i : a_.arcs_of_event(atom_->a)) seed(a_.arcs()[i].src);
    } else if (atom_) {
      seed(atom_->a);
      seed(atom_->b);
    }
    seed(a_.initial());
    for (std::size_t qi = 0; qi < queue.size() || static_cast<int>(queue.size()) < n; ++qi) {
      if (qi == queue.size()) {
        for (int s = 0; s < n; ++s) seed(s);
        if (qi == queue.size()) break;
      }
      const int s = queue[qi];
      for (int i : a_.arcs_out_of(s)) {
        place(a_.arcs()[i].event);
        seed(a_.arcs()[i].dst);
      }
      for (int i : a_.arcs_into(s)) {
        place(a_.arcs()[i].event);
        seed(a_.arcs()[i].src);
      }
    }
    std::vector<int> unused;
    for (int e = 0; e < k; ++e)
      if (!placed[e]) unused.push_back(e);

    for (int e : order_) choices_.push_back(candidates(e, true));
    // events without arcs carry no constraint: fix them to their first choice
    for (int e : unused) {
      order_.push_back(e);
      auto c = candidates(e, false);
      if (!(atom_ && atom_->kind == AtomKind::ESSP && atom_->a == e) && !c.empty()) c.resize(1);
      choices_.push_back(c);
    }
  }

  std::vector<I> candidates(int e, bool) const {
    std::vector<I> out;
    if (atom_ && atom_->kind == AtomKind::ESSP && atom_->a == e) {
      for (I i : kInhibitors)
        if (tau_.has(i)) out.push_back(i);
    } else {
      for (I i : kOtherOrder)
        if (tau_.has(i)) out.push_back(i);
    }
    return out;
  }

  const TransitionSystem& a_;
  NetType tau_;
  OracleBudget budget_;
  std::optional<Atom> atom_;
  ParityUnionFind uf_;
  int zero_;
  std::vector<I> sig_;
  std::vector<int> order_;
  std::vector<std::vector<I>> choices_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Oracle::Oracle(const TransitionSystem& a, NetType tau, OracleBudget budget) : a_(a), tau_(tau), budget_(budget) {}

AtomResult Oracle::solve(const Atom& atom) const {
  AtomResult res;
  if (!tau_.has(I::nop)) throw WrongFamily(tau_);
  Search search(a_, tau_, budget_, atom);
  if (!search.setup_root()) return res;
  const int n = a_.num_states();
  auto visit = [&](const std::vector<I>& sig, const ParityUnionFind& uf) {
    Region r;
    r.sig = sig;
    r.sup.resize(n);
    auto [rz, pz] = uf.find(search.zero());
    for (int s = 0; s < n; ++s) {
      auto [rs, ps] = uf.find(s);
      r.sup[s] = static_cast<std::uint8_t>(rs == rz ? (ps ^ pz) : ps);
    }
    res.region = std::move(r);
    return true;
  };
  search.dfs(0, visit);
  res.nodes = search.nodes();
  if (search.exceeded()) {
    res.region.reset();
    res.verdict = Verdict::BudgetExceeded;
  } else {
    res.verdict = res.region ? Verdict::Solved : Verdict::Unsolvable;
  }
  return res;
}

Oracle::End Oracle::for_each_region(const std::function<bool(const Region&)>& visit_region,
                                    const std::optional<Atom>& atom, std::uint64_t* nodes) const {
  Search search(a_, tau_, budget_, atom);
  bool stopped = false;
  if (search.setup_root()) {
    const int n = a_.num_states();
    auto visit = [&](const std::vector<I>& sig, const ParityUnionFind& uf) {
      auto [rz, pz] = uf.find(search.zero());
      std::vector<int> roots;
      std::vector<std::pair<int, int>> where(n);
      for (int s = 0; s < n; ++s) {
        where[s] = uf.find(s);
        if (where[s].first != rz && std::find(roots.begin(), roots.end(), where[s].first) == roots.end())
          roots.push_back(where[s].first);
      }
      Region r;
      r.sig = sig;
      r.sup.resize(n);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << roots.size()); ++bits) {
        for (int s = 0; s < n; ++s) {
          auto [rs, ps] = where[s];
          int v = ps;
          if (rs == rz) {
            v ^= pz;
          } else {
            auto pos = std::find(roots.begin(), roots.end(), rs) - roots.begin();
            v ^= static_cast<int>((bits >> pos) & 1u);
          }
          r.sup[s] = static_cast<std::uint8_t>(v);
        }
        if (!visit_region(r)) {
          stopped = true;
          return true;
        }
      }
      return false;
    };
    search.dfs(0, visit);
  }
  if (nodes) *nodes = search.nodes();
  if (search.exceeded()) return End::BudgetExceeded;
  return stopped ? End::Stopped : End::Completed;
}

AtomResult solve_atom_oracle(const TransitionSystem& a, NetType tau, const Atom& atom, OracleBudget budget) {
  return Oracle(a, tau, budget).solve(atom);
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

class AtomSolver {
 public:
  AtomSolver(const TransitionSystem& a, NetType tau, Strategy strategy, OracleBudget budget)
      : a_(a), tau_(tau), family_(strategy == Strategy::Oracle ? PolyFamily::None : poly_family(tau)),
        oracle_(a, tau, budget) {
    if (family_ == PolyFamily::Swap) idx_ = build_parity_index(a);
  }

  AtomResult solve(const Atom& atom) const {
    AtomResult r;
    switch (family_) {
      case PolyFamily::Res: r.region = solve_atom_res_family(a_, tau_, atom); break;
      case PolyFamily::Set: r.region = solve_atom_set_family(a_, tau_, atom); break;
      case PolyFamily::Swap: r.region = solve_atom_gf2(a_, idx_, tau_, atom); break;
      case PolyFamily::Trivial: r.region = solve_atom_trivial(a_, tau_, atom); break;
      case PolyFamily::None: return oracle_.solve(atom);
    }
    r.verdict = r.region ? Verdict::Solved : Verdict::Unsolvable;
    return r;
  }

 private:
  const TransitionSystem& a_;
  NetType tau_;
  PolyFamily family_;
  ParityIndex idx_;
  Oracle oracle_;
};

}  // namespace

AtomResult solve_atom(const TransitionSystem& a, NetType tau, const Atom& atom, Strategy strategy,
                      OracleBudget budget) {
  return AtomSolver(a, tau, strategy, budget).solve(atom);
}

FeasibilityReport decide_feasibility(const TransitionSystem& a, NetType tau, const FeasibilityOptions& opts) {
  FeasibilityReport rep;
  if (!tau.has(I::nop)) {
    rep.out_of_scope = true;
    return rep;
  }
  rep.atoms = enumerate_atoms(a, !opts.essp_only, !opts.ssp_only);
  const std::size_t count = rep.atoms.size();
  std::vector<AtomResult> results(count);
  AtomSolver solver(a, tau, opts.strategy, opts.budget);

  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = solver.solve(rep.atoms[i]);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        for (std::size_t i = j; i < count; i += jobs) results[i] = solver.solve(rep.atoms[i]);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < count; ++i) {
    rep.verdicts.push_back(results[i].verdict);
    switch (results[i].verdict) {
      case Verdict::Solved: rep.regions.push_back(std::move(*results[i].region)); break;
      case Verdict::Unsolvable: rep.unsolved.push_back(rep.atoms[i]); break;
      case Verdict::BudgetExceeded: rep.exceeded.push_back(rep.atoms[i]); break;
    }
  }
  rep.budget_exceeded = !rep.exceeded.empty();
  rep.feasible = rep.unsolved.empty() && rep.exceeded.empty();
  return rep;
}

std::string serialize_region(const TransitionSystem& a, const Region& r) {
  std::ostringstream os;
  os << "region\n";
  for (int s = 0; s < a.num_states(); ++s) os << "sup " << a.state_name(s) << ' ' << int(r.sup[s]) << "\n";
  for (int e = 0; e < a.num_events(); ++e) os << "sig " << a.event_name(e) << ' ' << to_string(r.sig[e]) << "\n";
  return os.str();
}

Region parse_region(const TransitionSystem& a, std::string_view text) {
  std::unordered_map<std::string, int> sidx, eidx;
  for (int s = 0; s < a.num_states(); ++s) sidx.emplace(a.state_name(s), s);
  for (int e = 0; e < a.num_events(); ++e) eidx.emplace(a.event_name(e), e);
  Region r;
  r.sup.assign(a.num_states(), 2);
  std::vector<char> sig_set(a.num_events(), 0);
  r.sig.assign(a.num_events(), I::nop);
  bool header = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::istringstream is{std::string(line)};
    std::vector<std::string> t;
    for (std::string w; is >> w;) t.push_back(w);
    if (t.empty()) continue;
    if (t[0] == "region") {
      if (header) throw ParseError(lineno, "duplicate 'region' header");
      header = true;
    } else if (t[0] == "sup" && t.size() == 3) {
      auto it = sidx.find(t[1]);
      if (it == sidx.end()) throw ParseError(lineno, "unknown state '" + t[1] + "'");
      if (t[2] != "0" && t[2] != "1") throw ParseError(lineno, "support must be 0 or 1");
      if (r.sup[it->second] != 2) throw ParseError(lineno, "duplicate support for '" + t[1] + "'");
      r.sup[it->second] = t[2] == "1";
    } else if (t[0] == "sig" && t.size() == 3) {
      auto it = eidx.find(t[1]);
      if (it == eidx.end()) throw ParseError(lineno, "unknown event '" + t[1] + "'");
      auto i = parse_interaction(t[2]);
      if (!i) throw ParseError(lineno, "unknown interaction '" + t[2] + "'");
      if (sig_set[it->second]) throw ParseError(lineno, "duplicate signature for '" + t[1] + "'");
      sig_set[it->second] = 1;
      r.sig[it->second] = *i;
    } else {
      throw ParseError(lineno, "expected 'sup <state> <0|1>' or 'sig <event> <interaction>'");
    }
  }
  if (!header) throw ParseError(1, "missing 'region' header");
  for (int s = 0; s < a.num_states(); ++s)
    if (r.sup[s] == 2) throw ParseError(lineno, "no support given for '" + a.state_name(s) + "'");
  for (int e = 0; e < a.num_events(); ++e)
    if (!sig_set[e]) throw ParseError(lineno, "no signature given for '" + a.event_name(e) + "'");
  return r;
}

}  // namespace boolsynth
