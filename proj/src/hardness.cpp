#include <boolsynth/hardness.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace boolsynth {

using I = Interaction;

namespace {

std::string nm(std::string_view base, std::initializer_list<int> idx) {
  std::string out(base);
  for (int i : idx) out += "_" + std::to_string(i);
  return out;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- CNF

CnfInstance validate_cnf(const RawCnf& raw) {
  CnfInstance phi;
  std::unordered_map<std::string, int> index;
  std::vector<int> count;
  for (std::size_t c = 0; c < raw.clauses.size(); ++c) {
    const auto& cl = raw.clauses[c];
    if (cl.size() != 3)
      throw CnfError(CnfErrorKind::ClauseArity,
                     "ClauseArity(clause " + std::to_string(c) + " has " + std::to_string(cl.size()) + " variables)");
    std::array<int, 3> ids{};
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = index.emplace(cl[k], static_cast<int>(phi.variables.size()));
      if (fresh) {
        phi.variables.push_back(cl[k]);
        count.push_back(0);
      }
      ids[k] = it->second;
    }
    if (ids[0] == ids[1] || ids[0] == ids[2] || ids[1] == ids[2])
      throw CnfError(CnfErrorKind::DuplicateVarInClause, "DuplicateVarInClause(clause " + std::to_string(c) + ")");
    for (int v : ids) ++count[v];
    phi.clauses.push_back(ids);
  }
  for (std::size_t v = 0; v < count.size(); ++v)
    if (count[v] != 3)
      throw CnfError(CnfErrorKind::VariableArity,
                     "VariableArity(" + phi.variables[v] + ", " + std::to_string(count[v]) + ")");
  return phi;
}

RawCnf parse_raw_cnf(std::string_view text) {
  RawCnf raw;
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0] != "cnf" || tok.size() > 2) throw ParseError(line_no, "expected 'cnf' header");
      header = true;
      continue;
    }
    if (tok[0] != "clause") throw ParseError(line_no, "unknown keyword '" + tok[0] + "'");
    raw.clauses.emplace_back(tok.begin() + 1, tok.end());
  }
  if (!header) throw ParseError(line_no, "missing 'cnf' header");
  return raw;
}

CnfInstance parse_cnf(std::string_view text) { return validate_cnf(parse_raw_cnf(text)); }

std::string serialize_cnf(const CnfInstance& phi) {
  std::string out = "cnf\n";
  for (int c = 0; c < phi.num_clauses(); ++c)
    out += "clause " + phi.var(c, 0) + " " + phi.var(c, 1) + " " + phi.var(c, 2) + "\n";
  return out;
}

bool is_one_in_three_model(const CnfInstance& phi, const Model& m) {
  std::vector<uint8_t> in(phi.variables.size(), 0);
  for (int v : m) {
    if (v < 0 || v >= static_cast<int>(in.size())) return false;
    in[v] = 1;
  }
  for (auto& cl : phi.clauses)
    if (in[cl[0]] + in[cl[1]] + in[cl[2]] != 1) return false;
  return true;
}

std::optional<Model> one_in_three_bruteforce(const CnfInstance& phi) {
  const int n = static_cast<int>(phi.variables.size());
  if (n > 25) throw CnfError(CnfErrorKind::TooLarge, "TooLarge(" + std::to_string(n) + " variables)");
  std::vector<std::vector<int>> occ(n);
  for (int c = 0; c < phi.num_clauses(); ++c)
    for (int v : phi.clauses[c]) occ[v].push_back(c);
  std::vector<int> hits(phi.clauses.size(), 0);
  Model cur;
  std::optional<Model> found;
  // Preorder over increasing index lists visits subsets in lexicographic order.
  std::function<void(int)> dfs = [&](int next) {
    if (found) return;
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) {
      found = cur;
      return;
    }
    for (int v = next; v < n && !found; ++v) {
      bool ok = true;
      for (int c : occ[v]) ok = ok && hits[c] == 0;
      if (!ok) continue;
      for (int c : occ[v]) ++hits[c];
      cur.push_back(v);
      dfs(v + 1);
      cur.pop_back();
      for (int c : occ[v]) --hits[c];
    }
  };
  dfs(0);
  return found;
}

std::vector<std::string> model_names(const CnfInstance& phi, const Model& m) {
  std::vector<std::string> out;
  for (int v : m) out.push_back(phi.variables[v]);
  return out;
}

Model extract_model(const CnfInstance& phi, const TransitionSystem& a, const Region& r) {
  Model m;
  for (int v = 0; v < static_cast<int>(phi.variables.size()); ++v)
    if (auto e = a.find_event(phi.variables[v]); e && r.sig[*e] != I::nop) m.push_back(v);
  return m;
}

// ---------------------------------------------------------------- switches

std::vector<NetType> managed_types(Sigma s) {
  std::vector<NetType> out;
  auto with_subsets = [&](NetType base, NetType pool) {
    auto members = pool.members();
    for (unsigned mask = 0; mask < (1u << members.size()); ++mask) {
      NetType t = base;
      for (std::size_t i = 0; i < members.size(); ++i)
        if (mask >> i & 1u) t = t | NetType{members[i]};
      out.push_back(t);
    }
  };
  const NetType uf{I::used, I::free};
  switch (s) {
    case Sigma::S1: with_subsets({I::nop, I::inp, I::out}, uf); break;
    case Sigma::S2: with_subsets({I::nop, I::inp, I::set}, {I::out, I::res, I::used, I::free}); break;
    case Sigma::S3: with_subsets({I::nop, I::inp, I::res, I::swap}, uf); break;
    case Sigma::S4: with_subsets({I::nop, I::inp, I::set, I::swap}, {I::out, I::res, I::used, I::free}); break;
    case Sigma::S5: out.push_back({I::nop, I::set, I::swap, I::free}); break;
    case Sigma::S6: with_subsets({I::nop, I::set, I::swap, I::used}, {I::res, I::free}); break;
  }
  return out;
}

NetType representative_type(Sigma s) { return managed_types(s).front(); }

bool manages(Sigma s, NetType tau) {
  auto all = managed_types(s);
  return std::find(all.begin(), all.end(), tau) != all.end();
}

std::string to_string(Sigma s) { return "sigma" + std::to_string(static_cast<int>(s)); }

std::optional<Sigma> parse_sigma(std::string_view s) {
  for (int i = 1; i <= 6; ++i)
    if (s == "sigma" + std::to_string(i)) return static_cast<Sigma>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------- gadgets

TransitionSystem generator_gadget(const std::string& prefix, int j, const std::string& eta, const std::string& rho) {
  auto g = [&](int i) { return nm(prefix, {j, i}); };
  TsBuilder b(nm(prefix, {j}));
  b.initial(g(0)).arc(g(0), eta, g(1)).arc(g(0), "k", g(2)).arc(g(2), rho, g(3)).arc(g(1), "k", g(3));
  return b.build();
}

namespace {

bool is_swap_side(Sigma s) { return s == Sigma::S5 || s == Sigma::S6; }

struct Ops {
  I k, M, V, x;
  std::optional<I> q;
};

Ops ops(Sigma s) {
  switch (s) {
    case Sigma::S1: return {I::inp, I::inp, I::out, I::out, std::nullopt};
    case Sigma::S2: return {I::inp, I::inp, I::set, I::set, std::nullopt};
    case Sigma::S3: return {I::inp, I::swap, I::swap, I::res, std::nullopt};
    case Sigma::S4: return {I::inp, I::swap, I::swap, I::set, std::nullopt};
    case Sigma::S5: return {I::free, I::swap, I::swap, I::set, I::swap};
    case Sigma::S6: return {I::used, I::swap, I::swap, I::set, std::nullopt};
  }
  return {I::nop, I::nop, I::nop, I::nop, std::nullopt};
}

I op_n(Sigma s) {
  switch (s) {
    case Sigma::S1: return I::out;
    case Sigma::S2: return I::set;
    case Sigma::S3: return I::swap;
    default: return I::set;
  }
}

std::string helper(int var) { return nm("x", {var}); }

class Blanks {
 public:
  std::string next() { return "__blank" + std::to_string(n_++); }

 private:
  int n_ = 0;
};

CnfInstance placeholders(const CnfInstance& phi) {
  CnfInstance out = phi;
  for (std::size_t v = 0; v < out.variables.size(); ++v) out.variables[v] = "__var" + std::to_string(v);
  return out;
}

// A variable may not share its name with any event the construction emits
// besides the variables themselves.
void check_collisions(const CnfInstance& phi, const std::vector<std::string>& generated) {
  std::unordered_set<std::string> gen(generated.begin(), generated.end());
  for (auto& v : phi.variables)
    if (v.rfind("__", 0) == 0 || gen.count(v))
      throw CnfError(CnfErrorKind::NameCollision, "NameCollision(" + v + ")");
}

TsUnion key_union_basic(Sigma sigma, int m, Blanks& blank) {
  std::vector<TransitionSystem> parts;
  {
    TsBuilder h("H");
    h.initial(nm("h", {0, 0}));
    for (int j = 0; j < 6 * m; ++j) {
      std::vector<std::string> lab;
      if (j < 3 * m)
        lab = {"k", nm("z", {j}), nm("v", {j}), "k", nm("q", {j}), nm("z", {j})};
      else {
        int jj = j - 3 * m;
        lab = {"k", nm("w", {jj}), nm("p", {jj}), "k", nm("y", {jj}), nm("w", {jj})};
      }
      for (int i = 0; i < 6; ++i) h.arc(nm("h", {j, i}), lab[i], nm("h", {j, i + 1}));
      if (j + 1 < 6 * m) {
        h.arc(nm("h", {j, 6}), nm("r", {j}), nm("h", {j + 1, 0}));
        h.arc(nm("h", {j, 6}), nm("c", {j}), nm("h", {j + 1, 6}));
      }
    }
    parts.push_back(h.build());
  }
  for (int j = 0; j + 1 < 6 * m; ++j) parts.push_back(generator_gadget("gcc", j, nm("c", {j}), nm("c", {j})));

  auto f0 = [] {
    TsBuilder b("F0");
    b.initial("f_0_0").arc("f_0_0", "k", "f_0_1").arc("f_0_1", "n_0", "f_0_2").arc("f_0_2", "z_0", "f_0_3").arc(
        "f_0_3", "k", "f_0_4");
    return b.build();
  };
  auto qy_generators = [&] {
    for (int j = 0; j < 3 * m; ++j) parts.push_back(generator_gadget("gbq", j, blank.next(), nm("q", {j})));
    for (int j = 0; j < 3 * m; ++j) parts.push_back(generator_gadget("gby", j, blank.next(), nm("y", {j})));
  };
  switch (sigma) {
    case Sigma::S1:
    case Sigma::S2: {
      parts.push_back(f0());
      TsBuilder b("F1");
      b.initial("f_1_0").arc("f_1_0", "q_0", "f_1_1").arc("f_1_1", "k", "f_1_2");
      parts.push_back(b.build());
      break;
    }
    case Sigma::S3: {
      parts.push_back(f0());
      TsBuilder b("F2");
      b.initial("f_2_0").arc("f_2_0", "n_0", "f_2_1").arc("f_2_0", "k", "f_2_2").arc("f_2_2", blank.next(), "f_2_3")
          .arc("f_2_3", "k", "f_2_1");
      parts.push_back(b.build());
      qy_generators();
      break;
    }
    case Sigma::S4:
      parts.push_back(f0());
      parts.push_back(generator_gadget("gnb", 0, "n_0", blank.next()));
      qy_generators();
      break;
    default: break;
  }
  return make_union(std::move(parts));
}

TsUnion translator_union_basic(const CnfInstance& phi, Sigma sigma, Blanks& blank) {
  std::vector<TransitionSystem> parts;
  const int m = phi.num_clauses();
  const bool swapped = sigma == Sigma::S3;
  for (int i = 0; i < m; ++i)
    for (int al = 0; al < 3; ++al) {
      const int be = (al + 1) % 3, ga = (al + 2) % 3;
      auto t = [&](int s) { return nm("t", {i, al, s}); };
      std::string xi = nm(swapped ? "w" : "v", {3 * i + al});
      std::string th = nm(swapped ? "v" : "w", {3 * i + al});
      auto X = [&](int slot) { return phi.var(i, slot); };
      auto x = [&](int slot) { return helper(phi.clauses[i][slot]); };
      TsBuilder b(nm("T", {i, al}));
      b.initial(t(0)).arc(t(0), "k", t(1)).arc(t(1), xi, t(2)).arc(t(1), th, t(5));
      b.arc(t(2), X(al), t(3)).arc(t(3), X(be), t(4)).arc(t(4), X(ga), t(5));
      b.arc(t(3), x(al), t(2)).arc(t(4), x(be), t(3)).arc(t(5), x(ga), t(4));
      parts.push_back(b.build());
    }
  const int n = static_cast<int>(phi.variables.size());
  if (sigma == Sigma::S3)
    for (int j = 0; j < n; ++j) parts.push_back(generator_gadget("gbx", j, blank.next(), helper(j)));
  if (sigma == Sigma::S4)
    for (int j = 0; j < n; ++j) parts.push_back(generator_gadget("gxb", j, helper(j), blank.next()));
  return make_union(std::move(parts));
}

// A chain of forward-backward arcs over prefix_0..prefix_n, closed by a
// blank pair into the initial state prefix_n.
TransitionSystem fb_chain(const std::string& name, const std::string& prefix, const std::vector<std::string>& labels,
                          Blanks& blank) {
  TsBuilder b(name);
  const int n = static_cast<int>(labels.size()) + 1;
  auto s = [&](int i) { return prefix + "_" + std::to_string(i); };
  b.initial(s(n));
  for (int i = 0; i + 1 < n; ++i) b.both(s(i), labels[i], s(i + 1));
  b.both(s(n - 1), blank.next(), s(n));
  return b.build();
}

// D_j and G_j: k, e, z (half-open), e, f, k, blank.
TransitionSystem z_gadget(const std::string& name, const std::string& prefix, const std::string& e,
                          const std::string& f, Blanks& blank) {
  TsBuilder b(name);
  auto s = [&](int i) { return prefix + "_" + std::to_string(i); };
  b.initial(s(8));
  b.both(s(0), "k", s(1)).both(s(1), e, s(2)).both(s(2), "zp", s(3)).arc(s(4), "zp", s(3));
  b.both(s(4), e, s(5)).both(s(5), f, s(6)).both(s(6), "k", s(7)).both(s(7), blank.next(), s(8));
  return b.build();
}

TsUnion key_union_swap(int m, Blanks& blank) {
  std::vector<TransitionSystem> parts;
  for (int j = 0; j < 3 * m; ++j)
    parts.push_back(fb_chain(nm("Hp", {j}), nm("hp", {j}), {"k", "mp", nm("v", {j}), "k"}, blank));
  for (int j = 0; j < 18 * m; ++j)
    parts.push_back(z_gadget(nm("D", {j}), nm("d", {j}), nm("p", {j}), nm("a", {j}), blank));
  for (int j = 0; j < 3 * m; ++j)
    parts.push_back(z_gadget(nm("G", {j}), nm("g", {j}), nm("y", {j}), nm("w", {j}), blank));
  parts.push_back(fb_chain("Fp0", "fp_0", {"k", "mp", "q_0", "k", "mp", "q_1", "k"}, blank));
  parts.push_back(fb_chain("Fp1", "fp_1", {"k", "q_2", "q_3", "k"}, blank));
  parts.push_back(fb_chain("Fp2", "fp_2", {"k", "q_2", "q_0", "zp", "q_1", "zp", "q_3", "k"}, blank));
  return make_union(std::move(parts));
}

TsUnion translator_union_swap(const CnfInstance& phi, Sigma sigma, Blanks& blank) {
  std::vector<TransitionSystem> parts;
  const int m = phi.num_clauses();
  const bool swapped = sigma == Sigma::S6;
  for (int i = 0; i < m; ++i)
    for (int al = 0; al < 3; ++al) {
      const int be = (al + 1) % 3, ga = (al + 2) % 3;
      auto t = [&](int s) { return nm("tp", {i, al, s}); };
      auto a = [&](int j) { return nm("a", {18 * i + 6 * al + j}); };
      auto X = [&](int slot) { return phi.var(i, slot); };
      auto x = [&](int slot) { return helper(phi.clauses[i][slot]); };
      std::string xi = nm(swapped ? "w" : "v", {3 * i + al});
      std::string th = nm(swapped ? "v" : "w", {3 * i + al});
      const std::string start = nm("tp", {i, al}) + "_s";
      TsBuilder b(nm("Tp", {i, al}));
      b.initial(start).both(start, blank.next(), t(0)).both(t(0), "k", t(1)).both(t(1), xi, t(2)).both(t(1), th, t(11));
      const int order[3] = {al, be, ga};
      for (int r = 0; r < 3; ++r) {
        const int base = 2 + 3 * r;  // 2, 5, 8
        b.both(t(base), a(r), t(base + 1)).both(t(base + 1), X(order[r]), t(base + 2)).both(t(base + 2), a(r),
                                                                                            t(base + 3));
        const int low = 12 + 3 * r;  // 12, 15, 18
        b.both(t(base), a(3 + r), t(low)).both(t(low), x(order[r]), t(low + 1)).arc(t(low + 2), x(order[r]),
                                                                                     t(low + 1));
        b.both(t(low + 2), a(3 + r), t(base + 3));
      }
      parts.push_back(b.build());
    }
  const int n = static_cast<int>(phi.variables.size());
  for (int j = 0; j < n; ++j) {
    if (sigma == Sigma::S6)
      parts.push_back(fb_chain(nm("B", {j}), nm("b", {j}), {"k", helper(j), "k"}, blank));
    else
      parts.push_back(fb_chain(nm("Bp", {j}), nm("bp", {j}), {"k", "q_2", helper(j), "q_3", "k"}, blank));
  }
  return make_union(std::move(parts));
}

}  // namespace

ReductionOutput build_reduction(const CnfInstance& phi, Sigma sigma, std::optional<NetType> tau) {
  NetType t = tau.value_or(representative_type(sigma));
  if (!manages(sigma, t)) throw WrongFamily(t);
  auto assemble = [&](const CnfInstance& f) {
    Blanks blank;
    const int m = f.num_clauses();
    TsUnion key = is_swap_side(sigma) ? key_union_swap(m, blank) : key_union_basic(sigma, m, blank);
    TsUnion tr = is_swap_side(sigma) ? translator_union_swap(f, sigma, blank)
                                     : translator_union_basic(f, sigma, blank);
    return std::pair{std::move(key), std::move(tr)};
  };
  {
    auto [k, t] = assemble(placeholders(phi));
    check_collisions(phi, flatten({k, t}).events());
  }
  auto [key, tr] = assemble(phi);
  TsUnion all = flatten({key, tr});
  TransitionSystem joined = join(all, t, "reduction_" + to_string(sigma));
  return ReductionOutput{sigma,        t, std::move(key), std::move(tr), std::move(all), std::move(joined), "k",
                         is_swap_side(sigma) ? "hp_0_2" : "h_0_6"};
}

TransitionSystem union_as_ts(const TsUnion& u, const std::string& name) {
  std::vector<std::string> states = u.states(), events = u.events();
  std::unordered_map<std::string, int> eidx;
  for (int i = 0; i < static_cast<int>(events.size()); ++i) eidx.emplace(events[i], i);
  std::vector<Arc> arcs;
  int offset = 0;
  for (auto& c : u.components) {
    for (auto& x : c.arcs()) arcs.push_back({offset + x.src, eidx[c.event_name(x.event)], offset + x.dst});
    offset += c.num_states();
  }
  int initial = u.components.empty() ? 0 : u.components.front().initial();
  return TransitionSystem(name, std::move(states), std::move(events), initial, std::move(arcs));
}

// ---------------------------------------------------------------- witnesses

namespace {

struct Plan {
  std::unordered_set<std::string> sup;
  std::map<std::string, I> fixed;
};

void fix(Plan& p, const std::string& e, I i) {
  auto [it, fresh] = p.fixed.emplace(e, i);
  if (!fresh && it->second != i) throw InterfaceMismatch("conflicting signatures for " + e);
}

std::vector<int> selectors(const CnfInstance& phi, const Model& model) {
  if (!is_one_in_three_model(phi, model)) throw CnfError(CnfErrorKind::NotAModel, "NotAModel");
  std::set<int> in(model.begin(), model.end());
  std::vector<int> alpha;
  for (auto& cl : phi.clauses)
    for (int slot = 0; slot < 3; ++slot)
      if (in.count(cl[slot])) alpha.push_back(slot);
  return alpha;
}

Plan indicator_plan(const CnfInstance& phi, const ReductionOutput& red, const Model& model) {
  const std::vector<int> alpha = selectors(phi, model);
  const Sigma s = red.sigma;
  const Ops op = ops(s);
  Plan p;
  const int m = phi.num_clauses();
  const int n = static_cast<int>(phi.variables.size());
  for (int i = 0; i < m; ++i) {
    const int al = alpha[i], be = (al + 1) % 3, ga = (al + 2) % 3;
    if (!is_swap_side(s)) {
      auto t = [&](int a, int st) { return nm("t", {i, a, st}); };
      for (int a = 0; a < 3; ++a) p.sup.insert(t(a, 0));
      std::vector<std::string> s1;
      if (s == Sigma::S3)
        s1 = {t(al, 3), t(al, 4), t(al, 5), t(be, 5), t(ga, 4), t(ga, 5)};
      else
        s1 = {t(al, 2), t(be, 2), t(be, 3), t(be, 4), t(ga, 2), t(ga, 3)};
      p.sup.insert(s1.begin(), s1.end());
    } else {
      auto t = [&](int a, int st) { return nm("tp", {i, a, st}); };
      if (s == Sigma::S6)
        for (int a = 0; a < 3; ++a) p.sup.insert({t(a, 0), t(a, 1)});
      for (int st : {2, 3, 12, 13}) p.sup.insert(t(al, st));
      for (int st = 2; st <= 9; ++st) p.sup.insert(t(be, st));
      for (int st = 12; st <= 19; ++st) p.sup.insert(t(be, st));
      for (int st = 2; st <= 6; ++st) p.sup.insert(t(ga, st));
      for (int st = 12; st <= 16; ++st) p.sup.insert(t(ga, st));
    }
  }
  for (int j = 0; j < n; ++j) {
    switch (s) {
      case Sigma::S3: p.sup.insert({nm("gbx", {j, 0}), nm("gbx", {j, 1})}); break;
      case Sigma::S4: p.sup.insert({nm("gxb", {j, 0}), nm("gxb", {j, 1})}); break;
      case Sigma::S5: p.sup.insert({nm("bp", {j, 2}), nm("bp", {j, 3})}); break;
      case Sigma::S6:
        for (int st = 0; st <= 4; ++st) p.sup.insert(nm("b", {j, st}));
        break;
      default: break;
    }
  }
  fix(p, "k", op.k);
  for (int j = 0; j < 3 * m; ++j) fix(p, nm("v", {j}), op.V);
  for (int v : model) {
    fix(p, phi.variables[v], op.M);
    fix(p, helper(v), op.x);
  }
  if (op.q) {
    fix(p, "q_2", *op.q);
    fix(p, "q_3", *op.q);
  }
  return p;
}

Plan key_plan(const ReductionOutput& red) {
  const Sigma s = red.sigma;
  Plan p;
  TransitionSystem k = union_as_ts(red.key_union);
  auto add_if = [&](const std::string& st) {
    if (k.find_state(st)) p.sup.insert(st);
  };
  // m is recovered from the head's size
  if (!is_swap_side(s)) {
    const int rows = static_cast<int>(red.key_union.components.front().num_states()) / 7;
    const int m = rows / 6;
    for (int j = 0; j < rows; ++j) {
      add_if(nm("h", {j, 0}));
      add_if(nm("h", {j, 3}));
    }
    for (int j = 0; j < 3 * m; ++j)
      for (int st : {0, 1}) {
        add_if(nm("gbq", {j, st}));
        add_if(nm("gby", {j, st}));
      }
    for (int j = 0; j + 1 < rows; ++j)
      for (int st : {0, 1}) add_if(nm("gcc", {j, st}));
    for (auto st : {"gnb_0_0", "gnb_0_1", "f_0_0", "f_0_2", "f_0_3", "f_1_0", "f_1_1", "f_2_0", "f_2_3"}) add_if(st);
    fix(p, "k", I::inp);
    for (int j = 0; j < 3 * m; ++j) fix(p, nm("v", {j}), ops(s).V);
    fix(p, "n_0", op_n(s));
    return p;
  }
  std::unordered_set<std::string> s5;
  int hp = 0, dj = 0, gj = 0;
  for (auto& c : red.key_union.components) {
    const std::string& n = c.name();
    if (n.rfind("Hp_", 0) == 0) ++hp;
    if (n.rfind("D_", 0) == 0) ++dj;
    if (n.rfind("G_", 0) == 0) ++gj;
  }
  for (int j = 0; j < hp; ++j) s5.insert({nm("hp", {j, 2}), nm("hp", {j, 5})});
  for (auto st : {"fp_0_2", "fp_0_5", "fp_0_8", "fp_1_2", "fp_1_5", "fp_2_2", "fp_2_5", "fp_2_6", "fp_2_9"})
    s5.insert(st);
  for (int j = 0; j < dj; ++j)
    for (int st : {2, 3, 4, 8}) s5.insert(nm("d", {j, st}));
  for (int j = 0; j < gj; ++j)
    for (int st : {2, 3, 4, 8}) s5.insert(nm("g", {j, st}));
  for (auto& st : k.state_names())
    if (s5.count(st) != (s == Sigma::S6 ? 1u : 0u)) p.sup.insert(st);
  fix(p, "k", ops(s).k);
  for (int j = 0; j < hp; ++j) fix(p, nm("v", {j}), I::swap);
  for (auto e : {"mp", "q_0", "q_1", "q_2", "q_3"}) fix(p, e, I::swap);
  for (int j = 0; j < dj; ++j) fix(p, nm("p", {j}), I::swap);
  for (int j = 0; j < gj; ++j) fix(p, nm("y", {j}), I::swap);
  return p;
}

Region realize(const TransitionSystem& a, NetType tau, const Plan& p, const std::string& what) {
  Support sup(a.num_states(), 0);
  for (int s = 0; s < a.num_states(); ++s) sup[s] = p.sup.count(a.state_name(s)) ? 1 : 0;
  std::vector<std::optional<I>> fixed(a.num_events());
  for (int e = 0; e < a.num_events(); ++e)
    if (auto it = p.fixed.find(a.event_name(e)); it != p.fixed.end()) fixed[e] = it->second;
  auto r = complete_region(a, tau, sup, -1, fixed);
  if (!r) throw InterfaceMismatch(what + ": some event has no consistent signature");
  if (auto v = validate_region(a, tau, *r)) throw InterfaceMismatch(what + ": " + describe_violation(a, *v));
  return *r;
}

}  // namespace

Region construct_indicator_region(const CnfInstance& phi, const ReductionOutput& red, const Model& m) {
  return realize(union_as_ts(red.translator_union), red.tau, indicator_plan(phi, red, m), "indicator region");
}

Region construct_key_region(const ReductionOutput& red) {
  return realize(union_as_ts(red.key_union), red.tau, key_plan(red), "key region");
}

Region extend_to_join(const TsUnion& u, NetType tau, const TransitionSystem& joined, const Region& r,
                      const std::string& anchor) {
  TransitionSystem flat = union_as_ts(u);
  auto kind = join_kind(tau);
  if (!kind) throw TsError(TsErrorKind::JoinUndefined, "JoinUndefined({" + format_type(tau) + "})");
  auto a = flat.find_state(anchor);
  if (!a) throw InterfaceMismatch("unknown anchor state " + anchor);
  const uint8_t base = r.sup[*a];
  I enter = I::swap, exit = I::swap;
  if (*kind == JoinKind::Basic) {
    exit = I::inp;
    for (I i : {I::out, I::set, I::swap})
      if (tau.has(i)) {
        enter = i;
        break;
      }
  }
  Region out;
  out.sup.assign(joined.num_states(), base);
  out.sig.assign(joined.num_events(), I::nop);
  for (int s = 0; s < flat.num_states(); ++s) out.sup[*joined.find_state(flat.state_name(s))] = r.sup[s];
  for (int e = 0; e < flat.num_events(); ++e) out.sig[*joined.find_event(flat.event_name(e))] = r.sig[e];
  int offset = 0;
  for (std::size_t i = 0; i < u.components.size(); ++i) {
    const uint8_t init = r.sup[offset + u.components[i].initial()];
    offset += u.components[i].num_states();
    const int odot = *joined.find_event(connector_odot(static_cast<int>(i)));
    out.sig[odot] = init == base ? I::nop : (init > base ? enter : exit);
  }
  return out;
}

Region combine_witness(const CnfInstance& phi, const ReductionOutput& red, const Model& m) {
  Plan ind = indicator_plan(phi, red, m);
  Plan key = key_plan(red);
  // each part must stand on its own
  construct_indicator_region(phi, red, m);
  construct_key_region(red);
  Plan both = key;
  both.sup.insert(ind.sup.begin(), ind.sup.end());
  for (auto& [e, i] : ind.fixed) fix(both, e, i);
  TransitionSystem flat = union_as_ts(red.union_);
  Region r = realize(flat, red.tau, both, "combined region");
  Region j = extend_to_join(red.union_, red.tau, red.joined, r, red.key_state);
  if (auto v = validate_region(red.joined, red.tau, j))
    throw InterfaceMismatch("joined region: " + describe_violation(red.joined, *v));
  return j;
}

// ---------------------------------------------------------------- second family

namespace {

// Arcs of one clause compartment: (source, slot, target) over t_i_0..8.
constexpr std::array<std::array<int, 3>, 12> kClauseArcs{{
    {0, 0, 1}, {0, 2, 3}, {0, 1, 7}, {1, 1, 2}, {1, 2, 4}, {2, 2, 5},
    {3, 0, 4}, {3, 1, 6}, {4, 1, 5}, {6, 0, 5}, {7, 0, 2}, {7, 2, 6},
}};

}  // namespace

bool theorem2_class(NetType tau) {
  const NetType a{I::nop, I::inp, I::free}, b{I::nop, I::inp, I::used, I::free};
  if (tau == a || tau == b || tau == mirror_type(a) || tau == mirror_type(b)) return true;
  const NetType sr{I::nop, I::set, I::res};
  return tau.contains(sr) && NetType{I::nop, I::set, I::res, I::used, I::free}.contains(tau) &&
         tau.intersects({I::used, I::free});
}

namespace {

struct RawArc {
  std::string src, ev, dst;
};

std::vector<RawArc> theorem2_arcs(const CnfInstance& phi, T2Variant variant) {
  const int m = phi.num_clauses();
  std::vector<RawArc> arcs;
  auto t = [](int i, int j) { return nm("t", {i, j}); };
  arcs.push_back({"s0", "k", "s1"});
  arcs.push_back({"s0", "h", "q"});
  for (int i = 0; i < m; ++i) {
    arcs.push_back({"s0", nm("r", {i}), t(i, 0)});
    arcs.push_back({"s1", nm("r", {i}), t(i, 8)});
    arcs.push_back({"q", nm("h", {i}), t(i, 5)});
    arcs.push_back({t(i, 0), "k", t(i, 8)});
    for (auto [src, slot, dst] : kClauseArcs) arcs.push_back({t(i, src), phi.var(i, slot), t(i, dst)});
  }
  if (variant != T2Variant::Basic) {
    for (auto [src, ev, dst] : std::initializer_list<std::array<const char*, 3>>{{"m_0", "k", "m_1"},
                                                                                 {"m_0", "c", "m_3"},
                                                                                 {"m_0", "u", "m_4"},
                                                                                 {"m_1", "v", "m_2"},
                                                                                 {"m_3", "k", "m_2"},
                                                                                 {"m_3", "h", "m_4"},
                                                                                 {"s0", "a", "m_0"}})
      arcs.push_back({src, ev, dst});
    for (int i = 0; i < m; ++i) {
      auto p = [&](int j) { return nm("p", {i, j}); };
      arcs.push_back({p(0), "v", p(1)});
      arcs.push_back({p(0), nm("h", {i}), p(3)});
      arcs.push_back({p(1), nm("b", {i}), p(2)});
      arcs.push_back({p(2), "u", p(3)});
      arcs.push_back({"s0", nm("a", {i}), p(0)});
      for (auto [src, slot, dst] : kClauseArcs)
        arcs.push_back({t(i, dst), nm("x", {phi.clauses[i][slot]}), t(i, src)});
    }
  }
  if (variant == T2Variant::Cross) {
    const std::size_t n = arcs.size();
    std::set<std::pair<std::string, std::string>> loops;
    for (std::size_t i = 0; i < n; ++i)
      if (loops.insert({arcs[i].dst, arcs[i].ev}).second) arcs.push_back({arcs[i].dst, arcs[i].ev, arcs[i].dst});
  }
  return arcs;
}

}  // namespace

T2Output build_theorem2_variant(const CnfInstance& phi, T2Variant variant) {
  std::vector<std::string> generated;
  for (auto& x : theorem2_arcs(placeholders(phi), variant))
    if (x.ev.rfind("__var", 0) != 0) generated.push_back(x.ev);
  check_collisions(phi, generated);
  auto arcs = theorem2_arcs(phi, variant);
  const char* names[] = {"A_phi", "A_plus_phi", "A_cross_phi"};
  TsBuilder b(names[static_cast<int>(variant)]);
  b.initial("s0").state("s0").state("s1").state("q");
  for (auto& x : arcs) b.arc(x.src, x.ev, x.dst);
  NetType tau = variant == T2Variant::Basic ? NetType{I::nop, I::inp, I::free}
                                            : NetType{I::nop, I::set, I::res, I::used};
  return T2Output{b.build(), variant, tau, false};
}

T2Output build_theorem2_ts(const CnfInstance& phi, NetType tau) {
  if (!theorem2_class(tau)) throw WrongFamily(tau);
  const bool inp_family = tau.has(I::inp) || tau.has(I::out);
  T2Output out = build_theorem2_variant(phi, inp_family ? T2Variant::Basic : T2Variant::Cross);
  out.tau = tau;
  out.mirrored = inp_family && tau.has(I::out);
  return out;
}

Region theorem2_witness(const CnfInstance& phi, const T2Output& t2, const Model& model) {
  if (!is_one_in_three_model(phi, model)) throw CnfError(CnfErrorKind::NotAModel, "NotAModel");
  if (t2.variant == T2Variant::Plus) throw WrongFamily(t2.tau);
  const TransitionSystem& a = t2.ts;
  const bool cross = t2.variant == T2Variant::Cross;
  // the witness is built for the used/inp side and mirrored otherwise
  NetType tau = t2.tau;
  bool mirror = cross ? !tau.has(I::used) : t2.mirrored;
  if (mirror) tau = mirror_type(tau);

  std::set<int> in(model.begin(), model.end());
  Plan p;
  p.sup.insert("s0");
  for (int i = 0; i < phi.num_clauses(); ++i)
    for (auto [src, slot, dst] : kClauseArcs)
      if (in.count(phi.clauses[i][slot])) p.sup.insert(nm("t", {i, src}));
  if (!cross) {
    p.fixed["k"] = I::inp;
    for (int v : model) p.fixed[phi.variables[v]] = I::inp;
  } else {
    p.sup.insert("s1");
    for (int i = 0; i < phi.num_clauses(); ++i) p.sup.insert(nm("t", {i, 8}));
    for (int j = 0; j < 4; ++j) p.sup.insert(nm("m", {j}));
    p.fixed["k"] = I::used;
    for (int v : model) {
      p.fixed[phi.variables[v]] = I::res;
      p.fixed[nm("x", {v})] = I::set;
    }
  }
  Region r = realize(a, tau, p, "key region");
  return mirror ? mirror_region(r) : r;
}

}  // namespace boolsynth
