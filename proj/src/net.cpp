#include <boolsynth/net.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace boolsynth {

int BooleanNet::add_place(const std::string& name, bool marked) {
  const std::size_t t = transitions.size();
  places.push_back(name);
  initial.push_back(marked ? 1 : 0);
  flow.resize(flow.size() + t, Interaction::nop);
  return num_places() - 1;
}

std::optional<Marking> fire(const BooleanNet& n, const Marking& m, int t) {
  Marking next(m.size());
  for (int p = 0; p < n.num_places(); ++p) {
    int v = apply_interaction(n.f(p, t), m[p]);
    if (v < 0) return std::nullopt;
    next[p] = static_cast<std::uint8_t>(v);
  }
  return next;
}

std::string marking_name(const BooleanNet& n, const Marking& m) {
  std::vector<const std::string*> in;
  for (int p = 0; p < n.num_places(); ++p)
    if (m[p]) in.push_back(&n.places[p]);
  std::sort(in.begin(), in.end(), [](auto* x, auto* y) { return *x < *y; });
  std::string out = "{";
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i) out += ',';
    out += *in[i];
  }
  return out + "}";
}

TransitionSystem state_graph(const BooleanNet& n, std::size_t cap) {
  auto key = [](const Marking& m) { return std::string(m.begin(), m.end()); };
  std::unordered_map<std::string, int> index;
  std::vector<Marking> markings{n.initial};
  index.emplace(key(n.initial), 0);
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < markings.size(); ++i) {
    for (int t = 0; t < n.num_transitions(); ++t) {
      auto next = fire(n, markings[i], t);
      if (!next) continue;
      auto [it, fresh] = index.emplace(key(*next), static_cast<int>(markings.size()));
      if (fresh) {
        if (markings.size() >= cap) throw CapExceeded(cap);
        markings.push_back(std::move(*next));
      }
      arcs.push_back({static_cast<int>(i), t, it->second});
    }
  }
  std::vector<std::string> names;
  names.reserve(markings.size());
  for (auto& m : markings) names.push_back(marking_name(n, m));
  return TransitionSystem(n.name, std::move(names), n.transitions, 0, std::move(arcs));
}

std::optional<std::vector<int>> check_isomorphic(const TransitionSystem& a, const TransitionSystem& b) {
  if (a.num_states() != b.num_states() || a.arcs().size() != b.arcs().size()) return std::nullopt;
  std::unordered_map<std::string, int> bev;
  for (int e = 0; e < b.num_events(); ++e) bev.emplace(b.event_name(e), e);
  std::vector<int> emap(a.num_events(), -1);
  for (int e = 0; e < a.num_events(); ++e) {
    auto it = bev.find(a.event_name(e));
    if (it != bev.end()) emap[e] = it->second;
  }
  std::vector<int> map(a.num_states(), -1), inverse(b.num_states(), -1);
  map[a.initial()] = b.initial();
  inverse[b.initial()] = a.initial();
  std::deque<int> queue{a.initial()};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    const int t = map[s];
    if (a.arcs_out_of(s).size() != b.arcs_out_of(t).size()) return std::nullopt;
    for (int arc : a.arcs_out_of(s)) {
      const Arc& x = a.arcs()[arc];
      if (emap[x.event] < 0) return std::nullopt;
      const int y = b.target(t, emap[x.event]);
      if (y < 0) return std::nullopt;
      if (map[x.dst] < 0) {
        if (inverse[y] >= 0) return std::nullopt;
        map[x.dst] = y;
        inverse[y] = x.dst;
        queue.push_back(x.dst);
      } else if (map[x.dst] != y) {
        return std::nullopt;
      }
    }
  }
  if (std::find(map.begin(), map.end(), -1) != map.end()) return std::nullopt;
  return map;
}

TypeTemplate type_template(NetType tau) {
  if (tau.empty()) throw std::invalid_argument("EmptyType");
  TypeTemplate t;
  for (auto i : tau.members())
    for (int b = 0; b < 2; ++b) {
      int v = apply_interaction(i, b);
      if (v >= 0) t.arcs.push_back({b, static_cast<int>(i), v});
    }
  return t;
}

std::string serialize_net(const BooleanNet& n) {
  std::ostringstream os;
  os << "net " << n.name << "\ntransitions";
  for (auto& t : n.transitions) os << ' ' << t;
  os << "\n";
  for (int p = 0; p < n.num_places(); ++p) {
    os << "place " << n.places[p] << " initial=" << int(n.initial[p]);
    for (int t = 0; t < n.num_transitions(); ++t)
      if (n.f(p, t) != Interaction::nop) os << ' ' << n.transitions[t] << '=' << to_string(n.f(p, t));
    os << "\n";
  }
  return os.str();
}

BooleanNet parse_net(std::string_view text) {
  BooleanNet n;
  bool header = false, have_transitions = false;
  std::unordered_map<std::string, int> tidx;
  std::unordered_map<std::string, int> pidx;
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
    if (t[0] == "net") {
      if (header || t.size() != 2) throw ParseError(lineno, "expected a single 'net <name>' header");
      header = true;
      n.name = t[1];
    } else if (t[0] == "transitions") {
      if (have_transitions) throw ParseError(lineno, "duplicate 'transitions' line");
      if (!n.places.empty()) throw ParseError(lineno, "'transitions' must precede places");
      have_transitions = true;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!tidx.emplace(t[i], static_cast<int>(n.transitions.size())).second)
          throw ParseError(lineno, "duplicate transition '" + t[i] + "'");
        n.transitions.push_back(t[i]);
      }
    } else if (t[0] == "place") {
      if (t.size() < 3 || t[2].rfind("initial=", 0) != 0) throw ParseError(lineno, "expected 'place <name> initial=<0|1> ...'");
      auto init = t[2].substr(8);
      if (init != "0" && init != "1") throw ParseError(lineno, "initial must be 0 or 1");
      if (!pidx.emplace(t[1], n.num_places()).second) throw ParseError(lineno, "duplicate place '" + t[1] + "'");
      int p = n.add_place(t[1], init == "1");
      for (std::size_t i = 3; i < t.size(); ++i) {
        auto eq = t[i].find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected <event>=<interaction>");
        auto ev = t[i].substr(0, eq);
        auto it = tidx.find(ev);
        if (it == tidx.end()) throw ParseError(lineno, "unknown transition '" + ev + "'");
        auto inter = parse_interaction(t[i].substr(eq + 1));
        if (!inter) throw ParseError(lineno, "unknown interaction '" + t[i].substr(eq + 1) + "'");
        n.f(p, it->second) = *inter;
      }
    } else {
      throw ParseError(lineno, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(1, "missing 'net' header");
  return n;
}

}  // namespace boolsynth
