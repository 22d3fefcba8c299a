#include <boolsynth/ts.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <tuple>
#include <set>
#include <sstream>
#include <unordered_set>

namespace boolsynth {

TransitionSystem::TransitionSystem(std::string name, std::vector<std::string> states,
                                   std::vector<std::string> events, int initial, std::vector<Arc> arcs)
    : name_(std::move(name)), states_(std::move(states)), events_(std::move(events)), initial_(initial),
      arcs_(std::move(arcs)) {
  const int n = num_states(), k = num_events();
  if (n == 0 || initial_ < 0 || initial_ >= n) throw TsError(TsErrorKind::UnknownInitial, "initial state out of range");
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
    return std::tie(x.src, x.event, x.dst) < std::tie(y.src, y.event, y.dst);
  });
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  succ_.assign(static_cast<std::size_t>(n) * k, -1);
  by_event_.assign(k, {});
  in_.assign(n, {});
  out_.assign(n, {});
  for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
    const Arc& arc = arcs_[i];
    if (arc.src < 0 || arc.src >= n || arc.dst < 0 || arc.dst >= n || arc.event < 0 || arc.event >= k)
      throw std::out_of_range("arc index out of range");
    int& slot = succ_[static_cast<std::size_t>(arc.src) * k + arc.event];
    if (slot >= 0)
      throw TsError(TsErrorKind::NonDeterministic,
                    "non-deterministic: state " + states_[arc.src] + " has two " + events_[arc.event] + "-arcs");
    slot = arc.dst;
    by_event_[arc.event].push_back(i);
    out_[arc.src].push_back(i);
    in_[arc.dst].push_back(i);
  }
}

std::optional<int> TransitionSystem::find_state(std::string_view n) const {
  for (int i = 0; i < num_states(); ++i)
    if (states_[i] == n) return i;
  return std::nullopt;
}

std::optional<int> TransitionSystem::find_event(std::string_view n) const {
  for (int i = 0; i < num_events(); ++i)
    if (events_[i] == n) return i;
  return std::nullopt;
}

bool TransitionSystem::operator==(const TransitionSystem& o) const {
  return name_ == o.name_ && states_ == o.states_ && events_ == o.events_ && initial_ == o.initial_ &&
         arcs_ == o.arcs_;
}

std::string TsViolation::describe() const {
  switch (kind) {
    case TsErrorKind::NonDeterministic: return "NonDeterministic(" + state + "," + event + ")";
    case TsErrorKind::Unreachable: return "Unreachable(" + state + ")";
    case TsErrorKind::UnknownInitial: return "UnknownInitial" + (state.empty() ? "" : "(" + state + ")");
    default: return "invalid";
  }
}

TsValidation validate_ts(const RawTs& raw) {
  TsValidation out;
  std::vector<std::string> states, events;
  std::unordered_map<std::string, int> sidx, eidx;
  auto intern = [](std::vector<std::string>& v, std::unordered_map<std::string, int>& m, const std::string& s) {
    auto [it, fresh] = m.emplace(s, static_cast<int>(v.size()));
    if (fresh) v.push_back(s);
    return it->second;
  };
  for (auto& s : raw.declared_states) intern(states, sidx, s);
  for (auto& e : raw.declared_events) intern(events, eidx, e);
  std::vector<Arc> arcs;
  arcs.reserve(raw.arcs.size());
  for (auto& a : raw.arcs) {
    int s = intern(states, sidx, a.src);
    int e = intern(events, eidx, a.event);
    int d = intern(states, sidx, a.dst);
    arcs.push_back({s, e, d});
  }
  if (!raw.initial) {
    out.violations.push_back({TsErrorKind::UnknownInitial, "", ""});
    return out;
  }
  if (states.empty()) intern(states, sidx, *raw.initial);
  auto it = sidx.find(*raw.initial);
  if (it == sidx.end()) {
    out.violations.push_back({TsErrorKind::UnknownInitial, *raw.initial, ""});
    return out;
  }
  const int init = it->second;

  std::map<std::pair<int, int>, int> seen;
  std::set<std::pair<int, int>> reported;
  for (auto& a : arcs) {
    auto [pos, fresh] = seen.emplace(std::make_pair(a.src, a.event), a.dst);
    if (!fresh && pos->second != a.dst && reported.insert({a.src, a.event}).second)
      out.violations.push_back({TsErrorKind::NonDeterministic, states[a.src], events[a.event]});
  }

  std::vector<std::vector<int>> adj(states.size());
  for (auto& a : arcs) adj[a.src].push_back(a.dst);
  std::vector<char> seen_state(states.size(), 0);
  std::deque<int> queue{init};
  seen_state[init] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int d : adj[s])
      if (!seen_state[d]) {
        seen_state[d] = 1;
        queue.push_back(d);
      }
  }
  for (std::size_t s = 0; s < states.size(); ++s)
    if (!seen_state[s]) out.violations.push_back({TsErrorKind::Unreachable, states[s], ""});

  if (out.violations.empty())
    out.ts.emplace(raw.name, std::move(states), std::move(events), init, std::move(arcs));
  return out;
}

TransitionSystem build_ts(const RawTs& raw) {
  auto v = validate_ts(raw);
  if (!v.violations.empty()) {
    std::string msg;
    for (auto& x : v.violations) msg += (msg.empty() ? "" : " ") + x.describe();
    throw TsError(v.violations.front().kind, msg);
  }
  return std::move(*v.ts);
}

TsBuilder& TsBuilder::initial(const std::string& s) {
  raw_.initial = s;
  return *this;
}
TsBuilder& TsBuilder::state(const std::string& s) {
  raw_.declared_states.push_back(s);
  return *this;
}
TsBuilder& TsBuilder::event(const std::string& e) {
  raw_.declared_events.push_back(e);
  return *this;
}
TsBuilder& TsBuilder::arc(const std::string& src, const std::string& event, const std::string& dst) {
  raw_.arcs.push_back({src, event, dst});
  return *this;
}
TsBuilder& TsBuilder::both(const std::string& a, const std::string& event, const std::string& b) {
  raw_.arcs.push_back({a, event, b});
  raw_.arcs.push_back({b, event, a});
  return *this;
}

ModestyReport modesty(const TransitionSystem& a) {
  ModestyReport r;
  r.loop_free = std::none_of(a.arcs().begin(), a.arcs().end(), [](const Arc& x) { return x.src == x.dst; });
  std::set<std::pair<int, int>> pairs;
  r.simple = true;
  for (auto& x : a.arcs())
    if (!pairs.insert({x.src, x.dst}).second) r.simple = false;
  r.reduced = true;
  for (int e = 0; e < a.num_events(); ++e)
    if (a.arcs_of_event(e).empty()) r.reduced = false;
  r.modest = r.simple && r.loop_free && r.reduced;
  return r;
}

std::vector<int> bfs_order(const TransitionSystem& a) {
  std::vector<int> order{a.initial()};
  std::vector<char> seen(a.num_states(), 0);
  seen[a.initial()] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int arc : a.arcs_out_of(order[i])) {
      int d = a.arcs()[arc].dst;
      if (!seen[d]) {
        seen[d] = 1;
        order.push_back(d);
      }
    }
  return order;
}

std::vector<std::string> TsUnion::states() const {
  std::vector<std::string> out;
  for (auto& c : components) out.insert(out.end(), c.state_names().begin(), c.state_names().end());
  return out;
}

std::vector<std::string> TsUnion::events() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto& c : components)
    for (auto& e : c.event_names())
      if (seen.insert(e).second) out.push_back(e);
  return out;
}

TsUnion make_union(std::vector<TransitionSystem> components) {
  std::unordered_set<std::string> seen;
  for (auto& c : components)
    for (auto& s : c.state_names())
      if (!seen.insert(s).second) throw TsError(TsErrorKind::StateCollision, "StateCollision(" + s + ")");
  return TsUnion{std::move(components)};
}

TsUnion flatten(const std::vector<TsUnion>& parts) {
  std::vector<TransitionSystem> all;
  for (auto& p : parts) all.insert(all.end(), p.components.begin(), p.components.end());
  return make_union(std::move(all));
}

std::optional<JoinKind> join_kind(NetType tau) {
  if (tau.has(Interaction::inp) && tau.intersects(kEnter)) return JoinKind::Basic;
  if (tau.has(Interaction::swap) && tau.intersects(NetType{Interaction::used, Interaction::free}))
    return JoinKind::Plus;
  return std::nullopt;
}

std::string connector_state(int i) { return "__bot" + std::to_string(i); }
std::string connector_odot(int i) { return "__odot" + std::to_string(i); }
std::string connector_ominus(int i) { return "__ominus" + std::to_string(i); }

TransitionSystem join(const TsUnion& u, NetType tau, const std::string& name) {
  auto kind = join_kind(tau);
  if (!kind) throw TsError(TsErrorKind::JoinUndefined, "JoinUndefined({" + format_type(tau) + "})");

  const int n = static_cast<int>(u.components.size());
  std::vector<std::string> states, events = u.events();
  std::unordered_map<std::string, int> eidx;
  for (int i = 0; i < static_cast<int>(events.size()); ++i) eidx.emplace(events[i], i);
  const int total_states = static_cast<int>(u.states().size());

  // every union event must be absent somewhere
  std::vector<int> occurrences(events.size(), 0);
  for (auto& c : u.components)
    for (int e = 0; e < c.num_events(); ++e) {
      std::set<int> at;
      for (int arc : c.arcs_of_event(e)) at.insert(c.arcs()[arc].src);
      occurrences[eidx[c.event_name(e)]] += static_cast<int>(at.size());
    }
  for (std::size_t e = 0; e < events.size(); ++e)
    if (occurrences[e] >= total_states)
      throw TsError(TsErrorKind::PreconditionViolated, "PreconditionViolated(" + events[e] + ")");

  if (*kind == JoinKind::Plus) {
    std::vector<int> arc_count(events.size(), 0);
    for (auto& c : u.components)
      for (auto& x : c.arcs()) ++arc_count[eidx[c.event_name(x.event)]];
    for (auto& c : u.components) {
      const int s0 = c.initial();
      bool ok = c.arcs_into(s0).size() == 1 && c.arcs_out_of(s0).size() == 1;
      if (ok) {
        const Arc& in = c.arcs()[c.arcs_into(s0)[0]];
        const Arc& out = c.arcs()[c.arcs_out_of(s0)[0]];
        ok = in.event == out.event && arc_count[eidx[c.event_name(in.event)]] == 2;
      }
      if (!ok) throw TsError(TsErrorKind::PlusShapeViolated, "PlusShapeViolated(" + c.name() + ")");
    }
  }

  const int base_events = static_cast<int>(events.size());
  for (int i = 0; i < std::max(n, 1); ++i) states.push_back(connector_state(i));
  for (int i = 0; i < n; ++i) events.push_back(connector_odot(i));
  for (int i = 1; i < n; ++i) events.push_back(connector_ominus(i));
  const int odot0 = base_events, ominus1 = base_events + n;

  std::vector<Arc> arcs;
  std::vector<int> offset;
  for (auto& c : u.components) {
    offset.push_back(static_cast<int>(states.size()));
    states.insert(states.end(), c.state_names().begin(), c.state_names().end());
  }
  for (int i = 0; i < n; ++i) {
    auto& c = u.components[i];
    for (auto& x : c.arcs()) arcs.push_back({offset[i] + x.src, eidx[c.event_name(x.event)], offset[i] + x.dst});
    const int s0 = offset[i] + c.initial();
    arcs.push_back({i, odot0 + i, s0});
    if (*kind == JoinKind::Plus) arcs.push_back({s0, odot0 + i, i});
    if (i + 1 < n) {
      arcs.push_back({i, ominus1 + i, i + 1});
      if (*kind == JoinKind::Plus) arcs.push_back({i + 1, ominus1 + i, i});
    }
  }
  return TransitionSystem(name, std::move(states), std::move(events), 0, std::move(arcs));
}

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto h = line.find('#');
  return h == std::string_view::npos ? line : line.substr(0, h);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

}  // namespace

std::string serialize_ts(const TransitionSystem& a) {
  std::ostringstream os;
  os << "ts " << a.name() << "\n";
  os << "states";
  for (auto& s : a.state_names()) os << ' ' << s;
  os << "\nevents";
  for (auto& e : a.event_names()) os << ' ' << e;
  os << "\ninitial " << a.state_name(a.initial()) << "\n";
  for (auto& x : a.arcs())
    os << "arc " << a.state_name(x.src) << ' ' << a.event_name(x.event) << ' ' << a.state_name(x.dst) << "\n";
  return os.str();
}

RawTs parse_raw_ts(std::string_view text, int first_line) {
  RawTs raw;
  bool header = false;
  int lineno = first_line - 1;
  for (auto line : split_lines(text)) {
    ++lineno;
    auto t = tokens(strip_comment(line));
    if (t.empty()) continue;
    const auto& kw = t[0];
    if (kw == "ts") {
      if (header) throw ParseError(lineno, "duplicate 'ts' header");
      if (t.size() != 2) throw ParseError(lineno, "expected 'ts <name>'");
      header = true;
      raw.name = t[1];
    } else if (kw == "initial") {
      if (t.size() != 2) throw ParseError(lineno, "expected 'initial <state>'");
      if (raw.initial) throw ParseError(lineno, "duplicate 'initial' line");
      raw.initial = t[1];
    } else if (kw == "arc") {
      if (t.size() != 4) throw ParseError(lineno, "expected 'arc <src> <event> <dst>'");
      raw.arcs.push_back({t[1], t[2], t[3]});
    } else if (kw == "states") {
      raw.declared_states.insert(raw.declared_states.end(), t.begin() + 1, t.end());
    } else if (kw == "events") {
      raw.declared_events.insert(raw.declared_events.end(), t.begin() + 1, t.end());
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!raw.initial) throw ParseError(lineno, "missing 'initial' line");
  return raw;
}

TransitionSystem parse_ts(std::string_view text) { return build_ts(parse_raw_ts(text)); }

std::string serialize_union(const TsUnion& u) {
  std::string out;
  for (std::size_t i = 0; i < u.components.size(); ++i) {
    if (i) out += "---\n";
    out += serialize_ts(u.components[i]);
  }
  return out;
}

TsUnion parse_union(std::string_view text) {
  std::vector<TransitionSystem> comps;
  auto lines = split_lines(text);
  std::string block;
  int block_start = 1;
  bool any = false;
  auto flush = [&](int next_start) {
    if (any) comps.push_back(build_ts(parse_raw_ts(block, block_start)));
    block.clear();
    any = false;
    block_start = next_start;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto t = tokens(strip_comment(lines[i]));
    if (t.size() == 1 && t[0] == "---") {
      flush(static_cast<int>(i) + 2);
      continue;
    }
    if (!t.empty()) any = true;
    block.append(lines[i]);
    block.push_back('\n');
  }
  flush(0);
  return make_union(std::move(comps));
}

}  // namespace boolsynth
