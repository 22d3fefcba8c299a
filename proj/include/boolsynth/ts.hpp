#pragma once

#include <boolsynth/interaction.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boolsynth {

struct Arc {
  int src;
  int event;
  int dst;
  bool operator==(const Arc&) const = default;
};

// Deterministic, initial-rooted labelled transition system over dense indices.
// Names are kept for I/O only.
class TransitionSystem {
 public:
  TransitionSystem() = default;

  // Throws TsError(NonDeterministic) on a duplicate (src, event).
  // Reachability is not checked here; see validate_ts.
  TransitionSystem(std::string name, std::vector<std::string> states,
                   std::vector<std::string> events, int initial, std::vector<Arc> arcs);

  const std::string& name() const { return name_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  int num_events() const { return static_cast<int>(events_.size()); }
  int initial() const { return initial_; }
  const std::string& state_name(int s) const { return states_[s]; }
  const std::string& event_name(int e) const { return events_[e]; }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& event_names() const { return events_; }

  // Sorted by (src, event).
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& arcs_of_event(int e) const { return by_event_[e]; }
  const std::vector<int>& arcs_into(int s) const { return in_[s]; }
  const std::vector<int>& arcs_out_of(int s) const { return out_[s]; }

  // -1 when s has no e-arc.
  int target(int s, int e) const { return succ_[static_cast<std::size_t>(s) * events_.size() + e]; }
  bool occurs(int s, int e) const { return target(s, e) >= 0; }

  std::optional<int> find_state(std::string_view n) const;
  std::optional<int> find_event(std::string_view n) const;

  // Same graph, same names, same order.
  bool operator==(const TransitionSystem& o) const;

 private:
  std::string name_;
  std::vector<std::string> states_;
  std::vector<std::string> events_;
  int initial_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> succ_;
  std::vector<std::vector<int>> by_event_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

enum class TsErrorKind {
  NonDeterministic,
  Unreachable,
  UnknownInitial,
  StateCollision,
  JoinUndefined,
  PreconditionViolated,
  PlusShapeViolated,
  Syntax,
};

struct TsViolation {
  TsErrorKind kind;
  std::string state;
  std::string event;
  std::string describe() const;
};

class TsError : public std::runtime_error {
 public:
  TsError(TsErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  TsErrorKind kind() const { return kind_; }

 private:
  TsErrorKind kind_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Name-level description before validation. States and events are interned in
// first-appearance order (declarations first).
struct RawTs {
  std::string name = "ts";
  std::optional<std::string> initial;
  std::vector<std::string> declared_states;
  std::vector<std::string> declared_events;
  struct RawArc {
    std::string src, event, dst;
  };
  std::vector<RawArc> arcs;
};

struct TsValidation {
  std::optional<TransitionSystem> ts;
  std::vector<TsViolation> violations;
};

TsValidation validate_ts(const RawTs& raw);

// validate_ts, throwing TsError carrying the first violation.
TransitionSystem build_ts(const RawTs& raw);

// Incremental construction by name; used by the generators.
class TsBuilder {
 public:
  explicit TsBuilder(std::string name) { raw_.name = std::move(name); }
  TsBuilder& initial(const std::string& s);
  TsBuilder& state(const std::string& s);
  TsBuilder& event(const std::string& e);
  TsBuilder& arc(const std::string& src, const std::string& event, const std::string& dst);
  // Arcs in both directions with the same label.
  TsBuilder& both(const std::string& a, const std::string& event, const std::string& b);
  TransitionSystem build() const { return build_ts(raw_); }

 private:
  RawTs raw_;
};

struct ModestyReport {
  bool simple = false;
  bool loop_free = false;
  bool reduced = false;
  bool modest = false;
};

ModestyReport modesty(const TransitionSystem& a);

// States visited by BFS from the initial state, in BFS order.
std::vector<int> bfs_order(const TransitionSystem& a);

struct TsUnion {
  std::vector<TransitionSystem> components;

  std::vector<std::string> states() const;
  // First-appearance order over components.
  std::vector<std::string> events() const;
};

// Throws TsError(StateCollision).
TsUnion make_union(std::vector<TransitionSystem> components);
TsUnion flatten(const std::vector<TsUnion>& parts);

enum class JoinKind { Basic, Plus };

// The joining variant chosen for a type; nullopt when neither applies.
// The shape condition of the plus variant is checked by join itself.
std::optional<JoinKind> join_kind(NetType tau);

// Reserved connector names.
std::string connector_state(int i);   // __bot<i>
std::string connector_odot(int i);    // __odot<i>
std::string connector_ominus(int i);  // __ominus<i>

TransitionSystem join(const TsUnion& u, NetType tau, const std::string& name = "joined");

std::string serialize_ts(const TransitionSystem& a);
TransitionSystem parse_ts(std::string_view text);
RawTs parse_raw_ts(std::string_view text, int first_line = 1);

std::string serialize_union(const TsUnion& u);
TsUnion parse_union(std::string_view text);

}  // namespace boolsynth
