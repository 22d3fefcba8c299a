#pragma once

#include <boolsynth/interaction.hpp>
#include <boolsynth/ts.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boolsynth {

using Marking = std::vector<std::uint8_t>;  // one 0/1 entry per place

struct BooleanNet {
  std::string name = "net";
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  Marking initial;                 // size = places
  std::vector<Interaction> flow;   // places x transitions, row-major

  int num_places() const { return static_cast<int>(places.size()); }
  int num_transitions() const { return static_cast<int>(transitions.size()); }
  Interaction f(int p, int t) const { return flow[static_cast<std::size_t>(p) * transitions.size() + t]; }
  Interaction& f(int p, int t) { return flow[static_cast<std::size_t>(p) * transitions.size() + t]; }

  // Appends a place; flow entries default to nop.
  int add_place(const std::string& name, bool marked);
  bool operator==(const BooleanNet&) const = default;
};

std::optional<Marking> fire(const BooleanNet& n, const Marking& m, int t);

// "{p,q}" with place names sorted.
std::string marking_name(const BooleanNet& n, const Marking& m);

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("state graph exceeds " + std::to_string(cap) + " markings") {}
};

// Reachability graph; states named by marking_name, events = transitions.
TransitionSystem state_graph(const BooleanNet& n, std::size_t cap = 1u << 20);

// Event names are matched by name. Returns the state map A -> B.
std::optional<std::vector<int>> check_isomorphic(const TransitionSystem& a, const TransitionSystem& b);

// Two-state template over {0,1}; arcs carry the interaction index as event.
struct TypeTemplate {
  std::vector<Arc> arcs;  // event field = static_cast<int>(Interaction)
};
TypeTemplate type_template(NetType tau);  // throws std::invalid_argument on empty type

std::string serialize_net(const BooleanNet& n);
BooleanNet parse_net(std::string_view text);  // throws ParseError

}  // namespace boolsynth
