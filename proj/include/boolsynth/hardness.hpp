#pragma once

#include <boolsynth/interaction.hpp>
#include <boolsynth/region.hpp>
#include <boolsynth/ts.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boolsynth {

// Monotone cubic 3-CNF. Variables in first-appearance order; clauses hold
// variable indices in the order written.
struct CnfInstance {
  std::vector<std::string> variables;
  std::vector<std::array<int, 3>> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
  const std::string& var(int clause, int slot) const { return variables[clauses[clause][slot]]; }
};

struct RawCnf {
  std::vector<std::vector<std::string>> clauses;
};

enum class CnfErrorKind { VariableArity, ClauseArity, DuplicateVarInClause, TooLarge, NotAModel, NameCollision };

class CnfError : public std::runtime_error {
 public:
  CnfError(CnfErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  CnfErrorKind kind() const { return kind_; }

 private:
  CnfErrorKind kind_;
};

CnfInstance validate_cnf(const RawCnf& raw);
RawCnf parse_raw_cnf(std::string_view text);  // throws ParseError
CnfInstance parse_cnf(std::string_view text);
std::string serialize_cnf(const CnfInstance& phi);

using Model = std::vector<int>;  // sorted variable indices

bool is_one_in_three_model(const CnfInstance& phi, const Model& m);

// Lexicographically first sorted index list; throws TooLarge above 25 variables.
std::optional<Model> one_in_three_bruteforce(const CnfInstance& phi);

std::vector<std::string> model_names(const CnfInstance& phi, const Model& m);

// Variables whose event carries a non-nop signature.
Model extract_model(const CnfInstance& phi, const TransitionSystem& a, const Region& r);

enum class Sigma { S1 = 1, S2, S3, S4, S5, S6 };

std::vector<NetType> managed_types(Sigma s);
NetType representative_type(Sigma s);
bool manages(Sigma s, NetType tau);
std::string to_string(Sigma s);          // "sigma1"
std::optional<Sigma> parse_sigma(std::string_view s);

struct ReductionOutput {
  Sigma sigma;
  NetType tau;
  TsUnion key_union;
  TsUnion translator_union;
  TsUnion union_;  // key union, then translator union
  TransitionSystem joined;
  std::string key_event;
  std::string key_state;
};

// Throws WrongFamily when tau is not managed by sigma, CnfError(NameCollision)
// when a variable name clashes with a generated event.
ReductionOutput build_reduction(const CnfInstance& phi, Sigma sigma, std::optional<NetType> tau = std::nullopt);

// All states, events and arcs of the components in one graph. The initial
// state is the first component's; reachability is not implied.
TransitionSystem union_as_ts(const TsUnion& u, const std::string& name = "union");

class InterfaceMismatch : public std::logic_error {
 public:
  explicit InterfaceMismatch(const std::string& msg) : std::logic_error(msg) {}
};

Region construct_indicator_region(const CnfInstance& phi, const ReductionOutput& red, const Model& m);
Region construct_key_region(const ReductionOutput& red);

// Region of red.joined inhibiting the key event at the key state.
Region combine_witness(const CnfInstance& phi, const ReductionOutput& red, const Model& m);

// Extends a region of union_as_ts(u) to join(u, tau) by the connector rule;
// `anchor` is the state whose support the connectors copy.
Region extend_to_join(const TsUnion& u, NetType tau, const TransitionSystem& joined, const Region& r,
                      const std::string& anchor);

// Standalone generator gadget on states <prefix>_j_0..3 with events
// eta, rho and k.
TransitionSystem generator_gadget(const std::string& prefix, int j, const std::string& eta, const std::string& rho);

enum class T2Variant { Basic, Plus, Cross };

struct T2Output {
  TransitionSystem ts;
  T2Variant variant;
  NetType tau;
  bool mirrored;  // tau is the mirror of the class the TS was drawn for
  std::string key_event = "k";
  std::string key_state = "q";
};

// Classes handled: {nop,inp,free}, {nop,inp,used,free}, their mirrors, and
// {nop,set,res} with non-empty subset of {used,free}.
bool theorem2_class(NetType tau);
T2Output build_theorem2_ts(const CnfInstance& phi, NetType tau);
T2Output build_theorem2_variant(const CnfInstance& phi, T2Variant v);
Region theorem2_witness(const CnfInstance& phi, const T2Output& t2, const Model& m);

}  // namespace boolsynth
