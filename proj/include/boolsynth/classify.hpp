#pragma once

#include <boolsynth/interaction.hpp>

#include <string>

namespace boolsynth {

enum class Complexity { PolyTime, NPComplete, Open, OutOfScopeNopFree };

// Which polynomial procedure applies.
enum class PolyFamily { None, Set, Res, Swap, Trivial };

struct ComplexityClass {
  Complexity kind = Complexity::Open;
  PolyFamily family = PolyFamily::None;
  std::string basis;  // short label of the argument behind the verdict
  std::string note;   // input-restriction caveat, may be empty
};

ComplexityClass classify_type(NetType tau);

// 0 when none of the three conditions of the 77-class hardness result holds.
int hardness_condition(NetType tau);

// One of the seven further hard classes or a mirror image of one.
bool direct_hard_class(NetType tau);

PolyFamily poly_family(NetType tau);

std::string to_string(Complexity c);

// One-line text such as "NP-complete (reduction scheme)".
std::string describe(const ComplexityClass& c);

}  // namespace boolsynth
