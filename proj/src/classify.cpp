#include <boolsynth/classify.hpp>

namespace boolsynth {

namespace {

using I = Interaction;

constexpr NetType kTau1{I::nop, I::inp, I::out};
constexpr NetType kTau2{I::nop, I::inp, I::res, I::swap};
constexpr NetType kTau2m{I::nop, I::out, I::set, I::swap};
constexpr NetType kTau3{I::nop, I::inp, I::set};
constexpr NetType kTau3m{I::nop, I::out, I::res};
constexpr NetType kTau4{I::nop, I::set, I::swap};
constexpr NetType kTau4m{I::nop, I::res, I::swap};
constexpr NetType kTests{I::used, I::free};

bool base_plus(NetType tau, NetType base, NetType extra) {
  return tau.contains(base) && extra.contains(tau.without(base));
}

}  // namespace

int hardness_condition(NetType tau) {
  for (auto base : {kTau1, kTau2, kTau2m})
    if (base_plus(tau, base, kTests)) return 1;
  if (tau.contains(kTau3) || tau.contains(kTau3m)) return 2;
  for (auto base : {kTau4, kTau4m, kTau4 | kTau4m})
    if (base_plus(tau, base, kTests) && tau.intersects(kTests)) return 3;
  return 0;
}

bool direct_hard_class(NetType tau) {
  static const NetType classes[] = {
      {I::nop, I::inp, I::free},
      {I::nop, I::inp, I::used, I::free},
      {I::nop, I::out, I::used},
      {I::nop, I::out, I::used, I::free},
      {I::nop, I::set, I::res, I::used},
      {I::nop, I::set, I::res, I::free},
      {I::nop, I::set, I::res, I::used, I::free},
  };
  for (auto c : classes)
    if (c == tau) return true;
  return false;
}

PolyFamily poly_family(NetType tau) {
  if (!tau.has(I::nop)) return PolyFamily::None;
  if (base_plus(tau, {I::nop, I::set}, {I::out, I::used, I::free})) return PolyFamily::Set;
  if (base_plus(tau, {I::nop, I::res}, {I::inp, I::used, I::free})) return PolyFamily::Res;
  if (base_plus(tau, {I::nop, I::swap}, {I::inp, I::out, I::used, I::free})) return PolyFamily::Swap;
  if (base_plus(tau, {I::nop}, kTests)) return PolyFamily::Trivial;
  return PolyFamily::None;
}

ComplexityClass classify_type(NetType tau) {
  ComplexityClass c;
  if (!tau.has(I::nop)) {
    c.kind = Complexity::OutOfScopeNopFree;
    c.basis = "nop-free type";
    return c;
  }
  c.family = poly_family(tau);
  switch (c.family) {
    case PolyFamily::Set:
    case PolyFamily::Res:
      c.kind = Complexity::PolyTime;
      c.basis = "region growing";
      return c;
    case PolyFamily::Swap:
      c.kind = Complexity::PolyTime;
      c.basis = "parity equations";
      return c;
    case PolyFamily::Trivial:
      c.kind = Complexity::PolyTime;
      c.basis = "trivial type";
      return c;
    case PolyFamily::None: break;
  }
  if (hardness_condition(tau) != 0) {
    c.kind = Complexity::NPComplete;
    c.basis = "reduction scheme";
    return c;
  }
  if (direct_hard_class(tau)) {
    c.kind = Complexity::NPComplete;
    c.basis = "direct reduction";
    if (tau.contains({I::nop, I::set, I::res})) c.note = "general TSs only";
    return c;
  }
  c.kind = Complexity::Open;
  c.basis = "unresolved";
  return c;
}

std::string to_string(Complexity c) {
  switch (c) {
    case Complexity::PolyTime: return "polynomial";
    case Complexity::NPComplete: return "NP-complete";
    case Complexity::Open: return "open";
    case Complexity::OutOfScopeNopFree: return "out-of-scope";
  }
  return "";
}

std::string describe(const ComplexityClass& c) {
  std::string out = to_string(c.kind) + " (" + c.basis + ")";
  if (!c.note.empty()) out += " [" + c.note + "]";
  return out;
}

}  // namespace boolsynth
