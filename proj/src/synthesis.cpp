#include <boolsynth/synthesis.hpp>

#include <map>

namespace boolsynth {

BooleanNet net_from_regions(const TransitionSystem& a, const std::vector<Region>& regions,
                            std::vector<Region>* distinct) {
  BooleanNet n;
  n.name = a.name();
  n.transitions = a.event_names();
  std::map<Region, int> seen;
  std::vector<Region> kept;
  for (auto& r : regions) {
    if (!seen.emplace(r, static_cast<int>(kept.size())).second) continue;
    kept.push_back(r);
    int p = n.add_place("r" + std::to_string(kept.size() - 1), r.sup[a.initial()] == 1);
    for (int e = 0; e < a.num_events(); ++e) n.f(p, e) = r.sig[e];
  }
  if (distinct) *distinct = std::move(kept);
  return n;
}

bool verify_net(const TransitionSystem& a, const BooleanNet& n) {
  // the state graph of a correct net has exactly |S(A)| markings
  try {
    return check_isomorphic(state_graph(n, static_cast<std::size_t>(a.num_states()) + 1), a).has_value();
  } catch (const CapExceeded&) {
    return false;
  }
}

SynthesisResult synthesize(const TransitionSystem& a, NetType tau, const FeasibilityOptions& opts, bool verify) {
  SynthesisResult res;
  res.report = decide_feasibility(a, tau, opts);
  if (res.report.out_of_scope) {
    res.status = SynthesisStatus::OutOfScope;
    return res;
  }
  for (auto& atom : res.report.unsolved) {
    auto& slot = atom.kind == AtomKind::SSP ? res.failed_ssp : res.failed_essp;
    if (!slot) slot = atom;
  }
  if (!res.report.unsolved.empty()) {
    res.status = SynthesisStatus::Infeasible;
    return res;
  }
  if (res.report.budget_exceeded) {
    res.status = SynthesisStatus::BudgetExceeded;
    return res;
  }
  res.status = SynthesisStatus::Synthesized;
  res.net = net_from_regions(a, res.report.regions, &res.regions);
  if (verify) res.verified = verify_net(a, res.net);
  return res;
}

}  // namespace boolsynth
