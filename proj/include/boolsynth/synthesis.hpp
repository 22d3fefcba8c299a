#pragma once

#include <boolsynth/net.hpp>
#include <boolsynth/region.hpp>

#include <optional>
#include <vector>

namespace boolsynth {

enum class SynthesisStatus { Synthesized, Infeasible, OutOfScope, BudgetExceeded };

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::Infeasible;
  BooleanNet net;
  std::vector<Region> regions;      // one per place, in place order
  bool verified = false;
  std::optional<Atom> failed_ssp;   // first unsolvable SSP atom
  std::optional<Atom> failed_essp;  // first unsolvable ESSP atom
  FeasibilityReport report;
};

// N(A, R): places are the distinct regions (named r0, r1, ... by first use in
// atom order), transitions are the events, flow is the signature.
BooleanNet net_from_regions(const TransitionSystem& a, const std::vector<Region>& regions,
                            std::vector<Region>* distinct = nullptr);

SynthesisResult synthesize(const TransitionSystem& a, NetType tau, const FeasibilityOptions& opts = {},
                           bool verify = true);

bool verify_net(const TransitionSystem& a, const BooleanNet& n);

}  // namespace boolsynth
