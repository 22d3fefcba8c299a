#pragma once

#include <boolsynth/ts.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using boolsynth::Arc;
using boolsynth::TransitionSystem;

// Transition table in BFS numbering: cell s*k+e holds the target or -1.
using Table = std::vector<std::int8_t>;

inline TransitionSystem from_table(const Table& t, int n, int k) {
  std::vector<std::string> states, events;
  for (int s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
  for (int e = 0; e < k; ++e) events.push_back(std::string(1, static_cast<char>('a' + e)));
  std::vector<Arc> arcs;
  for (int s = 0; s < n; ++s)
    for (int e = 0; e < k; ++e)
      if (t[s * k + e] >= 0) arcs.push_back({s, e, t[s * k + e]});
  return TransitionSystem("small", std::move(states), std::move(events), 0, std::move(arcs));
}

// Renumbers states by BFS from state 0 visiting events in order.
inline Table bfs_canonical(const Table& t, int n, int k) {
  std::vector<int> order{0}, id(n, -1);
  id[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int e = 0; e < k; ++e) {
      int d = t[order[i] * k + e];
      if (d >= 0 && id[d] < 0) {
        id[d] = static_cast<int>(order.size());
        order.push_back(d);
      }
    }
  Table out(t.size(), -1);
  for (int s = 0; s < n; ++s)
    for (int e = 0; e < k; ++e)
      if (int d = t[order[s] * k + e]; d >= 0) out[s * k + e] = static_cast<std::int8_t>(id[d]);
  return out;
}

// Every deterministic reachable TS with n states and k events, each event
// occurring, up to renaming of states and events. A single state with no
// events is included once for k = 0.
template <class F>
void for_each_small_ts(int n, int k, F&& visit) {
  if (k == 0) {
    if (n == 1) visit(from_table({}, 1, 0));
    return;
  }
  Table t(static_cast<std::size_t>(n * k), -1);
  std::vector<int> perm(k);
  auto emit = [&] {
    std::vector<bool> used(k, false);
    for (int c = 0; c < n * k; ++c)
      if (t[c] >= 0) used[c % k] = true;
    if (std::find(used.begin(), used.end(), false) != used.end()) return;
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      Table p(t.size());
      for (int s = 0; s < n; ++s)
        for (int e = 0; e < k; ++e) p[s * k + perm[e]] = t[s * k + e];
      if (bfs_canonical(p, n, k) < t) return;
    }
    visit(from_table(t, n, k));
  };
  auto rec = [&](auto&& self, int cell, int found) -> void {
    if (cell == n * k) {
      if (found == n) emit();
      return;
    }
    const int s = cell / k;
    if (s >= found) return;
    for (int d = -1; d <= std::min(found, n - 1); ++d) {
      t[cell] = static_cast<std::int8_t>(d);
      self(self, cell + 1, d == found ? found + 1 : found);
    }
    t[cell] = -1;
  };
  rec(rec, 0, 1);
}

template <class F>
void for_each_small_ts_upto(int max_states, int max_events, F&& visit) {
  for (int n = 1; n <= max_states; ++n)
    for (int k = 0; k <= max_events; ++k) for_each_small_ts(n, k, visit);
}

// Random reachable deterministic TS: a random spanning tree plus extra arcs.
inline TransitionSystem random_ts(std::mt19937& rng, int n, int k, double extra = 0.5) {
  std::vector<std::string> states, events;
  for (int s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
  for (int e = 0; e < k; ++e) events.push_back("e" + std::to_string(e));
  std::vector<std::int8_t> t(static_cast<std::size_t>(n * k), -1);
  for (int s = 1; s < n; ++s) {
    for (;;) {
      int p = std::uniform_int_distribution<int>(0, s - 1)(rng);
      int e = std::uniform_int_distribution<int>(0, k - 1)(rng);
      if (t[p * k + e] < 0) {
        t[p * k + e] = static_cast<std::int8_t>(s);
        break;
      }
    }
  }
  std::bernoulli_distribution more(extra);
  for (int c = 0; c < n * k; ++c)
    if (t[c] < 0 && more(rng)) t[c] = static_cast<std::int8_t>(std::uniform_int_distribution<int>(0, n - 1)(rng));
  std::vector<Arc> arcs;
  for (int s = 0; s < n; ++s)
    for (int e = 0; e < k; ++e)
      if (t[s * k + e] >= 0) arcs.push_back({s, e, t[s * k + e]});
  return TransitionSystem("random", std::move(states), std::move(events), 0, std::move(arcs));
}

}  // namespace testsupport
