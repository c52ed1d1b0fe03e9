#pragma once

#include <algorithm>
#include <vector>

#include "dcm/degseq.hpp"
#include "dcm/graph.hpp"
#include "dcm/rng.hpp"

namespace dcm::testing {

/// The complete directed triangle: every vertex points at the other two.
inline Digraph make_k3() {
  Digraph g;
  g.seq = make_regular(2, 3);
  g.tail_offset = {0, 2, 4, 6};
  g.destination = {1, 2, 0, 2, 0, 1};
  g.matching = {0, 2, 1, 4, 3, 5};
  return g;
}

/// One vertex carrying d self-loops (the smallest ergodic instance).
inline Digraph make_loop_vertex(int d = 2) {
  Digraph g;
  g.seq = make_regular(d, 1);
  g.tail_offset = {0, d};
  g.destination.assign(static_cast<std::size_t>(d), 0);
  g.matching.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) g.matching[static_cast<std::size_t>(k)] = k;
  return g;
}

/// Balanced sequence with out-degrees in [2, dmax] and the in-degrees a
/// random shuffle of the same multiset (so both sides stay bounded).
inline DegreeSequence random_strict_sequence(Rng& rng, int n, int dmax = 4) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (auto& d : out) d = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dmax - 1)));
  std::vector<int> in = out;
  for (std::size_t i = in.size(); i > 1; --i)
    std::swap(in[i - 1], in[rng.below(i)]);
  return make_custom(std::move(out), std::move(in));
}

}  // namespace dcm::testing
