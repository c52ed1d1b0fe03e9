#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dcm/degseq.hpp"

namespace dcm {

/// Directed multigraph realized from a uniform stub matching. Self-loops and
/// multi-edges are kept. Immutable after sampling; safe to share across threads.
struct Digraph {
  DegreeSequence seq;
  std::vector<int> tail_offset;      // n+1 prefix sums of out-degrees
  std::vector<int> destination;      // per tail slot, in tail index order
  std::vector<int> matching;         // tail slot -> head slot
  std::uint64_t seed = 0;

  int n() const { return seq.n(); }
  std::int64_t m() const { return static_cast<std::int64_t>(destination.size()); }
  int out_degree(int x) const { return tail_offset[x + 1] - tail_offset[x]; }
  int neighbor(int x, int k) const { return destination[tail_offset[x] + k]; }
};

Digraph sample_dcm(const DegreeSequence& seq, std::uint64_t seed);

struct ErgodicityReport {
  bool is_ergodic = false;
  std::vector<int> giant_scc;  // the (unique) recurrent class when ergodic
  std::vector<int> support;    // supp(pi) = recurrent class vertices
  int recurrent_classes = 0;
  std::string reason;
};

ErgodicityReport ergodicity(const Digraph& g);

enum class NonErgodicPolicy { kResample, kFail };

struct SampledGraph {
  Digraph graph;
  int retries = 0;  // resamples needed before an ergodic draw
};

/// Samples until ergodic (seed, seed+1, ... up to retry_cap) or throws.
SampledGraph sample_ergodic_dcm(const DegreeSequence& seq, std::uint64_t seed,
                                NonErgodicPolicy policy = NonErgodicPolicy::kResample,
                                int retry_cap = 100);

struct TreeReport {
  int depth = 1;
  std::vector<int> v_star;  // vertices whose depth-h out-neighborhood is a tree
  double fraction = 0.0;
};

/// Default depth: max(1, floor(log n / (5 log d+_max))).
TreeReport tree_neighborhoods(const Digraph& g, std::optional<int> depth = std::nullopt);

/// Edge-list CSV `src,dst,multiplicity`.
void write_edges_csv(std::ostream& os, const Digraph& g);

}  // namespace dcm
