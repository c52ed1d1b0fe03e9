#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "dcm/graph.hpp"
#include "dcm/rng.hpp"
#include "helpers.hpp"

using namespace dcm;

TEST_CASE("sampling preserves the degree sequence") {
  Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const DegreeSequence seq = dcm::testing::random_strict_sequence(rng, 25);
    const Digraph g = sample_dcm(seq, 1000 + rep);
    std::vector<int> in_count(25, 0);
    for (int v = 0; v < 25; ++v) {
      CHECK(g.out_degree(v) == seq.out_degrees[v]);
      for (int k = 0; k < g.out_degree(v); ++k) ++in_count[g.neighbor(v, k)];
    }
    for (int v = 0; v < 25; ++v) CHECK(in_count[v] == seq.in_degrees[v]);
  }
}

TEST_CASE("matchings are uniform over the m! possibilities") {
  // Three vertices with one stub each: 6 equally likely destination triples.
  const DegreeSequence seq = make_custom({1, 1, 1}, {1, 1, 1});
  std::map<std::vector<int>, long> counts;
  const long draws = 60000;
  for (long s = 0; s < draws; ++s) {
    const Digraph g = sample_dcm(seq, 7000 + static_cast<std::uint64_t>(s));
    counts[g.destination] += 1;
  }
  CHECK(counts.size() == 6);
  const double expected = draws / 6.0;
  double chi2 = 0.0;
  for (const auto& [key, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 20.5);  // chi-square 5 dof, 0.999 quantile is 20.5
}

TEST_CASE("ergodicity detection") {
  const Digraph k3 = dcm::testing::make_k3();
  const ErgodicityReport ok = ergodicity(k3);
  CHECK(ok.is_ergodic);
  CHECK(ok.support.size() == 3);
  CHECK(ok.recurrent_classes == 1);

  // Two disjoint self-loop vertices: two recurrent classes.
  Digraph split;
  split.seq = make_custom({1, 1}, {1, 1});
  split.tail_offset = {0, 1, 2};
  split.destination = {0, 1};
  split.matching = {0, 1};
  const ErgodicityReport bad = ergodicity(split);
  CHECK_FALSE(bad.is_ergodic);
  CHECK(bad.recurrent_classes == 2);

  // A transient vertex feeding an absorbing loop is still ergodic (support
  // excludes the transient part).
  Digraph funnel;
  funnel.seq = make_custom({1, 2}, {1, 2});
  funnel.tail_offset = {0, 1, 3};
  funnel.destination = {1, 1, 1};
  funnel.matching = {0, 1, 2};
  const ErgodicityReport f = ergodicity(funnel);
  CHECK(f.is_ergodic);
  CHECK(f.support == std::vector<int>{1});
}

TEST_CASE("sample_ergodic_dcm returns an ergodic draw and counts retries") {
  Rng rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const DegreeSequence seq = dcm::testing::random_strict_sequence(rng, 30);
    const SampledGraph s = sample_ergodic_dcm(seq, 555 + rep);
    CHECK(ergodicity(s.graph).is_ergodic);
    CHECK(s.retries >= 0);
  }
}

TEST_CASE("tree neighborhoods") {
  // K3 at depth 1: both out-neighbors distinct, every vertex is tree-like.
  const Digraph k3 = dcm::testing::make_k3();
  const TreeReport depth1 = tree_neighborhoods(k3, 1);
  CHECK(depth1.fraction == doctest::Approx(1.0));
  // Depth 2 revisits the start vertex, so nothing is tree-like.
  const TreeReport depth2 = tree_neighborhoods(k3, 2);
  CHECK(depth2.fraction == doctest::Approx(0.0));

  // Large sparse sample: most vertices are locally tree-like.
  const SampledGraph big = sample_ergodic_dcm(make_regular(3, 5000), 99);
  const TreeReport rep = tree_neighborhoods(big.graph);
  CHECK(rep.depth >= 1);
  CHECK(rep.fraction > 0.9);
}

TEST_CASE("edge CSV lists multiplicities") {
  Digraph g;
  g.seq = make_custom({2, 1}, {1, 2});
  g.tail_offset = {0, 2, 3};
  g.destination = {1, 1, 0};
  g.matching = {0, 1, 2};
  std::ostringstream os;
  write_edges_csv(os, g);
  CHECK(os.str() == "src,dst,multiplicity\n0,1,2\n1,0,1\n");
}
