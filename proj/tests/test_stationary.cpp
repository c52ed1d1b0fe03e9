#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dcm/graph.hpp"
#include "dcm/rng.hpp"
#include "dcm/stationary.hpp"
#include "dcm/theory.hpp"
#include "helpers.hpp"

using namespace dcm;

TEST_CASE("K3 has the uniform stationary law") {
  const Digraph k3 = dcm::testing::make_k3();
  const StationaryDist dist = stationary(k3);
  for (int v = 0; v < 3; ++v) CHECK(dist.pi[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(dist.pi2_sum == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  for (int v = 0; v < 3; ++v)
    CHECK(dist.mu_tilde[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("regular graphs are doubly stochastic: pi is exactly uniform") {
  const SampledGraph s = sample_ergodic_dcm(make_regular(3, 400), 17);
  const StationaryDist dist = stationary(s.graph);
  for (int v = 0; v < 400; ++v) CHECK(dist.pi[v] == doctest::Approx(1.0 / 400).epsilon(1e-9));
  const auto [np2, qhat] = pi_diag_stats(dist, s.graph.seq);
  CHECK(np2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qhat == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("Eulerian graphs have pi proportional to degree") {
  std::vector<int> deg(100, 2);
  for (int v = 50; v < 100; ++v) deg[v] = 4;
  const SampledGraph s = sample_ergodic_dcm(make_eulerian(std::move(deg)), 19);
  const StationaryDist dist = stationary(s.graph);
  const double total = 100 * 2 + 0;  // m = 300
  for (int v = 0; v < 100; ++v)
    CHECK(dist.pi[v] ==
          doctest::Approx(s.graph.seq.out_degrees[v] / 300.0).epsilon(1e-9));
  CHECK(total > 0);  // silence unused warning path
}

TEST_CASE("stationary residual is tiny and support matches ergodicity") {
  Rng rng(47);
  for (int rep = 0; rep < 10; ++rep) {
    const DegreeSequence seq = dcm::testing::random_strict_sequence(rng, 40);
    const SampledGraph s = sample_ergodic_dcm(seq, 900 + rep);
    const StationaryDist dist = stationary(s.graph);
    CHECK(dist.residual < 1e-11);
    double sum = 0.0;
    for (double p : dist.pi) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    const ErgodicityReport erg = ergodicity(s.graph);
    for (int v = 0; v < 40; ++v) {
      const bool in_support = dist.support[v] != 0;
      const bool recurrent =
          std::find(erg.support.begin(), erg.support.end(), v) != erg.support.end();
      CHECK(in_support == recurrent);
      if (!in_support) CHECK(dist.pi[v] == 0.0);
    }
  }
}

TEST_CASE("general formula: pi^2 class sums against g weights") {
  // On a regular graph the formula holds exactly; lhs = rhs for any f.
  const SampledGraph s = sample_ergodic_dcm(make_regular(3, 300), 23);
  const StationaryDist dist = stationary(s.graph);
  const auto [lhs, rhs] = general_formula_check(
      dist, s.graph.seq, [](int dm, int dp) { return dm * 1.0 / dp; });
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("mu_t converges to pi and TV decreases past the entropic time") {
  const SampledGraph s = sample_ergodic_dcm(make_regular(3, 1000), 29);
  const StationaryDist dist = stationary(s.graph);
  TvStarts starts;
  starts.sample_k = 50;
  starts.seed = 5;
  const MixingProfile profile =
      tv_profile(s.graph, dist, {0.25, 0.5, 1.0, 1.5, 2.5}, starts);
  CHECK(profile.t_ent == doctest::Approx(std::log(1000.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(profile.t_ent == doctest::Approx(6.288).epsilon(1e-3));
  CHECK(profile.tv_values.front() > 0.9);   // far below the cutoff: unmixed
  CHECK(profile.tv_values.back() < 0.25);   // far past the cutoff: mixed
  for (std::size_t i = 1; i < profile.tv_values.size(); ++i)
    CHECK(profile.tv_values[i] <= profile.tv_values[i - 1] + 1e-9);

  const std::vector<double> mu = mu_t(s.graph, 200);
  double tv = 0.0;
  for (int v = 0; v < 1000; ++v) tv += std::abs(mu[v] - dist.pi[v]);
  CHECK(0.5 * tv < 1e-6);
}

TEST_CASE("exhaustive-start TV is guarded at large n") {
  const SampledGraph s = sample_ergodic_dcm(make_regular(3, 6000), 31);
  const StationaryDist dist = stationary(s.graph);
  TvStarts all;
  all.all = true;
  CHECK_THROWS_AS(tv_profile(s.graph, dist, {1.0}, all), std::runtime_error);
}
