#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dcm/degseq.hpp"
#include "dcm/rng.hpp"
#include "dcm/theory.hpp"

using namespace dcm;

TEST_CASE("regular(3) constants") {
  const TheoryConstants tc = theory_constants(make_regular(3, 100));
  CHECK(tc.p_frak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tc.q_frak == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tc.r_frak == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(tc.theta == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(tc.phi == doctest::Approx(std::sqrt(1.5) - 1.0).epsilon(1e-12));
}

TEST_CASE("alternate(2,4) constants") {
  const TheoryConstants tc = theory_constants(make_alternate(2, 4, 100));
  CHECK(tc.p_frak == doctest::Approx(1.396825396825).epsilon(1e-10));
  CHECK(tc.q_frak == doctest::Approx(0.443181818182).epsilon(1e-10));
  CHECK(tc.r_frak == doctest::Approx(1.335596).epsilon(1e-6));
  CHECK(tc.theta == doctest::Approx(0.956167).epsilon(1e-5));
}

TEST_CASE("closed forms agree with the generic constants") {
  CHECK(theta_regular(3) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(theory_constants(make_regular(5, 100)).theta ==
        doctest::Approx(theta_regular(5)).epsilon(1e-10));

  {  // out-regular: d+ = 3, in-degrees half 2 / half 4
    std::vector<int> in(100, 2);
    for (int v = 50; v < 100; ++v) in[v] = 4;
    const DegreeSequence seq = make_out_regular(3, std::move(in));
    const DegreeStats s = degree_stats(seq);
    CHECK(theory_constants(s).theta ==
          doctest::Approx(theta_out_regular(3, s.beta)).epsilon(1e-10));
  }
  {  // in-regular: d- = 3, out-degrees half 2 / half 4
    std::vector<int> out(100, 2);
    for (int v = 50; v < 100; ++v) out[v] = 4;
    const DegreeSequence seq = make_in_regular(std::move(out), 3);
    const DegreeStats s = degree_stats(seq);
    CHECK(theory_constants(s).theta ==
          doctest::Approx(theta_in_regular(3, s.rho)).epsilon(1e-10));
  }
  {  // Eulerian: half degree 2, half degree 4
    std::vector<int> deg(100, 2);
    for (int v = 50; v < 100; ++v) deg[v] = 4;
    const DegreeSequence seq = make_eulerian(std::move(deg));
    const DegreeStats s = degree_stats(seq);
    CHECK(theory_constants(s).theta ==
          doctest::Approx(theta_eulerian(s.delta, s.beta)).epsilon(1e-10));
    CHECK(theory_constants(s).theta == doctest::Approx(1.078041944).epsilon(1e-8));
  }
  CHECK(theory_constants(make_alternate(2, 4, 100)).theta ==
        doctest::Approx(0.9561654184).epsilon(1e-9));
  // Degenerate corner: in-regular with d = 2 pins theta at sqrt(2) and any
  // caller-supplied rho is ignored.
  CHECK(theta_in_regular(2, 0.4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(theta_regular(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(theta_out_regular(3, 5.0) == doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(1e-12));
  CHECK(theta_undirected_regular(3) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(theta_undirected_regular(2), std::domain_error);
}

TEST_CASE("theta is increasing in a along the alternate family") {
  for (int d = 3; d <= 10; ++d) {
    double prev = 0.0;
    for (int a = 2; a <= d; ++a) {
      const int b = 2 * d - a;
      const double theta = theory_constants(make_alternate(a, b, 200)).theta;
      CHECK(theta > prev);
      prev = theta;
    }
    // a = d collapses onto the regular case.
    CHECK(prev == doctest::Approx(theta_regular(d)).epsilon(1e-10));
  }
}

TEST_CASE("the two theta routes agree on random functional tuples") {
  Rng rng(31);
  for (int rep = 0; rep < 10000; ++rep) {
    DegreeStats s;
    s.delta = 1.5 + 8.5 * rng.uniform();
    s.rho = 0.02 + 0.48 * rng.uniform();
    s.beta = 1.05 + 7.0 * rng.uniform();
    s.gamma = s.rho + 0.01 + 3.0 * rng.uniform();
    s.alpha = (s.gamma - s.rho) / (1.0 - s.rho);
    const TheoryConstants tc = theory_constants(s);
    const double design = theta_design_route(s);
    CHECK(std::abs(tc.theta - design) <= 1e-10 * std::max(1.0, std::abs(design)));
  }
}

TEST_CASE("epsilon_fn endpoints and Taylor region") {
  CHECK(epsilon_fn(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(epsilon_fn(0.5) == doctest::Approx((1.0 - std::sqrt(0.5)) / 0.5).epsilon(1e-14));
  CHECK(epsilon_fn(1e-12) == doctest::Approx(0.5 + 1e-12 / 8.0).epsilon(1e-13));
}

TEST_CASE("return law: first terms and Catalan partial sums") {
  // t = 1: q / 2; regular(3) gives 1/6.
  CHECK(return_law(1, 1.0 / 3.0, 1.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // t = 2: 2^{-3} C_1 rho q = rho q / 8.
  CHECK(return_law(2, 1.0 / 3.0, 1.0 / 3.0) == doctest::Approx(1.0 / 72.0).epsilon(1e-14));

  for (int i = 1; i <= 50; ++i) {
    const double rho = 0.5 * i / 50.0;
    double sum = 0.0;
    for (long t = 1; t <= 3000; ++t) sum += return_law(t, rho, 1.0);
    CHECK(std::abs(sum - epsilon_fn(rho)) <= 1e-12);
  }

  // Log-space evaluation agrees with the recurrence across the switchover.
  const double direct = return_law(500, 0.4, 0.3);
  const double logspace = return_law(501, 0.4, 0.3);
  CHECK(logspace < direct);
  CHECK(logspace > 0.0);
}

TEST_CASE("phi ties the return law to r_frak") {
  const TheoryConstants tc = theory_constants(make_alternate(2, 4, 100));
  const DegreeStats s = degree_stats(make_alternate(2, 4, 100));
  CHECK(1.0 + phi_fn(s.rho, tc.q_frak) == doctest::Approx(tc.r_frak).epsilon(1e-12));
}

TEST_CASE("g weights reproduce p_frak") {
  for (const DegreeSequence& seq :
       {make_regular(3, 60), make_alternate(2, 4, 60), make_eulerian(std::vector<int>(60, 3))}) {
    double total = 0.0;
    for (int dm = 0; dm <= seq.in_degree_max(); ++dm)
      for (int dp = 2; dp <= seq.out_degree_max(); ++dp)
        total += g_weight(dm, dp, seq);
    total *= seq.n();
    CHECK(total == doctest::Approx(theory_constants(seq).p_frak).epsilon(1e-10));
  }
}

TEST_CASE("limit scalings") {
  const LimitScalings ls = limit_scalings(0.5);
  CHECK(ls.coalescence_factor == doctest::Approx(2.0));
  CHECK(ls.consensus_factor == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  const LimitScalings asym = limit_scalings(0.1);
  CHECK(asym.consensus_factor ==
        doctest::Approx(-2.0 * (0.9 * std::log(0.9) + 0.1 * std::log(0.1))).epsilon(1e-12));
}
