#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "dcm/stats.hpp"

using namespace dcm;

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  return std::sqrt(s2 / static_cast<double>(v.size() - 1) /
                   static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("reference samplers hit their exact means") {
  ReferenceDist exp1;
  auto e = sample_reference(exp1, 200000, 1);
  CHECK(std::abs(mean_of(e) - 1.0) <= 3.0 * se_of(e));

  ReferenceDist kingman;
  kingman.kind = ReferenceDist::Kind::kKingmanSum;
  auto k = sample_reference(kingman, 200000, 2);
  // E[sum_{j=2}^{kmax} 2/(j(j-1))] = 2 (1 - 1/kmax).
  const double km = 2.0 * (1.0 - 1.0 / 2000.0);
  CHECK(std::abs(mean_of(k) - km) <= 3.0 * se_of(k));

  ReferenceDist cons;
  cons.kind = ReferenceDist::Kind::kConsensusSum;
  cons.u = 0.5;
  auto c = sample_reference(cons, 200000, 3);
  // At u = 1/2 the start index K is Geom(1/2); E[sum] = 2 log 2 up to the
  // k_max truncation (tail mean 2/k_max = 1e-3).
  CHECK(std::abs(mean_of(c) - 2.0 * std::log(2.0)) <= 3.0 * se_of(c) + 2.0 / 2000.0);

  ReferenceDist bad;
  bad.kind = ReferenceDist::Kind::kKingmanSum;
  bad.k_max = 1;
  CHECK_THROWS_AS(sample_reference(bad, 10, 4), std::invalid_argument);
  ReferenceDist badu;
  badu.kind = ReferenceDist::Kind::kConsensusSum;
  badu.u = 1.0;
  CHECK_THROWS_AS(sample_reference(badu, 10, 5), std::invalid_argument);
}

TEST_CASE("wasserstein1 basic metric behavior") {
  const std::vector<double> a = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> shifted = a;
  for (double& x : shifted) x += 0.75;
  CHECK(wasserstein1(a, a) == doctest::Approx(0.0));
  CHECK(wasserstein1(a, shifted) == doctest::Approx(0.75));
  const std::vector<double> b = {5.0, 0.5};
  CHECK(wasserstein1(a, b) == doctest::Approx(wasserstein1(b, a)));

  // Triangle inequality on a handful of fixed samples.
  const std::vector<double> c = {1.0, 1.0, 4.0};
  const double ab = wasserstein1(a, b);
  const double bc = wasserstein1(b, c);
  const double ac = wasserstein1(a, c);
  CHECK(ac <= ab + bc + 1e-12);

  CHECK_THROWS_AS(wasserstein1(a, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("wasserstein1 against a reference law vanishes on a self-sample") {
  ReferenceDist exp1;
  const auto sample = sample_reference(exp1, 100000, 7);
  CHECK(wasserstein1(sample, exp1, 8) <= 0.02);

  // A unit shift shows up at full strength.
  std::vector<double> shifted = sample;
  for (double& x : shifted) x += 1.0;
  CHECK(wasserstein1(shifted, exp1, 9) >= 0.9);
}

TEST_CASE("empirical_summary quantiles, censoring, and degenerate samples") {
  const std::vector<double> constant(50, 2.5);
  const std::vector<char> none(50, 0);
  const EmpiricalSummary flat = empirical_summary(constant, none, 4);
  CHECK(flat.mean == doctest::Approx(2.5));
  CHECK(flat.std_error == doctest::Approx(0.0));
  for (double q : flat.quantiles) CHECK(q == doctest::Approx(2.5));
  CHECK(std::accumulate(flat.masses.begin(), flat.masses.end(), 0.0) ==
        doctest::Approx(1.0));

  ReferenceDist exp1;
  const auto sample = sample_reference(exp1, 100000, 10);
  const std::vector<char> clear(sample.size(), 0);
  const EmpiricalSummary s = empirical_summary(sample, clear, 40);
  CHECK(std::abs(s.quantiles[3] - std::log(2.0)) <= 0.02);  // median
  CHECK(s.quantiles[0] <= s.quantiles[3]);
  CHECK(s.quantiles[3] <= s.quantiles[6]);

  // Censored trials subtract histogram mass but not quantile validity.
  std::vector<char> half(sample.size(), 0);
  for (std::size_t i = 0; i < half.size(); i += 2) half[i] = 1;
  const EmpiricalSummary cs = empirical_summary(sample, half, 40);
  CHECK(cs.censored == static_cast<long>((sample.size() + 1) / 2));
  CHECK(std::accumulate(cs.masses.begin(), cs.masses.end(), 0.0) ==
        doctest::Approx(1.0 - static_cast<double>(cs.censored) /
                                  static_cast<double>(sample.size())));

  CHECK_THROWS_AS(empirical_summary({}, {}, 4), std::invalid_argument);
  const std::vector<char> all(constant.size(), 1);
  CHECK_THROWS_AS(empirical_summary(constant, all, 4), std::invalid_argument);
}

TEST_CASE("histogram CSV round-trips the masses") {
  const std::vector<double> v = {0.0, 0.5, 1.0, 1.5};
  const std::vector<char> none(4, 0);
  const EmpiricalSummary s = empirical_summary(v, none, 2);
  std::ostringstream os;
  write_histogram_csv(os, s);
  const std::string text = os.str();
  CHECK(text.rfind("bin_left,bin_right,mass\n", 0) == 0);
  // Two bins follow the header line.
  long lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 3);
}
