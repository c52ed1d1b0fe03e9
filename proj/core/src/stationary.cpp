#include "dcm/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dcm/rng.hpp"
#include "dcm/theory.hpp"

namespace dcm {

void step_distribution(const Digraph& g, const std::vector<double>& in, std::vector<double>& out) {
  const int n = g.n();
  out.assign(n, 0.0);
  for (int x = 0; x < n; ++x) {
    const double px = in[x];
    if (px == 0.0) continue;
    const double w = px / g.out_degree(x);
    for (int k = 0; k < g.out_degree(x); ++k) out[g.neighbor(x, k)] += w;
  }
}

StationaryDist stationary(const Digraph& g, double tol, int max_iters) {
  const auto erg = ergodicity(g);
  if (!erg.is_ergodic) throw std::runtime_error("stationary: graph is not ergodic");
  const int n = g.n();

  std::vector<char> support(n, 0);
  for (int v : erg.support) support[v] = 1;

  std::vector<double> pi(n, 1.0 / n), next(n), cesaro;
  double residual = std::numeric_limits<double>::infinity();
  double prev_residual = residual;
  int iterations = 0;
  int stalled = 0;

  while (iterations < max_iters) {
    step_distribution(g, pi, next);
    ++iterations;
    residual = 0.0;
    for (int x = 0; x < n; ++x) residual += std::abs(next[x] - pi[x]);
    pi.swap(next);
    if (residual <= tol) break;
    // Cesaro averaging every 32 stalled steps breaks period-2 oscillation on
    // small adversarial inputs.
    if (residual > 0.9 * prev_residual) {
      if (++stalled >= 32) {
        step_distribution(g, pi, next);
        for (int x = 0; x < n; ++x) pi[x] = 0.5 * (pi[x] + next[x]);
        stalled = 0;
      }
    } else {
      stalled = 0;
    }
    prev_residual = residual;
  }
  if (residual > tol) {
    throw std::runtime_error("stationary: no convergence after " + std::to_string(iterations) +
                             " iterations, residual " + std::to_string(residual));
  }

  StationaryDist dist;
  dist.support = std::move(support);
  for (int x = 0; x < n; ++x) {
    if (!dist.support[x]) pi[x] = 0.0;
  }
  double total = 0.0;
  for (double v : pi) total += v;
  for (double& v : pi) v /= total;
  dist.pi = std::move(pi);
  dist.residual = residual;
  dist.iterations = iterations;

  dist.pi_max = 0.0;
  dist.pi_min_support = std::numeric_limits<double>::infinity();
  dist.pi2_sum = 0.0;
  for (int x = 0; x < n; ++x) {
    const double v = dist.pi[x];
    dist.pi2_sum += v * v;
    dist.pi_max = std::max(dist.pi_max, v);
    if (dist.support[x]) dist.pi_min_support = std::min(dist.pi_min_support, v);
  }
  dist.mu_tilde.resize(n);
  for (int x = 0; x < n; ++x) dist.mu_tilde[x] = dist.pi[x] * dist.pi[x] / dist.pi2_sum;
  return dist;
}

std::pair<double, double> pi_diag_stats(const StationaryDist& dist, const DegreeSequence& seq) {
  const int n = seq.n();
  double q_hat_num = 0.0;
  for (int x = 0; x < n; ++x) {
    q_hat_num += dist.pi[x] * dist.pi[x] / seq.out_degrees[x];
  }
  return {n * dist.pi2_sum, q_hat_num / dist.pi2_sum};
}

std::pair<double, double> general_formula_check(const StationaryDist& dist,
                                                const DegreeSequence& seq,
                                                const std::function<double(int, int)>& f) {
  const int n = seq.n();
  double lhs = 0.0;
  for (int x = 0; x < n; ++x) {
    lhs += dist.pi[x] * dist.pi[x] * f(seq.in_degrees[x], seq.out_degrees[x]);
  }
  lhs *= n;

  // Group vertices by (d-, d+) so g_weight is evaluated once per class.
  std::map<std::pair<int, int>, bool> classes;
  for (int x = 0; x < n; ++x) {
    if (seq.out_degrees[x] >= 2) classes[{seq.in_degrees[x], seq.out_degrees[x]}] = true;
  }
  double rhs = 0.0;
  for (const auto& [key, _] : classes) {
    rhs += g_weight(key.first, key.second, seq) * f(key.first, key.second);
  }
  rhs *= n;
  return {lhs, rhs};
}

std::vector<double> mu_t(const Digraph& g, int T) {
  if (T < 0) throw std::invalid_argument("mu_t requires T >= 0");
  std::vector<double> dist(g.n(), 1.0 / g.n()), next;
  for (int t = 0; t < T; ++t) {
    step_distribution(g, dist, next);
    dist.swap(next);
  }
  return dist;
}

namespace {

double tv_from_start(const Digraph& g, const StationaryDist& dist, int start, int t) {
  std::vector<double> row(g.n(), 0.0), next;
  row[start] = 1.0;
  for (int s = 0; s < t; ++s) {
    step_distribution(g, row, next);
    row.swap(next);
  }
  double tv = 0.0;
  for (int x = 0; x < g.n(); ++x) tv += std::abs(row[x] - dist.pi[x]);
  return 0.5 * tv;
}

}  // namespace

MixingProfile tv_profile(const Digraph& g, const StationaryDist& dist,
                         const std::vector<double>& epsilons, const TvStarts& starts) {
  const int n = g.n();
  MixingProfile profile;
  const DegreeStats st = degree_stats(g.seq);
  double H = 0.0;
  for (int x = 0; x < n; ++x) H += st.mu_in[x] * std::log(static_cast<double>(g.seq.out_degrees[x]));
  profile.entropy_rate = H;
  profile.t_ent = std::log(static_cast<double>(n)) / H;

  std::vector<int> start_set;
  if (starts.all) {
    if (n > 5000) {
      throw std::runtime_error("tv_profile: exact worst case guarded to n <= 5000; use sampled starts");
    }
    start_set.resize(n);
    for (int x = 0; x < n; ++x) start_set[x] = x;
  } else {
    Rng rng(starts.seed);
    for (int i = 0; i < starts.sample_k; ++i) {
      start_set.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
  }

  for (double eps : epsilons) {
    const int t = std::max(0, static_cast<int>(std::floor(eps * profile.t_ent)));
    double worst = 0.0;
    for (int s : start_set) worst = std::max(worst, tv_from_start(g, dist, s, t));
    profile.times.push_back(t);
    profile.tv_values.push_back(worst);
  }
  return profile;
}

}  // namespace dcm
