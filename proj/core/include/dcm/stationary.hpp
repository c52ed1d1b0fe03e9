#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcm/graph.hpp"

namespace dcm {

struct StationaryDist {
  std::vector<double> pi;        // zero exactly off the recurrent class
  std::vector<char> support;     // mask, = supp(pi)
  double pi_max = 0.0;
  double pi_min_support = 0.0;
  double pi2_sum = 0.0;          // <pi^2>
  std::vector<double> mu_tilde;  // pi(v)^2 / <pi^2>
  double residual = 0.0;         // final L1 residual ||pi P - pi||_1
  int iterations = 0;
};

/// Power iteration on P(x,y) = A(x,y)/d+_x with Cesaro averaging when the
/// residual stalls; throws on non-ergodic input or non-convergence.
StationaryDist stationary(const Digraph& g, double tol = 1e-12, int max_iters = 100000);

/// (n <pi^2>, q_hat) — empirical counterparts of p_frak and q_frak.
std::pair<double, double> pi_diag_stats(const StationaryDist& dist, const DegreeSequence& seq);

/// lhs = n sum_x pi(x)^2 f(d-_x, d+_x); rhs = n sum g(d-,d+) f(d-,d+).
std::pair<double, double> general_formula_check(const StationaryDist& dist,
                                                const DegreeSequence& seq,
                                                const std::function<double(int, int)>& f);

/// T-step push-forward of the uniform distribution through P.
std::vector<double> mu_t(const Digraph& g, int T);

struct MixingProfile {
  std::vector<int> times;
  std::vector<double> tv_values;  // worst case (or sampled-start max) TV at each time
  double t_ent = 0.0;             // log n / H
  double entropy_rate = 0.0;      // H = sum (d-_x/m) log d+_x
};

struct TvStarts {
  bool all = false;   // exact worst case; guarded to n <= 5000
  int sample_k = 0;   // ignored when all = true
  std::uint64_t seed = 0;
};

MixingProfile tv_profile(const Digraph& g, const StationaryDist& dist,
                         const std::vector<double>& epsilons, const TvStarts& starts);

/// One in-place step of the row distribution: out = in P.
void step_distribution(const Digraph& g, const std::vector<double>& in, std::vector<double>& out);

}  // namespace dcm
