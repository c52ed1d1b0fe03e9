#include "dcm/collapsed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcm {

CollapsedChain::CollapsedChain(const Digraph& g, std::vector<double> reset)
    : g_(&g), reset_(std::move(reset)) {
  if (static_cast<int>(reset_.size()) != g.n()) {
    throw std::invalid_argument("reset vector length must equal n");
  }
  double total = 0.0;
  for (double v : reset_) {
    if (v < 0.0) throw std::invalid_argument("reset vector has negative entries");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("reset vector must sum to 1");
  }
}

std::size_t CollapsedChain::pair_index(int x, int y) const {
  // y != x; diagonal removed from the row.
  return static_cast<std::size_t>(x) * (n() - 1) + (y < x ? y : y - 1);
}

namespace {

// Shared body for apply / apply_killed. Pushes the mass of every pair state
// through the asynchronous product step and the diagonal reset step.
template <bool Killed>
void apply_impl(const CollapsedChain& chain, const Digraph& g, const std::vector<double>& in,
                std::vector<double>& out) {
  const int n = g.n();
  const std::size_t diag = chain.diagonal_state();
  out.assign(chain.state_count(), 0.0);

  for (int x1 = 0; x1 < n; ++x1) {
    const std::size_t row_base = static_cast<std::size_t>(x1) * (n - 1);
    for (int col = 0; col < n - 1; ++col) {
      const double mass = in[row_base + col];
      if (mass == 0.0) continue;
      const int x2 = col < x1 ? col : col + 1;

      // First walker moves.
      {
        const double w = 0.5 * mass / g.out_degree(x1);
        for (int k = 0; k < g.out_degree(x1); ++k) {
          const int y = g.neighbor(x1, k);
          if (y == x2) {
            if constexpr (!Killed) out[diag] += w;
          } else {
            out[chain.pair_index(y, x2)] += w;
          }
        }
      }
      // Second walker moves.
      {
        const double w = 0.5 * mass / g.out_degree(x2);
        for (int k = 0; k < g.out_degree(x2); ++k) {
          const int y = g.neighbor(x2, k);
          if (y == x1) {
            if constexpr (!Killed) out[diag] += w;
          } else {
            out[chain.pair_index(x1, y)] += w;
          }
        }
      }
    }
  }

  const double diag_mass = in[diag];
  if (diag_mass != 0.0) {
    // Reset to (z, z) with law mu, then one of the two walkers steps.
    const auto& mu = chain.reset();
    for (int z = 0; z < n; ++z) {
      if (mu[z] == 0.0) continue;
      const double w = diag_mass * mu[z] / g.out_degree(z);
      for (int k = 0; k < g.out_degree(z); ++k) {
        const int y = g.neighbor(z, k);
        if (y == z) {
          if constexpr (!Killed) out[diag] += w;
        } else {
          out[chain.pair_index(y, z)] += 0.5 * w;
          out[chain.pair_index(z, y)] += 0.5 * w;
        }
      }
    }
  }
}

}  // namespace

void CollapsedChain::apply(const std::vector<double>& in, std::vector<double>& out) const {
  apply_impl<false>(*this, *g_, in, out);
}

void CollapsedChain::apply_killed(const std::vector<double>& in, std::vector<double>& out) const {
  apply_impl<true>(*this, *g_, in, out);
}

CollapsedChain build_collapsed(const Digraph& g, std::optional<std::vector<double>> reset) {
  if (g.n() > 2000) {
    throw std::runtime_error("build_collapsed: dense pair state space guarded to n <= 2000");
  }
  if (!reset) {
    const StationaryDist dist = stationary(g);
    reset = dist.mu_tilde;
  }
  return CollapsedChain(g, std::move(*reset));
}

CollapsedChain build_collapsed(const Digraph& g, const StationaryDist& dist) {
  if (g.n() > 2000) {
    throw std::runtime_error("build_collapsed: dense pair state space guarded to n <= 2000");
  }
  return CollapsedChain(g, dist.mu_tilde);
}

CollapsedStationaryReport stationary_collapsed(const CollapsedChain& chain,
                                               const StationaryDist& dist, double tol) {
  const std::size_t states = chain.state_count();
  std::vector<double> v(states, 1.0 / states), next;
  double residual = 1.0;
  for (int iter = 0; iter < 200000 && residual > 1e-13; ++iter) {
    chain.apply(v, next);
    residual = 0.0;
    for (std::size_t i = 0; i < states; ++i) residual += std::abs(next[i] - v[i]);
    v.swap(next);
  }

  CollapsedStationaryReport report;
  const int n = chain.n();
  report.diagonal_deviation = std::abs(v[chain.diagonal_state()] - dist.pi2_sum);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      const double expected = dist.pi[x] * dist.pi[y];
      report.max_offdiag_deviation =
          std::max(report.max_offdiag_deviation, std::abs(v[chain.pair_index(x, y)] - expected));
    }
  }
  report.conditions_hold =
      report.diagonal_deviation <= tol && report.max_offdiag_deviation <= tol;
  report.pi_tilde = std::move(v);
  return report;
}

RtResult r_t(const CollapsedChain& chain, long T) {
  if (T < 0) throw std::invalid_argument("r_t requires T >= 0");
  const std::size_t diag = chain.diagonal_state();
  std::vector<double> v(chain.state_count(), 0.0), next;
  v[diag] = 1.0;

  RtResult result;
  result.value = 1.0;  // t = 0 term
  double prev_return = 1.0;
  int stable = 0;
  for (long t = 1; t <= T; ++t) {
    chain.apply(v, next);
    v.swap(next);
    const double ret = v[diag];
    result.value += ret;
    ++result.steps_computed;
    // The return mass settles at pi_tilde(diag) once the chain has mixed;
    // the remaining T - t identical terms are added in closed form.
    stable = (std::abs(ret - prev_return) < 1e-16) ? stable + 1 : 0;
    prev_return = ret;
    if (stable >= 8 && t < T) {
      result.value += static_cast<double>(T - t) * ret;
      result.extrapolated = true;
      break;
    }
  }
  return result;
}

FvtlReport fvtl_lambda(const CollapsedChain& chain, const StationaryDist& dist, long T,
                       std::optional<long> t_max) {
  if (chain.n() > 200) throw std::runtime_error("fvtl_lambda: exact tail guarded to n <= 200");
  const std::size_t diag = chain.diagonal_state();

  const auto stat = stationary_collapsed(chain, dist);
  const double pi_diag = stat.pi_tilde[diag];
  if (pi_diag >= 1.0 - 1e-12) {
    throw std::runtime_error("fvtl_lambda: degenerate chain, no off-diagonal support");
  }

  FvtlReport report;
  report.lambda = pi_diag / r_t(chain, T).value;
  report.t_max = t_max.value_or(static_cast<long>(std::ceil(5.0 / report.lambda)));

  // Exact survival P_{pi_tilde}(tau_diag > t) by killed evolution.
  std::vector<double> v = stat.pi_tilde, next;
  v[diag] = 0.0;  // tau = 0 on the diagonal itself
  double survival = 0.0;
  for (double w : v) survival += w;
  const double one_minus_lambda = 1.0 - report.lambda;
  double geometric = 1.0;
  report.sup_error = std::abs(survival / geometric - 1.0);
  for (long t = 1; t <= report.t_max; ++t) {
    chain.apply_killed(v, next);
    v.swap(next);
    survival = 0.0;
    for (double w : v) survival += w;
    geometric *= one_minus_lambda;
    report.sup_error = std::max(report.sup_error, std::abs(survival / geometric - 1.0));
  }
  return report;
}

namespace {

// Dense absorbing solve: h = 1 + Q h on off-diagonal pairs where Q drops
// transitions into the diagonal. Built straight from P, independently of
// CollapsedChain::apply.
Eigen::VectorXd solve_pair_hitting(const Digraph& g) {
  const int n = g.n();
  const int states = n * (n - 1);
  auto index = [n](int x, int y) { return x * (n - 1) + (y < x ? y : y - 1); };

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(states, states);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      const int row = index(x, y);
      for (int k = 0; k < g.out_degree(x); ++k) {
        const int w = g.neighbor(x, k);
        if (w != y) A(row, index(w, y)) -= 0.5 / g.out_degree(x);
      }
      for (int k = 0; k < g.out_degree(y); ++k) {
        const int w = g.neighbor(y, k);
        if (w != x) A(row, index(x, w)) -= 0.5 / g.out_degree(y);
      }
    }
  }
  return A.partialPivLu().solve(Eigen::VectorXd::Ones(states));
}

}  // namespace

MeetingExpectation exact_meeting_expectation(const Digraph& g, const StationaryDist& dist) {
  const int n = g.n();
  if (n > 200) throw std::runtime_error("exact_meeting_expectation guarded to n <= 200");
  MeetingExpectation result;
  if (n == 1) return result;

  const Eigen::VectorXd h = solve_pair_hitting(g);
  auto index = [n](int x, int y) { return x * (n - 1) + (y < x ? y : y - 1); };
  double expectation = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      expectation += dist.pi[x] * dist.pi[y] * h(index(x, y));
    }
  }
  result.discrete = expectation;
  result.continuous = 0.5 * expectation;
  return result;
}

double exact_collapsed_hitting_expectation(const CollapsedChain& chain,
                                           const StationaryDist& dist) {
  const int n = chain.n();
  if (n > 64) throw std::runtime_error("exact_collapsed_hitting_expectation guarded to n <= 64");
  const auto stat = stationary_collapsed(chain, dist);
  if (n == 1) return 0.0;

  // Killed transition matrix assembled from the chain's own operator, one
  // basis row at a time; this side never touches P directly.
  const std::size_t states = chain.state_count();
  const std::size_t off = states - 1;  // pair states, diagonal excluded
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(off, off);
  std::vector<double> basis(states, 0.0), row;
  for (std::size_t i = 0; i < off; ++i) {
    basis[i] = 1.0;
    chain.apply_killed(basis, row);
    basis[i] = 0.0;
    for (std::size_t j = 0; j < off; ++j) A(i, j) -= row[j];
  }
  const Eigen::VectorXd h = A.partialPivLu().solve(Eigen::VectorXd::Ones(off));

  double expectation = 0.0;
  for (std::size_t i = 0; i < off; ++i) expectation += stat.pi_tilde[i] * h(i);
  return expectation;
}

}  // namespace dcm
