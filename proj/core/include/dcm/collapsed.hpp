#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcm/graph.hpp"
#include "dcm/stationary.hpp"

namespace dcm {

/// Exact collapsed pair chain on ([n]^2 minus the diagonal) plus one merged
/// diagonal state. Off-diagonal transitions are those of the asynchronous
/// product chain; hitting the diagonal triggers a reset draw from mu.
class CollapsedChain {
 public:
  CollapsedChain(const Digraph& g, std::vector<double> reset);

  int n() const { return g_->n(); }
  std::size_t state_count() const { return static_cast<std::size_t>(n()) * (n() - 1) + 1; }
  std::size_t diagonal_state() const { return state_count() - 1; }
  std::size_t pair_index(int x, int y) const;  // x != y

  const std::vector<double>& reset() const { return reset_; }
  const Digraph& graph() const { return *g_; }

  /// out = in * P_tilde (row-distribution step).
  void apply(const std::vector<double>& in, std::vector<double>& out) const;

  /// Same but transitions into the diagonal state are dropped (absorbed);
  /// out[diagonal] stays 0. Used for hitting-time tails.
  void apply_killed(const std::vector<double>& in, std::vector<double>& out) const;

 private:
  const Digraph* g_;
  std::vector<double> reset_;
  std::vector<double> reset_cdf_unused_;  // reserved
};

/// Guarded to n <= 2000 (dense pair indexing). Default reset is mu_tilde.
CollapsedChain build_collapsed(const Digraph& g,
                               std::optional<std::vector<double>> reset = std::nullopt);
CollapsedChain build_collapsed(const Digraph& g, const StationaryDist& dist);

struct CollapsedStationaryReport {
  bool conditions_hold = false;
  double max_offdiag_deviation = 0.0;  // |pi_tilde(x,y) - pi(x) pi(y)|
  double diagonal_deviation = 0.0;     // |pi_tilde(diag) - <pi^2>|
  std::vector<double> pi_tilde;
};

/// Verifies conditions on the collapsed stationary law (reset must be mu_tilde).
CollapsedStationaryReport stationary_collapsed(const CollapsedChain& chain,
                                               const StationaryDist& dist,
                                               double tol = 1e-10);

struct RtResult {
  double value = 0.0;         // sum_{t<=T} P_tilde^t(diag, diag)
  long steps_computed = 0;    // iterations actually run
  bool extrapolated = false;  // tail summed as (T - t0) * stationary return mass
};

/// Truncated Green function at the diagonal. Once the return mass is
/// stationary to machine precision the remaining terms are summed in closed form.
RtResult r_t(const CollapsedChain& chain, long T);

struct FvtlReport {
  double lambda = 0.0;     // pi_tilde(diag) / R_T(diag)
  double sup_error = 0.0;  // sup_t |P(tau > t) / (1 - lambda)^t - 1|
  long t_max = 0;
};

/// Geometric-law quality of the diagonal hitting time from stationarity.
/// Exact tail via killed evolution; n <= 200.
FvtlReport fvtl_lambda(const CollapsedChain& chain, const StationaryDist& dist, long T,
                       std::optional<long> t_max = std::nullopt);

struct MeetingExpectation {
  double discrete = 0.0;    // E_{pi x pi}[tau_meet], asynchronous product chain
  double continuous = 0.0;  // discrete / 2
};

/// Independent dense linear solve of the absorbing system on off-diagonal
/// pairs; n <= 200.
MeetingExpectation exact_meeting_expectation(const Digraph& g, const StationaryDist& dist);

/// E_{pi_tilde}[tau_diag] for the collapsed chain by dense linear solve; the
/// companion side of the meeting-time identity.
double exact_collapsed_hitting_expectation(const CollapsedChain& chain,
                                           const StationaryDist& dist);

}  // namespace dcm
