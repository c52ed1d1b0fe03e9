#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dcm/degseq.hpp"
#include "dcm/graph.hpp"
#include "dcm/stationary.hpp"

namespace dcm {

enum class SampleKind { kMeeting, kCoalescence, kConsensus };

/// Discrete counts product-chain steps (one walker moves per step); continuous
/// embeds the same jump chain with exponential holding times, so continuous
/// expectations are half the discrete ones for the two-walk dynamics.
enum class TimeMode { kContinuous, kDiscrete };

struct StoppingTimeSample {
  SampleKind kind = SampleKind::kMeeting;
  std::vector<double> values;          // per trial, indexed by trial
  std::vector<char> censored;          // 1 = hit the event cap before stopping
  std::vector<char> consensus_values;  // voter only: the winning opinion
  std::uint64_t seed = 0;

  long censored_count() const;
  double mean() const;        // censored trials excluded
  double std_error() const;  // censored trials excluded
};

struct SimOptions {
  long trials = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::int64_t event_cap = 0;  // 0 -> 10^6 * n events per trial
  TimeMode time_mode = TimeMode::kContinuous;
};

/// Two independent walks started i.i.d. from pi; stops at the first
/// coincidence. Continuous time: total rate 2, uniform walker choice.
StoppingTimeSample simulate_meeting(const Digraph& g, const StationaryDist& dist,
                                    const SimOptions& opt);

/// One walker per vertex; clusters merge on coincidence; stops when a single
/// cluster remains. Total event rate = number of live clusters.
StoppingTimeSample simulate_coalescence(const Digraph& g, const SimOptions& opt);

/// Voter model: i.i.d. Bernoulli(u) opinions, rate-1 clock per vertex, the
/// ringing vertex adopts the opinion across a uniform out-edge. Stops at the
/// first monochromatic configuration.
StoppingTimeSample simulate_voter(const Digraph& g, double u, const SimOptions& opt);

struct DualityReport {
  long trials = 0;
  long violations = 0;
  long first_failure_trial = -1;
  std::string detail;  // counterexample dump for the first violation
};

/// Shared Poisson clocks (rate 1/d+_src per directed edge) drive the voter
/// model forward and coalescing walks backward in time; asserts the pathwise
/// duality eta_T(x) = eta_0(backward endpoint of x) for every vertex.
DualityReport graphical_duality_check(const Digraph& g, double horizon, long trials,
                                      std::uint64_t seed, int workers = 1);

struct RtEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

/// Monte Carlo estimate of R_T = expected visits to the merged diagonal state
/// within T steps of the collapsed chain started there, reset law mu_tilde.
RtEstimate estimate_rt_quenched(const Digraph& g, const StationaryDist& dist, long T,
                                long trials, std::uint64_t seed, int workers = 1);

struct ForestRunStats {
  double reset_count_mean = 0.0;  // includes the visit at time 0
  double reset_count_se = 0.0;
  std::vector<double> first_return_mass;  // index = time; odd entries stay 0
  std::vector<double> first_return_se;
  double no_return_mass = 0.0;  // first segment deviated (or ran past T)
  long trials = 0;
  double q_in = 0.0;  // sum_x mu(x) / d+_x for the reset law in force
};

/// Annealed two-flag chase in collapsed distance coordinates: root out-degree
/// from the reset law (default: in-stub biased), fresh on-path vertices from
/// the in-stub biased law, fair coin picks the moving flag, red follows the
/// recorded edge with probability 1/d+ and deviates permanently otherwise.
/// `reset_degree_law`, when given, is a weight per out-degree value (index =
/// degree) replacing the in-stub biased root law.
ForestRunStats simulate_forest(const DegreeSequence& seq,
                               const std::vector<double>* reset_degree_law, long T,
                               long trials, std::uint64_t seed, int workers = 1);

/// Runs trials [0, trials) with per-trial streams hash(seed, trial); results
/// must be written by trial index so worker count never changes the output.
void run_trials(long trials, int workers, const std::function<void(long)>& per_trial);

}  // namespace dcm
