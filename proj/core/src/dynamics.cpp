#include "dcm/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dcm/rng.hpp"

namespace dcm {
namespace {

std::int64_t effective_cap(const SimOptions& opt, int n) {
  return opt.event_cap > 0 ? opt.event_cap : static_cast<std::int64_t>(1000000) * n;
}

double mean_of(const std::vector<double>& values, const std::vector<char>& censored) {
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (censored[i]) continue;
    sum += values[i];
    ++count;
  }
  if (count == 0) throw std::runtime_error("all trials censored");
  return sum / static_cast<double>(count);
}

}  // namespace

long StoppingTimeSample::censored_count() const {
  long c = 0;
  for (char flag : censored) c += flag ? 1 : 0;
  return c;
}

double StoppingTimeSample::mean() const { return mean_of(values, censored); }

double StoppingTimeSample::std_error() const {
  const double m = mean_of(values, censored);
  double ss = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (censored[i]) continue;
    ss += (values[i] - m) * (values[i] - m);
    ++count;
  }
  if (count < 2) return 0.0;
  return std::sqrt(ss / (static_cast<double>(count) * (count - 1)));
}

void run_trials(long trials, int workers, const std::function<void(long)>& per_trial) {
  if (workers <= 1 || trials < 2) {
    for (long t = 0; t < trials; ++t) per_trial(t);
    return;
  }
  std::atomic<long> next{0};
  constexpr long kBlock = 16;
  auto loop = [&] {
    for (;;) {
      const long start = next.fetch_add(kBlock);
      if (start >= trials) return;
      const long stop = std::min(trials, start + kBlock);
      for (long t = start; t < stop; ++t) per_trial(t);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& th : pool) th.join();
}

StoppingTimeSample simulate_meeting(const Digraph& g, const StationaryDist& dist,
                                    const SimOptions& opt) {
  const int n = g.n();
  const std::int64_t cap = effective_cap(opt, n);
  const std::vector<double> pi_cdf = cumulative(dist.pi);
  StoppingTimeSample out;
  out.kind = SampleKind::kMeeting;
  out.seed = opt.seed;
  out.values.assign(static_cast<std::size_t>(opt.trials), 0.0);
  out.censored.assign(static_cast<std::size_t>(opt.trials), 0);

  run_trials(opt.trials, opt.workers, [&](long trial) {
    Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(trial));
    int x = static_cast<int>(rng.from_cdf(pi_cdf));
    int y = static_cast<int>(rng.from_cdf(pi_cdf));
    double t = 0.0;
    std::int64_t events = 0;
    while (x != y) {
      if (++events > cap) {
        out.censored[static_cast<std::size_t>(trial)] = 1;
        break;
      }
      t += opt.time_mode == TimeMode::kContinuous ? rng.exponential(2.0) : 1.0;
      int& mover = (rng.next() & 1u) ? x : y;
      mover = g.neighbor(mover, static_cast<int>(rng.below(
                                    static_cast<std::uint64_t>(g.out_degree(mover)))));
    }
    out.values[static_cast<std::size_t>(trial)] = t;
  });
  return out;
}

StoppingTimeSample simulate_coalescence(const Digraph& g, const SimOptions& opt) {
  const int n = g.n();
  const std::int64_t cap = effective_cap(opt, n);
  StoppingTimeSample out;
  out.kind = SampleKind::kCoalescence;
  out.seed = opt.seed;
  out.values.assign(static_cast<std::size_t>(opt.trials), 0.0);
  out.censored.assign(static_cast<std::size_t>(opt.trials), 0);

  run_trials(opt.trials, opt.workers, [&](long trial) {
    Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(trial));
    // Live clusters in a swap-remove vector; occupant maps vertex -> cluster.
    std::vector<int> position(static_cast<std::size_t>(n));
    std::vector<int> occupant(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      position[static_cast<std::size_t>(v)] = v;
      occupant[static_cast<std::size_t>(v)] = v;
    }
    int live = n;
    double t = 0.0;
    std::int64_t events = 0;
    while (live > 1) {
      if (++events > cap) {
        out.censored[static_cast<std::size_t>(trial)] = 1;
        break;
      }
      t += opt.time_mode == TimeMode::kContinuous
               ? rng.exponential(static_cast<double>(live))
               : 1.0;
      const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(live)));
      const int from = position[static_cast<std::size_t>(c)];
      const int to = g.neighbor(
          from, static_cast<int>(rng.below(static_cast<std::uint64_t>(g.out_degree(from)))));
      if (to == from) continue;
      occupant[static_cast<std::size_t>(from)] = -1;
      const int other = occupant[static_cast<std::size_t>(to)];
      if (other >= 0) {
        // Merge: drop cluster c by swapping in the last live cluster.
        --live;
        position[static_cast<std::size_t>(c)] = position[static_cast<std::size_t>(live)];
        if (occupant[static_cast<std::size_t>(position[static_cast<std::size_t>(c)])] == live)
          occupant[static_cast<std::size_t>(position[static_cast<std::size_t>(c)])] = c;
      } else {
        position[static_cast<std::size_t>(c)] = to;
        occupant[static_cast<std::size_t>(to)] = c;
      }
    }
    out.values[static_cast<std::size_t>(trial)] = t;
  });
  return out;
}

StoppingTimeSample simulate_voter(const Digraph& g, double u, const SimOptions& opt) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("voter density u must be in (0,1)");
  const int n = g.n();
  const std::int64_t cap = effective_cap(opt, n);
  StoppingTimeSample out;
  out.kind = SampleKind::kConsensus;
  out.seed = opt.seed;
  out.values.assign(static_cast<std::size_t>(opt.trials), 0.0);
  out.censored.assign(static_cast<std::size_t>(opt.trials), 0);
  out.consensus_values.assign(static_cast<std::size_t>(opt.trials), 0);

  run_trials(opt.trials, opt.workers, [&](long trial) {
    Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(trial));
    std::vector<char> opinion(static_cast<std::size_t>(n));
    int ones = 0;
    for (int v = 0; v < n; ++v) {
      opinion[static_cast<std::size_t>(v)] = rng.bernoulli(u) ? 1 : 0;
      ones += opinion[static_cast<std::size_t>(v)];
    }
    double t = 0.0;
    std::int64_t events = 0;
    while (ones != 0 && ones != n) {
      if (++events > cap) {
        out.censored[static_cast<std::size_t>(trial)] = 1;
        break;
      }
      t += opt.time_mode == TimeMode::kContinuous
               ? rng.exponential(static_cast<double>(n))
               : 1.0;
      const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int y = g.neighbor(
          x, static_cast<int>(rng.below(static_cast<std::uint64_t>(g.out_degree(x)))));
      if (opinion[static_cast<std::size_t>(x)] != opinion[static_cast<std::size_t>(y)]) {
        ones += opinion[static_cast<std::size_t>(y)] ? 1 : -1;
        opinion[static_cast<std::size_t>(x)] = opinion[static_cast<std::size_t>(y)];
      }
    }
    out.values[static_cast<std::size_t>(trial)] = t;
    out.consensus_values[static_cast<std::size_t>(trial)] =
        ones == n ? 1 : (ones == 0 ? 0 : opinion[0]);
  });
  return out;
}

DualityReport graphical_duality_check(const Digraph& g, double horizon, long trials,
                                      std::uint64_t seed, int workers) {
  if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
  const int n = g.n();
  const std::int64_t m = g.m();
  std::vector<int> src(static_cast<std::size_t>(m));
  for (int v = 0; v < n; ++v)
    for (int k = g.tail_offset[v]; k < g.tail_offset[v + 1]; ++k)
      src[static_cast<std::size_t>(k)] = v;

  DualityReport report;
  report.trials = trials;
  std::atomic<long> violations{0};
  std::mutex detail_mutex;

  run_trials(trials, workers, [&](long trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    // One Poisson clock per directed edge, rate 1/d+ of the source vertex.
    std::vector<std::pair<double, int>> events;
    for (std::int64_t e = 0; e < m; ++e) {
      const double rate = 1.0 / g.out_degree(src[static_cast<std::size_t>(e)]);
      for (double t = rng.exponential(rate); t < horizon; t += rng.exponential(rate))
        events.emplace_back(t, static_cast<int>(e));
    }
    std::sort(events.begin(), events.end());

    std::vector<char> eta0(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) eta0[static_cast<std::size_t>(v)] = rng.bernoulli(0.5) ? 1 : 0;

    // Forward voter: when edge x->y rings, x adopts y's opinion.
    std::vector<char> eta = eta0;
    for (const auto& [t, e] : events) {
      const int x = src[static_cast<std::size_t>(e)];
      eta[static_cast<std::size_t>(x)] = eta[static_cast<std::size_t>(g.destination[e])];
    }

    // Backward coalescing walks: reversed time, same arrows tail -> head.
    std::vector<int> endpoint(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) endpoint[static_cast<std::size_t>(v)] = v;
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
      const int x = src[static_cast<std::size_t>(it->second)];
      const int y = g.destination[it->second];
      for (int s = 0; s < n; ++s)
        if (endpoint[static_cast<std::size_t>(s)] == x) endpoint[static_cast<std::size_t>(s)] = y;
    }

    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      ok = eta[static_cast<std::size_t>(v)] ==
           eta0[static_cast<std::size_t>(endpoint[static_cast<std::size_t>(v)])];
    bool coalesced = true;
    for (int v = 1; v < n; ++v)
      coalesced = coalesced && endpoint[static_cast<std::size_t>(v)] == endpoint[0];
    if (ok && coalesced) {
      for (int v = 1; v < n; ++v)
        ok = ok && eta[static_cast<std::size_t>(v)] == eta[0];
    }
    if (!ok) {
      violations.fetch_add(1);
      std::lock_guard<std::mutex> lock(detail_mutex);
      if (report.first_failure_trial < 0 || trial < report.first_failure_trial) {
        report.first_failure_trial = trial;
        std::ostringstream dump;
        dump << "trial " << trial << ": " << events.size() << " events; eta0=";
        for (char b : eta0) dump << int(b);
        dump << " etaT=";
        for (char b : eta) dump << int(b);
        dump << " endpoints=";
        for (int v = 0; v < n; ++v) dump << endpoint[static_cast<std::size_t>(v)] << (v + 1 < n ? "," : "");
        dump << " events=";
        for (const auto& [t, e] : events)
          dump << "(" << t << "," << src[static_cast<std::size_t>(e)] << "->"
               << g.destination[e] << ")";
        report.detail = dump.str();
      }
    }
  });
  report.violations = violations.load();
  return report;
}

RtEstimate estimate_rt_quenched(const Digraph& g, const StationaryDist& dist, long T,
                                long trials, std::uint64_t seed, int workers) {
  const int n = g.n();
  const std::vector<double> reset_cdf = cumulative(dist.mu_tilde);
  std::vector<double> counts(static_cast<std::size_t>(trials), 0.0);

  run_trials(trials, workers, [&](long trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    long visits = 1;  // the chain starts at the merged state, time 0 counts
    int x = -1, y = -1;
    bool at_diag = true;
    for (long t = 1; t <= T; ++t) {
      if (at_diag) {
        const int z = static_cast<int>(rng.from_cdf(reset_cdf));
        const int w = g.neighbor(
            z, static_cast<int>(rng.below(static_cast<std::uint64_t>(g.out_degree(z)))));
        if (w == z) {
          ++visits;  // self-loop: the mover lands back on its partner
        } else {
          at_diag = false;
          x = z;
          y = w;
        }
      } else {
        int& mover = (rng.next() & 1u) ? x : y;
        mover = g.neighbor(mover, static_cast<int>(rng.below(
                                      static_cast<std::uint64_t>(g.out_degree(mover)))));
        if (x == y) {
          at_diag = true;
          ++visits;
        }
      }
    }
    counts[static_cast<std::size_t>(trial)] = static_cast<double>(visits);
  });

  RtEstimate est;
  est.trials = trials;
  double sum = 0.0;
  for (double c : counts) sum += c;
  est.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double c : counts) ss += (c - est.mean) * (c - est.mean);
  est.std_error = trials > 1
                      ? std::sqrt(ss / (static_cast<double>(trials) * (trials - 1)))
                      : 0.0;
  return est;
}

namespace {

/// Out-degree law as (values, cdf) for CDF-index sampling.
struct DegreeLaw {
  std::vector<int> degrees;
  std::vector<double> cdf;
  double mean_inverse = 0.0;  // sum_k law(k) / k
};

DegreeLaw make_law(const std::map<int, double>& weight_by_degree) {
  DegreeLaw law;
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& [d, w] : weight_by_degree) {
    if (w <= 0.0) continue;
    law.degrees.push_back(d);
    weights.push_back(w);
    total += w;
  }
  if (law.degrees.empty()) throw std::invalid_argument("degree law has no mass");
  law.cdf = cumulative(weights);
  for (std::size_t i = 0; i < weights.size(); ++i)
    law.mean_inverse += (weights[i] / total) / law.degrees[i];
  return law;
}

}  // namespace

ForestRunStats simulate_forest(const DegreeSequence& seq,
                               const std::vector<double>* reset_degree_law, long T,
                               long trials, std::uint64_t seed, int workers) {
  if (T < 2) throw std::invalid_argument("forest horizon T must be at least 2");
  const double m = static_cast<double>(seq.m());

  // In-stub biased out-degree law: lambda(k) = sum_x (d-_x / m) 1(d+_x = k).
  std::map<int, double> biased_weights;
  for (int v = 0; v < seq.n(); ++v)
    biased_weights[seq.out_degrees[static_cast<std::size_t>(v)]] +=
        seq.in_degrees[static_cast<std::size_t>(v)] / m;
  const DegreeLaw biased = make_law(biased_weights);

  DegreeLaw root = biased;
  if (reset_degree_law != nullptr) {
    std::map<int, double> root_weights;
    for (std::size_t d = 0; d < reset_degree_law->size(); ++d)
      if ((*reset_degree_law)[d] > 0.0) {
        if (d == 0) throw std::invalid_argument("reset law puts mass on out-degree 0");
        root_weights[static_cast<int>(d)] = (*reset_degree_law)[d];
      }
    root = make_law(root_weights);
  }

  std::vector<double> resets(static_cast<std::size_t>(trials), 0.0);
  std::vector<long> first_return(static_cast<std::size_t>(trials), -1);

  run_trials(trials, workers, [&](long trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    long t = 0;
    double reset_count = 1.0;  // the visit at time 0
    bool first_segment = true;
    // Out-degrees along the chased ray, red's current vertex at the front,
    // blue's current vertex at the back; distance = size - 1.
    std::deque<int> ray;
    bool done = false;
    while (!done && t < T) {
      // Segment start: root draw plus the forced first blue step.
      ++t;
      ray.clear();
      ray.push_back(root.degrees[rng.from_cdf(root.cdf)]);
      ray.push_back(biased.degrees[rng.from_cdf(biased.cdf)]);
      while (t < T) {
        ++t;
        if (rng.next() & 1u) {
          ray.push_back(biased.degrees[rng.from_cdf(biased.cdf)]);  // blue extends
        } else if (rng.below(static_cast<std::uint64_t>(ray.front())) == 0) {
          ray.pop_front();  // red follows the recorded edge
          if (ray.size() == 1) {
            reset_count += 1.0;
            if (first_segment) {
              first_return[static_cast<std::size_t>(trial)] = t;
              first_segment = false;
            }
            break;  // meeting: start a new tree
          }
        } else {
          done = true;  // permanent deviation: no further visits ever
          break;
        }
      }
      if (!done && t >= T && ray.size() > 1) break;
    }
    resets[static_cast<std::size_t>(trial)] = reset_count;
  });

  ForestRunStats stats;
  stats.trials = trials;
  stats.q_in = root.mean_inverse;
  double sum = 0.0;
  for (double r : resets) sum += r;
  stats.reset_count_mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double r : resets) ss += (r - stats.reset_count_mean) * (r - stats.reset_count_mean);
  stats.reset_count_se = trials > 1
                             ? std::sqrt(ss / (static_cast<double>(trials) * (trials - 1)))
                             : 0.0;
  stats.first_return_mass.assign(static_cast<std::size_t>(T) + 1, 0.0);
  stats.first_return_se.assign(static_cast<std::size_t>(T) + 1, 0.0);
  long returned = 0;
  for (long fr : first_return)
    if (fr >= 0) {
      stats.first_return_mass[static_cast<std::size_t>(fr)] += 1.0;
      ++returned;
    }
  for (std::size_t i = 0; i < stats.first_return_mass.size(); ++i) {
    const double p = stats.first_return_mass[i] / static_cast<double>(trials);
    stats.first_return_mass[i] = p;
    stats.first_return_se[i] = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  stats.no_return_mass =
      1.0 - static_cast<double>(returned) / static_cast<double>(trials);
  return stats;
}

}  // namespace dcm
