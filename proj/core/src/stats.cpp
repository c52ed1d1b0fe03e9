#include "dcm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "dcm/rng.hpp"

namespace dcm {
namespace {

/// Geometric on {1,2,...} with success probability p: ceil(log U / log(1-p)).
long geometric(Rng& rng, double p) {
  if (p >= 1.0) return 1;
  const double g = std::ceil(std::log(rng.uniform_pos()) / std::log1p(-p));
  return g < 1.0 ? 1 : static_cast<long>(g);
}

double kingman_tail(Rng& rng, long from_k, int k_max) {
  double sum = 0.0;
  for (long k = from_k; k <= k_max; ++k)
    sum += rng.exponential(0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
  return sum;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

std::vector<double> sample_reference(const ReferenceDist& ref, long trials,
                                     std::uint64_t seed) {
  if (ref.kind != ReferenceDist::Kind::kExp1 && ref.k_max < 2)
    throw std::invalid_argument("truncation k_max must be at least 2");
  if (ref.kind == ReferenceDist::Kind::kConsensusSum && !(ref.u > 0.0 && ref.u < 1.0))
    throw std::invalid_argument("consensus_sum requires u in (0,1)");

  std::vector<double> out(static_cast<std::size_t>(trials));
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    switch (ref.kind) {
      case ReferenceDist::Kind::kExp1:
        out[static_cast<std::size_t>(trial)] = rng.exponential(1.0);
        break;
      case ReferenceDist::Kind::kKingmanSum:
        out[static_cast<std::size_t>(trial)] = kingman_tail(rng, 2, ref.k_max);
        break;
      case ReferenceDist::Kind::kConsensusSum: {
        const long k = rng.bernoulli(ref.u) ? geometric(rng, 1.0 - ref.u)
                                            : geometric(rng, ref.u);
        out[static_cast<std::size_t>(trial)] = kingman_tail(rng, k + 1, ref.k_max);
        break;
      }
    }
  }
  return out;
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein1 on empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  if (na == nb) {
    double sum = 0.0;
    for (std::size_t i = 0; i < na; ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(na);
  }
  // Quantile-function integral on the merged probability grid: both inverse
  // CDFs are step functions constant between grid points.
  double sum = 0.0, u = 0.0;
  std::size_t i = 0, j = 0;
  while (i < na && j < nb) {
    const double ua = static_cast<double>(i + 1) / static_cast<double>(na);
    const double ub = static_cast<double>(j + 1) / static_cast<double>(nb);
    const double next = std::min(ua, ub);
    sum += (next - u) * std::abs(a[i] - b[j]);
    u = next;
    if (ua <= next) ++i;
    if (ub <= next) ++j;
  }
  return sum;
}

double wasserstein1(const std::vector<double>& a, const ReferenceDist& ref,
                    std::uint64_t seed) {
  if (a.empty()) throw std::invalid_argument("wasserstein1 on empty sample");
  return wasserstein1(a, sample_reference(ref, static_cast<long>(a.size()), seed));
}

EmpiricalSummary empirical_summary(const std::vector<double>& values,
                                   const std::vector<char>& censored, int bins) {
  if (values.empty()) throw std::invalid_argument("empirical_summary on empty sample");
  if (bins < 1) throw std::invalid_argument("need at least one histogram bin");

  EmpiricalSummary s;
  s.trials = static_cast<long>(values.size());
  std::vector<double> kept;
  kept.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!censored.empty() && censored[i]) {
      ++s.censored;
    } else {
      kept.push_back(values[i]);
    }
  }
  if (kept.empty()) throw std::invalid_argument("all values censored");

  double sum = 0.0;
  for (double v : kept) sum += v;
  s.mean = sum / static_cast<double>(kept.size());
  double ss = 0.0;
  for (double v : kept) ss += (v - s.mean) * (v - s.mean);
  s.std_error = kept.size() > 1
                    ? std::sqrt(ss / (static_cast<double>(kept.size()) *
                                      static_cast<double>(kept.size() - 1)))
                    : 0.0;

  std::sort(kept.begin(), kept.end());
  const double qs[7] = {0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99};
  for (int k = 0; k < 7; ++k) s.quantiles[k] = quantile_sorted(kept, qs[k]);

  const double lo = kept.front();
  double hi = kept.back();
  if (hi <= lo) hi = lo + 1.0;  // constant sample: one bin of unit width
  s.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b)
    s.bin_edges[static_cast<std::size_t>(b)] =
        lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  s.masses.assign(static_cast<std::size_t>(bins), 0.0);
  for (double v : kept) {
    int b = static_cast<int>(static_cast<double>(bins) * (v - lo) / (hi - lo));
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    s.masses[static_cast<std::size_t>(b)] += 1.0 / static_cast<double>(s.trials);
  }
  return s;
}

void write_histogram_csv(std::ostream& os, const EmpiricalSummary& summary) {
  os << "bin_left,bin_right,mass\n";
  for (std::size_t b = 0; b < summary.masses.size(); ++b)
    os << summary.bin_edges[b] << ',' << summary.bin_edges[b + 1] << ','
       << summary.masses[b] << '\n';
}

}  // namespace dcm
