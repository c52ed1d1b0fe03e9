#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dcm {

/// Reference limit laws for the rescaled stopping times. The two infinite
/// sums are truncated at k_max; the dropped tail has mean 2/k_max.
struct ReferenceDist {
  enum class Kind { kExp1, kKingmanSum, kConsensusSum };
  Kind kind = Kind::kExp1;
  double u = 0.5;     // consensus_sum only
  int k_max = 2000;
};

/// exp1: i.i.d. unit exponentials. kingman_sum: sum_{k=2}^{k_max} of
/// independent Exp(k(k-1)/2). consensus_sum(u): draw K = U A + (1-U) B with
/// U ~ Bernoulli(u), A ~ Geom(1-u) and B ~ Geom(u) on {1,2,...}, then
/// sum_{k=K+1}^{k_max} Exp(k(k-1)/2).
std::vector<double> sample_reference(const ReferenceDist& ref, long trials,
                                     std::uint64_t seed);

/// L1 Wasserstein distance between empirical samples: mean absolute sorted
/// difference at equal sizes, quantile-function integral otherwise.
double wasserstein1(std::vector<double> a, std::vector<double> b);

/// Against a reference law a matched-size sample is drawn internally.
double wasserstein1(const std::vector<double>& a, const ReferenceDist& ref,
                    std::uint64_t seed);

struct EmpiricalSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double quantiles[7] = {0, 0, 0, 0, 0, 0, 0};  // 1,5,25,50,75,95,99 percent
  std::vector<double> bin_edges;                // bins + 1 entries
  std::vector<double> masses;                   // sum = 1 - censored fraction
  long trials = 0;
  long censored = 0;
};

/// Histogram and quantiles over the uncensored values; masses are normalized
/// by the full trial count so censoring shows up as missing mass.
EmpiricalSummary empirical_summary(const std::vector<double>& values,
                                   const std::vector<char>& censored, int bins);

/// CSV `bin_left,bin_right,mass`.
void write_histogram_csv(std::ostream& os, const EmpiricalSummary& summary);

}  // namespace dcm
