#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dcm {

/// Paired out/in degree vectors. Balance (sum of out == sum of in) is a
/// construction invariant; every factory below enforces it.
struct DegreeSequence {
  std::vector<int> out_degrees;
  std::vector<int> in_degrees;

  int n() const { return static_cast<int>(out_degrees.size()); }
  std::int64_t m() const;

  int out_degree_max() const;
  int in_degree_max() const;
  int out_degree_min() const;
};

DegreeSequence make_regular(int d, int n);
/// First n/2 vertices get (d+, d-) = (a, b), the rest (b, a). n must be even.
DegreeSequence make_alternate(int a, int b, int n);
/// d+_x = d-_x = degrees[x].
DegreeSequence make_eulerian(std::vector<int> degrees);
DegreeSequence make_out_regular(int d, std::vector<int> in_degrees);
DegreeSequence make_in_regular(std::vector<int> out_degrees, int d);
/// Arbitrary paired sequence; throws if unbalanced.
DegreeSequence make_custom(std::vector<int> out_degrees, std::vector<int> in_degrees);

/// The five scalar degree functionals plus the in-degree sampling law.
struct DegreeStats {
  double delta;   // mean degree m/n
  double beta;    // (1/m) * sum (d-)^2
  double rho;     // sum mu_in(x) / d+_x
  double gamma;   // sum mu_in(x) d-_x / d+_x
  double alpha;   // (gamma - rho) / (1 - rho), in/out correlation measure
  std::vector<double> mu_in;  // d-_x / m
};

DegreeStats degree_stats(const DegreeSequence& seq);

enum class ValidationMode { kStrict, kRelaxed };

struct ConditionResult {
  std::string name;     // "(a)", "(b)", "(c)", "(c')", "(d)"
  bool pass;
  int witness;          // extremal vertex (most violating / tightest)
  double value;         // measured quantity
  double bound;         // required bound
};

struct ValidationReport {
  ValidationMode mode;
  bool all_pass;
  std::vector<ConditionResult> conditions;
};

/// Strict mode checks (a) d+_min >= 2, (b) d+_max <= C, (c) d-_max <= C.
/// Relaxed mode replaces (c) by (c') sum (d-)^{2+eps} <= C n and adds
/// (d) d-_max <= C n^{1/3 - eps}.
ValidationReport validate(const DegreeSequence& seq, ValidationMode mode, double C,
                          double eps = 0.1);

/// CSV with header `v,dplus,dminus`.
void write_degseq_csv(std::ostream& os, const DegreeSequence& seq);
DegreeSequence read_degseq_csv(std::istream& is);

}  // namespace dcm
