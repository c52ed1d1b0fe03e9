#include "dcm/degseq.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dcm {

namespace {

// Kahan compensated summation; beta involves squared degrees at n up to 1e6.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

void check_balance(const DegreeSequence& seq) {
  const std::int64_t mp = std::accumulate(seq.out_degrees.begin(), seq.out_degrees.end(),
                                          std::int64_t{0});
  const std::int64_t mm = std::accumulate(seq.in_degrees.begin(), seq.in_degrees.end(),
                                          std::int64_t{0});
  if (mp != mm) {
    throw std::invalid_argument("degree sequence unbalanced: sum d+ = " + std::to_string(mp) +
                                ", sum d- = " + std::to_string(mm));
  }
  if (seq.out_degrees.size() != seq.in_degrees.size()) {
    throw std::invalid_argument("out/in degree vectors differ in length");
  }
  for (int d : seq.out_degrees) {
    if (d < 1) throw std::invalid_argument("all out-degrees must be >= 1");
  }
  for (int d : seq.in_degrees) {
    if (d < 0) throw std::invalid_argument("in-degrees must be >= 0");
  }
}

}  // namespace

std::int64_t DegreeSequence::m() const {
  return std::accumulate(out_degrees.begin(), out_degrees.end(), std::int64_t{0});
}

int DegreeSequence::out_degree_max() const {
  return *std::max_element(out_degrees.begin(), out_degrees.end());
}
int DegreeSequence::in_degree_max() const {
  return *std::max_element(in_degrees.begin(), in_degrees.end());
}
int DegreeSequence::out_degree_min() const {
  return *std::min_element(out_degrees.begin(), out_degrees.end());
}

DegreeSequence make_regular(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("regular family needs d >= 1, n >= 1");
  DegreeSequence seq{std::vector<int>(n, d), std::vector<int>(n, d)};
  return seq;
}

DegreeSequence make_alternate(int a, int b, int n) {
  if (n % 2 != 0) throw std::invalid_argument("alternate family needs even n");
  if (a < 1 || b < 1) throw std::invalid_argument("alternate family needs a, b >= 1");
  DegreeSequence seq;
  seq.out_degrees.assign(n, a);
  seq.in_degrees.assign(n, b);
  for (int x = n / 2; x < n; ++x) {
    seq.out_degrees[x] = b;
    seq.in_degrees[x] = a;
  }
  return seq;
}

DegreeSequence make_eulerian(std::vector<int> degrees) {
  DegreeSequence seq{degrees, std::move(degrees)};
  check_balance(seq);
  return seq;
}

DegreeSequence make_out_regular(int d, std::vector<int> in_degrees) {
  DegreeSequence seq{std::vector<int>(in_degrees.size(), d), std::move(in_degrees)};
  check_balance(seq);
  return seq;
}

DegreeSequence make_in_regular(std::vector<int> out_degrees, int d) {
  DegreeSequence seq{std::move(out_degrees), {}};
  seq.in_degrees.assign(seq.out_degrees.size(), d);
  check_balance(seq);
  return seq;
}

DegreeSequence make_custom(std::vector<int> out_degrees, std::vector<int> in_degrees) {
  DegreeSequence seq{std::move(out_degrees), std::move(in_degrees)};
  check_balance(seq);
  return seq;
}

DegreeStats degree_stats(const DegreeSequence& seq) {
  const int n = seq.n();
  const double m = static_cast<double>(seq.m());
  if (n == 0 || m == 0) throw std::invalid_argument("empty degree sequence");

  DegreeStats st;
  st.mu_in.resize(n);
  CompensatedSum beta_sum, rho_sum, gamma_sum;
  for (int x = 0; x < n; ++x) {
    const double dm = seq.in_degrees[x];
    const double dp = seq.out_degrees[x];
    st.mu_in[x] = dm / m;
    beta_sum.add(dm * dm);
    rho_sum.add(dm / dp);
    gamma_sum.add(dm * dm / dp);
  }
  st.delta = m / n;
  st.beta = beta_sum.value() / m;
  st.rho = rho_sum.value() / m;
  st.gamma = gamma_sum.value() / m;
  st.alpha = (st.gamma - st.rho) / (1.0 - st.rho);
  return st;
}

ValidationReport validate(const DegreeSequence& seq, ValidationMode mode, double C, double eps) {
  ValidationReport report;
  report.mode = mode;
  const int n = seq.n();

  const auto argmin_out = static_cast<int>(
      std::min_element(seq.out_degrees.begin(), seq.out_degrees.end()) - seq.out_degrees.begin());
  const auto argmax_out = static_cast<int>(
      std::max_element(seq.out_degrees.begin(), seq.out_degrees.end()) - seq.out_degrees.begin());
  const auto argmax_in = static_cast<int>(
      std::max_element(seq.in_degrees.begin(), seq.in_degrees.end()) - seq.in_degrees.begin());

  report.conditions.push_back({"(a)", seq.out_degrees[argmin_out] >= 2, argmin_out,
                               static_cast<double>(seq.out_degrees[argmin_out]), 2.0});
  report.conditions.push_back({"(b)", seq.out_degrees[argmax_out] <= C, argmax_out,
                               static_cast<double>(seq.out_degrees[argmax_out]), C});
  if (mode == ValidationMode::kStrict) {
    report.conditions.push_back({"(c)", seq.in_degrees[argmax_in] <= C, argmax_in,
                                 static_cast<double>(seq.in_degrees[argmax_in]), C});
  } else {
    CompensatedSum moment;
    for (int d : seq.in_degrees) moment.add(std::pow(static_cast<double>(d), 2.0 + eps));
    report.conditions.push_back({"(c')", moment.value() <= C * n, argmax_in, moment.value(),
                                 C * n});
    const double cap = C * std::pow(static_cast<double>(n), 1.0 / 3.0 - eps);
    report.conditions.push_back({"(d)", seq.in_degrees[argmax_in] <= cap, argmax_in,
                                 static_cast<double>(seq.in_degrees[argmax_in]), cap});
  }
  report.all_pass = std::all_of(report.conditions.begin(), report.conditions.end(),
                                [](const ConditionResult& c) { return c.pass; });
  return report;
}

void write_degseq_csv(std::ostream& os, const DegreeSequence& seq) {
  os << "v,dplus,dminus\n";
  for (int x = 0; x < seq.n(); ++x) {
    os << x << ',' << seq.out_degrees[x] << ',' << seq.in_degrees[x] << '\n';
  }
}

DegreeSequence read_degseq_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("v,dplus,dminus", 0) != 0) {
    throw std::invalid_argument("degree CSV must start with header v,dplus,dminus");
  }
  std::vector<int> out, in;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // vertex id, positional
    std::getline(row, field, ',');
    out.push_back(std::stoi(field));
    std::getline(row, field, ',');
    in.push_back(std::stoi(field));
  }
  return make_custom(std::move(out), std::move(in));
}

}  // namespace dcm
