#include "dcm/theory.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace dcm {

TheoryConstants theory_constants(const DegreeStats& stats) {
  const double rho = stats.rho;
  if (!(rho > 0.0 && rho <= 0.5)) {
    throw std::domain_error("theory_constants requires rho in (0, 1/2]");
  }
  const double alpha = (stats.gamma - rho) / (1.0 - rho);
  TheoryConstants c;
  c.p_frak = (alpha + stats.beta - 1.0) / stats.delta;
  c.q_frak = (stats.gamma - rho) / (stats.gamma - rho + (stats.beta - 1.0) * (1.0 - rho));
  c.r_frak = rho / (rho - c.q_frak * (1.0 - std::sqrt(1.0 - rho)));
  c.theta = c.r_frak / c.p_frak;
  c.phi = c.r_frak - 1.0;
  return c;
}

TheoryConstants theory_constants(const DegreeSequence& seq) {
  return theory_constants(degree_stats(seq));
}

double epsilon_fn(double x) {
  if (x < 0.0 || x > 0.5) throw std::domain_error("epsilon_fn domain is [0, 1/2]");
  if (x < 1e-8) return 0.5 + x / 8.0;  // removable singularity, Taylor to O(x^2)
  return (1.0 - std::sqrt(1.0 - x)) / x;
}

double theta_design_route(const DegreeStats& stats) {
  const double alpha = (stats.gamma - stats.rho) / (1.0 - stats.rho);
  return stats.delta / ((1.0 - epsilon_fn(stats.rho)) * alpha + stats.beta - 1.0);
}

double theta_regular(int d) {
  if (d < 2) throw std::domain_error("theta_regular requires d >= 2");
  return std::sqrt(static_cast<double>(d) / (d - 1));
}

double theta_out_regular(int d, double beta) {
  if (d < 2) throw std::domain_error("theta_out_regular requires d >= 2");
  if (beta <= 1.0) throw std::domain_error("theta_out_regular requires beta > 1");
  return std::sqrt(static_cast<double>(d) * (d - 1)) / (beta - 1.0);
}

double theta_in_regular(int d, double rho) {
  if (d < 2) throw std::domain_error("theta_in_regular requires d >= 2");
  if (d == 2) return std::sqrt(2.0);  // rho is forced to 1/2 and drops out
  if (!(rho > 0.0 && rho <= 0.5)) throw std::domain_error("theta_in_regular requires rho in (0, 1/2]");
  return d * std::sqrt(1.0 - rho) / (d - 1);
}

double theta_eulerian(double delta, double beta) {
  if (delta <= 1.0) throw std::domain_error("theta_eulerian requires delta > 1");
  return 1.0 / (beta / delta - 1.0 + std::sqrt(1.0 - 1.0 / delta));
}

double theta_undirected_regular(int d) {
  if (d < 3) throw std::domain_error("theta_undirected_regular requires d >= 3");
  return static_cast<double>(d - 1) / (d - 2);
}

double return_law(long t, double rho, double q) {
  if (t < 1) throw std::domain_error("return_law requires t >= 1");
  if (!(rho > 0.0 && rho <= 0.5)) throw std::domain_error("return_law requires rho in (0, 1/2]");
  // q = 1 is admitted: the Catalan partial-sum identity evaluates there.
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("return_law requires q in (0, 1]");
  if (t <= 500) {
    // Catalan recurrence C_s = C_{s-1} * 2(2s-1)/(s+1), folded with the
    // geometric factors to stay in range.
    double value = 0.5 * q;  // t = 1: 2^{-1} C_0 rho^0 q
    for (long s = 1; s < t; ++s) {
      value *= (2.0 * (2.0 * s - 1.0) / (s + 1.0)) * 0.25 * rho;
    }
    return value;
  }
  // log C_{t-1} = lgamma(2t-1) - lgamma(t+1) - lgamma(t)
  const double lc = std::lgamma(2.0 * t - 1.0) - std::lgamma(t + 1.0) - std::lgamma(t);
  const double lg = (-2.0 * t + 1.0) * std::log(2.0) + lc + (t - 1.0) * std::log(rho) + std::log(q);
  return std::exp(lg);
}

double phi_fn(double rho, double q) {
  if (!(rho > 0.0 && rho <= 0.5)) throw std::domain_error("phi_fn requires rho in (0, 1/2]");
  if (q < 0.0 || q > 0.5) throw std::domain_error("phi_fn requires q in [0, 1/2]");
  const double denom = rho - q * (1.0 - std::sqrt(1.0 - rho));
  if (denom <= 0.0) throw std::domain_error("phi_fn denominator not positive");
  return rho / denom - 1.0;
}

double g_weight(int d_minus, int d_plus, const DegreeSequence& seq) {
  if (d_plus < 2) throw std::domain_error("g_weight requires d+ >= 2");
  long long count = 0;
  for (int x = 0; x < seq.n(); ++x) {
    if (seq.in_degrees[x] == d_minus && seq.out_degrees[x] == d_plus) ++count;
  }
  if (count == 0) return 0.0;
  const DegreeStats st = degree_stats(seq);
  const double m = static_cast<double>(seq.m());
  return (d_minus * static_cast<double>(count) / (m * m)) * (d_minus + st.alpha - 1.0);
}

LimitScalings limit_scalings(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("limit_scalings requires u in (0, 1)");
  return {2.0, -2.0 * ((1.0 - u) * std::log(1.0 - u) + u * std::log(u))};
}

}  // namespace dcm
