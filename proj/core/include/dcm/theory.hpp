#pragma once

#include "dcm/degseq.hpp"

namespace dcm {

/// The degree-sequence functionals governing the first-order meeting,
/// coalescence and consensus asymptotics: expected times scale like
/// (1/2) * theta * n.
struct TheoryConstants {
  double p_frak;  // >= 1
  double q_frak;  // <= 1
  double r_frak;  // >= 1
  double theta;   // r / p
  double phi;     // r - 1
};

TheoryConstants theory_constants(const DegreeStats& stats);
TheoryConstants theory_constants(const DegreeSequence& seq);

/// Alternate algebraic route to theta: delta / ((1 - eps(rho)) * alpha + beta - 1).
double theta_design_route(const DegreeStats& stats);

/// x -> (1 - sqrt(1 - x)) / x on [0, 1/2], with the limit value 1/2 at 0.
double epsilon_fn(double x);

// Closed forms for the special families.
double theta_regular(int d);                       // sqrt(d / (d - 1))
double theta_out_regular(int d, double beta);      // sqrt(d (d - 1)) / (beta - 1)
double theta_in_regular(int d, double rho);        // d sqrt(1 - rho) / (d - 1); d = 2 -> sqrt 2
double theta_eulerian(double delta, double beta);  // (beta/delta - 1 + sqrt(1 - 1/delta))^{-1}
double theta_undirected_regular(int d);            // (d - 1) / (d - 2), d >= 3

/// P(first return of the annealed two-particle chase to the merged diagonal
/// state at time 2t) = 2^{-2t+1} C_{t-1} rho^{t-1} q; log-space beyond t = 500.
double return_law(long t, double rho, double q);

/// Phi(rho, q) = rho / (rho - q (1 - sqrt(1 - rho))) - 1; 1 + Phi(rho, q_frak) = r_frak.
double phi_fn(double rho, double q);

/// g(d-, d+) = (d- |V_{d-,d+}| / m^2) (d- + alpha - 1). Zero on empty classes.
double g_weight(int d_minus, int d_plus, const DegreeSequence& seq);

struct LimitScalings {
  double coalescence_factor;  // E[tau_coal] / E_{pi x pi}[tau_meet] -> 2
  double consensus_factor;    // -2 [(1-u) log(1-u) + u log u]
};
LimitScalings limit_scalings(double u);

}  // namespace dcm
