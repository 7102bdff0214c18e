#pragma once

#include <vector>

#include "vhawkes/hawkes.hpp"

namespace vhawkes {

enum class MomentProvenance { ClosedForm, OdeOracle };

// The five moment functions of t for (N_t, lambda_t).
struct MomentSet {
    double t = 0.0;
    double e_N = 0.0;    // E[N_t]
    double e_L = 0.0;    // E[lambda_t]
    double e_L2 = 0.0;   // E[lambda_t^2]
    double e_NL = 0.0;   // E[N_t lambda_t]
    double e_N2 = 0.0;   // E[N_t^2]
    MomentProvenance provenance = MomentProvenance::OdeOracle;
};

// Closed-form E[N_t] (assumes v0 == v). Throws on alpha == beta.
double mean_N(const HawkesParams& p, double t);

// Closed-form E[lambda_t] = v (beta - alpha e^{-(beta-alpha) t}) / (beta - alpha)
// (assumes v0 == v). Throws on alpha == beta.
double mean_lambda(const HawkesParams& p, double t);

// The published closed forms for all five moments, transcribed verbatim.
// Known to disagree with the ODE oracle for the second and cross moments;
// kept for traceability and audited, never used as an oracle.
MomentSet closed_form_moments(const HawkesParams& p, double t);

// Authoritative moment source: fixed-step RK4 on the coupled linear system
// for (E[lambda], E[lambda^2], E[N], E[N lambda], E[N^2]) built from the
// moment recursion, starting from E[lambda](0) = v0, E[lambda^2](0) = v0^2,
// E[N](0) = E[N lambda](0) = E[N^2](0) = 0. Handles v0 != v.
MomentSet ode_moments(const HawkesParams& p, double t, double step = 1e-5);

// One term of d/dt E[N^m lambda^n] expressed over the basis E[N^j lambda^i]
// (the pair (0, 0) denotes the constant 1).
struct MomentTerm {
    int n_pow;       // j, power of N
    int lambda_pow;  // i, power of lambda
    double coeff;
};

// d/dt E[N^m lambda^n] as a linear combination of lower-order moments,
// from the exponential-kernel moment recursion. Requires m + n >= 1.
// Terms are aggregated per basis moment and sorted by (n_pow, lambda_pow).
std::vector<MomentTerm> moment_ode_rhs(int m, int n, const HawkesParams& p);

}  // namespace vhawkes
