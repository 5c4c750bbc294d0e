#pragma once

#include <optional>

#include "bihar/errors.hpp"

namespace bihar {

// Parameters of Delta^2 u = |u|^(p-1) u on R^n. Construction certifies
// supercriticality: n >= 5 and p > (n+4)/(n-4).
struct ProblemParams {
    int n;
    double p;

    ProblemParams(int n_, double p_);

    // a = 4/(p-1), the decay exponent of the singular solution u_s = K0^(1/(p-1)) r^(-a).
    double a() const { return 4.0 / (p - 1.0); }
};

enum class RegimeTag {
    OscillatorySupercritical, // solutions oscillate around u_s (5<=n<=12, or n>=13 with p<p_c)
    MonotoneSupercritical,    // convergence to u_s is monotone (n>=13, p>=p_c)
};

struct Regime {
    RegimeTag tag;
    std::optional<double> p_c; // absent for 5 <= n <= 12 (treated as infinite)
};

// (n+4)/(n-4), the Sobolev threshold. Throws domain_error for n < 5.
double critical_sobolev_exponent(int n);

// K0 = a(a+2)(n-2-a)(n-4-a) with a = 4/(p-1); the constant making u_s an exact solution.
double k0(const ProblemParams& params);

// n^2 (n-4)^2 / 16, the optimal constant in the second-order Hardy-Rellich inequality.
double hardy_constant(int n);

// For n >= 13: the unique root p_c of p*K0(n,p) = hardy_constant(n) above the Sobolev
// threshold, bracketed by a multiplicative scan and bisected until the bracket width
// is below tol. Returns nullopt for 5 <= n <= 12 (no second critical exponent).
std::optional<double> critical_exponent_pc(int n, double tol = 1e-12);

Regime classify_regime(const ProblemParams& params);

} // namespace bihar
