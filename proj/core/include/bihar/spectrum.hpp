#pragma once

#include <array>
#include <complex>
#include <tuple>

#include "bihar/exponents.hpp"

namespace bihar {

// Eigendata of the linearization M of the autonomous system at the fixed point w0.
// nu[0], nu[1] are the real pair with nu2 < 0 < nu1; nu[2], nu[3] are the inner pair,
// complex conjugate (Im nu3 > 0) exactly when N2 - 4*sqrt(N3) < 0, real otherwise.
struct SpectrumData {
    double N1;
    double N2;
    double N3;
    std::array<std::complex<double>, 4> nu;
};

// A point of the Emden-Fowler phase space at log-radius s.
struct WPoint {
    double s;
    double w1, w2, w3, w4;
};

// Eigenvector of M for nu2, normalized t1 = 1. Sign pattern (+,-,+,-) is a theorem;
// construction verifies it.
struct Nu2Eigenvector {
    double t1, t2, t3, t4;
};

// N1 = -(n-4)(p-1) + 8, N2 = (n^2-4n+8)(p-1)^2, and the displayed quartic N3.
std::tuple<double, double, double> n_coefficients(const ProblemParams& params);

SpectrumData eigenvalues(const ProblemParams& params);

// P(nu) = (nu - a + n-4)(nu - a + n-2)(nu - a - 2)(nu - a) - p*K0, a = 4/(p-1).
std::complex<double> characteristic_poly(const ProblemParams& params, std::complex<double> nu);

Nu2Eigenvector nu2_eigenvector(const ProblemParams& params);

// The equilibrium w0 = K0^(1/(p-1)) * (1, -a, a(a+2), (n-2-a)a(a+2)) at s = 0.
WPoint fixed_point_w0(const ProblemParams& params);

// Eigenvector (1, nu-a, (nu-a-2)(nu-a), (nu+n-2-a)(nu-a-2)(nu-a)) of M for any
// eigenvalue nu; used for nu1 (unstable manifold seed) and nu3 (oscillation plane).
std::array<std::complex<double>, 4> eigenvector_for(const ProblemParams& params,
                                                    std::complex<double> nu);

} // namespace bihar
