#include "bihar/exponents.hpp"

#include <cmath>
#include <sstream>

namespace bihar {

ProblemParams::ProblemParams(int n_, double p_) : n(n_), p(p_) {
    if (n < 5) {
        throw domain_error("ProblemParams: dimension n must be >= 5, got " + std::to_string(n));
    }
    double ps = static_cast<double>(n + 4) / static_cast<double>(n - 4);
    if (!(p > ps)) {
        std::ostringstream os;
        os << "ProblemParams: p must exceed the Sobolev threshold (n+4)/(n-4) = " << ps
           << " for n = " << n << ", got p = " << p;
        throw domain_error(os.str());
    }
}

double critical_sobolev_exponent(int n) {
    if (n < 5) {
        throw domain_error("critical_sobolev_exponent: n must be >= 5, got " + std::to_string(n));
    }
    return static_cast<double>(n + 4) / static_cast<double>(n - 4);
}

double k0(const ProblemParams& params) {
    double a = params.a();
    double n = params.n;
    return a * (a + 2.0) * (n - 2.0 - a) * (n - 4.0 - a);
}

double hardy_constant(int n) {
    if (n < 5) {
        throw domain_error("hardy_constant: n must be >= 5, got " + std::to_string(n));
    }
    double nn = n;
    return nn * nn * (nn - 4.0) * (nn - 4.0) / 16.0;
}

namespace {

// p*K0(n,p) - hardy. Positive below p_c, negative above (n >= 13).
double pc_residual(int n, double p) {
    return p * k0(ProblemParams(n, p)) - hardy_constant(n);
}

} // namespace

std::optional<double> critical_exponent_pc(int n, double tol) {
    if (n < 5) {
        throw domain_error("critical_exponent_pc: n must be >= 5, got " + std::to_string(n));
    }
    if (n <= 12) {
        // p*K0 > hardy for every supercritical p in these dimensions; p_c is infinite.
        return std::nullopt;
    }
    double lo = 1.0001 * critical_sobolev_exponent(n);
    double flo = pc_residual(n, lo);
    double hi = lo;
    double fhi = flo;
    constexpr double scan_limit = 1e6;
    while (hi < scan_limit) {
        hi *= 1.5;
        fhi = pc_residual(n, hi);
        if ((flo > 0.0) != (fhi > 0.0)) break;
        lo = hi;
        flo = fhi;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "critical_exponent_pc: no sign change of p*K0 - hardy for n = " << n
           << " on the scan range [" << 1.0001 * critical_sobolev_exponent(n) << ", " << hi << "]";
        throw numerical_error(os.str());
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break; // double resolution floor
        double fm = pc_residual(n, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Regime classify_regime(const ProblemParams& params) {
    if (params.n <= 12) {
        return Regime{RegimeTag::OscillatorySupercritical, std::nullopt};
    }
    double pc = *critical_exponent_pc(params.n);
    if (params.p < pc) {
        return Regime{RegimeTag::OscillatorySupercritical, pc};
    }
    return Regime{RegimeTag::MonotoneSupercritical, pc};
}

} // namespace bihar
