#include "bihar/spectrum.hpp"

#include <cmath>
#include <sstream>

namespace bihar {

std::tuple<double, double, double> n_coefficients(const ProblemParams& params) {
    double n = params.n;
    double q = params.p - 1.0;
    double q2 = q * q;
    double N1 = -(n - 4.0) * q + 8.0;
    double N2 = (n * n - 4.0 * n + 8.0) * q2;
    double N3 = (9.0 * n - 34.0) * (n - 2.0) * q2 * q2
              + 8.0 * (3.0 * n - 8.0) * (n - 6.0) * q2 * q
              + (16.0 * n * n - 288.0 * n + 832.0) * q2
              - 128.0 * (n - 6.0) * q
              + 256.0;
    return {N1, N2, N3};
}

SpectrumData eigenvalues(const ProblemParams& params) {
    auto [N1, N2, N3] = n_coefficients(params);
    double q = params.p - 1.0;
    // N3 > (n-2)^2 (p-1)^4 > 0 under supercriticality, so the outer root is real.
    double s3 = std::sqrt(N3);
    double outer = std::sqrt(N2 + 4.0 * s3);
    double inner = N2 - 4.0 * s3;
    SpectrumData sd;
    sd.N1 = N1;
    sd.N2 = N2;
    sd.N3 = N3;
    sd.nu[0] = (N1 + outer) / (2.0 * q);
    sd.nu[1] = (N1 - outer) / (2.0 * q);
    if (inner < 0.0) {
        double im = std::sqrt(-inner) / (2.0 * q);
        double re = N1 / (2.0 * q);
        sd.nu[2] = {re, im};
        sd.nu[3] = {re, -im};
    } else {
        double ri = std::sqrt(inner);
        sd.nu[2] = (N1 + ri) / (2.0 * q); // nu4 <= nu3 < 0 in the real case
        sd.nu[3] = (N1 - ri) / (2.0 * q);
    }
    return sd;
}

std::complex<double> characteristic_poly(const ProblemParams& params, std::complex<double> nu) {
    double a = params.a();
    double n = params.n;
    std::complex<double> x = nu - a;
    return (x + (n - 4.0)) * (x + (n - 2.0)) * (x - 2.0) * x - params.p * k0(params);
}

Nu2Eigenvector nu2_eigenvector(const ProblemParams& params) {
    double a = params.a();
    double nu2 = eigenvalues(params).nu[1].real();
    Nu2Eigenvector t;
    t.t1 = 1.0;
    t.t2 = nu2 - a;
    t.t3 = (nu2 - 2.0 - a) * t.t2;
    t.t4 = (nu2 + params.n - 2.0 - a) * t.t3;
    if (!(t.t1 > 0.0 && t.t2 < 0.0 && t.t3 > 0.0 && t.t4 < 0.0)) {
        std::ostringstream os;
        os << "nu2_eigenvector: sign pattern (+,-,+,-) violated for n = " << params.n
           << ", p = " << params.p << ": (" << t.t1 << ", " << t.t2 << ", " << t.t3 << ", "
           << t.t4 << "); this indicates an eigenvalue bug";
        throw std::logic_error(os.str());
    }
    return t;
}

WPoint fixed_point_w0(const ProblemParams& params) {
    double a = params.a();
    double n = params.n;
    double Kp = std::pow(k0(params), 1.0 / (params.p - 1.0));
    WPoint w;
    w.s = 0.0;
    w.w1 = Kp;
    w.w2 = -a * Kp;
    w.w3 = a * (a + 2.0) * Kp;
    w.w4 = (n - 2.0 - a) * a * (a + 2.0) * Kp;
    return w;
}

std::array<std::complex<double>, 4> eigenvector_for(const ProblemParams& params,
                                                    std::complex<double> nu) {
    double a = params.a();
    double n = params.n;
    std::complex<double> x1 = 1.0;
    std::complex<double> x2 = nu - a;
    std::complex<double> x3 = (nu - a - 2.0) * x2;
    std::complex<double> x4 = (nu + n - 2.0 - a) * x3;
    return {x1, x2, x3, x4};
}

} // namespace bihar
