#include "bihar/radial.hpp"

#include <cmath>

namespace bihar {

RadialState series_launch(const ProblemParams& params, double gamma, double r0) {
    if (!(r0 > 0.0) || r0 > 0.01) {
        throw domain_error("series_launch: r0 must lie in (0, 0.01], got " + std::to_string(r0));
    }
    double n = params.n;
    double p = params.p;
    double c4 = 1.0 / (8.0 * n * (n + 2.0));
    double c6 = p * gamma / (48.0 * (n + 2.0) * (n + 4.0));
    double r2 = r0 * r0;
    RadialState st;
    st.r = r0;
    st.U = 1.0 + 0.5 * gamma * r2 + c4 * r2 * r2 + c6 * r2 * r2 * r2;
    st.U1 = gamma * r0 + 4.0 * c4 * r0 * r2 + 6.0 * c6 * r0 * r2 * r2;
    st.U2 = gamma + 12.0 * c4 * r2 + 30.0 * c6 * r2 * r2;
    st.U3 = 24.0 * c4 * r0 + 120.0 * c6 * r0 * r2;
    return st;
}

void radial_rhs(const ProblemParams& params, double r, const StateVec<4>& y, StateVec<4>& dy) {
    double n = params.n;
    double U = y[0];
    double c = (n - 1.0) * (n - 3.0);
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = y[3];
    dy[3] = std::pow(std::abs(U), params.p - 1.0) * U
          - 2.0 * (n - 1.0) / r * y[3]
          - c / (r * r) * y[2]
          + c / (r * r * r) * y[1];
}

RadialState singular_state(const ProblemParams& params, double r) {
    double a = params.a();
    double K = std::pow(k0(params), 1.0 / (params.p - 1.0));
    RadialState st;
    st.r = r;
    st.U = K * std::pow(r, -a);
    st.U1 = -a * st.U / r;
    st.U2 = a * (a + 1.0) * st.U / (r * r);
    st.U3 = -a * (a + 1.0) * (a + 2.0) * st.U / (r * r * r);
    return st;
}

OdeEvent<4> blow_up_event(double value_cap, double derivative_cap) {
    OdeEvent<4> ev;
    ev.direction = 1;
    ev.terminal = true;
    ev.value = [value_cap, derivative_cap](double, const StateVec<4>& y) {
        double m = std::abs(y[0]) / value_cap;
        m = std::max(m, std::abs(y[1]) / derivative_cap);
        m = std::max(m, std::abs(y[2]) / derivative_cap);
        m = std::max(m, std::abs(y[3]) / derivative_cap);
        return m - 1.0;
    };
    return ev;
}

RadialTrajectory integrate_radial(const ProblemParams& params, const RadialState& state0,
                                  double r_end, const OdeOptions& opt,
                                  const std::vector<OdeEvent<4>>& events) {
    if (!(state0.r > 0.0) || !(r_end > 0.0)) {
        throw domain_error("integrate_radial: radii must be positive");
    }
    OdeRhs<4> f = [&params](double r, const StateVec<4>& y, StateVec<4>& dy) {
        radial_rhs(params, r, y, dy);
    };
    StateVec<4> y0{state0.U, state0.U1, state0.U2, state0.U3};
    RadialTrajectory rt;
    rt.ode = integrate_ode<4>(f, state0.r, r_end, y0, opt, events);
    return rt;
}

} // namespace bihar
