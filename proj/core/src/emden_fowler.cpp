#include "bihar/emden_fowler.hpp"

#include <cmath>

namespace bihar {

WPoint radial_to_w(const ProblemParams& params, const RadialState& st) {
    double a = params.a();
    double n = params.n;
    double r = st.r;
    if (!(r > 0.0)) throw domain_error("radial_to_w: r must be positive");
    double ra = std::pow(r, a);
    WPoint w;
    w.s = std::log(r);
    w.w1 = ra * st.U;
    w.w2 = ra * r * st.U1;
    w.w3 = ra * r * r * st.U2 - w.w2;
    w.w4 = ra * r * r * r * st.U3 + (n - 1.0) * w.w3;
    return w;
}

RadialState w_to_radial(const ProblemParams& params, const WPoint& w) {
    double a = params.a();
    double n = params.n;
    double r = std::exp(w.s);
    double ra = std::pow(r, -a);
    RadialState st;
    st.r = r;
    st.U = ra * w.w1;
    st.U1 = ra / r * w.w2;
    st.U2 = ra / (r * r) * (w.w3 + w.w2);
    st.U3 = ra / (r * r * r) * (w.w4 - (n - 1.0) * w.w3);
    return st;
}

void autonomous_rhs(const ProblemParams& params, const StateVec<4>& w, StateVec<4>& dw) {
    double a = params.a();
    double n = params.n;
    dw[0] = a * w[0] + w[1];
    dw[1] = (a + 2.0) * w[1] + w[2];
    dw[2] = (a - (n - 2.0)) * w[2] + w[3];
    dw[3] = std::pow(std::abs(w[0]), params.p - 1.0) * w[0] + (a - (n - 4.0)) * w[3];
}

OdeEvent<4> w1_zero_event() {
    OdeEvent<4> ev;
    ev.direction = -1;
    ev.terminal = true;
    ev.value = [](double, const StateVec<4>& w) { return w[0]; };
    return ev;
}

OdeEvent<4> w2_zero_event() {
    OdeEvent<4> ev;
    ev.direction = 1;
    ev.terminal = true;
    ev.value = [](double, const StateVec<4>& w) { return w[1]; };
    return ev;
}

OdeEvent<4> w_norm_cap_event(double cap) {
    OdeEvent<4> ev;
    ev.direction = 1;
    ev.terminal = true;
    ev.value = [cap](double, const StateVec<4>& w) {
        double m = std::abs(w[0]);
        for (int i = 1; i < 4; ++i) m = std::max(m, std::abs(w[i]));
        return m - cap;
    };
    return ev;
}

WTrajectory integrate_autonomous(const ProblemParams& params, const WPoint& start, double s_end,
                                 const OdeOptions& opt, const std::vector<OdeEvent<4>>& events) {
    OdeRhs<4> f = [&params](double, const StateVec<4>& w, StateVec<4>& dw) {
        autonomous_rhs(params, w, dw);
    };
    StateVec<4> w0{start.w1, start.w2, start.w3, start.w4};
    WTrajectory wt;
    wt.ode = integrate_ode<4>(f, start.s, s_end, w0, opt, events);
    return wt;
}

WTrajectory linearized_nu3_orbit(const ProblemParams& params, double amplitude, double s_span,
                                 const OdeOptions& opt) {
    if (!(s_span > 0.0)) throw domain_error("linearized_nu3_orbit: s_span must be positive");
    auto sd = eigenvalues(params);
    std::complex<double> nu3 = sd.nu[2];
    auto xi3 = eigenvector_for(params, nu3);
    WPoint w0 = fixed_point_w0(params);
    double re = nu3.real(), im = nu3.imag();

    // c(s) = x + iy obeys c' = nu3 c; integrate the 2D rotation so the orbit is a
    // trajectory object like any other (and the integrator gets tested against the
    // closed form e^(nu3 s)).
    OdeRhs<2> f = [re, im](double, const StateVec<2>& c, StateVec<2>& dc) {
        dc[0] = re * c[0] - im * c[1];
        dc[1] = im * c[0] + re * c[1];
    };
    OdeOptions o = opt;
    auto plane = integrate_ode<2>(f, 0.0, s_span, StateVec<2>{amplitude, 0.0}, o);

    // Reconstruct w = w0 + Re(c xi3) = w0 + x Re(xi3) - y Im(xi3) on the accepted
    // nodes, re-integrating nothing: build the trajectory by sampling the plane's
    // dense output onto a 4D trajectory with matching dense segments.
    WTrajectory wt;
    wt.ode.reached_end = plane.reached_end;
    wt.ode.n_accepted = plane.n_accepted;
    wt.ode.n_rejected = plane.n_rejected;
    auto lift = [&](const StateVec<2>& c) {
        StateVec<4> w;
        for (int i = 0; i < 4; ++i) {
            w[i] = c[0] * xi3[i].real() - c[1] * xi3[i].imag();
        }
        w[0] += w0.w1; w[1] += w0.w2; w[2] += w0.w3; w[3] += w0.w4;
        return w;
    };
    wt.ode.t = plane.t;
    wt.ode.y.reserve(plane.y.size());
    for (const auto& c : plane.y) wt.ode.y.push_back(lift(c));
    wt.ode.segments.reserve(plane.segments.size());
    for (const auto& ps : plane.segments) {
        // the lift is affine, so the dense polynomial lifts coefficient-wise
        DenseSegment<4> seg;
        seg.t0 = ps.t0;
        seg.h = ps.h;
        seg.r1 = lift(ps.r1);
        auto lin = [&](const StateVec<2>& c) {
            StateVec<4> w;
            for (int i = 0; i < 4; ++i) w[i] = c[0] * xi3[i].real() - c[1] * xi3[i].imag();
            return w;
        };
        seg.r2 = lin(ps.r2);
        seg.r3 = lin(ps.r3);
        seg.r4 = lin(ps.r4);
        seg.r5 = lin(ps.r5);
        wt.ode.segments.push_back(seg);
    }
    return wt;
}

ConeReport cone_test(const ProblemParams& params, int direction, double epsilon, double s_span,
                     const OdeOptions& opt, double z_cap) {
    if (direction != 1 && direction != -1) {
        throw domain_error("cone_test: direction must be +1 or -1");
    }
    if (!(epsilon > 0.0) || epsilon > 1e-4) {
        throw domain_error("cone_test: epsilon must lie in (0, 1e-4]");
    }
    if (!(s_span >= 1.0)) {
        throw domain_error("cone_test: s_span must be >= 1");
    }
    auto t = nu2_eigenvector(params);
    WPoint w0 = fixed_point_w0(params);
    StateVec<4> z0{direction * epsilon * t.t1, direction * epsilon * t.t2,
                   direction * epsilon * t.t3, direction * epsilon * t.t4};
    StateVec<4> start{w0.w1 + z0[0], w0.w2 + z0[1], w0.w3 + z0[2], w0.w4 + z0[3]};

    OdeRhs<4> f = [&params](double, const StateVec<4>& w, StateVec<4>& dw) {
        autonomous_rhs(params, w, dw);
    };
    std::array<double, 4> base{w0.w1, w0.w2, w0.w3, w0.w4};
    OdeEvent<4> cap;
    cap.direction = 1;
    cap.terminal = true;
    cap.value = [base, z_cap](double, const StateVec<4>& w) {
        double m = 0.0;
        for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(w[i] - base[i]));
        return m - z_cap;
    };
    auto traj = integrate_ode<4>(f, 0.0, -s_span, start, opt, {cap});

    ConeReport rep;
    rep.direction = direction;
    rep.epsilon = epsilon;
    rep.requested_span = s_span;
    rep.covered_span = -traj.t_final();
    rep.escaped = traj.event.has_value();

    const double sgn[4] = {1.0, -1.0, 1.0, -1.0};
    bool held = true;
    std::vector<double> xs, ys;
    xs.reserve(traj.t.size());
    ys.reserve(traj.t.size());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        double z1 = traj.y[i][0] - base[0];
        for (int c = 0; c < 4; ++c) {
            double zc = traj.y[i][c] - base[c];
            if (!(zc * sgn[c] * direction > 0.0)) held = false;
        }
        xs.push_back(-traj.t[i]);
        ys.push_back(std::log(std::abs(z1)));
    }
    rep.pattern_held = held;

    // least-squares slope of ln|z1| vs backward span
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    auto m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    double denom = m * sxx - sx * sx;
    rep.growth_rate = (denom > 0.0) ? (m * sxy - sx * sy) / denom : 0.0;
    return rep;
}

} // namespace bihar
