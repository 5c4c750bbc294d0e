#pragma once

#include "bihar/radial.hpp"
#include "bihar/spectrum.hpp"

namespace bihar {

// Phase variables of the autonomous system, s = ln r:
//   w1 = r^a U, w2 = r^(a+1) U', w3 = r^(a+2) U'' - w2, w4 = r^(a+3) U''' + (n-1) w3
// with a = 4/(p-1), satisfying
//   w1' = a w1 + w2
//   w2' = (a+2) w2 + w3
//   w3' = (a-(n-2)) w3 + w4
//   w4' = |w1|^(p-1) w1 + (a-(n-4)) w4.
WPoint radial_to_w(const ProblemParams& params, const RadialState& state);
RadialState w_to_radial(const ProblemParams& params, const WPoint& w);

void autonomous_rhs(const ProblemParams& params, const StateVec<4>& w, StateVec<4>& dw);

struct WTrajectory {
    OdeTrajectory<4> ode; // state layout (w1, w2, w3, w4) indexed by s
    WPoint at(double s) const {
        auto w = ode.eval(s);
        return {s, w[0], w[1], w[2], w[3]};
    }
    WPoint final_point() const {
        const auto& w = ode.y_final();
        return {ode.t_final(), w[0], w[1], w[2], w[3]};
    }
};

// Standard watches for shooting runs in w-coordinates.
OdeEvent<4> w1_zero_event();        // falling crossing of w1 (U hits zero)
OdeEvent<4> w2_zero_event();        // rising crossing of w2 (U' vanishes from below)
OdeEvent<4> w_norm_cap_event(double cap = 1e8);

WTrajectory integrate_autonomous(const ProblemParams& params, const WPoint& start, double s_end,
                                 const OdeOptions& opt = {},
                                 const std::vector<OdeEvent<4>>& events = {});

// Orbit of the linearization w' = M (w - w0) restricted to its invariant nu3-plane:
// the exact linear flow c(s) = amplitude * e^(nu3 s) reconstructed as
// w(s) = w0 + Re(c(s) xi3), integrated as the 2D rotation system so the result is
// a genuine trajectory object. Starts at w0 + amplitude * Re(xi3).
WTrajectory linearized_nu3_orbit(const ProblemParams& params, double amplitude, double s_span,
                                 const OdeOptions& opt = {});

// Backward cone probe along the nu2-eigenvector. Starts at w0 + direction*epsilon*t
// and integrates backward over s_span. pattern_held: the shifted components kept
// signs direction*(+,-,+,-) at every accepted step. escaped: the orbit left the
// |z| cap before covering the span, i.e. it blows up at a finite backward time and
// the corresponding profile is not defined for all r > 0.
// growth_rate: linear fit of ln|z1| against backward span.
struct ConeReport {
    int direction = +1;
    double epsilon = 1e-6;
    double requested_span = 8.0;
    double covered_span = 0.0;
    bool pattern_held = false;
    bool escaped = false;
    double growth_rate = 0.0;
};

ConeReport cone_test(const ProblemParams& params, int direction, double epsilon = 1e-6,
                     double s_span = 8.0, const OdeOptions& opt = {}, double z_cap = 1e10);

} // namespace bihar
