#pragma once

#include "bihar/exponents.hpp"
#include "bihar/ode.hpp"

namespace bihar {

// (r, U, U', U'', U''') sample of the radial problem
//   U'''' = |U|^(p-1) U - 2(n-1)/r U''' - (n-1)(n-3)/r^2 U'' + (n-1)(n-3)/r^3 U'
// normalized by U(0) = 1, U'(0) = U'''(0) = 0, U''(0) = gamma.
struct RadialState {
    double r;
    double U, U1, U2, U3;
};

struct RadialTrajectory {
    OdeTrajectory<4> ode; // state layout (U, U', U'', U''') indexed by r
    RadialState at(double r) const {
        auto y = ode.eval(r);
        return {r, y[0], y[1], y[2], y[3]};
    }
    RadialState final_state() const {
        const auto& y = ode.y_final();
        return {ode.t_final(), y[0], y[1], y[2], y[3]};
    }
};

// Series launch off the r=0 singularity of the ODE coefficients:
//   U = 1 + gamma r^2/2 + c4 r^4 + c6 r^6,  c4 = 1/(8n(n+2)), c6 = p*gamma/(48(n+2)(n+4)),
// differentiated termwise for the derivatives. Valid for r0 in (0, 0.01].
RadialState series_launch(const ProblemParams& params, double gamma, double r0 = 1e-4);

// Right-hand side as a first-order system in (U, U', U'', U''').
void radial_rhs(const ProblemParams& params, double r, const StateVec<4>& y, StateVec<4>& dy);

// The singular solution u_s = K0^(1/(p-1)) r^(-4/(p-1)) and its derivatives.
RadialState singular_state(const ProblemParams& params, double r);

// Event watching for finite-r blow-up. |U| alone cannot reach a large cap before
// the step size underflows near an algebraic singularity, so the derivatives are
// watched too (they blow up faster).
OdeEvent<4> blow_up_event(double value_cap = 1e8, double derivative_cap = 1e12);

// Integrate from state0.r to r_end (forward or backward). Events optional.
RadialTrajectory integrate_radial(const ProblemParams& params, const RadialState& state0,
                                  double r_end, const OdeOptions& opt = {},
                                  const std::vector<OdeEvent<4>>& events = {});

} // namespace bihar
