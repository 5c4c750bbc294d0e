#include "bihar/ode.hpp"

namespace bihar {

// The integrator is header-only (templates); instantiate the two sizes the
// library uses so client translation units stay lean.
template class Dopri5<2>;
template class Dopri5<4>;

template OdeTrajectory<2> integrate_ode<2>(const OdeRhs<2>&, double, double, const StateVec<2>&,
                                           const OdeOptions&, const std::vector<OdeEvent<2>>&);
template OdeTrajectory<4> integrate_ode<4>(const OdeRhs<4>&, double, double, const StateVec<4>&,
                                           const OdeOptions&, const std::vector<OdeEvent<4>>&);

} // namespace bihar
