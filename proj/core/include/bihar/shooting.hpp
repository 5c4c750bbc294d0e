#pragma once

#include <vector>

#include "bihar/emden_fowler.hpp"

namespace bihar {

// Shot trichotomy: below gamma_bar the solution crosses zero (HitsZero), above
// it the derivative vanishes at a first radius R (DerivativeVanishes), at
// gamma_bar the solution is global. Undetermined: no event within r_max even
// after escalation (expected only in a vanishing bracket around gamma_bar).
enum class ShotClass { HitsZero, DerivativeVanishes, Undetermined };

struct ShootOptions {
    double tol = 1e-12;       // abs and rel integration tolerance
    double r0 = 1e-4;         // series launch radius, in (0, 0.01]
    double r_max = 1e3;       // initial outer radius for event search
    double r_max_limit = 1e12; // escalation cap (x1000 per retry)
    double w_norm_cap = 1e8;  // escape cap in w-coordinates
};

struct ShotOutcome {
    ShotClass cls = ShotClass::Undetermined;
    double gamma = 0.0;
    double r_event = 0.0;        // radius of the deciding event (0 if none)
    RadialState event_state{};   // state at the event (radial coordinates)
    RadialTrajectory radial;     // [r0, min(1, event)]
    WTrajectory w;               // onward from r = 1 in log-radius (empty if decided early)
    bool has_w = false;
    double r0 = 0.0;
};

// Classify a single shot U''(0) = gamma < 0.
ShotOutcome classify_shot(const ProblemParams& params, double gamma,
                          const ShootOptions& opt = {});

struct GammaBracket {
    double lo = 0.0; // HitsZero side
    double hi = 0.0; // DerivativeVanishes side
    int shots = 0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// Bisect the trichotomy transition to relative width rel_tol (>= 1e-14). The
// initial bracket [-1, -1e-3] expands multiplicatively to [-1e6, -1e-12] if a
// side misclassifies.
GammaBracket find_gamma_bar(const ProblemParams& params, double rel_tol = 1e-13,
                            const ShootOptions& opt = {});

// One point of the Dirichlet bifurcation branch: gamma > gamma_bar,
// R = first zero of U', lambda = R^4 U(R)^(p-1), u0 = u_gamma(0) = 1/U(R) - 1.
struct BranchPoint {
    double gamma = 0.0;
    double offset = 0.0; // gamma - gamma_bar
    double R = 0.0;
    double U_R = 0.0;
    double lambda = 0.0;
    double u0 = 0.0;
};

struct Branch {
    std::vector<BranchPoint> points;     // ordered as the input offsets
    double lambda_hat_star = 0.0;        // max branch lambda, a lower estimate of lambda*
    std::vector<std::string> warnings;   // weak-check flags (non-fatal)
};

std::vector<double> default_branch_offsets(); // 1e-2 .. 1e-10 log-spaced per decade

// Shoot once per offset (in parallel), assemble in input order, run weak checks:
// lambda above (0.9 K0^(1/(p-1)))^(p-1), R decreasing in gamma, u0 increasing
// toward the singular end. Violations are flagged in warnings, not thrown; the
// lambda bound is only guaranteed asymptotically close to gamma_bar.
Branch build_branch(const ProblemParams& params, double gamma_bar,
                    const std::vector<double>& offsets = default_branch_offsets(),
                    const ShootOptions& opt = {});

// u_gamma on the unit ball: u(x) = U(R x)/U(R) - 1 on a uniform grid of [0, 1],
// evaluated from the shot's dense output (series below r0).
struct DirichletProfile {
    std::vector<double> x;
    std::vector<double> u;
};

DirichletProfile dirichlet_profile(const ProblemParams& params, const ShotOutcome& shot,
                                   int grid_n = 512);

// Singular parameter estimate from the unstable manifold: start w0 + eps*xi1
// (xi1 the nu1-eigenvector, first component 1), integrate to the first rising
// zero of w2, take lambda = w1^(p-1) there, Richardson-extrapolate over the eps
// ladder (the manifold offset error is O(eps^2)). The extrapolated value is the
// branch-limit singular parameter.
struct LambdaSigmaEstimate {
    double lambda = 0.0;               // Richardson-extrapolated
    double raw_first = 0.0;            // single-eps estimate at eps_list[0]
    std::vector<double> eps_list;
    std::vector<double> lambda_eps;    // per-eps raw estimates
};

std::vector<double> default_manifold_eps(); // {1e-6, 1e-7, 1e-8}

LambdaSigmaEstimate estimate_lambda_sigma(const ProblemParams& params,
                                          const std::vector<double>& eps_list = default_manifold_eps(),
                                          double s_span = 50.0,
                                          const ShootOptions& opt = {});

} // namespace bihar
