#pragma once

#include "bihar/shooting.hpp"

namespace bihar {

// Oscillation of a w-trajectory around the singular fixed point: sign changes of
// w1 - K0^(1/(p-1)) up to s_reliable, the point where the trajectory's Euclidean
// distance from w0 first exceeds 0.5*|w0| after its closest approach (the shooting
// error budget ends there).
struct OscillationReport {
    int sign_changes = 0;
    std::vector<double> crossing_radii; // strictly increasing
    double final_ratio = 0.0;           // w1/K0^(1/(p-1)) at s_reliable
    double reliable_r_max = 0.0;        // e^(s_reliable)
};

OscillationReport oscillation_report(const ProblemParams& params, const WTrajectory& traj);

// True iff w1 < K0^(1/(p-1)) at every accepted step up to s_reliable. Only
// meaningful in the monotone regime (n >= 13, p >= p_c); throws otherwise.
bool monotone_below_check(const ProblemParams& params, const WTrajectory& traj);

// Pointwise supercritical bound: max over the profile grid of
// (1 + u(x)) |x|^(4/(p-1)) (lambda_gamma/lambda_star_est)^(1/(p-1)), which equals
// max_s w1(s) / lambda_star_est^(1/(p-1)) along the shot. Soft check: the
// estimate lambda_star_est underestimates lambda*, so the threshold carries 5%.
struct PointwiseBoundReport {
    double max_value = 0.0;
    bool within = false; // max_value <= 1.05
};

PointwiseBoundReport pointwise_bound_check(const ProblemParams& params, const BranchPoint& bp,
                                           const DirichletProfile& profile,
                                           double lambda_star_est);

// (K0/lambda)^(1/(p-1)) |x|^(-4/(p-1)) - 1: the lower envelope the singular
// parameter forces on unbounded limits; positive near x = 0 whenever lambda is
// finite.
double singular_comparison_bound(const ProblemParams& params, double lambda, double x);

struct RegularityVerdict {
    double pK0 = 0.0;
    double hardy = 0.0;
    std::optional<double> p_c;
    enum class V { ExtremalRegular, NoConclusion } verdict = V::NoConclusion;
};

// ExtremalRegular exactly when p K0 > n^2(n-4)^2/16 and the regime is oscillatory
// (5 <= n <= 12, or n >= 13 with p < p_c); nothing is claimed for p >= p_c.
RegularityVerdict extremal_regularity_verdict(const ProblemParams& params);

} // namespace bihar
