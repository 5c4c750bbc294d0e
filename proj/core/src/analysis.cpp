#include "bihar/analysis.hpp"

#include <cmath>

namespace bihar {

namespace {

struct ReliableWindow {
    double s_min = 0.0;
    double s_closest = 0.0;
    double s_reliable = 0.0;
    double dist_min = 0.0; // Euclidean distance at closest approach
};

// Dense scan for closest approach to w0 and the departure point. The sample count
// is fixed so reports are deterministic.
ReliableWindow reliable_window(const ProblemParams& params, const WTrajectory& traj,
                               int samples = 20000) {
    WPoint w0 = fixed_point_w0(params);
    const double ref[4] = {w0.w1, w0.w2, w0.w3, w0.w4};
    double ref_norm = 0.0;
    for (double c : ref) ref_norm += c * c;
    ref_norm = std::sqrt(ref_norm);

    double s0 = traj.ode.t.front();
    double s1 = traj.ode.t_final();
    auto dist_at = [&](double s) {
        auto w = traj.ode.eval(s);
        double d = 0.0;
        for (int i = 0; i < 4; ++i) {
            double q = w[i] - ref[i];
            d += q * q;
        }
        return std::sqrt(d);
    };

    ReliableWindow win;
    win.s_min = s0;
    double best = dist_at(s0);
    double s_best = s0;
    for (int i = 1; i < samples; ++i) {
        double s = s0 + (s1 - s0) * static_cast<double>(i) / (samples - 1);
        double d = dist_at(s);
        if (d < best) {
            best = d;
            s_best = s;
        }
    }
    win.s_closest = s_best;
    win.dist_min = best;
    if (!(best < 0.5 * ref_norm)) {
        throw not_applicable_error(
            "trajectory never approaches the singular fixed point (min distance " +
            std::to_string(best) + " vs threshold " + std::to_string(0.5 * ref_norm) + ")");
    }
    win.s_reliable = s1;
    for (int i = 0; i < samples; ++i) {
        double s = s_best + (s1 - s_best) * static_cast<double>(i) / (samples - 1);
        if (dist_at(s) > 0.5 * ref_norm) {
            win.s_reliable = s;
            break;
        }
    }
    return win;
}

} // namespace

OscillationReport oscillation_report(const ProblemParams& params, const WTrajectory& traj) {
    auto win = reliable_window(params, traj);
    double K = std::pow(k0(params), 1.0 / (params.p - 1.0));

    auto g = [&](double s) { return traj.ode.eval(s)[0] - K; };

    OscillationReport rep;
    const int samples = 20000;
    double s0 = win.s_min, s1 = win.s_reliable;
    double prev_s = s0;
    double prev_g = g(s0);
    for (int i = 1; i < samples; ++i) {
        double s = s0 + (s1 - s0) * static_cast<double>(i) / (samples - 1);
        double cur = g(s);
        if ((prev_g < 0.0 && cur >= 0.0) || (prev_g > 0.0 && cur <= 0.0)) {
            // bisect the crossing
            double a = prev_s, b = s, ga = prev_g;
            for (int it = 0; it < 80; ++it) {
                double m2 = 0.5 * (a + b);
                if (m2 == a || m2 == b) break;
                double gm = g(m2);
                if ((ga < 0.0) ? (gm < 0.0) : (gm > 0.0)) {
                    a = m2;
                    ga = gm;
                } else {
                    b = m2;
                }
            }
            rep.crossing_radii.push_back(std::exp(0.5 * (a + b)));
        }
        prev_s = s;
        prev_g = cur;
    }
    rep.sign_changes = static_cast<int>(rep.crossing_radii.size());
    rep.final_ratio = traj.ode.eval(s1)[0] / K;
    rep.reliable_r_max = std::exp(s1);
    return rep;
}

bool monotone_below_check(const ProblemParams& params, const WTrajectory& traj) {
    auto regime = classify_regime(params);
    if (regime.tag != RegimeTag::MonotoneSupercritical) {
        throw domain_error(
            "monotone_below_check: only meaningful in the monotone regime (n >= 13, p >= p_c)");
    }
    auto win = reliable_window(params, traj);
    double K = std::pow(k0(params), 1.0 / (params.p - 1.0));
    bool fwd = traj.ode.t_final() >= traj.ode.t.front();
    for (std::size_t i = 0; i < traj.ode.t.size(); ++i) {
        double s = traj.ode.t[i];
        if (fwd ? (s > win.s_reliable) : (s < win.s_reliable)) break;
        if (!(traj.ode.y[i][0] < K)) return false;
    }
    return true;
}

PointwiseBoundReport pointwise_bound_check(const ProblemParams& params, const BranchPoint& bp,
                                           const DirichletProfile& profile,
                                           double lambda_star_est) {
    if (profile.x.empty() || profile.x.size() != profile.u.size()) {
        throw domain_error("pointwise_bound_check: malformed profile");
    }
    if (!(lambda_star_est > 0.0)) {
        throw domain_error("pointwise_bound_check: lambda_star_est must be positive");
    }
    double a = params.a();
    double scale = std::pow(bp.lambda / lambda_star_est, 1.0 / (params.p - 1.0));
    PointwiseBoundReport rep;
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        double x = profile.x[i];
        double v = (x > 0.0) ? (1.0 + profile.u[i]) * std::pow(x, a) * scale : 0.0;
        rep.max_value = std::max(rep.max_value, v);
    }
    rep.within = rep.max_value <= 1.05;
    return rep;
}

double singular_comparison_bound(const ProblemParams& params, double lambda, double x) {
    if (!(lambda > 0.0) || !(x > 0.0)) {
        throw domain_error("singular_comparison_bound: lambda and x must be positive");
    }
    double a = params.a();
    return std::pow(k0(params) / lambda, 1.0 / (params.p - 1.0)) * std::pow(x, -a) - 1.0;
}

RegularityVerdict extremal_regularity_verdict(const ProblemParams& params) {
    RegularityVerdict rv;
    rv.pK0 = params.p * k0(params);
    rv.hardy = hardy_constant(params.n);
    auto regime = classify_regime(params);
    rv.p_c = regime.p_c;
    bool oscillatory = regime.tag == RegimeTag::OscillatorySupercritical;
    rv.verdict = (rv.pK0 > rv.hardy && oscillatory) ? RegularityVerdict::V::ExtremalRegular
                                                    : RegularityVerdict::V::NoConclusion;
    return rv;
}

} // namespace bihar
