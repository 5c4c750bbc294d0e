#include "bihar/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace bihar {

namespace {

OdeEvent<4> radial_U_zero() {
    OdeEvent<4> ev;
    ev.direction = -1;
    ev.terminal = true;
    ev.value = [](double, const StateVec<4>& y) { return y[0]; };
    return ev;
}

OdeEvent<4> radial_U1_zero() {
    OdeEvent<4> ev;
    ev.direction = 1;
    ev.terminal = true;
    ev.value = [](double, const StateVec<4>& y) { return y[1]; };
    return ev;
}

} // namespace

ShotOutcome classify_shot(const ProblemParams& params, double gamma, const ShootOptions& opt) {
    if (!(gamma < 0.0)) {
        throw domain_error("classify_shot: gamma must be negative (U dips toward u_s), got " +
                           std::to_string(gamma));
    }
    ShotOutcome out;
    out.gamma = gamma;
    out.r0 = opt.r0;

    OdeOptions oo;
    oo.rel_tol = opt.tol;
    oo.abs_tol = opt.tol;

    // Phase 1: radial coordinates on [r0, 1]. Events indexed 0:U=0, 1:U'=0, 2:blow-up.
    auto st0 = series_launch(params, gamma, opt.r0);
    out.radial = integrate_radial(params, st0, 1.0, oo,
                                  {radial_U_zero(), radial_U1_zero(), blow_up_event()});
    if (out.radial.ode.event) {
        const auto& hit = *out.radial.ode.event;
        out.r_event = hit.t;
        out.event_state = RadialState{hit.t, hit.y[0], hit.y[1], hit.y[2], hit.y[3]};
        if (hit.index == 0) {
            out.cls = ShotClass::HitsZero;
            return out;
        }
        if (hit.index == 1) {
            out.cls = ShotClass::DerivativeVanishes;
            return out;
        }
        out.cls = ShotClass::Undetermined; // blow-up without a deciding zero
        return out;
    }

    // Phase 2: autonomous system from s = 0, escalating the horizon on demand.
    WPoint w_start = radial_to_w(params, out.radial.final_state());
    for (double r_max = opt.r_max;; r_max *= 1e3) {
        double s_end = std::log(r_max);
        out.w = integrate_autonomous(params, w_start, s_end, oo,
                                     {w1_zero_event(), w2_zero_event(),
                                      w_norm_cap_event(opt.w_norm_cap)});
        out.has_w = true;
        if (out.w.ode.event) {
            const auto& hit = *out.w.ode.event;
            WPoint wp{hit.t, hit.y[0], hit.y[1], hit.y[2], hit.y[3]};
            out.event_state = w_to_radial(params, wp);
            out.r_event = out.event_state.r;
            if (hit.index == 0) {
                out.cls = ShotClass::HitsZero;
            } else if (hit.index == 1) {
                out.cls = ShotClass::DerivativeVanishes;
            } else {
                out.cls = ShotClass::Undetermined; // escaped the norm cap
            }
            return out;
        }
        if (r_max * 1e3 > opt.r_max_limit * 1.000001) {
            out.cls = ShotClass::Undetermined;
            out.r_event = 0.0;
            return out;
        }
    }
}

GammaBracket find_gamma_bar(const ProblemParams& params, double rel_tol, const ShootOptions& opt) {
    if (!(rel_tol >= 1e-14)) {
        throw domain_error("find_gamma_bar: rel_tol below the double-precision floor 1e-14");
    }
    GammaBracket br;
    double lo = -1.0, hi = -1e-3;
    int shots = 0;

    auto cls_of = [&](double g) {
        ++shots;
        return classify_shot(params, g, opt).cls;
    };

    ShotClass cl = cls_of(lo);
    while (cl != ShotClass::HitsZero) {
        lo *= 10.0;
        if (lo < -1e6) {
            throw numerical_error("find_gamma_bar: no HitsZero shot found down to gamma = -1e6");
        }
        cl = cls_of(lo);
    }
    ShotClass ch = cls_of(hi);
    while (ch != ShotClass::DerivativeVanishes) {
        hi *= 0.1;
        if (hi > -1e-12) {
            throw numerical_error(
                "find_gamma_bar: no DerivativeVanishes shot found up to gamma = -1e-12");
        }
        ch = cls_of(hi);
    }

    while (hi - lo > rel_tol * std::abs(0.5 * (lo + hi))) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        ShotClass cm = cls_of(mid);
        if (cm == ShotClass::HitsZero) {
            lo = mid;
        } else if (cm == ShotClass::DerivativeVanishes) {
            hi = mid;
        } else {
            std::ostringstream os;
            os << "find_gamma_bar: undetermined shot inside the bracket at gamma = " << mid
               << " (r_max limit too small for this bracket depth)";
            throw numerical_error(os.str());
        }
    }
    br.lo = lo;
    br.hi = hi;
    br.shots = shots;
    return br;
}

std::vector<double> default_branch_offsets() {
    return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
}

namespace {

BranchPoint branch_point_from_shot(const ProblemParams& params, const ShotOutcome& shot,
                                   double offset) {
    if (shot.cls != ShotClass::DerivativeVanishes) {
        std::ostringstream os;
        os << "build_branch: shot at gamma = " << shot.gamma
           << " did not end with a vanishing derivative (offset " << offset << ")";
        throw numerical_error(os.str());
    }
    BranchPoint bp;
    bp.gamma = shot.gamma;
    bp.offset = offset;
    bp.R = shot.r_event;
    bp.U_R = shot.event_state.U;
    bp.lambda = std::pow(bp.R, 4.0) * std::pow(bp.U_R, params.p - 1.0);
    bp.u0 = 1.0 / bp.U_R - 1.0;
    return bp;
}

} // namespace

Branch build_branch(const ProblemParams& params, double gamma_bar,
                    const std::vector<double>& offsets, const ShootOptions& opt) {
    if (offsets.empty()) {
        throw domain_error("build_branch: offsets must be nonempty");
    }
    for (double d : offsets) {
        if (!(d > 0.0)) throw domain_error("build_branch: offsets must be positive");
        if (!(gamma_bar + d < 0.0)) {
            std::ostringstream os;
            os << "build_branch: offset " << d << " pushes gamma to " << gamma_bar + d
               << " >= 0, outside the shooting domain";
            throw domain_error(os.str());
        }
    }

    // One shot per offset; shots are independent, so fan out and reassemble in
    // input order for deterministic output.
    std::vector<std::future<BranchPoint>> futs;
    futs.reserve(offsets.size());
    for (double d : offsets) {
        futs.push_back(std::async(std::launch::async, [&params, &opt, gamma_bar, d] {
            auto shot = classify_shot(params, gamma_bar + d, opt);
            return branch_point_from_shot(params, shot, d);
        }));
    }
    Branch br;
    br.points.reserve(offsets.size());
    for (auto& f : futs) br.points.push_back(f.get());

    br.lambda_hat_star = 0.0;
    for (const auto& bp : br.points) br.lambda_hat_star = std::max(br.lambda_hat_star, bp.lambda);

    // Weak checks. The lambda floor is asymptotic (holds for gamma close enough to
    // gamma_bar); at mid offsets lambda can dip below while it oscillates around
    // the singular parameter, so violations are reported, not fatal.
    double K = std::pow(k0(params), 1.0 / (params.p - 1.0));
    double lambda_floor = std::pow(0.9 * K, params.p - 1.0);
    auto sorted = br.points;
    std::sort(sorted.begin(), sorted.end(),
              [](const BranchPoint& a, const BranchPoint& b) { return a.offset > b.offset; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& bp = sorted[i];
        if (!(bp.lambda > lambda_floor)) {
            std::ostringstream os;
            os << "lambda = " << bp.lambda << " at offset " << bp.offset
               << " dips below the asymptotic floor " << lambda_floor;
            br.warnings.push_back(os.str());
        }
        if (i > 0) {
            if (!(bp.R > sorted[i - 1].R)) {
                std::ostringstream os;
                os << "R not increasing toward the singular end at offset " << bp.offset;
                br.warnings.push_back(os.str());
            }
            if (!(bp.u0 > sorted[i - 1].u0)) {
                std::ostringstream os;
                os << "u0 not increasing toward the singular end at offset " << bp.offset;
                br.warnings.push_back(os.str());
            }
        }
    }
    return br;
}

DirichletProfile dirichlet_profile(const ProblemParams& params, const ShotOutcome& shot,
                                   int grid_n) {
    if (shot.cls != ShotClass::DerivativeVanishes) {
        throw domain_error("dirichlet_profile: shot must end with a vanishing derivative");
    }
    if (grid_n < 2) {
        throw domain_error("dirichlet_profile: grid must have at least 2 points");
    }
    double R = shot.r_event;
    double UR = shot.event_state.U;
    double a = params.a();

    DirichletProfile prof;
    prof.x.resize(grid_n);
    prof.u.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        double x = static_cast<double>(i) / static_cast<double>(grid_n - 1);
        double r = R * x;
        double U;
        if (r <= 0.0) {
            U = 1.0; // normalization U(0) = 1
        } else if (r < shot.r0) {
            U = series_launch(params, shot.gamma, r).U;
        } else if (r <= 1.0 || !shot.has_w) {
            U = shot.radial.at(std::min(r, shot.radial.ode.t_final())).U;
        } else {
            double s = std::log(r);
            U = std::exp(-a * s) * shot.w.at(s).w1;
        }
        prof.x[i] = x;
        prof.u[i] = U / UR - 1.0;
    }
    return prof;
}

std::vector<double> default_manifold_eps() { return {1e-6, 1e-7, 1e-8}; }

LambdaSigmaEstimate estimate_lambda_sigma(const ProblemParams& params,
                                          const std::vector<double>& eps_list, double s_span,
                                          const ShootOptions& opt) {
    if (eps_list.empty()) {
        throw domain_error("estimate_lambda_sigma: eps list must be nonempty");
    }
    for (double e : eps_list) {
        if (!(e >= 1e-10 && e <= 1e-6)) {
            throw domain_error(
                "estimate_lambda_sigma: eps must lie in [1e-10, 1e-6] (linear-order placement)");
        }
    }
    auto sd = eigenvalues(params);
    double nu1 = sd.nu[0].real();
    auto xi1c = eigenvector_for(params, nu1);
    std::array<double, 4> xi1{xi1c[0].real(), xi1c[1].real(), xi1c[2].real(), xi1c[3].real()};
    WPoint w0 = fixed_point_w0(params);

    OdeOptions oo;
    oo.rel_tol = opt.tol;
    oo.abs_tol = opt.tol;

    LambdaSigmaEstimate est;
    est.eps_list = eps_list;
    for (double e : eps_list) {
        WPoint start{0.0, w0.w1 + e * xi1[0], w0.w2 + e * xi1[1], w0.w3 + e * xi1[2],
                     w0.w4 + e * xi1[3]};
        auto traj = integrate_autonomous(params, start, s_span, oo, {w2_zero_event()});
        if (!traj.ode.event) {
            std::ostringstream os;
            os << "estimate_lambda_sigma: no derivative zero within s-span " << s_span
               << " at eps = " << e;
            throw numerical_error(os.str());
        }
        double w1_exit = traj.ode.event->y[0];
        est.lambda_eps.push_back(std::pow(w1_exit, params.p - 1.0));
    }
    est.raw_first = est.lambda_eps.front();

    // Richardson in eps^2 (Neville tableau); the start-point manifold offset is
    // quadratic in eps.
    std::vector<double> T = est.lambda_eps;
    std::size_t m = T.size();
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = m - 1; i >= j; --i) {
            double ratio = eps_list[i - j] / eps_list[i];
            double denom = ratio * ratio - 1.0;
            T[i] = T[i] + (T[i] - T[i - 1]) / denom;
            if (i == j) break;
        }
    }
    est.lambda = T[m - 1];
    return est;
}

} // namespace bihar
