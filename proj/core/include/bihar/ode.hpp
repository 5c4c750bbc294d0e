#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bihar/errors.hpp"

// Self-contained Dormand-Prince 5(4) integrator with the classic PI step-size
// controller, 4th-order dense output, and bisection event localization. Supports
// forward and backward integration. Deterministic: identical inputs give
// identical step sequences and bytes.

namespace bihar {

template <std::size_t N>
using StateVec = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<void(double, const StateVec<N>&, StateVec<N>&)>;

// Zero-crossing watch on the solution. direction = +1 fires on a rising crossing
// (g<0 to g>=0), -1 on a falling one, 0 on either. Terminal events stop the run
// at the localized crossing.
template <std::size_t N>
struct OdeEvent {
    std::function<double(double, const StateVec<N>&)> value;
    int direction = 0;
    bool terminal = true;
};

template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0; // left node (right node for backward runs)
    double h = 0.0;  // signed step
    StateVec<N> r1{}, r2{}, r3{}, r4{}, r5{};

    StateVec<N> eval(double t) const {
        double th = (t - t0) / h;
        double th1 = 1.0 - th;
        StateVec<N> y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        }
        return y;
    }
};

template <std::size_t N>
struct EventHit {
    std::size_t index; // which event fired
    double t;
    StateVec<N> y;
};

template <std::size_t N>
struct OdeTrajectory {
    std::vector<double> t;                  // accepted nodes, first entry is the start
    std::vector<StateVec<N>> y;             // states at the nodes
    std::vector<DenseSegment<N>> segments;  // segments[i] interpolates [t[i], t[i+1]]
    std::optional<EventHit<N>> event;
    bool reached_end = false; // ran to the requested endpoint without a terminal event
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;

    double t_final() const { return t.back(); }
    const StateVec<N>& y_final() const { return y.back(); }

    // Dense evaluation, clamped to the covered span.
    StateVec<N> eval(double tq) const {
        if (segments.empty()) return y.front();
        bool fwd = t.back() >= t.front();
        if (fwd ? (tq <= t.front()) : (tq >= t.front())) return y.front();
        if (fwd ? (tq >= t.back()) : (tq <= t.back())) return y.back();
        // binary search for the segment containing tq
        std::size_t lo = 0, hi = segments.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            bool left = fwd ? (tq < t[mid + 1]) : (tq > t[mid + 1]);
            if (left) hi = mid; else lo = mid + 1;
        }
        return segments[lo].eval(tq);
    }
};

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double h_init = 0.0;          // 0: automatic
    double h_max = 0.0;           // 0: span length
    std::size_t max_steps = 10000000;
    bool store_dense = true;
};

template <std::size_t N>
class Dopri5 {
public:
    OdeTrajectory<N> integrate(const OdeRhs<N>& f, double t0, double t1, const StateVec<N>& y0,
                               const OdeOptions& opt, const std::vector<OdeEvent<N>>& events = {}) const {
        if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
            throw domain_error("Dopri5: integration span must be finite and nonzero");
        }
        const double dir = (t1 > t0) ? 1.0 : -1.0;
        const double hmax = (opt.h_max > 0.0) ? opt.h_max : std::abs(t1 - t0);

        OdeTrajectory<N> traj;
        traj.t.push_back(t0);
        traj.y.push_back(y0);

        StateVec<N> y = y0, k1, k2, k3, k4, k5, k6, k7, ynew, yerr, ystage;
        f(t0, y, k1);
        double t = t0;
        double h = (opt.h_init > 0.0) ? opt.h_init
                                      : initial_step(f, t0, y0, k1, dir, hmax, opt);
        h = dir * std::min(std::abs(h), hmax);

        std::vector<double> gvals(events.size());
        for (std::size_t j = 0; j < events.size(); ++j) gvals[j] = events[j].value(t, y);

        double facold = 1e-4;
        bool rejected = false;

        for (std::size_t step = 0;; ++step) {
            if (step >= opt.max_steps) {
                throw numerical_error("Dopri5: exceeded max step count at t = " + std::to_string(t));
            }
            if (std::abs(h) < 1e-14 * std::max(std::abs(t), 1.0)) {
                throw numerical_error("Dopri5: step size underflow at t = " + std::to_string(t) +
                                      " (likely approaching a singularity)");
            }
            bool last = false;
            if ((t + 1.01 * h - t1) * dir > 0.0) {
                h = t1 - t;
                last = true;
            }

            // the seven stages
            stage(y, k1, h, A21, ystage);
            f(t + C2 * h, ystage, k2);
            stage2(y, k1, k2, h, A31, A32, ystage);
            f(t + C3 * h, ystage, k3);
            stage3(y, k1, k2, k3, h, A41, A42, A43, ystage);
            f(t + C4 * h, ystage, k4);
            stage4(y, k1, k2, k3, k4, h, A51, A52, A53, A54, ystage);
            f(t + C5 * h, ystage, k5);
            stage5(y, k1, k2, k3, k4, k5, h, A61, A62, A63, A64, A65, ystage);
            f(t + h, ystage, k6);
            for (std::size_t i = 0; i < N; ++i) {
                ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
            }
            f(t + h, ynew, k7);
            for (std::size_t i = 0; i < N; ++i) {
                yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            }

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                double q = yerr[i] / sc;
                err += q * q;
            }
            err = std::sqrt(err / static_cast<double>(N));
            if (!std::isfinite(err)) err = 1e10; // reject runaway stages

            double fac11 = std::pow(err, EXPO1);
            if (err <= 1.0) {
                // accepted; Lund-stabilized PI controller, facold is the previous error
                double fac = fac11 / std::pow(facold, BETA);
                fac = std::max(FACC2, std::min(FACC1, fac / SAFE));
                double hnew = h / fac;
                facold = std::max(err, 1e-4);

                DenseSegment<N> seg;
                seg.t0 = t;
                seg.h = h;
                for (std::size_t i = 0; i < N; ++i) {
                    double ydiff = ynew[i] - y[i];
                    double bspl = h * k1[i] - ydiff;
                    seg.r1[i] = y[i];
                    seg.r2[i] = ydiff;
                    seg.r3[i] = bspl;
                    seg.r4[i] = ydiff - h * k7[i] - bspl;
                    seg.r5[i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                                     D6 * k6[i] + D7 * k7[i]);
                }

                double tnew = t + h;
                // event scan across [t, tnew]
                std::optional<EventHit<N>> best;
                for (std::size_t j = 0; j < events.size(); ++j) {
                    double ga = gvals[j];
                    double gb = events[j].value(tnew, ynew);
                    bool rising = (ga < 0.0 && gb >= 0.0);
                    bool falling = (ga > 0.0 && gb <= 0.0);
                    bool crossed = (events[j].direction > 0) ? rising
                                 : (events[j].direction < 0) ? falling
                                                             : (rising || falling);
                    gvals[j] = gb;
                    if (!crossed) continue;
                    double te = locate(events[j], seg, t, tnew, ga);
                    if (!best || (te - best->t) * dir < 0.0) {
                        best = EventHit<N>{j, te, seg.eval(te)};
                    }
                }

                if (best && events[best->index].terminal) {
                    traj.t.push_back(best->t);
                    traj.y.push_back(best->y);
                    if (opt.store_dense) traj.segments.push_back(seg);
                    traj.event = best;
                    ++traj.n_accepted;
                    return traj;
                }
                if (best && !traj.event) traj.event = best; // first non-terminal hit, informational

                t = tnew;
                y = ynew;
                k1 = k7; // FSAL
                traj.t.push_back(t);
                traj.y.push_back(y);
                if (opt.store_dense) traj.segments.push_back(seg);
                ++traj.n_accepted;

                if (last) {
                    traj.reached_end = true;
                    return traj;
                }
                if (rejected) hnew = dir * std::min(std::abs(hnew), std::abs(h));
                rejected = false;
                h = dir * std::min(std::abs(hnew), hmax);
            } else {
                double hnew = h / std::min(FACC1, fac11 / SAFE);
                rejected = true;
                ++traj.n_rejected;
                h = hnew;
            }
        }
    }

private:
    static double rms(const StateVec<N>& v, const StateVec<N>& sc) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double q = v[i] / sc[i];
            s += q * q;
        }
        return std::sqrt(s / static_cast<double>(N));
    }

    double initial_step(const OdeRhs<N>& f, double t0, const StateVec<N>& y0,
                        const StateVec<N>& f0, double dir, double hmax,
                        const OdeOptions& opt) const {
        StateVec<N> sc;
        for (std::size_t i = 0; i < N; ++i) {
            sc[i] = opt.abs_tol + opt.rel_tol * std::abs(y0[i]);
        }
        double d0 = rms(y0, sc);
        double d1 = rms(f0, sc);
        double h0 = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * (d0 / d1);
        h0 = std::min(h0, hmax);
        StateVec<N> y1, f1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
        f(t0 + dir * h0, y1, f1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double q = (f1[i] - f0[i]) / sc[i];
            d2 += q * q;
        }
        d2 = std::sqrt(d2 / static_cast<double>(N)) / h0;
        double dm = std::max(d1, d2);
        double h1 = (dm <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                  : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, hmax});
    }

    // Bisection on the dense output until the bracket is below 1e-12 * max(|t|, 1).
    double locate(const OdeEvent<N>& ev, const DenseSegment<N>& seg,
                  double ta, double tb, double ga) const {
        double a = ta, b = tb;
        for (int it = 0; it < 200; ++it) {
            if (std::abs(b - a) <= 1e-12 * std::max(std::abs(b), 1.0)) break;
            double m = 0.5 * (a + b);
            if (m == a || m == b) break;
            double gm = ev.value(m, seg.eval(m));
            bool same_side = (ga < 0.0) ? (gm < 0.0) : (gm > 0.0);
            if (gm == 0.0) { b = m; break; }
            if (same_side) a = m; else b = m;
        }
        return b; // right end: the state has crossed by here
    }

    static void stage(const StateVec<N>& y, const StateVec<N>& k1, double h, double a21,
                      StateVec<N>& out) {
        for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * a21 * k1[i];
    }
    static void stage2(const StateVec<N>& y, const StateVec<N>& k1, const StateVec<N>& k2,
                       double h, double a1, double a2, StateVec<N>& out) {
        for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * (a1 * k1[i] + a2 * k2[i]);
    }
    static void stage3(const StateVec<N>& y, const StateVec<N>& k1, const StateVec<N>& k2,
                       const StateVec<N>& k3, double h, double a1, double a2, double a3,
                       StateVec<N>& out) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a1 * k1[i] + a2 * k2[i] + a3 * k3[i]);
    }
    static void stage4(const StateVec<N>& y, const StateVec<N>& k1, const StateVec<N>& k2,
                       const StateVec<N>& k3, const StateVec<N>& k4, double h, double a1,
                       double a2, double a3, double a4, StateVec<N>& out) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a1 * k1[i] + a2 * k2[i] + a3 * k3[i] + a4 * k4[i]);
    }
    static void stage5(const StateVec<N>& y, const StateVec<N>& k1, const StateVec<N>& k2,
                       const StateVec<N>& k3, const StateVec<N>& k4, const StateVec<N>& k5,
                       double h, double a1, double a2, double a3, double a4, double a5,
                       StateVec<N>& out) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a1 * k1[i] + a2 * k2[i] + a3 * k3[i] + a4 * k4[i] + a5 * k5[i]);
    }

    // Dormand-Prince coefficients
    static constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
    static constexpr double A21 = 1.0 / 5.0;
    static constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
    static constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
    static constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                            A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
    static constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0,
                            A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0,
                            A65 = -5103.0 / 18656.0;
    static constexpr double A71 = 35.0 / 384.0, A73 = 500.0 / 1113.0, A74 = 125.0 / 192.0,
                            A75 = -2187.0 / 6784.0, A76 = 11.0 / 84.0;
    static constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                            E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
    static constexpr double D1 = -12715105075.0 / 11282082432.0,
                            D3 = 87487479700.0 / 32700410799.0,
                            D4 = -10690763975.0 / 1880347072.0,
                            D5 = 701980252875.0 / 199316789632.0,
                            D6 = -1453857185.0 / 822651844.0,
                            D7 = 69997945.0 / 29380423.0;
    // PI controller constants (Hairer, Norsett, Wanner)
    static constexpr double SAFE = 0.9, BETA = 0.04, EXPO1 = 0.2 - 0.75 * BETA;
    static constexpr double FACC1 = 5.0;  // 1/fac1, max step growth
    static constexpr double FACC2 = 0.1;  // 1/fac2, max step shrink
};

template <std::size_t N>
OdeTrajectory<N> integrate_ode(const OdeRhs<N>& f, double t0, double t1, const StateVec<N>& y0,
                               const OdeOptions& opt, const std::vector<OdeEvent<N>>& events = {}) {
    return Dopri5<N>{}.integrate(f, t0, t1, y0, opt, events);
}

} // namespace bihar
