// Command-line front end: JSON summaries on stdout, CSV/SVG artifacts on disk.
// Exit codes: 0 success, 1 usage, 2 domain error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bihar/analysis.hpp"
#include "bihar/io.hpp"

using json = nlohmann::ordered_json;
using namespace bihar;

namespace {

constexpr double kDefaultTol = 1e-12;
constexpr double kDefaultRMax = 1e3;
constexpr double kDefaultBracketTol = 1e-13;
const char* kDefaultOffsets = "1e-2..1e-8";

json num_or_null(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

// Offset spec: either "A..B" (log-spaced per decade, A down to B) or a
// comma-separated list of positive values.
std::vector<double> parse_offsets(const std::string& spec) {
    std::vector<double> out;
    auto range_pos = spec.find("..");
    if (range_pos != std::string::npos) {
        double a = std::stod(spec.substr(0, range_pos));
        double b = std::stod(spec.substr(range_pos + 2));
        if (!(a > 0.0) || !(b > 0.0) || !(a > b)) {
            throw domain_error("offsets range must satisfy A > B > 0, got " + spec);
        }
        int decades = static_cast<int>(std::lround(std::log10(a / b)));
        for (int k = 0; k <= decades; ++k) out.push_back(a * std::pow(10.0, -k));
        return out;
    }
    std::istringstream is(spec);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        double v = std::stod(cell);
        if (!(v > 0.0)) throw domain_error("offsets must be positive, got " + cell);
        out.push_back(v);
    }
    if (out.empty()) throw domain_error("empty offsets spec");
    return out;
}

std::string prep_out_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return dir;
}

Table radial_table(const RadialTrajectory& traj) {
    Table t;
    t.columns = {"r", "U", "U1", "U2", "U3"};
    for (std::size_t i = 0; i < traj.ode.t.size(); ++i) {
        const auto& y = traj.ode.y[i];
        t.rows.push_back({traj.ode.t[i], y[0], y[1], y[2], y[3]});
    }
    return t;
}

Table w_table(const WTrajectory& traj) {
    Table t;
    t.columns = {"s", "w1", "w2", "w3", "w4"};
    for (std::size_t i = 0; i < traj.ode.t.size(); ++i) {
        const auto& y = traj.ode.y[i];
        t.rows.push_back({traj.ode.t[i], y[0], y[1], y[2], y[3]});
    }
    return t;
}

json event_sidecar(const std::optional<EventHit<4>>& ev) {
    json j;
    if (ev) {
        j["terminal_event"] = {{"index", ev->index},
                               {"t", ev->t},
                               {"y", {ev->y[0], ev->y[1], ev->y[2], ev->y[3]}}};
    } else {
        j["terminal_event"] = nullptr;
    }
    return j;
}

const char* class_name(ShotClass c) {
    switch (c) {
        case ShotClass::HitsZero: return "HitsZero";
        case ShotClass::DerivativeVanishes: return "DerivativeVanishes";
        default: return "Undetermined";
    }
}

json run_pc(int n) {
    json j;
    j["schema"] = "bihar/pc/v1";
    j["n"] = n;
    j["p_sobolev"] = critical_sobolev_exponent(n);
    j["p_c"] = num_or_null(critical_exponent_pc(n));
    return j;
}

json run_spectrum(int n, double p) {
    ProblemParams pp(n, p);
    auto sd = eigenvalues(pp);
    auto [N1, N2, N3] = n_coefficients(pp);
    auto w0 = fixed_point_w0(pp);
    auto t = nu2_eigenvector(pp);
    json j;
    j["schema"] = "bihar/spectrum/v1";
    j["n"] = n;
    j["p"] = p;
    j["a"] = pp.a();
    j["k0"] = k0(pp);
    j["pK0"] = p * k0(pp);
    j["N1"] = N1;
    j["N2"] = N2;
    j["N3"] = N3;
    j["nu"] = json::array();
    for (const auto& nu : sd.nu) j["nu"].push_back({nu.real(), nu.imag()});
    j["oscillatory"] = classify_regime(pp).tag == RegimeTag::OscillatorySupercritical;
    j["w0"] = {w0.w1, w0.w2, w0.w3, w0.w4};
    j["t_nu2"] = {t.t1, t.t2, t.t3, t.t4};
    return j;
}

json run_shoot(int n, double p, double gamma, const ShootOptions& sopt, const std::string& out) {
    ProblemParams pp(n, p);
    auto shot = classify_shot(pp, gamma, sopt);
    json j;
    j["schema"] = "bihar/shoot/v1";
    j["n"] = n;
    j["p"] = p;
    j["gamma"] = gamma;
    j["tol"] = sopt.tol;
    j["class"] = class_name(shot.cls);
    if (shot.cls == ShotClass::Undetermined && shot.r_event == 0.0) {
        j["r_event"] = nullptr;
        j["event_state"] = nullptr;
    } else {
        j["r_event"] = shot.r_event;
        j["event_state"] = {{"r", shot.event_state.r},
                            {"U", shot.event_state.U},
                            {"U1", shot.event_state.U1},
                            {"U2", shot.event_state.U2},
                            {"U3", shot.event_state.U3}};
    }
    j["artifacts"] = json::array();
    if (!out.empty()) {
        auto dir = prep_out_dir(out);
        auto radial_path = dir + "/radial.csv";
        write_csv(radial_table(shot.radial), radial_path);
        write_text(event_sidecar(shot.radial.ode.event).dump(2) + "\n",
                   radial_path + ".event.json");
        j["artifacts"].push_back(radial_path);
        j["artifacts"].push_back(radial_path + ".event.json");
        if (shot.has_w) {
            auto w_path = dir + "/w.csv";
            write_csv(w_table(shot.w), w_path);
            write_text(event_sidecar(shot.w.ode.event).dump(2) + "\n", w_path + ".event.json");
            j["artifacts"].push_back(w_path);
            j["artifacts"].push_back(w_path + ".event.json");
        }
    }
    return j;
}

json run_branch(int n, double p, const std::string& offsets_spec, double bracket_tol,
                const ShootOptions& sopt, const std::string& out) {
    ProblemParams pp(n, p);
    auto offsets = parse_offsets(offsets_spec);
    auto bracket = find_gamma_bar(pp, bracket_tol, sopt);
    auto branch = build_branch(pp, bracket.mid(), offsets, sopt);
    auto sigma = estimate_lambda_sigma(pp, default_manifold_eps(), 50.0, sopt);

    json j;
    j["schema"] = "bihar/branch/v1";
    j["n"] = n;
    j["p"] = p;
    j["gamma_bar"] = bracket.mid();
    j["bracket"] = {{"lo", bracket.lo},
                    {"hi", bracket.hi},
                    {"width", bracket.width()},
                    {"shots", bracket.shots}};
    j["lambda_sigma"] = sigma.lambda;
    j["lambda_star_est"] = branch.lambda_hat_star;
    j["points"] = json::array();
    for (const auto& bp : branch.points) {
        j["points"].push_back({{"gamma", bp.gamma},
                               {"offset", bp.offset},
                               {"R", bp.R},
                               {"U_R", bp.U_R},
                               {"lambda", bp.lambda},
                               {"u0", bp.u0}});
    }
    j["warnings"] = branch.warnings;
    j["artifacts"] = json::array();
    if (!out.empty()) {
        auto dir = prep_out_dir(out);
        Table t;
        t.columns = {"gamma", "R_gamma", "U_at_R", "lambda", "u0"};
        for (const auto& bp : branch.points) {
            t.rows.push_back({bp.gamma, bp.R, bp.U_R, bp.lambda, bp.u0});
        }
        auto csv_path = dir + "/branch.csv";
        write_csv(t, csv_path);
        PlotSeries series{"branch", {}, {}};
        for (const auto& bp : branch.points) {
            series.x.push_back(bp.lambda);
            series.y.push_back(bp.u0);
        }
        auto svg_path = dir + "/branch.svg";
        emit_svg({series}, PlotKind::Bifurcation, "Dirichlet branch", "lambda", "u0", svg_path);
        j["artifacts"].push_back(csv_path);
        j["artifacts"].push_back(svg_path);
    }
    return j;
}

json run_oscillate(int n, double p, std::optional<double> gamma, double bracket_tol,
                   const ShootOptions& sopt, const std::string& out) {
    ProblemParams pp(n, p);
    double g;
    if (gamma) {
        g = *gamma;
    } else {
        auto bracket = find_gamma_bar(pp, bracket_tol, sopt);
        g = bracket.mid();
    }
    auto shot = classify_shot(pp, g, sopt);
    if (!shot.has_w) {
        throw numerical_error("oscillate: shot decided before reaching the autonomous chart; "
                              "no oscillation window at gamma = " + std::to_string(g));
    }
    auto rep = oscillation_report(pp, shot.w);
    json j;
    j["schema"] = "bihar/oscillation/v1";
    j["n"] = n;
    j["p"] = p;
    j["gamma"] = g;
    j["sign_changes"] = rep.sign_changes;
    j["crossing_radii"] = rep.crossing_radii;
    j["final_ratio"] = rep.final_ratio;
    j["reliable_r_max"] = rep.reliable_r_max;
    j["artifacts"] = json::array();
    if (!out.empty()) {
        auto dir = prep_out_dir(out);
        auto csv_path = dir + "/w.csv";
        write_csv(w_table(shot.w), csv_path);
        double K = std::pow(k0(pp), 1.0 / (p - 1.0));
        PlotSeries w1{"w1", {}, {}};
        for (std::size_t i = 0; i < shot.w.ode.t.size(); ++i) {
            w1.x.push_back(shot.w.ode.t[i]);
            w1.y.push_back(shot.w.ode.y[i][0]);
        }
        PlotSeries level{"K0^(1/(p-1))",
                         {shot.w.ode.t.front(), shot.w.ode.t_final()},
                         {K, K}};
        auto svg_path = dir + "/w1.svg";
        emit_svg({w1, level}, PlotKind::Trajectory, "w1 along the shot", "s = ln r", "w1",
                 svg_path);
        j["artifacts"].push_back(csv_path);
        j["artifacts"].push_back(svg_path);
    }
    return j;
}

json run_verdict(int n, double p) {
    ProblemParams pp(n, p);
    auto rv = extremal_regularity_verdict(pp);
    json j;
    j["schema"] = "bihar/verdict/v1";
    j["n"] = n;
    j["p"] = p;
    j["pK0"] = rv.pK0;
    j["hardy"] = rv.hardy;
    j["p_c"] = num_or_null(rv.p_c);
    j["verdict"] =
        rv.verdict == RegularityVerdict::V::ExtremalRegular ? "ExtremalRegular" : "NoConclusion";
    return j;
}

json run_plot(const std::string& input, const std::string& kind_name, const std::string& x_col,
              const std::string& y_cols, const std::string& title, const std::string& out_path) {
    auto table = read_csv(input);
    auto col_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (table.columns[i] == name) return i;
        }
        throw domain_error("plot: no column named '" + name + "' in " + input);
    };
    PlotKind kind;
    if (kind_name == "trajectory") {
        kind = PlotKind::Trajectory;
    } else if (kind_name == "bifurcation") {
        kind = PlotKind::Bifurcation;
    } else if (kind_name == "phase") {
        kind = PlotKind::Phase;
    } else {
        throw domain_error("plot: kind must be trajectory, bifurcation, or phase");
    }
    std::size_t xi = col_index(x_col);
    std::vector<PlotSeries> series;
    std::istringstream ys(y_cols);
    std::string yname;
    while (std::getline(ys, yname, ',')) {
        std::size_t yi = col_index(yname);
        PlotSeries s{yname, {}, {}};
        for (const auto& row : table.rows) {
            s.x.push_back(row[xi]);
            s.y.push_back(row[yi]);
        }
        series.push_back(std::move(s));
    }
    emit_svg(series, kind, title, x_col, y_cols, out_path);
    json j;
    j["schema"] = "bihar/plot/v1";
    j["input"] = input;
    j["out"] = out_path;
    j["rows"] = table.rows.size();
    j["series"] = series.size();
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial solver for the supercritical fourth-order problem "
                 "Lap^2 u = |u|^(p-1) u.\n"
                 "Defaults: --tol 1e-12, --r-max 1e3, --offsets 1e-2..1e-8, "
                 "--bracket-tol 1e-13."};
    app.require_subcommand(1);

    int n = 5;
    double p = 10.0;
    double gamma = 0.0;
    double tol = kDefaultTol;
    double r_max = kDefaultRMax;
    double bracket_tol = kDefaultBracketTol;
    std::string offsets = kDefaultOffsets;
    std::string out_dir;

    auto add_np = [&](CLI::App* cmd, bool with_p = true) {
        cmd->add_option("--n", n, "space dimension (>= 5)")->required();
        if (with_p) cmd->add_option("--p", p, "nonlinearity exponent (supercritical)")->required();
    };
    auto add_numerics = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "integration tolerance (abs and rel)");
        cmd->add_option("--r-max", r_max, "initial outer radius for event search");
    };

    auto* c_pc = app.add_subcommand("pc", "second critical exponent p_c (n >= 13)");
    add_np(c_pc, false);

    auto* c_spec = app.add_subcommand("spectrum", "linearization eigenvalues and eigenvectors");
    add_np(c_spec);

    auto* c_shoot = app.add_subcommand("shoot", "classify one shot U''(0) = gamma");
    add_np(c_shoot);
    c_shoot->add_option("--gamma", gamma, "initial second derivative (negative)")->required();
    add_numerics(c_shoot);
    c_shoot->add_option("--out", out_dir, "artifact directory (radial.csv, w.csv, sidecars)");

    auto* c_branch = app.add_subcommand("branch", "Dirichlet bifurcation branch toward gamma_bar");
    add_np(c_branch);
    c_branch->add_option("--offsets", offsets, "offset spec: A..B per decade or comma list");
    c_branch->add_option("--bracket-tol", bracket_tol, "relative bracket width for gamma_bar");
    add_numerics(c_branch);
    c_branch->add_option("--out", out_dir, "artifact directory (branch.csv, branch.svg)");

    auto* c_osc = app.add_subcommand("oscillate", "oscillation report near gamma_bar");
    add_np(c_osc);
    c_osc->add_option("--gamma", gamma, "shot to analyze (default: bracket midpoint)");
    c_osc->add_option("--bracket-tol", bracket_tol, "relative bracket width for gamma_bar");
    add_numerics(c_osc);
    c_osc->add_option("--out", out_dir, "artifact directory (w.csv, w1.svg)");

    auto* c_verdict = app.add_subcommand("verdict", "extremal-solution regularity verdict");
    add_np(c_verdict);

    std::string plot_input, plot_kind = "trajectory", plot_x, plot_y, plot_title, plot_out;
    auto* c_plot = app.add_subcommand("plot", "render a CSV to a standalone SVG");
    c_plot->add_option("--input", plot_input, "CSV file")->required();
    c_plot->add_option("--kind", plot_kind, "trajectory | bifurcation | phase");
    c_plot->add_option("--x", plot_x, "x column name")->required();
    c_plot->add_option("--y", plot_y, "y column name(s), comma separated")->required();
    c_plot->add_option("--title", plot_title, "plot title");
    c_plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        ShootOptions sopt;
        sopt.tol = tol;
        sopt.r_max = r_max;
        json j;
        if (*c_pc) {
            j = run_pc(n);
        } else if (*c_spec) {
            j = run_spectrum(n, p);
        } else if (*c_shoot) {
            j = run_shoot(n, p, gamma, sopt, out_dir);
        } else if (*c_branch) {
            j = run_branch(n, p, offsets, bracket_tol, sopt, out_dir);
        } else if (*c_osc) {
            std::optional<double> g;
            if (c_osc->count("--gamma")) g = gamma;
            j = run_oscillate(n, p, g, bracket_tol, sopt, out_dir);
        } else if (*c_verdict) {
            j = run_verdict(n, p);
        } else if (*c_plot) {
            j = run_plot(plot_input, plot_kind, plot_x, plot_y, plot_title, plot_out);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
