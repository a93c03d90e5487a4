#include "nozzleflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "nozzleflow/errors.hpp"
#include "nozzleflow/hopf.hpp"
#include "nozzleflow/linearized.hpp"
#include "nozzleflow/pde.hpp"

namespace nozzleflow {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

json to_json(const SignReport& report) {
    return json{{"quantity", report.quantity},
                {"min_or_max", report.extremum},
                {"node_of_extremum", {report.node_i, report.node_j}},
                {"pass", report.pass}};
}

json to_json(const SolveReport& report) {
    return json{{"converged", report.converged},
                {"final_eps", report.final_eps},
                {"residual_history", report.residual_history},
                {"stall_reason", report.stall_reason},
                {"h2_ok", report.entry_flow_direction_ok}};
}

json to_json(const HopfReport& report) {
    json j{{"condition_value", report.condition_value},
           {"alpha_trace", report.alpha_trace},
           {"beta_n", report.beta_n}};
    if (report.mu) j["mu"] = *report.mu;
    if (report.barrier_ok) j["barrier_ok"] = *report.barrier_ok;
    if (report.d1_dims) {
        j["d1_dims"] = std::vector<double>(report.d1_dims->data(),
                                           report.d1_dims->data() + report.d1_dims->size());
    }
    return j;
}

void dump_field(const std::filesystem::path& path, const ScalarField& field) {
    std::ofstream out(path);
    write_csv(field, out);
}

struct Setup {
    GasModel gas;
    NozzleProfile profile;
};

Setup make_setup(const RunConfig& config) {
    return Setup{GasModel(config.gamma, config.c0),
                 NozzleProfile::make(config.nozzle_a, config.nozzle_p)};
}

}  // namespace

ScalarField smooth_perturbation(const StripGrid& grid, double amplitude, unsigned long seed) {
    ScalarField bump(grid, 0.0);
    if (amplitude == 0.0) {
        return bump;
    }
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double cos_coeff[4];
    double sin_coeff[4];
    for (int k = 0; k < 4; ++k) {
        cos_coeff[k] = unif(rng);
        sin_coeff[k] = unif(rng);
    }
    for (int i = 0; i < grid.nx; ++i) {
        const double envelope = grid.x(i) * (1.0 - grid.x(i));
        for (int j = 0; j < grid.ny; ++j) {
            double wave = 0.0;
            for (int k = 0; k < 4; ++k) {
                wave += cos_coeff[k] * std::cos((k + 1) * grid.y(j)) +
                        sin_coeff[k] * std::sin((k + 1) * grid.y(j));
            }
            bump.at(i, j) = envelope * wave;
        }
    }
    const double peak = inf_norm(bump);
    if (peak > 0.0) {
        for (double& v : bump.values()) {
            v *= amplitude / peak;
        }
    }
    return bump;
}

int run_symmetric(const RunConfig& config, const std::string& out_dir) {
    try {
        const Setup setup = make_setup(config);
        const SymmetricFlow flow =
            build_symmetric_flow(setup.gas, setup.profile, std::max(config.nx, 2));

        std::filesystem::create_directories(out_dir);
        std::ofstream csv(std::filesystem::path(out_dir) / "symmetric.csv");
        write_csv(flow, csv);

        bool ok = true;
        auto fail = [&ok](const std::string& what) {
            std::cerr << "check failed: " << what << "\n";
            ok = false;
        };

        for (int i = 0; i < flow.stations(); ++i) {
            const double flux = setup.profile.width(flow.x[i]) * flow.rho[i] * flow.u[i];
            if (std::fabs(flux - flow.mass_flux) > 1e-10 * flow.mass_flux) {
                fail("mass flux drifts at station " + std::to_string(i));
                break;
            }
        }
        for (int i = 1; i < flow.stations(); ++i) {
            if (!(flow.u[i] > flow.u[i - 1])) {
                fail("speed not strictly increasing at station " + std::to_string(i));
                break;
            }
        }
        if (std::fabs(flow.mach.back() - 1.0) > 1e-6) {
            fail("exit Mach is not sonic");
        }
        const double b0 = setup.gas.entry_speed(setup.profile.width(0.0));
        if (std::fabs(flow.u.front() - b0) > 1e-10) {
            fail("entry speed mismatches the algebraic entry root");
        }
        std::cout << "symmetric: " << flow.stations() << " stations, mass flux "
                  << flow.mass_flux << (ok ? ", checks passed" : ", CHECKS FAILED") << "\n";
        return ok ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

struct SolveOutcome {
    SolveReport report;
    std::vector<SignReport> signs;
    bool signs_pass = false;
};

SolveOutcome solve_experiment(const RunConfig& config, const Setup& setup,
                              const BoundaryData& data, double guess_amplitude) {
    const StripGrid grid(config.nx, config.ny);
    const SymmetricFlow flow = build_symmetric_flow(setup.gas, setup.profile, config.nx);
    ScalarField guess = lift_symmetric(flow, grid);
    if (guess_amplitude > 0.0) {
        const ScalarField bump = smooth_perturbation(grid, guess_amplitude, config.seed);
        for (int k = 0; k < grid.size(); ++k) {
            guess.values()[k] += bump.values()[k];
        }
    }

    SolveOutcome outcome{newton_solve(guess, setup.gas, setup.profile, data, config.solver),
                         {},
                         false};
    if (!outcome.report.converged) {
        return outcome;
    }

    const LinearizedCoefficients coeffs =
        assemble_linearized(outcome.report.solution, flow, setup.gas, setup.profile);
    const SignReport drift = check_exit_drift_sign(coeffs);
    const KeyInequalityReport key = check_key_inequality(outcome.report.solution, setup.gas);

    SignReport a12;
    a12.quantity = "a12_abs_max";
    a12.extremum = inf_norm(coeffs.a12);
    a12.pass = a12.extremum == 0.0;

    outcome.signs = {drift, key.key_quantity, key.exit_acceleration, key.identity_residual,
                     a12};
    outcome.signs_pass =
        drift.pass && key.key_quantity.pass && key.exit_acceleration.pass && a12.pass;
    return outcome;
}

}  // namespace

int run_solve(const RunConfig& config, const std::string& out_dir, bool emit_sign_reports) {
    try {
        const Setup setup = make_setup(config);
        const BoundaryData data = BoundaryData::symmetric(setup.gas, setup.profile);
        const SolveOutcome outcome = solve_experiment(config, setup, data, config.delta);

        std::filesystem::create_directories(out_dir);
        const std::filesystem::path out(out_dir);
        write_text(out / "solve_report.json", to_json(outcome.report).dump(2) + "\n");
        dump_field(out / "solution.csv", outcome.report.solution);
        dump_field(out / "mach.csv", outcome.report.mach_field);
        if (emit_sign_reports) {
            json reports = json::array();
            for (const SignReport& s : outcome.signs) {
                reports.push_back(to_json(s));
            }
            write_text(out / "sign_reports.json", reports.dump(2) + "\n");
        }

        if (!outcome.report.converged) {
            std::cerr << "solver stalled: " << outcome.report.stall_reason << "\n";
            return 3;
        }
        std::cout << "solve: converged at eps=" << outcome.report.final_eps << ", "
                  << (outcome.signs_pass ? "sign checks passed" : "SIGN CHECKS FAILED") << "\n";
        return outcome.signs_pass ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_perturb(const RunConfig& config, const std::string& out_dir) {
    try {
        const Setup setup = make_setup(config);
        const double b0 = setup.gas.entry_speed(setup.profile.width(0.0));
        const double b0sq = b0 * b0;
        const double b1 = setup.gas.sonic_speed();

        json sweep = json::array();
        for (double delta : {config.delta / 4.0, config.delta / 2.0, config.delta}) {
            BoundaryData data;
            data.exit_speed_sq = b1 * b1;
            if (config.entry_shape == "sin") {
                data.entry_speed_sq = [b0sq, delta](double y) {
                    return b0sq * (1.0 + delta * std::sin(y));
                };
            } else {  // minus_sin2: the one-sided branch below b0^2
                data.entry_speed_sq = [b0sq, delta](double y) {
                    const double s = std::sin(y);
                    return b0sq * (1.0 - delta * s * s);
                };
            }

            const SolveOutcome outcome = solve_experiment(config, setup, data, 0.0);
            double floor = outcome.report.residual_history.empty()
                               ? 0.0
                               : outcome.report.residual_history.front();
            for (double r : outcome.report.residual_history) {
                floor = std::min(floor, r);
            }
            sweep.push_back(json{{"delta", delta},
                                 {"converged", outcome.report.converged},
                                 {"final_eps", outcome.report.final_eps},
                                 {"max_interior_mach",
                                  max_interior_mach(outcome.report.mach_field)},
                                 {"residual_floor", floor}});
        }

        std::filesystem::create_directories(out_dir);
        write_text(std::filesystem::path(out_dir) / "perturb_report.json",
                   sweep.dump(2) + "\n");
        std::cout << "perturb: diagnostics written for " << sweep.size() << " amplitudes\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

DegenOperator sonic_exit_operator(const GasModel& gas, const NozzleProfile& profile) {
    // Exit-boundary operator of the linearized equation in flattening
    // coordinates (t, s) with s = 1 - x: the principal part degenerates at
    // s = 0 and the drift along s is the negated first drift coefficient of
    // the symmetric base flow.
    const double gamma = gas.gamma();
    const double c0 = gas.c0();
    const double b1 = gas.sonic_speed();
    const double kappa = b1 * std::sqrt(profile.d2width(1.0) / (gamma + 1.0));

    struct State {
        double u, uprime, cb2, n, np;
    };
    auto state_at = [gas, profile, gamma, c0, b1, kappa](double s) {
        State st;
        const double x = std::clamp(1.0 - s, 0.0, 1.0);
        st.n = profile.width(x);
        st.np = profile.dwidth(x);
        if (s <= 0.0) {
            st.u = b1;
            st.uprime = kappa;
            st.cb2 = c0 - 0.5 * (gamma - 1.0) * b1 * b1;
        } else if (s < 1e-6) {
            // series leg; the flux root and the u' ratio both lose digits here
            st.u = b1 - kappa * s;
            st.uprime = kappa;
            st.cb2 = c0 - 0.5 * (gamma - 1.0) * st.u * st.u;
        } else {
            st.u = speed_at(gas, profile, x);
            st.cb2 = c0 - 0.5 * (gamma - 1.0) * st.u * st.u;
            st.uprime = -st.np * st.cb2 * st.u / (st.n * (st.cb2 - st.u * st.u));
        }
        return st;
    };

    DegenOperator op;
    op.dim = 2;
    op.a = [state_at](const Vector& p) {
        const State st = state_at(p[1]);
        Matrix a = Matrix::Zero(2, 2);
        a(0, 0) = st.cb2;
        // exact zero at the boundary point instead of rounding residue
        a(1, 1) = (p[1] <= 0.0) ? 0.0 : st.n * st.n * (st.cb2 - st.u * st.u);
        return a;
    };
    op.b = [state_at, gamma](const Vector& p) {
        const State st = state_at(p[1]);
        const double drift1 = -(gamma + 1.0) * st.n * st.n * st.uprime * st.u +
                              st.n * st.np * (st.cb2 + (gamma - 1.0) * st.u * st.u);
        Vector b(2);
        b[0] = 0.0;
        b[1] = -drift1;
        return b;
    };
    op.c = [](const Vector&) { return 0.0; };
    return op;
}

int run_hopf_gallery(const RunConfig& config, const std::string& out_dir) {
    try {
        const Setup setup = make_setup(config);

        struct Case {
            std::string name;
            DegenOperator op;
            BoundaryPatch patch;
            bool expect_applicable;
        };
        std::vector<Case> cases;

        // Heat-like operator at a flat degenerate boundary: pure tangential
        // diffusion plus inward drift.
        {
            DegenOperator op;
            op.dim = 2;
            op.a = [](const Vector&) {
                Matrix a = Matrix::Zero(2, 2);
                a(0, 0) = 1.0;
                return a;
            };
            op.b = [](const Vector&) {
                Vector b(2);
                b << 0.0, 0.8;
                return b;
            };
            op.c = [](const Vector&) { return 0.0; };
            cases.push_back({"heat_like_flat", op, BoundaryPatch::flat(Vector::Zero(2)), true});
        }

        // Laplacian with no drift: condition value zero, lemma inapplicable.
        {
            DegenOperator op;
            op.dim = 2;
            op.a = [](const Vector&) { return Matrix::Identity(2, 2); };
            op.b = [](const Vector&) { return Vector::Zero(2); };
            op.c = [](const Vector&) { return 0.0; };
            cases.push_back({"laplacian_flat", op, BoundaryPatch::flat(Vector::Zero(2)), false});
        }

        // Curved boundary, no drift: the curvature term makes the condition
        // negative for a boundary bending toward the interior.
        {
            DegenOperator op;
            op.dim = 2;
            op.a = [](const Vector&) { return Matrix::Identity(2, 2); };
            op.b = [](const Vector&) { return Vector::Zero(2); };
            op.c = [](const Vector&) { return 0.0; };
            const double curvature = 0.5;
            BoundaryPatch patch;
            patch.base = Vector::Zero(2);
            patch.f = [curvature](const Vector& t) { return 0.5 * curvature * t[0] * t[0]; };
            patch.grad_f = [curvature](const Vector& t) {
                Vector g(1);
                g[0] = curvature * t[0];
                return g;
            };
            patch.hess_f = [curvature](const Vector&) {
                Matrix h(1, 1);
                h(0, 0) = curvature;
                return h;
            };
            cases.push_back({"curved_no_drift", op, patch, false});
        }

        // The sonic-exit operator of the configured gas and nozzle.
        cases.push_back({"sonic_exit", sonic_exit_operator(setup.gas, setup.profile),
                         BoundaryPatch::flat(Vector::Zero(2)), true});

        json gallery = json::array();
        bool all_ok = true;
        Vector half_widths(2);
        half_widths << 0.5, 0.5;
        for (const Case& c : cases) {
            const HopfReport report = hopf_report(c.op, c.patch, half_widths);
            const bool applicable = report.condition_value > 0.0;
            const bool ok =
                applicable == c.expect_applicable && (!applicable || *report.barrier_ok);
            all_ok = all_ok && ok;
            json entry = to_json(report);
            entry["name"] = c.name;
            entry["expect_applicable"] = c.expect_applicable;
            entry["ok"] = ok;
            gallery.push_back(entry);
        }

        std::filesystem::create_directories(out_dir);
        write_text(std::filesystem::path(out_dir) / "hopf_gallery.json",
                   gallery.dump(2) + "\n");
        std::cout << "hopf-gallery: " << cases.size() << " operators, "
                  << (all_ok ? "all outcomes as expected" : "UNEXPECTED OUTCOMES") << "\n";
        return all_ok ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nozzleflow
