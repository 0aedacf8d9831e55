// Copyright 2026 The tqs-coherence Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tqs: command-line front end for the two-qubit coherence library.
//
// Exit codes: 0 success, 1 usage error, 2 invariant or verification
// failure, 3 I/O failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "tqs/coherence.hpp"
#include "tqs/evolution.hpp"
#include "tqs/io.hpp"
#include "tqs/model.hpp"
#include "tqs/scan.hpp"

namespace {

using tqs::evolution::BellLabel;

enum ExitCode : int { kOk = 0, kUsage = 1, kFailure = 2, kIo = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, BellLabel> kStateNames = {
    {"phi+", BellLabel::kPhiPlus},
    {"psi+", BellLabel::kPsiPlus},
    {"phi-", BellLabel::kPhiMinus},
    {"psi-", BellLabel::kPsiMinus},
};

struct ParamFlags {
    double e_j = 0.5;
    double e_m = 1.5;
    double hbar = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ej", e_j, "Josephson energy E_J")->capture_default_str();
        cmd->add_option("--em", e_m, "mutual coupling energy E_m")->capture_default_str();
        cmd->add_option("--hbar", hbar, "reduced Planck constant (model units)")->capture_default_str();
    }

    [[nodiscard]] tqs::model::CircuitParams params() const {
        try {
            return {e_j, e_m, hbar};
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

template <typename T>
T wrap_usage(const std::function<T()>& make) {
    try {
        return make();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

/// Writes `body` to `path`, or to stdout when path is "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path == "-") {
        body(std::cout);
        std::cout.flush();
        if (!std::cout) {
            throw IoError("failed writing to standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    body(file);
    file.close();
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

tqs::io::Format format_from(const std::string& name) {
    auto f = tqs::io::parse_format(name);
    if (!f) {
        throw UsageError("unknown format '" + name + "'");
    }
    return *f;
}

int run_evolve(BellLabel label, const tqs::model::CircuitParams& p, double t) {
    namespace ev = tqs::evolution;
    const auto u = ev::numeric_propagator(p, t);
    const auto psi = ev::evolve(ev::bell_state(label), u);
    const auto rho = ev::density_matrix(psi);
    const double c_numeric = tqs::coherence::l1_coherence(rho);
    const double c_closed = tqs::coherence::closed_form_coherence(label, p, t);

    std::cout << "state: " << ev::to_string(label) << "  e_j=" << tqs::io::format_coord(p.e_j())
              << " e_m=" << tqs::io::format_coord(p.e_m()) << " hbar=" << tqs::io::format_coord(p.hbar())
              << " t=" << tqs::io::format_coord(t) << '\n';
    std::cout << "amplitudes (re, im):\n";
    for (std::size_t k = 0; k < 4; ++k) {
        std::cout << "  " << tqs::io::format_value(psi[k].real()) << ' ' << tqs::io::format_value(psi[k].imag()) << '\n';
    }
    for (const char* part : {"re", "im"}) {
        std::cout << "rho (" << part << "):\n";
        for (std::size_t r = 0; r < 4; ++r) {
            std::cout << ' ';
            for (std::size_t c = 0; c < 4; ++c) {
                const auto z = rho(r, c);
                std::cout << ' ' << tqs::io::format_value(part[0] == 'r' ? z.real() : z.imag());
            }
            std::cout << '\n';
        }
    }
    std::cout << "C(numeric)=" << tqs::io::format_value(c_numeric) << '\n';
    std::cout << "C(closed)=" << tqs::io::format_value(c_closed) << '\n';
    std::cout << "gap=" << tqs::io::format_value(std::abs(c_numeric - c_closed)) << '\n';
    return kOk;
}

tqs::scan::ClosedFormRoutes faulty_routes(const std::string& fault) {
    tqs::scan::ClosedFormRoutes routes;
    if (fault == "propagator") {
        routes.propagator = [](const tqs::model::CircuitParams& p, double t) {
            // Sign-flipped time, i.e. every phase conjugated.
            return tqs::evolution::analytic_propagator(p, -t).matrix();
        };
    } else if (fault == "density") {
        routes.density = [](BellLabel l, const tqs::model::CircuitParams& p, double t) {
            return tqs::evolution::closed_form_density(l, p, 2.0 * t).matrix();
        };
    } else if (fault == "coherence") {
        routes.coherence = [](BellLabel l, const tqs::model::CircuitParams& p, double t) {
            return tqs::coherence::closed_form_coherence(l, p, t) + 1e-6;
        };
    }
    return routes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit superconducting circuit: Bell-state coherence dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tqs::io::kVersion));

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "propagate a Bell state and print psi, rho and C");
    std::string evolve_state;
    double evolve_t = 0.0;
    ParamFlags evolve_params;
    evolve_cmd->add_option("--state", evolve_state, "initial Bell state")
        ->required()
        ->check(CLI::IsMember(kStateNames));
    evolve_params.attach(evolve_cmd);
    evolve_cmd->add_option("--t", evolve_t, "time")->required();

    // series
    auto* series_cmd = app.add_subcommand("series", "C(t) time series, closed form and numeric");
    std::string series_state = "phi+";
    ParamFlags series_params;
    double series_t_min = 0.0;
    double series_t_max = 10.0;
    std::size_t series_steps = tqs::scan::kDefaultTimeSteps;
    std::string series_out = "-";
    std::string series_format = "csv";
    series_cmd->add_option("--state", series_state, "initial Bell state")
        ->check(CLI::IsMember(kStateNames))
        ->capture_default_str();
    series_params.attach(series_cmd);
    series_cmd->add_option("--t-min", series_t_min, "first time sample")->capture_default_str();
    series_cmd->add_option("--t-max", series_t_max, "last time sample")->capture_default_str();
    series_cmd->add_option("--steps", series_steps, "number of time samples (>= 2)")->capture_default_str();
    series_cmd->add_option("--out", series_out, "output path, '-' for stdout")->capture_default_str();
    series_cmd->add_option("--format", series_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "closed-form C over (parameter, t)");
    std::string grid_state = "phi+";
    ParamFlags grid_params;
    std::string grid_vary;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::size_t grid_vsteps = tqs::scan::kDefaultGridSteps;
    double grid_t_min = 0.0;
    double grid_t_max = 10.0;
    std::size_t grid_steps = tqs::scan::kDefaultGridSteps;
    std::string grid_out = "-";
    std::string grid_format = "csv";
    grid_cmd->add_option("--state", grid_state, "initial Bell state")
        ->check(CLI::IsMember(kStateNames))
        ->capture_default_str();
    grid_params.attach(grid_cmd);
    grid_cmd->add_option("--vary", grid_vary, "parameter on the first axis")
        ->required()
        ->check(CLI::IsMember({"ej", "em"}));
    grid_cmd->add_option("--min", grid_min, "lower end of the varied parameter (default 0)");
    grid_cmd->add_option("--max", grid_max, "upper end (default 0.5 for ej, 1.5 for em)");
    grid_cmd->add_option("--vsteps", grid_vsteps, "samples along the parameter axis")->capture_default_str();
    grid_cmd->add_option("--t-min", grid_t_min, "first time sample")->capture_default_str();
    grid_cmd->add_option("--t-max", grid_t_max, "last time sample")->capture_default_str();
    grid_cmd->add_option("--steps", grid_steps, "samples along the time axis")->capture_default_str();
    grid_cmd->add_option("--out", grid_out, "output path, '-' for stdout")->capture_default_str();
    grid_cmd->add_option("--format", grid_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "seeded closed-form vs numeric cross-validation");
    std::size_t verify_samples = 1000;
    std::uint64_t verify_seed = 42;
    std::string verify_format = "text";
    std::string verify_fault;
    verify_cmd->add_option("--samples", verify_samples, "number of random draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "PRNG seed")->capture_default_str();
    verify_cmd->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    verify_cmd->add_option("--inject-fault", verify_fault, "negative control: break one closed-form route")
        ->check(CLI::IsMember({"propagator", "density", "coherence"}))
        ->group("");

    // optimize
    auto* optimize_cmd = app.add_subcommand("optimize", "find an operating point that maximizes or freezes C");
    std::string optimize_state = "phi+";
    ParamFlags optimize_params;
    double optimize_t_min = 0.0;
    double optimize_t_max = 10.0;
    std::string optimize_objective = "maximize";
    std::string optimize_format = "text";
    optimize_cmd->add_option("--state", optimize_state, "initial Bell state")
        ->check(CLI::IsMember(kStateNames))
        ->capture_default_str();
    optimize_params.attach(optimize_cmd);
    optimize_cmd->add_option("--t-min", optimize_t_min, "window start")->capture_default_str();
    optimize_cmd->add_option("--t-max", optimize_t_max, "window end")->capture_default_str();
    optimize_cmd->add_option("--objective", optimize_objective, "maximize or stabilize")
        ->check(CLI::IsMember({"maximize", "stabilize"}))
        ->capture_default_str();
    optimize_cmd->add_option("--format", optimize_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*evolve_cmd) {
            if (!std::isfinite(evolve_t)) {
                throw UsageError("--t must be finite");
            }
            return run_evolve(kStateNames.at(evolve_state), evolve_params.params(), evolve_t);
        }
        if (*series_cmd) {
            const auto params = series_params.params();
            const auto grid = wrap_usage<tqs::scan::TimeGrid>(
                [&] { return tqs::scan::TimeGrid(series_t_min, series_t_max, series_steps); });
            const auto format = format_from(series_format);
            const auto series = tqs::scan::time_series(kStateNames.at(series_state), params, grid);
            emit(series_out, [&](std::ostream& os) {
                if (format == tqs::io::Format::kCsv) {
                    tqs::io::write_series_csv(os, series);
                } else {
                    os << tqs::io::series_json(series, grid).dump(2) << '\n';
                }
            });
            return kOk;
        }
        if (*grid_cmd) {
            const auto params = grid_params.params();
            const auto vary = grid_vary == "ej" ? tqs::scan::VaryParam::kEJ : tqs::scan::VaryParam::kEM;
            const tqs::scan::ParamRange range{grid_min.value_or(0.0),
                                              grid_max.value_or(vary == tqs::scan::VaryParam::kEJ ? 0.5 : 1.5),
                                              grid_vsteps};
            const auto tgrid = wrap_usage<tqs::scan::TimeGrid>(
                [&] { return tqs::scan::TimeGrid(grid_t_min, grid_t_max, grid_steps); });
            const auto label = kStateNames.at(grid_state);
            const auto g = wrap_usage<tqs::scan::ScanGrid>(
                [&] { return tqs::scan::grid_scan(label, params, vary, range, tgrid); });
            const auto format = format_from(grid_format);
            emit(grid_out, [&](std::ostream& os) {
                if (format == tqs::io::Format::kCsv) {
                    tqs::io::write_grid_csv(os, g);
                } else {
                    os << tqs::io::grid_json(g, label, params, range, tgrid).dump(2) << '\n';
                }
            });
            return kOk;
        }
        if (*verify_cmd) {
            const auto report = tqs::scan::cross_validate(verify_samples, verify_seed, faulty_routes(verify_fault));
            if (verify_format == "json") {
                std::cout << tqs::io::report_json(report).dump(2) << '\n';
            } else {
                tqs::io::write_report_text(std::cout, report);
            }
            return report.passed ? kOk : kFailure;
        }
        if (*optimize_cmd) {
            const auto params = optimize_params.params();
            const auto objective =
                optimize_objective == "maximize" ? tqs::scan::Objective::kMaximize : tqs::scan::Objective::kStabilize;
            const auto op = wrap_usage<tqs::scan::OperatingPoint>([&] {
                return tqs::scan::find_operating_point(kStateNames.at(optimize_state), params,
                                                       {optimize_t_min, optimize_t_max}, objective);
            });
            if (optimize_format == "json") {
                std::cout << tqs::io::operating_point_json(op).dump(2) << '\n';
            } else {
                tqs::io::write_operating_point_text(std::cout, op);
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const tqs::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kFailure;
    } catch (const tqs::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
