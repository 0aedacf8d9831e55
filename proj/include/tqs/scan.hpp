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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "tqs/coherence.hpp"
#include "tqs/evolution.hpp"
#include "tqs/model.hpp"
#include "tqs/random.hpp"

namespace tqs::scan {

using evolution::BellLabel;
using linalg::Complex;
using linalg::Matrix;
using model::CircuitParams;

inline constexpr std::size_t kDefaultTimeSteps = 1001;
inline constexpr std::size_t kDefaultGridSteps = 101;

/// Uniform grid with both endpoints included.
class TimeGrid {
public:
    TimeGrid(double t_start, double t_end, std::size_t steps) : t_start_(t_start), t_end_(t_end), steps_(steps) {
        if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
            throw std::invalid_argument("TimeGrid: need finite t_end > t_start");
        }
        if (steps < 2) {
            throw std::invalid_argument("TimeGrid: need at least 2 steps");
        }
    }

    [[nodiscard]] double t_start() const { return t_start_; }
    [[nodiscard]] double t_end() const { return t_end_; }
    [[nodiscard]] std::size_t steps() const { return steps_; }
    [[nodiscard]] double spacing() const { return (t_end_ - t_start_) / static_cast<double>(steps_ - 1); }

    [[nodiscard]] double at(std::size_t k) const {
        if (k + 1 == steps_) {
            return t_end_;
        }
        return t_start_ + (t_end_ - t_start_) * static_cast<double>(k) / static_cast<double>(steps_ - 1);
    }

    [[nodiscard]] std::vector<double> points() const {
        std::vector<double> out(steps_);
        for (std::size_t k = 0; k < steps_; ++k) {
            out[k] = at(k);
        }
        return out;
    }

private:
    double t_start_;
    double t_end_;
    std::size_t steps_;
};

/// Spectral propagator with the eigendecomposition done once per parameter
/// set. Produces the same matrices as evolution::numeric_propagator.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const CircuitParams& p)
        : params_(p), eig_(model::spectral_decompose(model::build_hamiltonian_tensor(p))) {
        for (const auto& v : eig_.eigenvectors) {
            projectors_.push_back(linalg::outer(v, v));
        }
    }

    [[nodiscard]] evolution::UnitaryMatrix at(double t) const {
        std::vector<Complex> u(16);
        for (std::size_t j = 0; j < projectors_.size(); ++j) {
            const Complex phase = std::polar(1.0, -eig_.eigenvalues[j] * t / params_.hbar());
            for (std::size_t k = 0; k < 16; ++k) {
                u[k] += phase * projectors_[j].entries()[k];
            }
        }
        return {Matrix(4, std::move(u)), t, params_};
    }

private:
    CircuitParams params_;
    linalg::EigenSystem eig_;
    std::vector<Matrix> projectors_;
};

/// C(t) from the numeric pipeline: spectral U, evolve, outer product, l1 sum.
inline double pipeline_coherence(BellLabel label, const SpectralPropagator& prop, double t) {
    const auto psi = evolution::evolve(evolution::bell_state(label), prop.at(t));
    return coherence::l1_coherence(evolution::density_matrix(psi));
}

struct CoherenceSeries {
    BellLabel label;
    CircuitParams params;
    std::vector<double> times;
    std::vector<double> closed_form;
    std::vector<double> numeric;
    double max_abs_gap = 0.0;
};

inline CoherenceSeries time_series(BellLabel label, const CircuitParams& params, const TimeGrid& grid) {
    const SpectralPropagator prop(params);
    CoherenceSeries series{label, params, grid.points(), {}, {}, 0.0};
    series.closed_form.reserve(grid.steps());
    series.numeric.reserve(grid.steps());
    for (double t : series.times) {
        const double closed = coherence::closed_form_coherence(label, params, t);
        const double numeric = pipeline_coherence(label, prop, t);
        series.closed_form.push_back(closed);
        series.numeric.push_back(numeric);
        series.max_abs_gap = std::max(series.max_abs_gap, std::abs(closed - numeric));
    }
    return series;
}

enum class VaryParam { kEJ, kEM };

inline std::string_view to_string(VaryParam v) { return v == VaryParam::kEJ ? "e_j" : "e_m"; }

struct ParamRange {
    double lo;
    double hi;
    std::size_t steps;
};

/// Closed-form C over (varied parameter) x (time). values[i][k] belongs to
/// axis1[i], axis2[k]; axis2 is always time.
struct ScanGrid {
    std::string axis1_name;
    std::string axis2_name;
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<std::vector<double>> values;
};

/// `threads == 0` uses the hardware concurrency. Cells are independent, so
/// the result does not depend on the thread count.
inline ScanGrid grid_scan(BellLabel label, const CircuitParams& fixed, VaryParam vary, const ParamRange& range,
                          const TimeGrid& grid, unsigned threads = 0) {
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || !(range.lo < range.hi) || range.steps < 2) {
        throw std::invalid_argument("grid_scan: need finite lo < hi and at least 2 steps");
    }
    ScanGrid out;
    out.axis1_name = std::string(to_string(vary));
    out.axis2_name = "t";
    out.axis1.resize(range.steps);
    for (std::size_t i = 0; i < range.steps; ++i) {
        out.axis1[i] = i + 1 == range.steps
                           ? range.hi
                           : range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(range.steps - 1);
    }
    out.axis2 = grid.points();
    out.values.assign(out.axis1.size(), std::vector<double>(out.axis2.size()));

    auto fill_row = [&](std::size_t i) {
        const CircuitParams p = vary == VaryParam::kEJ ? CircuitParams(out.axis1[i], fixed.e_m(), fixed.hbar())
                                                       : CircuitParams(fixed.e_j(), out.axis1[i], fixed.hbar());
        for (std::size_t k = 0; k < out.axis2.size(); ++k) {
            out.values[i][k] = coherence::closed_form_coherence(label, p, out.axis2[k]);
        }
    };

    const unsigned hw = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    const std::size_t workers = std::min<std::size_t>(hw, out.axis1.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < out.axis1.size(); ++i) {
            fill_row(i);
        }
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < out.axis1.size(); i += workers) {
                    fill_row(i);
                }
            });
        }
    }
    return out;
}

/// Golden-section search for the maximum of f on [lo, hi], stopping once the
/// bracket is narrower than `tol`. Returns the best point evaluated.
inline std::pair<double, double> golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                                         double tol = 1e-9) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    double best_t = lo;
    double best_f = f(lo);
    auto consider = [&](double t, double v) {
        if (v > best_f) {
            best_t = t;
            best_f = v;
        }
    };
    consider(hi, f(hi));
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    consider(c, fc);
    consider(d, fd);
    return {best_t, best_f};
}

enum class Objective { kMaximize, kStabilize };

inline std::string_view to_string(Objective o) { return o == Objective::kMaximize ? "maximize" : "stabilize"; }

/// How (if at all) C(t) is frozen for the chosen state and parameters.
enum class Stabilizer { kNone, kEigenstate, kTunnellingOff };

inline std::string_view to_string(Stabilizer s) {
    switch (s) {
        case Stabilizer::kNone:
            return "none";
        case Stabilizer::kEigenstate:
            return "eigenstate";
        case Stabilizer::kTunnellingOff:
            return "tunnelling off";
    }
    return "?";
}

struct OperatingPoint {
    CircuitParams params;
    BellLabel label;
    double t;
    double coherence;
    Objective objective;
    bool stationary;
    Stabilizer mechanism;
};

struct TimeWindow {
    double lo;
    double hi;
};

inline Stabilizer stabilizer_for(BellLabel label, const CircuitParams& p) {
    if (evolution::is_stationary(label)) {
        return Stabilizer::kEigenstate;
    }
    if (p.e_j() == 0.0) {
        return Stabilizer::kTunnellingOff;
    }
    return Stabilizer::kNone;
}

/// Maximize: the earliest t in the window with the largest closed-form C.
/// Analytic peak times and the window ends are the primary candidates; a
/// 2001-point scan guards against missed interior peaks and the winner is
/// polished by golden-section search. Stabilize: reports the freezing
/// mechanism at the window start.
inline OperatingPoint find_operating_point(BellLabel label, const CircuitParams& p, const TimeWindow& window,
                                           Objective objective) {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || window.lo > window.hi) {
        throw std::invalid_argument("find_operating_point: empty time window");
    }
    const Stabilizer mech = stabilizer_for(label, p);
    const bool stationary = mech != Stabilizer::kNone;
    auto c_at = [&](double t) { return coherence::closed_form_coherence(label, p, t); };

    if (objective == Objective::kStabilize || stationary) {
        return {p, label, window.lo, c_at(window.lo), objective, stationary, mech};
    }

    constexpr double kTieTolerance = 1e-12;
    double best_t = window.lo;
    double best_c = c_at(window.lo);
    auto consider = [&](double t) {
        if (t < window.lo || t > window.hi) {
            return;
        }
        const double c = c_at(t);
        if (c > best_c + kTieTolerance || (std::abs(c - best_c) <= kTieTolerance && t < best_t)) {
            best_t = t;
            best_c = c;
        }
    };
    consider(window.hi);

    const auto ex = coherence::coherence_extrema(label, p);
    const double period = ex.period;
    const auto k_lo = static_cast<long long>(std::floor(window.lo / period)) - 1;
    const auto k_hi = static_cast<long long>(std::ceil(window.hi / period)) + 1;
    for (long long k = k_lo; k <= k_hi; ++k) {
        consider(ex.t_of_first_max + static_cast<double>(k) * period);
        consider(period - ex.t_of_first_max + static_cast<double>(k) * period);
    }

    if (window.hi > window.lo) {
        constexpr std::size_t kScanPoints = 2001;
        const double h = (window.hi - window.lo) / static_cast<double>(kScanPoints - 1);
        double scan_t = window.lo;
        double scan_c = c_at(window.lo);
        for (std::size_t k = 1; k < kScanPoints; ++k) {
            const double t = window.lo + h * static_cast<double>(k);
            const double c = c_at(t);
            if (c > scan_c) {
                scan_t = t;
                scan_c = c;
            }
        }
        if (scan_c > best_c + kTieTolerance) {
            const auto [t, c] = golden_section_maximize(c_at, std::max(window.lo, scan_t - h),
                                                        std::min(window.hi, scan_t + h));
            best_t = t;
            best_c = c;
        }
    }
    return {p, label, best_t, best_c, objective, false, mech};
}

struct SeriesExtremum {
    double t;
    double value;
};

/// Extremum of a closed-form series. Every interior grid turning point is
/// refined by golden-section search within one grid step; the earliest one
/// within `tol` of the best refined value wins. An endpoint is returned only
/// when it is more extreme than all turning points by more than `tol`
/// (e.g. a monotone series).
inline SeriesExtremum refine_series_extremum(const CoherenceSeries& series, bool maximum, double tol = 1e-9) {
    const auto& v = series.closed_form;
    const std::size_t n = v.size();
    const double sign = maximum ? 1.0 : -1.0;
    auto f = [&](double t) { return sign * coherence::closed_form_coherence(series.label, series.params, t); };

    std::vector<SeriesExtremum> turning;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (sign * v[k] > sign * v[k - 1] && sign * v[k] >= sign * v[k + 1]) {
            const auto [t, fv] = golden_section_maximize(f, series.times[k - 1], series.times[k + 1]);
            turning.push_back({t, fv});
        }
    }
    SeriesExtremum edge = sign * v.front() >= sign * v.back() ? SeriesExtremum{series.times.front(), sign * v.front()}
                                                              : SeriesExtremum{series.times.back(), sign * v.back()};
    double best = edge.value;
    for (const auto& e : turning) {
        best = std::max(best, e.value);
    }
    for (const auto& e : turning) {
        if (e.value >= best - tol) {
            return {e.t, sign * e.value};
        }
    }
    return {edge.t, sign * edge.value};
}

inline constexpr double kCrossValidationThreshold = 1e-9;

/// Replaceable closed-form routes, so a deliberately broken implementation
/// can be fed through the harness as a negative control.
struct ClosedFormRoutes {
    std::function<Matrix(const CircuitParams&, double)> propagator = [](const CircuitParams& p, double t) {
        return evolution::analytic_propagator(p, t).matrix();
    };
    std::function<Matrix(BellLabel, const CircuitParams&, double)> density = [](BellLabel l, const CircuitParams& p,
                                                                                double t) {
        return evolution::closed_form_density(l, p, t).matrix();
    };
    std::function<double(BellLabel, const CircuitParams&, double)> coherence = coherence::closed_form_coherence;
};

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    std::size_t worst_draw = 0;
};

struct ValidationReport {
    std::size_t draws = 0;
    std::uint64_t seed = 0;
    CheckResult propagator{"propagator"};
    CheckResult density{"density"};
    CheckResult coherence{"coherence"};
    double max_unitarity_defect = 0.0;  ///< of the closed-form propagator, informational
    double threshold = kCrossValidationThreshold;
    bool passed = false;
    std::optional<std::string> failing_check;
    std::optional<ParameterDraw> failing_draw;
};

/// Seeded closed-form vs numeric comparison over random draws (see
/// draw_parameters). The numeric side is always the spectral pipeline.
inline ValidationReport cross_validate(std::size_t draws, std::uint64_t seed, const ClosedFormRoutes& routes = {}) {
    if (draws < 1) {
        throw std::invalid_argument("cross_validate: need at least one draw");
    }
    ValidationReport report;
    report.draws = draws;
    report.seed = seed;
    DrawSource src(seed);
    std::vector<ParameterDraw> samples;
    samples.reserve(draws);

    auto record = [](CheckResult& check, double dev, std::size_t idx) {
        if (dev > check.max_deviation || !std::isfinite(dev)) {
            check.max_deviation = std::isfinite(dev) ? dev : std::numeric_limits<double>::infinity();
            check.worst_draw = idx;
        }
    };

    for (std::size_t n = 0; n < draws; ++n) {
        const ParameterDraw d = draw_parameters(src);
        samples.push_back(d);
        const SpectralPropagator prop(d.params);
        const auto u_numeric = prop.at(d.t);
        const Matrix u_closed = routes.propagator(d.params, d.t);
        record(report.propagator, linalg::max_entry_distance(u_closed, u_numeric.matrix()), n);
        report.max_unitarity_defect = std::max(report.max_unitarity_defect, linalg::unitarity_defect(u_closed));

        for (BellLabel label : evolution::kAllBellLabels) {
            const auto rho = evolution::density_matrix(evolution::evolve(evolution::bell_state(label), u_numeric));
            record(report.density, linalg::max_entry_distance(routes.density(label, d.params, d.t), rho.matrix()), n);
            record(report.coherence,
                   std::abs(routes.coherence(label, d.params, d.t) - coherence::l1_coherence(rho)), n);
        }
    }

    report.passed = true;
    for (const CheckResult* check : {&report.propagator, &report.density, &report.coherence}) {
        if (!(check->max_deviation <= report.threshold)) {
            report.passed = false;
            report.failing_check = check->name;
            report.failing_draw = samples[check->worst_draw];
            break;
        }
    }
    return report;
}

}  // namespace tqs::scan
