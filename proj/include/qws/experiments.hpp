#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qws/engine.hpp"
#include "qws/parallel.hpp"
#include "qws/power_law.hpp"

namespace qws {

// One sweep result row. p_akr is the delta-oracle reference peak on the same
// grid and window, attached when the sweep computed it.
struct SweepRow {
    int grid_side = 0;
    double sigma = 0.0;
    double c = 1.0;  // lambda = c * pi
    ModelLabel model = ModelLabel::Model1;
    int peak_step = 0;
    double peak_probability = 0.0;
    double p_uniform = 0.0;
    std::optional<double> p_akr;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

namespace detail {

inline RunRecord run_gaussian(const GridGeometry& g, double sigma, double lambda,
                              ModelLabel model, std::optional<Window> window = {}) {
    return run(standard_config(g, make_model(model, g),
                               bivariate_gaussian_field(g, GaussianParams::symmetric(g, sigma, lambda)),
                               window));
}

inline RunRecord run_delta(const GridGeometry& g, ModelLabel model = ModelLabel::Model1,
                           std::optional<Window> window = {}, double phase = pi) {
    OracleSpec oracle;
    oracle.marked = {{g.center(), g.center()}};
    oracle.phase = phase;
    return run(standard_config(g, make_model(model, g), delta_oracle_field(g, oracle), window));
}

}  // namespace detail

// Peak success probability of the ideal delta-oracle AKR run: the reference
// for threshold criteria.
inline double akr_reference_peak(const GridGeometry& g, std::optional<Window> window = {}) {
    return detail::run_delta(g, ModelLabel::Model1, window).peak_probability;
}

struct SigmaSweepSpec {
    std::vector<int> grid_sides = {100};
    std::vector<double> sigmas;
    double c = 1.0;
    ModelLabel model = ModelLabel::Model1;
    std::optional<Window> window;  // default per-grid [0, 3L]
    bool include_akr_reference = true;
    int jobs = 0;
};

// One Model-1 run per (L, sigma) at lambda = c*pi; peaks tabulated in
// (L, sigma) order regardless of worker completion order.
inline SweepTable sigma_sweep(const SigmaSweepSpec& spec) {
    if (spec.grid_sides.empty() || spec.sigmas.empty())
        throw std::invalid_argument("sigma_sweep: empty grid or sigma list");
    for (double s : spec.sigmas)
        if (!(s > 0.0)) throw std::invalid_argument("sigma_sweep: sigma must be positive");

    // canonical (L, sigma) key order regardless of input or completion order
    std::vector<int> grids = spec.grid_sides;
    std::vector<double> sigmas = spec.sigmas;
    std::sort(grids.begin(), grids.end());
    std::sort(sigmas.begin(), sigmas.end());

    std::vector<SweepRow> rows(grids.size() * sigmas.size());
    std::vector<std::optional<double>> akr(grids.size());
    if (spec.include_akr_reference) {
        parallel_for(grids.size(), spec.jobs, [&](std::size_t gi) {
            GridGeometry g(grids[gi]);
            akr[gi] = akr_reference_peak(g, spec.window);
        });
    }
    parallel_for(rows.size(), spec.jobs, [&](std::size_t i) {
        const std::size_t gi = i / sigmas.size();
        const std::size_t si = i % sigmas.size();
        GridGeometry g(grids[gi]);
        const double sigma = sigmas[si];
        const RunRecord rec = detail::run_gaussian(g, sigma, spec.c * pi, spec.model, spec.window);
        rows[i] = {g.side_length,    sigma,
                   spec.c,           spec.model,
                   rec.peak_step,    rec.peak_probability,
                   1.0 / static_cast<double>(g.vertex_count()), akr[gi]};
    });
    return {std::move(rows)};
}

struct LambdaSweepSpec {
    int grid_side = 100;
    std::vector<double> sigmas;    // one curve per sigma
    std::vector<double> c_values;  // lambda = c * pi
    ModelLabel model = ModelLabel::Model1;
    std::optional<Window> window;
    bool include_akr_reference = true;
    int jobs = 0;
};

// Peaks vs c for each sigma at fixed grid size.
inline SweepTable lambda_sweep(const LambdaSweepSpec& spec) {
    if (spec.sigmas.empty() || spec.c_values.empty())
        throw std::invalid_argument("lambda_sweep: empty sigma or c list");
    for (double s : spec.sigmas)
        if (!(s > 0.0)) throw std::invalid_argument("lambda_sweep: sigma must be positive");
    for (double c : spec.c_values)
        if (c < 0.0) throw std::invalid_argument("lambda_sweep: c must be nonnegative");

    std::vector<double> sigmas = spec.sigmas;
    std::vector<double> c_values = spec.c_values;
    std::sort(sigmas.begin(), sigmas.end());
    std::sort(c_values.begin(), c_values.end());

    GridGeometry g(spec.grid_side);
    std::optional<double> akr;
    if (spec.include_akr_reference) akr = akr_reference_peak(g, spec.window);

    std::vector<SweepRow> rows(sigmas.size() * c_values.size());
    parallel_for(rows.size(), spec.jobs, [&](std::size_t i) {
        const double sigma = sigmas[i / c_values.size()];
        const double c = c_values[i % c_values.size()];
        const RunRecord rec = detail::run_gaussian(g, sigma, c * pi, spec.model, spec.window);
        rows[i] = {g.side_length,    sigma,
                   c,                spec.model,
                   rec.peak_step,    rec.peak_probability,
                   1.0 / static_cast<double>(g.vertex_count()), akr};
    });
    return {std::move(rows)};
}

enum class ThresholdCriterion {
    BelowFractionOfAkr,  // p_max(sigma) <= epsilon * p_akr
    CloseToUniform       // 1 - p_u / p_max(sigma) <= epsilon
};

struct ScanSettings {
    double scan_lo = 1e-2;
    double scan_hi = 1e4;
    int points_per_decade = 40;
    double bisect_relative_width = 1e-2;
    bool audit_full_range = false;  // keep scanning past the crossing to flag un-crossings
};

// Smallest sigma meeting the criterion: ascending log-spaced scan to bracket
// the first crossing, then log-bisection. sigma_star is the bracket top, so
// the criterion provably holds there and provably fails at bracket_lo.
struct ThresholdResult {
    int grid_side = 0;
    double epsilon = 0.0;
    ThresholdCriterion criterion = ThresholdCriterion::BelowFractionOfAkr;
    bool found = false;
    double sigma_star = 0.0;
    double bracket_lo = 0.0;  // criterion fails here (bracketing certificate)
    double p_max_at_star = 0.0;
    double p_reference = 0.0;  // p_akr or p_u, per criterion
    bool non_monotone_warning = false;
};

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("scan range must satisfy 0 < lo < hi");
    if (points_per_decade < 1) throw std::invalid_argument("points per decade must be >= 1");
    const double l0 = std::log10(lo);
    const double l1 = std::log10(hi);
    const int n = std::max(1, static_cast<int>(std::ceil((l1 - l0) * points_per_decade)));
    std::vector<double> sigmas(n + 1);
    for (int i = 0; i <= n; ++i) sigmas[i] = std::pow(10.0, l0 + (l1 - l0) * i / n);
    sigmas.back() = hi;
    return sigmas;
}

template <typename Holds>
inline ThresholdResult find_threshold(const GridGeometry& g, double epsilon,
                                      ThresholdCriterion criterion, double p_reference,
                                      const ScanSettings& scan, Holds&& holds) {
    ThresholdResult result;
    result.grid_side = g.side_length;
    result.epsilon = epsilon;
    result.criterion = criterion;
    result.p_reference = p_reference;

    auto peak_at = [&](double sigma) {
        return run_gaussian(g, sigma, pi, ModelLabel::Model1).peak_probability;
    };

    const std::vector<double> grid = log_spaced(scan.scan_lo, scan.scan_hi, scan.points_per_decade);
    double lo = 0.0, hi = 0.0, p_hi = 0.0;
    bool crossed = false;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = peak_at(grid[i]);
        if (!crossed && holds(p)) {
            crossed = true;
            hi = grid[i];
            p_hi = p;
            lo = (i == 0) ? 0.0 : prev;
            if (!scan.audit_full_range) break;
        } else if (crossed && !holds(p)) {
            result.non_monotone_warning = true;
        }
        prev = grid[i];
    }
    if (!crossed) return result;  // found = false

    result.found = true;
    if (lo > 0.0) {
        int guard = 0;
        while (hi / lo > 1.0 + scan.bisect_relative_width && ++guard <= 64) {
            const double mid = std::sqrt(lo * hi);
            const double p = peak_at(mid);
            if (holds(p)) {
                hi = mid;
                p_hi = p;
            } else {
                lo = mid;
            }
        }
    }
    result.sigma_star = hi;
    result.bracket_lo = lo;
    result.p_max_at_star = p_hi;
    return result;
}

}  // namespace detail

// Smallest sigma with p_max(sigma) <= epsilon * p_akr. Requires epsilon < 1:
// at epsilon >= 1 the criterion is met trivially wherever p_max <= p_akr.
inline ThresholdResult find_sigma_below_akr(int grid_side, double epsilon,
                                            const ScanSettings& scan = {}) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("find_sigma_below_akr: epsilon must be in (0, 1)");
    GridGeometry g(grid_side);
    const double p_akr = akr_reference_peak(g);
    return detail::find_threshold(g, epsilon, ThresholdCriterion::BelowFractionOfAkr, p_akr, scan,
                                  [&](double p_max) { return p_max <= epsilon * p_akr; });
}

// Smallest sigma with 1 - p_u / p_max(sigma) <= epsilon (inclusive boundary).
inline ThresholdResult find_sigma_near_uniform(int grid_side, double epsilon,
                                               const ScanSettings& scan = {}) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("find_sigma_near_uniform: epsilon < 0");
    GridGeometry g(grid_side);
    const double p_u = 1.0 / static_cast<double>(g.vertex_count());
    return detail::find_threshold(g, epsilon, ThresholdCriterion::CloseToUniform, p_u, scan,
                                  [&](double p_max) { return 1.0 - p_u / p_max <= epsilon; });
}

inline ThresholdResult find_sigma_threshold(ThresholdCriterion criterion, int grid_side,
                                            double epsilon, const ScanSettings& scan = {}) {
    return criterion == ThresholdCriterion::BelowFractionOfAkr
               ? find_sigma_below_akr(grid_side, epsilon, scan)
               : find_sigma_near_uniform(grid_side, epsilon, scan);
}

// Threshold sigma*(N) across grid sizes plus the power-law fit
// sigma* ~ N^exponent over the grids where a threshold was found.
struct ThresholdScaling {
    std::vector<ThresholdResult> points;
    PowerLawFit fit;
};

inline ThresholdScaling threshold_scaling(const std::vector<int>& grid_sides, double epsilon,
                                          ThresholdCriterion criterion,
                                          const ScanSettings& scan = {}, int jobs = 0) {
    if (grid_sides.empty()) throw std::invalid_argument("threshold_scaling: no grid sizes");
    ThresholdScaling scaling;
    scaling.points.resize(grid_sides.size());
    // biggest grids first: they dominate the runtime, so schedule them early
    std::vector<std::size_t> order(grid_sides.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return grid_sides[a] > grid_sides[b]; });
    parallel_for(order.size(), jobs, [&](std::size_t oi) {
        const std::size_t i = order[oi];
        scaling.points[i] = find_sigma_threshold(criterion, grid_sides[i], epsilon, scan);
    });
    std::vector<std::pair<double, double>> fit_points;
    for (const auto& p : scaling.points)
        if (p.found)
            fit_points.emplace_back(static_cast<double>(p.grid_side) * p.grid_side, p.sigma_star);
    scaling.fit = fit_power_law(fit_points);
    return scaling;
}

struct CompareModelsSpec {
    int grid_side = 100;
    std::vector<double> sigmas;    // block A: lambda = c*pi fixed at c
    double c = 1.0;
    std::vector<double> c_values;  // block B: sigma fixed at sigma_for_c
    double sigma_for_c = 1.0;
    Window window{0, 300};
    bool include_akr_reference = true;
    int jobs = 0;
};

// Paired Model 1 / Model 2 peaks on identical fields: one pair of rows per
// sigma (at lambda = c*pi) and per c (at sigma = sigma_for_c).
inline SweepTable compare_models(const CompareModelsSpec& spec) {
    if (spec.sigmas.empty() && spec.c_values.empty())
        throw std::invalid_argument("compare_models: nothing to scan");
    std::vector<double> sigmas = spec.sigmas;
    std::vector<double> c_values = spec.c_values;
    std::sort(sigmas.begin(), sigmas.end());
    std::sort(c_values.begin(), c_values.end());

    GridGeometry g(spec.grid_side);
    std::optional<double> akr;
    if (spec.include_akr_reference) akr = akr_reference_peak(g, spec.window);
    const double p_u = 1.0 / static_cast<double>(g.vertex_count());

    struct Job {
        double sigma;
        double c;
        ModelLabel model;
    };
    std::vector<Job> jobs_list;
    for (double s : sigmas)
        for (ModelLabel m : {ModelLabel::Model1, ModelLabel::Model2})
            jobs_list.push_back({s, spec.c, m});
    for (double c : c_values)
        for (ModelLabel m : {ModelLabel::Model1, ModelLabel::Model2})
            jobs_list.push_back({spec.sigma_for_c, c, m});

    std::vector<SweepRow> rows(jobs_list.size());
    parallel_for(jobs_list.size(), spec.jobs, [&](std::size_t i) {
        const Job& job = jobs_list[i];
        const RunRecord rec =
            detail::run_gaussian(g, job.sigma, job.c * pi, job.model, spec.window);
        rows[i] = {g.side_length, job.sigma, job.c,           job.model,
                   rec.peak_step, rec.peak_probability, p_u, akr};
    });
    return {std::move(rows)};
}

}  // namespace qws
