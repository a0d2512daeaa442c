#pragma once

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qws/format.hpp"
#include "qws/state.hpp"

namespace qws {

inline constexpr double pi = std::numbers::pi;

enum class FieldKind { BivariateGaussian, DeltaOracle, Linear, Ackley, Rastrigin, Custom };

// Parameters of the bivariate Gaussian density
//   f(x,y) ~ exp(-z / (2 (1 - rho^2))),
//   z = (x-mu_x)^2/sigma_x^2 + (y-mu_y)^2/sigma_y^2
//       - 2 rho (x-mu_x)(y-mu_y)/(sigma_x sigma_y),
// peak-normalized over the grid so the field maximum equals `lambda`.
struct GaussianParams {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double rho = 0.0;
    double lambda = pi;

    // The configuration used throughout the sweeps: mu centered at (L/2, L/2),
    // sigma_x = sigma_y = sigma, rho = 0.
    static GaussianParams symmetric(const GridGeometry& g, double sigma, double lambda = pi) {
        GaussianParams p;
        p.mu_x = p.mu_y = static_cast<double>(g.center());
        p.sigma_x = p.sigma_y = sigma;
        p.lambda = lambda;
        return p;
    }

    void validate() const {
        if (!(sigma_x > 0.0) || !(sigma_y > 0.0) || !std::isfinite(sigma_x) ||
            !std::isfinite(sigma_y))
            throw std::invalid_argument("gaussian sigma must be positive and finite");
        if (!(std::abs(rho) < 1.0))
            throw std::invalid_argument("gaussian correlation rho must satisfy |rho| < 1");
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("gaussian lambda must be nonnegative and finite");
        if (!std::isfinite(mu_x) || !std::isfinite(mu_y))
            throw std::invalid_argument("gaussian mean must be finite");
    }
};

// Marked vertex set and the phase applied there (pi for the AKR oracle).
struct OracleSpec {
    std::vector<Vertex> marked;
    double phase = pi;
};

// Real scalar field f(x,y) in radians, applied each step as the diagonal
// unitary exp(i f(x,y)). Phase factors are precomputed once: fields are
// immutable after construction and the per-step cost is one complex multiply
// per amplitude.
struct PotentialField {
    GridGeometry geometry;
    FieldKind kind = FieldKind::Custom;
    std::vector<double> values;
    std::vector<cdouble> phase_factors;

    double value_at(int x, int y) const { return values[position_index(geometry, x, y)]; }
    cdouble factor_at(int x, int y) const {
        return phase_factors[position_index(geometry, x, y)];
    }
};

namespace detail {

inline PotentialField finalize_field(GridGeometry g, FieldKind kind, std::vector<double> values) {
    PotentialField field;
    field.geometry = g;
    field.kind = kind;
    field.values = std::move(values);
    field.phase_factors.resize(field.values.size());
    for (std::size_t i = 0; i < field.values.size(); ++i)
        field.phase_factors[i] = std::polar(1.0, field.values[i]);
    return field;
}

}  // namespace detail

inline PotentialField custom_field(const GridGeometry& g, std::vector<double> values) {
    if (values.size() != g.vertex_count())
        throw std::invalid_argument("custom_field: expected L^2 values");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("custom_field: non-finite value");
    return detail::finalize_field(g, FieldKind::Custom, std::move(values));
}

inline PotentialField zero_field(const GridGeometry& g) {
    return detail::finalize_field(g, FieldKind::Custom, std::vector<double>(g.vertex_count(), 0.0));
}

// Bivariate Gaussian, peak-normalized: values = lambda * f / max_grid f.
// The exponent is kept in log space so narrow sigmas underflow cleanly to 0
// off-peak instead of overflowing the density prefactor.
inline PotentialField bivariate_gaussian_field(const GridGeometry& g,
                                               const GaussianParams& params) {
    params.validate();
    const int L = g.side_length;
    const double inv = 1.0 / (2.0 * (1.0 - params.rho * params.rho));
    std::vector<double> exponent(g.vertex_count());
    double exp_min = std::numeric_limits<double>::infinity();
    for (int y = 0; y < L; ++y) {
        const double dy = (y - params.mu_y) / params.sigma_y;
        for (int x = 0; x < L; ++x) {
            const double dx = (x - params.mu_x) / params.sigma_x;
            const double z = dx * dx + dy * dy - 2.0 * params.rho * dx * dy;
            const double e = z * inv;
            exponent[position_index(g, x, y)] = e;
            exp_min = std::min(exp_min, e);
        }
    }
    std::vector<double> values(g.vertex_count());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = params.lambda * std::exp(-(exponent[i] - exp_min));
    return detail::finalize_field(g, FieldKind::BivariateGaussian, std::move(values));
}

// The AKR oracle as a potential: `phase` on the marked vertices, zero
// elsewhere. With phase = pi the factors are -1 on the marked set.
inline PotentialField delta_oracle_field(const GridGeometry& g, const OracleSpec& spec) {
    if (spec.marked.empty()) throw std::invalid_argument("delta oracle: empty marked set");
    if (!std::isfinite(spec.phase)) throw std::invalid_argument("delta oracle: non-finite phase");
    std::vector<double> values(g.vertex_count(), 0.0);
    for (const Vertex& v : spec.marked) {
        if (!g.contains(v.x, v.y))
            throw std::out_of_range("delta oracle: marked vertex outside grid");
        values[position_index(g, v.x, v.y)] = spec.phase;
    }
    return detail::finalize_field(g, FieldKind::DeltaOracle, std::move(values));
}

// Electric-walk style linear phase f(x,y) = phi * x.
inline PotentialField linear_field(const GridGeometry& g, double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("linear field: non-finite phi");
    const int L = g.side_length;
    std::vector<double> values(g.vertex_count());
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) values[position_index(g, x, y)] = phi * x;
    return detail::finalize_field(g, FieldKind::Linear, std::move(values));
}

namespace detail {

// Evaluate a benchmark objective on grid coordinates mapped affinely to its
// conventional domain (optimum on the center vertex), then negate and
// peak-normalize: field = lambda at the grid optimum, 0 at the worst vertex.
template <typename Objective>
inline PotentialField benchmark_field(const GridGeometry& g, FieldKind kind, double lambda,
                                      double domain_half_width, Objective&& objective) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("benchmark field: lambda must be nonnegative and finite");
    const int L = g.side_length;
    const double scale = 2.0 * domain_half_width / L;
    const int mu = g.center();
    std::vector<double> obj(g.vertex_count());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < L; ++y) {
        const double v = scale * (y - mu);
        for (int x = 0; x < L; ++x) {
            const double u = scale * (x - mu);
            const double f = objective(u, v);
            obj[position_index(g, x, y)] = f;
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
    }
    std::vector<double> values(g.vertex_count());
    const double span = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = lambda * ((hi - obj[i]) / span);
    return finalize_field(g, kind, std::move(values));
}

}  // namespace detail

// Ackley (a=20, b=0.2, c=2pi) on [-5,5]^2.
inline PotentialField ackley_field(const GridGeometry& g, double lambda) {
    constexpr double a = 20.0, b = 0.2, c = 2.0 * pi;
    return detail::benchmark_field(
        g, FieldKind::Ackley, lambda, 5.0, [](double u, double v) {
            return -a * std::exp(-b * std::sqrt(0.5 * (u * u + v * v))) -
                   std::exp(0.5 * (std::cos(c * u) + std::cos(c * v))) + a + std::numbers::e;
        });
}

// Rastrigin (A=10) on [-5.12, 5.12]^2.
inline PotentialField rastrigin_field(const GridGeometry& g, double lambda) {
    constexpr double A = 10.0;
    return detail::benchmark_field(
        g, FieldKind::Rastrigin, lambda, 5.12, [](double u, double v) {
            return 2.0 * A + u * u - A * std::cos(2.0 * pi * u) + v * v -
                   A * std::cos(2.0 * pi * v);
        });
}

namespace detail {

inline void phase_inplace(WalkerState& state, const PotentialField& field) {
    cdouble* amp = state.amplitudes.data();
    const cdouble* factor = field.phase_factors.data();
    const std::size_t n = field.phase_factors.size();
    for (std::size_t p = 0; p < n; ++p, amp += 4) {
        const cdouble f = factor[p];
        amp[0] *= f;
        amp[1] *= f;
        amp[2] *= f;
        amp[3] *= f;
    }
}

}  // namespace detail

// Diagonal phase operator exp(i f): every coin amplitude at (x,y) picks up
// the same factor e^{i f(x,y)}.
inline WalkerState apply_phase(WalkerState state, const PotentialField& field) {
    if (!same_grid(state.geometry, field.geometry))
        throw std::invalid_argument("apply_phase: mismatched grid geometries");
    detail::phase_inplace(state, field);
    return state;
}

// Plain-text grid format: L rows of L space-separated values (radians),
// row y = 0 first.
inline void write_field_text(std::ostream& out, const PotentialField& field) {
    const int L = field.geometry.side_length;
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            if (x) out << ' ';
            out << format_double(field.value_at(x, y));
        }
        out << '\n';
    }
}

inline PotentialField read_field_text(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> vals;
        std::string tok;
        while (row >> tok) vals.push_back(parse_double(tok));
        rows.push_back(std::move(vals));
    }
    if (rows.size() < 2) throw std::invalid_argument("field file: fewer than 2 rows");
    const std::size_t L = rows.size();
    std::vector<double> values;
    values.reserve(L * L);
    for (const auto& row : rows) {
        if (row.size() != L)
            throw std::invalid_argument("field file: grid is not square (" +
                                        std::to_string(row.size()) + " values in a row, " +
                                        std::to_string(L) + " rows)");
        values.insert(values.end(), row.begin(), row.end());
    }
    GridGeometry g(static_cast<int>(L));
    return custom_field(g, std::move(values));
}

}  // namespace qws
