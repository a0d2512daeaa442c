#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qws/experiments.hpp"
#include "qws/format.hpp"

namespace qws {

using ordered_json = nlohmann::ordered_json;

// --- success series -------------------------------------------------------

inline void write_series_csv(std::ostream& out, const std::vector<double>& series) {
    out << "t,p\n";
    for (std::size_t t = 0; t < series.size(); ++t)
        out << t << ',' << format_double(series[t]) << '\n';
}

inline std::vector<double> read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "t,p")
        throw std::invalid_argument("series csv: missing 't,p' header");
    std::vector<double> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("series csv: malformed row '" + line + "'");
        const long t = parse_long(std::string_view(line).substr(0, comma));
        if (t != static_cast<long>(series.size()))
            throw std::invalid_argument("series csv: non-contiguous time steps");
        series.push_back(parse_double(std::string_view(line).substr(comma + 1)));
    }
    return series;
}

inline ordered_json series_to_json(const std::vector<double>& series) {
    ordered_json j;
    j["t"] = ordered_json::array();
    j["p"] = ordered_json::array();
    for (std::size_t t = 0; t < series.size(); ++t) {
        j["t"].push_back(t);
        j["p"].push_back(series[t]);
    }
    return j;
}

inline std::vector<double> series_from_json(const ordered_json& j) {
    return j.at("p").get<std::vector<double>>();
}

// --- position distributions -----------------------------------------------

inline void write_distribution_csv(std::ostream& out, const PositionDistribution& dist) {
    out << "x,y,p\n";
    for (int y = 0; y < dist.side_length; ++y)
        for (int x = 0; x < dist.side_length; ++x)
            out << x << ',' << y << ',' << format_double(dist.at(x, y)) << '\n';
}

inline PositionDistribution read_distribution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,y,p")
        throw std::invalid_argument("distribution csv: missing 'x,y,p' header");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("distribution csv: malformed row '" + line + "'");
        values.push_back(parse_double(std::string_view(line).substr(c2 + 1)));
    }
    const int side = static_cast<int>(std::llround(std::sqrt(double(values.size()))));
    if (static_cast<std::size_t>(side) * side != values.size())
        throw std::invalid_argument("distribution csv: row count is not a square");
    PositionDistribution dist;
    dist.side_length = side;
    dist.probabilities = std::move(values);
    return dist;
}

// --- sweep tables -----------------------------------------------------------

inline constexpr const char* sweep_table_header =
    "grid,sigma,c,model,peak_step,p_max,p_uniform,p_akr";

inline void write_table_csv(std::ostream& out, const SweepTable& table) {
    out << sweep_table_header << '\n';
    for (const SweepRow& r : table.rows) {
        out << r.grid_side << ',' << format_double(r.sigma) << ',' << format_double(r.c) << ','
            << static_cast<int>(r.model) << ',' << r.peak_step << ','
            << format_double(r.peak_probability) << ',' << format_double(r.p_uniform) << ',';
        if (r.p_akr) out << format_double(*r.p_akr);
        out << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> split_csv_row(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace detail

inline SweepTable read_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != sweep_table_header)
        throw std::invalid_argument("sweep csv: unexpected header");
    SweepTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_row(line);
        if (f.size() != 8) throw std::invalid_argument("sweep csv: malformed row '" + line + "'");
        SweepRow row;
        row.grid_side = static_cast<int>(parse_long(f[0]));
        row.sigma = parse_double(f[1]);
        row.c = parse_double(f[2]);
        row.model = static_cast<ModelLabel>(parse_long(f[3]));
        row.peak_step = static_cast<int>(parse_long(f[4]));
        row.peak_probability = parse_double(f[5]);
        row.p_uniform = parse_double(f[6]);
        if (!f[7].empty()) row.p_akr = parse_double(f[7]);
        table.rows.push_back(row);
    }
    return table;
}

inline ordered_json table_to_json(const SweepTable& table) {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& r : table.rows) {
        ordered_json j;
        j["grid"] = r.grid_side;
        j["sigma"] = r.sigma;
        j["c"] = r.c;
        j["model"] = static_cast<int>(r.model);
        j["peak_step"] = r.peak_step;
        j["p_max"] = r.peak_probability;
        j["p_uniform"] = r.p_uniform;
        j["p_akr"] = r.p_akr ? ordered_json(*r.p_akr) : ordered_json(nullptr);
        rows.push_back(std::move(j));
    }
    return ordered_json{{"rows", std::move(rows)}};
}

inline SweepTable table_from_json(const ordered_json& j) {
    SweepTable table;
    for (const auto& r : j.at("rows")) {
        SweepRow row;
        row.grid_side = r.at("grid").get<int>();
        row.sigma = r.at("sigma").get<double>();
        row.c = r.at("c").get<double>();
        row.model = static_cast<ModelLabel>(r.at("model").get<int>());
        row.peak_step = r.at("peak_step").get<int>();
        row.peak_probability = r.at("p_max").get<double>();
        row.p_uniform = r.at("p_uniform").get<double>();
        if (!r.at("p_akr").is_null()) row.p_akr = r.at("p_akr").get<double>();
        table.rows.push_back(row);
    }
    return table;
}

// --- thresholds -------------------------------------------------------------

inline const char* criterion_name(ThresholdCriterion c) {
    return c == ThresholdCriterion::BelowFractionOfAkr ? "below-akr" : "near-uniform";
}

inline ThresholdCriterion criterion_from_name(std::string_view name) {
    if (name == "below-akr") return ThresholdCriterion::BelowFractionOfAkr;
    if (name == "near-uniform") return ThresholdCriterion::CloseToUniform;
    throw std::invalid_argument("unknown threshold criterion '" + std::string(name) + "'");
}

inline constexpr const char* threshold_header =
    "grid,epsilon,criterion,found,sigma_star,bracket_lo,p_max_at_star,p_reference,warning";

inline void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdResult>& points) {
    out << threshold_header << '\n';
    for (const ThresholdResult& r : points) {
        out << r.grid_side << ',' << format_double(r.epsilon) << ',' << criterion_name(r.criterion)
            << ',' << (r.found ? 1 : 0) << ',' << format_double(r.sigma_star) << ','
            << format_double(r.bracket_lo) << ',' << format_double(r.p_max_at_star) << ','
            << format_double(r.p_reference) << ',' << (r.non_monotone_warning ? 1 : 0) << '\n';
    }
}

inline std::vector<ThresholdResult> read_thresholds_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != threshold_header)
        throw std::invalid_argument("threshold csv: unexpected header");
    std::vector<ThresholdResult> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_row(line);
        if (f.size() != 9)
            throw std::invalid_argument("threshold csv: malformed row '" + line + "'");
        ThresholdResult r;
        r.grid_side = static_cast<int>(parse_long(f[0]));
        r.epsilon = parse_double(f[1]);
        r.criterion = criterion_from_name(f[2]);
        r.found = parse_long(f[3]) != 0;
        r.sigma_star = parse_double(f[4]);
        r.bracket_lo = parse_double(f[5]);
        r.p_max_at_star = parse_double(f[6]);
        r.p_reference = parse_double(f[7]);
        r.non_monotone_warning = parse_long(f[8]) != 0;
        points.push_back(r);
    }
    return points;
}

inline ordered_json threshold_scaling_to_json(const ThresholdScaling& scaling) {
    ordered_json points = ordered_json::array();
    for (const ThresholdResult& r : scaling.points) {
        ordered_json j;
        j["grid"] = r.grid_side;
        j["epsilon"] = r.epsilon;
        j["criterion"] = criterion_name(r.criterion);
        j["found"] = r.found;
        j["sigma_star"] = r.sigma_star;
        j["bracket_lo"] = r.bracket_lo;
        j["p_max_at_star"] = r.p_max_at_star;
        j["p_reference"] = r.p_reference;
        j["warning"] = r.non_monotone_warning;
        points.push_back(std::move(j));
    }
    ordered_json fit;
    fit["exponent"] = scaling.fit.exponent;
    fit["prefactor"] = scaling.fit.prefactor;
    fit["rms_residual"] = scaling.fit.rms_residual;
    return ordered_json{{"points", std::move(points)}, {"fit", std::move(fit)}};
}

// --- files -------------------------------------------------------------------

// Binary mode keeps LF line endings on every platform.
template <typename Writer>
inline void save_text_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string load_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace qws
