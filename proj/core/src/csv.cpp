#include "hivsde/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "hivsde/errors.hpp"
#include "hivsde/scenario.hpp"

namespace hivsde {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t";
    for (auto name : kCompartmentNames) out << ',' << name;
    out << '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << format_double(traj.times[k]);
        for (double v : traj.states[k].to_array()) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "bin_lo,bin_hi,density\n";
    for (std::size_t b = 0; b < h.densities.size(); ++b) {
        out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
            << format_double(h.densities[b]) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const EnsembleSummary& s) {
    out << "t";
    for (auto name : kCompartmentNames) {
        out << ',' << name << "_mean";
        for (auto label : kQuantileLabels) out << ',' << name << '_' << label;
    }
    out << '\n';
    for (std::size_t t = 0; t < s.times.size(); ++t) {
        out << format_double(s.times[t]);
        for (const auto& comp : s.compartments) {
            out << ',' << format_double(comp.mean[t]);
            for (const auto& q : comp.quantile) out << ',' << format_double(q[t]);
        }
        out << '\n';
    }
}

ObservedSeries read_series_csv(std::istream& in, Target target) {
    ObservedSeries series;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(line_no, "", fmt::format("line {}: expected two comma-separated columns", line_no));
        }
        const std::string_view first(line.data(), comma);
        const std::string_view second(line.data() + comma + 1, line.size() - comma - 1);
        if (!header) {
            auto strip = [](std::string_view s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
                while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
                return s;
            };
            if (strip(first) != "time" || strip(second) != "observed") {
                throw ParseError(line_no, "", fmt::format("line {}: header must be 'time,observed'", line_no));
            }
            header = true;
            continue;
        }
        const auto t = parse_double(first);
        const auto y = parse_double(second);
        if (!t) throw ParseError(line_no, "time", fmt::format("line {}: bad time value", line_no));
        if (!y) throw ParseError(line_no, "observed", fmt::format("line {}: bad observed value", line_no));
        series.records.push_back({*t, *y, target});
    }
    if (!header) throw ParseError(0, "", "series CSV is empty (header 'time,observed' required)");
    validate(series);
    return series;
}

ObservedSeries load_series_csv(const std::filesystem::path& path, Target target) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "", fmt::format("cannot open series file '{}'", path.string()));
    return read_series_csv(in, target);
}

void write_series_csv(std::ostream& out, const ObservedSeries& series) {
    out << "time,observed\n";
    for (const auto& r : series.records) out << format_double(r.time) << ',' << format_double(r.observed) << '\n';
}

}  // namespace hivsde
