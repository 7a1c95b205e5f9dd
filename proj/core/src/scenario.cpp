#include "hivsde/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "hivsde/csv.hpp"
#include "hivsde/errors.hpp"

namespace hivsde {

namespace {

constexpr std::array<std::string_view, 5> kSigmaKeys{"sigma_1", "sigma_2", "sigma_3", "sigma_4", "sigma_5"};
constexpr std::array<std::string_view, 4> kStepKeys{"dt", "t_end", "seed", "scheme"};
constexpr std::array<std::string_view, 3> kEnsembleKeys{"n_paths", "base_seed", "burn_in"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& keys, std::string_view k) {
    for (auto key : keys) {
        if (key == k) return true;
    }
    return false;
}

bool section_accepts(std::string_view section, std::string_view key) {
    if (section.empty()) return key == "label";
    if (section == "params") return is_param_name(key);
    if (section == "noise") return contains(kSigmaKeys, key);
    if (section == "initial") return compartment_from_name(key).has_value();
    if (section == "step") return contains(kStepKeys, key);
    if (section == "ensemble") return contains(kEnsembleKeys, key);
    return false;
}

struct Entry {
    std::string value;
    std::size_t line;
};

// section -> key -> entry
using Table = std::map<std::string, std::map<std::string, Entry, std::less<>>, std::less<>>;

Table tokenize(std::string_view text) {
    Table table;
    std::string section;
    table[section];
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "", fmt::format("line {}: unterminated section header", line_no));
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "params" && section != "noise" && section != "initial" && section != "step" &&
                section != "ensemble") {
                throw ParseError(line_no, section, fmt::format("line {}: unknown section [{}]", line_no, section));
            }
            if (table.contains(section)) {
                throw ParseError(line_no, section, fmt::format("line {}: duplicate section [{}]", line_no, section));
            }
            table[section];
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "", fmt::format("line {}: expected 'key = value'", line_no));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError(line_no, "", fmt::format("line {}: empty key", line_no));
        if (!section_accepts(section, key)) {
            throw ParseError(line_no, key,
                             fmt::format("line {}: unknown key '{}' in section [{}]", line_no, key, section));
        }
        auto& entries = table[section];
        if (entries.contains(key)) {
            throw ParseError(line_no, key, fmt::format("line {}: duplicate key '{}'", line_no, key));
        }
        entries.emplace(key, Entry{value, line_no});
    }
    return table;
}

class SectionReader {
  public:
    SectionReader(const Table& table, std::string_view section) : section_(section) {
        if (auto it = table.find(section); it != table.end()) entries_ = &it->second;
    }

    const Entry& require(std::string_view key) const {
        if (entries_ != nullptr) {
            if (auto it = entries_->find(key); it != entries_->end()) return it->second;
        }
        throw ValidationError(std::string(key), fmt::format("missing key '{}' in section [{}]", key, section_));
    }

    double number(std::string_view key) const {
        const auto& e = require(key);
        auto v = parse_double(e.value);
        if (!v) throw ParseError(e.line, std::string(key), fmt::format("line {}: '{}' is not a number", e.line, e.value));
        return *v;
    }

    std::uint64_t unsigned_int(std::string_view key) const {
        const auto& e = require(key);
        std::uint64_t v = 0;
        const auto* first = e.value.data();
        const auto* last = first + e.value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || e.value.empty()) {
            throw ParseError(e.line, std::string(key),
                             fmt::format("line {}: '{}' is not an unsigned integer", e.line, e.value));
        }
        return v;
    }

  private:
    std::string section_;
    const std::map<std::string, Entry, std::less<>>* entries_ = nullptr;
};

}  // namespace

std::optional<double> parse_double(std::string_view token) {
    token = trim(token);
    if (token.empty()) return std::nullopt;
    if (token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), last, v, std::chars_format::general);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

Scenario parse_scenario(std::string_view text) {
    const Table table = tokenize(text);
    Scenario s;

    s.label = SectionReader(table, "").require("label").value;

    const SectionReader params(table, "params");
    for (auto name : kParamNames) s.params = with_param(s.params, name, params.number(name));
    validate(s.params);

    const SectionReader noise(table, "noise");
    for (std::size_t k = 0; k < kCompartments; ++k) s.noise.sigma[k] = noise.number(kSigmaKeys[k]);
    validate(s.noise);

    const SectionReader initial(table, "initial");
    Vec5 x0{};
    for (std::size_t k = 0; k < kCompartments; ++k) x0[k] = initial.number(kCompartmentNames[k]);
    s.x0 = State::from_array(x0);
    validate(s.x0);

    const SectionReader step(table, "step");
    s.step.dt = step.number("dt");
    s.step.t_end = step.number("t_end");
    s.step.seed = step.unsigned_int("seed");
    const auto& scheme_entry = step.require("scheme");
    const auto scheme = scheme_from_string(scheme_entry.value);
    if (!scheme) {
        throw ParseError(scheme_entry.line, "scheme",
                         fmt::format("line {}: unknown scheme '{}' (rk4, em, nptem, pptem)", scheme_entry.line,
                                     scheme_entry.value));
    }
    s.step.scheme = *scheme;
    validate(s.step);

    if (table.contains("ensemble")) {
        const SectionReader ens(table, "ensemble");
        EnsembleConfig cfg;
        cfg.n_paths = static_cast<std::size_t>(ens.unsigned_int("n_paths"));
        cfg.base_seed = ens.unsigned_int("base_seed");
        cfg.burn_in = ens.number("burn_in");
        cfg.step = s.step;
        validate(cfg);
        s.ensemble = cfg;
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "", fmt::format("cannot open scenario file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::string out = fmt::format("label = {}\n\n[params]\n", s.label);
    for (auto name : kParamNames) out += fmt::format("{} = {}\n", name, format_double(param_value(s.params, name)));
    out += "\n[noise]\n";
    for (std::size_t k = 0; k < kCompartments; ++k) {
        out += fmt::format("{} = {}\n", kSigmaKeys[k], format_double(s.noise.sigma[k]));
    }
    out += "\n[initial]\n";
    const Vec5 x0 = s.x0.to_array();
    for (std::size_t k = 0; k < kCompartments; ++k) {
        out += fmt::format("{} = {}\n", kCompartmentNames[k], format_double(x0[k]));
    }
    out += fmt::format("\n[step]\ndt = {}\nt_end = {}\nseed = {}\nscheme = {}\n", format_double(s.step.dt),
                       format_double(s.step.t_end), s.step.seed, to_string(s.step.scheme));
    if (s.ensemble) {
        out += fmt::format("\n[ensemble]\nn_paths = {}\nbase_seed = {}\nburn_in = {}\n", s.ensemble->n_paths,
                           s.ensemble->base_seed, format_double(s.ensemble->burn_in));
    }
    return out;
}

}  // namespace hivsde
