#include "hawkes/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hawkes/jump_distribution.hpp"
#include "hawkes/rate_function.hpp"

namespace hawkes {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                                message);
}

double parse_double(const std::string& value, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE) {
        fail(line, "expected a number, got '" + value + "'");
    }
    return parsed;
}

std::uint64_t parse_count(const std::string& value, std::size_t line) {
    if (value.empty() || value[0] == '-' || value[0] == '+') {
        fail(line, "expected a non-negative integer, got '" + value + "'");
    }
    errno = 0;
    char* end = nullptr;
    const std::uint64_t parsed = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || errno == ERANGE) {
        fail(line, "expected a non-negative integer, got '" + value + "'");
    }
    return parsed;
}

std::vector<std::string> split(const std::string& value, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = value.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(trim(value.substr(start)));
            break;
        }
        parts.push_back(trim(value.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_double_list(const std::string& value, std::size_t line) {
    std::vector<double> out;
    for (const std::string& part : split(value, ',')) {
        out.push_back(parse_double(part, line));
    }
    return out;
}

std::vector<std::uint64_t> parse_count_list(const std::string& value,
                                            std::size_t line) {
    std::vector<std::uint64_t> out;
    for (const std::string& part : split(value, ',')) {
        out.push_back(parse_count(part, line));
    }
    return out;
}

std::vector<std::pair<double, std::uint64_t>> parse_schedule(
    const std::string& value, std::size_t line) {
    std::vector<std::pair<double, std::uint64_t>> out;
    for (const std::string& part : split(value, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) {
            fail(line, "schedule entries use t:N, got '" + part + "'");
        }
        out.emplace_back(parse_double(trim(part.substr(0, colon)), line),
                         parse_count(trim(part.substr(colon + 1)), line));
    }
    return out;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_double_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

std::string format_count_list(const std::vector<std::uint64_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

std::string format_schedule(
    const std::vector<std::pair<double, std::uint64_t>>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(values[i].first) + ":" +
               std::to_string(values[i].second);
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected key = value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

        if (key == "alpha") {
            config.alpha = parse_double(value, line_no);
        } else if (key == "rate.kind") {
            config.rate_kind = value;
        } else if (key == "rate.c") {
            config.rate_c = parse_double(value, line_no);
        } else if (key == "jump.kind") {
            config.jump_kind = value;
        } else if (key == "jump.sigma") {
            config.jump_sigma = parse_double(value, line_no);
        } else if (key == "jump.a") {
            config.jump_a = parse_double(value, line_no);
        } else if (key == "jump.b") {
            config.jump_b = parse_double(value, line_no);
        } else if (key == "n") {
            config.n = parse_count(value, line_no);
        } else if (key == "x0") {
            config.x0 = parse_double(value, line_no);
        } else if (key == "seed") {
            config.seed = parse_count(value, line_no);
        } else if (key == "experiment") {
            config.experiment = value;
        } else if (key == "T") {
            config.horizon = parse_double(value, line_no);
        } else if (key == "h") {
            config.step = parse_double(value, line_no);
        } else if (key == "t") {
            config.time = parse_double(value, line_no);
        } else if (key == "x") {
            config.x = parse_double(value, line_no);
        } else if (key == "g") {
            config.g = value;
        } else if (key == "reps") {
            config.reps = parse_count(value, line_no);
        } else if (key == "k") {
            config.k = parse_count(value, line_no);
        } else if (key == "n_grid") {
            config.n_grid = parse_count_list(value, line_no);
        } else if (key == "x_grid") {
            config.x_grid = parse_double_list(value, line_no);
        } else if (key == "schedule") {
            config.schedule = parse_schedule(value, line_no);
        } else if (key == "k_horizons") {
            config.k_horizons = parse_double_list(value, line_no);
        } else if (key == "epsilon") {
            config.epsilon = parse_double(value, line_no);
        } else if (key == "output.dir") {
            config.output_dir = value;
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string emit_config(const RunConfig& config) {
    std::string out;
    const auto put = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };
    if (config.alpha) put("alpha", format_double(*config.alpha));
    if (config.rate_kind) put("rate.kind", *config.rate_kind);
    if (config.rate_c) put("rate.c", format_double(*config.rate_c));
    if (config.jump_kind) put("jump.kind", *config.jump_kind);
    if (config.jump_sigma) put("jump.sigma", format_double(*config.jump_sigma));
    if (config.jump_a) put("jump.a", format_double(*config.jump_a));
    if (config.jump_b) put("jump.b", format_double(*config.jump_b));
    if (config.n) put("n", std::to_string(*config.n));
    if (config.x0) put("x0", format_double(*config.x0));
    if (config.seed) put("seed", std::to_string(*config.seed));
    if (config.experiment) put("experiment", *config.experiment);
    if (config.horizon) put("T", format_double(*config.horizon));
    if (config.step) put("h", format_double(*config.step));
    if (config.time) put("t", format_double(*config.time));
    if (config.x) put("x", format_double(*config.x));
    if (config.g) put("g", *config.g);
    if (config.reps) put("reps", std::to_string(*config.reps));
    if (config.k) put("k", std::to_string(*config.k));
    if (config.n_grid) put("n_grid", format_count_list(*config.n_grid));
    if (config.x_grid) put("x_grid", format_double_list(*config.x_grid));
    if (config.schedule) put("schedule", format_schedule(*config.schedule));
    if (config.k_horizons) put("k_horizons", format_double_list(*config.k_horizons));
    if (config.epsilon) put("epsilon", format_double(*config.epsilon));
    if (config.output_dir) put("output.dir", *config.output_dir);
    return out;
}

ModelSpec build_model(const RunConfig& config) {
    if (!config.alpha) throw std::invalid_argument("config: missing key 'alpha'");
    if (!config.rate_kind) {
        throw std::invalid_argument("config: missing key 'rate.kind'");
    }
    if (!config.jump_kind) {
        throw std::invalid_argument("config: missing key 'jump.kind'");
    }
    if (!config.n) throw std::invalid_argument("config: missing key 'n'");

    RateFunction rate = [&] {
        const std::string& kind = *config.rate_kind;
        if (kind == "quadratic") return RateFunction::quadratic();
        if (kind == "root_quadratic") return RateFunction::root_quadratic();
        if (kind == "arctan_sq") return RateFunction::arctan_sq();
        if (kind == "constant") {
            if (!config.rate_c) {
                throw std::invalid_argument(
                    "config: rate.kind = constant needs rate.c");
            }
            return RateFunction::constant(*config.rate_c);
        }
        throw std::invalid_argument("config: unknown rate.kind '" + kind + "'");
    }();

    JumpDistribution jump = [&] {
        const std::string& kind = *config.jump_kind;
        if (kind == "gaussian") {
            if (!config.jump_sigma) {
                throw std::invalid_argument(
                    "config: jump.kind = gaussian needs jump.sigma");
            }
            return JumpDistribution::gaussian(*config.jump_sigma);
        }
        if (kind == "two_point") {
            if (!config.jump_a || !config.jump_b) {
                throw std::invalid_argument(
                    "config: jump.kind = two_point needs jump.a and jump.b");
            }
            return JumpDistribution::two_point(*config.jump_a, *config.jump_b);
        }
        throw std::invalid_argument("config: unknown jump.kind '" + kind + "'");
    }();

    ModelSpec spec{*config.alpha, std::move(rate), std::move(jump), *config.n,
                   config.x0.value_or(0.0)};
    return spec;
}

}  // namespace hawkes
