#include "dynavg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace dynavg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

double parse_double(const std::string& key, std::string_view v) {
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) fail(key, "not a number");
    return out;
}

std::uint64_t parse_u64(const std::string& key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) fail(key, "not an unsigned integer");
    return out;
}

// The schema files period-like values under reals; accept "10" or "10.0" but
// require an exact positive integer value.
std::uint64_t parse_positive_integral(const std::string& key, std::string_view v) {
    const double d = parse_double(key, v);
    if (!(d >= 1.0) || d != std::floor(d) || d > 9.007199254740992e15)
        fail(key, "must be a positive integer");
    return static_cast<std::uint64_t>(d);
}

std::vector<std::string> split_csv_values(const std::string& key, std::string_view v) {
    std::vector<std::string> out;
    while (true) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (item.empty()) fail(key, "empty value in list");
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

constexpr const char* kSweepParams[] = {"delta", "b", "k", "seed"};

bool is_sweep_param(std::string_view p) {
    return std::find(std::begin(kSweepParams), std::end(kSweepParams), p) !=
           std::end(kSweepParams);
}

void validate_sweep_value(const std::string& key, std::string_view param,
                          const std::string& value) {
    if (param == "delta") {
        const double d = parse_double(key, value);
        if (!(std::isfinite(d) && d >= 0.0)) fail(key, "delta values must be finite and >= 0");
    } else if (param == "b") {
        parse_positive_integral(key, value);
    } else if (param == "k") {
        if (parse_u64(key, value) < 1) fail(key, "k values must be >= 1");
    } else {
        parse_u64(key, value);  // seed: any u64
    }
}

std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

ExperimentSpec parse_config(std::string_view text) {
    ExperimentSpec spec;
    RunConfig& cfg = spec.base;
    std::set<std::string> seen;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        const auto nl = text.find('\n', line_start);
        std::string_view line = text.substr(
            line_start, nl == std::string_view::npos ? std::string_view::npos
                                                     : nl - line_start);
        line_start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("malformed line (expected 'key = value'): '" +
                              std::string(line) + "'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) throw ConfigError("malformed line: empty key");
        if (value.empty()) fail(key, "empty value");
        if (!seen.insert(key).second) fail(key, "duplicate key");

        if (key == "protocol") {
            if (value == "nosync") cfg.protocol.kind = ProtocolKind::NoSync;
            else if (value == "static") cfg.protocol.kind = ProtocolKind::Static;
            else if (value == "dynamic") cfg.protocol.kind = ProtocolKind::Dynamic;
            else if (value == "serial") cfg.protocol.kind = ProtocolKind::Serial;
            else fail(key, "expected one of nosync|static|dynamic|serial");
        } else if (key == "rule") {
            if (value == "pa") cfg.rule.kind = RuleKind::PassiveAggressive;
            else if (value == "sgd") cfg.rule.kind = RuleKind::SgdHinge;
            else fail(key, "expected pa|sgd");
        } else if (key == "stream") {
            if (value == "static") cfg.stream.kind = StreamKind::StaticLinear;
            else if (value == "rotating") cfg.stream.kind = StreamKind::RotatingLinear;
            else if (value == "switch") cfg.stream.kind = StreamKind::AbruptSwitch;
            else fail(key, "expected static|rotating|switch");
        } else if (key == "k") {
            const std::uint64_t k = parse_u64(key, value);
            if (k < 1) fail(key, "must be >= 1");
            cfg.k = static_cast<std::size_t>(k);
        } else if (key == "T") {
            cfg.rounds = parse_u64(key, value);
            if (cfg.rounds < 1) fail(key, "must be >= 1");
        } else if (key == "dim") {
            const std::uint64_t d = parse_u64(key, value);
            if (d < 1) fail(key, "must be >= 1");
            cfg.stream.dim = static_cast<std::size_t>(d);
        } else if (key == "delta") {
            const double d = parse_double(key, value);
            if (!(std::isfinite(d) && d >= 0.0)) fail(key, "must be finite and >= 0");
            cfg.protocol.delta = d;
        } else if (key == "b") {
            cfg.protocol.period = parse_positive_integral(key, value);
        } else if (key == "eta0") {
            const double d = parse_double(key, value);
            if (!(std::isfinite(d) && d > 0.0)) fail(key, "must be finite and > 0");
            cfg.rule.eta0 = d;
        } else if (key == "noise") {
            const double d = parse_double(key, value);
            if (!(d >= 0.0 && d < 0.5)) fail(key, "must be in [0, 0.5)");
            cfg.stream.noise = d;
        } else if (key == "drift_rate") {
            const double d = parse_double(key, value);
            if (!std::isfinite(d)) fail(key, "must be finite");
            cfg.stream.drift_rate = d;
        } else if (key == "model_radius") {
            const double d = parse_double(key, value);
            if (!(std::isfinite(d) && d > 0.0)) fail(key, "must be finite and > 0");
            cfg.bounds.model_radius = d;
        } else if (key == "switch_every") {
            cfg.stream.switch_every = parse_u64(key, value);
            if (cfg.stream.switch_every < 1) fail(key, "must be >= 1");
        } else if (key == "seed") {
            cfg.stream.seed = parse_u64(key, value);
        } else if (key.starts_with("sweep.")) {
            const std::string param = key.substr(6);
            if (!is_sweep_param(param))
                fail(key, "sweepable parameters are delta, b, k, seed");
            SweepValues sv{param, split_csv_values(key, value)};
            for (const auto& v : sv.values) validate_sweep_value(key, param, v);
            const bool integral = param == "k" || param == "seed";
            std::sort(sv.values.begin(), sv.values.end(),
                      [&](const std::string& a, const std::string& b2) {
                          return integral ? parse_u64(key, a) < parse_u64(key, b2)
                                          : parse_double(key, a) < parse_double(key, b2);
                      });
            spec.sweep.push_back(std::move(sv));
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    // Canonical sweep axis order: delta, b, k, seed.
    std::sort(spec.sweep.begin(), spec.sweep.end(),
              [](const SweepValues& a, const SweepValues& b2) {
                  auto rank = [](std::string_view p) {
                      for (std::size_t i = 0; i < std::size(kSweepParams); ++i)
                          if (p == kSweepParams[i]) return i;
                      return std::size(kSweepParams);
                  };
                  return rank(a.param) < rank(b2.param);
              });

    for (const auto& sv : spec.sweep) {
        if (sv.param == "delta" && cfg.protocol.kind != ProtocolKind::Dynamic)
            throw ConfigError("sweep.delta requires protocol = dynamic");
        if (sv.param == "b" && cfg.protocol.kind != ProtocolKind::Static)
            throw ConfigError("sweep.b requires protocol = static");
    }

    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

std::string render_config(const ExperimentSpec& spec) {
    const RunConfig& cfg = spec.base;
    std::ostringstream out;
    out << "protocol = " << to_string(cfg.protocol.kind) << '\n';
    out << "k = " << cfg.k << '\n';
    out << "T = " << cfg.rounds << '\n';
    out << "dim = " << cfg.stream.dim << '\n';
    out << "seed = " << cfg.stream.seed << '\n';
    out << "rule = " << (cfg.rule.kind == RuleKind::PassiveAggressive ? "pa" : "sgd") << '\n';
    out << "eta0 = " << format_shortest(cfg.rule.eta0) << '\n';
    const char* stream_name = cfg.stream.kind == StreamKind::StaticLinear ? "static"
                              : cfg.stream.kind == StreamKind::RotatingLinear ? "rotating"
                                                                              : "switch";
    out << "stream = " << stream_name << '\n';
    out << "noise = " << format_shortest(cfg.stream.noise) << '\n';
    out << "drift_rate = " << format_shortest(cfg.stream.drift_rate) << '\n';
    out << "switch_every = " << cfg.stream.switch_every << '\n';
    out << "delta = " << format_shortest(cfg.protocol.delta) << '\n';
    out << "b = " << cfg.protocol.period << '\n';
    out << "model_radius = " << format_shortest(cfg.bounds.model_radius) << '\n';
    for (const auto& sv : spec.sweep) {
        out << "sweep." << sv.param << " = ";
        for (std::size_t i = 0; i < sv.values.size(); ++i)
            out << (i ? "," : "") << sv.values[i];
        out << '\n';
    }
    return out.str();
}

std::vector<RunConfig> expand_sweep(const ExperimentSpec& spec) {
    std::vector<RunConfig> runs{spec.base};
    for (const auto& axis : spec.sweep) {
        std::vector<RunConfig> next;
        next.reserve(runs.size() * axis.values.size());
        for (const RunConfig& base : runs) {
            for (const std::string& raw : axis.values) {
                RunConfig cfg = base;
                if (axis.param == "delta") cfg.protocol.delta = parse_double(axis.param, raw);
                else if (axis.param == "b") cfg.protocol.period = parse_positive_integral(axis.param, raw);
                else if (axis.param == "k") cfg.k = static_cast<std::size_t>(parse_u64(axis.param, raw));
                else cfg.stream.seed = parse_u64(axis.param, raw);
                next.push_back(std::move(cfg));
            }
        }
        runs = std::move(next);
    }
    return runs;
}

}  // namespace dynavg
