#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mprelay::cli {
namespace {

std::string format_error(const std::string& path, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << path;
    if (line > 0) os << ":" << line;
    os << ": " << msg;
    return os.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const std::size_t pos = s.find(sep);
        if (pos == std::string_view::npos) {
            out.push_back(s);
            return out;
        }
        out.push_back(s.substr(0, pos));
        s.remove_prefix(pos + 1);
    }
}

// Entire token must be a number; no stray characters.
double parse_double(std::string_view token, const std::string& path, std::size_t line,
                    const std::string& what) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw ConfigError(path, line,
                          "invalid number '" + std::string(token) + "' for " + what);
    }
    return value;
}

std::uint64_t parse_u64(std::string_view token, const std::string& path, std::size_t line,
                        const std::string& what) {
    std::uint64_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw ConfigError(path, line,
                          "invalid integer '" + std::string(token) + "' for " + what);
    }
    return value;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RawValue {
    std::string value;
    std::size_t line;
};

const char* const kKnownKeys[] = {"schemes", "case", "e_t", "p_r",  "p_t",     "e_r",
                                  "n0",      "k",    "eta1", "eta2", "n",      "trials",
                                  "seed",    "threads", "out"};

bool is_known_key(std::string_view key) {
    return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

}  // namespace

ConfigError::ConfigError(const std::string& path, std::size_t line, const std::string& msg)
    : std::runtime_error(format_error(path, line, msg)), line_(line) {}

double parse_power(std::string_view text, const std::string& path, std::size_t line) {
    const std::string_view t = trim(text);
    std::string_view number;
    bool in_db = false;
    if (t.ends_with("db")) {
        number = t.substr(0, t.size() - 2);
        in_db = true;
    } else if (t.ends_with("lin")) {
        number = t.substr(0, t.size() - 3);
    } else {
        throw ConfigError(path, line,
                          "power value '" + std::string(t) +
                              "' missing unit suffix (expected db or lin)");
    }
    const double raw = parse_double(trim(number), path, line, "power value");
    const double linear = in_db ? db_to_linear(raw) : raw;
    if (!std::isfinite(linear) || linear <= 0.0) {
        throw ConfigError(path, line, "power value '" + std::string(t) +
                                          "' must be positive and finite");
    }
    return linear;
}

ExperimentConfig parse_config_text(std::string_view text, const std::string& path) {
    std::map<std::string, RawValue, std::less<>> raw;
    std::size_t lineno = 0;
    for (std::string_view line : split(text, '\n')) {
        ++lineno;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path, lineno, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(path, lineno, "expected 'key = value'");
        if (!is_known_key(key)) throw ConfigError(path, lineno, "unknown key '" + key + "'");
        if (raw.count(key)) throw ConfigError(path, lineno, "duplicate key '" + key + "'");
        if (value.empty()) {
            throw ConfigError(path, lineno, "empty value for key '" + key + "'");
        }
        raw.emplace(key, RawValue{value, lineno});
    }

    const auto take = [&](std::string_view key) -> const RawValue* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    const auto require = [&](const std::string& key) -> const RawValue& {
        if (const RawValue* v = take(key)) return *v;
        throw ConfigError(path, 0, "missing required key '" + key + "'");
    };

    ExperimentConfig cfg;

    {
        const RawValue& rv = require("schemes");
        for (std::string_view tok : split(rv.value, ',')) {
            tok = trim(tok);
            RelayScheme scheme;
            if (tok == "mrc") scheme = RelayScheme::MrcMrt;
            else if (tok == "zf") scheme = RelayScheme::Zf;
            else if (tok == "naive") scheme = RelayScheme::NaiveOrthogonal;
            else {
                throw ConfigError(path, rv.line,
                                  "unknown scheme '" + std::string(tok) +
                                      "' (expected mrc, zf, or naive)");
            }
            if (std::find(cfg.schemes.begin(), cfg.schemes.end(), scheme) !=
                cfg.schemes.end()) {
                throw ConfigError(path, rv.line,
                                  "scheme '" + std::string(tok) + "' listed twice");
            }
            cfg.schemes.push_back(scheme);
        }
    }

    {
        const RawValue& rv = require("case");
        const std::string& c = rv.value;
        const auto power = [&](const std::string& key) {
            const RawValue& pv = require(key);
            return parse_power(pv.value, path, pv.line);
        };
        const auto forbid = [&](const std::string& key) {
            if (const RawValue* v = take(key)) {
                throw ConfigError(path, v->line, "key '" + key + "' does not apply to " + c);
            }
        };
        if (c == "case1") {
            forbid("p_t");
            forbid("e_r");
            cfg.scaling = CaseI{power("e_t"), power("p_r")};
        } else if (c == "case2") {
            forbid("e_t");
            forbid("p_r");
            cfg.scaling = CaseII{power("p_t"), power("e_r")};
        } else if (c == "case3") {
            forbid("p_t");
            forbid("p_r");
            cfg.scaling = CaseIII{power("e_t"), power("e_r")};
        } else if (c == "unscaled") {
            forbid("e_t");
            forbid("e_r");
            cfg.scaling = Unscaled{power("p_t"), power("p_r")};
        } else {
            throw ConfigError(path, rv.line,
                              "unknown case '" + c +
                                  "' (expected case1, case2, case3, or unscaled)");
        }
    }

    if (const RawValue* v = take("n0")) {
        cfg.noise_power = parse_power(v->value, path, v->line);
    }

    {
        const RawValue& rv = require("k");
        const std::uint64_t k = parse_u64(rv.value, path, rv.line, "k");
        if (k == 0) throw ConfigError(path, rv.line, "k must be at least 1");
        cfg.n_pairs = static_cast<std::size_t>(k);
    }

    const auto parse_etas = [&](const std::string& key) -> std::vector<double> {
        const RawValue* v = take(key);
        if (!v) return std::vector<double>(cfg.n_pairs, 1.0);
        std::vector<double> out;
        for (std::string_view tok : split(v->value, ',')) {
            const double d = parse_double(trim(tok), path, v->line, key);
            if (!std::isfinite(d) || d <= 0.0) {
                throw ConfigError(path, v->line, key + " entries must be positive and finite");
            }
            out.push_back(d);
        }
        if (out.size() != cfg.n_pairs) {
            std::ostringstream os;
            os << key << " must list exactly k = " << cfg.n_pairs << " values, got "
               << out.size();
            throw ConfigError(path, v->line, os.str());
        }
        return out;
    };
    cfg.eta1 = parse_etas("eta1");
    cfg.eta2 = parse_etas("eta2");

    {
        const RawValue& rv = require("n");
        for (std::string_view tok : split(rv.value, ',')) {
            const std::uint64_t n = parse_u64(trim(tok), path, rv.line, "n");
            if (n == 0) throw ConfigError(path, rv.line, "antenna counts must be positive");
            cfg.antenna_counts.push_back(static_cast<std::size_t>(n));
        }
        for (std::size_t i = 1; i < cfg.antenna_counts.size(); ++i) {
            if (cfg.antenna_counts[i] <= cfg.antenna_counts[i - 1]) {
                throw ConfigError(path, rv.line,
                                  "antenna counts must be strictly increasing");
            }
        }
    }

    if (const RawValue* v = take("trials")) {
        const std::uint64_t t = parse_u64(v->value, path, v->line, "trials");
        if (t < 2) throw ConfigError(path, v->line, "trials must be at least 2");
        cfg.trials = static_cast<std::size_t>(t);
    }
    if (const RawValue* v = take("seed")) {
        cfg.seed = parse_u64(v->value, path, v->line, "seed");
    }
    if (const RawValue* v = take("threads")) {
        const std::uint64_t t = parse_u64(v->value, path, v->line, "threads");
        if (t == 0 || t > 1024) {
            throw ConfigError(path, v->line, "threads must be between 1 and 1024");
        }
        cfg.threads = static_cast<unsigned>(t);
    }
    if (const RawValue* v = take("out")) cfg.out_path = v->value;

    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ConfigError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string to_config_text(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "schemes = ";
    for (std::size_t i = 0; i < config.schemes.size(); ++i) {
        if (i) os << ",";
        os << scheme_name(config.schemes[i]);
    }
    os << "\ncase = " << case_name(config.scaling) << "\n";
    const auto power = [&](const char* key, double v) {
        os << key << " = " << g17(v) << "lin\n";
    };
    if (const CaseI* c = std::get_if<CaseI>(&config.scaling)) {
        power("e_t", c->e_t);
        power("p_r", c->p_r);
    } else if (const CaseII* c = std::get_if<CaseII>(&config.scaling)) {
        power("p_t", c->p_t);
        power("e_r", c->e_r);
    } else if (const CaseIII* c = std::get_if<CaseIII>(&config.scaling)) {
        power("e_t", c->e_t);
        power("e_r", c->e_r);
    } else {
        const Unscaled& u = std::get<Unscaled>(config.scaling);
        power("p_t", u.p_t);
        power("p_r", u.p_r);
    }
    power("n0", config.noise_power);
    os << "k = " << config.n_pairs << "\n";
    const auto list = [&](const char* key, const std::vector<double>& values) {
        os << key << " = ";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) os << ",";
            os << g17(values[i]);
        }
        os << "\n";
    };
    list("eta1", config.eta1);
    list("eta2", config.eta2);
    os << "n = ";
    for (std::size_t i = 0; i < config.antenna_counts.size(); ++i) {
        if (i) os << ",";
        os << config.antenna_counts[i];
    }
    os << "\ntrials = " << config.trials << "\nseed = " << config.seed
       << "\nthreads = " << config.threads << "\n";
    if (!config.out_path.empty()) os << "out = " << config.out_path << "\n";
    return os.str();
}

SweepSpec ExperimentConfig::to_sweep_spec() const {
    return {schemes, scaling, profile(), noise_power, antenna_counts, trials, seed};
}

}  // namespace mprelay::cli
