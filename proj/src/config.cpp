#include "jumplab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace jumplab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty() || k.front() == '.' || k.back() == '.') return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
              c == '-'))
            return false;
    return true;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(trim(part));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

}  // namespace

ConfigMap ConfigMap::parse_text(const std::string& text, const std::string& origin) {
    ConfigMap cfg;
    cfg.origin_ = origin;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": malformed key '" + key + "'");
        if (cfg.entries_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "' (first at line " +
                              std::to_string(cfg.entries_[key].line) + ")");
        cfg.entries_[key] = Entry{value, lineno, false};
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

void ConfigMap::set_override(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw ConfigError("override: malformed key '" + key + "'");
    entries_[key] = Entry{trim(value), 0, false};
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

const ConfigMap::Entry& ConfigMap::require(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing required key '" + key + "' in " + origin_);
    it->second.used = true;
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key) { return require(key).value; }

std::string ConfigMap::get_string_or(const std::string& key, const std::string& def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    it->second.used = true;
    return it->second.value;
}

double ConfigMap::get_double(const std::string& key) {
    return parse_double(key, require(key).value);
}
double ConfigMap::get_double_or(const std::string& key, double def) {
    return has(key) ? get_double(key) : def;
}
long ConfigMap::get_long(const std::string& key) {
    return parse_long(key, require(key).value);
}
long ConfigMap::get_long_or(const std::string& key, long def) {
    return has(key) ? get_long(key) : def;
}
int ConfigMap::get_int(const std::string& key) {
    return static_cast<int>(get_long(key));
}
int ConfigMap::get_int_or(const std::string& key, int def) {
    return has(key) ? get_int(key) : def;
}

std::uint64_t ConfigMap::get_seed_or(const std::string& key, std::uint64_t def) {
    if (!has(key)) return def;
    const auto& v = require(key).value;
    try {
        std::size_t pos = 0;
        auto s = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return s;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a seed");
    }
}

std::vector<double> ConfigMap::get_doubles(const std::string& key) {
    const auto& v = require(key).value;
    std::vector<double> out;
    for (const auto& part : split(v, ','))
        out.push_back(parse_double(key, part));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<double> ConfigMap::get_doubles_or(const std::string& key,
                                              const std::vector<double>& def) {
    return has(key) ? get_doubles(key) : def;
}

Vec ConfigMap::get_vec(const std::string& key, int dim) {
    auto v = get_doubles(key);
    if (static_cast<int>(v.size()) != dim)
        throw ConfigError("key '" + key + "': expected " + std::to_string(dim) +
                          " components, got " + std::to_string(v.size()));
    return v;
}

Vec ConfigMap::get_vec_or(const std::string& key, const Vec& def) {
    return has(key) ? get_vec(key, static_cast<int>(def.size())) : def;
}

void ConfigMap::check_all_used() const {
    std::string bad;
    for (const auto& [key, entry] : entries_) {
        if (entry.used) continue;
        if (!bad.empty()) bad += ", ";
        bad += "'" + key + "'";
        if (entry.line > 0) bad += " (line " + std::to_string(entry.line) + ")";
    }
    if (!bad.empty())
        throw ConfigError("unknown key(s) in " + origin_ + ": " + bad);
}

std::vector<std::string> ConfigMap::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_)
        if (key.rfind(prefix, 0) == 0) out.push_back(key);
    return out;
}

// ---------------------------------------------------------------------------
// kernel construction
// ---------------------------------------------------------------------------

namespace {

SlowlyVaryingSpec parse_ell(const std::string& spec) {
    // factors joined by '*': const:<c> or log:<p>
    std::vector<SlowlyVaryingSpec> parts;
    for (const auto& factor : split(spec, '*')) {
        auto colon = factor.find(':');
        std::string kind = colon == std::string::npos ? factor : factor.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : trim(factor.substr(colon + 1));
        if (kind == "const") {
            parts.push_back(
                SlowlyVaryingSpec::constant(arg.empty() ? 1.0 : parse_double("kernel.ell", arg)));
        } else if (kind == "log") {
            if (arg.empty()) throw ConfigError("kernel.ell: log factor needs an exponent");
            parts.push_back(SlowlyVaryingSpec::log_power(parse_double("kernel.ell", arg)));
        } else {
            throw ConfigError("kernel.ell: unknown factor '" + factor +
                              "' (want const:<c> or log:<p>)");
        }
    }
    if (parts.empty()) throw ConfigError("kernel.ell: empty spec");
    return parts.size() == 1 ? parts.front() : SlowlyVaryingSpec::product(parts);
}

TailRule parse_tail(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : trim(spec.substr(colon + 1));
    if (kind == "power") {
        if (!arg.empty()) throw ConfigError("kernel.tail: power takes no parameter");
        return TailRule::power();
    }
    if (kind == "truncated") {
        if (arg.empty()) throw ConfigError("kernel.tail: truncated needs a cutoff");
        return TailRule::truncated(parse_double("kernel.tail", arg));
    }
    if (kind == "exponential") {
        if (arg.empty()) throw ConfigError("kernel.tail: exponential needs a rate");
        return TailRule::exponential(parse_double("kernel.tail", arg));
    }
    throw ConfigError("kernel.tail: unknown kind '" + kind + "'");
}

SpatialModulator parse_modulator(ConfigMap& cfg, int dim) {
    std::string kind = cfg.get_string_or("kernel.modulator", "one");
    if (kind == "one") return SpatialModulator::constant_one();
    if (kind == "sin")
        return SpatialModulator::sinusoidal(cfg.get_vec("kernel.modulator.frequency", dim));
    if (kind == "patch") {
        auto values = cfg.get_doubles("kernel.modulator.values");
        double cell = cfg.get_double_or("kernel.modulator.cell", 1.0);
        return SpatialModulator::patchwise(values, cell);
    }
    throw ConfigError("kernel.modulator: unknown kind '" + kind +
                      "' (want one, sin, or patch)");
}

}  // namespace

JumpKernel kernel_from_config(ConfigMap& cfg) {
    int dim = cfg.get_int("kernel.dim");
    if (dim < 1 || dim > 3) throw ConfigError("kernel.dim: must be 1, 2, or 3");
    double alpha = cfg.get_double("kernel.alpha");
    auto ell = parse_ell(cfg.get_string_or("kernel.ell", "const:1"));
    auto tail = parse_tail(cfg.get_string_or("kernel.tail", "power"));
    double kappa = cfg.get_double_or("kernel.kappa", 1.0);
    double sigma = cfg.get_double_or("kernel.sigma", 0.5 * alpha);
    double delta = cfg.get_double_or("kernel.delta", 1.0);

    std::vector<std::tuple<UnitVector, double, double>> caps;
    std::string cap_mode = cfg.get_string_or("kernel.caps", "full");
    if (cap_mode == "full") {
        Vec axis(dim, 0.0);
        axis[0] = 1.0;
        caps.emplace_back(UnitVector(axis), 2.0,
                          cfg.get_double_or("kernel.upper", delta));
    } else if (cap_mode == "list") {
        int count = cfg.get_int("kernel.cap.count");
        if (count < 1) throw ConfigError("kernel.cap.count: must be >= 1");
        for (int i = 1; i <= count; ++i) {
            std::string base = "kernel.cap." + std::to_string(i);
            Vec axis = cfg.get_vec(base + ".axis", dim);
            double rho = cfg.get_double(base + ".rho");
            double upper = cfg.get_double_or(base + ".upper", delta);
            caps.emplace_back(UnitVector::from(axis), rho, upper);
        }
    } else {
        throw ConfigError("kernel.caps: unknown mode '" + cap_mode +
                          "' (want full or list)");
    }

    try {
        ConeSystem cones(caps, delta);
        RadialProfile radial(alpha, ell, tail, kappa, sigma);
        return JumpKernel(dim, std::move(cones), std::move(radial),
                          parse_modulator(cfg, dim));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("kernel: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("kernel: ") + e.what());
    }
}

SimConfig sim_from_config(ConfigMap& cfg) {
    SimConfig sim;
    sim.epsilon = cfg.get_double_or("sim.epsilon", 0.01);
    sim.max_events = cfg.get_long_or("sim.max_events", 1000000);
    if (cfg.has("sim.horizon")) sim.time_horizon = cfg.get_double("sim.horizon");
    sim.seed = cfg.get_seed_or("seed", 0);
    try {
        sim.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("sim: ") + e.what());
    }
    return sim;
}

}  // namespace jumplab
