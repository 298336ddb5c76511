#include "axeuler/config.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>

namespace axeuler {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config line " + std::to_string(line) + ": expected a number, got '" +
                          v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config line " + std::to_string(line) + ": expected an integer, got '" +
                          v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config line " + std::to_string(line) + ": expected a boolean, got '" + v +
                      "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, line));
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    bool a_set = false, gamma_set = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));

        if (key == "study") {
            if (val != "run" && val != "sweep" && val != "decay" && val != "converge" &&
                val != "verify")
                throw ConfigError("config line " + std::to_string(line) + ": unknown study '" +
                                  val + "'");
            cfg.study = val;
        } else if (key == "eos") {
            if (val == "chaplygin") cfg.scenario.eos.kind = EosKind::Chaplygin;
            else if (val == "polytropic") cfg.scenario.eos.kind = EosKind::Polytropic;
            else
                throw ConfigError("config line " + std::to_string(line) + ": unknown eos '" +
                                  val + "'");
        } else if (key == "P0") {
            cfg.scenario.eos.P0 = parse_double(val, line);
        } else if (key == "B") {
            cfg.scenario.eos.B = parse_double(val, line);
        } else if (key == "A") {
            cfg.scenario.eos.A = parse_double(val, line);
            a_set = true;
        } else if (key == "gamma") {
            cfg.scenario.eos.gamma = parse_double(val, line);
            gamma_set = true;
        } else if (key == "epsilon") {
            cfg.scenario.epsilon = parse_double(val, line);
            cfg.epsilon_set = true;
            if (cfg.scenario.epsilon < 0.0)
                throw ConfigError("config line " + std::to_string(line) +
                                  ": epsilon must be >= 0");
        } else if (key == "epsilons") {
            cfg.epsilons = parse_list(val, line);
        } else if (key == "profile") {
            cfg.scenario.profile = val;
        } else if (key == "r0") {
            cfg.scenario.r0 = parse_double(val, line);
        } else if (key == "n") {
            cfg.scenario.n = static_cast<std::size_t>(parse_int(val, line));
        } else if (key == "r_max") {
            cfg.scenario.r_max = parse_double(val, line);
        } else if (key == "t_end") {
            cfg.scenario.t_end = parse_double(val, line);
        } else if (key == "cfl") {
            cfg.scenario.cfl = parse_double(val, line);
        } else if (key == "diag_dt") {
            cfg.scenario.diag_dt = parse_double(val, line);
        } else if (key == "seed") {
            cfg.scenario.seed = static_cast<unsigned>(parse_int(val, line));
        } else if (key == "min_resolve_cells") {
            cfg.scenario.min_resolve_cells = parse_double(val, line);
        } else if (key == "snapshots") {
            cfg.snapshot_times = parse_list(val, line);
        } else if (key == "out") {
            cfg.out_dir = val;
        } else if (key == "theta") {
            cfg.theta = parse_double(val, line);
        } else if (key == "dt_floor_factor") {
            cfg.dt_floor_factor = parse_double(val, line);
        } else if (key == "K") {
            cfg.K = static_cast<int>(parse_int(val, line));
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(parse_int(val, line));
        } else if (key == "window_lo") {
            cfg.window_lo = parse_double(val, line);
        } else if (key == "window_hi") {
            cfg.window_hi = parse_double(val, line);
        } else if (key == "n_base") {
            cfg.n_base = static_cast<std::size_t>(parse_int(val, line));
        } else if (key == "horizon_scale") {
            cfg.horizon_scale = parse_double(val, line);
        } else if (key == "max_retries") {
            cfg.max_retries = static_cast<int>(parse_int(val, line));
        } else if (key == "quiet") {
            cfg.quiet = parse_bool(val, line);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (cfg.scenario.eos.kind == EosKind::Polytropic) {
        if (gamma_set && !a_set) cfg.scenario.eos.A = 1.0 / cfg.scenario.eos.gamma;
        if (cfg.scenario.eos.gamma < 1.0) throw ConfigError("config: gamma must be >= 1");
    }
    if (cfg.K < 0 || cfg.K > kMaxDerivOrder)
        throw ConfigError("config: K must be between 0 and " + std::to_string(kMaxDerivOrder));
    return cfg;
}

std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream os;
    os << "study = " << cfg.study << "\n";
    os << "eos = " << (cfg.scenario.eos.is_chaplygin() ? "chaplygin" : "polytropic") << "\n";
    os << "P0 = " << fmt(cfg.scenario.eos.P0) << "\n";
    os << "B = " << fmt(cfg.scenario.eos.B) << "\n";
    os << "A = " << fmt(cfg.scenario.eos.A) << "\n";
    os << "gamma = " << fmt(cfg.scenario.eos.gamma) << "\n";
    if (cfg.epsilon_set) os << "epsilon = " << fmt(cfg.scenario.epsilon) << "\n";
    if (!cfg.epsilons.empty()) {
        os << "epsilons = ";
        for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
            if (i) os << ",";
            os << fmt(cfg.epsilons[i]);
        }
        os << "\n";
    }
    os << "profile = " << cfg.scenario.profile << "\n";
    os << "r0 = " << fmt(cfg.scenario.r0) << "\n";
    os << "n = " << cfg.scenario.n << "\n";
    os << "r_max = " << fmt(cfg.scenario.r_max) << "\n";
    os << "t_end = " << fmt(cfg.scenario.t_end) << "\n";
    os << "cfl = " << fmt(cfg.scenario.cfl) << "\n";
    os << "diag_dt = " << fmt(cfg.scenario.diag_dt) << "\n";
    os << "seed = " << cfg.scenario.seed << "\n";
    os << "min_resolve_cells = " << fmt(cfg.scenario.min_resolve_cells) << "\n";
    if (!cfg.snapshot_times.empty()) {
        os << "snapshots = ";
        for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
            if (i) os << ",";
            os << fmt(cfg.snapshot_times[i]);
        }
        os << "\n";
    }
    os << "out = " << cfg.out_dir << "\n";
    os << "theta = " << fmt(cfg.theta) << "\n";
    os << "dt_floor_factor = " << fmt(cfg.dt_floor_factor) << "\n";
    os << "K = " << cfg.K << "\n";
    os << "jobs = " << cfg.jobs << "\n";
    os << "window_lo = " << fmt(cfg.window_lo) << "\n";
    os << "window_hi = " << fmt(cfg.window_hi) << "\n";
    os << "n_base = " << cfg.n_base << "\n";
    os << "horizon_scale = " << fmt(cfg.horizon_scale) << "\n";
    os << "max_retries = " << cfg.max_retries << "\n";
    os << "quiet = " << (cfg.quiet ? "true" : "false") << "\n";
    return os.str();
}

void validate_config(const SimConfig& cfg) {
    if (cfg.study == "run" || cfg.study == "decay" || cfg.study == "converge") {
        if (!cfg.epsilon_set)
            throw ConfigError("config: epsilon is required for study '" + cfg.study + "'");
    }
    if (cfg.study == "sweep") {
        if (cfg.epsilons.size() < 4)
            throw ConfigError("config: sweep needs >= 4 epsilons");
        if (cfg.scenario.eos.is_chaplygin())
            throw ConfigError("config: sweep needs a polytropic eos");
    }
    for (double t : cfg.snapshot_times) {
        if (t < 0.0 || t > cfg.scenario.t_end)
            throw ConfigError("config: snapshot time outside [0, t_end]");
    }
    if (cfg.scenario.cfl <= 0.0 || cfg.scenario.cfl >= 1.0)
        throw ConfigError("config: cfl must be in (0,1)");
}

std::string config_run_id(const SimConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

} // namespace axeuler
