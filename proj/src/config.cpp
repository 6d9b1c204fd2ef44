#include "paracool/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "paracool/errors.hpp"

namespace paracool {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const std::string &range) {
    std::ostringstream msg;
    msg << key << ": value '" << value << "' outside accepted range " << range;
    throw ConfigError(msg.str());
}

// Accepts plain decimals and a trailing "pi" multiplier, e.g. "22.5pi".
double parse_real(const std::string &key, const std::string &value, const std::string &range) {
    std::string v = value;
    double mult = 1.0;
    if (v.size() >= 2 && v.compare(v.size() - 2, 2, "pi") == 0) {
        v = v.substr(0, v.size() - 2);
        mult = kPi;
        if (v.empty()) {
            v = "1";
        }
    }
    double out = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
        bad_value(key, value, range);
    }
    return out * mult;
}

long long parse_int(const std::string &key, const std::string &value, const std::string &range) {
    long long out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        bad_value(key, value, range);
    }
    return out;
}

struct KeySpec {
    std::string range;
    /// Default for a subcommand; nullopt means required there.
    std::function<std::optional<std::string>(const std::string &)> fallback;
    std::function<void(RunConfig &, const std::string &, const std::string &)> apply;
};

std::function<std::optional<std::string>(const std::string &)> always(std::string v) {
    return [v](const std::string &) { return std::optional<std::string>(v); };
}

double real_in(const std::string &key, const std::string &value, const std::string &range, double lo, bool lo_open,
               double hi, bool hi_open) {
    double v = parse_real(key, value, range);
    bool ok = (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    if (!ok) {
        bad_value(key, value, range);
    }
    return v;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::map<std::string, KeySpec> &key_table() {
    static const std::map<std::string, KeySpec> table = [] {
        std::map<std::string, KeySpec> t;
        t["drive.lambda"] = {"(0, 0.25)", always("0.01"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                 double lam = real_in(k, v, "(0, 0.25)", 0.0, true, 0.25, true);
                                 c.trajectory.drive = DriveParams(lam, c.trajectory.drive.omega_p());
                             }};
        t["drive.omega_p"] = {"(0, inf)", always("2"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                  double w = real_in(k, v, "(0, inf)", 0.0, true, kInf, true);
                                  c.trajectory.drive = DriveParams(c.trajectory.drive.lambda(), w);
                              }};
        t["drive.phi_p"] = {"finite angle [rad]", always(fmt17(kPi / 2)),
                            [](RunConfig &c, const std::string &k, const std::string &v) {
                                c.phi_p = reduce_angle(parse_real(k, v, "finite angle [rad]"));
                            }};
        t["seed"] = {"integer [0, 2^63)", always("0"), [](RunConfig &c, const std::string &k, const std::string &v) {
                         long long s = parse_int(k, v, "integer [0, 2^63)");
                         if (s < 0) {
                             bad_value(k, v, "integer [0, 2^63)");
                         }
                         c.trajectory.seed = static_cast<std::uint64_t>(s);
                     }};
        t["initial.kind"] = {"coherent | thermal",
                             always("coherent"),
                             [](RunConfig &c, const std::string &k, const std::string &v) {
                                 if (v == "coherent") {
                                     c.trajectory.initial.kind = InitialState::Kind::coherent;
                                 } else if (v == "thermal") {
                                     c.trajectory.initial.kind = InitialState::Kind::thermal;
                                 } else {
                                     bad_value(k, v, "coherent | thermal");
                                 }
                             }};
        t["initial.value"] = {"[0, inf) mean quanta",
                              [](const std::string &sub) {
                                  return std::optional<std::string>(sub == "ensemble" ? "10" : "80");
                              },
                              [](RunConfig &c, const std::string &k, const std::string &v) {
                                  c.trajectory.initial.value = real_in(k, v, "[0, inf) mean quanta", 0.0, false, kInf, true);
                              }};
        t["protocol.n_cycles"] = {"integer >= 1",
                                  [](const std::string &sub) {
                                      return std::optional<std::string>(sub == "ensemble" ? "10" : "16");
                                  },
                                  [](RunConfig &c, const std::string &k, const std::string &v) {
                                      long long n = parse_int(k, v, "integer >= 1");
                                      if (n < 1 || n > 1000000) {
                                          bad_value(k, v, "integer >= 1");
                                      }
                                      c.trajectory.n_cycles = static_cast<int>(n);
                                  }};
        t["protocol.n_traj"] = {"integer >= 1",
                                [](const std::string &sub) {
                                    return std::optional<std::string>(sub == "trajectory" ? "1" : "1000");
                                },
                                [](RunConfig &c, const std::string &k, const std::string &v) {
                                    long long n = parse_int(k, v, "integer >= 1");
                                    if (n < 1) {
                                        bad_value(k, v, "integer >= 1");
                                    }
                                    c.n_traj = static_cast<std::size_t>(n);
                                }};
        t["protocol.phase_noise"] = {"[0, inf) rad", always("0"),
                                     [](RunConfig &c, const std::string &k, const std::string &v) {
                                         c.trajectory.phase_noise_sigma =
                                             real_in(k, v, "[0, inf) rad", 0.0, false, kInf, true);
                                     }};
        t["protocol.duration"] = {"optimal | [0, inf)", always("optimal"),
                                  [](RunConfig &c, const std::string &k, const std::string &v) {
                                      if (v == "optimal") {
                                          c.trajectory.fixed_duration.reset();
                                      } else {
                                          c.trajectory.fixed_duration =
                                              real_in(k, v, "optimal | [0, inf)", 0.0, false, kInf, true);
                                      }
                                  }};
        t["sample.interval"] = {"[0, inf); 0 disables intra-cycle samples",
                                [](const std::string &sub) {
                                    return std::optional<std::string>(sub == "dissipative" ? "0" : fmt17(kPi / 8));
                                },
                                [](RunConfig &c, const std::string &k, const std::string &v) {
                                    c.trajectory.sample_interval = real_in(k, v, "[0, inf)", 0.0, false, kInf, true);
                                }};
        t["ode.rtol"] = {"(0, 0.01]", always("1e-10"), [](RunConfig &c, const std::string &k, const std::string &v) {
                             c.trajectory.ode.rel_tol = real_in(k, v, "(0, 0.01]", 0.0, true, 1e-2, false);
                         }};
        t["ode.atol"] = {"(0, 0.01]", always("1e-12"), [](RunConfig &c, const std::string &k, const std::string &v) {
                             c.trajectory.ode.abs_tol = real_in(k, v, "(0, 0.01]", 0.0, true, 1e-2, false);
                         }};
        t["ode.max_step"] = {"[0, inf); 0 = unbounded", always("0"),
                             [](RunConfig &c, const std::string &k, const std::string &v) {
                                 c.trajectory.ode.max_step = real_in(k, v, "[0, inf)", 0.0, false, kInf, true);
                             }};
        t["bath.gamma"] = {"[0, inf)",
                           [](const std::string &sub) {
                               return sub == "dissipative" ? std::nullopt : std::optional<std::string>("0");
                           },
                           [](RunConfig &c, const std::string &k, const std::string &v) {
                               c.bath.gamma = real_in(k, v, "[0, inf)", 0.0, false, kInf, true);
                           }};
        t["bath.nbar"] = {"[0, inf)", always(fmt17(bath_occupation(0.5, 10.0))),
                          [](RunConfig &c, const std::string &k, const std::string &v) {
                              c.bath.nbar_B = real_in(k, v, "[0, inf)", 0.0, false, kInf, true);
                          }};
        t["quad.r_extra"] = {"(0, inf)", always("6"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                 c.quad.r_extra = real_in(k, v, "(0, inf)", 0.0, true, kInf, true);
                             }};
        t["quad.n_angular"] = {"integer >= 8", always("64"),
                               [](RunConfig &c, const std::string &k, const std::string &v) {
                                   long long n = parse_int(k, v, "integer >= 8");
                                   if (n < 8 || n > 100000) {
                                       bad_value(k, v, "integer >= 8");
                                   }
                                   c.quad.n_angular = static_cast<int>(n);
                               }};
        t["quad.panel_width"] = {"(0, inf)", always("1"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                     c.quad.panel_width = real_in(k, v, "(0, inf)", 0.0, true, kInf, true);
                                 }};
        t["steady.r0_max"] = {"[0, 20]", always("6"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                  c.steady_r0_max = real_in(k, v, "[0, 20]", 0.0, false, 20.0, false);
                              }};
        t["steady.r0_step"] = {"(0, inf)", always("0.25"), [](RunConfig &c, const std::string &k, const std::string &v) {
                                   c.steady_r0_step = real_in(k, v, "(0, inf)", 0.0, true, kInf, true);
                               }};
        t["steady.n_cycles"] = {"integer in [1, 1000]", always("4"),
                                [](RunConfig &c, const std::string &k, const std::string &v) {
                                    long long n = parse_int(k, v, "integer in [1, 1000]");
                                    if (n < 1 || n > 1000) {
                                        bad_value(k, v, "integer in [1, 1000]");
                                    }
                                    c.steady_n_cycles = static_cast<int>(n);
                                }};
        t["sweep.t_end"] = {"(0, 200/lambda]",
                            [](const std::string &sub) {
                                return std::optional<std::string>(sub == "squeezing" ? "100" : "50");
                            },
                            [](RunConfig &c, const std::string &k, const std::string &v) {
                                c.sweep_t_end = real_in(k, v, "(0, 200/lambda]", 0.0, true, kInf, true);
                            }};
        t["sweep.dt"] = {"(0, inf)", always(fmt17(kPi / 8)), [](RunConfig &c, const std::string &k, const std::string &v) {
                             c.sweep_dt = real_in(k, v, "(0, inf)", 0.0, true, kInf, true);
                         }};
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto &[k, spec] : key_table()) {
        keys.push_back(k);
    }
    return keys;
}

RunConfig parse_config(const std::string &text, const std::string &subcommand,
                       const std::map<std::string, std::string> &overrides) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    }
    const auto &table = key_table();
    std::map<std::string, std::string> given;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << lineno << ": expected key = value";
            throw ConfigError(msg.str());
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!table.count(key)) {
            throw ConfigError("unknown key '" + key + "'");
        }
        if (given.count(key)) {
            throw ConfigError("duplicate key '" + key + "'");
        }
        given[key] = value;
    }
    for (const auto &[key, value] : overrides) {
        if (!table.count(key)) {
            throw ConfigError("unknown key '" + key + "'");
        }
        given[key] = trim(value);
    }

    RunConfig cfg;
    cfg.subcommand = subcommand;
    // drive.lambda before drive.omega_p would be order-dependent; apply omega_p first
    std::vector<std::string> order = config_keys();
    std::stable_partition(order.begin(), order.end(), [](const std::string &k) { return k == "drive.omega_p"; });
    for (const auto &key : order) {
        const KeySpec &spec = table.at(key);
        std::string value;
        if (auto it = given.find(key); it != given.end()) {
            value = it->second;
        } else if (auto def = spec.fallback(subcommand)) {
            value = *def;
        } else {
            throw ConfigError("missing required key '" + key + "' for subcommand " + subcommand +
                              " (accepted range " + spec.range + ")");
        }
        try {
            spec.apply(cfg, key, value);
        } catch (const InvalidParameter &e) {
            throw ConfigError(key + ": " + e.what());
        }
        cfg.resolved[key] = value;
    }
    double guard = pq_horizon_limit(cfg.trajectory.drive);
    if (cfg.sweep_t_end > guard) {
        std::ostringstream msg;
        msg << "sweep.t_end: value " << cfg.sweep_t_end << " outside accepted range (0, 200/lambda = " << guard << "]";
        throw ConfigError(msg.str());
    }
    if (cfg.trajectory.fixed_duration && *cfg.trajectory.fixed_duration > guard) {
        std::ostringstream msg;
        msg << "protocol.duration: value " << *cfg.trajectory.fixed_duration
            << " outside accepted range [0, 200/lambda = " << guard << "]";
        throw ConfigError(msg.str());
    }
    return cfg;
}

}  // namespace paracool
