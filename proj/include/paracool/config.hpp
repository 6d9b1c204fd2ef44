#pragma once

// Flat key=value run configuration for the command-line tool.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "paracool/open_system.hpp"
#include "paracool/protocol.hpp"
#include "paracool/steady_state.hpp"

namespace paracool {

inline const std::vector<std::string> kSubcommands = {"trajectory", "ensemble",  "dissipative", "steady-state",
                                                      "errors",     "squeezing", "validate"};

struct RunConfig {
    std::string subcommand;
    TrajectoryConfig trajectory;
    /// Pump phase for the errors and squeezing sweeps (the protocol always drives at pi/2).
    double phi_p = kPi / 2;
    std::size_t n_traj = 1000;
    BathParams bath;
    QuadratureGrid quad;
    double steady_r0_max = 6.0;
    double steady_r0_step = 0.25;
    int steady_n_cycles = 4;
    double sweep_t_end = 50.0;
    double sweep_dt = kPi / 8;
    /// Every key with its resolved value, in key order.
    std::map<std::string, std::string> resolved;
};

/// Keys accepted in configuration text, in sorted order.
std::vector<std::string> config_keys();

/// Parses configuration text for `subcommand`. Lines are `key = value`; `#`
/// starts a comment. `overrides` are applied after the text. Throws
/// ConfigError naming the key and its accepted range for unknown keys, bad
/// values, and missing required keys.
RunConfig parse_config(const std::string &text, const std::string &subcommand,
                       const std::map<std::string, std::string> &overrides = {});

}  // namespace paracool
