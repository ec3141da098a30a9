// SPDX-License-Identifier: Apache-2.0
#include "irsce/system_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace irsce {

double path_loss_linear(double distance_m, double exponent, double ref_loss_db) {
    if (!(distance_m >= 1.0)) {
        throw std::invalid_argument("path_loss_linear: distance " + std::to_string(distance_m) +
                                    " m is below the 1 m reference; model undefined");
    }
    if (!(exponent >= 0.0) || !std::isfinite(ref_loss_db)) {
        throw std::invalid_argument("path_loss_linear: exponent must be >= 0 and ref loss finite");
    }
    const double pl_db = ref_loss_db + 10.0 * exponent * std::log10(distance_m);
    return std::pow(10.0, -pl_db / 10.0);
}

double snr_to_power(double snr_db, double noise_power) {
    if (!(noise_power > 0.0)) {
        throw std::invalid_argument("snr_to_power: noise power must be positive");
    }
    return noise_power * std::pow(10.0, snr_db / 10.0);
}

LinkDistances link_distances(const NodeGeometry& g) {
    LinkDistances d{};
    d.u1_relay = (g.u1 - g.relay).norm();
    d.u2_relay = (g.u2 - g.relay).norm();
    d.u1_irs = (g.u1 - g.irs).norm();
    d.u2_irs = (g.u2 - g.irs).norm();
    d.irs_relay = (g.irs - g.relay).norm();
    if (d.u1_relay <= 0.0 || d.u2_relay <= 0.0 || d.u1_irs <= 0.0 || d.u2_irs <= 0.0 ||
        d.irs_relay <= 0.0) {
        throw std::invalid_argument("link_distances: coincident nodes on a used link");
    }
    return d;
}

LinkAttenuations link_attenuations(const SystemConfig& config) {
    const LinkDistances d = link_distances(config.geometry);
    const PathLossModel& pl = config.path_loss;
    LinkAttenuations a{};
    a.u1_relay = path_loss_linear(d.u1_relay, pl.exp_direct, pl.ref_loss_db);
    a.u2_relay = path_loss_linear(d.u2_relay, pl.exp_direct, pl.ref_loss_db);
    a.u1_irs = path_loss_linear(d.u1_irs, pl.exp_user_irs, pl.ref_loss_db);
    a.u2_irs = path_loss_linear(d.u2_irs, pl.exp_user_irs, pl.ref_loss_db);
    a.irs_relay = path_loss_linear(d.irs_relay, pl.exp_irs_relay, pl.ref_loss_db);
    return a;
}

void SystemConfig::validate() const {
    if (m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (n_p < m) {
        throw std::invalid_argument("config: pilot length n_p must not be below m");
    }
    if (n_p != m) {
        // The training frame assumes N_P = M; longer sequences are rejected
        // rather than silently truncated.
        throw std::invalid_argument("config: pilot length n_p must equal m");
    }
    if (!(p_u1 > 0.0) || !(p_u2 > 0.0)) {
        throw std::invalid_argument("config: transmit powers must be positive");
    }
    if (!(noise_power > 0.0)) {
        throw std::invalid_argument("config: noise power must be positive");
    }
    if (!(path_loss.exp_direct >= 0.0) || !(path_loss.exp_user_irs >= 0.0) ||
        !(path_loss.exp_irs_relay >= 0.0) || !std::isfinite(path_loss.ref_loss_db)) {
        throw std::invalid_argument("config: invalid path loss parameters");
    }
    link_distances(geometry);  // throws on coincident nodes
}

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

SectionMap parse_sections(std::istream& in, const std::string& origin) {
    SectionMap out;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                            ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        out[section][key] = value;
    }
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "': not a number: " + value);
    }
    if (pos != value.size()) {
        throw std::invalid_argument("config: key '" + key + "': trailing characters: " + value);
    }
    return v;
}

Eigen::Vector2d to_point(const std::string& key, const std::string& value) {
    const auto comma = value.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("config: key '" + key + "': expected 'x,y'");
    }
    return {to_double(key, trim(value.substr(0, comma))),
            to_double(key, trim(value.substr(comma + 1)))};
}

}  // namespace

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open " + path);
    }
    const SectionMap sections = parse_sections(in, path);

    SystemConfig cfg;
    bool n_p_given = false;
    for (const auto& [section, kv] : sections) {
        for (const auto& [key, value] : kv) {
            if (section == "system") {
                if (key == "m") {
                    cfg.m = static_cast<int>(to_double(key, value));
                } else if (key == "k") {
                    cfg.k = static_cast<int>(to_double(key, value));
                } else if (key == "n_p") {
                    cfg.n_p = static_cast<int>(to_double(key, value));
                    n_p_given = true;
                } else if (key == "p_u1_mw") {
                    cfg.p_u1 = to_double(key, value);
                } else if (key == "p_u2_mw") {
                    cfg.p_u2 = to_double(key, value);
                } else if (key == "snr_db") {
                    // convenience: sets both powers relative to the noise floor
                    cfg.p_u1 = cfg.p_u2 = snr_to_power(to_double(key, value), cfg.noise_power);
                } else if (key == "noise_dbm") {
                    cfg.noise_power = std::pow(10.0, to_double(key, value) / 10.0);
                } else if (key == "seed") {
                    cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
                } else {
                    throw std::invalid_argument("config: unknown key [system] " + key);
                }
            } else if (section == "geometry") {
                if (key == "u1") {
                    cfg.geometry.u1 = to_point(key, value);
                } else if (key == "u2") {
                    cfg.geometry.u2 = to_point(key, value);
                } else if (key == "relay") {
                    cfg.geometry.relay = to_point(key, value);
                } else if (key == "irs") {
                    cfg.geometry.irs = to_point(key, value);
                } else {
                    throw std::invalid_argument("config: unknown key [geometry] " + key);
                }
            } else if (section == "path_loss") {
                if (key == "ref_loss_db") {
                    cfg.path_loss.ref_loss_db = to_double(key, value);
                } else if (key == "exp_direct") {
                    cfg.path_loss.exp_direct = to_double(key, value);
                } else if (key == "exp_user_irs") {
                    cfg.path_loss.exp_user_irs = to_double(key, value);
                } else if (key == "exp_irs_relay") {
                    cfg.path_loss.exp_irs_relay = to_double(key, value);
                } else {
                    throw std::invalid_argument("config: unknown key [path_loss] " + key);
                }
            } else {
                throw std::invalid_argument("config: unknown section [" + section + "]");
            }
        }
    }
    if (!n_p_given) cfg.n_p = cfg.m;
    cfg.validate();
    return cfg;
}

}  // namespace irsce
