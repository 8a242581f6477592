#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "magnomech/params.hpp"

namespace magnomech {

struct Config {
    NormalizedParams params;
    ModelOptions options;
    bool from_physical = false;
};

namespace detail {

struct PhysicalFieldDef {
    std::string_view name;
    double PhysicalParams::* member;
};

inline constexpr std::array<PhysicalFieldDef, 13> physical_fields{{
    {"omega_a", &PhysicalParams::omega_a},
    {"omega_m", &PhysicalParams::omega_m},
    {"omega_b", &PhysicalParams::omega_b},
    {"omega_0", &PhysicalParams::omega_0},
    {"kappa_a", &PhysicalParams::kappa_a},
    {"kappa_m", &PhysicalParams::kappa_m},
    {"gamma_b", &PhysicalParams::gamma_b},
    {"cavity_length", &PhysicalParams::cavity_length},
    {"drive_power", &PhysicalParams::drive_power},
    {"g_ma_phys", &PhysicalParams::g_ma_phys},
    {"g_mb_phys", &PhysicalParams::g_mb_phys},
    {"traveling_amplitude", &PhysicalParams::traveling_amplitude},
    {"theta", &PhysicalParams::theta},
}};

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
    }
    if (used != value.size())
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
    return v;
}

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline bool apply_option(ModelOptions& opt, const std::string& key, const std::string& value) {
    if (key == "dissipation_sign") {
        const double v = parse_number(key, value);
        if (v != 1.0 && v != -1.0)
            throw std::invalid_argument("config: dissipation_sign must be +1 or -1");
        opt.dissipation_sign = int(v);
        return true;
    }
    if (key == "drift_sign_convention") {
        if (value == "as_printed")
            opt.drift_sign_convention = ModelOptions::DriftSign::as_printed;
        else if (value == "canonical")
            opt.drift_sign_convention = ModelOptions::DriftSign::canonical;
        else
            throw std::invalid_argument(
                "config: drift_sign_convention must be as_printed or canonical");
        return true;
    }
    if (key == "steady_phonon_term") {
        if (value == "as_printed")
            opt.steady_phonon_term = ModelOptions::PhononTerm::as_printed;
        else if (value == "with_i")
            opt.steady_phonon_term = ModelOptions::PhononTerm::with_i;
        else
            throw std::invalid_argument(
                "config: steady_phonon_term must be as_printed or with_i");
        return true;
    }
    return false;
}

} // namespace detail

// Flat key = value files; '#' starts a comment; unknown keys are errors.
// Keys are NormalizedParams fields (plus the three model flags). If any
// PhysicalParams-only key appears the whole file is read as a lab-frame set,
// mode_mass_magnon / mode_mass_phonon become required, and the result is
// converted with physical_to_normalized. The shared decay-rate keys
// (kappa_a, kappa_m, gamma_b) follow the detected mode.
inline Config parse_config(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        if (kv.count(key))
            throw std::invalid_argument("config: duplicate key: " + key);
        kv[key] = value;
    }

    const auto is_normalized_key = [](const std::string& k) {
        for (const auto& f : normalized_fields)
            if (f.name == k) return true;
        return false;
    };
    const auto is_physical_key = [](const std::string& k) {
        for (const auto& f : detail::physical_fields)
            if (f.name == k) return true;
        return false;
    };

    bool physical_mode = false;
    for (const auto& [k, v] : kv) {
        if (k == "mode_mass_magnon" || k == "mode_mass_phonon" ||
            (is_physical_key(k) && !is_normalized_key(k)))
            physical_mode = true;
    }

    Config out;
    out.from_physical = physical_mode;

    if (physical_mode) {
        PhysicalParams phys;
        double mass_magnon = 0.0, mass_phonon = 0.0;
        bool have_mm = false, have_mp = false;
        for (const auto& [k, v] : kv) {
            if (detail::apply_option(out.options, k, v)) continue;
            if (k == "mode_mass_magnon") {
                mass_magnon = detail::parse_number(k, v);
                have_mm = true;
                continue;
            }
            if (k == "mode_mass_phonon") {
                mass_phonon = detail::parse_number(k, v);
                have_mp = true;
                continue;
            }
            bool known = false;
            for (const auto& f : detail::physical_fields) {
                if (f.name == k) {
                    phys.*(f.member) = detail::parse_number(k, v);
                    known = true;
                    break;
                }
            }
            if (!known) throw std::invalid_argument("config: unknown key: " + k);
        }
        if (!have_mm || !have_mp)
            throw std::invalid_argument(
                "config: physical-mode file needs mode_mass_magnon and mode_mass_phonon");
        out.params = physical_to_normalized(validate(phys), mass_magnon, mass_phonon);
    } else {
        for (const auto& [k, v] : kv) {
            if (detail::apply_option(out.options, k, v)) continue;
            if (!is_normalized_key(k))
                throw std::invalid_argument("config: unknown key: " + k);
            set_field(out.params, k, detail::parse_number(k, v));
        }
        out.params = validate(out.params);
    }
    return out;
}

inline Config parse_config_string(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

inline Config parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(is);
}

} // namespace magnomech
