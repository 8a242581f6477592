#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "magnomech/stability.hpp"
#include "magnomech/steadystate.hpp"
#include "magnomech/sweep.hpp"

namespace magnomech {

namespace detail {

inline nlohmann::json to_json(const NormalizedParams& p) {
    nlohmann::json j;
    for (const auto& f : normalized_fields) j[std::string(f.name)] = p.*(f.member);
    return j;
}

inline NormalizedParams params_from_json(const nlohmann::json& j) {
    NormalizedParams p;
    for (const auto& f : normalized_fields)
        if (j.contains(std::string(f.name))) p.*(f.member) = j.at(std::string(f.name));
    return p;
}

inline nlohmann::json to_json(const ModelOptions& o) {
    return {
        {"dissipation_sign", o.dissipation_sign},
        {"drift_sign_convention",
         o.drift_sign_convention == ModelOptions::DriftSign::canonical ? "canonical"
                                                                       : "as_printed"},
        {"steady_phonon_term",
         o.steady_phonon_term == ModelOptions::PhononTerm::with_i ? "with_i" : "as_printed"},
    };
}

inline nlohmann::json to_json(const SweepSpec& spec) {
    nlohmann::json axes = nlohmann::json::array();
    for (const SweepAxis& ax : spec.axes)
        axes.push_back({{"name", ax.name}, {"lo", ax.lo}, {"hi", ax.hi}, {"n", ax.n}});
    return {
        {"name", spec.name},
        {"base", to_json(spec.base)},
        {"options", to_json(spec.options)},
        {"axes", axes},
        {"outputs",
         {{"eigenvalues", spec.outputs.eigenvalues},
          {"spread", spec.outputs.spread},
          {"ep", spec.outputs.ep},
          {"s_param", spec.outputs.s_param},
          {"stability", spec.outputs.stability},
          {"steady_state", spec.outputs.steady_state}}},
        {"g_mb_bare", spec.g_mb_bare},
        {"ep_tol_rel", spec.ep_tol_rel},
    };
}

inline nlohmann::json to_json(const EpReport& ep) {
    return {{"location", ep.location},
            {"order", ep.order},
            {"found", ep.found()},
            {"spread_at_min", ep.spread_at_min},
            {"tolerance_used", ep.tolerance_used}};
}

inline nlohmann::json to_json(const SweepRecord& r) {
    nlohmann::json j;
    j["axis1"] = r.axis1;
    if (r.axis2) j["axis2"] = *r.axis2;
    if (r.eigen) {
        nlohmann::json ev = nlohmann::json::array();
        for (const Complex& z : *r.eigen) ev.push_back({{"re", z.real()}, {"im", z.imag()}});
        j["eigenvalues"] = ev;
    }
    if (r.spread_value) j["spread"] = *r.spread_value;
    if (r.s_value) j["s"] = {{"re", r.s_value->real()}, {"im", r.s_value->imag()}};
    if (r.stable) j["stable"] = *r.stable;
    nlohmann::json cond = nlohmann::json::array();
    for (const auto& c : r.conditions)
        cond.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
    j["conditions"] = cond;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

} // namespace detail

// Same fields as the CSV plus the full sweep spec as metadata.
inline nlohmann::json sweep_to_json(const SweepResult& res) {
    nlohmann::json j;
    j["spec"] = detail::to_json(res.spec);
    if (res.ep) j["ep"] = detail::to_json(*res.ep);
    nlohmann::json records = nlohmann::json::array();
    for (const SweepRecord& r : res.records) records.push_back(detail::to_json(r));
    j["records"] = records;
    return j;
}

inline void write_json_file(const SweepResult& res, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << sweep_to_json(res).dump(2) << "\n";
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline std::vector<SweepRecord> records_from_json(const nlohmann::json& j) {
    std::vector<SweepRecord> records;
    for (const auto& rj : j.at("records")) {
        SweepRecord r;
        r.axis1 = rj.at("axis1");
        if (rj.contains("axis2")) r.axis2 = rj.at("axis2");
        if (rj.contains("eigenvalues")) {
            std::array<Complex, 3> ev;
            for (std::size_t k = 0; k < 3; ++k)
                ev[k] = Complex(rj.at("eigenvalues")[k].at("re"),
                                rj.at("eigenvalues")[k].at("im"));
            r.eigen = ev;
        }
        if (rj.contains("spread")) r.spread_value = rj.at("spread");
        if (rj.contains("s")) r.s_value = Complex(rj.at("s").at("re"), rj.at("s").at("im"));
        if (rj.contains("stable")) r.stable = rj.at("stable").get<bool>();
        if (rj.contains("conditions")) {
            for (std::size_t k = 0; k < 4 && k < rj.at("conditions").size(); ++k) {
                const auto& c = rj.at("conditions")[k];
                if (!c.is_null()) r.conditions[k] = c.get<bool>();
            }
        }
        if (rj.contains("error")) r.error = rj.at("error");
        records.push_back(std::move(r));
    }
    return records;
}

// Point-report serializers used by the CLI.
inline nlohmann::json ep_report_to_json(const EpReport& ep) { return detail::to_json(ep); }

inline nlohmann::json steady_state_to_json(const SteadyStateResult& res) {
    nlohmann::json branches = nlohmann::json::array();
    for (const SteadyState& s : res.branches) {
        branches.push_back({
            {"a_mean", {{"re", s.a_mean.real()}, {"im", s.a_mean.imag()}}},
            {"m_mean", {{"re", s.m_mean.real()}, {"im", s.m_mean.imag()}}},
            {"b_mean", {{"re", s.b_mean.real()}, {"im", s.b_mean.imag()}}},
            {"u", s.u},
            {"g_mb_eff_out", s.g_mb_eff_out},
            {"residual", s.residual},
        });
    }
    nlohmann::json roots = nlohmann::json::array();
    for (const Complex& z : res.cubic_roots)
        roots.push_back({{"re", z.real()}, {"im", z.imag()}});
    return {{"branches", branches}, {"selected", 0}, {"cubic_roots", roots}};
}

inline nlohmann::json stability_report_to_json(const StabilityReport& rep) {
    nlohmann::json roots = nlohmann::json::array();
    for (const Complex& z : rep.roots) roots.push_back({{"re", z.real()}, {"im", z.imag()}});
    nlohmann::json j{
        {"roots", roots},
        {"max_real_part", rep.max_real_part},
        {"stable_by_roots", rep.stable_by_roots},
        {"marginal", rep.marginal},
        {"routh_verdict", to_string(rep.routh_verdict)},
        {"conditions",
         {{"c1", rep.conditions.c1_applicable ? nlohmann::json(rep.conditions.c1)
                                              : nlohmann::json(nullptr)},
          {"c1_imag_residual", rep.conditions.c1_imag_residual},
          {"c2", rep.conditions.c2},
          {"c3", rep.conditions.c3},
          {"c4", rep.conditions.c4}}},
    };
    if (rep.s_singular) {
        j["s"] = nullptr;
    } else {
        j["s"] = {{"re", rep.s_value.real()}, {"im", rep.s_value.imag()}};
        j["s_imag_residual"] = rep.s_imag_residual;
    }
    return j;
}

} // namespace magnomech
