#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "parasol/verifier.hpp"

namespace parasol {

/// Everything a run needs, as read from a JSON config document.
struct RunConfig {
    std::string problem;           // "fujita", "allen_cahn", or "" (custom)
    ProblemSpec spec;
    RunPlan plan;
    std::string out_dir = "out";
    std::string mode = "verify";   // constants | verify | reference
    nlohmann::json echo;           // accepted fields, for round-tripping
};

namespace detail {

inline Interval parse_number_or_ratio(const nlohmann::json& j, const std::string& field,
                                      std::vector<std::string>& errs) {
    try {
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            auto slash = s.find('/');
            if (slash == std::string::npos)
                return Interval(std::stod(s));
            return from_ratio(std::stoll(s.substr(0, slash)),
                              std::stoll(s.substr(slash + 1)));
        }
        return Interval(j.get<double>());
    } catch (const std::exception&) {
        errs.push_back(field + ": expected a number or \"p/q\" string");
        return Interval(1.0);
    }
}

inline std::vector<Interval> parse_poly(const nlohmann::json& j, const std::string& field,
                                        std::vector<std::string>& errs) {
    std::vector<Interval> out;
    if (!j.is_array()) {
        errs.push_back(field + ": expected an array of coefficients");
        return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_number_or_ratio(j[i], field + "[" + std::to_string(i) + "]", errs));
    return out;
}

} // namespace detail

/// Parse and validate a config document; throws ConfigError listing every
/// violated constraint.  Schema (JSON):
///   problem: "fujita" | "allen_cahn" (optional; fills nu, g, u0)
///   a:       Allen-Cahn parameter (optional, default 0.01)
///   nu:      number or "p/q"        g: [g0,g1,g2,g3]     u0: [c0,c1,...]
///   mesh:    {space_elems, time_elems}
///   reference_degrees: {px: 3|5, pt: 2}
///   T_step:  number                 steps: integer
///   out_dir: string                 mode: constants|verify|reference
inline RunConfig parse_config(const std::string& text) {
    std::vector<std::string> errs;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.problem = j.value("problem", std::string());
    if (cfg.problem == "fujita") {
        cfg.spec = make_fujita();
    } else if (cfg.problem == "allen_cahn") {
        Interval a(0.01);
        if (j.contains("a")) a = detail::parse_number_or_ratio(j["a"], "a", errs);
        cfg.spec = make_allen_cahn(a);
    } else if (!cfg.problem.empty()) {
        errs.push_back("problem: unknown name '" + cfg.problem + "'");
    }

    if (j.contains("nu")) cfg.spec.nu = detail::parse_number_or_ratio(j["nu"], "nu", errs);
    if (j.contains("g")) cfg.spec.g = detail::parse_poly(j["g"], "g", errs);
    if (j.contains("u0")) cfg.spec.u0 = detail::parse_poly(j["u0"], "u0", errs);

    if (!(cfg.spec.nu.lo() > 0)) errs.push_back("nu: must be positive");
    if (cfg.spec.g.size() > 4) errs.push_back("g: unsupported nonlinearity degree (max 3)");
    if (cfg.spec.u0.empty() && cfg.problem.empty()) errs.push_back("u0: required");

    if (j.contains("mesh")) {
        cfg.plan.space_elems = j["mesh"].value("space_elems", 0);
        cfg.plan.time_elems = j["mesh"].value("time_elems", 0);
    } else {
        errs.push_back("mesh: required ({space_elems, time_elems})");
    }
    if (cfg.plan.space_elems < 2) errs.push_back("mesh.space_elems: need >= 2 (no interior node otherwise)");
    if (cfg.plan.time_elems < 1) errs.push_back("mesh.time_elems: need >= 1");

    if (j.contains("reference_degrees")) {
        cfg.plan.px = j["reference_degrees"].value("px", 5);
        int pt = j["reference_degrees"].value("pt", 2);
        if (pt != 2) errs.push_back("reference_degrees.pt: only 2 is supported");
    }
    if (cfg.plan.px != 3 && cfg.plan.px != 5)
        errs.push_back("reference_degrees.px: must be 3 or 5");

    cfg.plan.T_step = j.value("T_step", 0.0);
    if (!(cfg.plan.T_step > 0)) errs.push_back("T_step: must be positive");
    cfg.plan.steps = j.value("steps", 1);
    if (cfg.plan.steps < 1) errs.push_back("steps: must be >= 1");

    cfg.out_dir = j.value("out_dir", std::string("out"));
    cfg.mode = j.value("mode", std::string("verify"));
    if (cfg.mode != "constants" && cfg.mode != "verify" && cfg.mode != "reference")
        errs.push_back("mode: must be one of constants|verify|reference");

    if (!errs.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    cfg.echo = j;
    return cfg;
}

// --- formatting -------------------------------------------------------------

namespace detail {

inline std::string format_sig4(double v, bool round_up) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    if (v == 0.0) return "0.000e+00";
    bool neg = v < 0;
    double av = std::fabs(v);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", av);
    double back = std::strtod(buf, nullptr);
    int digits = (buf[0] - '0') * 1000 + (buf[2] - '0') * 100 + (buf[3] - '0') * 10 +
                 (buf[4] - '0');
    int expo = std::atoi(std::strchr(buf, 'e') + 1);
    // printed >= v (round_up) or printed <= v (!round_up)
    bool need_larger_abs = neg ? (round_up ? false : back < av) : (round_up ? back < av : false);
    bool need_smaller_abs = neg ? (round_up ? back > av : false) : (round_up ? false : back > av);
    if (need_larger_abs) {
        if (++digits == 10000) {
            digits = 1000;
            ++expo;
        }
    } else if (need_smaller_abs) {
        if (--digits == 999) {
            digits = 9999;
            --expo;
        }
    }
    char out[48];
    std::snprintf(out, sizeof out, "%s%d.%03de%+03d", neg ? "-" : "", digits / 1000,
                  digits % 1000, expo);
    return out;
}

} // namespace detail

/// 4 significant digits, rounded toward +infinity (certificate direction).
inline std::string format_sig4_up(double v) { return detail::format_sig4(v, true); }
inline std::string format_sig4_down(double v) { return detail::format_sig4(v, false); }

// --- CSV emission -----------------------------------------------------------

/// Writes steps.csv, constants.csv, epsilon_log10.csv and config_echo.json
/// into dir.  Every value is the upper endpoint of its verified interval
/// except lambda_min_lo, which is the proof-relevant lower endpoint.
inline void emit_csv(const RunReport& rep, const RunConfig& cfg, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    {
        std::ofstream out(fs::path(dir) / "steps.csv");
        out << "i,Mcal1,Mcal0,Mcalt,C_Delta,M1,M0,MT,alpha,beta,delta,epsH1_next,epsL2_next,"
               "status\n";
        for (const auto& s : rep.steps) {
            out << s.i << ',' << format_sig4_up(s.Mcal1) << ',' << format_sig4_up(s.Mcal0)
                << ',' << format_sig4_up(s.Mcalt) << ',' << format_sig4_up(s.C_Delta) << ','
                << format_sig4_up(s.M1) << ',' << format_sig4_up(s.M0) << ','
                << format_sig4_up(s.MT) << ',' << format_sig4_up(s.alpha) << ','
                << format_sig4_up(s.beta) << ',' << format_sig4_up(s.delta) << ','
                << format_sig4_up(s.epsH1_next) << ',' << format_sig4_up(s.epsL2_next) << ','
                << to_string(s.status) << '\n';
        }
    }
    {
        const ProjectionConstants& pc = rep.constants;
        std::ofstream out(fs::path(dir) / "constants.csv");
        out << "name,value\n";
        auto row = [&](const char* name, double v, bool up = true) {
            out << name << ',' << (up ? format_sig4_up(v) : format_sig4_down(v)) << '\n';
        };
        row("h", pc.h);
        row("k", pc.k);
        row("nu", pc.nu.hi());
        row("C_Omega", pc.C_Omega.hi());
        row("C_J", pc.C_J.hi());
        row("C_inv", pc.C_inv.hi());
        row("C_p", pc.C_p.hi());
        row("lambda_min_lo", pc.lam_min.lo(), false);
        row("lambda_min_hi", pc.lam_min.hi());
        row("C1", pc.C1.hi());
        row("C0", pc.C0.hi());
        row("c0", pc.c0.hi());
        row("gamma1", pc.gamma1.hi());
        row("gamma0", pc.gamma0.hi());
        row("gammaT", pc.gammaT.hi());
        row("Ct1", pc.Ct1.hi());
        row("Ct0", pc.Ct0.hi());
        row("ct0", pc.ct0.hi());
        row("wall_seconds", rep.wall_seconds);
        if (rep.stabilized_at > 0) out << "stabilized_at," << rep.stabilized_at << '\n';
    }
    {
        std::ofstream out(fs::path(dir) / "epsilon_log10.csv");
        out << "i,log10_epsL2,log10_epsH1\n";
        for (const auto& s : rep.steps) {
            if (s.status != StepStatus::ok) continue;
            out << s.i << ',' << format_sig4_up(std::log10(s.epsL2_next)) << ','
                << format_sig4_up(std::log10(s.epsH1_next)) << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "config_echo.json");
        out << cfg.echo.dump(2) << '\n';
    }
}

} // namespace parasol
