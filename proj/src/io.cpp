#include "twocenter/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>
#include <ostream>

namespace twocenter {

void to_json(nlohmann::json& j, const Params& p) { j = {{"m1", p.m1}, {"m2", p.m2}, {"d", 1.0}, {"h", p.h}}; }

void from_json(const nlohmann::json& j, Params& p)
{
    p = Params::make(j.at("m1").get<double>(), j.at("m2").get<double>(), j.at("h").get<double>());
}

void to_json(nlohmann::json& j, const CartesianState& s) { j = {{"x", s.x}, {"y", s.y}, {"px", s.px}, {"py", s.py}}; }

void from_json(const nlohmann::json& j, CartesianState& s)
{
    s = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("px").get<double>(), j.at("py").get<double>()};
}

void to_json(nlohmann::json& j, const PhaseState& s)
{
    j = {{"lambda", s.lambda}, {"nu", s.nu}, {"p_lambda", s.p_lambda}, {"p_nu", s.p_nu}, {"tau", s.tau}, {"t", s.t}};
}

void from_json(const nlohmann::json& j, PhaseState& s)
{
    s.lambda = j.at("lambda").get<double>();
    s.nu = j.at("nu").get<double>();
    s.p_lambda = j.at("p_lambda").get<double>();
    s.p_nu = j.at("p_nu").get<double>();
    s.tau = j.value("tau", 0.0);
    s.t = j.value("t", 0.0);
}

void to_json(nlohmann::json& j, const RegionType& r) { j = {{"tag", to_string(r.tag)}, {"torus_count", r.torus_count}}; }

void to_json(nlohmann::json& j, const CriticalData& c)
{
    j = {{"h_star", c.h_star},     {"h_lambda", c.h_lambda}, {"h_nu", c.h_nu},   {"kappa_pp", c.kappa_pp},
         {"kappa_mp", c.kappa_mp}, {"kappa_mm", c.kappa_mm}, {"chi_p", c.chi_p}, {"chi_m", c.chi_m}};
}

void to_json(nlohmann::json& j, const TorusData& t)
{
    j = {{"g", t.g},
         {"h", t.h},
         {"region", t.region},
         {"T_lambda", t.T_lambda},
         {"T_nu", t.T_nu},
         {"W", t.W},
         {"lambda_branch", to_string(t.lambda_branch)},
         {"nu_branch", to_string(t.nu_branch)}};
}

void to_json(nlohmann::json& j, const ModulusData& m)
{
    auto v = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
    j = {{"k_plus_sq", v(m.k_plus_sq)}, {"k_minus_sq", v(m.k_minus_sq)}, {"k_c_sq", v(m.k_c_sq)},
         {"f_p0", v(m.f_p0)},           {"f_p1", v(m.f_p1)},             {"f_m0", v(m.f_m0)}};
}

namespace sturmian {

void to_json(nlohmann::json& j, const WindowPhases& w)
{
    auto list = [](const std::vector<sturmian::Window>& ws) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : ws) a.push_back({{"phase", x.phase}, {"symbol", std::string(1, x.symbol)}});
        return a;
    };
    j = {{"vertical", list(w.vertical)}, {"horizontal", list(w.horizontal)}};
}

}  // namespace sturmian

namespace io {

std::string number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t)
{
    os << "tau,t,lambda,nu,x,y\n";
    for (const auto& s : t.samples) {
        const CartesianState c = model::from_regularized(s);
        os << number(s.tau) << ',' << number(s.t) << ',' << number(s.lambda) << ',' << number(s.nu) << ','
           << number(c.x) << ',' << number(c.y) << '\n';
    }
}

void write_trajectory_svg(std::ostream& os, const Trajectory& t)
{
    double x0 = -1.0, x1 = 1.0, y0 = -0.2, y1 = 0.2;
    for (const auto& s : t.samples) {
        const CartesianState c = model::from_regularized(s);
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, -c.y);
        y1 = std::max(y1, -c.y);
    }
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    char buf[128];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.5f", v);
        return std::string(buf);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(x0 - pad) << ' ' << fmt(y0 - pad) << ' '
       << fmt(x1 - x0 + 2 * pad) << ' ' << fmt(y1 - y0 + 2 * pad) << "\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" d=\"";
    bool first = true;
    for (const auto& s : t.samples) {
        const CartesianState c = model::from_regularized(s);
        os << (first ? "M" : " L") << fmt(c.x) << ',' << fmt(-c.y);
        first = false;
    }
    os << "\"/>\n";
    for (double cx : {-1.0, 1.0}) os << "<circle cx=\"" << fmt(cx) << "\" cy=\"0\" r=\"0.02\" fill=\"black\"/>\n";
    for (const auto& e : t.events) {
        const CartesianState c = model::from_regularized(e.state);
        const char* colour = e.symbol == '1' ? "red" : e.symbol == '2' ? "blue" : "green";
        os << "<circle class=\"s" << e.symbol << "\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(-c.y)
           << "\" r=\"0.012\" fill=\"" << colour << "\"/>\n";
    }
    os << "</svg>\n";
}

void write_atlas_csv(std::ostream& os, const std::vector<periods::AtlasRow>& rows)
{
    os << "g,h,region,torus_count,T_lambda,T_nu,W\n";
    for (const auto& r : rows) {
        os << number(r.g) << ',' << number(r.h) << ',' << csv_field(to_string(r.region.tag)) << ','
           << r.region.torus_count << ',';
        if (r.torus) os << number(r.torus->T_lambda) << ',' << number(r.torus->T_nu) << ',' << number(r.torus->W);
        else os << ",,";
        os << '\n';
    }
}

nlohmann::json trajectory_json(const Trajectory& t)
{
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : t.events) events.push_back({{"tau", e.tau}, {"symbol", std::string(1, e.symbol)}, {"state", e.state}});
    return {{"samples", t.samples},
            {"events", events},
            {"closed", t.closed},
            {"closure_error", t.closure_error},
            {"word", orbits::syzygy_word(t).str()}};
}

nlohmann::json report_json(const orbits::VerifyReport& r)
{
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) {
        nlohmann::json checks = nlohmann::json::object();
        for (const auto& [name, ok] : c.checks) checks[name] = ok;
        nlohmann::json item = {{"region", to_string(c.region)},
                               {"torus", to_string(c.selector)},
                               {"W", c.w.str()},
                               {"g", c.g},
                               {"phase", {c.theta_nu, c.theta_lambda}},
                               {"expected_word", c.expected},
                               {"theorem_word", c.theorem},
                               {"observed_word", c.observed},
                               {"W_measured", c.W_measured},
                               {"closure_error", c.closure_error},
                               {"level_error", c.level_error},
                               {"cartesian_H_drift", c.cartesian_h_drift},
                               {"cartesian_G_drift", c.cartesian_g_drift},
                               {"checks", checks},
                               {"pass", c.pass}};
        if (!c.error.empty()) item["error"] = c.error;
        cases.push_back(item);
    }
    return {{"params", r.params}, {"seed", r.seed}, {"all_pass", r.all_pass}, {"cases", cases}};
}

}  // namespace io
}  // namespace twocenter
