#include "nharm/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nharm {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// shortest round-trip representation, for CSV
std::string shortest(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string json_array(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    out += "]";
    return out;
}

}  // namespace

std::string to_json(const RadialMetric& m) {
    switch (m.kind()) {
        case MetricKind::Constant:
            if (m.constant_value() == 1.0) return R"({"kind":"constant"})";
            return R"({"kind":"constant","value":)" + format_double(m.constant_value()) + "}";
        case MetricKind::Power:
            return R"({"kind":"power","nu":)" + format_double(m.power_exponent()) + "}";
        case MetricKind::Custom:
            throw std::invalid_argument("custom metrics are not serializable");
    }
    return {};
}

std::string to_json(const EnergyReport& r) {
    std::ostringstream os;
    os << "{\"total\":" << format_double(r.total)
       << ",\"lower_bound\":" << format_double(r.lower_bound) << ",\"bound_branch\":\""
       << (r.branch == BoundBranch::NonNegativeC ? "c>=0" : "c<=0") << "\""
       << ",\"modulus_term\":" << format_double(r.modulus_term)
       << ",\"boundary_term\":" << format_double(r.boundary_term)
       << ",\"quad_err\":" << format_double(r.quad_err) << "}";
    return os.str();
}

std::string to_json(const HomothetySweep& s) {
    std::ostringstream os;
    os << "{\"lambda\":" << json_array(s.lambdas) << ",\"energy\":" << json_array(s.energies)
       << ",\"baseline\":" << format_double(s.baseline) << ",\"verdict\":\""
       << (s.nonminimal ? "non-minimal" : "minimal-on-family") << "\"";
    os << ",\"witness_lambda\":";
    if (s.witness)
        os << format_double(*s.witness);
    else
        os << "null";
    os << "}";
    return os.str();
}

std::string solution_to_json(const RadialSolution& sol) {
    std::ostringstream os;
    os << "{\"n\":" << sol.n().value() << ",\"metric\":" << to_json(sol.metric())
       << ",\"c\":" << format_double(sol.c()) << ",\"R\":" << format_double(sol.R())
       << ",\"R_star\":" << format_double(sol.R_star()) << ",\"grid\":[";
    const auto t = sol.grid_t();
    const auto h = sol.grid_h();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << "[" << format_double(t[i]) << "," << format_double(h[i]) << "]";
    }
    os << "]}";
    return os.str();
}

std::string solution_csv(const RadialSolution& sol) {
    std::string out = "t,H,dHdt,eta\n";
    const auto t = sol.grid_t();
    const auto h = sol.grid_h();
    const auto eta = sol.grid_eta();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double hd = eta[i] * h[i] / t[i];
        out += shortest(t[i]) + "," + shortest(h[i]) + "," + shortest(hd) + "," +
               shortest(eta[i]) + "\n";
    }
    return out;
}

std::string profile_csv(const DiscreteProfile& p) {
    std::string out = "t,H\n";
    for (std::size_t i = 0; i < p.t.size(); ++i)
        out += shortest(p.t[i]) + "," + shortest(p.H[i]) + "\n";
    return out;
}

std::string sweep_csv(const HomothetySweep& s) {
    std::string out = "lambda,energy\n";
    for (std::size_t i = 0; i < s.lambdas.size(); ++i)
        out += shortest(s.lambdas[i]) + "," + shortest(s.energies[i]) + "\n";
    return out;
}

namespace {

RadialMetric metric_from(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return RadialMetric::constant(j.value("value", 1.0));
    if (kind == "power") return RadialMetric::power(j.at("nu").get<double>());
    throw std::invalid_argument("metric descriptor: unknown kind '" + kind + "'");
}

}  // namespace

RadialMetric metric_from_json(const std::string& text) {
    return metric_from(nlohmann::json::parse(text));
}

StoredProfile profile_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    StoredProfile p;
    p.n = j.at("n").get<int>();
    p.metric = metric_from(j.at("metric"));
    p.c = j.at("c").get<double>();
    p.R = j.at("R").get<double>();
    p.R_star = j.at("R_star").get<double>();
    for (const auto& pair : j.at("grid")) {
        p.t.push_back(pair.at(0).get<double>());
        p.H.push_back(pair.at(1).get<double>());
    }
    if (p.t.size() < 2) throw std::invalid_argument("profile artifact: grid too short");
    return p;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os << content;
        if (!os) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nharm
