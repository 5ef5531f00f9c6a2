#include "cdstab/report_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace cdstab {

using nlohmann::json;

namespace {

json complex_list_to_json(const ComplexList& roots) {
    json arr = json::array();
    for (const Complex& r : roots) arr.push_back({{"re", r.real()}, {"im", r.imag()}});
    return arr;
}

ComplexList complex_list_from_json(const json& arr) {
    ComplexList out;
    for (const auto& e : arr) out.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
    return out;
}

json stability_to_json_obj(const StabilityReport& rep) {
    return json{{"n_space", rep.n_space},
                {"theta", rep.theta},
                {"roots", complex_list_to_json(rep.roots)},
                {"min_real_part", rep.min_real_part},
                {"amplification_moduli", rep.amplification_moduli},
                {"spectral_radius", rep.spectral_radius},
                {"degree_deficient", rep.degree_deficient},
                {"oracle_checked", rep.oracle_checked},
                {"oracle_consistent", rep.oracle_consistent},
                {"stable", rep.stable},
                {"detail", rep.detail}};
}

StabilityReport stability_from_json_obj(const json& j) {
    StabilityReport rep;
    rep.n_space = j.at("n_space").get<int>();
    rep.theta = j.at("theta").get<double>();
    rep.roots = complex_list_from_json(j.at("roots"));
    rep.min_real_part = j.at("min_real_part").get<double>();
    rep.amplification_moduli = j.at("amplification_moduli").get<std::vector<double>>();
    rep.spectral_radius = j.at("spectral_radius").get<double>();
    rep.degree_deficient = j.at("degree_deficient").get<bool>();
    rep.oracle_checked = j.at("oracle_checked").get<bool>();
    rep.oracle_consistent = j.at("oracle_consistent").get<bool>();
    rep.stable = j.at("stable").get<bool>();
    rep.detail = j.at("detail").get<std::string>();
    return rep;
}

json condition_to_json_obj(const ConditionReport& rep) {
    return json{{"theta", rep.theta},
                {"xinv_bound", rep.norm.xinv_bound},
                {"xinv_exact", rep.norm.xinv_exact},
                {"y_inf", rep.norm.y_inf},
                {"y_one", rep.norm.y_one},
                {"y2_bound", rep.norm.y2_bound},
                {"y2_exact", rep.norm.y2_exact},
                {"kappa_bound", rep.kappa_bound},
                {"kappa_exact", rep.kappa_exact}};
}

}  // namespace

std::string to_json(const StabilityReport& rep) { return stability_to_json_obj(rep).dump(2); }

std::string to_json(const ConditionReport& rep) { return condition_to_json_obj(rep).dump(2); }

std::string to_json(const ConstantCertificate& cert) {
    json j{{"certified", cert.certified},
           {"offending_k", cert.offending_k},
           {"family_roots", complex_list_to_json(cert.family_roots)},
           {"backward_euler", stability_to_json_obj(cert.backward_euler)},
           {"crank_nicolson", stability_to_json_obj(cert.crank_nicolson)},
           {"charpoly_checked", cert.charpoly_checked},
           {"charpoly_consistent", cert.charpoly_consistent},
           {"detail", cert.detail}};
    return j.dump(2);
}

StabilityReport stability_report_from_json(const std::string& text) {
    return stability_from_json_obj(json::parse(text));
}

ConditionReport condition_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    ConditionReport rep;
    rep.theta = j.at("theta").get<double>();
    rep.norm.xinv_bound = j.at("xinv_bound").get<double>();
    rep.norm.xinv_exact = j.at("xinv_exact").get<double>();
    rep.norm.y_inf = j.at("y_inf").get<double>();
    rep.norm.y_one = j.at("y_one").get<double>();
    rep.norm.y2_bound = j.at("y2_bound").get<double>();
    rep.norm.y2_exact = j.at("y2_exact").get<double>();
    rep.kappa_bound = j.at("kappa_bound").get<double>();
    rep.kappa_exact = j.at("kappa_exact").get<double>();
    return rep;
}

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

std::string format_mantissa(double x) {
    if (x == 0.0) return "0000.00e+00";
    const double ax = std::fabs(x);
    int e = static_cast<int>(std::floor(std::log10(ax))) - 3;
    double mantissa = x / std::pow(10.0, e);
    if (std::fabs(mantissa) >= 10000.0) {   // boundary rounding
        mantissa /= 10.0;
        ++e;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fe%+03d", mantissa, e);
    return buf;
}

}  // namespace cdstab
