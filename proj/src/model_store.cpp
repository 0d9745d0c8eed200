#include "footcast/model_store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "footcast/errors.hpp"

namespace footcast {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json zigp_to_json(const ZigpCoefficients& c) {
    ordered_json j;
    j["alpha0"] = c.alpha0;
    j["alpha1"] = c.alpha1;
    j["alpha2"] = c.alpha2;
    if (c.alpha3) j["alpha3"] = *c.alpha3;
    j["beta"] = c.beta;
    j["gamma"] = c.gamma;
    return j;
}

ZigpCoefficients zigp_from_json(const json& j) {
    ZigpCoefficients c;
    c.alpha0 = j.at("alpha0").get<double>();
    c.alpha1 = j.at("alpha1").get<double>();
    c.alpha2 = j.at("alpha2").get<double>();
    if (j.contains("alpha3")) c.alpha3 = j.at("alpha3").get<double>();
    c.beta = j.at("beta").get<double>();
    c.gamma = j.at("gamma").get<double>();
    return c;
}

ordered_json poisson_to_json(const PoissonCoefficients& c) {
    ordered_json j;
    j["alpha0"] = c.alpha0;
    j["alpha1"] = c.alpha1;
    j["alpha2"] = c.alpha2;
    j["deviance"] = c.deviance;
    return j;
}

PoissonCoefficients poisson_from_json(const json& j) {
    PoissonCoefficients c;
    c.alpha0 = j.at("alpha0").get<double>();
    c.alpha1 = j.at("alpha1").get<double>();
    c.alpha2 = j.at("alpha2").get<double>();
    c.deviance = j.value("deviance", 0.0);
    return c;
}

ordered_json report_to_json(const FitReport& r) {
    ordered_json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["final_loglik"] = r.final_loglik;
    j["gradient_norm"] = r.gradient_norm;
    j["chi_sq"] = r.chi_sq;
    j["p_value"] = r.p_value;
    j["n_obs"] = r.n_obs;
    return j;
}

FitReport report_from_json(const json& j) {
    FitReport r;
    r.converged = j.value("converged", false);
    r.iterations = j.value("iterations", 0);
    r.final_loglik = j.value("final_loglik", 0.0);
    r.gradient_norm = j.value("gradient_norm", 0.0);
    r.chi_sq = j.value("chi_sq", 0.0);
    r.p_value = j.value("p_value", 1.0);
    r.n_obs = j.value("n_obs", 0);
    return r;
}

}  // namespace

std::string models_to_json(const std::map<std::string, TeamModel>& models,
                           const ModelStoreMeta& meta) {
    ordered_json root;
    root["schema_version"] = meta.schema_version;
    root["reference_date"] = meta.reference_date;
    root["half_period_days"] = meta.half_period_days;
    root["config_hash"] = meta.config_hash;
    root["seed"] = meta.seed;
    ordered_json teams;
    for (const auto& [name, m] : models) {
        ordered_json t;
        t["scored"] = zigp_to_json(m.scored);
        t["conceded"] = zigp_to_json(m.conceded);
        t["conditional"] = zigp_to_json(m.conditional);
        t["ip_scored"] = poisson_to_json(m.ip_scored);
        t["ip_conceded"] = poisson_to_json(m.ip_conceded);
        t["bv_scored"] = poisson_to_json(m.bv.scored);
        t["bv_conceded"] = poisson_to_json(m.bv.conceded);
        t["bv_tau_log"] = m.bv.tau_log;
        t["scored_report"] = report_to_json(m.scored_report);
        t["conceded_report"] = report_to_json(m.conceded_report);
        t["conditional_report"] = report_to_json(m.conditional_report);
        t["n_obs"] = m.n_obs;
        t["total_weight"] = m.total_weight;
        t["pooled_fallback"] = m.pooled_fallback;
        teams[name] = std::move(t);
    }
    root["teams"] = std::move(teams);
    return root.dump(2) + "\n";
}

void save_models_file(const std::string& path, const std::map<std::string, TeamModel>& models,
                      const ModelStoreMeta& meta) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file '" + path + "'");
    out << models_to_json(models, meta);
}

std::map<std::string, TeamModel> models_from_json(const std::string& text,
                                                  ModelStoreMeta* meta) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON parse error: ") + e.what());
    }
    try {
        if (root.at("schema_version").get<int>() != 1)
            throw DataError("unsupported model schema version");
        if (meta) {
            meta->schema_version = root.at("schema_version").get<int>();
            meta->reference_date = root.value("reference_date", std::string{});
            meta->half_period_days = root.value("half_period_days", kDefaultHalfPeriodDays);
            meta->config_hash = root.value("config_hash", std::string{});
            meta->seed = root.value("seed", std::uint64_t{0});
        }
        std::map<std::string, TeamModel> models;
        for (const auto& [name, t] : root.at("teams").items()) {
            TeamModel m;
            m.team = name;
            m.scored = zigp_from_json(t.at("scored"));
            m.conceded = zigp_from_json(t.at("conceded"));
            m.conditional = zigp_from_json(t.at("conditional"));
            m.ip_scored = poisson_from_json(t.at("ip_scored"));
            m.ip_conceded = poisson_from_json(t.at("ip_conceded"));
            m.bv.scored = poisson_from_json(t.at("bv_scored"));
            m.bv.conceded = poisson_from_json(t.at("bv_conceded"));
            m.bv.tau_log = t.value("bv_tau_log", -30.0);
            m.scored_report = report_from_json(t.value("scored_report", json::object()));
            m.conceded_report = report_from_json(t.value("conceded_report", json::object()));
            m.conditional_report = report_from_json(t.value("conditional_report", json::object()));
            m.n_obs = t.value("n_obs", 0);
            m.total_weight = t.value("total_weight", 0.0);
            m.pooled_fallback = t.value("pooled_fallback", false);
            models[name] = std::move(m);
        }
        return models;
    } catch (const json::exception& e) {
        throw DataError(std::string("model JSON schema error: ") + e.what());
    }
}

std::map<std::string, TeamModel> load_models_file(const std::string& path, ModelStoreMeta* meta) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return models_from_json(buf.str(), meta);
}

}  // namespace footcast
