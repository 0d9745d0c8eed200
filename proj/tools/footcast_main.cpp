#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "footcast/elo.hpp"
#include "footcast/errors.hpp"
#include "footcast/match_data.hpp"
#include "footcast/match_model.hpp"
#include "footcast/model_store.hpp"
#include "footcast/regression.hpp"
#include "footcast/tournament.hpp"
#include "footcast/validation.hpp"
#include "footcast/zigp.hpp"

namespace fs = std::filesystem;
using namespace footcast;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitFitError = 2;
constexpr int kExitDataError = 3;

// Flat key=value run configuration; CLI flags override file keys.
struct RunConfig {
    std::map<std::string, std::string> values;

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                if (b == std::string::npos) return std::string{};
                const auto e = s.find_last_not_of(" \t\r");
                return s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!key.empty()) values[key] = value;
        }
    }

    void set_if(const std::string& key, const std::string& value) {
        if (!value.empty()) values[key] = value;
    }

    std::string get(const std::string& key, const std::string& fallback = {}) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }

    std::string require(const std::string& key) const {
        const auto it = values.find(key);
        if (it == values.end() || it->second.empty())
            throw ConfigError("missing required config key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : std::stod(it->second);
    }

    long get_long(const std::string& key, long fallback) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : std::stol(it->second);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        const auto it = values.find(key);
        if (it == values.end()) return fallback;
        return it->second == "true" || it->second == "1" || it->second == "yes";
    }

    // FNV-1a over the sorted key=value pairs; embedded in every emitted
    // artifact for reproducibility. Where results are written does not change
    // what they are, so the output location is excluded.
    std::string hash() const {
        std::uint64_t h = 14695981039346656037ull;
        for (const auto& [k, v] : values) {
            if (k == "output_dir") continue;
            for (const std::string* s : {&k, &v})
                for (unsigned char c : *s) {
                    h ^= c;
                    h *= 1099511628211ull;
                }
            h ^= '\n';
            h *= 1099511628211ull;
        }
        std::ostringstream out;
        out << std::hex << h;
        return out.str();
    }
};

void require_file(const std::string& path, const std::string& what) {
    if (!fs::exists(path)) throw ConfigError(what + " file not found: '" + path + "'");
}

fs::path ensure_output_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.get("output_dir", "out");
    fs::create_directories(dir);
    return dir;
}

struct LoadedData {
    std::vector<MatchRecord> records;
    std::vector<std::string> participants;
    std::map<std::string, double> ratings;
    Date reference_date;
    double half_period_days = kDefaultHalfPeriodDays;
};

LoadedData load_training_data(const RunConfig& cfg) {
    LoadedData data;
    const std::string matches_path = cfg.require("matches");
    const std::string participants_path = cfg.require("participants");
    require_file(matches_path, "matches");
    require_file(participants_path, "participants");

    data.reference_date = parse_date(cfg.get("reference_date", "2022-11-20"));
    data.half_period_days = cfg.get_double("half_period_days", kDefaultHalfPeriodDays);
    data.participants = load_participants_file(participants_path);
    if (data.participants.empty()) throw ConfigError("no teams in participants file");

    LoadOptions opts;
    opts.window_start = parse_date(cfg.get("window_start", "2016-01-01"));
    opts.window_end = data.reference_date;
    opts.participants.insert(data.participants.begin(), data.participants.end());
    const std::string mapping_path = cfg.get("mapping");
    if (!mapping_path.empty()) {
        require_file(mapping_path, "mapping");
        std::ifstream map_in(mapping_path);
        opts.mapper = CompetitionMapper::from_csv(map_in);
    }
    const std::string ratings_path = cfg.get("ratings");
    if (!ratings_path.empty()) {
        require_file(ratings_path, "ratings");
        data.ratings = load_ratings_file(ratings_path);
        opts.seed_ratings = data.ratings;
    }
    data.records = load_matches_file(matches_path, opts);
    return data;
}

FitOptions fit_options_from(const RunConfig& cfg) {
    FitOptions opts;
    opts.seed = std::uint64_t(cfg.get_long("seed", 0));
    opts.min_observations = int(cfg.get_long("min_observations", 10));
    opts.conceded_stronger_only = cfg.get_bool("conceded_stronger_only", false);
    return opts;
}

int cmd_fit(const RunConfig& cfg) {
    const LoadedData data = load_training_data(cfg);
    const fs::path out_dir = ensure_output_dir(cfg);

    std::cerr << "fitting " << data.participants.size() << " teams on " << data.records.size()
              << " matches\n";
    std::vector<std::string> warnings;
    const auto models = fit_all_teams(data.participants, data.records, data.reference_date,
                                      data.half_period_days, fit_options_from(cfg), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    ModelStoreMeta meta;
    meta.reference_date = format_date(data.reference_date);
    meta.half_period_days = data.half_period_days;
    meta.config_hash = cfg.hash();
    meta.seed = std::uint64_t(cfg.get_long("seed", 0));
    const fs::path model_path = out_dir / "models.json";
    save_models_file(model_path.string(), models, meta);

    std::ofstream report(out_dir / "fit_report.csv");
    report << "team,n_obs,total_weight,pooled_fallback,"
              "scored_chi_sq,scored_p_value,conceded_chi_sq,conceded_p_value,"
              "conditional_chi_sq,conditional_p_value\n";
    for (const auto& [team, m] : models)
        report << team << ',' << m.n_obs << ',' << m.total_weight << ','
               << (m.pooled_fallback ? 1 : 0) << ',' << m.scored_report.chi_sq << ','
               << m.scored_report.p_value << ',' << m.conceded_report.chi_sq << ','
               << m.conceded_report.p_value << ',' << m.conditional_report.chi_sq << ','
               << m.conditional_report.p_value << '\n';

    std::cerr << "wrote " << model_path.string() << "\n";
    return 0;
}

EloTable current_elo_table(const RunConfig& cfg) {
    const std::string ratings_path = cfg.require("ratings");
    require_file(ratings_path, "ratings");
    return EloTable(load_ratings_file(ratings_path));
}

int cmd_predict_match(const RunConfig& cfg, const std::string& team_a, const std::string& team_b,
                      const std::string& location) {
    const std::string model_path = cfg.require("models");
    require_file(model_path, "models");
    const auto models = load_models_file(model_path);
    const EloTable elo = current_elo_table(cfg);
    const ModelTag tag = model_tag_from_string(cfg.get("model", "nested_zigp"));

    const auto find_model = [&](const std::string& team) -> const TeamModel& {
        const auto it = models.find(team);
        if (it == models.end()) throw DataError("no fitted model for team '" + team + "'");
        return it->second;
    };

    MatchContext ctx;
    ctx.team_a = team_a;
    ctx.team_b = team_b;
    ctx.elo_a = elo.get(team_a);
    ctx.elo_b = elo.get(team_b);
    if (location == "neutral")
        ctx.location = Location::neutral;
    else if (location == "home_a")
        ctx.location = Location::home_a;
    else if (location == "home_b")
        ctx.location = Location::home_b;
    else
        throw ConfigError("location must be neutral, home_a or home_b");

    const ScoreDistribution dist =
        score_distribution(find_model(team_a), find_model(team_b), ctx, tag);

    const fs::path out_dir = ensure_output_dir(cfg);
    std::ofstream matrix(out_dir / "score_matrix.csv");
    matrix << "goals_a";
    for (int j = 0; j <= kGoalCap; ++j) matrix << ',' << j;
    matrix << '\n';
    matrix.precision(12);
    for (int i = 0; i <= kGoalCap; ++i) {
        matrix << i;
        for (int j = 0; j <= kGoalCap; ++j) matrix << ',' << dist.p(i, j);
        matrix << '\n';
    }

    ordered_json summary;
    summary["team_a"] = team_a;
    summary["team_b"] = team_b;
    summary["elo_a"] = ctx.elo_a;
    summary["elo_b"] = ctx.elo_b;
    summary["location"] = location;
    summary["model"] = to_string(tag);
    summary["p_win_a"] = dist.p_win_a();
    summary["p_draw"] = dist.p_draw();
    summary["p_win_b"] = dist.p_win_b();
    summary["config_hash"] = cfg.hash();
    std::ofstream(out_dir / "match_summary.json") << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const std::string model_path = cfg.require("models");
    const std::string tournament_path = cfg.require("tournament");
    require_file(model_path, "models");
    require_file(tournament_path, "tournament config");

    const auto models = load_models_file(model_path);
    const EloTable elo = current_elo_table(cfg);
    TournamentConfig tcfg = TournamentConfig::from_json_file(tournament_path);
    if (cfg.values.count("n_runs")) tcfg.n_runs = cfg.get_long("n_runs", tcfg.n_runs);
    if (cfg.values.count("seed")) tcfg.seed = std::uint64_t(cfg.get_long("seed", 0));
    const ModelTag tag = model_tag_from_string(cfg.get("model", "nested_zigp"));

    for (const auto& team : tcfg.all_teams())
        if (!models.count(team)) throw DataError("no fitted model for team '" + team + "'");

    if (!tcfg.host.empty())
        std::cerr << "host team " << tcfg.host << " plays its matches at home\n";
    std::cerr << "simulating " << tcfg.n_runs << " tournament runs (seed " << tcfg.seed
              << ", model " << to_string(tag) << ")\n";
    ModelMatchSampler sampler(models, tag);
    const TournamentResult result =
        run_tournament(tcfg, sampler, elo, int(cfg.get_long("threads", 0)));

    const fs::path out_dir = ensure_output_dir(cfg);
    std::ofstream groups(out_dir / "groups.csv");
    groups << "group,team,p_winner,p_runner_up,p_eliminated\n";
    groups.precision(10);
    ordered_json groups_json;
    for (const auto& [name, teams] : tcfg.groups) {
        ordered_json rows;
        for (const auto& team : teams) {
            const double pw = result.p_group(team, 0);
            const double pr = result.p_group(team, 1);
            const double pe = result.p_group(team, 2);
            groups << name << ',' << team << ',' << pw << ',' << pr << ',' << pe << '\n';
            rows[team] = {{"p_winner", pw}, {"p_runner_up", pr}, {"p_eliminated", pe}};
        }
        groups_json[name] = std::move(rows);
    }

    std::ofstream stages(out_dir / "stages.csv");
    stages << "team,p_champion,p_final,p_semifinal,p_quarterfinal,p_last16,p_prelim_exit\n";
    stages.precision(10);
    ordered_json stages_json;
    std::vector<std::string> teams = tcfg.all_teams();
    std::sort(teams.begin(), teams.end(), [&](const std::string& a, const std::string& b) {
        return result.p_category(a, 1) > result.p_category(b, 1);
    });
    for (const auto& team : teams) {
        stages << team;
        ordered_json row;
        for (int c = 1; c <= 5; ++c) {
            stages << ',' << result.p_reach(team, c);
            row["p_reach_" + std::to_string(c)] = result.p_reach(team, c);
        }
        stages << ',' << result.p_category(team, 6) << '\n';
        row["p_prelim_exit"] = result.p_category(team, 6);
        for (int c = 1; c <= 6; ++c)
            row["p_category_" + std::to_string(c)] = result.p_category(team, c);
        stages_json[team] = std::move(row);
    }

    ordered_json out;
    out["config_hash"] = cfg.hash();
    out["seed"] = tcfg.seed;
    out["n_runs"] = tcfg.n_runs;
    out["model"] = to_string(tag);
    out["groups"] = std::move(groups_json);
    out["stages"] = std::move(stages_json);
    std::ofstream(out_dir / "simulation.json") << out.dump(2) << "\n";
    std::cerr << "wrote " << (out_dir / "stages.csv").string() << "\n";
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    const std::string model_path = cfg.require("models");
    const std::string tournament_path = cfg.require("tournament");
    const std::string realized_path = cfg.require("realized");
    require_file(model_path, "models");
    require_file(tournament_path, "tournament config");
    require_file(realized_path, "realized results");

    const auto models = load_models_file(model_path);
    const EloTable elo = current_elo_table(cfg);
    TournamentConfig tcfg = TournamentConfig::from_json_file(tournament_path);
    if (cfg.values.count("n_runs")) tcfg.n_runs = cfg.get_long("n_runs", tcfg.n_runs);
    if (cfg.values.count("seed")) tcfg.seed = std::uint64_t(cfg.get_long("seed", 0));
    const RealizedResults realized = RealizedResults::from_csv_file(realized_path);

    const std::vector<ModelTag> tags{ModelTag::nested_zigp, ModelTag::bivariate_poisson,
                                     ModelTag::independent_poisson};
    std::cerr << "scoring " << tags.size() << " models over " << tcfg.n_runs << " runs each\n";
    const auto scores =
        compare_models(models, tcfg, elo, realized, tags, int(cfg.get_long("threads", 0)));

    const fs::path out_dir = ensure_output_dir(cfg);
    std::ofstream table(out_dir / "comparison.csv");
    table << "score";
    for (const auto& s : scores) table << ',' << to_string(s.tag);
    table << "\nbrier_score";
    table.precision(10);
    for (const auto& s : scores) table << ',' << s.brier;
    table << "\nrank_probability_score";
    for (const auto& s : scores) table << ',' << s.rps;
    table << "\n";

    ordered_json out;
    out["config_hash"] = cfg.hash();
    out["seed"] = tcfg.seed;
    out["n_runs"] = tcfg.n_runs;
    for (const auto& s : scores)
        out["scores"][to_string(s.tag)] = {{"brier", s.brier}, {"rps", s.rps}};
    std::ofstream(out_dir / "comparison.json") << out.dump(2) << "\n";
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Football tournament forecasting via nested zero-inflated "
                 "generalized Poisson regression"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "flat key=value config file");
        cmd->add_option("-s,--set", overrides,
                        "override a config key (e.g. --set seed=42)");
    };

    auto* fit = app.add_subcommand("fit", "fit per-team models from historical matches");
    add_common(fit);

    auto* predict = app.add_subcommand("predict-match", "score table for a single match");
    add_common(predict);
    std::string team_a, team_b, location = "neutral";
    predict->add_option("team_a", team_a, "first team")->required();
    predict->add_option("team_b", team_b, "second team")->required();
    predict->add_option("-l,--location", location, "neutral | home_a | home_b");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo tournament simulation");
    add_common(simulate);

    auto* validate = app.add_subcommand("validate", "score forecasts against realized results");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("--set expects key=value, got '" + kv + "'");
            cfg.values[kv.substr(0, eq)] = kv.substr(eq + 1);
        }

        if (fit->parsed()) return cmd_fit(cfg);
        if (predict->parsed()) return cmd_predict_match(cfg, team_a, team_b, location);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kExitFitError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return 0;
}
