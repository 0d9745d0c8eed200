#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "footcast/elo.hpp"
#include "footcast/errors.hpp"
#include "footcast/match_data.hpp"
#include "footcast/match_model.hpp"
#include "footcast/model_store.hpp"
#include "footcast/regression.hpp"
#include "footcast/tournament.hpp"
#include "footcast/validation.hpp"
#include "footcast/zigp.hpp"

namespace py = pybind11;
using namespace footcast;

namespace {

Location location_from_string(const std::string& s) {
    if (s == "neutral") return Location::neutral;
    if (s == "home_a") return Location::home_a;
    if (s == "home_b") return Location::home_b;
    throw ConfigError("location must be neutral, home_a or home_b");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Football score forecasting: nested ZIGP regression, Elo ratings, "
              "tournament Monte Carlo";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<FitError>(m, "FitError");
    py::register_exception<DomainError>(m, "DomainError");

    py::class_<ZigpParams>(m, "ZigpParams")
        .def(py::init<double, double, double>(), py::arg("mu"), py::arg("phi") = 1.0,
             py::arg("omega") = 0.0)
        .def_readwrite("mu", &ZigpParams::mu)
        .def_readwrite("phi", &ZigpParams::phi)
        .def_readwrite("omega", &ZigpParams::omega);

    py::class_<BivPoissonParams>(m, "BivPoissonParams")
        .def(py::init<double, double, double>(), py::arg("lambda1"), py::arg("lambda2"),
             py::arg("lambda0"))
        .def_readwrite("lambda1", &BivPoissonParams::lambda1)
        .def_readwrite("lambda2", &BivPoissonParams::lambda2)
        .def_readwrite("lambda0", &BivPoissonParams::lambda0);

    m.def("zigp_pmf", &zigp_pmf, py::arg("k"), py::arg("params"));
    m.def("zigp_mean_var", &zigp_mean_var, py::arg("params"));
    m.def("bivpois_pmf", &bivpois_pmf, py::arg("i"), py::arg("j"), py::arg("params"));

    m.def("expected_result", &expected_result, py::arg("elo_own"), py::arg("elo_opp"));
    m.def("goal_multiplier", &goal_multiplier, py::arg("goal_diff"));
    m.def("elo_update", &elo_update, py::arg("elo_own"), py::arg("elo_opp"),
          py::arg("goals_own"), py::arg("goals_opp"), py::arg("k_weight"));

    m.def(
        "date_weight",
        [](const std::string& match_date, const std::string& reference_date,
           double half_period_days) {
            return date_weight(parse_date(match_date), parse_date(reference_date),
                               half_period_days);
        },
        py::arg("match_date"), py::arg("reference_date"),
        py::arg("half_period_days") = kDefaultHalfPeriodDays);
    m.def(
        "importance_weight",
        [](const std::string& competition) {
            static const CompetitionMapper mapper;
            return importance_weight(mapper.classify(competition));
        },
        py::arg("competition"),
        "Importance weight for a tournament name (free text, e.g. 'FIFA World Cup').");

    py::class_<TeamModel>(m, "TeamModel")
        .def_readonly("team", &TeamModel::team)
        .def_readonly("n_obs", &TeamModel::n_obs)
        .def_readonly("total_weight", &TeamModel::total_weight)
        .def_readonly("pooled_fallback", &TeamModel::pooled_fallback);

    m.def(
        "load_models",
        [](const std::string& path) { return load_models_file(path, nullptr); },
        py::arg("path"), "Load fitted team models from a model JSON file.");

    m.def(
        "predict_match",
        [](const std::map<std::string, TeamModel>& models, const std::string& team_a,
           const std::string& team_b, double elo_a, double elo_b, const std::string& location,
           const std::string& model) {
            MatchContext ctx{team_a, team_b, elo_a, elo_b, location_from_string(location)};
            const auto& ma = models.at(team_a);
            const auto& mb = models.at(team_b);
            const ScoreDistribution dist =
                score_distribution(ma, mb, ctx, model_tag_from_string(model));
            std::vector<std::vector<double>> joint(kGoalCap + 1,
                                                   std::vector<double>(kGoalCap + 1));
            for (int i = 0; i <= kGoalCap; ++i)
                for (int j = 0; j <= kGoalCap; ++j) joint[i][j] = dist.p(i, j);
            py::dict out;
            out["joint"] = joint;
            out["p_win_a"] = dist.p_win_a();
            out["p_draw"] = dist.p_draw();
            out["p_win_b"] = dist.p_win_b();
            return out;
        },
        py::arg("models"), py::arg("team_a"), py::arg("team_b"), py::arg("elo_a"),
        py::arg("elo_b"), py::arg("location") = "neutral", py::arg("model") = "nested_zigp",
        "Joint score probability table and win/draw/loss summary for one match.");

    m.def(
        "simulate_tournament",
        [](const std::map<std::string, TeamModel>& models, const std::string& config_path,
           const std::map<std::string, double>& ratings, std::optional<long> n_runs,
           std::optional<std::uint64_t> seed, const std::string& model, int threads) {
            TournamentConfig cfg = TournamentConfig::from_json_file(config_path);
            if (n_runs) cfg.n_runs = *n_runs;
            if (seed) cfg.seed = *seed;
            ModelMatchSampler sampler(models, model_tag_from_string(model));
            const TournamentResult result =
                run_tournament(cfg, sampler, EloTable(ratings), threads);
            py::dict out;
            for (const auto& [team, counts] : result.category_counts) {
                py::dict row;
                for (int c = 1; c <= 6; ++c)
                    row[py::str("p_category_" + std::to_string(c))] =
                        result.p_category(team, c);
                for (int c = 1; c <= 5; ++c)
                    row[py::str("p_reach_" + std::to_string(c))] = result.p_reach(team, c);
                row["p_group_winner"] = result.p_group(team, 0);
                row["p_group_runner_up"] = result.p_group(team, 1);
                out[py::str(team)] = row;
            }
            return out;
        },
        py::arg("models"), py::arg("config_path"), py::arg("ratings"),
        py::arg("n_runs") = std::nullopt, py::arg("seed") = std::nullopt,
        py::arg("model") = "nested_zigp", py::arg("threads") = 0,
        "Monte Carlo stage probabilities for a tournament config.");

    m.def(
        "fit_teams_csv",
        [](const std::string& matches_path, const std::vector<std::string>& participants,
           const std::string& reference_date, double half_period_days,
           const std::map<std::string, double>& seed_ratings, std::uint64_t seed) {
            LoadOptions opts;
            opts.window_start = parse_date("1900-01-01");
            opts.window_end = parse_date(reference_date);
            opts.participants.insert(participants.begin(), participants.end());
            opts.seed_ratings = seed_ratings;
            const auto records = load_matches_file(matches_path, opts);
            FitOptions fit_opts;
            fit_opts.seed = seed;
            return fit_all_teams(participants, records, parse_date(reference_date),
                                 half_period_days, fit_opts);
        },
        py::arg("matches_path"), py::arg("participants"), py::arg("reference_date"),
        py::arg("half_period_days") = kDefaultHalfPeriodDays,
        py::arg("seed_ratings") = std::map<std::string, double>{}, py::arg("seed") = 0,
        "Fit all per-team models from a matches CSV.");

    m.attr("GOAL_CAP") = kGoalCap;
}
