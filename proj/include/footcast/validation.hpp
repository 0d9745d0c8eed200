#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "footcast/match_model.hpp"
#include "footcast/tournament.hpp"

namespace footcast {

// Per-team probabilities over the six result categories.
using StageForecast = std::map<std::string, std::array<double, 6>>;

StageForecast forecast_from_result(const TournamentResult& result);

struct RealizedResults {
    std::map<std::string, int> category;  // team -> 1..6

    // Category counts must match a completed bracket: one champion, one
    // finalist, two semifinal losers, four quarterfinal losers, eight
    // round-of-16 losers, the rest group-stage exits.
    void validate() const;
    static RealizedResults from_csv_file(const std::string& path);
};

// Sum over teams of the squared distance between the forecast vector and the
// one-hot realized category.
double brier_score(const StageForecast& forecast, const RealizedResults& realized);

// Sum over teams of (1/5) * sum_i (cumulative forecast - cumulative outcome)^2.
double rank_probability_score(const StageForecast& forecast, const RealizedResults& realized);

struct ModelScores {
    ModelTag tag;
    double brier = 0.0;
    double rps = 0.0;
};

// Simulates the tournament under each model tag with a shared seed schedule
// and scores the forecasts against the realized outcome.
std::vector<ModelScores> compare_models(const std::map<std::string, TeamModel>& models,
                                        const TournamentConfig& config, const EloTable& base_elo,
                                        const RealizedResults& realized,
                                        const std::vector<ModelTag>& tags, int n_threads = 0);

}  // namespace footcast
