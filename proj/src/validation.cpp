#include "footcast/validation.hpp"

#include <cmath>
#include <fstream>

#include "footcast/errors.hpp"
#include "footcast/match_data.hpp"

namespace footcast {

StageForecast forecast_from_result(const TournamentResult& result) {
    StageForecast forecast;
    for (const auto& [team, counts] : result.category_counts) {
        auto& p = forecast[team];
        for (int i = 0; i < 6; ++i) p[i] = double(counts[i]) / double(result.n_runs);
    }
    return forecast;
}

void RealizedResults::validate() const {
    const int n = int(category.size());
    if (n < 16) throw DataError("realized results: need at least 16 teams");
    std::array<int, 6> counts{};
    for (const auto& [team, cat] : category) {
        if (cat < 1 || cat > 6)
            throw DataError("realized results: category out of range for '" + team + "'");
        counts[cat - 1] += 1;
    }
    const std::array<int, 6> expected{1, 1, 2, 4, 8, n - 16};
    for (int i = 0; i < 6; ++i)
        if (counts[i] != expected[i])
            throw DataError("realized results: " + std::to_string(counts[i]) +
                            " teams in category " + std::to_string(i + 1) + ", expected " +
                            std::to_string(expected[i]));
}

RealizedResults RealizedResults::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open realized results '" + path + "'");
    RealizedResults out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (line_no == 1 && fields[0] == "team") continue;
        if (fields.size() != 2)
            throw DataError("realized results line " + std::to_string(line_no) +
                            ": expected team,category");
        out.category[fields[0]] = std::stoi(fields[1]);
    }
    out.validate();
    return out;
}

namespace {

const std::array<double, 6>& forecast_row(const StageForecast& forecast,
                                          const std::string& team) {
    const auto it = forecast.find(team);
    if (it == forecast.end()) throw DataError("no forecast for team '" + team + "'");
    double sum = 0.0;
    for (double p : it->second) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw DataError("forecast for '" + team + "' sums to " + std::to_string(sum));
    return it->second;
}

}  // namespace

double brier_score(const StageForecast& forecast, const RealizedResults& realized) {
    double total = 0.0;
    for (const auto& [team, cat] : realized.category) {
        const auto& p = forecast_row(forecast, team);
        for (int j = 1; j <= 6; ++j) {
            const double d = p[j - 1] - (cat == j ? 1.0 : 0.0);
            total += d * d;
        }
    }
    return total;
}

double rank_probability_score(const StageForecast& forecast, const RealizedResults& realized) {
    double total = 0.0;
    for (const auto& [team, cat] : realized.category) {
        const auto& p = forecast_row(forecast, team);
        double cum = 0.0;
        double err = 0.0;
        for (int i = 1; i <= 5; ++i) {
            cum += p[i - 1] - (cat == i ? 1.0 : 0.0);
            err += cum * cum;
        }
        total += err / 5.0;
    }
    return total;
}

std::vector<ModelScores> compare_models(const std::map<std::string, TeamModel>& models,
                                        const TournamentConfig& config, const EloTable& base_elo,
                                        const RealizedResults& realized,
                                        const std::vector<ModelTag>& tags, int n_threads) {
    std::vector<ModelScores> out;
    for (const ModelTag tag : tags) {
        ModelMatchSampler sampler(models, tag);
        const TournamentResult result = run_tournament(config, sampler, base_elo, n_threads);
        const StageForecast forecast = forecast_from_result(result);
        ModelScores scores;
        scores.tag = tag;
        scores.brier = brier_score(forecast, realized);
        scores.rps = rank_probability_score(forecast, realized);
        out.push_back(scores);
    }
    return out;
}

}  // namespace footcast
