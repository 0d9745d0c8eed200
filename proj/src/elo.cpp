#include "footcast/elo.hpp"

#include <cmath>
#include <cstdlib>

#include "footcast/errors.hpp"

namespace footcast {

double expected_result(double elo_own, double elo_opp) {
    const double d = elo_own - elo_opp;
    return 1.0 / (std::pow(10.0, -d / 400.0) + 1.0);
}

double goal_multiplier(int goal_diff) {
    if (goal_diff < 0) throw DomainError("goal_multiplier: negative goal difference");
    if (goal_diff <= 1) return 1.0;
    if (goal_diff == 2) return 1.5;
    return (11.0 + goal_diff) / 8.0;
}

double elo_update_with_result(double elo_own, double elo_opp, int goals_own,
                              int goals_opp, double w, double k_weight) {
    const double g = goal_multiplier(std::abs(goals_own - goals_opp));
    const double we = expected_result(elo_own, elo_opp);
    return elo_own + k_weight * g * (w - we);
}

double elo_update(double elo_own, double elo_opp, int goals_own, int goals_opp,
                  double k_weight) {
    const double w = goals_own > goals_opp ? 1.0 : (goals_own == goals_opp ? 0.5 : 0.0);
    return elo_update_with_result(elo_own, elo_opp, goals_own, goals_opp, w, k_weight);
}

EloTable::EloTable(std::map<std::string, double> ratings)
    : ratings_(ratings), snapshot_(std::move(ratings)) {}

double EloTable::get(const std::string& team) const {
    auto it = ratings_.find(team);
    if (it == ratings_.end()) throw DataError("EloTable: no rating for team '" + team + "'");
    return it->second;
}

void EloTable::set(const std::string& team, double elo) { ratings_[team] = elo; }

bool EloTable::contains(const std::string& team) const { return ratings_.count(team) > 0; }

void EloTable::apply_match(const std::string& team_a, const std::string& team_b,
                           int goals_a, int goals_b, double k_weight) {
    const double w_a = goals_a > goals_b ? 1.0 : (goals_a == goals_b ? 0.5 : 0.0);
    apply_match_with_result(team_a, team_b, goals_a, goals_b, w_a, k_weight);
}

void EloTable::apply_match_with_result(const std::string& team_a, const std::string& team_b,
                                       int goals_a, int goals_b, double w_a,
                                       double k_weight) {
    const double ea = get(team_a);
    const double eb = get(team_b);
    ratings_[team_a] = elo_update_with_result(ea, eb, goals_a, goals_b, w_a, k_weight);
    ratings_[team_b] = elo_update_with_result(eb, ea, goals_b, goals_a, 1.0 - w_a, k_weight);
}

void EloTable::reset() { ratings_ = snapshot_; }

}  // namespace footcast
