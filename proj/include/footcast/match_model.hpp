#pragma once

#include <string>
#include <utility>
#include <vector>

#include "footcast/match_data.hpp"
#include "footcast/regression.hpp"
#include "footcast/zigp.hpp"

namespace footcast {

enum class ModelTag { nested_zigp, independent_poisson, bivariate_poisson };

std::string to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& s);

struct MatchContext {
    std::string team_a;
    std::string team_b;
    double elo_a = 0.0;
    double elo_b = 0.0;
    Location location = Location::neutral;
};

// Joint probability table over (g_a, g_b), 0 <= g <= kGoalCap, oriented as
// (team_a, team_b) of the context regardless of which side is Elo-stronger.
class ScoreDistribution {
public:
    ScoreDistribution(std::vector<double> joint, ModelTag tag);

    double p(int g_a, int g_b) const { return joint_[g_a * (kGoalCap + 1) + g_b]; }
    double total_mass() const;
    ModelTag tag() const { return tag_; }

    double p_win_a() const;
    double p_draw() const;
    double p_win_b() const;

    // Marginal of team_a's (team_b's) goals.
    std::vector<double> marginal_a() const;
    std::vector<double> marginal_b() const;

    std::pair<int, int> sample(RngStream& rng) const;

private:
    std::vector<double> joint_;
    ModelTag tag_;
};

// Averages the attack-side and defense-side parameter triples.
ZigpParams combine_params(const ZigpParams& attack, const ZigpParams& defense);

// True when `a` takes the stronger-team role: higher Elo, ties broken by the
// lexicographically smaller team id.
bool is_stronger(const std::string& team_a, double elo_a, const std::string& team_b,
                 double elo_b);

// Location covariate for the subject team given the match context orientation.
int loc_sign(Location location, bool subject_is_team_a);

// Goal-count parameters of the Elo-stronger side: the stronger team's
// scored-goals regression averaged with the weaker team's conceded-goals
// regression. Precondition: model_a is the stronger side of ctx.
ZigpParams stronger_goal_params(const TeamModel& model_a, const TeamModel& model_b,
                                const MatchContext& ctx);

// Conditional parameters of the weaker side given the stronger side scored
// g_a goals; the conditional regression is used standalone.
ZigpParams weaker_goal_params(const TeamModel& model_b, const MatchContext& ctx, int g_a);

ScoreDistribution score_distribution(const TeamModel& model_a, const TeamModel& model_b,
                                     const MatchContext& ctx, ModelTag tag);

// Draws one score. mu_scale scales every goal-rate parameter, used for
// extra-time periods (30 of 90 minutes -> 1/3).
std::pair<int, int> sample_score(const TeamModel& model_a, const TeamModel& model_b,
                                 const MatchContext& ctx, ModelTag tag, RngStream& rng,
                                 double mu_scale = 1.0);

}  // namespace footcast
