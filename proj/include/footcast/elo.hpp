#pragma once

#include <map>
#include <string>

namespace footcast {

// K weight applied to matches simulated inside the tournament (World Cup weight).
inline constexpr double kWorldCupK = 60.0;

// Expected result 1/(10^(-D/400) + 1) with D = elo_own - elo_opp.
double expected_result(double elo_own, double elo_opp);

// Goal-difference multiplier: 1 for a draw or one-goal win, 1.5 for two goals,
// (11+N)/8 for N >= 3.
double goal_multiplier(int goal_diff);

// Post-match rating: elo_own + K * G * (W - W_e).
double elo_update(double elo_own, double elo_opp, int goals_own, int goals_opp,
                  double k_weight);

// As elo_update but with the match result W supplied explicitly (0, 0.5, 1);
// used for knockout matches rated as draws after a level score at full time.
double elo_update_with_result(double elo_own, double elo_opp, int goals_own,
                              int goals_opp, double w, double k_weight);

// Mutable rating table for one simulation worker, resettable to its snapshot.
class EloTable {
public:
    EloTable() = default;
    explicit EloTable(std::map<std::string, double> ratings);

    double get(const std::string& team) const;
    void set(const std::string& team, double elo);
    bool contains(const std::string& team) const;

    // Applies the update to both teams; rating points transfer exactly.
    void apply_match(const std::string& team_a, const std::string& team_b,
                     int goals_a, int goals_b, double k_weight);
    void apply_match_with_result(const std::string& team_a, const std::string& team_b,
                                 int goals_a, int goals_b, double w_a, double k_weight);

    // Restores the construction-time snapshot bit-identically.
    void reset();

    const std::map<std::string, double>& ratings() const { return ratings_; }

private:
    std::map<std::string, double> ratings_;
    std::map<std::string, double> snapshot_;
};

}  // namespace footcast
