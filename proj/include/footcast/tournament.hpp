#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "footcast/elo.hpp"
#include "footcast/match_model.hpp"

namespace footcast {

struct TournamentConfig {
    // Ordered group names (A..H) with 4 team ids each.
    std::vector<std::pair<std::string, std::vector<std::string>>> groups;
    // 16 round-of-16 slots in match order, as "<group><rank>" refs (e.g. "A1",
    // "B2"); consecutive slots are paired, winners pair up round by round.
    std::vector<std::string> bracket;
    std::string host;
    long n_runs = 10000;
    std::uint64_t seed = 0;

    void validate() const;
    static TournamentConfig from_json_file(const std::string& path);
    std::vector<std::string> all_teams() const;
};

// Result categories per team: 1 champion, 2 final loser, 3 semifinal losers,
// 4 quarterfinal losers, 5 round-of-16 losers, 6 group-stage exit.
enum : int {
    kCategoryChampion = 1,
    kCategoryFinal = 2,
    kCategorySemifinal = 3,
    kCategoryQuarterfinal = 4,
    kCategoryLast16 = 5,
    kCategoryPrelim = 6,
};

// Match-score source for the simulator; implementations must be thread-safe
// (all mutable state lives in the caller-owned rng).
class MatchSampler {
public:
    virtual ~MatchSampler() = default;
    // mu_scale scales goal rates; 1/3 simulates an extra-time period.
    virtual std::pair<int, int> sample(const MatchContext& ctx, RngStream& rng,
                                      double mu_scale) const = 0;
};

// Production sampler backed by fitted per-team models.
class ModelMatchSampler : public MatchSampler {
public:
    ModelMatchSampler(const std::map<std::string, TeamModel>& models, ModelTag tag);
    std::pair<int, int> sample(const MatchContext& ctx, RngStream& rng,
                              double mu_scale) const override;

private:
    const std::map<std::string, TeamModel>& models_;
    ModelTag tag_;
};

struct GroupStanding {
    struct Row {
        std::string team;
        int points = 0;
        int goal_diff = 0;
        int goals_for = 0;
        int rank = 0;
    };
    std::vector<Row> rows;  // sorted by rank, 1..4

    const Row& at_rank(int rank) const { return rows.at(rank - 1); }
};

// Simulates the 6 round-robin matches with in-simulation Elo updates and
// ranks by points, goal difference, goals scored, then random draw.
GroupStanding simulate_group(const std::vector<std::string>& group_teams,
                             const MatchSampler& sampler, const std::string& host,
                             EloTable& elo, RngStream& rng);

// Single-elimination rounds over 16 bracket slots including the third-place
// match; returns the result category per participating team.
std::map<std::string, int> simulate_knockout(const std::vector<std::string>& qualifiers,
                                             const MatchSampler& sampler,
                                             const std::string& host, EloTable& elo,
                                             RngStream& rng);

// One knockout match: regulation, extra time at one-third rates if level,
// then an Elo-weighted coin flip as the shootout proxy. Returns the winner
// and applies the Elo update (level-at-full-time rated as a draw).
std::string simulate_knockout_match(const std::string& team_a, const std::string& team_b,
                                    const MatchSampler& sampler, const std::string& host,
                                    EloTable& elo, RngStream& rng);

struct TournamentResult {
    long n_runs = 0;
    // counts[i-1] tallies result category i
    std::map<std::string, std::array<long, 6>> category_counts;
    // winner / runner-up / eliminated tallies within the team's group
    std::map<std::string, std::array<long, 3>> group_counts;

    double p_category(const std::string& team, int category) const;
    // P[team reaches at least the given category's stage]: cumulative from
    // champion down.
    double p_reach(const std::string& team, int category) const;
    double p_group(const std::string& team, int slot) const;  // 0 win, 1 second, 2 out

    void merge(const TournamentResult& other);
};

// Repeats {reset Elo; groups; knockout} n_runs times. Per-run rng streams are
// derived from the config seed by run index, so the aggregate is independent
// of the worker count. n_threads = 0 picks the hardware concurrency.
TournamentResult run_tournament(const TournamentConfig& config, const MatchSampler& sampler,
                                const EloTable& base_elo, int n_threads = 0);

struct SingleRunOutcome {
    std::map<std::string, int> category;    // result category 1..6 per team
    std::map<std::string, int> group_rank;  // 1..4 within the team's group
};

// Simulates a single tournament realization.
SingleRunOutcome simulate_one_tournament(const TournamentConfig& config,
                                         const MatchSampler& sampler, EloTable& elo,
                                         RngStream& rng);

std::uint64_t run_stream_seed(std::uint64_t master_seed, long run_index);

}  // namespace footcast
