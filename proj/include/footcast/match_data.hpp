#pragma once

#include <chrono>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace footcast {

using Date = std::chrono::sys_days;

Date parse_date(const std::string& iso);          // "YYYY-MM-DD"
std::string format_date(Date d);
inline long days_between(Date from, Date to) {
    return (to - from).count();
}

enum class Competition {
    world_cup,
    continental_final,
    qualifier_or_nations_league,
    friendly_or_other,
};

enum class Location { home_a, neutral, home_b };

std::string to_string(Competition c);
std::string to_string(Location l);
Competition competition_from_string(const std::string& s);

// One historical match with both teams' Elo points at match time.
struct MatchRecord {
    Date date;
    std::string team_a;
    std::string team_b;
    int goals_a = 0;
    int goals_b = 0;
    Competition competition = Competition::friendly_or_other;
    Location location = Location::neutral;
    double elo_a = 0.0;
    double elo_b = 0.0;
};

// A match reoriented so that one team is the subject.
struct Observation {
    Date date;
    double own_elo = 0.0;
    double opp_elo = 0.0;
    int loc = 0;          // +1 subject at home, -1 opponent at home, 0 neutral
    int goals_for = 0;
    int goals_against = 0;
    double weight = 1.0;
    Competition competition = Competition::friendly_or_other;
};

double date_weight(Date match_date, Date reference_date, double half_period_days);
double importance_weight(Competition c);

inline constexpr double kDefaultHalfPeriodDays = 1095.0;  // 3 * 365

// Maps free-text tournament names onto competition categories by
// case-insensitive substring match; first matching pattern wins.
class CompetitionMapper {
public:
    CompetitionMapper();  // built-in defaults
    static CompetitionMapper from_csv(std::istream& in);

    Competition classify(const std::string& tournament_name) const;

    // Tournament names that fell through to friendly_or_other.
    const std::set<std::string>& unmapped() const { return unmapped_; }

private:
    std::vector<std::pair<std::string, Competition>> patterns_;
    mutable std::set<std::string> unmapped_;
};

// Elo K weight used when replaying history to reconstruct missing ratings.
double replay_k_weight(Competition c);

struct LoadOptions {
    Date window_start;
    Date window_end;
    std::set<std::string> participants;  // keep matches involving at least one
    CompetitionMapper mapper;
    // Seed ratings for replaying Elo when the CSV lacks elo columns.
    std::map<std::string, double> seed_ratings;
    double seed_default = 1500.0;
};

// CSV layout: date,home_team,away_team,home_score,away_score,tournament,
// city,country,neutral[,home_elo,away_elo]. Rows are returned sorted by
// (date, home_team, away_team).
std::vector<MatchRecord> load_matches(std::istream& in, const LoadOptions& opts);
std::vector<MatchRecord> load_matches_file(const std::string& path, const LoadOptions& opts);

std::map<std::string, double> load_ratings_csv(std::istream& in);
std::map<std::string, double> load_ratings_file(const std::string& path);
std::vector<std::string> load_participants_file(const std::string& path);

// The subject team's matches with weights attached, oriented subject-first.
std::vector<Observation> observations_for(const std::string& team,
                                          const std::vector<MatchRecord>& records,
                                          Date reference_date,
                                          double half_period_days = kDefaultHalfPeriodDays);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace footcast
