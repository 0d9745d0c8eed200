#include "footcast/match_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "footcast/elo.hpp"
#include "footcast/errors.hpp"

namespace footcast {

Date parse_date(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char dash1 = 0, dash2 = 0;
    std::istringstream in(iso);
    in >> y >> dash1 >> m >> dash2 >> d;
    if (!in || dash1 != '-' || dash2 != '-')
        throw DataError("bad date '" + iso + "', expected YYYY-MM-DD");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw DataError("invalid calendar date '" + iso + "'");
    return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::string to_string(Competition c) {
    switch (c) {
        case Competition::world_cup: return "world_cup";
        case Competition::continental_final: return "continental_final";
        case Competition::qualifier_or_nations_league: return "qualifier_or_nations_league";
        case Competition::friendly_or_other: return "friendly_or_other";
    }
    return "friendly_or_other";
}

std::string to_string(Location l) {
    switch (l) {
        case Location::home_a: return "home_a";
        case Location::neutral: return "neutral";
        case Location::home_b: return "home_b";
    }
    return "neutral";
}

Competition competition_from_string(const std::string& s) {
    if (s == "world_cup") return Competition::world_cup;
    if (s == "continental_final") return Competition::continental_final;
    if (s == "qualifier_or_nations_league") return Competition::qualifier_or_nations_league;
    if (s == "friendly_or_other") return Competition::friendly_or_other;
    throw DataError("unknown competition category '" + s + "'");
}

double date_weight(Date match_date, Date reference_date, double half_period_days) {
    if (match_date > reference_date)
        throw DomainError("date_weight: match dated after the reference date");
    if (!(half_period_days > 0.0)) throw DomainError("date_weight: half period must be positive");
    const double d = double(days_between(match_date, reference_date));
    return std::pow(0.5, d / half_period_days);
}

double importance_weight(Competition c) {
    switch (c) {
        case Competition::world_cup: return 4.0;
        case Competition::continental_final: return 3.0;
        case Competition::qualifier_or_nations_league: return 2.5;
        case Competition::friendly_or_other: return 1.0;
    }
    return 1.0;
}

double replay_k_weight(Competition c) {
    switch (c) {
        case Competition::world_cup: return 60.0;
        case Competition::continental_final: return 50.0;
        case Competition::qualifier_or_nations_league: return 40.0;
        case Competition::friendly_or_other: return 20.0;
    }
    return 20.0;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

CompetitionMapper::CompetitionMapper() {
    const auto add = [this](const char* pat, Competition c) { patterns_.emplace_back(pat, c); };
    // qualifiers first so "FIFA World Cup qualification" is not caught by the
    // finals pattern
    add("qualification", Competition::qualifier_or_nations_league);
    add("qualifier", Competition::qualifier_or_nations_league);
    add("nations league", Competition::qualifier_or_nations_league);
    add("fifa world cup", Competition::world_cup);
    add("world cup", Competition::world_cup);
    add("uefa euro", Competition::continental_final);
    add("copa am", Competition::continental_final);  // Copa América
    add("african cup of nations", Competition::continental_final);
    add("africa cup of nations", Competition::continental_final);
    add("afc asian cup", Competition::continental_final);
    add("gold cup", Competition::continental_final);
    add("oceania nations cup", Competition::continental_final);
    add("confederations cup", Competition::continental_final);
}

CompetitionMapper CompetitionMapper::from_csv(std::istream& in) {
    CompetitionMapper mapper;
    mapper.patterns_.clear();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (line_no == 1 && lower(fields[0]) == "pattern") continue;
        if (fields.size() != 2)
            throw DataError("mapping file line " + std::to_string(line_no) +
                            ": expected pattern,category");
        mapper.patterns_.emplace_back(lower(trim(fields[0])),
                                      competition_from_string(trim(fields[1])));
    }
    return mapper;
}

Competition CompetitionMapper::classify(const std::string& tournament_name) const {
    const std::string name = lower(tournament_name);
    for (const auto& [pat, cat] : patterns_)
        if (name.find(pat) != std::string::npos) return cat;
    unmapped_.insert(tournament_name);
    return Competition::friendly_or_other;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

namespace {

bool parse_bool(const std::string& s) {
    const std::string v = lower(trim(s));
    return v == "true" || v == "1" || v == "yes";
}

int parse_int(const std::string& s, int line_no, const char* what) {
    try {
        size_t pos = 0;
        const int v = std::stoi(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
}

double parse_double(const std::string& s, int line_no, const char* what) {
    try {
        return std::stod(trim(s));
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
}

struct RawRow {
    MatchRecord rec;
    bool has_elo = false;
};

}  // namespace

std::vector<MatchRecord> load_matches(std::istream& in, const LoadOptions& opts) {
    std::vector<RawRow> rows;
    std::string line;
    int line_no = 0;
    bool any_missing_elo = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (line_no == 1 && lower(trim(fields[0])) == "date") continue;  // header
        if (fields.size() != 9 && fields.size() != 11)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected 9 or 11 fields, got " + std::to_string(fields.size()));
        RawRow row;
        MatchRecord& r = row.rec;
        r.date = parse_date(trim(fields[0]));
        r.team_a = trim(fields[1]);
        r.team_b = trim(fields[2]);
        r.goals_a = parse_int(fields[3], line_no, "home score");
        r.goals_b = parse_int(fields[4], line_no, "away score");
        if (r.goals_a < 0 || r.goals_b < 0)
            throw DataError("line " + std::to_string(line_no) + ": negative score");
        r.competition = opts.mapper.classify(trim(fields[5]));
        r.location = parse_bool(fields[8]) ? Location::neutral : Location::home_a;
        if (fields.size() == 11 && !trim(fields[9]).empty() && !trim(fields[10]).empty()) {
            r.elo_a = parse_double(fields[9], line_no, "home elo");
            r.elo_b = parse_double(fields[10], line_no, "away elo");
            row.has_elo = true;
        } else {
            any_missing_elo = true;
        }
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) {
        return std::tie(a.rec.date, a.rec.team_a, a.rec.team_b) <
               std::tie(b.rec.date, b.rec.team_a, b.rec.team_b);
    });

    // Reconstruct missing ratings by replaying the update rule in
    // chronological order from the seed ratings.
    if (any_missing_elo) {
        std::map<std::string, double> running = opts.seed_ratings;
        const auto rating_of = [&](const std::string& t) {
            auto it = running.find(t);
            return it == running.end() ? opts.seed_default : it->second;
        };
        for (auto& row : rows) {
            MatchRecord& r = row.rec;
            const double ea = rating_of(r.team_a);
            const double eb = rating_of(r.team_b);
            if (!row.has_elo) {
                r.elo_a = ea;
                r.elo_b = eb;
            }
            const double k = replay_k_weight(r.competition);
            running[r.team_a] = elo_update(ea, eb, r.goals_a, r.goals_b, k);
            running[r.team_b] = elo_update(eb, ea, r.goals_b, r.goals_a, k);
        }
    }

    std::vector<MatchRecord> out;
    for (auto& row : rows) {
        const MatchRecord& r = row.rec;
        if (r.date < opts.window_start || r.date > opts.window_end) continue;
        if (!opts.participants.empty() && !opts.participants.count(r.team_a) &&
            !opts.participants.count(r.team_b))
            continue;
        if (!(std::isfinite(r.elo_a) && std::isfinite(r.elo_b) && r.elo_a > 0 && r.elo_b > 0))
            throw DataError("match " + format_date(r.date) + " " + r.team_a + " vs " + r.team_b +
                            ": non-positive Elo");
        out.push_back(r);
    }
    return out;
}

std::vector<MatchRecord> load_matches_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open matches file '" + path + "'");
    return load_matches(in, opts);
}

std::map<std::string, double> load_ratings_csv(std::istream& in) {
    std::map<std::string, double> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (line_no == 1 && lower(trim(fields[0])) == "team") continue;
        if (fields.size() != 2)
            throw DataError("ratings line " + std::to_string(line_no) + ": expected team,elo");
        out[trim(fields[0])] = parse_double(fields[1], line_no, "elo");
    }
    return out;
}

std::map<std::string, double> load_ratings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ratings file '" + path + "'");
    return load_ratings_csv(in);
}

std::vector<std::string> load_participants_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open participants file '" + path + "'");
    std::vector<std::string> teams;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty() && line[0] != '#') teams.push_back(line);
    }
    return teams;
}

std::vector<Observation> observations_for(const std::string& team,
                                          const std::vector<MatchRecord>& records,
                                          Date reference_date, double half_period_days) {
    std::vector<Observation> out;
    for (const auto& r : records) {
        const bool is_a = r.team_a == team;
        const bool is_b = r.team_b == team;
        if (!is_a && !is_b) continue;
        Observation obs;
        obs.date = r.date;
        obs.competition = r.competition;
        obs.weight =
            date_weight(r.date, reference_date, half_period_days) * importance_weight(r.competition);
        if (is_a) {
            obs.own_elo = r.elo_a;
            obs.opp_elo = r.elo_b;
            obs.goals_for = r.goals_a;
            obs.goals_against = r.goals_b;
            obs.loc = r.location == Location::home_a ? 1 : (r.location == Location::home_b ? -1 : 0);
        } else {
            obs.own_elo = r.elo_b;
            obs.opp_elo = r.elo_a;
            obs.goals_for = r.goals_b;
            obs.goals_against = r.goals_a;
            obs.loc = r.location == Location::home_b ? 1 : (r.location == Location::home_a ? -1 : 0);
        }
        out.push_back(obs);
    }
    if (out.empty()) throw DataError("no matches for team '" + team + "' in the window");
    return out;
}

}  // namespace footcast
