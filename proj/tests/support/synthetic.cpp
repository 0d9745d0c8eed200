#include "support/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "footcast/match_model.hpp"
#include "footcast/zigp.hpp"

namespace footcast::testsupport {

std::map<std::string, double> wc2022_ratings() {
    return {
        {"Qatar", 1680},     {"Ecuador", 1833},      {"Senegal", 1687},
        {"Netherlands", 2040}, {"England", 1920},    {"Iran", 1760},
        {"United States", 1798}, {"Wales", 1790},    {"Argentina", 2141},
        {"Saudi Arabia", 1635}, {"Mexico", 1809},    {"Poland", 1814},
        {"France", 2005},    {"Australia", 1719},    {"Denmark", 1971},
        {"Tunisia", 1707},   {"Spain", 2045},        {"Costa Rica", 1743},
        {"Germany", 1963},   {"Japan", 1787},        {"Belgium", 2025},
        {"Canada", 1765},    {"Morocco", 1766},      {"Croatia", 1927},
        {"Brazil", 2169},    {"Serbia", 1898},       {"Switzerland", 1911},
        {"Cameroon", 1610},  {"Portugal", 1984},     {"Ghana", 1567},
        {"Uruguay", 1936},   {"South Korea", 1786},
    };
}

TournamentConfig wc2022_config(long n_runs, std::uint64_t seed) {
    TournamentConfig cfg;
    cfg.groups = {
        {"A", {"Qatar", "Ecuador", "Senegal", "Netherlands"}},
        {"B", {"England", "Iran", "United States", "Wales"}},
        {"C", {"Argentina", "Saudi Arabia", "Mexico", "Poland"}},
        {"D", {"France", "Australia", "Denmark", "Tunisia"}},
        {"E", {"Spain", "Costa Rica", "Germany", "Japan"}},
        {"F", {"Belgium", "Canada", "Morocco", "Croatia"}},
        {"G", {"Brazil", "Serbia", "Switzerland", "Cameroon"}},
        {"H", {"Portugal", "Ghana", "Uruguay", "South Korea"}},
    };
    cfg.bracket = {"A1", "B2", "C1", "D2", "E1", "F2", "G1", "H2",
                   "B1", "A2", "D1", "C2", "F1", "E2", "H1", "G2"};
    cfg.host = "Qatar";
    cfg.n_runs = n_runs;
    cfg.seed = seed;
    return cfg;
}

std::map<std::string, TeamModel> truth_models(const std::map<std::string, double>& ratings,
                                              double phi, double omega, double alpha3) {
    const double base = 0.35;
    const double slope = 0.0011;
    const double loc_effect = 0.25;
    const double beta = std::log(std::max(phi - 1.0, 1e-12));
    const double gamma = omega > 0.0 ? logit(omega) : -30.0;

    std::map<std::string, TeamModel> models;
    for (const auto& [team, elo] : ratings) {
        TeamModel m;
        m.team = team;
        m.n_obs = 100;

        m.scored.alpha0 = base + slope * elo;
        m.scored.alpha1 = -slope;
        m.scored.alpha2 = loc_effect;
        m.scored.beta = beta;
        m.scored.gamma = gamma;

        m.conceded.alpha0 = base - slope * elo;
        m.conceded.alpha1 = slope;
        m.conceded.alpha2 = loc_effect;
        m.conceded.beta = beta;
        m.conceded.gamma = gamma;

        m.conditional = m.scored;
        m.conditional.alpha3 = alpha3;
        // keep the conditional mean comparable at the typical opponent score
        m.conditional.alpha0 -= alpha3 * 1.3;

        m.ip_scored.alpha0 = m.scored.alpha0;
        m.ip_scored.alpha1 = m.scored.alpha1;
        m.ip_scored.alpha2 = m.scored.alpha2;
        m.ip_conceded.alpha0 = m.conceded.alpha0;
        m.ip_conceded.alpha1 = m.conceded.alpha1;
        m.ip_conceded.alpha2 = m.conceded.alpha2;

        m.bv.scored = m.ip_scored;
        m.bv.conceded = m.ip_conceded;
        m.bv.tau_log = std::log(0.1);

        models[team] = std::move(m);
    }
    return models;
}

std::vector<MatchRecord> synthetic_history(const std::map<std::string, double>& ratings,
                                           const std::map<std::string, TeamModel>& truth,
                                           Date start, Date end, int round_interval_days,
                                           std::uint64_t seed) {
    std::vector<std::string> teams;
    for (const auto& [team, elo] : ratings) teams.push_back(team);
    std::sort(teams.begin(), teams.end());

    RngStream rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const char* tournaments[] = {"Friendly", "FIFA World Cup qualification",
                                 "UEFA Nations League", "FIFA World Cup",
                                 "UEFA Euro"};

    std::vector<MatchRecord> records;
    int round = 0;
    for (Date day = start; day <= end; day += std::chrono::days(round_interval_days), ++round) {
        std::shuffle(teams.begin(), teams.end(), rng);
        for (size_t i = 0; i + 1 < teams.size(); i += 2) {
            MatchRecord r;
            r.date = day;
            r.team_a = teams[i];
            r.team_b = teams[i + 1];
            r.elo_a = ratings.at(r.team_a);
            r.elo_b = ratings.at(r.team_b);
            const double u = unif(rng);
            r.location = u < 0.4 ? Location::home_a : (u < 0.8 ? Location::home_b
                                                               : Location::neutral);
            const CompetitionMapper mapper;
            r.competition = mapper.classify(tournaments[round % 5]);

            MatchContext ctx{r.team_a, r.team_b, r.elo_a, r.elo_b, r.location};
            const auto [ga, gb] = sample_score(truth.at(r.team_a), truth.at(r.team_b), ctx,
                                               ModelTag::nested_zigp, rng);
            r.goals_a = ga;
            r.goals_b = gb;
            records.push_back(std::move(r));
        }
    }
    std::sort(records.begin(), records.end(), [](const MatchRecord& a, const MatchRecord& b) {
        return std::tie(a.date, a.team_a, a.team_b) < std::tie(b.date, b.team_a, b.team_b);
    });
    return records;
}

void write_history_csv(const std::string& path, const std::vector<MatchRecord>& records) {
    std::ofstream out(path);
    out << "date,home_team,away_team,home_score,away_score,tournament,city,country,"
           "neutral,home_elo,away_elo\n";
    for (const auto& r : records) {
        const char* tournament = "Friendly";
        switch (r.competition) {
            case Competition::world_cup: tournament = "FIFA World Cup"; break;
            case Competition::continental_final: tournament = "UEFA Euro"; break;
            case Competition::qualifier_or_nations_league:
                tournament = "FIFA World Cup qualification";
                break;
            case Competition::friendly_or_other: tournament = "Friendly"; break;
        }
        // orient so the CSV home side matches the location flag
        const bool swap = r.location == Location::home_b;
        const std::string& home = swap ? r.team_b : r.team_a;
        const std::string& away = swap ? r.team_a : r.team_b;
        out << format_date(r.date) << ',' << home << ',' << away << ','
            << (swap ? r.goals_b : r.goals_a) << ',' << (swap ? r.goals_a : r.goals_b) << ','
            << tournament << ",City,Country," << (r.location == Location::neutral ? "TRUE" : "FALSE")
            << ',' << (swap ? r.elo_b : r.elo_a) << ',' << (swap ? r.elo_a : r.elo_b) << '\n';
    }
}

void write_ratings_csv(const std::string& path, const std::map<std::string, double>& ratings) {
    std::ofstream out(path);
    out << "team,elo\n";
    for (const auto& [team, elo] : ratings) out << team << ',' << elo << '\n';
}

std::vector<Observation> zigp_observations(const ZigpCoefficients& truth, int n,
                                           std::uint64_t seed) {
    RngStream rng(seed);
    // covariate centered at zero so the intercept sits inside the design
    std::uniform_real_distribution<double> elo(-1000.0, 1000.0);
    std::uniform_int_distribution<int> loc(-1, 1);
    std::poisson_distribution<int> opp_goals(1.3);

    std::vector<Observation> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Observation o;
        o.own_elo = 1800.0;
        o.opp_elo = elo(rng);
        o.loc = loc(rng);
        o.goals_against = opp_goals(rng);
        o.weight = 1.0;
        const ZigpParams p = truth.params_at(o.opp_elo, o.loc, truth.alpha3 ? o.goals_against : 0);
        o.goals_for = zigp_sample(p, rng);
        out.push_back(o);
    }
    return out;
}

std::vector<Observation> bivpois_observations(const BivCoefficients& truth, int n,
                                              std::uint64_t seed) {
    RngStream rng(seed);
    std::uniform_real_distribution<double> elo(500.0, 2500.0);
    std::uniform_int_distribution<int> loc(-1, 1);

    std::vector<Observation> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Observation o;
        o.own_elo = 1800.0;
        o.opp_elo = elo(rng);
        o.loc = loc(rng);
        o.weight = 1.0;
        BivPoissonParams p{truth.scored.rate_at(o.opp_elo, o.loc),
                           truth.conceded.rate_at(o.opp_elo, o.loc), truth.tau()};
        const auto [gf, ga] = bivpois_sample(p, rng);
        o.goals_for = gf;
        o.goals_against = ga;
        out.push_back(o);
    }
    return out;
}

}  // namespace footcast::testsupport
