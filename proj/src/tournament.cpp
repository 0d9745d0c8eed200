#include "footcast/tournament.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "footcast/errors.hpp"

namespace footcast {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Location match_location(const std::string& team_a, const std::string& team_b,
                        const std::string& host) {
    if (team_a == host) return Location::home_a;
    if (team_b == host) return Location::home_b;
    return Location::neutral;
}

}  // namespace

std::uint64_t run_stream_seed(std::uint64_t master_seed, long run_index) {
    return splitmix(master_seed ^ splitmix(std::uint64_t(run_index) + 1));
}

void TournamentConfig::validate() const {
    if (groups.empty()) throw ConfigError("tournament config: no groups");
    std::set<std::string> seen;
    for (const auto& [name, teams] : groups) {
        if (teams.size() != 4)
            throw ConfigError("group " + name + ": expected 4 teams, got " +
                              std::to_string(teams.size()));
        for (const auto& t : teams)
            if (!seen.insert(t).second)
                throw ConfigError("team '" + t + "' appears in more than one group");
    }
    if (bracket.size() != 2 * groups.size())
        throw ConfigError("bracket: expected " + std::to_string(2 * groups.size()) +
                          " slots, got " + std::to_string(bracket.size()));
    std::set<std::string> slots;
    for (const auto& slot : bracket) {
        if (slot.size() < 2) throw ConfigError("bad bracket slot '" + slot + "'");
        const std::string group_name = slot.substr(0, slot.size() - 1);
        const char rank = slot.back();
        if (rank != '1' && rank != '2')
            throw ConfigError("bracket slot '" + slot + "': rank must be 1 or 2");
        const bool known = std::any_of(groups.begin(), groups.end(),
                                       [&](const auto& g) { return g.first == group_name; });
        if (!known) throw ConfigError("bracket slot '" + slot + "': unknown group");
        if (!slots.insert(slot).second)
            throw ConfigError("bracket slot '" + slot + "' appears twice");
    }
    if (n_runs < 1) throw ConfigError("n_runs must be at least 1");
}

TournamentConfig TournamentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tournament config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("tournament config '" + path + "': " + e.what());
    }
    TournamentConfig cfg;
    try {
        for (const auto& [name, teams] : j.at("groups").items())
            cfg.groups.emplace_back(name, teams.get<std::vector<std::string>>());
        std::sort(cfg.groups.begin(), cfg.groups.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        cfg.bracket = j.at("bracket").get<std::vector<std::string>>();
        cfg.host = j.value("host", std::string{});
        cfg.n_runs = j.value("n_runs", 10000L);
        cfg.seed = j.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("tournament config '" + path + "': " + e.what());
    }
    cfg.validate();
    return cfg;
}

std::vector<std::string> TournamentConfig::all_teams() const {
    std::vector<std::string> out;
    for (const auto& [name, teams] : groups) out.insert(out.end(), teams.begin(), teams.end());
    return out;
}

ModelMatchSampler::ModelMatchSampler(const std::map<std::string, TeamModel>& models,
                                     ModelTag tag)
    : models_(models), tag_(tag) {}

std::pair<int, int> ModelMatchSampler::sample(const MatchContext& ctx, RngStream& rng,
                                              double mu_scale) const {
    const auto it_a = models_.find(ctx.team_a);
    const auto it_b = models_.find(ctx.team_b);
    if (it_a == models_.end()) throw DataError("no fitted model for '" + ctx.team_a + "'");
    if (it_b == models_.end()) throw DataError("no fitted model for '" + ctx.team_b + "'");
    return sample_score(it_a->second, it_b->second, ctx, tag_, rng, mu_scale);
}

GroupStanding simulate_group(const std::vector<std::string>& group_teams,
                             const MatchSampler& sampler, const std::string& host,
                             EloTable& elo, RngStream& rng) {
    struct Tally {
        int points = 0, gf = 0, ga = 0;
    };
    std::map<std::string, Tally> tally;
    for (const auto& t : group_teams) tally[t];

    static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& pair : kPairs) {
        const std::string& a = group_teams[pair[0]];
        const std::string& b = group_teams[pair[1]];
        MatchContext ctx{a, b, elo.get(a), elo.get(b), match_location(a, b, host)};
        const auto [ga, gb] = sampler.sample(ctx, rng, 1.0);
        tally[a].gf += ga;
        tally[a].ga += gb;
        tally[b].gf += gb;
        tally[b].ga += ga;
        if (ga > gb)
            tally[a].points += 3;
        else if (gb > ga)
            tally[b].points += 3;
        else {
            tally[a].points += 1;
            tally[b].points += 1;
        }
        elo.apply_match(a, b, ga, gb, kWorldCupK);
    }

    // random draw resolves ties left after points, goal difference, goals
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    struct Entry {
        std::string team;
        Tally t;
        double lot;
    };
    std::vector<Entry> entries;
    for (const auto& team : group_teams) entries.push_back({team, tally[team], unif(rng)});
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        const int gdx = x.t.gf - x.t.ga, gdy = y.t.gf - y.t.ga;
        if (x.t.points != y.t.points) return x.t.points > y.t.points;
        if (gdx != gdy) return gdx > gdy;
        if (x.t.gf != y.t.gf) return x.t.gf > y.t.gf;
        return x.lot > y.lot;
    });

    GroupStanding standing;
    int rank = 1;
    for (const auto& e : entries)
        standing.rows.push_back({e.team, e.t.points, e.t.gf - e.t.ga, e.t.gf, rank++});
    return standing;
}

std::string simulate_knockout_match(const std::string& team_a, const std::string& team_b,
                                    const MatchSampler& sampler, const std::string& host,
                                    EloTable& elo, RngStream& rng) {
    MatchContext ctx{team_a, team_b, elo.get(team_a), elo.get(team_b),
                     match_location(team_a, team_b, host)};
    auto [ga, gb] = sampler.sample(ctx, rng, 1.0);
    if (ga != gb) {
        elo.apply_match(team_a, team_b, ga, gb, kWorldCupK);
        return ga > gb ? team_a : team_b;
    }

    // extra time at one-third rates, on the current (pre-update) ratings
    const auto [ea, eb] = sampler.sample(ctx, rng, 1.0 / 3.0);
    ga += ea;
    gb += eb;
    if (ga != gb) {
        elo.apply_match(team_a, team_b, ga, gb, kWorldCupK);
        return ga > gb ? team_a : team_b;
    }

    // shootout proxy: Elo-weighted coin flip, rated as a draw
    elo.apply_match_with_result(team_a, team_b, ga, gb, 0.5, kWorldCupK);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return unif(rng) < expected_result(ctx.elo_a, ctx.elo_b) ? team_a : team_b;
}

std::map<std::string, int> simulate_knockout(const std::vector<std::string>& qualifiers,
                                             const MatchSampler& sampler,
                                             const std::string& host, EloTable& elo,
                                             RngStream& rng) {
    if (qualifiers.size() != 16) throw DomainError("simulate_knockout: expected 16 qualifiers");
    std::map<std::string, int> category;
    for (const auto& t : qualifiers) category[t] = kCategoryLast16;

    std::vector<std::string> round = qualifiers;
    const int loser_category[] = {kCategoryLast16, kCategoryQuarterfinal, kCategorySemifinal};
    std::vector<std::string> semifinal_losers;
    for (int stage = 0; stage < 3; ++stage) {
        std::vector<std::string> winners;
        for (size_t i = 0; i + 1 < round.size(); i += 2) {
            const std::string winner =
                simulate_knockout_match(round[i], round[i + 1], sampler, host, elo, rng);
            const std::string loser = winner == round[i] ? round[i + 1] : round[i];
            category[loser] = loser_category[stage];
            if (stage == 2) semifinal_losers.push_back(loser);
            winners.push_back(winner);
        }
        round = std::move(winners);
    }

    // third-place playoff; both semifinal losers keep category 3
    simulate_knockout_match(semifinal_losers[0], semifinal_losers[1], sampler, host, elo, rng);

    const std::string champion =
        simulate_knockout_match(round[0], round[1], sampler, host, elo, rng);
    const std::string runner_up = champion == round[0] ? round[1] : round[0];
    category[champion] = kCategoryChampion;
    category[runner_up] = kCategoryFinal;
    return category;
}

SingleRunOutcome simulate_one_tournament(const TournamentConfig& config,
                                         const MatchSampler& sampler, EloTable& elo,
                                         RngStream& rng) {
    std::map<std::string, GroupStanding> standings;
    SingleRunOutcome outcome;
    for (const auto& [name, teams] : config.groups) {
        standings[name] = simulate_group(teams, sampler, config.host, elo, rng);
        for (const auto& row : standings[name].rows) {
            outcome.group_rank[row.team] = row.rank;
            if (row.rank > 2) outcome.category[row.team] = kCategoryPrelim;
        }
    }

    std::vector<std::string> qualifiers;
    for (const auto& slot : config.bracket) {
        const std::string group_name = slot.substr(0, slot.size() - 1);
        const int rank = slot.back() - '0';
        qualifiers.push_back(standings.at(group_name).at_rank(rank).team);
    }

    auto knockout = simulate_knockout(qualifiers, sampler, config.host, elo, rng);
    outcome.category.insert(knockout.begin(), knockout.end());
    return outcome;
}

double TournamentResult::p_category(const std::string& team, int category) const {
    const auto it = category_counts.find(team);
    if (it == category_counts.end()) throw DataError("no results for team '" + team + "'");
    return double(it->second[category - 1]) / double(n_runs);
}

double TournamentResult::p_reach(const std::string& team, int category) const {
    double p = 0.0;
    for (int c = 1; c <= category; ++c) p += p_category(team, c);
    return p;
}

double TournamentResult::p_group(const std::string& team, int slot) const {
    const auto it = group_counts.find(team);
    if (it == group_counts.end()) throw DataError("no group results for team '" + team + "'");
    return double(it->second[slot]) / double(n_runs);
}

void TournamentResult::merge(const TournamentResult& other) {
    n_runs += other.n_runs;
    for (const auto& [team, counts] : other.category_counts) {
        auto& mine = category_counts[team];
        for (int i = 0; i < 6; ++i) mine[i] += counts[i];
    }
    for (const auto& [team, counts] : other.group_counts) {
        auto& mine = group_counts[team];
        for (int i = 0; i < 3; ++i) mine[i] += counts[i];
    }
}

TournamentResult run_tournament(const TournamentConfig& config, const MatchSampler& sampler,
                                const EloTable& base_elo, int n_threads) {
    config.validate();
    for (const auto& team : config.all_teams())
        if (!base_elo.contains(team)) throw DataError("no Elo rating for '" + team + "'");

    if (n_threads <= 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = int(std::min<long>(n_threads, config.n_runs));

    std::vector<TournamentResult> partials(n_threads);
    std::vector<std::exception_ptr> failures(n_threads);
    std::vector<std::thread> workers;
    for (int w = 0; w < n_threads; ++w) {
        workers.emplace_back([&, w] {
            try {
                TournamentResult& local = partials[w];
                EloTable elo = base_elo;  // worker-private copy of the snapshot
                for (long run = w; run < config.n_runs; run += n_threads) {
                    elo.reset();
                    RngStream rng(run_stream_seed(config.seed, run));
                    const auto outcome = simulate_one_tournament(config, sampler, elo, rng);
                    local.n_runs += 1;
                    for (const auto& [team, cat] : outcome.category)
                        local.category_counts[team][cat - 1] += 1;
                    for (const auto& [team, rank] : outcome.group_rank)
                        local.group_counts[team][std::min(rank, 3) - 1] += 1;
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    TournamentResult result;
    for (const auto& partial : partials) result.merge(partial);
    return result;
}

}  // namespace footcast
