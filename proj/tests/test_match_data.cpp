#include <doctest.h>

#include <sstream>

#include "footcast/elo.hpp"
#include "footcast/errors.hpp"
#include "footcast/match_data.hpp"

using namespace footcast;

TEST_CASE("date parsing round trip") {
    const Date d = parse_date("2022-11-20");
    CHECK(format_date(d) == "2022-11-20");
    CHECK_THROWS_AS(parse_date("2022/11/20"), DataError);
    CHECK_THROWS_AS(parse_date("2022-02-30"), DataError);
}

TEST_CASE("date weight") {
    const Date ref = parse_date("2022-11-20");
    CHECK(date_weight(ref, ref, 1095.0) == doctest::Approx(1.0));
    CHECK(date_weight(ref - std::chrono::days(1095), ref, 1095.0) == doctest::Approx(0.5));
    CHECK(date_weight(ref - std::chrono::days(2190), ref, 1095.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(date_weight(ref + std::chrono::days(1), ref, 1095.0), DomainError);
}

TEST_CASE("date weight monotone decay") {
    const Date ref = parse_date("2022-11-20");
    double prev = 2.0;
    for (int d = 0; d <= 2500; d += 100) {
        const double w = date_weight(ref - std::chrono::days(d), ref, 1095.0);
        CHECK(w > 0.0);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("importance weights") {
    CHECK(importance_weight(Competition::world_cup) == doctest::Approx(4.0));
    CHECK(importance_weight(Competition::continental_final) == doctest::Approx(3.0));
    CHECK(importance_weight(Competition::qualifier_or_nations_league) == doctest::Approx(2.5));
    CHECK(importance_weight(Competition::friendly_or_other) == doctest::Approx(1.0));
}

TEST_CASE("competition mapper defaults") {
    CompetitionMapper mapper;
    CHECK(mapper.classify("FIFA World Cup") == Competition::world_cup);
    CHECK(mapper.classify("FIFA World Cup qualification")
          == Competition::qualifier_or_nations_league);
    CHECK(mapper.classify("UEFA Nations League") == Competition::qualifier_or_nations_league);
    CHECK(mapper.classify("UEFA Euro") == Competition::continental_final);
    CHECK(mapper.classify("Copa América") == Competition::continental_final);
    CHECK(mapper.classify("Friendly") == Competition::friendly_or_other);
    CHECK(mapper.classify("Weird Invitational") == Competition::friendly_or_other);
    CHECK(mapper.unmapped().count("Weird Invitational") == 1);
    CHECK(mapper.unmapped().count("UEFA Euro") == 0);
}

TEST_CASE("competition mapper from csv") {
    std::istringstream in("pattern,category\nmy cup,world_cup\n");
    auto mapper = CompetitionMapper::from_csv(in);
    CHECK(mapper.classify("My Cup Final") == Competition::world_cup);
    CHECK(mapper.classify("Other") == Competition::friendly_or_other);
}

namespace {

LoadOptions default_opts() {
    LoadOptions opts;
    opts.window_start = parse_date("2016-01-01");
    opts.window_end = parse_date("2022-11-19");
    return opts;
}

}  // namespace

TEST_CASE("load matches empty and window filtering") {
    std::istringstream empty("");
    CHECK(load_matches(empty, default_opts()).empty());

    std::istringstream in(
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral,"
        "home_elo,away_elo\n"
        "2015-06-01,X,Y,1,0,Friendly,C,K,FALSE,1700,1650\n"
        "2018-06-01,X,Y,1,0,Friendly,C,K,FALSE,1700,1650\n");
    const auto records = load_matches(in, default_opts());
    REQUIRE(records.size() == 1);
    CHECK(format_date(records[0].date) == "2018-06-01");
}

TEST_CASE("load matches reads elo columns") {
    std::istringstream in(
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral,"
        "home_elo,away_elo\n"
        "2022-06-01,France,Denmark,2,1,UEFA Nations League,Copenhagen,Denmark,TRUE,2005,1971\n");
    const auto records = load_matches(in, default_opts());
    REQUIRE(records.size() == 1);
    CHECK(records[0].elo_a == doctest::Approx(2005.0));
    CHECK(records[0].elo_b == doctest::Approx(1971.0));
    CHECK(records[0].location == Location::neutral);
    CHECK(records[0].competition == Competition::qualifier_or_nations_league);
}

TEST_CASE("load matches malformed row reports the line number") {
    std::istringstream in(
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral\n"
        "2020-01-05,X,Y,two,0,Friendly,C,K,FALSE\n");
    try {
        load_matches(in, default_opts());
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("load matches participant filter") {
    auto opts = default_opts();
    opts.participants = {"France"};
    std::istringstream in(
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral,"
        "home_elo,away_elo\n"
        "2020-01-05,France,Peru,1,0,Friendly,C,K,FALSE,2000,1800\n"
        "2020-01-06,Chile,Peru,1,0,Friendly,C,K,FALSE,1810,1800\n");
    const auto records = load_matches(in, opts);
    REQUIRE(records.size() == 1);
    CHECK(records[0].team_a == "France");
}

TEST_CASE("elo replay reconstruction is deterministic and seedable") {
    // no Elo columns: ratings replayed from the seeds with the K schedule
    const char* csv =
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral\n"
        "2020-01-05,X,Y,2,0,Friendly,C,K,FALSE\n"
        "2020-02-05,X,Y,0,0,FIFA World Cup,C,K,TRUE\n";
    auto opts = default_opts();
    opts.seed_ratings = {{"X", 1700.0}, {"Y", 1650.0}};

    std::istringstream a(csv), b(csv);
    const auto r1 = load_matches(a, opts);
    const auto r2 = load_matches(b, opts);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].elo_a == doctest::Approx(1700.0));
    CHECK(r1[0].elo_b == doctest::Approx(1650.0));
    // second match sees the post-update ratings from the first (K=20 friendly)
    const double x_after = elo_update(1700.0, 1650.0, 2, 0, 20.0);
    const double y_after = elo_update(1650.0, 1700.0, 0, 2, 20.0);
    CHECK(r1[1].elo_a == doctest::Approx(x_after));
    CHECK(r1[1].elo_b == doctest::Approx(y_after));
    // determinism
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].elo_a == r2[i].elo_a);
        CHECK(r1[i].elo_b == r2[i].elo_b);
    }
    // unseeded team falls back to the default rating
    auto opts2 = default_opts();
    std::istringstream c(csv);
    const auto r3 = load_matches(c, opts2);
    CHECK(r3[0].elo_a == doctest::Approx(1500.0));
}

TEST_CASE("same-day replay order is by (date, home, away)") {
    const char* fwd =
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral\n"
        "2020-01-05,A,B,1,0,Friendly,C,K,FALSE\n"
        "2020-01-05,B,C,1,0,Friendly,C,K,FALSE\n";
    const char* rev =
        "date,home_team,away_team,home_score,away_score,tournament,city,country,neutral\n"
        "2020-01-05,B,C,1,0,Friendly,C,K,FALSE\n"
        "2020-01-05,A,B,1,0,Friendly,C,K,FALSE\n";
    auto opts = default_opts();
    opts.seed_ratings = {{"A", 1700.0}, {"B", 1650.0}, {"C", 1600.0}};
    std::istringstream f(fwd), r(rev);
    const auto rf = load_matches(f, opts);
    const auto rr = load_matches(r, opts);
    REQUIRE(rf.size() == 2);
    for (size_t i = 0; i < rf.size(); ++i) {
        CHECK(rf[i].team_a == rr[i].team_a);
        CHECK(rf[i].elo_a == rr[i].elo_a);
        CHECK(rf[i].elo_b == rr[i].elo_b);
    }
}

TEST_CASE("observations reorient matches subject-first") {
    MatchRecord r;
    r.date = parse_date("2019-11-21");  // exactly 1095 days before reference
    r.team_a = "X";
    r.team_b = "Y";
    r.goals_a = 2;
    r.goals_b = 0;
    r.competition = Competition::world_cup;
    r.location = Location::home_a;
    r.elo_a = 1900.0;
    r.elo_b = 1800.0;
    const Date ref = parse_date("2022-11-20");

    const auto xs = observations_for("X", {r}, ref);
    REQUIRE(xs.size() == 1);
    CHECK(xs[0].loc == 1);
    CHECK(xs[0].goals_for == 2);
    CHECK(xs[0].goals_against == 0);
    CHECK(xs[0].opp_elo == doctest::Approx(1800.0));
    CHECK(xs[0].own_elo == doctest::Approx(1900.0));
    // world cup importance 4 times half-period decay 0.5
    CHECK(xs[0].weight == doctest::Approx(2.0).epsilon(1e-6));

    // mirrored observation for the opponent
    const auto ys = observations_for("Y", {r}, ref);
    REQUIRE(ys.size() == 1);
    CHECK(ys[0].loc == -1);
    CHECK(ys[0].goals_for == 0);
    CHECK(ys[0].goals_against == 2);
    CHECK(ys[0].opp_elo == doctest::Approx(1900.0));

    CHECK_THROWS_AS(observations_for("Z", {r}, ref), DataError);
}

TEST_CASE("ratings csv and participants file") {
    std::istringstream in("team,elo\nFrance,2005\nDenmark,1971\n");
    const auto ratings = load_ratings_csv(in);
    CHECK(ratings.at("France") == doctest::Approx(2005.0));
    CHECK(ratings.at("Denmark") == doctest::Approx(1971.0));
}

TEST_CASE("csv splitting honors quotes") {
    const auto fields = split_csv_line("a,\"b,c\",\"d\"\"e\",f");
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == "a");
    CHECK(fields[1] == "b,c");
    CHECK(fields[2] == "d\"e");
    CHECK(fields[3] == "f");
}
