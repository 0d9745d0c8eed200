#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "footcast/errors.hpp"
#include "footcast/optim.hpp"
#include "footcast/regression.hpp"
#include "support/synthetic.hpp"

using namespace footcast;
using namespace footcast::testsupport;

namespace {

ZigpCoefficients recovery_truth() {
    ZigpCoefficients c;
    c.alpha0 = 1.0;
    c.alpha1 = -0.001;
    c.alpha2 = 0.2;
    c.beta = -8.0;
    c.gamma = -4.0;
    return c;
}

}  // namespace

TEST_CASE("poisson glm on a constant response") {
    std::vector<Observation> obs;
    for (int i = 0; i < 60; ++i) {
        Observation o;
        o.opp_elo = 1500.0 + 10.0 * (i % 30);
        o.loc = (i % 3) - 1;
        o.goals_for = 2;
        o.weight = 1.0;
        obs.push_back(o);
    }
    const auto coef = fit_poisson(obs);
    CHECK(coef.rate_at(1600.0, 0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(coef.alpha1 == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(coef.alpha2 == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(coef.deviance == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("poisson glm weight-scale invariance") {
    auto obs = zigp_observations(recovery_truth(), 500, 77);
    const auto a = fit_poisson(obs);
    for (auto& o : obs) o.weight *= 2.0;
    const auto b = fit_poisson(obs);
    CHECK(a.alpha0 == doctest::Approx(b.alpha0).epsilon(1e-10));
    CHECK(a.alpha1 == doctest::Approx(b.alpha1).epsilon(1e-10));
    CHECK(a.alpha2 == doctest::Approx(b.alpha2).epsilon(1e-10));
}

TEST_CASE("zigp fit recovers known coefficients") {
    const ZigpCoefficients truth = recovery_truth();
    const auto obs = zigp_observations(truth, 5000, 1234);
    FitOptions opts;
    opts.seed = 99;
    const auto [coef, report] = fit_zigp(obs, false, opts);
    CHECK(report.converged);
    CHECK(std::abs(coef.alpha0 - truth.alpha0) < 0.05);
    CHECK(std::abs(coef.alpha1 - truth.alpha1) < 0.05);
    CHECK(std::abs(coef.alpha2 - truth.alpha2) < 0.05);
    CHECK(std::abs(coef.phi() - truth.phi()) < 0.01);
    CHECK(std::abs(coef.omega() - truth.omega()) < 0.01);
    // ascent over the documented initialization
    const PoissonCoefficients glm = fit_poisson(obs);
    ZigpCoefficients init;
    init.alpha0 = glm.alpha0;
    init.alpha1 = glm.alpha1;
    init.alpha2 = glm.alpha2;
    init.beta = -6.0;
    init.gamma = logit(0.01);
    CHECK(report.final_loglik >= zigp_loglik(obs, init, false) - 1e-9);
    // scaled finite-difference gradient small at the optimum
    CHECK(report.gradient_norm <= 1e-3);
}

TEST_CASE("zigp fit with the conditional covariate recovers alpha3") {
    ZigpCoefficients truth = recovery_truth();
    truth.alpha3 = -0.08;
    const auto obs = zigp_observations(truth, 5000, 4321);
    FitOptions opts;
    opts.seed = 7;
    const auto [coef, report] = fit_zigp(obs, true, opts);
    CHECK(report.converged);
    REQUIRE(coef.alpha3.has_value());
    CHECK(std::abs(*coef.alpha3 - *truth.alpha3) < 0.05);
}

TEST_CASE("zigp fit on all-zero goals stays finite") {
    std::vector<Observation> obs;
    for (int i = 0; i < 50; ++i) {
        Observation o;
        o.opp_elo = 1500.0 + 15.0 * i;
        o.loc = (i % 3) - 1;
        o.goals_for = 0;
        o.weight = 1.0;
        obs.push_back(o);
    }
    const auto [coef, report] = fit_zigp(obs, false, {});
    CHECK(std::isfinite(report.final_loglik));
    CHECK(std::isfinite(coef.alpha0));
}

TEST_CASE("boundary-fixed zigp matches the Poisson GLM") {
    const auto obs = zigp_observations(recovery_truth(), 1500, 55);
    FitOptions opts;
    opts.fix_boundary = true;
    const auto [coef, report] = fit_zigp(obs, false, opts);
    const auto glm = fit_poisson(obs);
    CHECK(coef.alpha0 == doctest::Approx(glm.alpha0).epsilon(1e-4));
    CHECK(std::abs(coef.alpha1 - glm.alpha1) < 1e-4);
    CHECK(std::abs(coef.alpha2 - glm.alpha2) < 1e-4);
}

TEST_CASE("zigp likelihood nests the Poisson likelihood at the boundary") {
    const auto obs = zigp_observations(recovery_truth(), 200, 31);
    ZigpCoefficients coef;
    coef.alpha0 = 0.4;
    coef.alpha1 = -0.0005;
    coef.alpha2 = 0.1;
    coef.beta = -40.0;
    coef.gamma = -40.0;
    double poisson_ll = 0.0;
    for (const auto& o : obs) {
        const double mu = std::exp(coef.alpha0 + coef.alpha1 * o.opp_elo + coef.alpha2 * o.loc);
        poisson_ll +=
            o.weight * (o.goals_for * std::log(mu) - mu - std::lgamma(o.goals_for + 1.0));
    }
    CHECK(zigp_loglik(obs, coef, false)
          == doctest::Approx(poisson_ll).epsilon(1e-8 / double(obs.size())));
}

TEST_CASE("zigp fit refuses too few observations") {
    std::vector<Observation> obs(5);
    CHECK_THROWS_AS(fit_zigp(obs, false, {}), InsufficientDataError);
}

TEST_CASE("bivariate Poisson fit recovers tau") {
    BivCoefficients truth;
    truth.scored = {0.9, -0.0008, 0.15, 0.0};
    truth.conceded = {-0.8, 0.0006, -0.1, 0.0};
    truth.tau_log = std::log(0.2);
    const auto obs = bivpois_observations(truth, 4000, 2024);
    FitOptions opts;
    opts.seed = 3;
    const auto [coef, report] = fit_bivpois(obs, opts);
    CHECK(report.converged);
    CHECK(std::abs(coef.tau() - 0.2) < 0.05);
}

TEST_CASE("bivariate Poisson fit on independent margins drives tau to zero") {
    BivCoefficients truth;
    truth.scored = {0.5, -0.0006, 0.1, 0.0};
    truth.conceded = {0.2, 0.0004, -0.1, 0.0};
    truth.tau_log = -40.0;
    const auto obs = bivpois_observations(truth, 4000, 99);
    const auto [coef, report] = fit_bivpois(obs, {});
    CHECK(coef.tau() < 0.02);
}

TEST_CASE("tau fixed at zero reproduces the independent Poisson fits") {
    BivCoefficients truth;
    truth.scored = {0.6, -0.0007, 0.2, 0.0};
    truth.conceded = {-0.3, 0.0005, -0.1, 0.0};
    truth.tau_log = -40.0;
    const auto obs = bivpois_observations(truth, 3000, 17);
    FitOptions opts;
    opts.fix_boundary = true;
    const auto [coef, report] = fit_bivpois(obs, opts);
    const auto glm_scored = fit_poisson(obs, false);
    const auto glm_conceded = fit_poisson(obs, true);
    CHECK(std::abs(coef.scored.alpha0 - glm_scored.alpha0) < 1e-3);
    CHECK(std::abs(coef.scored.alpha1 - glm_scored.alpha1) < 1e-3);
    CHECK(std::abs(coef.conceded.alpha0 - glm_conceded.alpha0) < 1e-3);
    CHECK(std::abs(coef.conceded.alpha1 - glm_conceded.alpha1) < 1e-3);
}

TEST_CASE("chi-square goodness of fit") {
    // exact fit: statistic zero, p-value one
    std::vector<Observation> obs;
    for (int i = 0; i < 10; ++i) {
        Observation o;
        o.goals_for = 1;
        obs.push_back(o);
    }
    const auto exact = chi_square_gof(obs, [](const Observation&) { return 1.0; }, 5);
    CHECK(exact.first == doctest::Approx(0.0));
    CHECK(exact.second == doctest::Approx(1.0));

    // single discrepant term contributes (2-1)^2/1 = 1
    obs[0].goals_for = 2;
    const auto one = chi_square_gof(obs, [](const Observation&) { return 1.0; }, 5);
    CHECK(one.first == doctest::Approx(1.0));
    CHECK(one.second == doctest::Approx(chi_square_p_value(1.0, 5.0)));

    // nonpositive degrees of freedom rejected
    std::vector<Observation> tiny(4);
    CHECK_THROWS_AS(chi_square_gof(tiny, [](const Observation&) { return 1.0; }, 5), DomainError);
}

TEST_CASE("team model fitting, pooled fallback and determinism") {
    auto ratings = wc2022_ratings();
    // six-team subset keeps the fit fast
    std::map<std::string, double> subset;
    for (const auto& team : {"France", "Denmark", "Brazil", "Ghana", "Japan", "Wales"})
        subset[team] = ratings.at(team);
    const auto truth = truth_models(subset, 1.2, 0.08, -0.05);
    auto records = synthetic_history(subset, truth, parse_date("2017-01-01"),
                                     parse_date("2022-11-01"), 14, 321);

    // one extra team with only two matches: below the fit threshold
    MatchRecord extra;
    extra.date = parse_date("2022-05-01");
    extra.team_a = "Newcomer";
    extra.team_b = "France";
    extra.goals_a = 0;
    extra.goals_b = 2;
    extra.elo_a = 1500.0;
    extra.elo_b = 2005.0;
    records.push_back(extra);
    extra.date = parse_date("2022-06-01");
    records.push_back(extra);

    std::vector<std::string> participants = {"France", "Denmark", "Brazil",
                                             "Ghana", "Japan", "Wales", "Newcomer"};
    FitOptions opts;
    opts.seed = 5;
    std::vector<std::string> warnings;
    const auto models = fit_all_teams(participants, records, parse_date("2022-11-20"),
                                      kDefaultHalfPeriodDays, opts, &warnings);
    REQUIRE(models.size() == 7);
    CHECK(models.at("Newcomer").pooled_fallback);
    CHECK(models.at("Newcomer").n_obs == 2);
    CHECK_FALSE(models.at("France").pooled_fallback);
    CHECK(warnings.size() == 1);

    // fitted slopes point the right way: stronger opponents reduce scoring
    CHECK(models.at("France").scored.alpha1 < 0.0);
    CHECK(models.at("France").conceded.alpha1 > 0.0);

    // p-values populated and valid
    for (const auto& team : {"France", "Brazil"}) {
        const auto& m = models.at(team);
        CHECK(m.scored_report.p_value >= 0.0);
        CHECK(m.scored_report.p_value <= 1.0);
        CHECK(m.conditional_report.p_value >= 0.0);
        CHECK(m.conditional_report.p_value <= 1.0);
    }

    // determinism under the parallel map
    const auto again = fit_all_teams(participants, records, parse_date("2022-11-20"),
                                     kDefaultHalfPeriodDays, opts, nullptr);
    for (const auto& team : participants) {
        CHECK(models.at(team).scored.alpha0 == again.at(team).scored.alpha0);
        CHECK(models.at(team).conceded.alpha1 == again.at(team).conceded.alpha1);
        CHECK(models.at(team).bv.tau_log == again.at(team).bv.tau_log);
    }
}

TEST_CASE("conceded fit can restrict to stronger opponents") {
    const auto truth = recovery_truth();
    auto obs = zigp_observations(truth, 2000, 8);
    // place own rating mid-design so the filter keeps about half the matches
    for (auto& o : obs) o.own_elo = 0.0;
    FitOptions opts;
    opts.conceded_stronger_only = true;
    const auto model = fit_team_model("T", obs, opts);
    CHECK(std::isfinite(model.conceded.alpha0));
    CHECK(model.conceded_report.converged);
}
