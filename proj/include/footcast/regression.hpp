#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "footcast/match_data.hpp"
#include "footcast/zigp.hpp"

namespace footcast {

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double logit(double p) { return std::log(p / (1.0 - p)); }

// Coefficients of one ZIGP regression: log mu = a0 + a1*elo_opp + a2*loc
// (+ a3*opp_goals for the conditional model), phi = 1 + e^beta,
// omega = logistic(gamma).
struct ZigpCoefficients {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::optional<double> alpha3;
    double beta = -30.0;
    double gamma = -30.0;

    double mu_at(double elo_opp, int loc, int opp_goals = 0) const;
    double phi() const { return 1.0 + std::exp(beta); }
    double omega() const { return logistic(gamma); }
    ZigpParams params_at(double elo_opp, int loc, int opp_goals = 0) const;
};

// Poisson log-linear coefficients: log lambda = a0 + a1*elo_opp + a2*loc.
struct PoissonCoefficients {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double deviance = 0.0;

    double rate_at(double elo_opp, int loc) const;
};

// Bivariate Poisson coefficient set: log-linear scored/conceded rates plus a
// constant shared component tau = e^tau_log.
struct BivCoefficients {
    PoissonCoefficients scored;    // lambda1 link
    PoissonCoefficients conceded;  // lambda2 link
    double tau_log = -30.0;

    double tau() const { return std::exp(tau_log); }
};

struct FitReport {
    bool converged = false;
    int iterations = 0;
    double final_loglik = 0.0;
    double gradient_norm = 0.0;  // relative scaled gradient at the optimum
    double chi_sq = 0.0;
    double p_value = 1.0;
    int n_obs = 0;
};

struct FitOptions {
    int min_observations = 10;
    int max_restarts = 5;
    std::uint64_t seed = 0;
    bool fix_boundary = false;  // pin phi = 1, omega = 0 (Poisson special case)
    // Restrict the conceded-goals training set to matches against
    // higher-rated opponents.
    bool conceded_stronger_only = false;
};

// Weighted ZIGP maximum likelihood. Response is goals_for; covariates are
// opp_elo and loc, plus goals_against when with_opp_goals is set (the
// conditional model). Initialized from the Poisson GLM solution with up to
// max_restarts perturbed restarts.
std::pair<ZigpCoefficients, FitReport> fit_zigp(const std::vector<Observation>& observations,
                                                bool with_opp_goals,
                                                const FitOptions& options = {});

// Weighted Poisson log-linear regression via IRLS. response_conceded selects
// goals_against as the response.
PoissonCoefficients fit_poisson(const std::vector<Observation>& observations,
                                bool response_conceded = false);

std::pair<BivCoefficients, FitReport> fit_bivpois(const std::vector<Observation>& observations,
                                                  const FitOptions& options = {});

// Pearson-type statistic over unweighted observations against the fitted
// distribution mean, with upper-tail p-value at df = n - n_params.
std::pair<double, double> chi_square_gof(const std::vector<Observation>& observations,
                                         const std::function<double(const Observation&)>& fitted_mean,
                                         int n_params);

// All fitted regressions for one team.
struct TeamModel {
    std::string team;
    ZigpCoefficients scored;       // own goals vs opponent Elo
    ZigpCoefficients conceded;     // goals received vs opponent Elo
    ZigpCoefficients conditional;  // own goals given the opponent's goals
    PoissonCoefficients ip_scored;
    PoissonCoefficients ip_conceded;
    BivCoefficients bv;
    FitReport scored_report;
    FitReport conceded_report;
    FitReport conditional_report;
    int n_obs = 0;
    double total_weight = 0.0;
    bool pooled_fallback = false;
};

TeamModel fit_team_model(const std::string& team, const std::vector<Observation>& observations,
                         const FitOptions& options = {});

// Per-team fits over all participants; teams under the observation threshold
// inherit coefficients fitted on the pooled observation set. Runs team fits
// in parallel; deterministic given options.seed.
std::map<std::string, TeamModel> fit_all_teams(const std::vector<std::string>& participants,
                                               const std::vector<MatchRecord>& records,
                                               Date reference_date, double half_period_days,
                                               const FitOptions& options = {},
                                               std::vector<std::string>* warnings = nullptr);

// Weighted ZIGP log-likelihood of a coefficient set on an observation list.
double zigp_loglik(const std::vector<Observation>& observations, const ZigpCoefficients& coef,
                   bool with_opp_goals);

}  // namespace footcast
