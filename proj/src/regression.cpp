#include "footcast/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "footcast/errors.hpp"
#include "footcast/optim.hpp"

namespace footcast {

namespace {

constexpr double kEtaClamp = 30.0;

double clamp_eta(double eta) { return std::clamp(eta, -kEtaClamp, kEtaClamp); }

double log_zigp_pmf(int k, double mu, double phi, double omega) {
    if (k == 0) return std::log(omega + (1.0 - omega) * std::exp(-mu / phi));
    const double shifted = mu + (phi - 1.0) * k;
    return std::log1p(-omega) + std::log(mu) + (k - 1) * std::log(shifted) -
           std::lgamma(k + 1.0) - k * std::log(phi) - shifted / phi;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double scaled_gradient_norm(const Eigen::VectorXd& g, const Eigen::VectorXd& x, double f) {
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double gi = g[i] * std::max(1.0, std::abs(x[i])) / std::max(1.0, std::abs(f));
        s += gi * gi;
    }
    return std::sqrt(s);
}

}  // namespace

double ZigpCoefficients::mu_at(double elo_opp, int loc, int opp_goals) const {
    double eta = alpha0 + alpha1 * elo_opp + alpha2 * loc;
    if (alpha3) eta += *alpha3 * opp_goals;
    return std::exp(clamp_eta(eta));
}

ZigpParams ZigpCoefficients::params_at(double elo_opp, int loc, int opp_goals) const {
    return ZigpParams{mu_at(elo_opp, loc, opp_goals), phi(), omega()};
}

double PoissonCoefficients::rate_at(double elo_opp, int loc) const {
    return std::exp(clamp_eta(alpha0 + alpha1 * elo_opp + alpha2 * loc));
}

double zigp_loglik(const std::vector<Observation>& observations, const ZigpCoefficients& coef,
                   bool with_opp_goals) {
    double ll = 0.0;
    const double phi = coef.phi();
    const double omega = coef.omega();
    for (const auto& o : observations) {
        const double mu = coef.mu_at(o.opp_elo, o.loc, with_opp_goals ? o.goals_against : 0);
        ll += o.weight * log_zigp_pmf(o.goals_for, mu, phi, omega);
    }
    return ll;
}

PoissonCoefficients fit_poisson(const std::vector<Observation>& observations,
                                bool response_conceded) {
    if (observations.empty()) throw InsufficientDataError("fit_poisson: no observations");
    const int n = int(observations.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n), w(n);
    for (int i = 0; i < n; ++i) {
        const auto& o = observations[i];
        x(i, 0) = 1.0;
        x(i, 1) = o.opp_elo;
        x(i, 2) = o.loc;
        y[i] = response_conceded ? o.goals_against : o.goals_for;
        w[i] = o.weight;
    }

    const double ybar = std::max(1e-3, y.dot(w) / w.sum());
    Eigen::Vector3d beta(std::log(ybar), 0.0, 0.0);

    for (int iter = 0; iter < 100; ++iter) {
        Eigen::VectorXd eta = (x * beta).unaryExpr([](double e) { return clamp_eta(e); });
        Eigen::VectorXd mu = eta.array().exp();
        Eigen::VectorXd ww = w.array() * mu.array();
        Eigen::VectorXd z = eta.array() + (y - mu).array() / mu.array();
        Eigen::Matrix3d xtwx = x.transpose() * ww.asDiagonal() * x;
        xtwx.diagonal().array() += 1e-10;
        const Eigen::Vector3d beta_new = xtwx.ldlt().solve(x.transpose() * (ww.asDiagonal() * z));
        const double change = (beta_new - beta).norm();
        beta = beta_new;
        if (change < 1e-12) break;
    }

    PoissonCoefficients coef;
    coef.alpha0 = beta[0];
    coef.alpha1 = beta[1];
    coef.alpha2 = beta[2];
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mu = coef.rate_at(x(i, 1), int(x(i, 2)));
        const double yi = y[i];
        dev += 2.0 * w[i] * ((yi > 0 ? yi * std::log(yi / mu) : 0.0) - (yi - mu));
    }
    coef.deviance = dev;
    for (double v : {coef.alpha0, coef.alpha1, coef.alpha2})
        if (!std::isfinite(v)) throw FitError("fit_poisson: degenerate solution");
    return coef;
}

std::pair<ZigpCoefficients, FitReport> fit_zigp(const std::vector<Observation>& observations,
                                                bool with_opp_goals, const FitOptions& options) {
    if (int(observations.size()) < options.min_observations)
        throw InsufficientDataError("fit_zigp: " + std::to_string(observations.size()) +
                                    " observations, need at least " +
                                    std::to_string(options.min_observations));
    const double total_weight =
        std::accumulate(observations.begin(), observations.end(), 0.0,
                        [](double a, const Observation& o) { return a + o.weight; });
    if (!(total_weight > 0.0)) throw InsufficientDataError("fit_zigp: nonpositive total weight");

    const int n_alpha = with_opp_goals ? 4 : 3;
    const int dim = options.fix_boundary ? n_alpha : n_alpha + 2;

    const auto unpack = [&](const Eigen::VectorXd& theta) {
        ZigpCoefficients c;
        c.alpha0 = theta[0];
        c.alpha1 = theta[1];
        c.alpha2 = theta[2];
        if (with_opp_goals) c.alpha3 = theta[3];
        if (!options.fix_boundary) {
            c.beta = theta[n_alpha];
            c.gamma = theta[n_alpha + 1];
        } else {
            c.beta = -40.0;   // phi -> 1
            c.gamma = -40.0;  // omega -> 0
        }
        return c;
    };

    const ObjectiveFn negloglik = [&](const Eigen::VectorXd& theta) {
        return -zigp_loglik(observations, unpack(theta), with_opp_goals);
    };

    // Poisson GLM initialization for the alphas
    const PoissonCoefficients glm = fit_poisson(observations);
    Eigen::VectorXd init = Eigen::VectorXd::Zero(dim);
    init[0] = glm.alpha0;
    init[1] = glm.alpha1;
    init[2] = glm.alpha2;
    if (!options.fix_boundary) {
        // observed excess of zeros over the Poisson prediction
        double zero_obs = 0.0, zero_pred = 0.0;
        for (const auto& o : observations) {
            zero_obs += o.goals_for == 0 ? 1.0 : 0.0;
            zero_pred += std::exp(-glm.rate_at(o.opp_elo, o.loc));
        }
        const double excess = (zero_obs - zero_pred) / double(observations.size());
        init[n_alpha] = -6.0;
        init[n_alpha + 1] = logit(std::min(0.9, std::max(0.01, excess)));
    }

    RngStream rng(splitmix(options.seed ^ 0x5a5a5a5aull));
    std::normal_distribution<double> perturb(0.0, 0.25);

    OptimOptions oo;
    OptimResult best;
    bool have_best = false;
    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        Eigen::VectorXd start = init;
        if (attempt > 0)
            for (int i = 0; i < dim; ++i) start[i] += perturb(rng);
        OptimResult res = minimize_bfgs(negloglik, start, oo);
        if (!have_best || res.f < best.f) {
            best = res;
            have_best = true;
        }
        if (best.converged && attempt >= 0) break;
    }

    ZigpCoefficients coef = unpack(best.x);
    FitReport report;
    report.converged = best.converged;
    report.iterations = best.iterations;
    report.final_loglik = -best.f;
    report.gradient_norm = scaled_gradient_norm(best.gradient, best.x, best.f);
    report.n_obs = int(observations.size());
    if (!report.converged)
        throw FitError("fit_zigp: no convergence after " + std::to_string(options.max_restarts) +
                       " restarts (best loglik " + std::to_string(report.final_loglik) + ")");
    return {coef, report};
}

std::pair<BivCoefficients, FitReport> fit_bivpois(const std::vector<Observation>& observations,
                                                  const FitOptions& options) {
    if (int(observations.size()) < options.min_observations)
        throw InsufficientDataError("fit_bivpois: too few observations");

    const bool fix_tau_zero = options.fix_boundary;
    const int dim = fix_tau_zero ? 6 : 7;

    const auto unpack = [&](const Eigen::VectorXd& theta) {
        BivCoefficients c;
        c.scored.alpha0 = theta[0];
        c.scored.alpha1 = theta[1];
        c.scored.alpha2 = theta[2];
        c.conceded.alpha0 = theta[3];
        c.conceded.alpha1 = theta[4];
        c.conceded.alpha2 = theta[5];
        c.tau_log = fix_tau_zero ? -40.0 : theta[6];
        return c;
    };

    const ObjectiveFn negloglik = [&](const Eigen::VectorXd& theta) {
        const BivCoefficients c = unpack(theta);
        const double tau = c.tau();
        double ll = 0.0;
        for (const auto& o : observations) {
            BivPoissonParams p{c.scored.rate_at(o.opp_elo, o.loc),
                               c.conceded.rate_at(o.opp_elo, o.loc), tau};
            const double pmf = bivpois_pmf(o.goals_for, o.goals_against, p);
            ll += o.weight * std::log(std::max(pmf, 1e-300));
        }
        return -ll;
    };

    const PoissonCoefficients init_scored = fit_poisson(observations, false);
    const PoissonCoefficients init_conceded = fit_poisson(observations, true);
    Eigen::VectorXd init(dim);
    init << init_scored.alpha0, init_scored.alpha1, init_scored.alpha2, init_conceded.alpha0,
        init_conceded.alpha1, init_conceded.alpha2;
    if (!fix_tau_zero) init[6] = std::log(0.1);

    RngStream rng(splitmix(options.seed ^ 0xb1b1b1b1ull));
    std::normal_distribution<double> perturb(0.0, 0.25);

    OptimResult best;
    bool have_best = false;
    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        Eigen::VectorXd start = init;
        if (attempt > 0)
            for (int i = 0; i < dim; ++i) start[i] += perturb(rng);
        OptimResult res = minimize_bfgs(negloglik, start);
        if (!have_best || res.f < best.f) {
            best = res;
            have_best = true;
        }
        if (best.converged) break;
    }

    FitReport report;
    report.converged = best.converged;
    report.iterations = best.iterations;
    report.final_loglik = -best.f;
    report.gradient_norm = scaled_gradient_norm(best.gradient, best.x, best.f);
    report.n_obs = int(observations.size());
    if (!report.converged) throw FitError("fit_bivpois: no convergence after restarts");
    return {unpack(best.x), report};
}

std::pair<double, double> chi_square_gof(
    const std::vector<Observation>& observations,
    const std::function<double(const Observation&)>& fitted_mean, int n_params) {
    const int n = int(observations.size());
    const int df = n - n_params;
    if (df <= 0) throw DomainError("chi_square_gof: nonpositive degrees of freedom");
    double chi = 0.0;
    for (const auto& o : observations) {
        const double mu = fitted_mean(o);
        chi += (o.goals_for - mu) * (o.goals_for - mu) / mu;
    }
    return {chi, chi_square_p_value(chi, double(df))};
}

namespace {

std::vector<Observation> conceded_view(const std::vector<Observation>& observations,
                                       bool stronger_only) {
    std::vector<Observation> out;
    for (const auto& o : observations) {
        if (stronger_only && !(o.opp_elo > o.own_elo)) continue;
        Observation flipped = o;
        std::swap(flipped.goals_for, flipped.goals_against);
        out.push_back(flipped);
    }
    return out;
}

}  // namespace

TeamModel fit_team_model(const std::string& team, const std::vector<Observation>& observations,
                         const FitOptions& options) {
    TeamModel model;
    model.team = team;
    model.n_obs = int(observations.size());
    model.total_weight =
        std::accumulate(observations.begin(), observations.end(), 0.0,
                        [](double a, const Observation& o) { return a + o.weight; });

    FitOptions opts = options;
    opts.seed = splitmix(options.seed ^ fnv1a(team));

    std::tie(model.scored, model.scored_report) = fit_zigp(observations, false, opts);
    const auto conceded_obs = conceded_view(observations, options.conceded_stronger_only);
    std::tie(model.conceded, model.conceded_report) = fit_zigp(conceded_obs, false, opts);
    std::tie(model.conditional, model.conditional_report) = fit_zigp(observations, true, opts);
    model.ip_scored = fit_poisson(observations, false);
    model.ip_conceded = fit_poisson(observations, true);
    std::tie(model.bv, std::ignore) = fit_bivpois(observations, opts);

    const auto gof = [&](const ZigpCoefficients& c, FitReport& report, bool cond) {
        const int n_params = cond ? 6 : 5;
        if (int(observations.size()) <= n_params) return;  // df would be nonpositive
        const auto mean_fn = [&c, cond](const Observation& o) {
            return (1.0 - c.omega()) * c.mu_at(o.opp_elo, o.loc, cond ? o.goals_against : 0);
        };
        std::tie(report.chi_sq, report.p_value) = chi_square_gof(observations, mean_fn, n_params);
    };
    gof(model.scored, model.scored_report, false);
    {
        const int n_params = 5;
        if (int(conceded_obs.size()) > n_params) {
            const auto& c = model.conceded;
            const auto mean_fn = [&c](const Observation& o) {
                return (1.0 - c.omega()) * c.mu_at(o.opp_elo, o.loc);
            };
            std::tie(model.conceded_report.chi_sq, model.conceded_report.p_value) =
                chi_square_gof(conceded_obs, mean_fn, n_params);
        }
    }
    gof(model.conditional, model.conditional_report, true);
    return model;
}

std::map<std::string, TeamModel> fit_all_teams(const std::vector<std::string>& participants,
                                               const std::vector<MatchRecord>& records,
                                               Date reference_date, double half_period_days,
                                               const FitOptions& options,
                                               std::vector<std::string>* warnings) {
    std::map<std::string, std::vector<Observation>> per_team;
    std::vector<Observation> pooled;
    for (const auto& team : participants) {
        try {
            per_team[team] = observations_for(team, records, reference_date, half_period_days);
        } catch (const DataError&) {
            per_team[team] = {};
        }
        pooled.insert(pooled.end(), per_team[team].begin(), per_team[team].end());
    }

    std::map<std::string, std::future<TeamModel>> futures;
    for (const auto& team : participants)
        futures[team] = std::async(std::launch::async, [&, team] {
            return fit_team_model(team, per_team[team], options);
        });

    std::map<std::string, TeamModel> models;
    std::vector<std::string> fallback_teams;
    for (const auto& team : participants) {
        try {
            models[team] = futures[team].get();
        } catch (const FitError& e) {
            fallback_teams.push_back(team);
            if (warnings)
                warnings->push_back("team '" + team + "': " + e.what() +
                                    "; using pooled coefficients");
        }
    }

    if (!fallback_teams.empty()) {
        TeamModel pooled_model = fit_team_model("<pooled>", pooled, options);
        for (const auto& team : fallback_teams) {
            TeamModel m = pooled_model;
            m.team = team;
            m.pooled_fallback = true;
            auto it = per_team.find(team);
            m.n_obs = it == per_team.end() ? 0 : int(it->second.size());
            models[team] = std::move(m);
        }
    }
    return models;
}

}  // namespace footcast
