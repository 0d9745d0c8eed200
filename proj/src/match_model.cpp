#include "footcast/match_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "footcast/errors.hpp"

namespace footcast {

namespace {

constexpr int kDim = kGoalCap + 1;

// Univariate pmf over 0..kGoalCap with the residual tail folded into the cap.
template <typename PmfFn>
std::vector<double> folded_pmf(PmfFn&& pmf) {
    std::vector<double> out(kDim, 0.0);
    double mass = 0.0;
    for (int k = 0; k < kGoalCap; ++k) {
        out[k] = pmf(k);
        mass += out[k];
    }
    out[kGoalCap] = std::max(0.0, 1.0 - mass);
    return out;
}

}  // namespace

std::string to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::nested_zigp: return "nested_zigp";
        case ModelTag::independent_poisson: return "independent_poisson";
        case ModelTag::bivariate_poisson: return "bivariate_poisson";
    }
    return "nested_zigp";
}

ModelTag model_tag_from_string(const std::string& s) {
    if (s == "nested_zigp" || s == "zigp") return ModelTag::nested_zigp;
    if (s == "independent_poisson" || s == "ip") return ModelTag::independent_poisson;
    if (s == "bivariate_poisson" || s == "bv") return ModelTag::bivariate_poisson;
    throw ConfigError("unknown model tag '" + s + "'");
}

ScoreDistribution::ScoreDistribution(std::vector<double> joint, ModelTag tag)
    : joint_(std::move(joint)), tag_(tag) {
    if (int(joint_.size()) != kDim * kDim)
        throw DomainError("ScoreDistribution: wrong table size");
}

double ScoreDistribution::total_mass() const {
    return std::accumulate(joint_.begin(), joint_.end(), 0.0);
}

double ScoreDistribution::p_win_a() const {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < i; ++j) s += p(i, j);
    return s;
}

double ScoreDistribution::p_draw() const {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) s += p(i, i);
    return s;
}

double ScoreDistribution::p_win_b() const {
    double s = 0.0;
    for (int j = 0; j < kDim; ++j)
        for (int i = 0; i < j; ++i) s += p(i, j);
    return s;
}

std::vector<double> ScoreDistribution::marginal_a() const {
    std::vector<double> m(kDim, 0.0);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) m[i] += p(i, j);
    return m;
}

std::vector<double> ScoreDistribution::marginal_b() const {
    std::vector<double> m(kDim, 0.0);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) m[j] += p(i, j);
    return m;
}

std::pair<int, int> ScoreDistribution::sample(RngStream& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng) * total_mass();
    double c = 0.0;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            c += p(i, j);
            if (u < c) return {i, j};
        }
    return {kGoalCap, kGoalCap};
}

ZigpParams combine_params(const ZigpParams& attack, const ZigpParams& defense) {
    return ZigpParams{(attack.mu + defense.mu) / 2.0, (attack.phi + defense.phi) / 2.0,
                      (attack.omega + defense.omega) / 2.0};
}

bool is_stronger(const std::string& team_a, double elo_a, const std::string& team_b,
                 double elo_b) {
    if (elo_a != elo_b) return elo_a > elo_b;
    return team_a < team_b;
}

int loc_sign(Location location, bool subject_is_team_a) {
    switch (location) {
        case Location::neutral: return 0;
        case Location::home_a: return subject_is_team_a ? 1 : -1;
        case Location::home_b: return subject_is_team_a ? -1 : 1;
    }
    return 0;
}

ZigpParams stronger_goal_params(const TeamModel& model_a, const TeamModel& model_b,
                                const MatchContext& ctx) {
    const int loc_a = loc_sign(ctx.location, true);
    const int loc_b = loc_sign(ctx.location, false);
    const ZigpParams attack = model_a.scored.params_at(ctx.elo_b, loc_a);
    const ZigpParams defense = model_b.conceded.params_at(ctx.elo_a, loc_b);
    return combine_params(attack, defense);
}

ZigpParams weaker_goal_params(const TeamModel& model_b, const MatchContext& ctx, int g_a) {
    const int loc_b = loc_sign(ctx.location, false);
    return model_b.conditional.params_at(ctx.elo_a, loc_b, g_a);
}

namespace {

// Context reoriented so the Elo-stronger team is team_a.
MatchContext canonical(const MatchContext& ctx, bool& swapped) {
    swapped = !is_stronger(ctx.team_a, ctx.elo_a, ctx.team_b, ctx.elo_b);
    if (!swapped) return ctx;
    MatchContext flipped;
    flipped.team_a = ctx.team_b;
    flipped.team_b = ctx.team_a;
    flipped.elo_a = ctx.elo_b;
    flipped.elo_b = ctx.elo_a;
    flipped.location = ctx.location == Location::home_a
                           ? Location::home_b
                           : (ctx.location == Location::home_b ? Location::home_a
                                                               : Location::neutral);
    return flipped;
}

struct IndependentRates {
    double lambda_a;  // goals of team_a
    double lambda_b;
};

IndependentRates independent_rates(const TeamModel& model_a, const TeamModel& model_b,
                                   const MatchContext& ctx) {
    const int loc_a = loc_sign(ctx.location, true);
    const int loc_b = loc_sign(ctx.location, false);
    IndependentRates r;
    r.lambda_a = (model_a.ip_scored.rate_at(ctx.elo_b, loc_a) +
                  model_b.ip_conceded.rate_at(ctx.elo_a, loc_b)) /
                 2.0;
    r.lambda_b = (model_b.ip_scored.rate_at(ctx.elo_a, loc_b) +
                  model_a.ip_conceded.rate_at(ctx.elo_b, loc_a)) /
                 2.0;
    return r;
}

BivPoissonParams bivariate_rates(const TeamModel& model_a, const TeamModel& model_b,
                                 const MatchContext& ctx) {
    const int loc_a = loc_sign(ctx.location, true);
    const int loc_b = loc_sign(ctx.location, false);
    BivPoissonParams p;
    p.lambda1 = (model_a.bv.scored.rate_at(ctx.elo_b, loc_a) +
                 model_b.bv.conceded.rate_at(ctx.elo_a, loc_b)) /
                2.0;
    p.lambda2 = (model_b.bv.scored.rate_at(ctx.elo_a, loc_b) +
                 model_a.bv.conceded.rate_at(ctx.elo_b, loc_a)) /
                2.0;
    p.lambda0 = (model_a.bv.tau() + model_b.bv.tau()) / 2.0;
    return p;
}

}  // namespace

ScoreDistribution score_distribution(const TeamModel& model_a, const TeamModel& model_b,
                                     const MatchContext& ctx, ModelTag tag) {
    std::vector<double> joint(kDim * kDim, 0.0);

    switch (tag) {
        case ModelTag::nested_zigp: {
            bool swapped = false;
            const MatchContext c = canonical(ctx, swapped);
            const TeamModel& strong = swapped ? model_b : model_a;
            const TeamModel& weak = swapped ? model_a : model_b;
            const ZigpParams strong_params = stronger_goal_params(strong, weak, c);
            const std::vector<double> p_strong =
                folded_pmf([&](int k) { return zigp_pmf(k, strong_params); });
            for (int i = 0; i < kDim; ++i) {
                const ZigpParams cond = weaker_goal_params(weak, c, i);
                const std::vector<double> p_weak =
                    folded_pmf([&](int k) { return zigp_pmf(k, cond); });
                for (int j = 0; j < kDim; ++j) {
                    const double mass = p_strong[i] * p_weak[j];
                    if (swapped)
                        joint[j * kDim + i] = mass;
                    else
                        joint[i * kDim + j] = mass;
                }
            }
            break;
        }
        case ModelTag::independent_poisson: {
            const IndependentRates r = independent_rates(model_a, model_b, ctx);
            const std::vector<double> pa =
                folded_pmf([&](int k) { return poisson_pmf(k, r.lambda_a); });
            const std::vector<double> pb =
                folded_pmf([&](int k) { return poisson_pmf(k, r.lambda_b); });
            for (int i = 0; i < kDim; ++i)
                for (int j = 0; j < kDim; ++j) joint[i * kDim + j] = pa[i] * pb[j];
            break;
        }
        case ModelTag::bivariate_poisson: {
            const BivPoissonParams p = bivariate_rates(model_a, model_b, ctx);
            double mass = 0.0;
            for (int i = 0; i < kDim; ++i)
                for (int j = 0; j < kDim; ++j) {
                    joint[i * kDim + j] = bivpois_pmf(i, j, p);
                    mass += joint[i * kDim + j];
                }
            for (auto& v : joint) v /= mass;
            break;
        }
    }
    return ScoreDistribution(std::move(joint), tag);
}

std::pair<int, int> sample_score(const TeamModel& model_a, const TeamModel& model_b,
                                 const MatchContext& ctx, ModelTag tag, RngStream& rng,
                                 double mu_scale) {
    switch (tag) {
        case ModelTag::nested_zigp: {
            bool swapped = false;
            const MatchContext c = canonical(ctx, swapped);
            const TeamModel& strong = swapped ? model_b : model_a;
            const TeamModel& weak = swapped ? model_a : model_b;
            ZigpParams strong_params = stronger_goal_params(strong, weak, c);
            strong_params.mu *= mu_scale;
            const int g_strong = zigp_sample(strong_params, rng);
            ZigpParams cond = weaker_goal_params(weak, c, g_strong);
            cond.mu *= mu_scale;
            const int g_weak = zigp_sample(cond, rng);
            return swapped ? std::pair{g_weak, g_strong} : std::pair{g_strong, g_weak};
        }
        case ModelTag::independent_poisson: {
            const IndependentRates r = independent_rates(model_a, model_b, ctx);
            const int ga = std::min(kGoalCap, poisson_sample(r.lambda_a * mu_scale, rng));
            const int gb = std::min(kGoalCap, poisson_sample(r.lambda_b * mu_scale, rng));
            return {ga, gb};
        }
        case ModelTag::bivariate_poisson: {
            BivPoissonParams p = bivariate_rates(model_a, model_b, ctx);
            p.lambda1 *= mu_scale;
            p.lambda2 *= mu_scale;
            p.lambda0 *= mu_scale;
            auto [ga, gb] = bivpois_sample(p, rng);
            return {std::min(kGoalCap, ga), std::min(kGoalCap, gb)};
        }
    }
    return {0, 0};
}

}  // namespace footcast
