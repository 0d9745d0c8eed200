#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace footcast {

// Goal counts above this are folded into the last bin when tabulating or
// sampling. P[G > 30] is below 1e-12 for realistic fitted parameters.
inline constexpr int kGoalCap = 30;

using RngStream = std::mt19937_64;

// Zero-inflated generalized Poisson parameter triple for one team's goal
// count in one match. mu > 0, phi >= 1, 0 <= omega < 1. With omega = 0 and
// phi = 1 the distribution reduces to Poisson(mu).
struct ZigpParams {
    double mu;
    double phi = 1.0;
    double omega = 0.0;

    void validate() const;
};

double zigp_pmf(int k, const ZigpParams& p);
double zigp_cdf(int k, const ZigpParams& p);

// (mean, variance) = ((1-omega)*mu, (1-omega)*mu*(phi^2 + omega*mu)).
std::pair<double, double> zigp_mean_var(const ZigpParams& p);

// Inversion over the cumulative pmf; tail mass beyond kGoalCap returns kGoalCap.
int zigp_sample(const ZigpParams& p, RngStream& rng);

// Bivariate Poisson rates: (Y1, Y2) = (X1 + X0, X2 + X0) with independent
// Poisson components. Marginal means lambda1+lambda0 and lambda2+lambda0,
// Cov(Y1, Y2) = lambda0.
struct BivPoissonParams {
    double lambda1;
    double lambda2;
    double lambda0;

    void validate() const;
};

double bivpois_pmf(int i, int j, const BivPoissonParams& p);
std::pair<int, int> bivpois_sample(const BivPoissonParams& p, RngStream& rng);

double poisson_pmf(int k, double lambda);
int poisson_sample(double lambda, RngStream& rng);

}  // namespace footcast
