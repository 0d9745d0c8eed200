#include "footcast/zigp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "footcast/errors.hpp"

namespace footcast {

void ZigpParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw DomainError("ZigpParams: mu must be positive, got " + std::to_string(mu));
    if (!(phi >= 1.0) || !std::isfinite(phi))
        throw DomainError("ZigpParams: phi must be >= 1, got " + std::to_string(phi));
    if (!(omega >= 0.0 && omega < 1.0))
        throw DomainError("ZigpParams: omega must be in [0, 1), got " + std::to_string(omega));
}

double zigp_pmf(int k, const ZigpParams& p) {
    p.validate();
    if (k < 0) throw DomainError("zigp_pmf: k must be nonnegative");
    if (k == 0) return p.omega + (1.0 - p.omega) * std::exp(-p.mu / p.phi);
    // log-space beyond the factorial overflow point
    const double shifted = p.mu + (p.phi - 1.0) * k;
    double logp = std::log(p.mu) + (k - 1) * std::log(shifted) - std::lgamma(k + 1.0) -
                  k * std::log(p.phi) - shifted / p.phi;
    double value = (1.0 - p.omega) * std::exp(logp);
    return std::clamp(value, 0.0, 1.0);
}

double zigp_cdf(int k, const ZigpParams& p) {
    double c = 0.0;
    for (int i = 0; i <= k; ++i) c += zigp_pmf(i, p);
    return std::min(c, 1.0);
}

std::pair<double, double> zigp_mean_var(const ZigpParams& p) {
    p.validate();
    const double mean = (1.0 - p.omega) * p.mu;
    const double var = (1.0 - p.omega) * p.mu * (p.phi * p.phi + p.omega * p.mu);
    return {mean, var};
}

int zigp_sample(const ZigpParams& p, RngStream& rng) {
    p.validate();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double c = 0.0;
    for (int k = 0; k < kGoalCap; ++k) {
        c += zigp_pmf(k, p);
        if (u < c) return k;
    }
    return kGoalCap;
}

void BivPoissonParams::validate() const {
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !(lambda0 >= 0.0) ||
        !std::isfinite(lambda1 + lambda2 + lambda0))
        throw DomainError("BivPoissonParams: rates must be nonnegative and finite");
}

double poisson_pmf(int k, double lambda) {
    if (k < 0) return 0.0;
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double bivpois_pmf(int i, int j, const BivPoissonParams& p) {
    p.validate();
    if (i < 0 || j < 0) throw DomainError("bivpois_pmf: indices must be nonnegative");
    // sum over the shared component
    double total = 0.0;
    const int m_max = std::min(i, j);
    for (int m = 0; m <= m_max; ++m)
        total += poisson_pmf(m, p.lambda0) * poisson_pmf(i - m, p.lambda1) *
                 poisson_pmf(j - m, p.lambda2);
    return total;
}

int poisson_sample(double lambda, RngStream& rng) {
    if (lambda < 0.0) throw DomainError("poisson_sample: negative rate");
    if (lambda == 0.0) return 0;
    std::poisson_distribution<int> dist(lambda);
    return dist(rng);
}

std::pair<int, int> bivpois_sample(const BivPoissonParams& p, RngStream& rng) {
    p.validate();
    const int x0 = poisson_sample(p.lambda0, rng);
    const int x1 = poisson_sample(p.lambda1, rng);
    const int x2 = poisson_sample(p.lambda2, rng);
    return {x1 + x0, x2 + x0};
}

}  // namespace footcast
