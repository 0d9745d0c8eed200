#include "footcast/optim.hpp"

#include <cmath>
#include <limits>

#include "footcast/errors.hpp"

namespace footcast {

Eigen::VectorXd numeric_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                 double fd_step) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (int i = 0; i < x.size(); ++i) {
        const double h = fd_step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

OptimResult minimize_bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts) {
    const int n = int(x0.size());
    OptimResult res;
    res.x = x0;
    res.f = f(x0);
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = numeric_gradient(f, res.x, opts.fd_step);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter + 1;
        Eigen::VectorXd dir = -h_inv * g;
        if (dir.dot(g) >= 0.0) {  // not a descent direction, reset
            h_inv.setIdentity();
            dir = -g;
        }

        // backtracking Armijo line search
        double alpha = 1.0;
        const double slope = g.dot(dir);
        double f_new = std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new;
        bool step_ok = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = res.x + alpha * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= res.f + 1e-4 * alpha * slope) {
                step_ok = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!step_ok) {
            res.converged = g.norm() < 1e-5 * std::max(1.0, std::abs(res.f));
            break;
        }

        const Eigen::VectorXd step = x_new - res.x;
        const Eigen::VectorXd g_new = numeric_gradient(f, x_new, opts.fd_step);
        const Eigen::VectorXd y = g_new - g;

        const double f_change = std::abs(res.f - f_new);
        const bool f_converged = f_change <= opts.rel_f_tol * std::max(1.0, std::abs(f_new));
        const bool step_converged = step.norm() <= opts.step_tol;

        const double sy = step.dot(y);
        if (sy > 1e-12) {
            const Eigen::VectorXd hy = h_inv * y;
            const double yhy = y.dot(hy);
            h_inv += ((sy + yhy) / (sy * sy)) * (step * step.transpose()) -
                     (hy * step.transpose() + step * hy.transpose()) / sy;
        }

        res.x = x_new;
        res.f = f_new;
        g = g_new;

        if (f_converged && step_converged) {
            res.converged = true;
            break;
        }
    }
    res.gradient = g;
    return res;
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_q: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // lower series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a)_{n+1}
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 1000; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(log_prefactor);
    }
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(log_prefactor) * h;
}

double chi_square_p_value(double chi_sq, double df) {
    if (!(df > 0.0)) throw DomainError("chi_square_p_value: df must be positive");
    if (chi_sq <= 0.0) return 1.0;
    return gamma_q(df / 2.0, chi_sq / 2.0);
}

}  // namespace footcast
