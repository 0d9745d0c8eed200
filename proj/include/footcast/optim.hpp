#pragma once

#include <Eigen/Dense>
#include <functional>

namespace footcast {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
    int max_iterations = 500;
    double rel_f_tol = 1e-9;
    double step_tol = 1e-8;
    double fd_step = 1e-6;  // relative central-difference step
};

struct OptimResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
    Eigen::VectorXd gradient;
};

// Central finite differences with per-coordinate step fd_step * max(1, |x_i|).
Eigen::VectorXd numeric_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                 double fd_step = 1e-6);

// BFGS minimizer with numerically estimated gradients and backtracking
// Armijo line search.
OptimResult minimize_bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts = {});

// Upper regularized incomplete gamma Q(a, x); chi-square upper tail
// p-value is Q(df/2, chi/2). Series expansion for x < a+1, continued
// fraction otherwise.
double gamma_q(double a, double x);

double chi_square_p_value(double chi_sq, double df);

}  // namespace footcast
