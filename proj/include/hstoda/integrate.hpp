#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace hstoda {

enum class Method { dopri5, rk4 };

// Adaptive Dormand-Prince 5(4) with dense-output sampling, or fixed-step RK4.
struct IntegratorConfig {
    Method method = Method::dopri5;
    double rtol = 1e-9;
    double atol = 1e-12;
    double t0 = 0.0;
    double t1 = 1.0;
    int samples = 101;           // evenly spaced, endpoints included
    double rk4_step = 1e-3;
    std::size_t max_steps = 2000000;  // per sampling interval
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> states;
    std::vector<std::string> names;

    std::size_t size() const { return t.size(); }
};

using Rhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

std::vector<double> sample_times(const IntegratorConfig& cfg);

// Throws NumericalError (with the last time reached) on step-size failure or
// non-finite states.
Trajectory integrate(const Rhs& rhs, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                     std::vector<std::string> names = {});

}  // namespace hstoda
