#include "hstoda/integrate.hpp"

#include "hstoda/core.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace hstoda {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

Eigen::VectorXd to_eigen(const State& s) {
    return Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
}

}  // namespace

std::vector<double> sample_times(const IntegratorConfig& cfg) {
    if (cfg.samples < 2) throw std::invalid_argument("integrator needs at least 2 samples");
    if (!(cfg.t1 > cfg.t0)) throw std::invalid_argument("integrator needs t1 > t0");
    std::vector<double> ts(static_cast<std::size_t>(cfg.samples));
    const double h = (cfg.t1 - cfg.t0) / (cfg.samples - 1);
    for (int i = 0; i < cfg.samples; ++i) ts[static_cast<std::size_t>(i)] = cfg.t0 + h * i;
    ts.back() = cfg.t1;
    return ts;
}

Trajectory integrate(const Rhs& rhs, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                     std::vector<std::string> names) {
    if (!(cfg.rtol > 0) || !(cfg.atol > 0)) throw std::invalid_argument("integrator tolerances must be positive");
    const auto times = sample_times(cfg);
    Trajectory traj;
    traj.names = std::move(names);
    double t_last = cfg.t0;

    Eigen::VectorXd xe(x0.size()), dxe(x0.size());
    auto system = [&](const State& x, State& dx, double t) {
        t_last = t;
        xe = to_eigen(x);
        dxe.setZero();
        rhs(t, xe, dxe);
        if (!dxe.allFinite()) throw NumericalError("non-finite right-hand side", t);
        dx.assign(dxe.data(), dxe.data() + dxe.size());
    };
    auto observer = [&](const State& x, double t) {
        Eigen::VectorXd v = to_eigen(x);
        if (!v.allFinite()) throw NumericalError("non-finite state", t);
        traj.t.push_back(t);
        traj.states.push_back(std::move(v));
    };

    State x(x0.data(), x0.data() + x0.size());
    const double span = cfg.t1 - cfg.t0;
    try {
        if (cfg.method == Method::dopri5) {
            auto stepper = odeint::make_dense_output(cfg.atol, cfg.rtol, odeint::runge_kutta_dopri5<State>());
            odeint::integrate_times(stepper, system, x, times.begin(), times.end(), span * 1e-4, observer,
                                    odeint::max_step_checker(cfg.max_steps));
        } else {
            if (!(cfg.rk4_step > 0)) throw std::invalid_argument("rk4 step must be positive");
            odeint::integrate_times(odeint::runge_kutta4<State>(), system, x, times.begin(), times.end(),
                                    cfg.rk4_step, observer, odeint::max_step_checker(cfg.max_steps));
        }
    } catch (const NumericalError&) {
        throw;
    } catch (const odeint::odeint_error& e) {
        throw NumericalError(std::string("integration failed (step size underflow): ") + e.what(), t_last);
    }
    return traj;
}

}  // namespace hstoda
