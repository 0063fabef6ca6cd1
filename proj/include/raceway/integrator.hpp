#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include "raceway/errors.hpp"
#include "raceway/model/plant.hpp"

namespace raceway {

struct IntegratorConfig {
    double rel_tol = 1.0e-6;
    /// Absolute tolerance per state, in state units (x_alg, x_o2, dic, cat, h, temp, vol).
    std::array<double, kStateSize> abs_tol{1e-9, 1e-9, 1e-9, 1e-9, 1e-9, 1e-6, 1e-6};
    double min_substep = 1.0e-6;  ///< [s]
    double max_substep = 60.0;    ///< [s]
    std::size_t max_substeps = 200000;

    void validate(double t_m) const
    {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            fail(ErrorKind::config, "rel_tol must lie in (0, 1)");
        for (double a : abs_tol)
            if (!(a > 0.0))
                fail(ErrorKind::config, "abs_tol entries must be positive");
        if (!(min_substep > 0.0 && min_substep <= max_substep && max_substep <= t_m))
            fail(ErrorKind::config, "need 0 < min_substep <= max_substep <= macro step");
        if (max_substeps == 0)
            fail(ErrorKind::config, "max_substeps must be positive");
    }

    /// Same configuration with every tolerance multiplied by `factor`.
    IntegratorConfig scaled(double factor) const
    {
        IntegratorConfig c = *this;
        c.rel_tol *= factor;
        for (double& a : c.abs_tol)
            a *= factor;
        return c;
    }
};

template <std::size_t N>
struct IntegrationResult {
    std::array<double, N> state{};
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

namespace detail {

inline void silence_gsl_errors()
{
    // GSL aborts on errors by default; status codes are checked explicitly instead.
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

/// Bridges a C++ right-hand side to the GSL callback interface.
template <std::size_t N, class Rhs>
struct GslSystem {
    Rhs& rhs;
    std::exception_ptr error;

    static int derivative(double /*t*/, const double y[], double dydt[], void* self)
    {
        auto& sys = *static_cast<GslSystem*>(self);
        try {
            std::array<double, N> x;
            std::copy(y, y + N, x.begin());
            const auto f = sys.rhs(x);
            for (std::size_t i = 0; i < N; ++i) {
                if (!std::isfinite(f[i]))
                    fail(ErrorKind::model, "non-finite derivative");
                dydt[i] = f[i];
            }
            return GSL_SUCCESS;
        } catch (const Error& err) {
            // a trial stage left the physical domain: let the driver shrink the step
            if (err.kind() == ErrorKind::domain)
                return GSL_FAILURE;
            sys.error = std::current_exception();
        } catch (...) {
            sys.error = std::current_exception();
        }
        return GSL_EBADFUNC;
    }

    /// Forward-difference Jacobian; inputs are frozen so ∂f/∂t = 0.
    static int jacobian(double t, const double y[], double* dfdy, double dfdt[], void* self)
    {
        const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
        std::array<double, N> yp{}, f0{}, f1{};
        std::copy(y, y + N, yp.begin());
        if (int rc = derivative(t, y, f0.data(), self); rc != GSL_SUCCESS)
            return rc;
        for (std::size_t j = 0; j < N; ++j) {
            const double step = sqrt_eps * (y[j] != 0.0 ? std::abs(y[j]) : 1.0);
            yp[j] = y[j] + step;
            const double actual = yp[j] - y[j];
            if (int rc = derivative(t, yp.data(), f1.data(), self); rc != GSL_SUCCESS)
                return rc;
            for (std::size_t i = 0; i < N; ++i)
                dfdy[i * N + j] = (f1[i] - f0[i]) / actual;
            yp[j] = y[j];
        }
        std::fill(dfdt, dfdt + N, 0.0);
        return GSL_SUCCESS;
    }
};

struct DriverDeleter {
    void operator()(gsl_odeiv2_driver* d) const { gsl_odeiv2_driver_free(d); }
};

template <std::size_t N>
std::vector<double> to_vector(const std::array<double, N>& a)
{
    return std::vector<double>(a.begin(), a.end());
}

} // namespace detail

/// Substep error test runs this much tighter than the configured tolerance, so that the
/// error accumulated over a whole span stays within it.
inline constexpr double kLocalToleranceFactor = 0.1;

/// Adaptive variable-order BDF integration of x' = rhs(x) over [0, t_span].
///
/// Substep error test per component: |err_i| <= f·(abs_tol_i + rel_tol·|x_i|), f = kLocalToleranceFactor.
/// A trial stage that leaves the physical domain is retried with a smaller step.
template <std::size_t N, class Rhs>
IntegrationResult<N> integrate_adaptive(Rhs&& rhs, const std::array<double, N>& x0, double t_span,
                                        const std::array<double, N>& abs_tol, const IntegratorConfig& cfg)
{
    if (!(t_span > 0.0))
        fail(ErrorKind::config, "integration span must be positive");
    detail::silence_gsl_errors();

    using Sys = detail::GslSystem<N, std::remove_reference_t<Rhs>>;
    Sys bridge{rhs, nullptr};
    gsl_odeiv2_system sys{&Sys::derivative, &Sys::jacobian, N, &bridge};

    const double h0 = std::min({cfg.max_substep, t_span, 1.0});
    std::array<double, N> local_abs = abs_tol;
    for (double& a : local_abs)
        a *= kLocalToleranceFactor;
    std::unique_ptr<gsl_odeiv2_driver, detail::DriverDeleter> driver(gsl_odeiv2_driver_alloc_scaled_new(
        &sys, gsl_odeiv2_step_msbdf, h0, 1.0, kLocalToleranceFactor * cfg.rel_tol, 1.0, 0.0, local_abs.data()));
    if (!driver)
        fail(ErrorKind::integration, "cannot allocate the ODE driver");
    gsl_odeiv2_driver_set_hmin(driver.get(), cfg.min_substep);
    gsl_odeiv2_driver_set_hmax(driver.get(), cfg.max_substep);
    gsl_odeiv2_driver_set_nmax(driver.get(), cfg.max_substeps);

    IntegrationResult<N> out;
    out.state = x0;
    double t = 0.0;
    const int status = gsl_odeiv2_driver_apply(driver.get(), &t, t_span, out.state.data());
    out.accepted = driver->e->count - driver->e->failed_steps;
    out.rejected = driver->e->failed_steps;

    if (bridge.error)
        std::rethrow_exception(bridge.error);
    if (status == GSL_EMAXITER)
        throw IntegrationFailure("substep budget exhausted at t = " + std::to_string(t),
                                 detail::to_vector(out.state));
    if (status != GSL_SUCCESS)
        throw IntegrationFailure("step size underflow at t = " + std::to_string(t) + " (" +
                                     gsl_strerror(status) + ")",
                                 detail::to_vector(out.state));
    return out;
}

/// Advances the plant by `t_m` seconds with meteorology and actuators held constant.
inline StateVector integrate_macro_step(const StateVector& state, const MeteoSample& meteo,
                                        const ActuatorInputs& act, const ReactorGeometry& geom,
                                        const ModelParameters& params, double t_m, const IntegratorConfig& cfg,
                                        IntegrationResult<kStateSize>* stats = nullptr)
{
    validate_state(state, geom);
    if (!(t_m > 0.0))
        fail(ErrorKind::config, "macro step must be positive");
    auto rhs = [&](const std::array<double, kStateSize>& x) {
        return state_derivative(StateVector::from_array(x), meteo, act, geom, params).to_array();
    };
    auto result = integrate_adaptive(rhs, state.to_array(), t_m, cfg.abs_tol, cfg);

    // Concentrations (x_alg .. h) may undershoot zero by round-off of the error controller.
    auto& x = result.state;
    for (std::size_t i = 0; i < 5; ++i) {
        if (x[i] < 0.0 && x[i] > -cfg.abs_tol[i])
            x[i] = 0.0;
        if (x[i] < 0.0)
            throw IntegrationFailure(std::string("negative ") + kStateNames[i] + " after macro step",
                                     detail::to_vector(x));
    }
    if (!(x[4] > 0.0))
        throw IntegrationFailure("proton concentration collapsed to zero", detail::to_vector(x));
    if (stats)
        *stats = result;
    return StateVector::from_array(x);
}

} // namespace raceway
