#ifndef FRACGREEN_MITTAG_LEFFLER_HPP
#define FRACGREEN_MITTAG_LEFFLER_HPP

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) on the real line
// (principally z <= 0) and the density of Y_{alpha,c}.

#include "fracgreen/core.hpp"

namespace fracgreen {

// Regime-switch policy for ml_eval.
//   series_radius:    |z| below which the power series is tried first
//   asymptotic_terms: terms of the large-|z| algebraic expansion
//   target_abs_tol:   absolute accuracy goal
struct MlRegimeConfig {
    double series_radius = 10.0;
    int asymptotic_terms = 6;
    double target_abs_tol = 1e-10;

    // test hooks: force a single regime regardless of certification
    enum class Force { None, Series, Asymptotic };
    Force force = Force::None;

    void check() const {
        if (!(series_radius > 0.0)) throw OutOfDomainError("MlRegimeConfig: series_radius > 0");
        if (asymptotic_terms < 2) throw OutOfDomainError("MlRegimeConfig: asymptotic_terms >= 2");
        if (!(target_abs_tol > 0.0)) throw OutOfDomainError("MlRegimeConfig: target_abs_tol > 0");
    }
};

// Reciprocal gamma 1/Gamma(s): entire, exactly zero at s = 0, -1, -2, ...
double reciprocal_gamma(double s);

// sin(pi*x) with exact zeros at integer x.
double sin_pi(double x);

// E_{alpha,beta}(z) = sum_{k>=0} z^k / Gamma(alpha k + beta) to absolute
// accuracy cfg.target_abs_tol. Supported: alpha in (0,2], beta > 0, z <= 0
// or z within the series radius. Throws ToleranceError when no regime
// certifies the tolerance, OutOfDomainError outside the supported set.
double ml_eval(double alpha, double beta, double z, const MlRegimeConfig& cfg = {});

// Density of Y_{alpha,c}: c * t^{alpha-1} * E_{alpha,alpha}(-c t^alpha),
// t > 0. Nonnegative for alpha <= 1; may oscillate in sign for alpha > 1.
double y_density(double alpha, double c, double t, const MlRegimeConfig& cfg = {});

// Upper-tail mass of Y_{alpha,c}: integral of y_density over (T, infinity),
// which equals E_{alpha,1}(-c T^alpha). Exact identity, used for tail
// corrections of the Mittag-Leffler integral representation.
double y_survival(double alpha, double c, double T, const MlRegimeConfig& cfg = {});

} // namespace fracgreen

#endif
