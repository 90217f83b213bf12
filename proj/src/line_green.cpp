#include "fracgreen/line_green.hpp"

#include "fracgreen/mittag_leffler.hpp"
#include "fracgreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracgreen {

namespace {

// 1 + cos(pi alpha/2) = 2 cos^2(pi alpha/4) = 2 sin^2(pi (2-alpha)/4),
// evaluated so no precision is lost as alpha -> 2 where the denominator
// minimum collapses to (t^alpha - c)^2.
double one_plus_cos_theta(double alpha) {
    const double s = sin_pi(0.25 * (2.0 - alpha));
    return 2.0 * s * s;
}

} // namespace

double h_laplace_kernel(const KernelParams& params, double y, double p,
                        const QuadratureConfig& cfg, double* err_out) {
    cfg.check();
    const double alpha = params.alpha;
    const double c = params.c;
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw OutOfDomainError("h_laplace_kernel: alpha in (0, 2) required");
    if (!(y > 0.0)) throw OutOfDomainError("h_laplace_kernel: y > 0 required");
    if (p < -1.0) throw OutOfDomainError("h_laplace_kernel: p >= -1 required");

    const double s = sin_pi(0.5 * alpha);
    const double opc = one_plus_cos_theta(alpha);
    auto integrand = [&](double t) {
        const double ta = std::pow(t, alpha);
        const double d = ta - c;
        const double den = d * d + 2.0 * c * ta * opc;
        return std::exp(-t * y) * std::pow(t, alpha + p) / den;
    };

    const double split = (cfg.split_policy == QuadratureConfig::SplitPolicy::AtPeak)
                             ? std::pow(c, 1.0 / alpha)
                             : cfg.fixed_split;
    const double qtol = cfg.abs_tol * pi / std::max(s, 1e-8) / 4.0;

    quad::QuadResult a = quad::tanh_sinh(integrand, 0.0, split, qtol);
    quad::QuadResult b = quad::tanh_sinh(integrand, split, 2.0 * split, qtol);
    const double seg0 = std::max(2.0 * split, 4.0 / y);
    quad::QuadResult tail = quad::integrate_decaying(integrand, 2.0 * split, seg0, qtol,
                                                     96);
    if (!tail.converged || !a.converged || !b.converged)
        throw InstabilityError("h_laplace_kernel: quadrature failed to converge");

    const double pref = s / pi;
    if (err_out) *err_out += pref * (a.error + b.error + tail.error);
    return pref * (a.value + b.value + tail.value);
}

GreenValue h_eval(const KernelParams& params, double x, const QuadratureConfig& cfg) {
    if (!(params.c > 0.0)) throw OutOfDomainError("h_eval: c > 0 required");
    if (!(x > 0.0)) throw OutOfDomainError("h_eval: x > 0 required");
    if (params.is_alpha_two()) return h_closed_alpha2(params.c, x);
    if (!(params.alpha > 0.0) || params.alpha > 2.0)
        throw OutOfDomainError("h_eval: alpha in (0, 2] required");

    GreenValue out;
    out.method = Method::Periodized; // building block of the periodization route
    out.rigorous = false;
    double err = 0.0;
    out.value = h_laplace_kernel(params, x, 0.0, cfg, &err);
    out.error_bound = err;
    return out;
}

GreenValue h_closed_alpha2(double c, double x) {
    if (!(c > 0.0)) throw OutOfDomainError("h_closed_alpha2: c > 0 required");
    if (!(x >= 0.0)) throw OutOfDomainError("h_closed_alpha2: x >= 0 required");
    const double rc = std::sqrt(c);
    GreenValue out;
    out.value = std::exp(-rc * x) / (2.0 * rc);
    out.error_bound = 4.0 * std::numeric_limits<double>::epsilon() * out.value;
    out.method = Method::ClosedForm2;
    out.rigorous = true;
    return out;
}

double h_deriv(const KernelParams& params, double x, int p, const QuadratureConfig& cfg) {
    if (p < 0 || p > h_deriv_p_max) {
        std::ostringstream os;
        os << "h_deriv: derivative order p = " << p << " outside [0, " << h_deriv_p_max << "]";
        throw OutOfDomainError(os.str());
    }
    if (params.is_alpha_two()) {
        // H_2^{(p)}(x) = (-1)^p c^{(p-1)/2} e^{-sqrt c x} / 2
        const double rc = std::sqrt(params.c);
        const double mag = 0.5 * std::pow(rc, p - 1) * std::exp(-rc * x);
        return (p % 2 == 0) ? mag : -mag;
    }
    const double mag = h_laplace_kernel(params, x, static_cast<double>(p), cfg);
    return (p % 2 == 0) ? mag : -mag;
}

double x_alpha_density(const XAlphaLaw& law, double t) {
    law.check();
    if (!(t > 0.0)) throw OutOfDomainError("x_alpha_density: t > 0 required");
    const double alpha = law.alpha;
    const double s = sin_pi(0.5 * alpha);
    const double opc = one_plus_cos_theta(alpha);
    const double ta = std::pow(t, alpha);
    const double d = ta - 1.0;
    const double den = d * d + 2.0 * ta * opc;
    return (2.0 * s / pi) * std::pow(t, alpha - 1.0) / den;
}

double x_alpha_cdf(const XAlphaLaw& law, double t) {
    law.check();
    if (!(t > 0.0)) throw OutOfDomainError("x_alpha_cdf: t > 0 required");
    const double alpha = law.alpha;
    const double th = 0.5 * pi * alpha;
    const double s = sin_pi(0.5 * alpha);
    const double co = std::cos(th);
    const double u = std::pow(t, alpha);
    return (2.0 / (pi * alpha)) * (std::atan((u + co) / s) - (0.5 * pi - th));
}

} // namespace fracgreen
