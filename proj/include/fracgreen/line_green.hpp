#ifndef FRACGREEN_LINE_GREEN_HPP
#define FRACGREEN_LINE_GREEN_HPP

// Non-periodic Green function H_{alpha,c} on (0,infinity) through its
// completely monotone Laplace representation, the alpha = 2 closed form,
// and the X_alpha factorization ingredients.

#include "fracgreen/core.hpp"

namespace fracgreen {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    int max_subdivisions = 2000;
    enum class SplitPolicy { AtPeak, Fixed };
    SplitPolicy split_policy = SplitPolicy::AtPeak;
    double fixed_split = 1.0; // used when split_policy == Fixed

    void check() const {
        if (!(abs_tol > 0.0)) throw OutOfDomainError("QuadratureConfig: abs_tol > 0");
        if (max_subdivisions < 8) throw OutOfDomainError("QuadratureConfig: max_subdivisions >= 8");
    }
};

// Workhorse behind H and its derivatives:
//   (sin(pi alpha/2)/pi) * int_0^inf e^{-t y} t^{alpha+p}
//       / (c^2 + 2 c cos(pi alpha/2) t^alpha + t^{2 alpha}) dt
// for alpha in (0,2), y > 0 and real p >= -1. p = 0 gives H(y), integer
// p >= 1 the magnitude of the p-th derivative, p = -1 the remaining mass
// int_y^inf H(u) du. The semi-infinite range is split at the denominator's
// near-minimum t* = c^{1/alpha}, where a sharp spike forms as alpha -> 2,
// and handled with tanh-sinh panels plus a segment-doubled tail.
// The estimated absolute error is accumulated into *err_out when non-null.
double h_laplace_kernel(const KernelParams& params, double y, double p,
                        const QuadratureConfig& cfg, double* err_out = nullptr);

// H_{alpha,c}(x) for alpha in (0,2]; alpha = 2 routes to the closed form.
GreenValue h_eval(const KernelParams& params, double x, const QuadratureConfig& cfg = {});

// H_{2,c}(x) = (1/(2 sqrt c)) e^{-sqrt(c) x}.
GreenValue h_closed_alpha2(double c, double x);

// p-th derivative of H, sign (-1)^p, for p = 0..8.
double h_deriv(const KernelParams& params, double x, int p, const QuadratureConfig& cfg = {});

inline constexpr int h_deriv_p_max = 8;

// Law of X_alpha from the factorization c H_{alpha,c} = density of
// c^{-1/alpha} E x X_alpha. At alpha = 2 the law is the point mass at 1.
struct XAlphaLaw {
    double alpha = 1.0;

    void check() const {
        if (!(alpha > 0.0) || !(alpha < 2.0))
            throw OutOfDomainError("XAlphaLaw: density/cdf need alpha in (0, 2)");
    }
};

// density (2 sin(pi alpha/2)/pi) t^{alpha-1} / (1 + 2 cos(pi alpha/2) t^alpha + t^{2 alpha})
double x_alpha_density(const XAlphaLaw& law, double t);

// closed-form antiderivative via u = t^alpha:
//   (2/(pi alpha)) [ arctan((t^alpha + cos th)/sin th) - (pi/2 - th) ],  th = pi alpha/2
double x_alpha_cdf(const XAlphaLaw& law, double t);

} // namespace fracgreen

#endif
