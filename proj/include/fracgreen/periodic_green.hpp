#ifndef FRACGREEN_PERIODIC_GREEN_HPP
#define FRACGREEN_PERIODIC_GREEN_HPP

// G_{alpha,c} on (0, pi] through four deterministic routes: direct Fourier
// series with a rigorous Abel/Dirichlet tail bound, periodized line kernel,
// Mittag-Leffler integral, and the alpha = 2 closed form; plus derivatives
// of sampled order.

#include "fracgreen/core.hpp"
#include "fracgreen/line_green.hpp"
#include "fracgreen/mittag_leffler.hpp"

#include <optional>
#include <vector>

namespace fracgreen {

struct SeriesConfig {
    double target_abs_tol = 1e-8;
    long max_terms = 1000000;
    enum class Acceleration { None, AbelPairing };
    Acceleration acceleration = Acceleration::AbelPairing;

    void check() const {
        if (!(target_abs_tol > 0.0)) throw OutOfDomainError("SeriesConfig: target_abs_tol > 0");
        if (max_terms < 16) throw OutOfDomainError("SeriesConfig: max_terms >= 16");
    }
};

// Direct series (1/2pi)[1/c + 2 sum cos(nx)/(c+n^alpha)], alpha in (0,4].
// The reported error_bound is rigorous: the Abel/Dirichlet-kernel tail bound
// for plain summation, or the summation-by-parts remainder bound when
// acceleration is AbelPairing (boundary terms are then added exactly).
// x is folded into [0, pi] by evenness and 2pi-periodicity; x = 0 requires
// alpha > 1 (the series diverges there otherwise).
GreenValue g_series(const KernelParams& params, double x, const SeriesConfig& cfg = {});

// Periodization sum_{n>=0} [H(x+2pi n) + H(2pi(n+1)-x)] with an
// Euler-Maclaurin tail correction; alpha in (0,2], x in (0, pi].
GreenValue g_periodized(const KernelParams& params, double x, double tol = 1e-8);

// Mittag-Leffler integral representation, alpha in (0,2], x in (0, pi).
// The integral is cut at T where the Poisson-type kernel is 1 to machine
// precision; the remaining mass is added exactly via E_{alpha,1}.
GreenValue g_ml(const KernelParams& params, double x, double tol = 1e-8);

// G_{2,c}(x) = cosh(sqrt(c)(pi-x)) / (2 sqrt(c) sinh(sqrt(c) pi)), x in [0, pi].
GreenValue g_closed_alpha2(double c, double x);

// p-th derivative of G for p = 1..8, alpha in (0,2], x in (0,pi).
// Sign satisfies (-1)^p g_deriv > 0.
double g_deriv(const KernelParams& params, double x, int p, double tol = 1e-8);

inline constexpr int g_deriv_p_max = 8;

// G'(x) by the dedicated integral formula
//   (sin x/pi) int_0^inf (e^{-3t}-e^{-t}) / (1-2cos(x)e^{-t}+e^{-2t})^2
//        t^{alpha-1} E_{alpha,alpha}(-c t^alpha) dt,
// alpha in (0,2), x in (0, pi]. Exactly 0 at x = pi.
double g_prime_ml(const KernelParams& params, double x, double tol = 1e-8);

// Dispatcher. Default routing: alpha = 2 -> closed form; alpha in (0,2) ->
// Series, falling back to Periodized when the series term cap is hit;
// alpha in (2,4] -> Series only.
GreenValue g_eval(const KernelParams& params, double x,
                  std::optional<Method> method = std::nullopt, double tol = 1e-8);

// Repeated series evaluation with shared coefficient table 1/(c+n^alpha);
// used by grid sweeps (zero scan, tabulation).
class SeriesEvaluator {
  public:
    SeriesEvaluator(const KernelParams& params, SeriesConfig cfg);
    GreenValue eval(double x) const;
    const KernelParams& params() const { return params_; }

  private:
    double coeff(long n) const;
    KernelParams params_;
    SeriesConfig cfg_;
    mutable std::vector<double> table_;
};

} // namespace fracgreen

#endif
