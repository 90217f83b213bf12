#include "fracgreen/periodic_green.hpp"

#include "fracgreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracgreen {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fold to [0, pi] using evenness and 2pi-periodicity; remainder is exact.
double fold_x(double x) {
    const double r = std::remainder(x, 2.0 * pi);
    return std::fabs(r);
}

double series_coeff(double alpha, double c, long n) {
    return 1.0 / (c + std::pow(static_cast<double>(n), alpha));
}

// ---------------------------------------------------------------------------
// Rigorous truncation bounds for the G series (already divided by pi, i.e.
// expressed as a bound on the error of G itself).
// ---------------------------------------------------------------------------

// Abel/Dirichlet-kernel bound for the plain partial sum through n = N.
double abel_bound(double alpha, double c, double x, long N) {
    const double s = std::sin(0.5 * x);
    if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / (pi * s * (c + std::pow(static_cast<double>(N), alpha)));
}

// Comparison bound sum_{n>N} n^{-alpha} <= N^{1-alpha}/(alpha-1), alpha > 1.
double comparison_bound(double alpha, double x, long N) {
    (void)x;
    if (!(alpha > 1.0)) return std::numeric_limits<double>::infinity();
    return std::pow(static_cast<double>(N), 1.0 - alpha) / (pi * (alpha - 1.0));
}

// Summation-by-parts remainder after extracting both Dirichlet-kernel
// boundary terms exactly; requires convexity of n -> 1/(c+n^alpha) past N.
double sbp_bound(double alpha, double c, double x, long N) {
    const double s = std::sin(0.5 * x);
    if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
    const double d1 = series_coeff(alpha, c, N + 1) - series_coeff(alpha, c, N + 2);
    return d1 * (1.0 + std::fabs(std::cos(x))) / (4.0 * s * s) / pi;
}

// First index from which 1/(c+n^alpha) is convex in n.
long convexity_start(double alpha, double c) {
    if (alpha <= 1.0) return 1;
    return static_cast<long>(std::ceil(std::pow(c * (alpha - 1.0) / (alpha + 1.0), 1.0 / alpha))) + 1;
}

struct SeriesPlan {
    long n_terms = 0;
    bool use_sbp = false;
};

// Smallest N whose rigorous bound meets tol; throws when the cap is hit.
SeriesPlan plan_series(const KernelParams& p, double x, const SeriesConfig& cfg) {
    const bool sbp_allowed =
        cfg.acceleration == SeriesConfig::Acceleration::AbelPairing && x > 0.0;
    auto best_bound = [&](long N) {
        double b = abel_bound(p.alpha, p.c, x, N);
        b = std::min(b, comparison_bound(p.alpha, x, N));
        if (sbp_allowed && N >= convexity_start(p.alpha, p.c))
            b = std::min(b, sbp_bound(p.alpha, p.c, x, N));
        return b;
    };
    long lo = 16, hi = 16;
    while (best_bound(hi) > cfg.target_abs_tol) {
        lo = hi;
        hi *= 2;
        if (hi > cfg.max_terms) {
            if (best_bound(cfg.max_terms) <= cfg.target_abs_tol) {
                hi = cfg.max_terms;
                break;
            }
            std::ostringstream os;
            os << "g_series: truncation index exceeds max_terms = " << cfg.max_terms
               << " for x = " << x << ", tol = " << cfg.target_abs_tol;
            throw ToleranceError(os.str());
        }
    }
    while (lo < hi) { // first N with bound <= tol
        const long mid = lo + (hi - lo) / 2;
        if (best_bound(mid) <= cfg.target_abs_tol)
            hi = mid;
        else
            lo = mid + 1;
    }
    SeriesPlan plan;
    plan.n_terms = hi;
    plan.use_sbp = sbp_allowed && hi >= convexity_start(p.alpha, p.c) &&
                   sbp_bound(p.alpha, p.c, x, hi) <=
                       std::min(abel_bound(p.alpha, p.c, x, hi), comparison_bound(p.alpha, x, hi));
    return plan;
}

struct SeriesSum {
    double value = 0.0;       // G itself
    double bound = 0.0;       // rigorous truncation + rounding bound
    long terms = 0;
};

// Kahan-compensated sum of cos(n x)/(c+n^alpha) with a rotation recurrence
// for cos(n x), resynchronized from libm every 1024 steps.
SeriesSum sum_series(const KernelParams& p, double x, const SeriesConfig& cfg,
                     std::vector<double>* table) {
    SeriesSum out;
    const SeriesPlan plan = plan_series(p, x, cfg);
    const long N = plan.n_terms;
    if (table && static_cast<long>(table->size()) < N + 2) {
        const std::size_t old = table->size();
        table->resize(static_cast<std::size_t>(N + 2));
        for (std::size_t i = old; i < table->size(); ++i)
            (*table)[i] = series_coeff(p.alpha, p.c, static_cast<long>(i) + 1);
    }
    auto coeff = [&](long n) {
        return table ? (*table)[static_cast<std::size_t>(n - 1)] : series_coeff(p.alpha, p.c, n);
    };

    double sum = 0.0, comp = 0.0, abs_sum = 0.0;
    const double cx = std::cos(x), sx = std::sin(x);
    double cn = 1.0, sn = 0.0; // cos(n x), sin(n x) at n = 0
    for (long n = 1; n <= N; ++n) {
        if ((n & 1023) == 1) {
            cn = std::cos((n - 1) * x);
            sn = std::sin((n - 1) * x);
        }
        const double cnext = cn * cx - sn * sx;
        sn = sn * cx + cn * sx;
        cn = cnext;
        const double term = coeff(n) * cn;
        const double t = sum + term;
        comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        abs_sum += std::fabs(term);
    }
    double total = sum + comp;

    double trunc_bound;
    if (plan.use_sbp) {
        // exact boundary terms of two summation-by-parts passes
        const double sh = std::sin(0.5 * x);
        const double a1 = coeff(N + 1), a2 = coeff(N + 2);
        const double dstar = std::sin((N + 0.5) * x) / (2.0 * sh);
        const double tker = (std::cos(x) - std::cos((N + 1) * x)) / (4.0 * sh * sh);
        total += -a1 * dstar - (a1 - a2) * tker;
        abs_sum += std::fabs(a1 * dstar) + std::fabs((a1 - a2) * tker);
        trunc_bound = sbp_bound(p.alpha, p.c, x, N);
    } else {
        trunc_bound = std::min(abel_bound(p.alpha, p.c, x, N), comparison_bound(p.alpha, x, N));
    }

    out.value = (0.5 / p.c + total) / pi;
    // rounding slop: compensated summation plus the resynchronized rotation
    const double rounding = (8.0 * kEps * abs_sum + 1030.0 * kEps * abs_sum * 1e-2) / pi;
    out.bound = trunc_bound + rounding + 4.0 * kEps * std::fabs(out.value);
    out.terms = N;
    return out;
}

// ---------------------------------------------------------------------------
// Periodization machinery shared by g_periodized and g_deriv.
// k_p(y) = h_laplace_kernel(y, p) decays like y^{-(1+alpha+p)}; images are
// summed until the Euler-Maclaurin remainder estimate is small, then the
// integral term and the f'/24 correction are added.
// ---------------------------------------------------------------------------

struct PeriodizeResult {
    double value = 0.0;
    double error = 0.0; // estimated
};

PeriodizeResult periodize_images(const KernelParams& p, double x, int order, double sign_near,
                                 double tol, const QuadratureConfig& qcfg) {
    PeriodizeResult out;
    double quad_err = 0.0;
    const double q = 1.0 + p.alpha + order;
    const double em_c = (7.0 / 5760.0) * std::pow(2.0 * pi, 3) * q * (q + 1.0) * (q + 2.0);
    const int m_cap = 400;
    double k_near = 0.0, k_far = 0.0;
    int M = 0;
    for (;; ++M) {
        if (M > m_cap) throw ToleranceError("g_periodized: image count cap exceeded");
        k_near = h_laplace_kernel(p, x + 2.0 * pi * M, order, qcfg, &quad_err);
        k_far = h_laplace_kernel(p, 2.0 * pi * (M + 1) - x, order, qcfg, &quad_err);
        out.value += sign_near * k_near + k_far;
        const double y1 = x + 2.0 * pi * (M + 0.5);
        const double y2 = 2.0 * pi * (M + 1.5) - x;
        const double em_est = em_c * (k_near / std::pow(y1, 3) + k_far / std::pow(y2, 3));
        if (M >= 1 && em_est <= 0.25 * tol) {
            out.error += em_est;
            break;
        }
    }
    const double y1 = x + 2.0 * pi * (M + 0.5);
    const double y2 = 2.0 * pi * (M + 1.5) - x;
    // integral term: int_{M+1/2}^inf f(s) ds = (1/2pi)[sign Kbar(y1) + Kbar(y2)]
    const double kbar1 = h_laplace_kernel(p, y1, order - 1.0, qcfg, &quad_err);
    const double kbar2 = h_laplace_kernel(p, y2, order - 1.0, qcfg, &quad_err);
    // derivative term: f'(M+1/2)/24, with k' = -k_{order+1}
    const double kp1 = h_laplace_kernel(p, y1, order + 1.0, qcfg, &quad_err);
    const double kp2 = h_laplace_kernel(p, y2, order + 1.0, qcfg, &quad_err);
    const double tail = (sign_near * kbar1 + kbar2) / (2.0 * pi) -
                        (2.0 * pi) * (sign_near * kp1 + kp2) / 24.0;
    out.value += tail;
    out.error += quad_err;
    return out;
}

// Stable Poisson-type kernel (1-e^{-2t}) / (1 - 2 cos x e^{-t} + e^{-2t}).
double poisson_kernel(double x, double t) {
    const double em = -std::expm1(-t);  // 1 - e^{-t}
    const double e = std::exp(-t);
    const double den = em * em + 2.0 * e * (1.0 - std::cos(x));
    return -std::expm1(-2.0 * t) / den;
}

} // namespace

GreenValue g_series(const KernelParams& params, double x, const SeriesConfig& cfg) {
    cfg.check();
    validate(params, Method::Series);
    const double xf = fold_x(x);
    if (xf == 0.0 && params.alpha <= 1.0)
        throw DivergentError("Divergent: G(0) undefined for alpha <= 1");

    SeriesSum s = sum_series(params, xf, cfg, nullptr);
    GreenValue out;
    out.value = s.value;
    out.error_bound = s.bound;
    out.method = Method::Series;
    out.rigorous = true;
    return out;
}

GreenValue g_periodized(const KernelParams& params, double x, double tol) {
    validate(params, Method::Periodized);
    const double xf = fold_x(x);
    if (!(xf > 0.0)) throw OutOfDomainError("g_periodized: x in (0, pi] required");
    if (!(tol > 0.0)) throw OutOfDomainError("g_periodized: tol > 0 required");

    GreenValue out;
    out.method = Method::Periodized;
    if (params.is_alpha_two()) {
        // exact geometric image sum of H_2(y) = e^{-sqrt c y}/(2 sqrt c)
        const double rc = std::sqrt(params.c);
        out.value = (std::exp(-rc * xf) + std::exp(-rc * (2.0 * pi - xf))) /
                    (2.0 * rc * (-std::expm1(-2.0 * pi * rc)));
        out.error_bound = 8.0 * kEps * out.value;
        out.rigorous = true;
        return out;
    }
    QuadratureConfig qcfg;
    qcfg.abs_tol = tol / 64.0;
    PeriodizeResult r = periodize_images(params, xf, 0, +1.0, tol, qcfg);
    out.value = r.value;
    out.error_bound = r.error;
    out.rigorous = false;
    return out;
}

GreenValue g_ml(const KernelParams& params, double x, double tol) {
    validate(params, Method::MlIntegral);
    const double xf = fold_x(x);
    if (!(xf > 0.0) || !(xf < pi)) throw OutOfDomainError("g_ml: x in (0, pi) required");
    if (!(tol > 0.0)) throw OutOfDomainError("g_ml: tol > 0 required");

    const double alpha = params.alpha, c = params.c;
    MlRegimeConfig mlcfg;
    mlcfg.target_abs_tol = std::max(1e-13, tol * 1e-4);
    const double T = 32.0; // kernel is 1 to ~2e-14 beyond this

    auto f = [&](double t) {
        const double d = std::pow(t, alpha - 1.0) * ml_eval(alpha, alpha, -c * std::pow(t, alpha), mlcfg);
        return poisson_kernel(xf, t) * d;
    };
    const double qtol = tol * 2.0 * pi / 4.0;
    quad::QuadResult head = quad::tanh_sinh(f, 0.0, 1.0, 0.5 * qtol, 10);
    quad::QuadResult mid = quad::adaptive_gk(f, 1.0, T, 0.5 * qtol);
    if (!head.converged || !mid.converged)
        throw InstabilityError("g_ml: quadrature failed to converge");

    const double tail_mass = y_survival(alpha, c, T, mlcfg) / c; // exact identity
    // per-point Mittag-Leffler certification integrates against t^{alpha-1}
    const double ml_slop = mlcfg.target_abs_tol * std::pow(T, alpha) / alpha * 4.0;

    GreenValue out;
    out.value = (head.value + mid.value + tail_mass) / (2.0 * pi);
    out.error_bound =
        (head.error + mid.error + ml_slop + 3e-14 * std::fabs(tail_mass)) / (2.0 * pi);
    out.method = Method::MlIntegral;
    out.rigorous = false;
    return out;
}

GreenValue g_closed_alpha2(double c, double x) {
    if (!(c > 0.0)) throw OutOfDomainError("g_closed_alpha2: c > 0 required");
    const double xf = fold_x(x);
    const double rc = std::sqrt(c);
    GreenValue out;
    // overflow-free form of cosh(sqrt c (pi-x)) / (2 sqrt c sinh(sqrt c pi))
    out.value = (std::exp(-rc * xf) + std::exp(-rc * (2.0 * pi - xf))) /
                (2.0 * rc * (-std::expm1(-2.0 * pi * rc)));
    out.error_bound = 8.0 * kEps * out.value;
    out.method = Method::ClosedForm2;
    out.rigorous = true;
    return out;
}

double g_deriv(const KernelParams& params, double x, int p, double tol) {
    validate(params, Method::Periodized);
    const double xf = fold_x(x);
    if (!(xf > 0.0) || !(xf < pi)) throw OutOfDomainError("g_deriv: x in (0, pi) required");
    if (p < 1 || p > g_deriv_p_max) {
        std::ostringstream os;
        os << "g_deriv: order p = " << p << " outside [1, " << g_deriv_p_max << "]";
        throw OutOfDomainError(os.str());
    }
    if (!(tol > 0.0)) throw OutOfDomainError("g_deriv: tol > 0 required");

    if (params.is_alpha_two()) {
        const double rc = std::sqrt(params.c);
        const double g = g_closed_alpha2(params.c, xf).value;
        if (p % 2 == 0) return std::pow(params.c, p / 2) * g;
        // odd: c^k G'(x) with G'(x) = -sinh(sqrt c (pi-x)) / (2 sinh(sqrt c pi))
        const double gp = -(std::exp(-rc * xf) - std::exp(-rc * (2.0 * pi - xf))) /
                          (2.0 * (-std::expm1(-2.0 * pi * rc)));
        return std::pow(params.c, (p - 1) / 2) * gp;
    }

    QuadratureConfig qcfg;
    qcfg.abs_tol = tol / 64.0;
    const double sign_near = (p % 2 == 0) ? 1.0 : -1.0;
    // F_n^{(p)} = (-1)^p k_p(x+2n pi) + k_p(2(n+1)pi-x); the image sum with
    // sign_near already carries the parity, so the result is direct.
    return periodize_images(params, xf, p, sign_near, tol, qcfg).value;
}

double g_prime_ml(const KernelParams& params, double x, double tol) {
    if (!(params.alpha > 0.0) || !(params.alpha < 2.0))
        throw OutOfDomainError("g_prime_ml: alpha in (0, 2) required");
    if (!(params.c > 0.0)) throw OutOfDomainError("g_prime_ml: c > 0 required");
    const double xf = fold_x(x);
    if (!(xf > 0.0) || xf > pi) throw OutOfDomainError("g_prime_ml: x in (0, pi] required");
    if (xf == pi) return 0.0; // sin(pi) prefactor: structural zero

    const double alpha = params.alpha, c = params.c;
    MlRegimeConfig mlcfg;
    mlcfg.target_abs_tol = std::max(1e-13, tol * 1e-4);
    auto f = [&](double t) {
        const double em = -std::expm1(-t);
        const double e = std::exp(-t);
        const double den = em * em + 2.0 * e * (1.0 - std::cos(xf));
        const double kernel = e * std::expm1(-2.0 * t) / (den * den); // e^{-3t}-e^{-t}
        return kernel * std::pow(t, alpha - 1.0) *
               ml_eval(alpha, alpha, -c * std::pow(t, alpha), mlcfg);
    };
    const double qtol = tol * pi / std::sin(xf) / 4.0;
    quad::QuadResult head = quad::tanh_sinh(f, 0.0, 1.0, 0.5 * qtol, 10);
    quad::QuadResult rest = quad::adaptive_gk(f, 1.0, 40.0, 0.5 * qtol);
    if (!head.converged || !rest.converged)
        throw InstabilityError("g_prime_ml: quadrature failed to converge");
    return std::sin(xf) / pi * (head.value + rest.value);
}

GreenValue g_eval(const KernelParams& params, double x, std::optional<Method> method,
                  double tol) {
    if (!(tol > 0.0)) throw OutOfDomainError("g_eval: tol > 0 required");
    SeriesConfig scfg;
    scfg.target_abs_tol = tol;
    if (method) {
        switch (*method) {
            case Method::Series: return g_series(params, x, scfg);
            case Method::Periodized: return g_periodized(params, x, tol);
            case Method::MlIntegral: return g_ml(params, x, tol);
            case Method::ClosedForm2:
                validate(params, Method::ClosedForm2);
                return g_closed_alpha2(params.c, x);
            case Method::McJtp:
            case Method::McPoisson:
                throw OutOfDomainError("g_eval: Monte Carlo estimators are driven through "
                                       "the mc interface, not g_eval");
        }
    }
    if (params.is_alpha_two()) return g_closed_alpha2(params.c, x);
    validate(params, Method::Series);
    if (params.alpha < 2.0) {
        try {
            return g_series(params, x, scfg);
        } catch (const ToleranceError&) {
            return g_periodized(params, x, tol); // series cap hit: small x, alpha <= 1
        }
    }
    return g_series(params, x, scfg); // alpha in (2, 4]
}

SeriesEvaluator::SeriesEvaluator(const KernelParams& params, SeriesConfig cfg)
    : params_(params), cfg_(cfg) {
    cfg_.check();
    validate(params_, Method::Series);
}

GreenValue SeriesEvaluator::eval(double x) const {
    const double xf = fold_x(x);
    if (xf == 0.0 && params_.alpha <= 1.0)
        throw DivergentError("Divergent: G(0) undefined for alpha <= 1");
    SeriesSum s = sum_series(params_, xf, cfg_, &table_);
    GreenValue out;
    out.value = s.value;
    out.error_bound = s.bound;
    out.method = Method::Series;
    out.rigorous = true;
    return out;
}

} // namespace fracgreen
