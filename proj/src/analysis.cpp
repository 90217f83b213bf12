#include "fracgreen/analysis.hpp"

#include "fracgreen/line_green.hpp"
#include "fracgreen/periodic_green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracgreen {

namespace {

std::string witness(double x, double value, const char* what) {
    std::ostringstream os;
    os << what << " at x = " << x << " (value " << value << ")";
    return os.str();
}

double g_deriv_any(const KernelParams& params, double x, int p, double tol) {
    if (p == 0) return g_eval(params, x, std::nullopt, tol).value;
    return g_deriv(params, x, p, tol);
}

} // namespace

const char* property_name(Property p) noexcept {
    switch (p) {
        case Property::Positivity: return "Positivity";
        case Property::MonotoneDecrease: return "MonotoneDecrease";
        case Property::CompleteMonotonicity: return "CompleteMonotonicity";
        case Property::BoundaryDerivativeZero: return "BoundaryDerivativeZero";
        case Property::CrossMethodConsistency: return "CrossMethodConsistency";
        case Property::Normalization: return "Normalization";
        case Property::HFactorization: return "HFactorization";
        case Property::ZeroScan: return "ZeroScan";
    }
    return "Unknown";
}

PropertyReport check_complete_monotonicity(const KernelParams& params, const Grid& grid,
                                           int p_max, double tol) {
    if (p_max < 0 || p_max > g_deriv_p_max)
        throw OutOfDomainError("check_complete_monotonicity: p_max in [0, 8] required");
    validate(params, Method::Periodized); // alpha in (0, 2]
    grid.validate();

    PropertyReport rep;
    rep.property = Property::CompleteMonotonicity;
    rep.params = params;
    rep.grid = grid;
    rep.p_max = p_max;
    rep.threshold = 0.0;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= p_max; ++p) {
        for (double x : grid.points) {
            if (!(x < pi)) continue; // derivatives need the open interval
            const double v = g_deriv_any(params, x, p, tol);
            const double signed_v = (p % 2 == 0) ? v : -v;
            const double margin = (v != 0.0) ? signed_v / std::fabs(v) : 0.0;
            rep.details.push_back({x, v, margin, "p=" + std::to_string(p)});
            if (margin < rep.worst_margin) rep.worst_margin = margin;
            if (!(margin > rep.threshold)) {
                rep.pass = false;
                if (rep.failure.empty())
                    rep.failure = witness(x, v, ("sign violation at p=" + std::to_string(p)).c_str());
            }
        }
    }
    return rep;
}

PropertyReport check_unimodality(const KernelParams& params, const Grid& grid, double tol) {
    validate(params, Method::Periodized);
    grid.validate();

    PropertyReport rep;
    rep.property = Property::MonotoneDecrease;
    rep.params = params;
    rep.grid = grid;
    rep.threshold = 0.0;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();

    std::vector<GreenValue> vals;
    vals.reserve(grid.points.size());
    for (double x : grid.points) vals.push_back(g_eval(params, x, std::nullopt, tol));

    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double positive_margin = vals[i].value - vals[i].error_bound;
        if (positive_margin < rep.worst_margin) rep.worst_margin = positive_margin;
        if (!(positive_margin > 0.0)) {
            rep.pass = false;
            if (rep.failure.empty())
                rep.failure = witness(grid.points[i], vals[i].value, "positivity violation");
        }
        rep.details.push_back({grid.points[i], vals[i].value, positive_margin, "positivity"});
    }
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        const double decrease = vals[i].value - vals[i + 1].value;
        const double combined = vals[i].error_bound + vals[i + 1].error_bound;
        std::string note = "decrease";
        if (decrease > combined) {
            // certified strict decrease
        } else if (decrease >= -combined) {
            note = "inconclusive within error bounds";
        } else {
            rep.pass = false;
            if (rep.failure.empty())
                rep.failure = witness(grid.points[i + 1], vals[i + 1].value, "increase beyond bounds");
        }
        if (decrease < rep.worst_margin) rep.worst_margin = decrease;
        rep.details.push_back({grid.points[i + 1], vals[i + 1].value, decrease, note});
    }
    return rep;
}

PropertyReport check_boundary_derivative(const KernelParams& params,
                                         const std::vector<double>& epsilons, double tol) {
    validate(params, Method::Periodized);
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || !(epsilons[i] < 0.5))
            throw OutOfDomainError("check_boundary_derivative: epsilons in (0, 0.5) required");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw OutOfDomainError("check_boundary_derivative: epsilons must decrease");
    }

    PropertyReport rep;
    rep.property = Property::BoundaryDerivativeZero;
    rep.params = params;
    rep.threshold = 0.0;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();

    // structural zero at x = pi
    double at_pi;
    if (params.is_alpha_two()) {
        at_pi = -std::sinh(0.0) / (2.0 * std::sinh(std::sqrt(params.c) * pi)); // exactly 0
    } else {
        at_pi = g_prime_ml(params, pi, tol);
    }
    rep.details.push_back({pi, at_pi, at_pi == 0.0 ? 1.0 : -1.0, "G'(pi)"});
    if (at_pi != 0.0) {
        rep.pass = false;
        rep.failure = witness(pi, at_pi, "G'(pi) not exactly zero");
    }

    double prev = std::numeric_limits<double>::infinity();
    for (double eps : epsilons) {
        const double d = std::fabs(g_deriv(params, pi - eps, 1, tol));
        const double margin = prev - d;
        rep.details.push_back({eps, d, margin, "|G'(pi-eps)|"});
        if (margin < rep.worst_margin) rep.worst_margin = margin;
        if (!(d < prev)) {
            rep.pass = false;
            if (rep.failure.empty())
                rep.failure = witness(eps, d, "|G'(pi-eps)| failed to decrease");
        }
        prev = d;
    }
    return rep;
}

PropertyReport check_cross_method(const KernelParams& params, const Grid& grid, double tol) {
    validate(params, Method::Periodized);
    grid.validate();

    PropertyReport rep;
    rep.property = Property::CrossMethodConsistency;
    rep.params = params;
    rep.grid = grid;
    rep.threshold = tol;
    rep.pass = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();

    SeriesConfig scfg;
    scfg.target_abs_tol = std::min(1e-8, tol * 0.01);
    const double mtol = std::min(1e-8, tol * 0.01);

    struct Entry {
        Method m;
        GreenValue v;
    };
    int disagreements[4] = {0, 0, 0, 0};
    Method names[4] = {Method::Series, Method::Periodized, Method::MlIntegral,
                       Method::ClosedForm2};

    for (double x : grid.points) {
        std::vector<Entry> vals;
        vals.push_back({Method::Series, g_series(params, x, scfg)});
        vals.push_back({Method::Periodized, g_periodized(params, x, mtol)});
        if (x < pi) vals.push_back({Method::MlIntegral, g_ml(params, x, mtol)});
        if (params.is_alpha_two()) vals.push_back({Method::ClosedForm2, g_closed_alpha2(params.c, x)});

        for (std::size_t i = 0; i < vals.size(); ++i) {
            for (std::size_t j = i + 1; j < vals.size(); ++j) {
                const double diff = std::fabs(vals[i].v.value - vals[j].v.value);
                const double budget =
                    std::max(vals[i].v.error_bound + vals[j].v.error_bound, 1e-12);
                const double margin = tol - diff;
                std::ostringstream note;
                note << method_name(vals[i].m) << " vs " << method_name(vals[j].m);
                rep.details.push_back({x, diff, margin, note.str()});
                if (margin < rep.worst_margin) rep.worst_margin = margin;
                if (diff > budget || diff > tol) {
                    rep.pass = false;
                    for (int k = 0; k < 4; ++k) {
                        if (names[k] == vals[i].m || names[k] == vals[j].m) ++disagreements[k];
                    }
                    if (rep.failure.empty()) rep.failure = witness(x, diff, note.str().c_str());
                }
            }
        }
    }
    if (!rep.pass) {
        // three-way vote: the method implicated in the most failing pairs
        int best = 0;
        for (int k = 1; k < 4; ++k)
            if (disagreements[k] > disagreements[best]) best = k;
        rep.failure += std::string("; disagreeing minority method: ") + method_name(names[best]);
    }
    return rep;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 2) throw OutOfDomainError("ks_statistic: need at least 2 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

PropertyReport check_h_factorization(const KernelParams& params, long n_samples,
                                     RngStream rng, double ks_threshold) {
    if (n_samples < 10000)
        throw OutOfDomainError("check_h_factorization: n_samples >= 10^4 required");
    if (!(params.alpha > 0.0) || params.alpha > 2.0)
        throw OutOfDomainError("check_h_factorization: alpha in (0, 2] required");
    if (!(params.c > 0.0)) throw OutOfDomainError("check_h_factorization: c > 0 required");

    PropertyReport rep;
    rep.property = Property::HFactorization;
    rep.params = params;
    rep.threshold = ks_threshold;
    rep.seed = rng.seed();

    const double cpow = std::pow(params.c, -1.0 / params.alpha);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (long i = 0; i < n_samples; ++i) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double e = rng.exponential();
        const double xa = params.is_alpha_two() ? 1.0 : sample_x_alpha(params.alpha, rng);
        samples.push_back(cpow * sign * e * xa);
    }

    // CDF of the symmetric density c H: F(w) = 1 - c int_{|w|}^inf H, w >= 0
    QuadratureConfig qcfg;
    qcfg.abs_tol = 1e-10;
    auto cdf = [&](double w) {
        const double aw = std::fabs(w);
        double upper_mass;
        if (aw == 0.0) {
            upper_mass = 0.5 / params.c;
        } else if (params.is_alpha_two()) {
            upper_mass = std::exp(-std::sqrt(params.c) * aw) / (2.0 * params.c);
        } else {
            upper_mass = h_laplace_kernel(params, aw, -1.0, qcfg);
        }
        const double upper = params.c * upper_mass;
        return w >= 0.0 ? 1.0 - upper : upper;
    };

    const double d = ks_statistic(samples, cdf);
    rep.worst_margin = ks_threshold - d;
    rep.pass = d < ks_threshold;
    rep.details.push_back({0.0, d, rep.worst_margin, "KS statistic"});
    if (!rep.pass) {
        std::ostringstream os;
        os << "KS statistic " << d << " >= threshold " << ks_threshold;
        rep.failure = os.str();
    }
    return rep;
}

PropertyReport check_normalization(const KernelParams& params, int grid_points, double tol) {
    validate(params, Method::Series); // any alpha the series supports
    if (grid_points < 100) throw OutOfDomainError("check_normalization: grid_points >= 100");

    PropertyReport rep;
    rep.property = Property::Normalization;
    rep.params = params;
    rep.threshold = tol;

    const double ptol = 1e-6;
    auto G = [&](double x) { return g_eval(params, x, std::nullopt, ptol).value; };

    // 1/5 of the budget on a log grid over (x0, delta] where G may blow up
    // like x^{alpha-1}, the rest uniform on [delta, pi]
    const double x0 = 1e-7, delta = 0.1;
    const int m_log = std::max(50, grid_points / 5);
    const int m_uni = std::max(100, grid_points - m_log);

    double integral = 0.0;
    {
        const double u0 = std::log(x0), u1 = std::log(delta);
        const double h = (u1 - u0) / m_log;
        double prev = G(x0) * x0; // integrand of int G(e^u) e^u du
        double head_est = prev;   // ~ int_0^{x0} G via A x0^alpha/alpha <= G(x0) x0
        integral += head_est / std::max(params.alpha, 0.5);
        for (int i = 1; i <= m_log; ++i) {
            const double u = u0 + i * h;
            const double cur = G(std::exp(u)) * std::exp(u);
            integral += 0.5 * (prev + cur) * h;
            prev = cur;
        }
    }
    {
        const double h = (pi - delta) / m_uni;
        double prev = G(delta);
        for (int i = 1; i <= m_uni; ++i) {
            const double x = (i == m_uni) ? pi : delta + i * h;
            const double cur = G(x);
            integral += 0.5 * (prev + cur) * h;
            prev = cur;
        }
    }
    const double total = 2.0 * integral; // symmetry over (-pi, pi)
    const double target = 1.0 / params.c;
    const double err = std::fabs(total - target);
    rep.worst_margin = tol - err;
    rep.pass = err <= tol;
    rep.details.push_back({0.0, total, rep.worst_margin, "integral over (-pi, pi)"});
    if (!rep.pass) {
        std::ostringstream os;
        os << "integral " << total << " deviates from 1/c = " << target << " by " << err;
        rep.failure = os.str();
    }
    return rep;
}

ZeroScanResult scan_zeros(const KernelParams& params, int resolution) {
    if (resolution < 100) throw OutOfDomainError("scan_zeros: resolution >= 100 required");
    if (!(params.c > 0.0)) throw OutOfDomainError("scan_zeros: c > 0 required");

    ZeroScanResult out;
    out.alpha = params.alpha;
    out.c = params.c;

    if (std::fabs(params.alpha - 2.0) <= 1e-9) {
        // closed form is strictly positive: no zeros by the branch rule
        out.smallest_certified_x = pi / (resolution + 1);
        return out;
    }
    if (!(params.alpha > 2.0) || params.alpha > 4.0)
        throw OutOfDomainError("scan_zeros: alpha in (2, 4] required");

    SeriesConfig cfg;
    cfg.target_abs_tol = 1e-10;
    SeriesEvaluator eval(params, cfg);

    const double h = pi / (resolution + 1);
    double prev_x = 0.0;
    int prev_sign = 0;
    bool have_start = false;
    for (int i = 1; i <= resolution; ++i) {
        const double x = i * h;
        int sign = 0;
        double v = 0.0;
        try {
            GreenValue g = eval.eval(x);
            v = g.value;
            if (v > g.error_bound)
                sign = 1;
            else if (v < -g.error_bound)
                sign = -1;
        } catch (const ToleranceError&) {
            ++out.uncertified_points;
            continue;
        }
        if (sign == 0) {
            ++out.uncertified_points;
            continue;
        }
        if (!have_start) {
            out.smallest_certified_x = x;
            have_start = true;
        }
        if (prev_sign != 0 && sign != prev_sign) {
            ++out.sign_changes;
            // bisect the certified bracket to width 1e-8
            double lo = prev_x, hi = x;
            int lo_sign = prev_sign;
            SeriesConfig rcfg;
            rcfg.target_abs_tol = 1e-12;
            SeriesEvaluator refine(params, rcfg);
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                GreenValue g = refine.eval(mid);
                int ms = 0;
                if (g.value > g.error_bound)
                    ms = 1;
                else if (g.value < -g.error_bound)
                    ms = -1;
                if (ms == 0) break; // cannot certify further; keep the bracket
                if (ms == lo_sign)
                    lo = mid;
                else
                    hi = mid;
            }
            out.bracketing_intervals.emplace_back(lo, hi);
            out.refined_roots.push_back(0.5 * (lo + hi));
        }
        prev_sign = sign;
        prev_x = x;
    }
    return out;
}

} // namespace fracgreen
