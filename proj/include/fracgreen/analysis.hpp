#ifndef FRACGREEN_ANALYSIS_HPP
#define FRACGREEN_ANALYSIS_HPP

// Executable verification of the structural claims: positivity, unimodality,
// complete monotonicity at sampled orders, the vanishing boundary
// derivative, cross-method consistency, normalization, the factorization of
// c H, and the alpha in (2,4] zero scan.

#include "fracgreen/core.hpp"
#include "fracgreen/stochastic.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fracgreen {

enum class Property {
    Positivity,
    MonotoneDecrease,
    CompleteMonotonicity,
    BoundaryDerivativeZero,
    CrossMethodConsistency,
    Normalization,
    HFactorization,
    ZeroScan
};

const char* property_name(Property p) noexcept;

struct PropertyDetail {
    double x = 0.0;      // grid point or epsilon, context dependent
    double value = 0.0;  // measured quantity
    double margin = 0.0; // distance to the failure boundary
    std::string note;
};

// Self-describing pass/fail record; reproducible from (params, grid, seed).
struct PropertyReport {
    Property property = Property::Positivity;
    KernelParams params;
    Grid grid;
    bool pass = false;
    double worst_margin = 0.0;
    double threshold = 0.0;
    int p_max = 0;
    std::uint64_t seed = 0;
    std::vector<PropertyDetail> details;
    std::string failure; // witness description when pass == false
};

// (-1)^p G^{(p)}(x) > 0 for p = 0..p_max on the grid; alpha in (0,2].
// Margins are sign-normalized values; any wrong sign fails.
PropertyReport check_complete_monotonicity(const KernelParams& params, const Grid& grid,
                                           int p_max, double tol = 1e-8);

// G positive and strictly decreasing along the grid. Ties within combined
// error bounds are recorded as inconclusive, not failures.
PropertyReport check_unimodality(const KernelParams& params, const Grid& grid,
                                 double tol = 1e-8);

// g_prime_ml(pi) == 0 exactly, and |G'(pi - eps)| decreasing across the
// given decreasing epsilon list.
PropertyReport check_boundary_derivative(const KernelParams& params,
                                         const std::vector<double>& epsilons,
                                         double tol = 1e-8);

// Pairwise agreement of Series, Periodized, MlIntegral (plus ClosedForm2 at
// alpha = 2) within summed error bounds and within tol. On failure the
// disagreeing minority method is named.
PropertyReport check_cross_method(const KernelParams& params, const Grid& grid,
                                  double tol = 1e-6);

// KS test of c^{-1/alpha} E x X_alpha samples against the CDF of c H_{alpha,c}.
PropertyReport check_h_factorization(const KernelParams& params, long n_samples,
                                     RngStream rng, double ks_threshold = 0.02);

// Refined-grid integral of G over (-pi, pi) against 1/c.
PropertyReport check_normalization(const KernelParams& params, int grid_points,
                                   double tol = 1e-4);

// One-sample Kolmogorov-Smirnov statistic; samples need not be pre-sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ZeroScanResult {
    double alpha = 0.0;
    double c = 0.0;
    int sign_changes = 0;
    std::vector<std::pair<double, double>> bracketing_intervals;
    std::vector<double> refined_roots;
    double smallest_certified_x = 0.0;
    int uncertified_points = 0;
};

// Certified sign-change scan of the series on a uniform grid of (0, pi) for
// alpha in (2, 4]; alpha within 1e-9 of 2 routes to the positive closed
// form. Brackets are refined by bisection to width 1e-8.
ZeroScanResult scan_zeros(const KernelParams& params, int resolution);

} // namespace fracgreen

#endif
