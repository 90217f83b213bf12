#ifndef FRACGREEN_STOCHASTIC_HPP
#define FRACGREEN_STOCHASTIC_HPP

// Samplers for the stable subordinator and the killed-time composites
// X_{alpha,c}, Y_{alpha,c}, X_alpha, plus Monte Carlo estimators of G via
// the Jacobi triple product and the Poisson kernel representation.

#include "fracgreen/core.hpp"

#include <cstdint>

namespace fracgreen {

// Counter-based stream: (seed, stream_id) fully determine the sequence,
// distinct stream_ids give statistically independent streams.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();
    double uniform();     // strictly inside (0, 1)
    double exponential(); // rate 1

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

  private:
    std::uint64_t seed_, stream_id_, key_, counter_;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(n)
    long n_samples = 0;
    std::uint64_t seed = 0;
};

// One draw of the beta-stable subordinator at time t (Laplace transform
// e^{-t lambda^beta}), by the Kanter representation; rejection-free.
// beta = 1 is the degenerate drift: returns exactly t.
double sample_stable_subordinator(double beta, double t, RngStream& rng);

// X_{alpha,c} = sigma^{(alpha/2)} at an independent Exp(c) time; alpha in (0,2].
double sample_X(const KernelParams& params, RngStream& rng);

// Y_{alpha,c} = sigma^{(alpha)} at an independent Exp(c) time; alpha in (0,1].
double sample_Y(const KernelParams& params, RngStream& rng);

// X_alpha realized as sqrt(S/S') for S, S' i.i.d. unit-time (alpha/2)-stable
// subordinator draws; alpha in (0,2).
double sample_x_alpha(double alpha, RngStream& rng);

// Triple-product value theta(x, X) = sum_{n in Z} e^{i n x} e^{-n^2 X},
// evaluated as prod_{m>=1} (1-q^{2m})(1 + 2 cos(x) q^{2m-1} + q^{4m-2})
// with q = e^{-X}. Every factor is positive for x in (0, pi).
double theta_product(double x, double X);

// The same value through the heat-kernel (Poisson summation) form
// sqrt(pi/X) sum_k e^{-(x-2 pi k)^2/(4X)}; efficient for small X.
double theta_heat_sum(double x, double X);

// Switched evaluation: heat-kernel form below X = 0.01, product above.
double theta_value(double x, double X);

// Monte Carlo estimators of G_{alpha,c}(x). Identical (seed, stream, n)
// reproduce identical estimates bit for bit.
McEstimate mc_g_jtp(const KernelParams& params, double x, long n_samples, RngStream rng);
McEstimate mc_g_poisson(const KernelParams& params, double x, long n_samples, RngStream rng);

} // namespace fracgreen

#endif
