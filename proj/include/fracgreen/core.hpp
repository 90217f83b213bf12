#ifndef FRACGREEN_CORE_HPP
#define FRACGREEN_CORE_HPP

// Shared parameter types, validation and the method-tagged result type used
// by every evaluator in the library.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracgreen {

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error taxonomy (closed set)
// ---------------------------------------------------------------------------

enum class ErrorCode {
    OutOfDomain,          // parameter outside a method's validity region
    Divergent,            // the requested quantity is infinite (e.g. G(0), alpha <= 1)
    ToleranceUnreachable, // iteration/term cap hit before certifying the tolerance
    NumericalInstability  // quadrature failed to converge
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

struct OutOfDomainError : Error {
    explicit OutOfDomainError(const std::string& what) : Error(ErrorCode::OutOfDomain, what) {}
};
struct DivergentError : Error {
    explicit DivergentError(const std::string& what) : Error(ErrorCode::Divergent, what) {}
};
struct ToleranceError : Error {
    explicit ToleranceError(const std::string& what) : Error(ErrorCode::ToleranceUnreachable, what) {}
};
struct InstabilityError : Error {
    explicit InstabilityError(const std::string& what) : Error(ErrorCode::NumericalInstability, what) {}
};

// ---------------------------------------------------------------------------
// Kernel parameters
// ---------------------------------------------------------------------------

// The pair (alpha, c) of the operator c + (-Laplacian)^{alpha/2}.
// alpha is the stability index, c > 0 the killing rate. beta = alpha/2 is the
// subordinator index; gamma = alpha/4 shows up only in the alpha in (2,4]
// regime and is carried for documentation.
struct KernelParams {
    double alpha = 1.0;
    double c = 1.0;

    double beta() const noexcept { return alpha / 2.0; }
    double gamma() const noexcept { return alpha / 4.0; }

    // alpha == 2 is an exact degenerate branch (inputs are parsed decimal
    // literals, so "2" and "2.0" both land here).
    bool is_alpha_two() const noexcept { return alpha == 2.0; }
};

// ---------------------------------------------------------------------------
// Evaluation methods and results
// ---------------------------------------------------------------------------

enum class Method {
    Series,      // direct Fourier series with rigorous Abel tail bound
    Periodized,  // 2*pi periodization of the line kernel H
    MlIntegral,  // Mittag-Leffler weighted integral
    ClosedForm2, // alpha = 2 closed form
    McJtp,       // Monte Carlo, Jacobi triple product estimator
    McPoisson    // Monte Carlo, Poisson kernel estimator
};

const char* method_name(Method m) noexcept;

// Evaluated value with an absolute error bound. The bound is rigorous for
// Series and ClosedForm2; for quadrature and Monte Carlo methods it is an
// estimate and `rigorous` is false.
struct GreenValue {
    double value = 0.0;
    double error_bound = 0.0;
    Method method = Method::Series;
    bool rigorous = false;
};

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

// Ordered evaluation abscissae in (0, pi].
struct Grid {
    std::vector<double> points;
    double spacing = 0.0; // 0 marks an irregular grid

    // n uniformly spaced interior points of (0, pi): i*pi/(n+1), i = 1..n.
    static Grid uniform_open(int n);
    // n points of (0, pi], last point exactly pi.
    static Grid uniform_closed(int n);

    void validate() const; // throws OutOfDomainError on violation
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

// Accepts iff (alpha, c) lies in the method's validity region:
//   Series                       alpha in (0, 4]
//   Periodized, MlIntegral, McJtp alpha in (0, 2]
//   McPoisson                    alpha in (0, 1]
//   ClosedForm2                  alpha = 2
// c > 0 always. Pure total function of its inputs.
void validate(const KernelParams& params, Method method);

// Convenience wrapper: returns false instead of throwing.
bool is_valid(const KernelParams& params, Method method) noexcept;

} // namespace fracgreen

#endif
