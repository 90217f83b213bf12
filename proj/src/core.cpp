#include "fracgreen/core.hpp"

#include <sstream>

namespace fracgreen {

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::Series: return "Series";
        case Method::Periodized: return "Periodized";
        case Method::MlIntegral: return "MlIntegral";
        case Method::ClosedForm2: return "ClosedForm2";
        case Method::McJtp: return "McJtp";
        case Method::McPoisson: return "McPoisson";
    }
    return "Unknown";
}

Grid Grid::uniform_open(int n) {
    if (n < 1) throw OutOfDomainError("Grid::uniform_open: need n >= 1");
    Grid g;
    g.points.resize(static_cast<std::size_t>(n));
    const double h = pi / (n + 1);
    for (int i = 1; i <= n; ++i) g.points[static_cast<std::size_t>(i - 1)] = i * h;
    g.spacing = h;
    return g;
}

Grid Grid::uniform_closed(int n) {
    if (n < 1) throw OutOfDomainError("Grid::uniform_closed: need n >= 1");
    Grid g;
    g.points.resize(static_cast<std::size_t>(n));
    const double h = pi / n;
    for (int i = 1; i <= n; ++i) g.points[static_cast<std::size_t>(i - 1)] = i * h;
    g.points.back() = pi; // exact endpoint
    g.spacing = h;
    return g;
}

void Grid::validate() const {
    double prev = 0.0;
    for (double x : points) {
        if (!(x > 0.0) || x > pi) throw OutOfDomainError("Grid: points must lie in (0, pi]");
        if (!(x > prev)) throw OutOfDomainError("Grid: points must be strictly increasing");
        prev = x;
    }
}

namespace {

struct AlphaRange {
    double lo, hi; // validity is (lo, hi], except ClosedForm2 which pins alpha = 2
};

AlphaRange alpha_range(Method m) noexcept {
    switch (m) {
        case Method::Series: return {0.0, 4.0};
        case Method::Periodized:
        case Method::MlIntegral:
        case Method::McJtp: return {0.0, 2.0};
        case Method::McPoisson: return {0.0, 1.0};
        case Method::ClosedForm2: return {2.0, 2.0};
    }
    return {0.0, 0.0};
}

} // namespace

void validate(const KernelParams& params, Method method) {
    if (!(params.c > 0.0) || !std::isfinite(params.c)) {
        std::ostringstream os;
        os << "OutOfDomain: c = " << params.c << ", require c > 0";
        throw OutOfDomainError(os.str());
    }
    if (!std::isfinite(params.alpha)) throw OutOfDomainError("OutOfDomain: alpha must be finite");

    if (method == Method::ClosedForm2) {
        if (params.alpha != 2.0)
            throw OutOfDomainError("OutOfDomain: alpha = " + std::to_string(params.alpha) +
                                   ", ClosedForm2 requires alpha = 2");
        return;
    }
    const AlphaRange r = alpha_range(method);
    if (!(params.alpha > r.lo) || !(params.alpha <= r.hi)) {
        std::ostringstream os;
        os << "OutOfDomain: alpha = " << params.alpha << ", " << method_name(method)
           << " requires alpha in (" << r.lo << ", " << r.hi << "]";
        throw OutOfDomainError(os.str());
    }
}

bool is_valid(const KernelParams& params, Method method) noexcept {
    try {
        validate(params, method);
        return true;
    } catch (const Error&) {
        return false;
    }
}

} // namespace fracgreen
