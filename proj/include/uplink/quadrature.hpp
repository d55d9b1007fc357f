#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "uplink/params.hpp"

namespace uplink::numerics {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::uint64_t evaluations = 0;
    std::size_t subdivisions = 0;
};

/// Raised when the subdivision budget runs out, or the integrand returns a
/// non-finite value. Carries the best estimate available at that point.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Process-wide integrand evaluation counts, for run manifests.
struct EvaluationLedger {
    std::atomic<std::uint64_t> integrals{0};
    std::atomic<std::uint64_t> evaluations{0};

    void reset() {
        integrals = 0;
        evaluations = 0;
    }
};

EvaluationLedger& ledger();

/// Globally adaptive 10/21-point Gauss-Kronrod quadrature on [a, b].
/// Converges when the summed error estimate is <= max(abs_tol, rel_tol |I|).
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Change of variables x = a + scale (t^-q - 1) used to map (a, inf) onto
/// (0, 1]. With `algebraic_decay` p > 1 (f ~ x^-p) q is chosen as 2/(p-1) so
/// the mapped integrand vanishes linearly at t = 0; otherwise q = 1, which
/// suits exponentially decaying integrands.
struct SemiInfiniteMap {
    double scale = 1.0;
    double algebraic_decay = 0.0;
};

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureSpec& spec,
                                         SemiInfiniteMap map = {});

}  // namespace uplink::numerics
