#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "starnls/profiles.hpp"
#include "starnls/quad.hpp"

namespace starnls {

// =============================================================================
// Slope of the squared L^2 norm along the attractive branch
// =============================================================================
//
// The squared mass of the bump/tail states has the closed form
//   ||Phi_k||_2^2 = C_M omega^{2/(p-1) - 1/2} [ k I(t_b) + (N-k) I(t_t) ],
// with I(t0) = integral_{t0}^{1} (1 - t^2)^{2/(p-1)-1} dt and branch endpoints
// t_b = -alpha/((2k-N) sqrt(omega)), t_t = +alpha/((2k-N) sqrt(omega)).
// Differentiating in omega gives J = C omega^{(7-3p)/(2(p-1))} * Jtilde with
//   Jtilde = (5-p)/(p-1) [ k I_q(t_b) + (N-k) I_q(t_t) ]
//            - (alpha/sqrt(omega)) (1 - alpha^2/((N-2k)^2 omega))^{(3-p)/(p-1)},
// I_q the same integral with exponent q = (3-p)/(p-1), and C > 0. The sign of
// J therefore equals the sign of Jtilde.

struct SlopeResult {
    double j = 0.0;           // J_k(omega) = d/domega ||Phi_k||_2^2
    double j_tilde = 0.0;     // scale-free factor carrying the sign
    double prefactor = 0.0;   // C * omega^{(7-3p)/(2(p-1))} > 0
};

/// Slope indicator p(omega): Positive (1) when J > 0, Negative (0) when J < 0.
enum class SlopeSign { Negative = 0, Positive = 1 };

inline constexpr double kDegenerateSlopeBand = 1e-10;

namespace detail {

/// integral_{t0}^{1} (1-t^2)^q dt for q > -1, t0 in (-1, 1].
/// The substitution t = 1 - s^(2m) absorbs the endpoint singularity at t = 1;
/// m is chosen so the transformed integrand has an O(s) zero at s = 0.
inline double edge_integral(double t0, double q) {
    if (t0 >= 1.0) return 0.0;
    int m = 1;
    if (q < 0.0) m = std::max(2, static_cast<int>(std::ceil(2.0 / (2.0 * q + 2.0))));
    const double upper = std::pow(1.0 - t0, 1.0 / (2.0 * m));
    // with 1 - t = s^(2m): (1-t^2)^q dt = 2m s^(2m(q+1)-1) (1+t)^q ds
    const auto integrand = [q, m](double s) {
        const double one_minus_t = std::pow(s, 2.0 * m);
        const double t = 1.0 - one_minus_t;
        return 2.0 * m * std::pow(s, 2.0 * m * (q + 1.0) - 1.0) * std::pow(1.0 + t, q);
    };
    return integrate(integrand, 0.0, upper, 1e-13);
}

} // namespace detail

/// Evaluate J and Jtilde for the attractive branch (k >= 1) or the symmetric
/// k = 0 branch; alpha = 0 with k = 0 covers the Kirchhoff half-soliton.
inline SlopeResult slope_j(int n, int k, double alpha, double omega, double p) {
    if (alpha == 0.0) {
        if (k != 0) throw ValidationError("alpha = 0 slope is defined for the symmetric branch k = 0");
        ProfileSpec::kirchhoff(n, omega, p).validate();
    } else {
        ProfileSpec::attractive(n, k, alpha, omega, p).validate();
    }
    const double q = (3.0 - p) / (p - 1.0);
    const double root = std::sqrt(omega);
    const double denom = (2.0 * k - n) * root;
    const double t_bump = -alpha / denom;
    const double t_tail = alpha / denom;

    double integrals = 0.0;
    if (p != 5.0) {
        integrals = (5.0 - p) / (p - 1.0) *
                    (k * detail::edge_integral(t_bump, q) + (n - k) * detail::edge_integral(t_tail, q));
    }
    const double gap = 1.0 - alpha * alpha / ((n - 2.0 * k) * (n - 2.0 * k) * omega);
    const double boundary = (alpha / root) * std::pow(gap, q);

    SlopeResult out;
    out.j_tilde = integrals - boundary;
    out.prefactor = (1.0 / (p - 1.0)) * std::pow(0.5 * (p + 1.0), 2.0 / (p - 1.0)) *
                    std::pow(omega, (7.0 - 3.0 * p) / (2.0 * (p - 1.0)));
    out.j = out.prefactor * out.j_tilde;
    return out;
}

/// Slope indicator at one parameter point. Throws NumericalError inside the
/// degenerate band |Jtilde| <= 1e-10 where the stability theory is silent.
inline SlopeSign slope_indicator(int n, int k, double alpha, double omega, double p) {
    const SlopeResult r = slope_j(n, k, alpha, omega, p);
    if (std::abs(r.j_tilde) <= kDegenerateSlopeBand)
        throw NumericalError("degenerate slope: |Jtilde| <= 1e-10 at omega = " + std::to_string(omega));
    return r.j > 0.0 ? SlopeSign::Positive : SlopeSign::Negative;
}

/// Root of J in omega, present exactly in the regimes where the slope changes
/// sign: omega* for alpha < 0, p > 5 (J decreasing through 0) and omega-hat
/// for alpha > 0, 3 < p < 5 (J increasing through 0). Elsewhere returns
/// nullopt. Bisection exploits strict monotonicity of Jtilde.
inline std::optional<double> find_critical_omega(int n, int k, double alpha, double p) {
    const bool decreasing = alpha < 0.0 && p > 5.0;
    const bool increasing = alpha > 0.0 && p > 3.0 && p < 5.0;
    if (!decreasing && !increasing) return std::nullopt;

    const double d = n - 2.0 * k;
    const double threshold = alpha * alpha / (d * d);
    double lo = (1.0 + 1e-8) * threshold;
    const auto sign_at = [&](double w) { return slope_j(n, k, alpha, w, p).j_tilde; };
    double f_lo = sign_at(lo);
    double hi = 2.0 * lo;
    double f_hi = sign_at(hi);
    int doublings = 0;
    while (f_lo * f_hi > 0.0) {
        if (++doublings > 60)
            throw NumericalError("no slope sign change found after 60 interval doublings");
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = sign_at(hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = sign_at(mid);
        if (std::abs(f_mid) < kDegenerateSlopeBand) return mid;
        if (f_lo * f_mid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    throw NumericalError("slope root bisection failed to reach |Jtilde| < 1e-10");
}

/// Slope of ||Phi_0||_2^2 for the Kirchhoff half-soliton (closed sign:
/// positive for 1 < p < 5, negative for p > 5, zero prefactor at p = 5).
inline SlopeResult kirchhoff_slope(int n, double omega, double p) {
    return slope_j(n, 0, 0.0, omega, p);
}

} // namespace starnls
