#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "starnls/graph.hpp"

namespace starnls {

enum class ProfileFamily {
    AttractiveDelta,     // bump/tail sech-power states of the delta coupling, mu = +1
    KirchhoffHalfSoliton,// half-soliton on every edge, alpha = 0
    KirchhoffShifted,    // N even: soliton shifted by -a on half the edges, +a on the rest
    RepulsiveDelta       // csch-power N-tail state, mu = -1, alpha < 0
};

inline std::string family_name(ProfileFamily f) {
    switch (f) {
        case ProfileFamily::AttractiveDelta: return "attractive";
        case ProfileFamily::KirchhoffHalfSoliton: return "kirchhoff";
        case ProfileFamily::KirchhoffShifted: return "kirchhoff-shifted";
        case ProfileFamily::RepulsiveDelta: return "repulsive";
    }
    return "?";
}

// =============================================================================
// Profile specification
// =============================================================================

/// Selects one closed-form stationary state of the NLS equation on the star
/// graph with delta vertex coupling.
struct ProfileSpec {
    ProfileFamily family = ProfileFamily::AttractiveDelta;
    int edge_count = 3;   // N
    int bump_count = 0;   // k: edges 1..k carry the -a_k branch (attractive family)
    double shift = 0.0;   // a: KirchhoffShifted displacement
    double alpha = 0.0;
    double omega = 1.0;
    double p = 3.0;
    int mu = +1;

    static ProfileSpec attractive(int n, int k, double alpha, double omega, double p) {
        return ProfileSpec{ProfileFamily::AttractiveDelta, n, k, 0.0, alpha, omega, p, +1};
    }
    static ProfileSpec kirchhoff(int n, double omega, double p) {
        return ProfileSpec{ProfileFamily::KirchhoffHalfSoliton, n, 0, 0.0, 0.0, omega, p, +1};
    }
    static ProfileSpec kirchhoff_shifted(int n, double shift, double omega, double p) {
        return ProfileSpec{ProfileFamily::KirchhoffShifted, n, 0, shift, 0.0, omega, p, +1};
    }
    static ProfileSpec repulsive(int n, double alpha, double omega, double p) {
        return ProfileSpec{ProfileFamily::RepulsiveDelta, n, 0, 0.0, alpha, omega, p, -1};
    }

    /// Existence threshold in omega for the attractive family: alpha^2/(N-2k)^2.
    double attractive_threshold() const {
        const double d = edge_count - 2.0 * bump_count;
        return alpha * alpha / (d * d);
    }

    void validate() const {
        if (edge_count < 2) throw ValidationError("profile needs N >= 2 edges");
        if (!(p > 1.0)) throw ValidationError("nonlinearity exponent must satisfy p > 1");
        if (!(omega > 0.0)) throw ExistenceError("frequency omega must be positive");
        switch (family) {
            case ProfileFamily::AttractiveDelta: {
                if (mu != +1) throw ValidationError("attractive family requires mu = +1");
                if (alpha == 0.0)
                    throw ValidationError("attractive family requires alpha != 0 (use the kirchhoff family for alpha = 0)");
                const int kmax = (edge_count - 1) / 2;
                if (bump_count < 0 || bump_count > kmax)
                    throw ValidationError("branch index k=" + std::to_string(bump_count) +
                                          " outside 0..floor((N-1)/2)=" + std::to_string(kmax));
                if (!(omega > attractive_threshold()))
                    throw ExistenceError("attractive profile needs omega > alpha^2/(N-2k)^2 = " +
                                         std::to_string(attractive_threshold()));
                break;
            }
            case ProfileFamily::KirchhoffHalfSoliton:
                if (mu != +1) throw ValidationError("kirchhoff family requires mu = +1");
                if (alpha != 0.0) throw ValidationError("kirchhoff family requires alpha = 0");
                break;
            case ProfileFamily::KirchhoffShifted:
                if (mu != +1) throw ValidationError("kirchhoff-shifted family requires mu = +1");
                if (alpha != 0.0) throw ValidationError("kirchhoff-shifted family requires alpha = 0");
                if (edge_count % 2 != 0)
                    throw ValidationError("kirchhoff-shifted family exists only for even N");
                break;
            case ProfileFamily::RepulsiveDelta: {
                if (mu != -1) throw ValidationError("repulsive family requires mu = -1");
                if (!(alpha < 0.0)) throw ExistenceError("repulsive profile needs alpha < 0");
                const double cap = alpha * alpha / (static_cast<double>(edge_count) * edge_count);
                if (!(omega < cap))
                    throw ExistenceError("repulsive profile needs omega < alpha^2/N^2 = " + std::to_string(cap));
                break;
            }
        }
    }

    /// tanh^{-1}(alpha / ((2k-N) sqrt(omega))); positive for alpha < 0, k < N/2.
    double branch_offset() const {
        return std::atanh(alpha / ((2.0 * bump_count - edge_count) * std::sqrt(omega)));
    }

    double sqrt_omega() const { return std::sqrt(omega); }
    double half_rate() const { return 0.5 * (p - 1.0) * sqrt_omega(); } // (p-1)sqrt(omega)/2

    /// Per-edge shift of the sech/csch argument at x = 0.
    double edge_offset(int edge) const {
        switch (family) {
            case ProfileFamily::AttractiveDelta:
                return edge < bump_count ? -branch_offset() : branch_offset();
            case ProfileFamily::KirchhoffHalfSoliton:
                return 0.0;
            case ProfileFamily::KirchhoffShifted:
                return (edge < edge_count / 2 ? -shift : shift) * half_rate();
            case ProfileFamily::RepulsiveDelta:
                // N coth(a) = -alpha / sqrt(omega) pins a > 0
                return std::atanh(edge_count * sqrt_omega() / (-alpha));
        }
        return 0.0;
    }

    /// phi(x)^{p-1} on the given edge; closed form without fractional powers.
    double power_pm1(int edge, double x) const {
        const double arg = half_rate() * x + edge_offset(edge);
        const double amp = 0.5 * (p + 1.0) * omega;
        if (family == ProfileFamily::RepulsiveDelta) {
            const double s = std::sinh(arg);
            return amp / (s * s);
        }
        const double c = std::cosh(arg);
        return amp / (c * c);
    }

    /// phi(x) on the given edge.
    double value(int edge, double x) const {
        return std::pow(power_pm1(edge, x), 1.0 / (p - 1.0));
    }
};

// =============================================================================
// Construction and evaluation
// =============================================================================

/// Sample the closed-form stationary profile on the grid. The returned
/// function is strictly positive and real; its declared sector is Full.
inline RealGraphFunction build_profile(const ProfileSpec& spec, const GridSpec& grid) {
    spec.validate();
    grid.validate();
    StarGraphSpec graph{spec.edge_count, spec.alpha, Sector::full()};
    RealGraphFunction f(graph, grid);
    f.fill([&spec](int edge, double x) { return spec.value(edge, x); });
    return f;
}

inline RealGraphFunction build_profile(const ProfileSpec& spec) {
    return build_profile(spec, default_grid(spec.omega));
}

/// Max-norm defect of the stationary equation -phi'' + omega phi - mu phi^p = 0
/// over interior nodes (centered second differences), plus the vertex flux
/// defect |sum_j phi_j'(0) - alpha phi(0)|. The vertex node and its neighbor
/// are excluded from the stencil; the flux term covers them.
inline double stationary_residual(const RealGraphFunction& phi, const ProfileSpec& spec) {
    const auto& grid = phi.grid();
    const int m = grid.segments;
    const double h = grid.spacing();
    const double mu = spec.mu;
    double worst = 0.0;
    for (int j = 0; j < phi.edge_count(); ++j) {
        for (int i = 2; i < m; ++i) {
            const double v = phi.value(j, i);
            const double lap = (phi.value(j, i - 1) - 2.0 * v + phi.value(j, i + 1)) / (h * h);
            const double nonlinear = mu * std::pow(std::abs(v), spec.p - 1.0) * v;
            worst = std::max(worst, std::abs(-lap + spec.omega * v - nonlinear));
        }
    }
    const auto trace = vertex_trace(phi);
    worst = std::max(worst, std::abs(trace.flux() - spec.alpha * trace.value));
    return worst;
}

// =============================================================================
// Conserved functionals
// =============================================================================

struct Functionals {
    double mass = 0.0;   // ||U||_2^2
    double energy = 0.0; // 1/2 ||U'||^2 - mu/(p+1) ||U||_{p+1}^{p+1} + alpha/2 |u1(0)|^2
    double action = 0.0; // energy + omega/2 * mass
};

/// Discrete mass, energy and action of a state, using the cell-difference
/// kinetic term and trapezoid quadrature (the same discrete forms the FEM
/// time stepper conserves).
template <class S>
Functionals functionals(const GraphFunctionT<S>& u, const ProfileSpec& spec) {
    Functionals out;
    const double n2 = norm_lq(u, 2.0);
    out.mass = n2 * n2;
    const double np1 = norm_lq(u, spec.p + 1.0);
    out.energy = 0.5 * derivative_norm_sq(u) -
                 (spec.mu / (spec.p + 1.0)) * std::pow(np1, spec.p + 1.0) +
                 0.5 * spec.alpha * std::norm(u.value(0, 0));
    out.action = out.energy + 0.5 * spec.omega * out.mass;
    return out;
}

} // namespace starnls
