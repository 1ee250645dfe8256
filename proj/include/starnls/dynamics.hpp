#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "starnls/fem.hpp"
#include "starnls/profiles.hpp"
#include "starnls/spectral.hpp"

namespace starnls {

// =============================================================================
// Orbital distance
// =============================================================================

struct OrbitalDistance {
    double distance = 0.0; // min over theta of ||U - e^{i theta} Phi||_{H^1}
    double theta = 0.0;    // minimizing phase
};

/// Distance of a state to the phase orbit of a real profile, in H^1(G).
/// The minimizing phase is closed-form: theta* = arg <U, Phi>_{H^1}.
inline OrbitalDistance orbital_distance(const GraphFunction& u, const RealGraphFunction& phi) {
    const Complex pairing = h1_inner_product(u, phi);
    const double nu = h1_norm(u);
    const double np = h1_norm(phi);
    OrbitalDistance d;
    d.theta = std::arg(pairing);
    d.distance = std::sqrt(std::max(0.0, nu * nu + np * np - 2.0 * std::abs(pairing)));
    return d;
}

// =============================================================================
// Evolution configuration
// =============================================================================

enum class PerturbationMode { None, Scale, NegativeEigenvector, Random };

struct Perturbation {
    PerturbationMode mode = PerturbationMode::None;
    double epsilon = 0.0;
};

struct EvolutionConfig {
    double dt = 0.0;
    double horizon = 0.0; // T
    Perturbation perturbation{};
    unsigned seed = 1;

    void validate(const GridSpec& grid) const {
        if (!(dt > 0.0)) throw ValidationError("time step dt must be positive");
        if (!(horizon > 0.0)) throw ValidationError("time horizon T must be positive");
        if (dt > grid.spacing() + 1e-15)
            throw ValidationError("accuracy guard dt <= h violated: dt=" + std::to_string(dt) +
                                  ", h=" + std::to_string(grid.spacing()));
        if (perturbation.epsilon < 0.0) throw ValidationError("perturbation size must be >= 0");
    }
};

struct OrbitTrace {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> energy;
    std::vector<double> distance;
    bool blowup_aborted = false;
};

struct EvolutionResult {
    OrbitTrace trace;
    GraphFunction final_state;

    EvolutionResult(OrbitTrace t, GraphFunction s) : trace(std::move(t)), final_state(std::move(s)) {}
};

// =============================================================================
// Initial data
// =============================================================================

/// Profile plus the configured perturbation:
///   Scale               - (1 + eps) Phi,
///   NegativeEigenvector - Phi + eps ||Phi||_{H1} vhat, vhat the ground-state
///                         direction of L1 in the profile's natural sector,
///   Random              - Phi + eps ||Phi||_{H1} * seeded smooth field in E.
inline GraphFunction initial_state(const ProfileSpec& spec, const GridSpec& grid,
                                   const Perturbation& pert, unsigned seed = 1) {
    const auto phi = build_profile(spec, grid);
    GraphFunction u = to_complex(phi);
    const double eps = pert.epsilon;
    switch (pert.mode) {
        case PerturbationMode::None:
            break;
        case PerturbationMode::Scale: {
            u.vertex() *= (1.0 + eps);
            for (int j = 0; j < u.edge_count(); ++j)
                for (auto& v : u.edge_samples(j)) v *= (1.0 + eps);
            break;
        }
        case PerturbationMode::NegativeEigenvector: {
            Sector sector = Sector::full();
            if (spec.family == ProfileFamily::AttractiveDelta && spec.bump_count >= 1)
                sector = Sector::split(spec.bump_count);
            else if (spec.family == ProfileFamily::KirchhoffHalfSoliton)
                sector = Sector::equal();
            const auto l1 = assemble(OperatorKind::L1, spec, grid, sector);
            const double lambda1 = eigenvalue_by_index(l1, 1, 1e-10);
            const auto vec = inverse_iteration(l1, lambda1 - 1e-8 * std::abs(lambda1) - 1e-12);
            const auto dir = from_dof_vector(l1, vec);
            const double scale = eps * h1_norm(phi) / h1_norm(dir);
            u.vertex() += scale * dir.value(0, 0);
            for (int j = 0; j < u.edge_count(); ++j)
                for (int i = 1; i <= grid.segments; ++i)
                    u.set_value(j, i, u.value(j, i) + scale * dir.value(j, i));
            break;
        }
        case PerturbationMode::Random: {
            // smooth random field in E: shared decaying vertex mode plus
            // per-edge sine modes vanishing at both ends
            std::mt19937 rng(seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            const double kappa = 0.5 * std::sqrt(spec.omega);
            RealGraphFunction noise(phi.spec(), grid);
            const double c0 = gauss(rng);
            std::vector<std::vector<double>> coeff(static_cast<std::size_t>(phi.edge_count()));
            for (auto& c : coeff) {
                c.resize(6);
                for (auto& v : c) v = gauss(rng);
            }
            noise.fill([&](int edge, double x) {
                double v = c0 * std::exp(-kappa * x);
                for (int m = 1; m <= 6; ++m)
                    v += coeff[static_cast<std::size_t>(edge)][static_cast<std::size_t>(m - 1)] *
                         std::sin(m * std::numbers::pi * x / grid.length) * std::exp(-kappa * x);
                return v;
            });
            const double scale = eps * h1_norm(phi) / h1_norm(noise);
            u.vertex() += scale * noise.value(0, 0);
            for (int j = 0; j < u.edge_count(); ++j)
                for (int i = 1; i <= grid.segments; ++i)
                    u.set_value(j, i, u.value(j, i) + scale * noise.value(j, i));
            break;
        }
    }
    return u;
}

// =============================================================================
// Relaxation Crank-Nicolson time stepper
// =============================================================================
//
// i dU/dt = H U - mu gamma U with the auxiliary field gamma ~ |U|^{p-1}
// staggered in time: gamma_{n+1/2} = 2 |U_n|^{p-1} - gamma_{n-1/2}. Each step
// applies the Cayley transform (M + i dt/2 A_n) U_{n+1} = (M - i dt/2 A_n) U_n
// with A_n = K_H - mu M_gamma real symmetric, so the lumped-mass L^2 norm is
// conserved exactly up to the direct solver's roundoff.

/// Evolve an initial state in E under the graph NLS flow and record the trace
/// against the profile's phase orbit. Growth beyond 1e3 * max|U0| aborts with
/// the partial trace flagged.
inline EvolutionResult evolve(const GraphFunction& u0, const ProfileSpec& spec,
                              const EvolutionConfig& cfg) {
    spec.validate();
    const GridSpec grid = u0.grid();
    cfg.validate(grid);
    const auto phi = build_profile(spec, grid);
    const auto hop = assemble(OperatorKind::HLinear, spec, grid, Sector::full());

    const int m = grid.segments;
    const std::size_t n = static_cast<std::size_t>(hop.size());
    const double theta = 0.5 * cfg.dt;
    const double mu = spec.mu;
    const double pm1 = spec.p - 1.0;

    std::vector<Complex> state = to_dof_vector(hop, u0);
    std::vector<double> gamma(n);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = std::pow(std::abs(state[i]), pm1);

    GraphFunction u = u0;
    const auto sync_graph = [&](const std::vector<Complex>& x) {
        u.vertex() = x[n - 1];
        std::size_t base = 0;
        for (int j = 0; j < u.edge_count(); ++j) {
            for (int i = 1; i < m; ++i) u.set_value(j, i, x[base + static_cast<std::size_t>(i - 1)]);
            u.set_value(j, m, Complex(0.0, 0.0));
            base += static_cast<std::size_t>(m - 1);
        }
    };
    sync_graph(state);

    OrbitTrace trace;
    const auto record = [&](double t) {
        const auto f = functionals(u, spec);
        trace.times.push_back(t);
        trace.mass.push_back(f.mass);
        trace.energy.push_back(f.energy);
        trace.distance.push_back(orbital_distance(u, phi).distance);
    };
    record(0.0);

    const double abort_level = 1e3 * u0.max_abs();
    const long steps = static_cast<long>(std::llround(cfg.horizon / cfg.dt));
    BorderedTridiagonal<Complex> sys;
    sys.blocks.resize(hop.a.blocks.size());

    for (long step = 0; step < steps; ++step) {
        // gamma at the staggered midpoint
        for (std::size_t i = 0; i < n; ++i)
            gamma[i] = 2.0 * std::pow(std::abs(state[i]), pm1) - gamma[i];

        // S = M + i theta (K_H - mu M_gamma)
        const Complex it(0.0, theta);
        std::size_t base = 0;
        for (std::size_t g = 0; g < hop.a.blocks.size(); ++g) {
            const auto& src = hop.a.blocks[g];
            auto& dst = sys.blocks[g];
            const std::size_t bs = src.diag.size();
            dst.diag.resize(bs);
            dst.off.resize(src.off.size());
            for (std::size_t i = 0; i < bs; ++i) {
                const double w = hop.mass[base + i];
                dst.diag[i] = w + it * (src.diag[i] - mu * w * gamma[base + i]);
            }
            for (std::size_t i = 0; i < src.off.size(); ++i) dst.off[i] = it * src.off[i];
            dst.border = it * src.border;
            base += bs;
        }
        const double wv = hop.mass[n - 1];
        sys.vertex = wv + it * (hop.a.vertex - mu * wv * gamma[n - 1]);

        // rhs = (M - i theta A) U = 2 M U - S U
        auto rhs = sys.apply(state);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = 2.0 * hop.mass[i] * state[i] - rhs[i];

        BorderedLdlt<Complex> solver(sys);
        solver.solve_in_place(rhs);
        state.swap(rhs);

        sync_graph(state);
        record((step + 1) * cfg.dt);
        if (u.max_abs() > abort_level) {
            trace.blowup_aborted = true;
            break;
        }
    }
    return EvolutionResult(std::move(trace), std::move(u));
}

// =============================================================================
// Resolvent of the vertex-coupled Laplacian
// =============================================================================
//
// (R_z V)_j(x) = c_j e^{-z x} + (1/2z) integral_0^inf v_j(y) e^{-|x-y| z} dy,
// the coefficients c_j solved from the vertex linear system whose first N-1
// rows enforce continuity and whose last row carries the flux condition. The
// half-line integrals are evaluated exactly on the piecewise-linear
// interpolant via two-pass exponential recurrences (O(M) per edge).

namespace detail {

/// Solve the small dense complex system by Gaussian elimination with partial
/// pivoting (N is the edge count).
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) == 0.0) throw NumericalError("singular vertex coefficient system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t r = n; r-- > 0;) {
        Complex acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

} // namespace detail

inline GraphFunction linear_resolvent(const GraphFunction& v, double z, double alpha) {
    if (!(z > 0.0)) throw ParameterError("resolvent parameter z must be positive");
    const int n_edges = v.edge_count();
    if (std::abs(alpha + n_edges * z) < 1e-12 * (std::abs(alpha) + n_edges * z))
        throw PoleError("resolvent pole: z = -alpha/N");

    const auto& grid = v.grid();
    const int m = grid.segments;
    const double h = grid.spacing();
    const double decay = std::exp(-z * h);
    // exact cell integrals of the P1 interpolant against the exponential kernel
    const double j_far = (1.0 - decay * (1.0 + z * h)) / (z * z * h); // weight of the far sample
    const double j_near = (1.0 - decay) / z - j_far;                 // weight of the near sample

    // t_j(z) = (1/2) integral v_j(y) e^{-z y} dy
    std::vector<Complex> t(static_cast<std::size_t>(n_edges));
    for (int j = 0; j < n_edges; ++j) {
        Complex acc = 0.0;
        double attn = 1.0;
        for (int i = 0; i < m; ++i) {
            acc += attn * (v.value(j, i) * j_near + v.value(j, i + 1) * j_far);
            attn *= decay;
        }
        t[static_cast<std::size_t>(j)] = 0.5 * acc;
    }

    // vertex coefficient system
    std::vector<std::vector<Complex>> sys(static_cast<std::size_t>(n_edges),
                                          std::vector<Complex>(static_cast<std::size_t>(n_edges), 0.0));
    std::vector<Complex> rhs(static_cast<std::size_t>(n_edges), 0.0);
    for (int r = 0; r < n_edges - 1; ++r) {
        sys[r][r] = 1.0;
        sys[r][r + 1] = -1.0;
        rhs[r] = -(t[r] - t[r + 1]) / z;
    }
    Complex t_sum = 0.0;
    for (const auto& tv : t) t_sum += tv;
    const double row = alpha / n_edges + z;
    for (int c = 0; c < n_edges; ++c) sys[n_edges - 1][c] = row;
    rhs[n_edges - 1] = -(alpha / n_edges - z) * t_sum / z;
    const auto coeff = detail::solve_dense(std::move(sys), std::move(rhs));

    // two-pass convolution: forward F_i = int_0^{x_i}, backward G_i = int_{x_i}^L
    GraphFunction out(v.spec(), grid);
    std::vector<Complex> forward(static_cast<std::size_t>(m + 1));
    std::vector<Complex> backward(static_cast<std::size_t>(m + 1));
    for (int j = 0; j < n_edges; ++j) {
        forward[0] = 0.0;
        for (int i = 0; i < m; ++i)
            forward[i + 1] = decay * forward[i] + v.value(j, i) * j_far + v.value(j, i + 1) * j_near;
        backward[m] = 0.0;
        for (int i = m; i-- > 0;)
            backward[i] = decay * backward[i + 1] + v.value(j, i) * j_near + v.value(j, i + 1) * j_far;
        double attn = 1.0;
        for (int i = 0; i <= m; ++i) {
            out.set_value(j, i, coeff[static_cast<std::size_t>(j)] * attn +
                                    (forward[i] + backward[i]) / (2.0 * z));
            attn *= decay;
        }
    }
    return out;
}

} // namespace starnls
