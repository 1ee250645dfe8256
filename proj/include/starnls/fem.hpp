#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "starnls/graph.hpp"
#include "starnls/ldlt.hpp"
#include "starnls/profiles.hpp"

namespace starnls {

// =============================================================================
// Linearized operators as symmetric pencils (A, M)
// =============================================================================

/// Which quadratic form to assemble:
///   L1      - second variation block with potential omega - p mu phi^{p-1},
///   L2      - block with potential omega - mu phi^{p-1},
///   HLinear - the bare vertex-coupled Laplacian (no omega, no potential).
enum class OperatorKind { L1, L2, HLinear };

inline std::string operator_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::L1: return "L1";
        case OperatorKind::L2: return "L2";
        case OperatorKind::HLinear: return "H";
    }
    return "?";
}

/// P1 finite-element discretization of a star-graph Schroedinger form on a
/// symmetry sector. One tridiagonal block per edge group, weighted by the
/// group multiplicity; the shared vertex DOF is ordered last and carries the
/// alpha |v(0)|^2 term. Dirichlet truncation at x = L. The mass matrix is the
/// lumped (trapezoid) diagonal in the same layout.
struct DiscreteOperator {
    BorderedTridiagonal<double> a;
    std::vector<double> mass;          // diagonal of M, DOF layout: blocks then vertex
    std::vector<int> multiplicities;   // per block
    std::vector<int> group_first_edge; // representative edge per block
    GridSpec grid;
    Sector sector = Sector::full();
    OperatorKind kind = OperatorKind::L1;
    ProfileSpec profile;

    int size() const { return a.size(); }
    int block_size() const { return grid.segments - 1; }
};

namespace detail {

/// True when the profile's branch pattern is constant on every edge group of
/// the sector (so the reduced potential is well defined).
inline bool profile_fits_sector(const ProfileSpec& spec, const Sector& sector) {
    const auto groups = sector.groups(spec.edge_count);
    for (const auto& [mult, first] : groups)
        for (int j = first + 1; j < first + mult; ++j)
            if (spec.edge_offset(j) != spec.edge_offset(first)) return false;
    return true;
}

} // namespace detail

inline DiscreteOperator assemble(OperatorKind kind, const ProfileSpec& spec, const GridSpec& grid,
                                 const Sector& sector) {
    spec.validate();
    grid.validate();
    StarGraphSpec graph{spec.edge_count, spec.alpha, sector};
    graph.validate();
    if (!detail::profile_fits_sector(spec, sector))
        throw SectorError("profile of family " + family_name(spec.family) +
                          " does not lie in sector " + sector.name());

    const int m = grid.segments;
    const double h = grid.spacing();
    const double c = kind == OperatorKind::L1 ? spec.p : 1.0;

    const auto potential = [&](int edge, double x) -> double {
        if (kind == OperatorKind::HLinear) return 0.0;
        return spec.omega - c * spec.mu * spec.power_pm1(edge, x);
    };

    DiscreteOperator op;
    op.grid = grid;
    op.sector = sector;
    op.kind = kind;
    op.profile = spec;

    double vertex_a = spec.alpha;
    double vertex_m = 0.0;
    for (const auto& [mult, first] : sector.groups(spec.edge_count)) {
        BorderedTridiagonal<double>::Block blk;
        blk.diag.resize(static_cast<std::size_t>(m - 1));
        blk.off.resize(static_cast<std::size_t>(m - 2));
        for (int i = 1; i < m; ++i) {
            blk.diag[static_cast<std::size_t>(i - 1)] =
                mult * (2.0 / h + h * potential(first, grid.node(i)));
            if (i < m - 1) blk.off[static_cast<std::size_t>(i - 1)] = -mult / h;
        }
        blk.border = -mult / h;
        op.a.blocks.push_back(std::move(blk));
        op.multiplicities.push_back(mult);
        op.group_first_edge.push_back(first);
        for (int i = 1; i < m; ++i) op.mass.push_back(mult * h);
        vertex_a += mult * (1.0 / h + 0.5 * h * potential(first, 0.0));
        vertex_m += mult * 0.5 * h;
    }
    op.a.vertex = vertex_a;
    op.mass.push_back(vertex_m);
    return op;
}

// =============================================================================
// DOF vector <-> graph function conversions
// =============================================================================

/// Restrict a sector member to the operator's DOF layout (interior nodes of
/// one representative edge per group, vertex last; node M dropped).
template <class S>
std::vector<S> to_dof_vector(const DiscreteOperator& op, const GraphFunctionT<S>& f) {
    detail::require_same_grid(op.grid, f.grid());
    std::vector<S> x;
    x.reserve(static_cast<std::size_t>(op.size()));
    const int m = op.grid.segments;
    for (std::size_t g = 0; g < op.group_first_edge.size(); ++g) {
        const int edge = op.group_first_edge[g];
        for (int i = 1; i < m; ++i) x.push_back(f.value(edge, i));
    }
    x.push_back(f.value(0, 0));
    return x;
}

/// Expand a DOF vector to the full star graph, replicating edge groups and
/// putting zero at the Dirichlet node x = L.
inline RealGraphFunction from_dof_vector(const DiscreteOperator& op, const std::vector<double>& x) {
    StarGraphSpec graph{op.profile.edge_count, op.profile.alpha, op.sector};
    RealGraphFunction f(graph, op.grid);
    const int m = op.grid.segments;
    f.vertex() = x.back();
    std::size_t base = 0;
    for (std::size_t g = 0; g < op.group_first_edge.size(); ++g) {
        for (int j = op.group_first_edge[g]; j < op.group_first_edge[g] + op.multiplicities[g]; ++j) {
            for (int i = 1; i < m; ++i) f.set_value(j, i, x[base + static_cast<std::size_t>(i - 1)]);
            f.set_value(j, m, 0.0);
        }
        base += static_cast<std::size_t>(m - 1);
    }
    return f;
}

// =============================================================================
// Pencil helpers
// =============================================================================

/// A - sigma M as a bordered tridiagonal matrix.
inline BorderedTridiagonal<double> shifted_matrix(const DiscreteOperator& op, double sigma) {
    BorderedTridiagonal<double> s = op.a;
    s.subtract_scaled_diagonal(sigma, op.mass);
    return s;
}

/// Number of pencil eigenvalues of (A, M) strictly below sigma, by the
/// negative-pivot count of the LDL^T factorization of A - sigma M.
inline int count_eigenvalues_below(const DiscreteOperator& op, double sigma) {
    return BorderedLdlt<double>(shifted_matrix(op, sigma)).negative_pivots();
}

/// Quadratic form x^T A x.
inline double quadratic_form(const DiscreteOperator& op, const std::vector<double>& x) {
    const auto y = op.a.apply(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

/// Weighted inner product x^T M y.
inline double mass_inner(const DiscreteOperator& op, const std::vector<double>& x,
                         const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * op.mass[i] * y[i];
    return acc;
}

} // namespace starnls
