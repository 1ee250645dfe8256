#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "starnls/errors.hpp"

namespace starnls {

using Complex = std::complex<double>;

// =============================================================================
// Symmetry sectors
// =============================================================================

/// Symmetry subspace of functions on the star graph:
///   Full     - no symmetry constraint,
///   Split(k) - components 1..k identical and k+1..N identical (L^2_k),
///   Equal    - all components identical (L^2_eq).
struct Sector {
    enum class Kind { Full, Split, Equal };

    Kind kind = Kind::Full;
    int k = 0; // meaningful for Kind::Split only

    static Sector full() { return {Kind::Full, 0}; }
    static Sector split(int k) { return {Kind::Split, k}; }
    static Sector equal() { return {Kind::Equal, 0}; }

    bool operator==(const Sector& o) const { return kind == o.kind && (kind != Kind::Split || k == o.k); }

    std::string name() const {
        switch (kind) {
            case Kind::Full: return "full";
            case Kind::Split: return "sector(" + std::to_string(k) + ")";
            case Kind::Equal: return "equal";
        }
        return "?";
    }

    /// Edge groups as (multiplicity, first edge index) pairs; multiplicities sum to N.
    std::vector<std::pair<int, int>> groups(int edge_count) const {
        switch (kind) {
            case Kind::Full: {
                std::vector<std::pair<int, int>> g;
                g.reserve(static_cast<std::size_t>(edge_count));
                for (int j = 0; j < edge_count; ++j) g.emplace_back(1, j);
                return g;
            }
            case Kind::Split:
                return {{k, 0}, {edge_count - k, k}};
            case Kind::Equal:
                return {{edge_count, 0}};
        }
        return {};
    }
};

// =============================================================================
// Graph geometry and grids
// =============================================================================

/// Star graph with N half-line edges glued at a single vertex, delta-type
/// vertex coupling of strength alpha, and a declared symmetry sector.
struct StarGraphSpec {
    int edge_count = 0;
    double alpha = 0.0;
    Sector sector = Sector::full();

    void validate() const {
        if (edge_count < 2)
            throw ValidationError("star graph needs at least 2 edges, got " + std::to_string(edge_count));
        if (sector.kind == Sector::Kind::Split) {
            const int kmax = (edge_count - 1) / 2;
            if (sector.k < 1 || sector.k > kmax)
                throw ValidationError("sector index k=" + std::to_string(sector.k) +
                                      " outside 1..floor((N-1)/2)=" + std::to_string(kmax));
        }
    }
};

/// Uniform grid shared by all edges: nodes x_i = i*h, i = 0..M, h = L/M.
/// Node 0 is the common vertex.
struct GridSpec {
    double length = 0.0;  // truncation length L per edge
    int segments = 0;     // interior node count M; M+1 samples per edge

    double spacing() const { return length / segments; }
    double node(int i) const { return spacing() * i; }

    void validate() const {
        if (!(length > 0.0)) throw GridError("grid length must be positive");
        if (segments < 3) throw GridError("grid needs at least 3 segments");
    }

    bool operator==(const GridSpec& o) const { return length == o.length && segments == o.segments; }
};

/// Default truncation: profiles decay like exp(-sqrt(omega) x), so L scales
/// with 1/sqrt(omega); the floor keeps slowly decaying tails resolved.
inline GridSpec default_grid(double omega, int segments = 4000) {
    return GridSpec{std::max(40.0 / std::sqrt(omega), 20.0), segments};
}

// =============================================================================
// Graph-valued functions
// =============================================================================

/// Function on the star graph sampled on a shared grid. The vertex sample is
/// stored once and shared by all edges, so continuity at the vertex holds
/// structurally. Edge arrays hold nodes 1..M.
template <class ScalarT>
class GraphFunctionT {
public:
    using Scalar = ScalarT;

    GraphFunctionT(StarGraphSpec spec, GridSpec grid)
        : spec_(spec), grid_(grid), vertex_(Scalar{}),
          edges_(static_cast<std::size_t>(spec.edge_count),
                 std::vector<Scalar>(static_cast<std::size_t>(grid.segments), Scalar{})) {
        spec_.validate();
        grid_.validate();
    }

    const StarGraphSpec& spec() const { return spec_; }
    const GridSpec& grid() const { return grid_; }
    int edge_count() const { return spec_.edge_count; }
    int nodes_per_edge() const { return grid_.segments + 1; }

    Scalar& vertex() { return vertex_; }
    const Scalar& vertex() const { return vertex_; }

    /// Sample at node i of edge j (i = 0 is the shared vertex).
    Scalar value(int edge, int node) const {
        return node == 0 ? vertex_ : edges_[static_cast<std::size_t>(edge)][static_cast<std::size_t>(node - 1)];
    }
    void set_value(int edge, int node, Scalar v) {
        if (node == 0)
            vertex_ = v;
        else
            edges_[static_cast<std::size_t>(edge)][static_cast<std::size_t>(node - 1)] = v;
    }

    std::vector<Scalar>& edge_samples(int edge) { return edges_[static_cast<std::size_t>(edge)]; }
    const std::vector<Scalar>& edge_samples(int edge) const { return edges_[static_cast<std::size_t>(edge)]; }

    /// Fill all edges from per-edge callables f(edge, x).
    template <class F>
    void fill(F&& f) {
        vertex_ = f(0, 0.0);
        for (int j = 0; j < edge_count(); ++j)
            for (int i = 1; i <= grid_.segments; ++i)
                edges_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i - 1)] = f(j, grid_.node(i));
    }

    double max_abs() const {
        double m = std::abs(vertex_);
        for (const auto& e : edges_)
            for (const auto& v : e) m = std::max(m, std::abs(v));
        return m;
    }

private:
    StarGraphSpec spec_;
    GridSpec grid_;
    Scalar vertex_;
    std::vector<std::vector<Scalar>> edges_;
};

using GraphFunction = GraphFunctionT<Complex>;
using RealGraphFunction = GraphFunctionT<double>;

inline GraphFunction to_complex(const RealGraphFunction& f) {
    GraphFunction g(f.spec(), f.grid());
    g.vertex() = f.vertex();
    for (int j = 0; j < f.edge_count(); ++j)
        for (int i = 1; i <= f.grid().segments; ++i) g.set_value(j, i, Complex(f.value(j, i), 0.0));
    return g;
}

namespace detail {

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw GridError("operands sampled on different grids");
}

inline double conj_or_id(double x) { return x; }
inline Complex conj_or_id(const Complex& x) { return std::conj(x); }

} // namespace detail

// =============================================================================
// Inner products and norms (trapezoid quadrature)
// =============================================================================

/// L^2(G) scalar product, conjugate-linear in the second argument:
/// sum_j integral u_j conj(v_j) by the trapezoid rule.
template <class SU, class SV>
auto inner_product(const GraphFunctionT<SU>& u, const GraphFunctionT<SV>& v)
    -> decltype(SU{} * detail::conj_or_id(SV{})) {
    if (u.edge_count() != v.edge_count()) throw GridError("operands have different edge counts");
    detail::require_same_grid(u.grid(), v.grid());
    using R = decltype(SU{} * detail::conj_or_id(SV{}));
    const int m = u.grid().segments;
    const double h = u.grid().spacing();
    R acc{};
    for (int j = 0; j < u.edge_count(); ++j) {
        R edge = 0.5 * (u.value(j, 0) * detail::conj_or_id(v.value(j, 0)) +
                        u.value(j, m) * detail::conj_or_id(v.value(j, m)));
        for (int i = 1; i < m; ++i) edge += u.value(j, i) * detail::conj_or_id(v.value(j, i));
        acc += h * edge;
    }
    return acc;
}

/// L^q(G) norm, q >= 1: (sum_j integral |v_j|^q)^(1/q) by the trapezoid rule.
template <class S>
double norm_lq(const GraphFunctionT<S>& v, double q) {
    if (q < 1.0) throw ParameterError("L^q norm requires q >= 1, got q=" + std::to_string(q));
    const int m = v.grid().segments;
    const double h = v.grid().spacing();
    double acc = 0.0;
    for (int j = 0; j < v.edge_count(); ++j) {
        double edge = 0.5 * (std::pow(std::abs(v.value(j, 0)), q) + std::pow(std::abs(v.value(j, m)), q));
        for (int i = 1; i < m; ++i) edge += std::pow(std::abs(v.value(j, i)), q);
        acc += h * edge;
    }
    return std::pow(acc, 1.0 / q);
}

/// Squared L^2 norm of the piecewise-linear derivative: sum over cells of
/// |v_{i+1} - v_i|^2 / h. Equals the P1 stiffness form without vertex term.
template <class S>
double derivative_norm_sq(const GraphFunctionT<S>& v) {
    const int m = v.grid().segments;
    const double h = v.grid().spacing();
    double acc = 0.0;
    for (int j = 0; j < v.edge_count(); ++j)
        for (int i = 0; i < m; ++i) {
            const auto d = v.value(j, i + 1) - v.value(j, i);
            acc += std::norm(d) / h;
        }
    return acc;
}

/// H^1(G) pairing: <u,v>_2 + <u',v'>_2 with the cell-difference derivative.
template <class SU, class SV>
auto h1_inner_product(const GraphFunctionT<SU>& u, const GraphFunctionT<SV>& v)
    -> decltype(SU{} * detail::conj_or_id(SV{})) {
    using R = decltype(SU{} * detail::conj_or_id(SV{}));
    detail::require_same_grid(u.grid(), v.grid());
    const int m = u.grid().segments;
    const double h = u.grid().spacing();
    R acc = inner_product(u, v);
    for (int j = 0; j < u.edge_count(); ++j)
        for (int i = 0; i < m; ++i) {
            const auto du = u.value(j, i + 1) - u.value(j, i);
            const auto dv = v.value(j, i + 1) - v.value(j, i);
            acc += du * detail::conj_or_id(dv) / h;
        }
    return acc;
}

template <class S>
double h1_norm(const GraphFunctionT<S>& v) {
    const double n2 = norm_lq(v, 2.0);
    return std::sqrt(n2 * n2 + derivative_norm_sq(v));
}

// =============================================================================
// Sector reduction
// =============================================================================

/// Weighted representative of a sector member: one sample set per edge group,
/// carrying the group multiplicity. Inner products computed with the weights
/// agree exactly with full-graph inner products on sector members.
template <class ScalarT>
struct SectorReducedT {
    struct Component {
        int multiplicity = 0;
        std::vector<ScalarT> samples; // nodes 0..M (own copy of the vertex)
    };
    GridSpec grid;
    std::vector<Component> components;

    double weighted_norm_sq() const {
        const double h = grid.spacing();
        double acc = 0.0;
        for (const auto& c : components) {
            const std::size_t m = c.samples.size() - 1;
            double edge = 0.5 * (std::norm(c.samples[0]) + std::norm(c.samples[m]));
            for (std::size_t i = 1; i < m; ++i) edge += std::norm(c.samples[i]);
            acc += c.multiplicity * h * edge;
        }
        return acc;
    }
};

using SectorReduced = SectorReducedT<Complex>;
using RealSectorReduced = SectorReducedT<double>;

/// Collapse a sector member to its weighted representative. Components that
/// should coincide are compared sample-by-sample; disagreement beyond
/// 1e-12 * max|V| raises a SectorError.
template <class S>
SectorReducedT<S> reduce_to_sector(const GraphFunctionT<S>& v) {
    const auto groups = v.spec().sector.groups(v.edge_count());
    const double tol = 1e-12 * std::max(1.0, v.max_abs());
    SectorReducedT<S> out;
    out.grid = v.grid();
    const int m = v.grid().segments;
    for (const auto& [mult, first] : groups) {
        for (int j = first + 1; j < first + mult; ++j)
            for (int i = 1; i <= m; ++i)
                if (std::abs(v.value(j, i) - v.value(first, i)) > tol)
                    throw SectorError("edge " + std::to_string(j + 1) + " deviates from edge " +
                                      std::to_string(first + 1) + " beyond sector tolerance");
        typename SectorReducedT<S>::Component c;
        c.multiplicity = mult;
        c.samples.resize(static_cast<std::size_t>(m + 1));
        for (int i = 0; i <= m; ++i) c.samples[static_cast<std::size_t>(i)] = v.value(first, i);
        out.components.push_back(std::move(c));
    }
    return out;
}

// =============================================================================
// Vertex trace
// =============================================================================

template <class ScalarT>
struct VertexTraceT {
    ScalarT value;
    std::vector<ScalarT> derivatives; // one-sided derivative per edge

    ScalarT flux() const {
        ScalarT s{};
        for (const auto& d : derivatives) s += d;
        return s;
    }
};

/// Vertex value plus one-sided first derivatives by the second-order stencil
/// (-3 v0 + 4 v1 - v2) / (2h), exact on polynomials of degree <= 2.
template <class S>
VertexTraceT<S> vertex_trace(const GraphFunctionT<S>& v) {
    if (v.grid().segments < 3) throw GridError("vertex trace needs at least 3 grid segments");
    const double h = v.grid().spacing();
    VertexTraceT<S> t;
    t.value = v.value(0, 0);
    t.derivatives.reserve(static_cast<std::size_t>(v.edge_count()));
    for (int j = 0; j < v.edge_count(); ++j)
        t.derivatives.push_back((-3.0 * v.value(j, 0) + 4.0 * v.value(j, 1) - v.value(j, 2)) / (2.0 * h));
    return t;
}

} // namespace starnls
