#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "starnls/errors.hpp"

namespace starnls {

// =============================================================================
// Adaptive Gauss-Kronrod (G7, K15) quadrature
// =============================================================================

namespace detail {

// K15 abscissae on [0,1] (positive half) and weights; G7 weights on shared nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};

inline constexpr std::array<double, 8> kKronrodWeights = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};

// Gauss weights for Kronrod nodes with odd index (the embedded G7 rule).
inline constexpr std::array<double, 4> kGaussWeights = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

template <class F>
void gk15(const F& f, double a, double b, double& result, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = kKronrodWeights[0] * f(mid);
    double gauss = kGaussWeights[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * pair;
    }
    result = kronrod * half;
    error = std::abs((kronrod - gauss) * half);
}

} // namespace detail

/// Integrate f over [a, b] to the given absolute tolerance by recursive
/// interval bisection of the embedded G7/K15 pair.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48) {
    struct Rec {
        const F& f;
        double operator()(double lo, double hi, double tol, int depth) const {
            double val, err;
            detail::gk15(f, lo, hi, val, err);
            if (err <= tol || depth <= 0) return val;
            const double mid = 0.5 * (lo + hi);
            return (*this)(lo, mid, 0.5 * tol, depth - 1) + (*this)(mid, hi, 0.5 * tol, depth - 1);
        }
    };
    if (a == b) return 0.0;
    return Rec{f}(a, b, tol, max_depth);
}

} // namespace starnls
