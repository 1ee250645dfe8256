#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "starnls/slope.hpp"
#include "starnls/spectral.hpp"

namespace starnls {

// =============================================================================
// Stability classification
// =============================================================================

enum class Verdict { StableInSector, UnstableInE, Inconclusive };
enum class StabilitySpace { Full, SectorK, Equal };
enum class SlopeIndicator { Negative = 0, Positive = 1, Degenerate, NotUsed };
enum class ReportSource { Numerical, AnalyticTable, BothAgree, Conflict };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::StableInSector: return "stable-in-sector";
        case Verdict::UnstableInE: return "unstable-in-E";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline std::string space_name(StabilitySpace s) {
    switch (s) {
        case StabilitySpace::Full: return "E";
        case StabilitySpace::SectorK: return "E_k";
        case StabilitySpace::Equal: return "E_eq";
    }
    return "?";
}

inline std::string source_name(ReportSource s) {
    switch (s) {
        case ReportSource::Numerical: return "numerical";
        case ReportSource::AnalyticTable: return "analytic-table";
        case ReportSource::BothAgree: return "both-agree";
        case ReportSource::Conflict: return "conflict";
    }
    return "?";
}

inline std::string slope_name(SlopeIndicator s) {
    switch (s) {
        case SlopeIndicator::Negative: return "0";
        case SlopeIndicator::Positive: return "1";
        case SlopeIndicator::Degenerate: return "degenerate";
        case SlopeIndicator::NotUsed: return "n/a";
    }
    return "?";
}

struct StabilityReport {
    ProfileSpec profile;
    StabilitySpace space = StabilitySpace::SectorK; // space in which the verdict is stated
    int n_l1 = -1;                                  // Morse indices; -1 when not computed
    int n_l2 = -1;
    int n_hessian = -1;
    int kernel_l1 = -1;
    int kernel_l2 = -1;
    double l2_kernel_cosine = 0.0; // |cos| between L2 kernel vector and the profile
    SlopeIndicator p_omega = SlopeIndicator::NotUsed;
    std::optional<double> critical_omega; // omega* or omega-hat when the regime has one
    Verdict verdict = Verdict::Inconclusive;
    ReportSource source = ReportSource::Numerical;
    bool wellposed_caveat = false; // instability asserted at p <= 2, where the C^2
                                   // data-to-solution machinery is not available
    std::string note;
    GridSpec grid{};
};

/// Verdict from the two Grillakis-Shatah-Strauss quantities:
/// stable when n(H) = p(omega) = 1, unstable when n(H) - p(omega) = 1,
/// no information otherwise.
inline Verdict verdict_from_counts(int n_hessian, SlopeIndicator p) {
    if (p == SlopeIndicator::Degenerate || p == SlopeIndicator::NotUsed) return Verdict::Inconclusive;
    const int pv = p == SlopeIndicator::Positive ? 1 : 0;
    if (n_hessian == 1 && pv == 1) return Verdict::StableInSector;
    if (n_hessian - pv == 1) return Verdict::UnstableInE;
    return Verdict::Inconclusive;
}

namespace detail {

inline double kernel_profile_cosine(const DiscreteOperator& op, const KernelResult& ker,
                                    const RealGraphFunction& phi) {
    if (ker.vectors.empty()) return 0.0;
    const auto target = to_dof_vector(op, phi);
    double best = 0.0;
    const double tn = std::sqrt(mass_inner(op, target, target));
    for (const auto& v : ker.vectors) {
        const double c = std::abs(mass_inner(op, v, target)) /
                         (tn * std::sqrt(mass_inner(op, v, v)));
        best = std::max(best, c);
    }
    return best;
}

inline void finish_unstable_flags(StabilityReport& r) {
    if (r.verdict == Verdict::UnstableInE) {
        r.space = StabilitySpace::Full;
        if (r.profile.p <= 2.0) r.wellposed_caveat = true;
    }
}

} // namespace detail

// =============================================================================
// Numerical route: assembled operators + quadrature slope
// =============================================================================

/// Classify one standing wave from computed Morse indices and the computed
/// slope sign. Supported branches: attractive with k >= 1 in Sector(k),
/// Kirchhoff half-soliton in the Equal sector, repulsive in the full space.
inline StabilityReport classify_numerical(const ProfileSpec& spec, const GridSpec& grid) {
    spec.validate();
    StabilityReport r;
    r.profile = spec;
    r.source = ReportSource::Numerical;
    r.grid = grid;

    Sector sector = Sector::full();
    switch (spec.family) {
        case ProfileFamily::AttractiveDelta:
            if (spec.bump_count < 1)
                throw ValidationError("numerical classification of the attractive family needs k >= 1 "
                                      "(the sector theorems are stated in L^2_k)");
            sector = Sector::split(spec.bump_count);
            r.space = StabilitySpace::SectorK;
            break;
        case ProfileFamily::KirchhoffHalfSoliton:
            sector = Sector::equal();
            r.space = StabilitySpace::Equal;
            break;
        case ProfileFamily::RepulsiveDelta:
            sector = Sector::full();
            r.space = StabilitySpace::Full;
            break;
        case ProfileFamily::KirchhoffShifted:
            throw ValidationError("no stability classification for the shifted Kirchhoff family");
    }

    const auto phi = build_profile(spec, grid);
    const auto l1 = assemble(OperatorKind::L1, spec, grid, sector);
    const auto l2 = assemble(OperatorKind::L2, spec, grid, sector);
    r.n_l1 = morse_index(l1);
    r.n_l2 = morse_index(l2);
    r.n_hessian = r.n_l1 + r.n_l2;
    const auto ker1 = kernel_detect(l1);
    const auto ker2 = kernel_detect(l2);
    r.kernel_l1 = ker1.dimension;
    r.kernel_l2 = ker2.dimension;
    r.l2_kernel_cosine = detail::kernel_profile_cosine(l2, ker2, phi);
    if (ker1.ambiguous || ker2.ambiguous) {
        r.verdict = Verdict::Inconclusive;
        r.note = "ambiguous kernel band; refine the grid";
        return r;
    }

    if (spec.family == ProfileFamily::RepulsiveDelta) {
        // The repulsive Hessian is non-negative with kernel spanned by the
        // profile; stability follows without a slope condition.
        r.p_omega = SlopeIndicator::NotUsed;
        if (r.n_hessian == 0 && r.kernel_l1 == 0 && r.kernel_l2 == 1 &&
            r.l2_kernel_cosine > 1.0 - 1e-6) {
            r.verdict = Verdict::StableInSector;
        } else {
            r.verdict = Verdict::Inconclusive;
            r.note = "repulsive Hessian counts deviate from the non-negativity pattern";
        }
        return r;
    }

    try {
        const SlopeSign s = spec.family == ProfileFamily::KirchhoffHalfSoliton
                                ? slope_indicator(spec.edge_count, 0, 0.0, spec.omega, spec.p)
                                : slope_indicator(spec.edge_count, spec.bump_count, spec.alpha,
                                                  spec.omega, spec.p);
        r.p_omega = s == SlopeSign::Positive ? SlopeIndicator::Positive : SlopeIndicator::Negative;
    } catch (const NumericalError&) {
        r.p_omega = SlopeIndicator::Degenerate;
        r.verdict = Verdict::Inconclusive;
        r.note = "slope degenerate at this frequency";
        return r;
    }

    r.verdict = verdict_from_counts(r.n_hessian, r.p_omega);
    if (r.verdict == Verdict::Inconclusive && r.note.empty())
        r.note = "n(H) - p(omega) outside the conclusive range";
    detail::finish_unstable_flags(r);
    return r;
}

inline StabilityReport classify_numerical(const ProfileSpec& spec) {
    return classify_numerical(spec, default_grid(spec.omega));
}

// =============================================================================
// Analytic route: closed-form theorem tables
// =============================================================================

/// Classify one standing wave by the closed-form case tables, computing the
/// critical frequency when the regime is split by one.
inline StabilityReport classify_analytic(const ProfileSpec& spec) {
    spec.validate();
    StabilityReport r;
    r.profile = spec;
    r.source = ReportSource::AnalyticTable;

    const auto conclude = [&](int n_hessian, SlopeIndicator p, StabilitySpace stable_space) {
        r.n_hessian = n_hessian;
        r.p_omega = p;
        r.verdict = verdict_from_counts(n_hessian, p);
        r.space = r.verdict == Verdict::StableInSector ? stable_space : StabilitySpace::Full;
        detail::finish_unstable_flags(r);
    };

    switch (spec.family) {
        case ProfileFamily::AttractiveDelta: {
            if (spec.bump_count < 1) {
                r.note = "symmetric branch k = 0 is outside the attractive theorem table";
                return r;
            }
            const int n_h = spec.alpha < 0.0 ? 2 : 1;
            if (spec.alpha < 0.0) {
                if (spec.p <= 5.0) {
                    conclude(n_h, SlopeIndicator::Positive, StabilitySpace::SectorK);
                } else {
                    const auto star = find_critical_omega(spec.edge_count, spec.bump_count,
                                                          spec.alpha, spec.p);
                    r.critical_omega = star;
                    if (std::abs(spec.omega - *star) <= 1e-9 * *star) {
                        r.p_omega = SlopeIndicator::Degenerate;
                        r.note = "omega at the critical frequency omega*";
                    } else if (spec.omega < *star) {
                        conclude(n_h, SlopeIndicator::Positive, StabilitySpace::SectorK);
                    } else {
                        conclude(n_h, SlopeIndicator::Negative, StabilitySpace::SectorK);
                        r.note = "n(H) - p(omega) = 2 beyond omega*: theory gives no information";
                    }
                }
            } else {
                if (spec.p <= 3.0) {
                    conclude(n_h, SlopeIndicator::Positive, StabilitySpace::SectorK);
                } else if (spec.p < 5.0) {
                    const auto hat = find_critical_omega(spec.edge_count, spec.bump_count,
                                                         spec.alpha, spec.p);
                    r.critical_omega = hat;
                    if (std::abs(spec.omega - *hat) <= 1e-9 * *hat) {
                        r.p_omega = SlopeIndicator::Degenerate;
                        r.note = "omega at the critical frequency omega-hat";
                    } else if (spec.omega < *hat) {
                        conclude(n_h, SlopeIndicator::Negative, StabilitySpace::SectorK);
                    } else {
                        conclude(n_h, SlopeIndicator::Positive, StabilitySpace::SectorK);
                    }
                } else {
                    conclude(n_h, SlopeIndicator::Negative, StabilitySpace::SectorK);
                }
            }
            return r;
        }
        case ProfileFamily::KirchhoffHalfSoliton: {
            if (spec.p == 5.0) {
                r.p_omega = SlopeIndicator::Degenerate;
                r.note = "slope vanishes identically at p = 5";
                return r;
            }
            conclude(1, spec.p < 5.0 ? SlopeIndicator::Positive : SlopeIndicator::Negative,
                     StabilitySpace::Equal);
            return r;
        }
        case ProfileFamily::RepulsiveDelta:
            r.n_hessian = 0;
            r.p_omega = SlopeIndicator::NotUsed;
            r.verdict = Verdict::StableInSector;
            r.space = StabilitySpace::Full;
            return r;
        case ProfileFamily::KirchhoffShifted:
            r.note = "shifted soliton family has no stability table here";
            return r;
    }
    return r;
}

// =============================================================================
// Cross-check
// =============================================================================

struct CrossCheck {
    StabilityReport numerical;
    StabilityReport analytic;
    ReportSource source = ReportSource::BothAgree;

    bool agree() const { return source == ReportSource::BothAgree; }
};

/// Run both classifiers and compare verdicts (and, for stable verdicts, the
/// space the stability is stated in).
inline CrossCheck cross_check(const ProfileSpec& spec, const GridSpec& grid) {
    CrossCheck c;
    c.numerical = classify_numerical(spec, grid);
    c.analytic = classify_analytic(spec);
    const bool same_verdict = c.numerical.verdict == c.analytic.verdict;
    const bool same_space = c.numerical.verdict != Verdict::StableInSector ||
                            c.numerical.space == c.analytic.space;
    c.source = same_verdict && same_space ? ReportSource::BothAgree : ReportSource::Conflict;
    return c;
}

inline CrossCheck cross_check(const ProfileSpec& spec) {
    return cross_check(spec, default_grid(spec.omega));
}

} // namespace starnls
