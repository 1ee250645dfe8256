#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "starnls/report.hpp"
#include "starnls/verdict.hpp"

namespace starnls {

// =============================================================================
// Parameter sweeps
// =============================================================================

/// Cartesian sweep specification. Frequencies may be absolute or relative to
/// the family's existence threshold (omega = r * alpha^2/(N-2k)^2 for the
/// attractive family, r * alpha^2/N^2 for the repulsive one).
struct SweepSpec {
    std::vector<ProfileFamily> families{ProfileFamily::AttractiveDelta};
    std::vector<int> edge_counts{3};
    std::vector<int> bump_counts{1};
    std::vector<double> alphas{-1.0};
    std::vector<double> omegas;          // absolute frequencies
    std::vector<double> omega_rel;       // threshold multiples
    std::vector<double> exponents{3.0};  // p
    int grid_segments = 4000;

    void validate() const {
        if (families.empty() || edge_counts.empty() || exponents.empty())
            throw ValidationError("sweep needs at least one family, N and p");
        if (omegas.empty() && omega_rel.empty())
            throw ValidationError("sweep needs --omega or --omega-rel values");
    }
};

struct SweepPoint {
    ProfileSpec spec;
    bool valid = false;
    std::string invalid_reason;
};

/// Expand the cartesian grid; every point is validated against the profile
/// invariants, and invalid points are kept with their rejection reason.
inline std::vector<SweepPoint> expand_sweep(const SweepSpec& sw) {
    sw.validate();
    std::vector<SweepPoint> points;
    const auto push = [&](ProfileSpec spec) {
        SweepPoint pt;
        pt.spec = spec;
        try {
            spec.validate();
            pt.valid = true;
        } catch (const ValidationError& err) {
            pt.invalid_reason = err.what();
        }
        points.push_back(std::move(pt));
    };
    for (const auto family : sw.families)
        for (const int n : sw.edge_counts)
            for (const double p : sw.exponents) {
                const auto ks = family == ProfileFamily::AttractiveDelta ? sw.bump_counts
                                                                         : std::vector<int>{0};
                const auto as = family == ProfileFamily::KirchhoffHalfSoliton ? std::vector<double>{0.0}
                                                                              : sw.alphas;
                for (const int k : ks)
                    for (const double alpha : as) {
                        std::vector<double> omegas = sw.omegas;
                        for (const double r : sw.omega_rel) {
                            if (family == ProfileFamily::AttractiveDelta) {
                                const double d = n - 2.0 * k;
                                omegas.push_back(r * alpha * alpha / (d * d));
                            } else if (family == ProfileFamily::RepulsiveDelta) {
                                omegas.push_back(r * alpha * alpha / (static_cast<double>(n) * n));
                            } else {
                                omegas.push_back(r); // Kirchhoff has no threshold; r is absolute
                            }
                        }
                        for (const double omega : omegas) {
                            ProfileSpec spec;
                            switch (family) {
                                case ProfileFamily::AttractiveDelta:
                                    spec = ProfileSpec::attractive(n, k, alpha, omega, p);
                                    break;
                                case ProfileFamily::KirchhoffHalfSoliton:
                                    spec = ProfileSpec::kirchhoff(n, omega, p);
                                    break;
                                case ProfileFamily::KirchhoffShifted:
                                    spec = ProfileSpec::kirchhoff_shifted(n, 0.0, omega, p);
                                    break;
                                case ProfileFamily::RepulsiveDelta:
                                    spec = ProfileSpec::repulsive(n, alpha, omega, p);
                                    break;
                            }
                            push(spec);
                        }
                    }
            }
    return points;
}

struct SweepRow {
    SweepPoint point;
    CrossCheck check;   // meaningful when status == "ok"
    std::string status; // ok | invalid | error
    std::string detail;
};

inline int sweep_thread_count() {
    if (const char* env = std::getenv("STARNLS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Classify every point of the sweep, distributing valid points over a worker
/// pool. Rows come back in grid order regardless of the thread schedule.
inline std::vector<SweepRow> run_sweep(const SweepSpec& sw) {
    const auto points = expand_sweep(sw);
    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            SweepRow& row = rows[i];
            row.point = points[i];
            if (!points[i].valid) {
                row.status = "invalid";
                row.detail = points[i].invalid_reason;
                continue;
            }
            try {
                const GridSpec grid = default_grid(points[i].spec.omega, sw.grid_segments);
                row.check = cross_check(points[i].spec, grid);
                row.status = "ok";
            } catch (const ValidationError& err) {
                row.status = "invalid";
                row.detail = err.what();
            } catch (const NumericalError& err) {
                row.status = "error";
                row.detail = err.what();
            }
        }
    };
    const int threads = sweep_thread_count();
    if (threads <= 1 || points.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

inline std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
    CsvTable csv({"family", "N", "k", "alpha", "omega", "p", "mu", "n_H", "p_omega", "verdict",
                  "space", "source", "status", "detail"});
    for (const auto& row : rows) {
        const auto& s = row.point.spec;
        std::string n_h = "-", p_om = "-", verdict = "-", space = "-", source = "-";
        if (row.status == "ok") {
            const auto& num = row.check.numerical;
            n_h = std::to_string(num.n_hessian);
            p_om = slope_name(num.p_omega);
            verdict = verdict_name(row.check.agree() ? num.verdict : Verdict::Inconclusive);
            space = space_name(num.space);
            source = source_name(row.check.source);
        }
        csv.add_row({family_name(s.family), std::to_string(s.edge_count),
                     std::to_string(s.bump_count), format_double(s.alpha), format_double(s.omega),
                     format_double(s.p), std::to_string(s.mu), n_h, p_om, verdict, space, source,
                     row.status, row.detail.empty() ? "-" : row.detail});
    }
    return csv.str();
}

} // namespace starnls
