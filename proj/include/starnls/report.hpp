#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "starnls/dynamics.hpp"
#include "starnls/spectral.hpp"
#include "starnls/verdict.hpp"

namespace starnls {

// =============================================================================
// Deterministic serialization helpers
// =============================================================================

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

/// Minimal order-preserving JSON writer; fields appear exactly as added.
class JsonObject {
public:
    JsonObject& field(const std::string& key, const std::string& value) {
        return raw(key, "\"" + json_escape(value) + "\"");
    }
    JsonObject& field(const std::string& key, const char* value) {
        return field(key, std::string(value));
    }
    JsonObject& field(const std::string& key, double value) { return raw(key, format_double(value)); }
    JsonObject& field(const std::string& key, int value) { return raw(key, std::to_string(value)); }
    JsonObject& field(const std::string& key, bool value) { return raw(key, value ? "true" : "false"); }
    JsonObject& field(const std::string& key, const std::vector<double>& values) {
        std::string arr = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) arr += ", ";
            arr += format_double(values[i]);
        }
        return raw(key, arr + "]");
    }
    JsonObject& object(const std::string& key, const JsonObject& child) {
        return raw(key, child.str(indent_ + 1));
    }
    JsonObject& raw(const std::string& key, const std::string& rendered) {
        entries_.emplace_back(key, rendered);
        return *this;
    }

    std::string str(int indent = 0) const {
        const std::string pad(static_cast<std::size_t>(2 * (indent + 1)), ' ');
        const std::string close_pad(static_cast<std::size_t>(2 * indent), ' ');
        std::string out = "{\n";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += pad + "\"" + json_escape(entries_[i].first) + "\": " + entries_[i].second;
            out += i + 1 < entries_.size() ? ",\n" : "\n";
        }
        return out + close_pad + "}";
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    int indent_ = 0;
};

/// CSV table with a fixed header; all formatting flows through format_double.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) {
        if (row.size() != header_.size())
            throw ValidationError("CSV row width does not match the header");
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::string out = join(header_);
        for (const auto& r : rows_) out += join(r);
        return out;
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ",";
            line += cells[i];
        }
        return line + "\n";
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output path: " + path);
    out << content;
    if (!out) throw ValidationError("write failed: " + path);
}

// =============================================================================
// Report renderers
// =============================================================================

inline JsonObject grid_json(const GridSpec& grid) {
    JsonObject g;
    g.field("length", grid.length).field("segments", grid.segments).field("spacing", grid.spacing());
    return g;
}

inline JsonObject profile_json(const ProfileSpec& spec) {
    JsonObject p;
    p.field("family", family_name(spec.family))
        .field("N", spec.edge_count)
        .field("k", spec.bump_count)
        .field("alpha", spec.alpha)
        .field("omega", spec.omega)
        .field("p", spec.p)
        .field("mu", spec.mu);
    if (spec.family == ProfileFamily::KirchhoffShifted) p.field("shift", spec.shift);
    return p;
}

inline std::string render_report(const StabilityReport& r) {
    JsonObject j;
    j.object("profile", profile_json(r.profile));
    j.field("space", space_name(r.space));
    j.field("n_L1", r.n_l1).field("n_L2", r.n_l2).field("n_H", r.n_hessian);
    j.field("kernel_L1", r.kernel_l1).field("kernel_L2", r.kernel_l2);
    j.field("L2_kernel_cosine", r.l2_kernel_cosine);
    j.field("p_omega", slope_name(r.p_omega));
    if (r.critical_omega) j.field("critical_omega", *r.critical_omega);
    j.field("verdict", verdict_name(r.verdict));
    j.field("source", source_name(r.source));
    j.field("wellposed_caveat", r.wellposed_caveat);
    if (!r.note.empty()) j.field("note", r.note);
    if (r.source == ReportSource::Numerical) j.object("grid", grid_json(r.grid));
    return j.str() + "\n";
}

inline std::string render_cross_check(const CrossCheck& c) {
    JsonObject j;
    j.object("profile", profile_json(c.numerical.profile));
    j.field("verdict", verdict_name(c.agree() ? c.numerical.verdict : Verdict::Inconclusive));
    j.field("source", source_name(c.source));
    JsonObject num, ana;
    num.field("verdict", verdict_name(c.numerical.verdict))
        .field("space", space_name(c.numerical.space))
        .field("n_H", c.numerical.n_hessian)
        .field("p_omega", slope_name(c.numerical.p_omega))
        .field("kernel_L1", c.numerical.kernel_l1)
        .field("kernel_L2", c.numerical.kernel_l2);
    ana.field("verdict", verdict_name(c.analytic.verdict))
        .field("space", space_name(c.analytic.space))
        .field("n_H", c.analytic.n_hessian)
        .field("p_omega", slope_name(c.analytic.p_omega));
    if (c.analytic.critical_omega) ana.field("critical_omega", *c.analytic.critical_omega);
    j.object("numerical", num);
    j.object("analytic", ana);
    j.field("wellposed_caveat", c.numerical.wellposed_caveat);
    j.object("grid", grid_json(c.numerical.grid));
    return j.str() + "\n";
}

inline std::string render_spectrum(const SpectrumSummary& s, const DiscreteOperator& op) {
    JsonObject j;
    j.field("operator", operator_name(op.kind));
    j.field("sector", op.sector.name());
    j.object("profile", profile_json(op.profile));
    j.field("n_neg", s.negative_count);
    j.field("kernel_dim", s.kernel_dimension);
    j.field("kernel_band", s.kernel_band);
    j.field("kernel_ambiguous", s.kernel_ambiguous);
    j.field("lowest_eigenvalues", s.lowest);
    j.field("provenance", "numerical");
    j.object("grid", grid_json(op.grid));
    return j.str() + "\n";
}

inline std::string render_profile_csv(const RealGraphFunction& f) {
    CsvTable csv({"edge", "x", "value"});
    for (int j = 0; j < f.edge_count(); ++j)
        for (int i = 0; i <= f.grid().segments; ++i)
            csv.add_row({std::to_string(j + 1), format_double(f.grid().node(i)),
                         format_double(f.value(j, i))});
    return csv.str();
}

inline std::string render_trace_csv(const OrbitTrace& t) {
    CsvTable csv({"t", "mass", "energy", "distance"});
    for (std::size_t i = 0; i < t.times.size(); ++i)
        csv.add_row({format_double(t.times[i]), format_double(t.mass[i]),
                     format_double(t.energy[i]), format_double(t.distance[i])});
    return csv.str();
}

inline std::string render_slope_csv(const std::vector<std::array<double, 4>>& rows) {
    CsvTable csv({"omega", "J", "J_tilde", "p_omega"});
    for (const auto& r : rows)
        csv.add_row({format_double(r[0]), format_double(r[1]), format_double(r[2]),
                     format_double(r[3])});
    return csv.str();
}

} // namespace starnls
