#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/spectrum.hpp"
#include "magnomech/stability.hpp"
#include "magnomech/steadystate.hpp"

namespace magnomech {

struct SweepOutputs {
    bool eigenvalues = true;
    bool spread = true;
    bool ep = false;           // 1-D sweeps: locate_ep over the axis, reported in metadata
    bool s_param = false;
    bool stability = false;
    bool steady_state = false; // recompute G_mb per point from (eta, g_mb_bare)
};

struct SweepAxis {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 2;
};

struct SweepSpec {
    std::string name = "sweep";
    NormalizedParams base;
    ModelOptions options;
    std::vector<SweepAxis> axes; // one or two
    SweepOutputs outputs;
    double g_mb_bare = 0.0;      // bare coupling for the steady_state output
    double ep_tol_rel = 1e-4;
};

struct SweepRecord {
    double axis1 = 0.0;
    std::optional<double> axis2;
    std::optional<std::array<Complex, 3>> eigen;
    std::optional<double> spread_value;
    std::optional<Complex> s_value;
    std::optional<bool> stable;
    std::array<std::optional<bool>, 4> conditions{};
    std::string error;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRecord> records; // row-major, axis-1 fastest
    std::optional<EpReport> ep;
};

inline void validate_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("sweep needs one or two axes");
    for (const SweepAxis& ax : spec.axes) {
        if (ax.n < 2) throw std::invalid_argument("axis " + ax.name + ": n must be >= 2");
        if (!(ax.lo < ax.hi)) throw std::invalid_argument("axis " + ax.name + ": needs lo < hi");
        check_axis_name(ax.name);
    }
    if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
        throw std::invalid_argument("sweep axes must be distinct");
    if (spec.g_mb_bare < 0.0) throw std::invalid_argument("negative coupling: g_mb_bare");
    validate(spec.base);
}

// Grid values via the exact ratio i/(n-1), so refined grids reproduce shared
// points bit-for-bit.
inline std::vector<double> axis_grid(const SweepAxis& ax) {
    std::vector<double> g(ax.n);
    for (std::size_t i = 0; i < ax.n; ++i)
        g[i] = ax.lo + (ax.hi - ax.lo) * (double(i) / double(ax.n - 1));
    return g;
}

namespace detail {

inline void compute_point(const SweepSpec& spec, SweepRecord& rec) {
    NormalizedParams p = spec.base;
    try {
        set_field(p, spec.axes[0].name, rec.axis1);
        if (rec.axis2) set_field(p, spec.axes[1].name, *rec.axis2);
        p = validate(p);
    } catch (const std::exception& e) {
        rec.error = std::string("params: ") + e.what();
        return;
    }

    Complex delta_m_eff(p.delta_m, 0.0);
    if (spec.outputs.steady_state) {
        try {
            const auto ss = solve_steady_state(p, spec.g_mb_bare, spec.options);
            const SteadyState& sel = ss.branches.front();
            p.g_mb_eff = sel.g_mb_eff_out;
            delta_m_eff += spec.g_mb_bare * 2.0 * sel.b_mean.real();
        } catch (const std::exception& e) {
            rec.error = std::string("steady_state: ") + e.what();
            return;
        }
    }

    if (spec.outputs.eigenvalues || spec.outputs.spread) {
        const auto ev = eigenvalues(build_h_eff(p, spec.options));
        if (spec.outputs.eigenvalues) rec.eigen = ev;
        if (spec.outputs.spread) rec.spread_value = spread(ev);
    }
    if (spec.outputs.s_param) {
        try {
            rec.s_value = stability_parameter(p, delta_m_eff);
        } catch (const std::domain_error& e) {
            rec.error += rec.error.empty() ? "" : "; ";
            rec.error += std::string("s_param: ") + e.what();
        }
    }
    if (spec.outputs.stability) {
        const DriftMatrix A = build_drift(p, delta_m_eff, spec.options);
        const StabilityReport roots_part = stability_from_roots(A);
        if (!roots_part.solver_converged) {
            rec.error += rec.error.empty() ? "" : "; ";
            rec.error += "stability: root solver did not converge";
        }
        rec.stable = roots_part.stable_by_roots;
        const ParametricConditions c = parametric_conditions(p, delta_m_eff);
        rec.conditions[0] = c.c1_applicable ? std::optional<bool>(c.c1) : std::nullopt;
        rec.conditions[1] = c.c2;
        rec.conditions[2] = c.c3;
        rec.conditions[3] = c.c4;
    }
}

} // namespace detail

// Evaluates every grid point (optionally across threads; the output is
// byte-identical regardless), then branch-tracks eigenvalue triples
// sequentially along axis 1 within each row.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1) {
    validate_spec(spec);
    const std::vector<double> grid1 = axis_grid(spec.axes[0]);
    const std::vector<double> grid2 =
        spec.axes.size() == 2 ? axis_grid(spec.axes[1]) : std::vector<double>{};
    const std::size_t n1 = grid1.size();
    const std::size_t n2 = grid2.empty() ? 1 : grid2.size();

    SweepResult out;
    out.spec = spec;
    out.records.resize(n1 * n2);
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            SweepRecord& rec = out.records[i2 * n1 + i1];
            rec.axis1 = grid1[i1];
            if (!grid2.empty()) rec.axis2 = grid2[i2];
        }
    }

    const std::size_t total = out.records.size();
    if (threads <= 1 || total < 2) {
        for (SweepRecord& rec : out.records) detail::compute_point(spec, rec);
    } else {
        const unsigned nt = std::min<unsigned>(threads, unsigned(total));
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < total; i += nt)
                    detail::compute_point(spec, out.records[i]);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    if (spec.outputs.eigenvalues) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            std::array<Complex, 3> prev{};
            bool have_prev = false;
            for (std::size_t i1 = 0; i1 < n1; ++i1) {
                SweepRecord& rec = out.records[i2 * n1 + i1];
                if (!rec.eigen) continue; // errored point breaks the chain
                *rec.eigen = have_prev ? track_branches(prev, *rec.eigen)
                                       : sort_canonical(*rec.eigen);
                prev = *rec.eigen;
                have_prev = true;
            }
        }
    }

    if (spec.outputs.ep && spec.axes.size() == 1) {
        out.ep = locate_ep(spec.base, spec.axes[0].name, spec.axes[0].lo, spec.axes[0].hi,
                           spec.ep_tol_rel, spec.options);
    }
    return out;
}

// --- serialization ---------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

} // namespace detail

inline std::string csv_header(bool has_axis2) {
    std::string h = "axis1";
    if (has_axis2) h += ",axis2";
    h += ",re1,im1,re2,im2,re3,im3,spread,s_re,s_im,stable,c1,c2,c3,c4,error";
    return h;
}

// Fixed-header CSV, 17 significant digits, LF line endings. Missing fields are
// empty cells; flags are 1/0 (condition 1 empty when inapplicable).
inline void write_csv(const SweepResult& res, std::ostream& os) {
    if (res.records.empty())
        throw std::invalid_argument("write_csv: no records");
    const bool has_axis2 = res.records.front().axis2.has_value();
    os << csv_header(has_axis2) << "\n";
    for (const SweepRecord& r : res.records) {
        os << detail::format_double(r.axis1);
        if (has_axis2) os << ',' << detail::format_double(r.axis2.value_or(0.0));
        for (int k = 0; k < 3; ++k) {
            if (r.eigen) {
                os << ',' << detail::format_double((*r.eigen)[std::size_t(k)].real()) << ','
                   << detail::format_double((*r.eigen)[std::size_t(k)].imag());
            } else {
                os << ",,";
            }
        }
        os << ',';
        if (r.spread_value) os << detail::format_double(*r.spread_value);
        os << ',';
        if (r.s_value) os << detail::format_double(r.s_value->real());
        os << ',';
        if (r.s_value) os << detail::format_double(r.s_value->imag());
        os << ',';
        if (r.stable) os << (*r.stable ? '1' : '0');
        for (int k = 0; k < 4; ++k) {
            os << ',';
            if (r.conditions[std::size_t(k)]) os << (*r.conditions[std::size_t(k)] ? '1' : '0');
        }
        os << ',' << detail::csv_safe(r.error) << "\n";
    }
}

inline void write_csv_file(const SweepResult& res, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    write_csv(res, os);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

// Parses a CSV produced by write_csv (used by tests and round-trip checks).
inline std::vector<SweepRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_csv: empty input");
    const bool has_axis2 = line.find("axis2") != std::string::npos;

    std::vector<SweepRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < std::size_t(16 + (has_axis2 ? 1 : 0))) cells.emplace_back();

        const auto num = [&](std::size_t i) -> std::optional<double> {
            if (cells[i].empty()) return std::nullopt;
            return std::stod(cells[i]);
        };
        SweepRecord r;
        std::size_t c = 0;
        r.axis1 = std::stod(cells[c++]);
        if (has_axis2) r.axis2 = num(c++);
        const auto re1 = num(c), im1 = num(c + 1), re2 = num(c + 2), im2 = num(c + 3),
                   re3 = num(c + 4), im3 = num(c + 5);
        c += 6;
        if (re1 && im1 && re2 && im2 && re3 && im3)
            r.eigen = std::array<Complex, 3>{Complex(*re1, *im1), Complex(*re2, *im2),
                                             Complex(*re3, *im3)};
        r.spread_value = num(c++);
        const auto sre = num(c), sim = num(c + 1);
        c += 2;
        if (sre && sim) r.s_value = Complex(*sre, *sim);
        if (!cells[c].empty()) r.stable = cells[c] == "1";
        ++c;
        for (int k = 0; k < 4; ++k) {
            if (!cells[c].empty()) r.conditions[std::size_t(k)] = cells[c] == "1";
            ++c;
        }
        r.error = cells[c];
        records.push_back(std::move(r));
    }
    return records;
}

// Writes a gnuplot script next to an emitted CSV, referencing its columns.
inline void write_plot_script(const SweepResult& res, const std::string& csv_name,
                              const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    const bool two_d = res.spec.axes.size() == 2;
    os << "# gnuplot script for " << csv_name << "\n";
    os << "set datafile separator ','\n";
    os << "set key autotitle columnhead\n";
    os << "set xlabel '" << res.spec.axes[0].name << "'\n";
    if (two_d) {
        // columns with axis2 present: im1=4, im2=6, im3=8, s_re=10
        os << "set ylabel '" << res.spec.axes[1].name << "'\n";
        if (res.spec.outputs.s_param) {
            os << "set title 'Re S'\n";
            os << "plot '" << csv_name << "' using 1:2:10 with image notitle\n";
        } else {
            os << "set title 'Im(lambda) sheets'\n";
            os << "splot '" << csv_name << "' using 1:2:4 with points pt 7 ps 0.3, '"
               << csv_name << "' using 1:2:6 with points pt 7 ps 0.3, '"
               << csv_name << "' using 1:2:8 with points pt 7 ps 0.3\n";
        }
    } else {
        os << "set title '" << res.spec.name << "'\n";
        os << "plot '" << csv_name << "' using 1:2 with lines title 'Re l1', \\\n"
           << "     '" << csv_name << "' using 1:4 with lines title 'Re l2', \\\n"
           << "     '" << csv_name << "' using 1:6 with lines title 'Re l3', \\\n"
           << "     '" << csv_name << "' using 1:3 with lines dt 2 title 'Im l1', \\\n"
           << "     '" << csv_name << "' using 1:5 with lines dt 2 title 'Im l2', \\\n"
           << "     '" << csv_name << "' using 1:7 with lines dt 2 title 'Im l3'\n";
    }
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

} // namespace magnomech
