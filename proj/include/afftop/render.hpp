#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "certify.hpp"
#include "cover.hpp"
#include "curve.hpp"
#include "dimension.hpp"
#include "interior.hpp"
#include "rational.hpp"
#include "ylevel.hpp"

namespace afftop {

// ---------------------------------------------------------------------------
// Exports: CSV for exact data, SVG for vector figures, PGM/PPM for rasters.
// Floating point is permitted here (rendering only); certificate content is
// never round-tripped through these paths. All writers are deterministic:
// no timestamps, fixed formatting.
// ---------------------------------------------------------------------------

namespace detail {

// Fixed-precision decimal for SVG coordinates (deterministic, no
// locale-dependent formatting).
inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace detail

// ---- CSV ---------------------------------------------------------------

// One row per vertex: exact rational x, y.
inline void write_curve_csv(std::ostream& os, const MonotoneCurve& c) {
    os << "x,y\n";
    for (const PointQ& v : c.verts) os << rat_str(v.x) << ',' << rat_str(v.y) << '\n';
}

// One row per piece vertex: word, vertex index, exact rational x, y.
inline void write_level_csv(std::ostream& os, const YLevel& lv) {
    os << "word,vertex,x,y\n";
    for (const YPiece& p : lv.pieces) {
        for (std::size_t i = 0; i < p.poly.verts.size(); ++i)
            os << p.word << ',' << i << ',' << rat_str(p.poly.verts[i].x) << ','
               << rat_str(p.poly.verts[i].y) << '\n';
        if (p.poly.verts.empty()) os << p.word << ",,," << '\n';
    }
}

// One row per occupied cell: row, col, exact cell bounds.
inline void write_cover_csv(std::ostream& os, const BoxCover& cover) {
    os << "row,col,x0,x1,y0,y1\n";
    const Rational unit(1, cover.N);
    for (int r = 0; r < cover.N; ++r)
        for (int c = 0; c < cover.N; ++c) {
            if (!cover.cells[static_cast<std::size_t>(r) * cover.N + c]) continue;
            os << r << ',' << c << ',' << rat_str(c * unit) << ',' << rat_str((c + 1) * unit)
               << ',' << rat_str(r * unit) << ',' << rat_str((r + 1) * unit) << '\n';
        }
}

// ---- SVG ---------------------------------------------------------------

// Maps the unit square to a width x width viewport, y axis upward.
struct SvgFrame {
    int width = 640;
    double maplen() const { return static_cast<double>(width); }
    double px(const Rational& x) const { return to_double(x) * maplen(); }
    double py(const Rational& y) const { return (1.0 - to_double(y)) * maplen(); }
};

inline void svg_open(std::ostream& os, const SvgFrame& f) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
       << f.width << "\" viewBox=\"0 0 " << f.width << ' ' << f.width << "\">\n";
    os << "<rect width=\"" << f.width << "\" height=\"" << f.width
       << "\" fill=\"white\"/>\n";
}

inline void svg_close(std::ostream& os) { os << "</svg>\n"; }

inline void write_curve_svg(std::ostream& os, const MonotoneCurve& c, int width = 640,
                            const std::string& stroke = "#1f4e9c") {
    const SvgFrame f{width};
    svg_open(os, f);
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" points=\"";
    for (const PointQ& v : c.verts)
        os << detail::svg_num(f.px(v.x)) << ',' << detail::svg_num(f.py(v.y)) << ' ';
    os << "\"/>\n";
    svg_close(os);
}

inline void write_level_svg(std::ostream& os, const YLevel& lv, int width = 640) {
    const SvgFrame f{width};
    svg_open(os, f);
    for (const YPiece& p : lv.pieces) {
        if (p.poly.verts.empty()) continue;
        os << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.55\" stroke=\"#08306b\" "
              "stroke-width=\"0.6\" points=\"";
        for (const PointQ& v : p.poly.verts)
            os << detail::svg_num(f.px(v.x)) << ',' << detail::svg_num(f.py(v.y)) << ' ';
        os << "\"><title>" << p.word << "</title></polygon>\n";
    }
    svg_close(os);
}

// ---- rasters -------------------------------------------------------------

// Binary occupancy as plain-text PGM (P2): occupied cells black.
inline void write_cover_pgm(std::ostream& os, const BoxCover& cover) {
    os << "P2\n" << cover.N << ' ' << cover.N << "\n1\n";
    for (int r = cover.N - 1; r >= 0; --r) {  // top image row = largest y
        for (int c = 0; c < cover.N; ++c) {
            os << (cover.cells[static_cast<std::size_t>(r) * cover.N + c] ? 0 : 1);
            os << (c + 1 == cover.N ? '\n' : ' ');
        }
    }
}

// ---- region map ------------------------------------------------------------

// What certified a parameter cell; combinations render in blended legend
// colors so joint coverage is visible.
struct RegionMapEntry {
    Interval lambda;
    Interval mu;
    bool g = false;         // membership certificate
    bool dim = false;       // dimension lower-bound certificate
    bool interior = false;  // interior certificate
    bool refuted = false;   // interior refutation (exact predicate only)
};

struct RegionMap {
    std::vector<RegionMapEntry> entries;
};

// Merges sweep reports into one map keyed by cell rectangle. Cells from
// different sweeps at different depths stay separate entries; overlapping
// flags are combined only for identical rectangles.
inline RegionMap build_region_map(const SweepGReport* g, const SweepDimReport* d,
                                  const SweepInteriorReport* in) {
    RegionMap map;
    auto find_or_add = [&map](const Interval& l, const Interval& m) -> RegionMapEntry& {
        for (RegionMapEntry& e : map.entries)
            if (e.lambda.lo == l.lo && e.lambda.hi == l.hi && e.mu.lo == m.lo && e.mu.hi == m.hi)
                return e;
        map.entries.push_back({l, m, false, false, false, false});
        return map.entries.back();
    };
    if (g)
        for (const GSweepCell& c : g->cells)
            if (c.status == CellStatus::CERTIFIED) find_or_add(c.lambda, c.mu).g = true;
    if (d)
        for (const DimSweepCell& c : d->cells)
            if (c.status == CellStatus::CERTIFIED) find_or_add(c.lambda, c.mu).dim = true;
    if (in)
        for (const InteriorSweepCell& c : in->cells) {
            if (c.status == CellStatus::CERTIFIED) find_or_add(c.lambda, c.mu).interior = true;
            if (c.status == CellStatus::REFUTED) find_or_add(c.lambda, c.mu).refuted = true;
        }
    return map;
}

inline std::string region_map_color(const RegionMapEntry& e) {
    if (e.g && e.dim) return "#6a51a3";        // joint coverage
    if (e.g) return "#2171b5";                 // membership only
    if (e.dim) return "#238b45";               // dimension only
    if (e.interior) return "#e6550d";          // interior certificate
    if (e.refuted) return "#f7e8d5";           // certified complement
    return "#cccccc";                          // undecided entry
}

// SVG region map over the (lambda, mu) unit square with the admissible
// region outline (mu > lambda, lambda + mu > 1, mu < 1).
inline void write_region_map_svg(std::ostream& os, const RegionMap& map, int width = 640) {
    const SvgFrame f{width};
    svg_open(os, f);
    for (const RegionMapEntry& e : map.entries) {
        const double x = f.px(e.lambda.lo);
        const double y = f.py(e.mu.hi);
        const double w = f.px(e.lambda.hi) - x;
        const double h = f.py(e.mu.lo) - y;
        os << "<rect x=\"" << detail::svg_num(x) << "\" y=\"" << detail::svg_num(y)
           << "\" width=\"" << detail::svg_num(w) << "\" height=\"" << detail::svg_num(h)
           << "\" fill=\"" << region_map_color(e) << "\"/>\n";
    }
    // Region outline: triangle with vertices (0,1), (1/2,1/2), (1,1).
    os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\""
       << detail::svg_num(f.px(Rational(0))) << ',' << detail::svg_num(f.py(Rational(1))) << ' '
       << detail::svg_num(f.px(rat(1, 2))) << ',' << detail::svg_num(f.py(rat(1, 2))) << ' '
       << detail::svg_num(f.px(Rational(1))) << ',' << detail::svg_num(f.py(Rational(1)))
       << "\"/>\n";
    svg_close(os);
}

// PPM region map: one pixel per finest dyadic cell (grid = 2^depth), colors
// as in the SVG legend; pixels outside every entry render white.
inline void write_region_map_ppm(std::ostream& os, const RegionMap& map, int grid) {
    std::vector<std::array<std::uint8_t, 3>> img(static_cast<std::size_t>(grid) * grid,
                                                 {255, 255, 255});
    auto hex_to_rgb = [](const std::string& hex) {
        auto cv = [&hex](int i) {
            return static_cast<std::uint8_t>(std::stoi(hex.substr(static_cast<std::size_t>(i), 2),
                                                       nullptr, 16));
        };
        return std::array<std::uint8_t, 3>{cv(1), cv(3), cv(5)};
    };
    for (const RegionMapEntry& e : map.entries) {
        const auto rgb = hex_to_rgb(region_map_color(e));
        // Cell bounds are dyadic; to_double is exact for them.
        const int c0 = static_cast<int>(to_double(e.lambda.lo) * grid);
        const int c1 = static_cast<int>(to_double(e.lambda.hi) * grid);
        const int r0 = static_cast<int>(to_double(e.mu.lo) * grid);
        const int r1 = static_cast<int>(to_double(e.mu.hi) * grid);
        for (int r = std::max(0, r0); r < std::min(grid, r1); ++r)
            for (int c = std::max(0, c0); c < std::min(grid, c1); ++c)
                img[static_cast<std::size_t>(grid - 1 - r) * grid + c] = rgb;
    }
    os << "P3\n" << grid << ' ' << grid << "\n255\n";
    for (int r = 0; r < grid; ++r) {
        for (int c = 0; c < grid; ++c) {
            const auto& px = img[static_cast<std::size_t>(r) * grid + c];
            os << int(px[0]) << ' ' << int(px[1]) << ' ' << int(px[2]);
            os << (c + 1 == grid ? '\n' : ' ');
        }
    }
}

}  // namespace afftop
