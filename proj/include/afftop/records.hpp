#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "certify.hpp"
#include "dimension.hpp"
#include "interior.hpp"

namespace afftop {

// ---------------------------------------------------------------------------
// Line-delimited certificate databases. One JSON object per line; every
// numeric quantity is a rational string ("p/q"), never a float, so files
// round-trip exactly and re-verification reproduces stored values bit for
// bit. Writers never emit timestamps: identical inputs give byte-identical
// files. An optional leading meta line carries run provenance (depth,
// dictionary size, coverage) and is skipped by verification.
// ---------------------------------------------------------------------------

using Json = nlohmann::ordered_json;

constexpr int kDimRecordPrec = 96;  // MPFR precision used for dim sweep records

inline Json rect_to_json(const Interval& l, const Interval& m) {
    return Json::array({rat_str(l.lo), rat_str(l.hi), rat_str(m.lo), rat_str(m.hi)});
}

// Parses the 4-element rational-string rect array; throws on malformed input.
inline ParamRect rect_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("rect must have 4 entries");
    const Rational l0 = parse_rational(j[0].get<std::string>());
    const Rational l1 = parse_rational(j[1].get<std::string>());
    const Rational m0 = parse_rational(j[2].get<std::string>());
    const Rational m1 = parse_rational(j[3].get<std::string>());
    return ParamRect(Interval(l0, l1), Interval(m0, m1));
}

// Certified lower bounds of every margin in the certificate, in a fixed
// order: the four dominance margins (word x, word y, mirror x, mirror y)
// followed by the orbit margins of the word, then of the mirror word.
inline std::vector<Rational> g_margin_lows(const GCertificate& cert) {
    std::vector<Rational> out = {cert.dom_word.margin_x.lo, cert.dom_word.margin_y.lo,
                                 cert.dom_mirror.margin_x.lo, cert.dom_mirror.margin_y.lo};
    for (const OrbitCondition& c : cert.orbit_word.items) out.push_back(c.margin.lo);
    for (const OrbitCondition& c : cert.orbit_mirror.items) out.push_back(c.margin.lo);
    return out;
}

inline Json g_record(const GCertificate& cert, int refine) {
    Json j;
    j["type"] = "g";
    j["rect"] = rect_to_json(cert.rect.lambda, cert.rect.mu);
    j["word"] = cert.word.str();
    j["mirror_word"] = cert.mirror_word.str();
    Json margins = Json::array();
    for (const Rational& q : g_margin_lows(cert)) margins.push_back(rat_str(q));
    j["margins"] = margins;
    j["refine"] = refine;
    j["version"] = cert.version;
    return j;
}

inline Json dim_record(const DimSweepCell& cell, int prec) {
    Json j;
    j["type"] = "dim";
    j["rect"] = rect_to_json(cell.lambda, cell.mu);
    Json words = Json::array();
    for (const Word& w : cell.words) words.push_back(w);
    j["words"] = words;
    j["s_lo"] = rat_str(cell.s_lo);
    j["s_hi"] = rat_str(cell.s_hi);
    j["product_lt_half"] = cell.product_lt_half;
    j["prec"] = prec;
    j["version"] = 1;
    return j;
}

inline Json interior_record(const InteriorSweepCell& cell) {
    Json j;
    j["type"] = "interior";
    j["rect"] = rect_to_json(cell.lambda, cell.mu);
    j["status"] = cell_status_str(cell.status);
    j["version"] = 1;
    return j;
}

// ---- database writers (one certified record per line) ----------------------

inline void write_g_database(std::ostream& os, const SweepGReport& rep,
                             int refine = kCertifyRefineDefault, bool meta = true) {
    if (meta) {
        Json m;
        m["type"] = "meta";
        m["kind"] = "sweep-g";
        m["depth"] = rep.depth;
        m["dictionary_size"] = rep.dictionary.size();
        m["certified_cells"] = rep.certified_cells;
        m["coverage"] = rat_str(rep.coverage());
        os << m.dump() << '\n';
    }
    for (const GSweepCell& cell : rep.cells) {
        if (cell.status != CellStatus::CERTIFIED) continue;
        const GCertificate cert =
            certify_g(ParamRect(cell.lambda, cell.mu), *cell.word, refine);
        os << g_record(cert, refine).dump() << '\n';
    }
}

inline void write_dim_database(std::ostream& os, const SweepDimReport& rep,
                               int prec = kDimRecordPrec, bool meta = true) {
    if (meta) {
        Json m;
        m["type"] = "meta";
        m["kind"] = "sweep-dim";
        m["depth"] = rep.depth;
        m["dictionary_size"] = rep.dictionary.size();
        m["certified_cells"] = rep.certified_cells;
        m["coverage"] = rat_str(rep.coverage());
        os << m.dump() << '\n';
    }
    for (const DimSweepCell& cell : rep.cells) {
        if (cell.status != CellStatus::CERTIFIED) continue;
        os << dim_record(cell, prec).dump() << '\n';
    }
}

inline void write_interior_database(std::ostream& os, const SweepInteriorReport& rep,
                                    bool meta = true) {
    if (meta) {
        Json m;
        m["type"] = "meta";
        m["kind"] = "sweep-interior";
        m["depth"] = rep.depth;
        m["certified_cells"] = rep.certified_cells;
        m["refuted_cells"] = rep.refuted_cells;
        m["coverage"] = rat_str(rep.coverage());
        os << m.dump() << '\n';
    }
    for (const InteriorSweepCell& cell : rep.cells) {
        if (cell.status != CellStatus::CERTIFIED && cell.status != CellStatus::REFUTED) continue;
        os << interior_record(cell).dump() << '\n';
    }
}

// ---- independent verification ----------------------------------------------

struct VerifyIssue {
    std::size_t line = 0;   // 1-based line number of the offending record
    std::string reason;
};

struct VerifyReport {
    std::size_t lines = 0;
    std::size_t meta_lines = 0;
    std::size_t g_records = 0;
    std::size_t dim_records = 0;
    std::size_t interior_records = 0;
    std::vector<VerifyIssue> issues;

    bool ok() const { return issues.empty(); }
    std::size_t records() const { return g_records + dim_records + interior_records; }
};

namespace detail {

// Re-derives a G record from (rect, word, refine) alone and demands exact
// agreement with every stored field.
inline void verify_g_record(const Json& j, std::size_t line, VerifyReport& rep) {
    const ParamRect rect = rect_from_json(j.at("rect"));
    const EPWord word = EPWord::parse(j.at("word").get<std::string>());
    const int refine = j.at("refine").get<int>();
    const GCertificate cert = certify_g(rect, word, refine);
    if (cert.verdict != Verdict::PASS) {
        rep.issues.push_back({line, "certificate does not re-verify"});
        return;
    }
    if (j.at("mirror_word").get<std::string>() != cert.mirror_word.str()) {
        rep.issues.push_back({line, "mirror word mismatch"});
        return;
    }
    const std::vector<Rational> fresh = g_margin_lows(cert);
    const Json& stored = j.at("margins");
    if (!stored.is_array() || stored.size() != fresh.size()) {
        rep.issues.push_back({line, "margin count mismatch"});
        return;
    }
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        if (parse_rational(stored[i].get<std::string>()) != fresh[i]) {
            rep.issues.push_back({line, "margin " + std::to_string(i) + " mismatch"});
            return;
        }
    }
    ++rep.g_records;
}

inline void verify_dim_record(const Json& j, std::size_t line, VerifyReport& rep) {
    const ParamRect rect = rect_from_json(j.at("rect"));
    std::vector<Word> words;
    for (const auto& w : j.at("words")) words.push_back(w.get<std::string>());
    const int prec = j.at("prec").get<int>();
    const FamilyGeometryI fam = build_family(rect, words);
    const RoscReport rc = rosc_check(fam);
    if (rc.disjoint != Verdict::PASS || rc.cover != Verdict::PASS) {
        rep.issues.push_back({line, "family does not re-verify the open set condition"});
        return;
    }
    const std::vector<ScalePairI> scales = family_scales(rect, words);
    Interval sum_a(Rational(0));
    for (const ScalePairI& sp : scales) sum_a = sum_a + sp.a;
    if (!(sum_a.lo > 1)) {
        rep.issues.push_back({line, "projection overlap is not strict on this rectangle"});
        return;
    }
    Rational s_lo, s_hi;
    cell_root_bracket(scales, s_lo, s_hi, prec);
    if (s_lo != parse_rational(j.at("s_lo").get<std::string>()) ||
        s_hi != parse_rational(j.at("s_hi").get<std::string>())) {
        rep.issues.push_back({line, "dimension bracket mismatch"});
        return;
    }
    const bool plh = rect.lambda.hi * rect.mu.hi < rat(1, 2);
    if (plh != j.at("product_lt_half").get<bool>()) {
        rep.issues.push_back({line, "product flag mismatch"});
        return;
    }
    ++rep.dim_records;
}

inline void verify_interior_record(const Json& j, std::size_t line, VerifyReport& rep) {
    const ParamRect rect = rect_from_json(j.at("rect"));
    const std::string status = j.at("status").get<std::string>();
    if (status == "CERTIFIED") {
        if (!interior_product_holds(rect.lambda.lo * rect.mu.lo)) {
            rep.issues.push_back({line, "interior certificate does not re-verify"});
            return;
        }
    } else if (status == "REFUTED") {
        if (interior_product_holds(rect.lambda.hi * rect.mu.hi)) {
            rep.issues.push_back({line, "interior refutation does not re-verify"});
            return;
        }
    } else {
        rep.issues.push_back({line, "unknown interior status: " + status});
        return;
    }
    ++rep.interior_records;
}

}  // namespace detail

// Verifies a mixed-type certificate database line by line; every failure is
// reported with its line number, and verification continues past failures so
// one bad record cannot mask others.
inline VerifyReport verify_database(std::istream& is) {
    VerifyReport rep;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        ++rep.lines;
        Json j;
        try {
            j = Json::parse(line);
            const std::string type = j.at("type").get<std::string>();
            if (type == "meta") {
                ++rep.meta_lines;
            } else if (type == "g") {
                detail::verify_g_record(j, line_no, rep);
            } else if (type == "dim") {
                detail::verify_dim_record(j, line_no, rep);
            } else if (type == "interior") {
                detail::verify_interior_record(j, line_no, rep);
            } else {
                rep.issues.push_back({line_no, "unknown record type: " + type});
            }
        } catch (const std::exception& e) {
            rep.issues.push_back({line_no, std::string("malformed record: ") + e.what()});
        }
    }
    return rep;
}

}  // namespace afftop
