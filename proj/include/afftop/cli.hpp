#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "benclosure.hpp"
#include "certify.hpp"
#include "cover.hpp"
#include "curve.hpp"
#include "dimension.hpp"
#include "interior.hpp"
#include "records.hpp"
#include "render.hpp"
#include "ylevel.hpp"

namespace afftop {

// Exit codes: 0 = success (certificate produced / database has certified
// cells / verification clean); 2 = ran correctly but nothing was certified
// (undecided or failed witness); 1 = operational error (bad input, I/O,
// violated precondition).
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndecided = 2;

namespace cli_detail {

inline Rational parse_rat_arg(const std::string& text, const std::string& name) {
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError(name, e.what());
    }
}

inline Params params_from(const std::string& l, const std::string& m) {
    return Params(parse_rat_arg(l, "--lambda"), parse_rat_arg(m, "--mu"));
}

// "a,b,c,d" -> ParamRect([a,b],[c,d]).
inline ParamRect rect_from(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw CLI::ValidationError("--rect", "expected lambda_lo,lambda_hi,mu_lo,mu_hi");
    return ParamRect(
        Interval(parse_rat_arg(parts[0], "--rect"), parse_rat_arg(parts[1], "--rect")),
        Interval(parse_rat_arg(parts[2], "--rect"), parse_rat_arg(parts[3], "--rect")));
}

// "01,1" -> {"01", "1"}.
inline std::vector<Word> family_from(const std::string& text) {
    std::vector<Word> words;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            words.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    words.push_back(cur);
    return words;
}

// Writes via temp file + rename so readers never observe partial output.
inline void write_atomic(const std::string& path,
                         const std::function<void(std::ostream&)>& writer) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
        writer(os);
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

// Dispatch on output extension; empty path writes `fallback` to `out`.
inline bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

inline std::vector<EPWord> dictionary_from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read dictionary: " + path);
    std::vector<EPWord> dict;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        dict.push_back(EPWord::parse(line));
    }
    if (dict.empty()) throw std::runtime_error("dictionary file has no words: " + path);
    return dict;
}

// Loads region-map entries from databases written by the sweep commands.
inline void map_entries_from_db(const std::string& path, RegionMap& map) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read database: " + path);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const Json j = Json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "meta") continue;
        const ParamRect rect = rect_from_json(j.at("rect"));
        RegionMapEntry* hit = nullptr;
        for (RegionMapEntry& e : map.entries)
            if (e.lambda.lo == rect.lambda.lo && e.lambda.hi == rect.lambda.hi &&
                e.mu.lo == rect.mu.lo && e.mu.hi == rect.mu.hi)
                hit = &e;
        if (!hit) {
            map.entries.push_back({rect.lambda, rect.mu, false, false, false, false});
            hit = &map.entries.back();
        }
        if (type == "g") hit->g = true;
        if (type == "dim") hit->dim = true;
        if (type == "interior") {
            if (j.at("status").get<std::string>() == "CERTIFIED") hit->interior = true;
            else hit->refuted = true;
        }
    }
}

struct IterSummary {
    const CurveIterate& it;
};

inline std::ostream& operator<<(std::ostream& os, const IterSummary& s) {
    os << "steps=" << s.it.n << " all_clean=" << (s.it.all_clean ? "yes" : "no")
       << " all_nondecreasing=" << (s.it.all_nondecreasing ? "yes" : "no");
    if (!s.it.diagnostic.empty()) os << " diagnostic=\"" << s.it.diagnostic << '"';
    return os;
}

}  // namespace cli_detail

// Runs the command line given as plain argument strings (no program name).
// All normal output goes to `out`, errors to `err`; file outputs are atomic.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{
        "affine-top: certified computations for a two-map self-affine family.\n"
        "Exit codes: 0 success, 2 nothing certified (undecided), 1 error.\n"
        "AFFINE_TOP_MAX_DEPTH overrides hard depth caps (unsafe for certification\n"
        "runs without memory headroom)."};
    app.require_subcommand(1);

    // Shared option storage (each subcommand binds what it needs).
    std::string lambda_s, mu_s, rect_s, word_s, family_s, out_path, in_path, dict_path;
    std::string g_db, dim_db, interior_db, part = "upper", trail_path;
    int level = 4, iters = 20, depth = 6, grid = 1024, refine = kCertifyRefineDefault;
    int kmin = 6, kmax = 11, prec = 128, tol_bits = 30, start_level = 10;
    int mmax = 8, nmax = 8, general_len = 10, subset_max = 3;
    int workers = 1;
    long seed = 0;
    bool no_meta = false, no_general = false;

    app.add_option("--workers", workers, "worker pool size (this build computes serially)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed recorded for sampling-based consumers");

    auto* c_ycurve = app.add_subcommand("ycurve", "level-n polygon tower export (csv/svg)");
    c_ycurve->add_option("--lambda", lambda_s)->required();
    c_ycurve->add_option("--mu", mu_s)->required();
    c_ycurve->add_option("--level", level)->check(CLI::Range(0, 16));
    c_ycurve->add_option("--out", out_path, "output file (.csv or .svg; default stdout csv)");

    auto* c_bcurve = app.add_subcommand("bcurve", "curve enclosure export (csv/svg)");
    c_bcurve->add_option("--lambda", lambda_s)->required();
    c_bcurve->add_option("--mu", mu_s)->required();
    c_bcurve->add_option("--level", level)->check(CLI::Range(1, 16));
    c_bcurve->add_option("--part", part, "lower|upper (default upper)");
    c_bcurve->add_option("--out", out_path);

    auto* c_top = app.add_subcommand("top", "iterate the top-boundary operator");
    c_top->add_option("--lambda", lambda_s)->required();
    c_top->add_option("--mu", mu_s)->required();
    c_top->add_option("--iters", iters)->check(CLI::Range(1, 64));
    c_top->add_option("--start-level", start_level)->check(CLI::Range(1, 16));
    c_top->add_option("--out", out_path, "final curve (.csv or .svg)");

    auto* c_render = app.add_subcommand("render", "attractor cover raster");
    c_render->add_option("--lambda", lambda_s)->required();
    c_render->add_option("--mu", mu_s)->required();
    c_render->add_option("--grid", grid, "grid side, a power of two <= 32768");
    c_render->add_option("--depth", depth, "rectangle-iteration depth")->check(CLI::Range(0, 64));
    c_render->add_option("--out", out_path, "output (.ppm, .pgm, or .csv)")->required();

    auto* c_boxdim = app.add_subcommand("boxdim", "box-dimension slope estimate");
    c_boxdim->add_option("--lambda", lambda_s)->required();
    c_boxdim->add_option("--mu", mu_s)->required();
    c_boxdim->add_option("--kmin", kmin)->check(CLI::Range(1, 15));
    c_boxdim->add_option("--kmax", kmax)->check(CLI::Range(1, 15));

    auto* c_cert = app.add_subcommand("certify-g", "membership certificate for one rectangle");
    c_cert->add_option("--rect", rect_s, "lambda_lo,lambda_hi,mu_lo,mu_hi")->required();
    c_cert->add_option("--word", word_s, "witness word, e.g. \"(01)\" or \"1(01)\"")->required();
    c_cert->add_option("--refine", refine)->check(CLI::Range(0, 6));
    c_cert->add_option("--out", out_path, "append-style certificate line target");

    auto* c_sweepg = app.add_subcommand("sweep-g", "adaptive membership sweep");
    c_sweepg->add_option("--depth", depth)->required()->check(CLI::Range(0, 20));
    c_sweepg->add_option("--dict", dict_path, "file with one witness word per line");
    c_sweepg->add_option("--refine", refine)->check(CLI::Range(0, 6));
    c_sweepg->add_option("--out", out_path, "certificate database (.jsonl)")->required();
    c_sweepg->add_flag("--no-meta", no_meta, "omit the meta line (byte-stable databases)");

    auto* c_dim = app.add_subcommand("dim", "dimension lower bound for one family");
    c_dim->add_option("--lambda", lambda_s)->required();
    c_dim->add_option("--mu", mu_s)->required();
    c_dim->add_option("--family", family_s, "comma-separated words, e.g. \"01,1\"")->required();
    c_dim->add_option("--prec", prec)->check(CLI::Range(32, 4096));
    c_dim->add_option("--tol-bits", tol_bits, "bracket tolerance 2^-bits")
        ->check(CLI::Range(4, 60));

    auto* c_search = app.add_subcommand("dim-search", "search for a certifying family");
    c_search->add_option("--lambda", lambda_s)->required();
    c_search->add_option("--mu", mu_s)->required();
    c_search->add_option("--mmax", mmax)->check(CLI::Range(1, 12));
    c_search->add_option("--nmax", nmax)->check(CLI::Range(1, 12));
    c_search->add_option("--general-len", general_len)->check(CLI::Range(1, 14));
    c_search->add_option("--subset-max", subset_max)->check(CLI::Range(2, 4));
    c_search->add_flag("--no-general", no_general, "skip the general DFS stage");
    c_search->add_option("--trail", trail_path, "write the full search trail here");

    auto* c_sweepdim = app.add_subcommand("sweep-dim", "adaptive dimension sweep");
    c_sweepdim->add_option("--depth", depth)->required()->check(CLI::Range(0, 16));
    c_sweepdim->add_option("--prec", prec)->check(CLI::Range(32, 4096));
    c_sweepdim->add_option("--out", out_path, "certificate database (.jsonl)")->required();
    c_sweepdim->add_flag("--no-meta", no_meta);

    auto* c_int = app.add_subcommand("interior", "exact interior predicate");
    c_int->add_option("--lambda", lambda_s)->required();
    c_int->add_option("--mu", mu_s)->required();

    auto* c_sweepint = app.add_subcommand("sweep-interior", "exact interior-threshold sweep");
    c_sweepint->add_option("--depth", depth)->required()->check(CLI::Range(0, 20));
    c_sweepint->add_option("--out", out_path, "certificate database (.jsonl)")->required();
    c_sweepint->add_flag("--no-meta", no_meta);

    auto* c_verify = app.add_subcommand("verify", "re-verify a certificate database");
    c_verify->add_option("--in", in_path)->required();

    auto* c_map = app.add_subcommand("map", "render a merged region map");
    c_map->add_option("--g", g_db, "sweep-g database");
    c_map->add_option("--dim", dim_db, "sweep-dim database");
    c_map->add_option("--interior", interior_db, "sweep-interior database");
    c_map->add_option("--grid", grid, "ppm pixels per side");
    c_map->add_option("--out", out_path, "output (.svg or .ppm)")->required();

    std::vector<const char*> argv;
    argv.push_back("affine-top");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "argument error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (workers > 1)
            err << "note: this build computes serially; --workers ignored\n";

        if (*c_ycurve) {
            const YLevel lv = build_y(params_from(lambda_s, mu_s), level);
            if (out_path.empty())
                write_level_csv(out, lv);
            else if (has_suffix(out_path, ".svg"))
                write_atomic(out_path, [&lv](std::ostream& os) { write_level_svg(os, lv); });
            else
                write_atomic(out_path, [&lv](std::ostream& os) { write_level_csv(os, lv); });
            out << "level " << lv.level << ": " << lv.pieces.size() << " pieces\n";
            return kExitOk;
        }

        if (*c_bcurve) {
            if (part != "lower" && part != "upper")
                throw std::runtime_error("--part must be lower or upper");
            const BEnclosure enc = b_enclosure(params_from(lambda_s, mu_s), level);
            const MonotoneCurve& curve = part == "lower" ? enc.lower : enc.upper;
            if (out_path.empty())
                write_curve_csv(out, curve);
            else if (has_suffix(out_path, ".svg"))
                write_atomic(out_path, [&curve](std::ostream& os) { write_curve_svg(os, curve); });
            else
                write_atomic(out_path, [&curve](std::ostream& os) { write_curve_csv(os, curve); });
            out << "level " << enc.level << " " << part << " polyline: " << curve.verts.size()
                << " vertices, enclosure width " << to_double(enc.width) << '\n';
            return kExitOk;
        }

        if (*c_top) {
            const Params p = params_from(lambda_s, mu_s);
            const BEnclosure enc = b_enclosure(p, start_level);
            const CurveIterate it = iterate_top(p, enc.lower, iters);
            for (const IterateStep& st : it.steps)
                out << "step " << st.step << ": clean=" << (st.clean ? "yes" : "no")
                    << " nondecreasing=" << (st.nondecreasing ? "yes" : "no")
                    << " sup_increment=" << to_double(st.sup_increment)
                    << " vertices=" << st.vertices << '\n';
            out << IterSummary{it} << '\n';
            if (!out_path.empty()) {
                const MonotoneCurve& curve = it.curve;
                if (has_suffix(out_path, ".svg"))
                    write_atomic(out_path,
                                 [&curve](std::ostream& os) { write_curve_svg(os, curve); });
                else
                    write_atomic(out_path,
                                 [&curve](std::ostream& os) { write_curve_csv(os, curve); });
            }
            return it.all_clean ? kExitOk : kExitUndecided;
        }

        if (*c_render) {
            int k = -1;
            for (int i = 0; i <= 15; ++i)
                if ((1 << i) == grid) k = i;
            if (k < 0) throw std::runtime_error("--grid must be a power of two <= 32768");
            const BoxCover cover = attractor_cover(params_from(lambda_s, mu_s), k, depth);
            if (has_suffix(out_path, ".csv"))
                write_atomic(out_path, [&cover](std::ostream& os) { write_cover_csv(os, cover); });
            else
                write_atomic(out_path, [&cover](std::ostream& os) { write_cover_pgm(os, cover); });
            out << "grid " << cover.N << "x" << cover.N << ": " << cover.occupied
                << " occupied cells" << (cover.depth_capped ? " (depth capped)" : "") << '\n';
            return kExitOk;
        }

        if (*c_boxdim) {
            if (kmax < kmin) throw std::runtime_error("--kmax must be >= --kmin");
            const BoxDimEstimate est = box_dim_estimate(params_from(lambda_s, mu_s), kmin, kmax);
            out << "counts:";
            for (std::size_t n : est.counts) out << ' ' << n;
            out << "\nslope " << est.slope << " stderr " << est.slope_stderr << " r2 " << est.r2
                << (est.depth_capped ? " (depth capped)" : "") << '\n';
            return kExitOk;
        }

        if (*c_cert) {
            const ParamRect rect = rect_from(rect_s);
            const GCertificate cert = certify_g(rect, EPWord::parse(word_s), refine);
            const Json record = g_record(cert, refine);
            if (out_path.empty())
                out << record.dump() << '\n';
            else
                write_atomic(out_path,
                             [&record](std::ostream& os) { os << record.dump() << '\n'; });
            if (cert.verdict == Verdict::PASS) return kExitOk;
            err << "witness did not certify: verdict "
                << verdict_str(cert.verdict) << '\n';
            return kExitUndecided;
        }

        if (*c_sweepg) {
            const std::vector<EPWord> dict =
                dict_path.empty() ? default_g_dictionary() : dictionary_from_file(dict_path);
            const SweepGReport rep = sweep_g(depth, dict);
            write_atomic(out_path, [&rep, refine, no_meta](std::ostream& os) {
                write_g_database(os, rep, refine, !no_meta);
            });
            out << "depth " << rep.depth << ": " << rep.certified_cells << " certified, "
                << rep.undecided_cells << " undecided, coverage " << to_double(rep.coverage())
                << '\n';
            return rep.certified_cells > 0 ? kExitOk : kExitUndecided;
        }

        if (*c_dim) {
            DimSolveOpts opts;
            opts.prec = prec;
            opts.tol = dyadic_unit(static_cast<unsigned>(tol_bits));
            const Params p = params_from(lambda_s, mu_s);
            const DimCertificate cert = feng_wang_dim(p, family_from(family_s), opts);
            const auto saved = out.precision(12);
            out << "s in [" << rat_str(cert.s_lo) << ", " << rat_str(cert.s_hi) << "] ~ ["
                << to_double(cert.s_lo) << ", " << to_double(cert.s_hi) << "]";
            out.precision(saved);
            if (cert.boundary) out << " (boundary case: s = 1 exactly)";
            out << '\n';
            out << "re-check: " << (check_dim_certificate(p, cert, prec) ? "ok" : "FAILED")
                << '\n';
            return kExitOk;
        }

        if (*c_search) {
            DimSearchOpts opts;
            opts.m_max = mmax;
            opts.n_max = nmax;
            opts.general_len = general_len;
            opts.subset_max = subset_max;
            opts.enable_general = !no_general;
            const DimSearchResult res = search_family(params_from(lambda_s, mu_s), opts);
            if (!trail_path.empty())
                write_atomic(trail_path, [&res](std::ostream& os) {
                    for (const std::string& line : res.log.trail) os << line << '\n';
                });
            out << "tried " << res.log.families_tried << " families\n";
            if (res.certificate) {
                out << "found:";
                for (const Word& w : res.certificate->words) out << ' ' << w;
                out << "  s in [" << rat_str(res.certificate->s_lo) << ", "
                    << rat_str(res.certificate->s_hi) << "]\n";
                return kExitOk;
            }
            out << "NONE\n";
            return kExitUndecided;
        }

        if (*c_sweepdim) {
            const SweepDimReport rep = sweep_dim(depth, default_dim_dictionary(), prec);
            write_atomic(out_path, [&rep, prec, no_meta](std::ostream& os) {
                write_dim_database(os, rep, prec, !no_meta);
            });
            out << "depth " << rep.depth << ": " << rep.certified_cells << " certified, "
                << rep.undecided_cells << " undecided, coverage " << to_double(rep.coverage())
                << '\n';
            return rep.certified_cells > 0 ? kExitOk : kExitUndecided;
        }

        if (*c_int) {
            const InteriorVerdict v = interior_diag(params_from(lambda_s, mu_s));
            Json j;
            j["case"] = interior_case_str(v.branch);
            j["holds"] = v.holds;
            j["det_tested"] = rat_str(v.det_tested);
            j["twice_square"] = rat_str(v.twice_square);
            Json w = Json::array();
            for (const Word& word : v.witness) w.push_back(word);
            j["witness"] = w;
            j["m0_contracting"] = v.m0_contracting;
            j["m1_contracting"] = v.m1_contracting;
            out << j.dump() << '\n';
            return kExitOk;
        }

        if (*c_sweepint) {
            const SweepInteriorReport rep = sweep_interior(depth);
            write_atomic(out_path, [&rep, no_meta](std::ostream& os) {
                write_interior_database(os, rep, !no_meta);
            });
            out << "depth " << rep.depth << ": " << rep.certified_cells << " certified, "
                << rep.refuted_cells << " refuted, " << rep.undecided_cells
                << " undecided, coverage " << to_double(rep.coverage()) << '\n';
            return rep.certified_cells > 0 ? kExitOk : kExitUndecided;
        }

        if (*c_verify) {
            std::ifstream is(in_path);
            if (!is) throw std::runtime_error("cannot read database: " + in_path);
            const VerifyReport rep = verify_database(is);
            out << rep.records() << " records (" << rep.g_records << " g, " << rep.dim_records
                << " dim, " << rep.interior_records << " interior), " << rep.meta_lines
                << " meta lines\n";
            if (rep.ok()) {
                out << "all records verified\n";
                return kExitOk;
            }
            for (const VerifyIssue& issue : rep.issues)
                err << "line " << issue.line << ": " << issue.reason << '\n';
            return kExitError;
        }

        if (*c_map) {
            RegionMap map;
            if (!g_db.empty()) map_entries_from_db(g_db, map);
            if (!dim_db.empty()) map_entries_from_db(dim_db, map);
            if (!interior_db.empty()) map_entries_from_db(interior_db, map);
            if (has_suffix(out_path, ".ppm"))
                write_atomic(out_path, [&map, grid](std::ostream& os) {
                    write_region_map_ppm(os, map, grid);
                });
            else
                write_atomic(out_path,
                             [&map](std::ostream& os) { write_region_map_svg(os, map); });
            out << map.entries.size() << " cells rendered\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::domain_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    err << "no subcommand dispatched\n";
    return kExitError;
}

}  // namespace afftop
