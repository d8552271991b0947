// End-to-end tests for run_cli: exit codes, stdout/stderr contracts, and the
// file formats each subcommand writes.  Everything runs in-process against
// string streams; file outputs go to a scratch directory under the system
// temp path.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "afftop/cli.hpp"

namespace fs = std::filesystem;
using afftop::Json;
using afftop::kExitError;
using afftop::kExitOk;
using afftop::kExitUndecided;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = afftop::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const fs::path& scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "afftop_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("certify-g prints a verifiable certificate record and exits 0") {
    const CliResult r =
        run({"certify-g", "--rect", "3/8,7/16,7/8,15/16", "--word", "(01)"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());

    const Json rec = Json::parse(r.out);
    CHECK(rec.at("type") == "g");
    CHECK(rec.at("word") == "(01)");
    CHECK(rec.at("mirror_word") == "(10)");
    CHECK(rec.at("refine") == 2);
    REQUIRE(rec.at("margins").size() == 8);
    // First margin pinned exactly: any drift in evaluation order or refinement
    // shows up here before it shows up anywhere else.
    CHECK(rec.at("margins")[0].get<std::string>() ==
          "11004005325772115/719608882373811712");

    // --out writes the identical record to a file, atomically.
    const fs::path out = scratch() / "single_cert.jsonl";
    const CliResult r2 = run({"certify-g", "--rect", "3/8,7/16,7/8,15/16",
                              "--word", "(01)", "--out", out.string()});
    CHECK(r2.code == kExitOk);
    CHECK(slurp(out) == r.out);
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
}

TEST_CASE("certify-g reports a failed witness with exit 2") {
    const CliResult r =
        run({"certify-g", "--rect", "9/20,9/20,3/5,3/5", "--word", "(01)"});
    CHECK(r.code == kExitUndecided);
    CHECK(contains(r.err, "witness did not certify"));
    const Json rec = Json::parse(r.out);  // record still emitted for post-mortems
    CHECK(rec.at("type") == "g");
}

TEST_CASE("dim prints the pinned bracket and re-checks it") {
    const CliResult r =
        run({"dim", "--lambda", "2/5", "--mu", "9/10", "--family", "01,1"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "1336028669/1073741824"));
    CHECK(contains(r.out, "668014335/536870912"));
    CHECK(contains(r.out, "1.2442736"));
    CHECK(contains(r.out, "re-check: ok"));
}

TEST_CASE("dim-search finds a family where one exists and says NONE otherwise") {
    const CliResult hit = run({"dim-search", "--lambda", "2/5", "--mu", "9/10"});
    CHECK(hit.code == kExitOk);
    CHECK(contains(hit.out, "tried "));
    CHECK(contains(hit.out, "found:"));

    const fs::path trail = scratch() / "search_trail.txt";
    const CliResult miss = run({"dim-search", "--lambda", "9/20", "--mu", "3/5",
                                "--mmax", "2", "--nmax", "2", "--no-general",
                                "--trail", trail.string()});
    CHECK(miss.code == kExitUndecided);
    CHECK(contains(miss.out, "NONE"));
    CHECK(fs::exists(trail));
    CHECK_FALSE(slurp(trail).empty());
}

TEST_CASE("interior emits one JSON verdict line") {
    const CliResult yes = run({"interior", "--lambda", "19/20", "--mu", "24/25"});
    CHECK(yes.code == kExitOk);
    const Json jy = Json::parse(yes.out);
    CHECK(jy.at("case") == "SCALAR");
    CHECK(jy.at("holds") == true);
    CHECK(jy.at("det_tested") == "1481544/1953125");
    CHECK(jy.at("witness").size() == 2);

    const CliResult no = run({"interior", "--lambda", "2/5", "--mu", "9/10"});
    CHECK(no.code == kExitOk);  // a definite FALSE is still a successful run
    CHECK(Json::parse(no.out).at("holds") == false);
}

TEST_CASE("sweep databases round-trip through verify and render to a map") {
    const fs::path g_db = scratch() / "g.jsonl";
    const fs::path dim_db = scratch() / "dim.jsonl";
    const fs::path int_db = scratch() / "interior.jsonl";

    const CliResult sg = run({"sweep-g", "--depth", "4", "--out", g_db.string()});
    CHECK(sg.code == kExitOk);
    CHECK(contains(sg.out, "certified"));
    CHECK_FALSE(fs::exists(g_db.string() + ".tmp"));

    const CliResult sd = run({"sweep-dim", "--depth", "5", "--out", dim_db.string()});
    CHECK(sd.code == kExitOk);

    const CliResult si =
        run({"sweep-interior", "--depth", "6", "--out", int_db.string()});
    CHECK(si.code == kExitOk);
    CHECK(contains(si.out, "refuted"));

    for (const fs::path& db : {g_db, dim_db, int_db}) {
        const CliResult v = run({"verify", "--in", db.string()});
        INFO(db.string() << "\n" << v.err);
        CHECK(v.code == kExitOk);
        CHECK(contains(v.out, "all records verified"));
    }

    const fs::path svg = scratch() / "map.svg";
    const fs::path ppm = scratch() / "map.ppm";
    const CliResult m1 = run({"map", "--g", g_db.string(), "--dim", dim_db.string(),
                              "--interior", int_db.string(), "--out", svg.string()});
    CHECK(m1.code == kExitOk);
    CHECK(contains(m1.out, "cells rendered"));
    CHECK(slurp(svg).rfind("<svg", 0) == 0);

    const CliResult m2 = run({"map", "--g", g_db.string(), "--grid", "64", "--out",
                              ppm.string()});
    CHECK(m2.code == kExitOk);
    CHECK(slurp(ppm).rfind("P3", 0) == 0);
}

TEST_CASE("verify pinpoints a tampered line and exits 1") {
    const fs::path good = scratch() / "g.jsonl";  // written by the previous case
    REQUIRE(fs::exists(good));
    std::string text = slurp(good);
    const std::size_t pos = text.find("\"margins\":[\"");
    REQUIRE(pos != std::string::npos);
    char& digit = text[pos + 12];
    digit = digit == '1' ? '2' : '1';
    const fs::path bad = scratch() / "g_tampered.jsonl";
    {
        std::ofstream os(bad, std::ios::binary);
        os << text;
    }
    const CliResult v = run({"verify", "--in", bad.string()});
    CHECK(v.code == kExitError);
    CHECK(contains(v.err, "line "));
}

TEST_CASE("sweep-g with --no-meta is byte-identical across runs") {
    const fs::path a = scratch() / "nm_a.jsonl";
    const fs::path b = scratch() / "nm_b.jsonl";
    CHECK(run({"sweep-g", "--depth", "4", "--no-meta", "--out", a.string()}).code ==
          kExitOk);
    CHECK(run({"sweep-g", "--depth", "4", "--no-meta", "--out", b.string()}).code ==
          kExitOk);
    const std::string bytes = slurp(a);
    CHECK(bytes == slurp(b));
    CHECK_FALSE(contains(bytes, "\"type\":\"meta\""));
}

TEST_CASE("geometry exports run end to end") {
    const CliResult yc = run({"ycurve", "--lambda", "2/5", "--mu", "9/10",
                              "--level", "2"});
    CHECK(yc.code == kExitOk);
    CHECK(contains(yc.out, "word,vertex,x,y"));
    CHECK(contains(yc.out, "level 2: 4 pieces"));

    const fs::path ysvg = scratch() / "level.svg";
    CHECK(run({"ycurve", "--lambda", "2/5", "--mu", "9/10", "--level", "3", "--out",
               ysvg.string()})
              .code == kExitOk);
    CHECK(slurp(ysvg).rfind("<svg", 0) == 0);

    const CliResult bc = run({"bcurve", "--lambda", "2/5", "--mu", "9/10",
                              "--level", "3", "--part", "lower"});
    CHECK(bc.code == kExitOk);
    CHECK(contains(bc.out, "x,y"));
    CHECK(contains(bc.out, "lower polyline"));

    const fs::path pgm = scratch() / "cover.pgm";
    const CliResult rd = run({"render", "--lambda", "2/5", "--mu", "9/10", "--grid",
                              "16", "--depth", "8", "--out", pgm.string()});
    CHECK(rd.code == kExitOk);
    CHECK(contains(rd.out, "occupied cells"));
    CHECK(slurp(pgm).rfind("P2", 0) == 0);

    const CliResult bd = run({"boxdim", "--lambda", "2/5", "--mu", "9/10", "--kmin",
                              "3", "--kmax", "5"});
    CHECK(bd.code == kExitOk);
    CHECK(contains(bd.out, "counts:"));
    CHECK(contains(bd.out, "slope "));
}

TEST_CASE("top iterates cleanly for a short run") {
    const CliResult r = run({"top", "--lambda", "2/5", "--mu", "9/10", "--iters", "2",
                             "--start-level", "10"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "step 1:"));
    CHECK(contains(r.out, "step 2:"));
    CHECK(contains(r.out, "steps=2 all_clean=yes"));
}

TEST_CASE("argument and input errors exit 1 with a message on stderr") {
    const CliResult none = run({});
    CHECK(none.code == kExitError);
    CHECK_FALSE(none.err.empty());

    const CliResult unknown = run({"interior", "--lambda", "1/2", "--mu", "3/4",
                                   "--frob", "1"});
    CHECK(unknown.code == kExitError);
    CHECK(contains(unknown.err, "argument error"));

    const CliResult badrat = run({"interior", "--lambda", "abc", "--mu", "3/4"});
    CHECK(badrat.code == kExitError);
    CHECK_FALSE(badrat.err.empty());

    const CliResult badrect =
        run({"certify-g", "--rect", "1/4,1/2,3/4", "--word", "(01)"});
    CHECK(badrect.code == kExitError);

    const CliResult inadmissible =
        run({"certify-g", "--rect", "1/2,1/2,1/2,1/2", "--word", "(01)"});
    CHECK(inadmissible.code == kExitError);
    CHECK(contains(inadmissible.err, "input error"));

    const CliResult badword =
        run({"certify-g", "--rect", "3/8,7/16,7/8,15/16", "--word", "(2)"});
    CHECK(badword.code == kExitError);
    CHECK(contains(badword.err, "input error"));

    const CliResult missing = run({"verify", "--in", (scratch() / "nope.jsonl").string()});
    CHECK(missing.code == kExitError);
    CHECK(contains(missing.err, "cannot read database"));
}

TEST_CASE("help exits 0 and global options are acknowledged") {
    const CliResult help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(contains(help.out, "affine-top"));
    CHECK(contains(help.out, "Exit codes"));

    const CliResult workers = run({"--workers", "4", "interior", "--lambda", "19/20",
                                   "--mu", "24/25"});
    CHECK(workers.code == kExitOk);
    CHECK(contains(workers.err, "serially"));
}
