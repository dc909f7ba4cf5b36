#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "drwlab/cli.hpp"

using namespace drwlab;

namespace {

JobConfig job(const std::string& command, const std::string& target) {
    JobConfig c;
    c.command = command;
    c.target = target;
    return c;
}

Json golden(const std::string& name) {
    std::ifstream f(std::string(DRWLAB_GOLDEN_DIR) + "/" + name);
    EXPECT_TRUE(f.good()) << name;
    return Json::parse(f);
}

std::string dump(const JobConfig& c) { return run_job(c).output.dump(2) + "\n"; }

}  // namespace

TEST(Config, RoundTrip) {
    JobConfig c = job("verify", "tower");
    c.p = 3;
    c.n = 2;
    c.s = 3;
    c.R = 2;
    c.wmin = -1;
    c.seed = 18446744073709551615ull;
    c.window_auto = true;
    c.block = std::vector<Rat>{Rat(1, 3), Rat(-2)};
    const Json j = to_json(c);
    EXPECT_EQ(to_json(config_from_json(j)), j);
    EXPECT_EQ(config_from_json(j).seed, c.seed);
    // A whole report is also accepted as a config.
    Json rep = {{"schema", kSchema}, {"job", j}};
    EXPECT_EQ(to_json(config_from_json(rep)), j);
}

TEST(Config, InvalidCombinationsRejected) {
    auto expect_bad = [](JobConfig c) { EXPECT_THROW(validate_config(c), Error) << to_json(c).dump(); };
    JobConfig c = job("verify", "etap");
    EXPECT_NO_THROW(validate_config(c));
    c.p = 4;
    expect_bad(c);
    c = job("verify", "nonsense");
    expect_bad(c);
    c = job("compute", "etap");
    expect_bad(c);
    c = job("verify", "cusp");
    c.kind = "cusp";
    c.n = 2;
    expect_bad(c);
    c = job("verify", "tower");
    c.wmin = 3;
    expect_bad(c);
    c = job("verify", "nu");
    c.kind = "affine";
    c.wmin = -1;
    expect_bad(c);
    c = job("verify", "nu");
    c.block = std::vector<Rat>{Rat(0), Rat(0)};
    expect_bad(c);
    EXPECT_THROW(config_from_json(Json{{"p", "two"}}), Error);
    EXPECT_THROW(config_from_json(Json{{"schema", "other/1"}}), Error);
}

TEST(Json, Scalars) {
    EXPECT_EQ(int_json(Int("123456789012345678901234567890")), "123456789012345678901234567890");
    Json z = pscalar_json(Rat(0), 2, 5);
    EXPECT_EQ(z["v"], "inf");
    Json a = pscalar_json(Rat(12), 2, 5);
    EXPECT_EQ(a["v"], 2);
    EXPECT_EQ(a["u"], "3");
    EXPECT_EQ(a["prec"], 5);
    EXPECT_EQ(pscalar_json(Rat(-1), 3, 2)["u"], "8");
    EXPECT_EQ(pscalar_json(Rat(1, 3), 2, 3)["u"], "3");  // 3 * 3 = 1 mod 8
    Json b = pscalar_json(Rat(1, 4), 2, 3);
    EXPECT_EQ(b["v"], -2);
    EXPECT_EQ(b["u"], "1");
}

TEST(Json, Weights) {
    const Weight w(std::vector<Rat>{Rat(-15, 4), Rat(3)});
    Json j = weight_json(w, 2);
    EXPECT_EQ(j[0]["num"], "-15");
    EXPECT_EQ(j[0]["denexp"], 2);
    EXPECT_EQ(j[1]["denexp"], 0);
    EXPECT_EQ(weight_from_json(j, 2), w.coords);
    EXPECT_THROW(weight_json(Weight(std::vector<Rat>{Rat(1, 3)}), 2), Error);
}

TEST(Json, MatrixRowMajor) {
    auto m = PMatrix::from_rows(3, 4, {{Rat(1), Rat(3)}, {Rat(0), Rat(9)}});
    Json j = matrix_json(m);
    EXPECT_EQ(j["rows"], 2);
    EXPECT_EQ(j["entries"][0][1]["v"], 1);
    EXPECT_EQ(j["entries"][1][0]["v"], "inf");
}

TEST(Compute, DocumentedExamples) {
    auto w = run_job([] {
        auto c = job("compute", "cusp-witness");
        c.p = 5;
        return c;
    }());
    EXPECT_EQ(w.code, ExitCode::Pass);
    EXPECT_EQ(w.output["schema"], "drw-lab/1");
    EXPECT_EQ(w.output["data"]["n"], 1);
    EXPECT_EQ(w.output["data"]["expression"], "(1/2)*x*dy");

    auto c = job("compute", "witt-polys");
    c.p = 2;
    c.r = 2;
    auto polys = run_job(c).output["data"]["polys"];
    ASSERT_EQ(polys.size(), 2u);
    EXPECT_EQ(polys[1], "-x0*y0 + x1 + y1");
}

TEST(Compute, GoldenFiles) {
    auto t = job("compute", "torus");
    t.s = 2;
    t.R = 2;
    t.wmin = -4;
    t.wmax = 4;
    EXPECT_EQ(run_job(t).output, golden("torus_n1_p2.json"));
    auto w = job("compute", "witt-polys");
    EXPECT_EQ(run_job(w).output, golden("witt_polys_p2_r2_sum.json"));
    auto cw = job("compute", "cusp-witness");
    cw.p = 5;
    EXPECT_EQ(run_job(cw).output, golden("cusp_witness_p5.json"));
}

TEST(Compute, DerhamAndSaturation) {
    auto c = job("compute", "derham");
    c.p = 3;
    auto d = run_job(c);
    EXPECT_EQ(d.code, ExitCode::Pass);
    EXPECT_EQ(d.output["data"]["complex"]["blocks"].size(), 5u);
    c.target = "saturation";
    c.s = 1;
    auto s = run_job(c);
    EXPECT_EQ(s.code, ExitCode::Pass);
    EXPECT_EQ(s.output["data"]["stages"].size(), 2u);
    EXPECT_EQ(s.output["precision"]["consumed"], 1);
}

TEST(Verify, DocumentedExamples) {
    auto e = job("verify", "etap");
    e.p = 3;
    e.seed = 7;
    e.count = 50;
    auto er = run_job(e);
    EXPECT_EQ(er.code, ExitCode::Pass);
    EXPECT_EQ(er.output["summary"]["fail"], 0);
    EXPECT_GE(er.output["summary"]["pass"].get<int>(), 50);

    auto cu = job("verify", "cusp");
    cu.p = 3;
    auto cr = run_job(cu);
    EXPECT_EQ(cr.code, ExitCode::Pass);
    bool witness = false;
    for (const auto& ch : cr.output["checks"])
        if (ch["id"] == "cusp/witness-formula" && ch["status"] == "pass") witness = ch["message"] == "(1/2)*x*y^2*dy";
    EXPECT_TRUE(witness);

    auto t = job("verify", "tower");
    t.n = 2;
    t.R = 3;
    auto tr = run_job(t);
    EXPECT_EQ(tr.code, ExitCode::Pass);
    EXPECT_EQ(tr.output["checks"][0]["id"], "tower/axioms");
    EXPECT_EQ(tr.output["checks"][0]["status"], "pass");
}

TEST(Verify, EverySuiteRuns) {
    for (const auto& s : verify_suites()) {
        auto c = job("verify", s);
        c.p = 3;
        c.count = 5;
        c.R = 2;
        auto r = run_job(c);
        EXPECT_EQ(r.code, ExitCode::Pass) << s << ": " << r.output.dump().substr(0, 400);
        EXPECT_GT(r.output["summary"]["pass"].get<int>(), 0) << s;
    }
}

TEST(Verify, ExitCodes) {
    auto c = job("verify", "etap");
    c.p = 6;
    auto r = run_job(c);
    EXPECT_EQ(r.code, ExitCode::Usage);
    EXPECT_EQ(r.output["error"]["kind"], "InvalidArgument");

    auto o = job("verify", "oracle");
    o.s = 3;
    o.prec = 3;
    auto ro = run_job(o);
    EXPECT_EQ(ro.code, ExitCode::Resource);
    EXPECT_EQ(ro.output["error"]["kind"], "PrecisionExhausted");

    auto w = job("verify", "cartier");
    w.kind = "affine";
    w.p = 5;
    w.wmin = 1;
    w.wmax = 4;
    auto rw = run_job(w);
    EXPECT_EQ(rw.code, ExitCode::Resource);
    EXPECT_EQ(rw.output["error"]["kind"], "WindowTooSmall");
}

TEST(Report, FailuresCarryRerunFlag) {
    Report r;
    r.job = job("verify", "nu");
    r.add("nu/iso", true);
    r.add("nu/iso", false, "2 -> 1", 1, Weight(std::vector<Rat>{Rat(1, 2)}));
    r.untestable("nu/window", "edge");
    Json j = r.to_json();
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["summary"]["fail"], 1);
    EXPECT_EQ(j["summary"]["untestable"], 1);
    EXPECT_EQ(j["checks"][1]["rerun"], "--block 1/2");
    EXPECT_EQ(j["checks"][1]["degree"], 1);
    EXPECT_FALSE(j["checks"][0].contains("rerun"));
}

TEST(Report, BlockAndWindowAuto) {
    auto c = job("verify", "nu");
    c.block = std::vector<Rat>{Rat(1, 2)};
    auto r = run_job(c);
    for (const auto& ch : r.output["checks"])
        if (ch.contains("weight")) EXPECT_EQ(ch["weight"][0]["num"], "1");

    auto a = job("verify", "tower");
    a.R = 2;
    a.s = 0;
    a.wmin = -1;
    a.wmax = 1;
    a.window_auto = true;
    auto grown = apply_window_auto(a);
    EXPECT_EQ(grown.s, 2);
    EXPECT_EQ(grown.wmin, -4);
    EXPECT_EQ(grown.wmax, 4);
    auto ra = run_job(a);
    EXPECT_EQ(ra.code, ExitCode::Pass);
    EXPECT_EQ(ra.output["data"]["requested_window"]["wmax"], 1);
}

TEST(Determinism, RepeatedRunsAndThreads) {
    for (const auto& s : {"etap", "gamma", "witt", "cusp"}) {
        auto c = job("verify", s);
        c.seed = 42;
        c.count = 10;
        const std::string a = dump(c);
        EXPECT_EQ(a, dump(c)) << s;
        setenv("DRWLAB_THREADS", "4", 1);
        EXPECT_EQ(a, dump(c)) << s;
        unsetenv("DRWLAB_THREADS");
    }
}
