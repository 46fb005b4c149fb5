#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "tangency/cli.hpp"
#include "tangency/curve_io.hpp"
#include "tangency/generators.hpp"
#include "tangency/pipeline.hpp"

using namespace tangency;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "tangency_charge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tangency_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(CurveIo, RoundTripIsExact) {
  auto family = gen_comb(4, 3, 2, 5);
  const std::string text = curves_to_json(family);
  EXPECT_EQ(curves_to_json(curves_from_json(text)), text);
  const auto closed = orient_closed_family(build_arrangement(gen_bipartite_closed_small(2))).curves();
  const std::string ctext = curves_to_json(closed);
  const auto back = curves_from_json(ctext);
  ASSERT_EQ(back.size(), closed.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back[i].geometry, closed[i].geometry);
}

TEST(CurveIo, RejectsBadInput) {
  EXPECT_THROW(curves_from_json("{"), ParseError);
  EXPECT_THROW(curves_from_json(R"({"version": 2, "curves": []})"), ParseError);
  EXPECT_THROW(curves_from_json(R"({"version": 1, "curves": [{"id": 1, "class": null, "kind": "open",
      "vertices": [["0", "0"], ["1", "1"]]}]})"),
               ParseError);
  EXPECT_THROW(curves_from_json(R"({"version": 1, "curves": [{"id": 0, "class": null, "kind": "open",
      "vertices": [["0", "0"], ["0", "1"]]}]})"),
               ParseError);
  EXPECT_THROW(curves_from_json(R"({"version": 1, "curves": [{"id": 0, "class": "S3", "kind": "open",
      "vertices": [["0", "0"], ["1", "1"]]}]})"),
               ParseError);
  EXPECT_THROW(curves_from_json(R"({"version": 1, "curves": [{"id": 0, "class": null, "kind": "open",
      "vertices": [["1/0", "0"], ["1", "1"]]}]})"),
               ParseError);
}

TEST(ReportIo, StatusesRecomputeFromRawNumbers) {
  AuditReport report;
  report.rows.push_back(exact_row("upper_A", 3, 2, Relation::Le, 3, 4));
  report.rows.push_back(exact_row("lower", 1, 1, Relation::Ge, make_rational(3, 2), 2));
  report.rows.push_back(numeric_row("upper_aggregate", 3, 0, Relation::Le, 44.0000000001, 44));
  report.rows.push_back(skipped_row("lower", 2, 4, "eligibility"));
  AuditRow vac = exact_row("upper_B", 5, 1, Relation::Le, 0, 2);
  vac.status = AuditStatus::Vacuous;
  report.rows.push_back(vac);
  report.summary.total_weights["total"] = "7/2";
  report.summary.formula_bounds["x"] = 1.5;
  report.summary.notices.push_back("note");

  const ReportFile file{"charge", "monotone", "2/1", {}, report};
  const std::string text = report_to_json(file);
  const ReportFile back = report_from_json(text);
  ASSERT_EQ(back.report.rows.size(), report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_EQ(back.report.rows[i].status, report.rows[i].status);
    EXPECT_EQ(recompute_status(back.report.rows[i]), report.rows[i].status) << i;
  }
  EXPECT_EQ(report.rows[1].status, AuditStatus::Fail);
  EXPECT_EQ(report.rows[2].status, AuditStatus::Pass);
  EXPECT_EQ(report_to_json(back), text);

  const std::string csv = report_to_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "audit_kind,vertex_id,level,relation,computed,bound,status,note");
  EXPECT_NE(csv.find("lower,1,1,ge,3/2,2/1,fail,"), std::string::npos);
}

TEST_F(CliTest, GenerateCountsAndDeterminism) {
  const CliRun r = run({"generate", "--family", "comb", "--n", "4", "--touches", "4", "--seed", "7", "--out", path("f.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(curves_from_json(read_text_file(path("f.json"))).size(), 8u);
  ASSERT_EQ(run({"generate", "--family", "comb", "--n", "4", "--touches", "4", "--seed", "7", "--out", path("g.json")}).code,
            kExitOk);
  EXPECT_EQ(read_text_file(path("f.json")), read_text_file(path("g.json")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"generate", "--family", "comb", "--n", "4", "--touches", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"generate", "--family", "nope", "--n", "4", "--out", path("x.json")}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", path("missing.json")}).code, kExitUsage);
  write_text_file(path("bad.json"), "{not json");
  EXPECT_EQ(run({"charge", path("bad.json")}).code, kExitUsage);
  ASSERT_EQ(run({"generate", "--family", "comb", "--n", "2", "--touches", "1", "--out", path("c.json")}).code, kExitOk);
  EXPECT_EQ(run({"charge", path("c.json"), "--alpha", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"charge", path("c.json"), "--alpha", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"charge", path("c.json"), "--levels", "1,a"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, ChargeMonotone) {
  ASSERT_EQ(run({"generate", "--family", "comb", "--n", "6", "--touches", "4", "--seed", "2", "--out", path("f.json")}).code,
            kExitOk);
  const CliRun r = run({"charge", path("f.json"), "--scheme", "monotone", "--alpha", "2", "--audit", "--out", path("r.json"),
                     "--csv", path("r.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err << r.out;
  const ReportFile rep = report_from_json(read_text_file(path("r.json")));
  EXPECT_EQ(rep.report.count(AuditStatus::Fail), 0u);
  EXPECT_EQ(rep.stats.touchings, 24u);
  EXPECT_GT(rep.report.rows.size(), 10u);
  EXPECT_TRUE(fs::exists(path("r.csv")));

  const CliRun fault = run({"charge", path("f.json"), "--inject-fault", "weight", "--out", path("bad.json")});
  EXPECT_EQ(fault.code, kExitAuditFailure);
  EXPECT_GT(report_from_json(read_text_file(path("bad.json"))).report.count(AuditStatus::Fail), 0u);
  EXPECT_EQ(run({"charge", path("f.json"), "--inject-fault", "arc", "--out", path("bad2.json")}).code, kExitAuditFailure);
}

TEST_F(CliTest, ChargePreconditions) {
  ASSERT_EQ(run({"generate", "--family", "bipartite_closed_small", "--n", "2", "--out", path("b.json")}).code, kExitOk);
  EXPECT_EQ(run({"charge", path("b.json"), "--scheme", "monotone"}).code, kExitPrecondition);
  const CliRun ok = run({"charge", path("b.json"), "--scheme", "bipartite", "--audit", "--out", path("rb.json")});
  EXPECT_EQ(ok.code, kExitOk) << ok.err << ok.out;

  ASSERT_EQ(run({"generate", "--family", "comb", "--n", "3", "--touches", "2", "--out", path("c.json")}).code, kExitOk);
  EXPECT_EQ(run({"charge", path("c.json"), "--scheme", "bipartite"}).code, kExitPrecondition);
  ASSERT_EQ(run({"generate", "--family", "random_polylines", "--n", "4", "--m", "6", "--out", path("p.json")}).code, kExitOk);
  EXPECT_EQ(run({"charge", path("p.json")}).code, kExitPrecondition);
}

TEST_F(CliTest, AnalyzeAndOracle) {
  write_text_file(path("v.json"), curves_to_json(tangency::testing::v_instance()));
  const CliRun a = run({"analyze", path("v.json")});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_NE(a.out.find("T: 2"), std::string::npos);
  EXPECT_NE(a.out.find("X1: 1"), std::string::npos);
  const CliRun o = run({"oracle-check", path("v.json")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("3 points"), std::string::npos);
}

TEST_F(CliTest, TransformChain) {
  ASSERT_EQ(run({"generate", "--family", "convex", "--n", "3", "--seed", "2", "--out", path("c.json")}).code, kExitOk);
  ASSERT_EQ(run({"transform", path("c.json"), "--op", "decompose", "--out", path("pieces.json")}).code, kExitOk);
  EXPECT_EQ(curves_from_json(read_text_file(path("pieces.json"))).size(), 6u);
  // Pieces meet at their cut points, so they are not a general-position family.
  EXPECT_EQ(run({"analyze", path("pieces.json")}).code, kExitPrecondition);

  ASSERT_EQ(run({"generate", "--family", "random_polylines", "--n", "6", "--m", "10", "--seed", "2", "--out", path("q.json")}).code,
            kExitOk);
  ASSERT_EQ(run({"transform", path("q.json"), "--op", "bipartition", "--seed", "3", "--out", path("split.json")}).code,
            kExitOk);
  ASSERT_EQ(run({"transform", path("split.json"), "--op", "extend", "--out", path("ext.json")}).code, kExitOk);
  for (const auto& rec : curves_from_json(read_text_file(path("ext.json")))) {
    EXPECT_EQ(rec.geometry.kind(), CurveKind::BiInfinite);
  }

  ASSERT_EQ(run({"generate", "--family", "comb", "--n", "6", "--touches", "3", "--out", path("k.json")}).code, kExitOk);
  ASSERT_EQ(run({"transform", path("k.json"), "--op", "bipartition", "--seed", "3", "--out", path("ks.json")}).code, kExitOk);
  ASSERT_EQ(run({"transform", path("ks.json"), "--op", "normalize", "--out", path("kn.json")}).code, kExitOk);
  const Arrangement normalized = build_arrangement(curves_from_json(read_text_file(path("kn.json"))));
  for (PointId t : normalized.touchings()) {
    EXPECT_EQ(normalized.curve(normalized.point(t).upper).cls, CurveClass::S1);
  }
  EXPECT_EQ(run({"transform", path("c.json"), "--op", "spin", "--out", path("x.json")}).code, kExitUsage);
  EXPECT_EQ(run({"transform", path("c.json"), "--op", "shear", "--eps", "1/100", "--out", path("s.json")}).code, kExitOk);
}

TEST_F(CliTest, PipelineRt) {
  ASSERT_EQ(run({"generate", "--family", "convex", "--n", "8", "--seed", "1", "--out", path("c.json")}).code, kExitOk);
  const CliRun r = run({"pipeline-rt", path("c.json"), "--out", path("r.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const ReportFile rep = report_from_json(read_text_file(path("r.json")));
  ASSERT_FALSE(rep.report.rows.empty());
  EXPECT_EQ(rep.report.rows[0].audit_kind, "rt_bound");
  EXPECT_EQ(rep.report.rows[0].status, AuditStatus::Pass);

  // Two disjoint squares never meet.
  write_text_file(path("apart.json"), curves_to_json({{0, CurveClass::Unassigned, tangency::testing::square(0, 0, 1)},
                                                      {1, CurveClass::Unassigned, tangency::testing::square(5, 5, 1)}}));
  const CliRun apart = run({"pipeline-rt", path("apart.json")});
  EXPECT_EQ(apart.code, kExitPrecondition);
  EXPECT_NE(apart.err.find("curves 0 and 1"), std::string::npos);
}

TEST(Pipeline, TouchingOnlyPair) {
  const PipelineResult r = run_rt_pipeline(gen_bipartite_closed_small(1));
  EXPECT_EQ(r.total_intersections, 1u);
  EXPECT_EQ(r.touchings, 1u);
  EXPECT_EQ(r.bound, 1);
  EXPECT_TRUE(r.report.ok());
}

TEST(Pipeline, ChargingBranchRuns) {
  PipelineOptions opt;
  opt.touch_threshold = 0;
  const PipelineResult r = run_rt_pipeline(gen_bipartite_closed_small(2), opt);
  EXPECT_EQ(r.touchings, 4u);
  EXPECT_TRUE(r.charged);
  EXPECT_TRUE(r.report.ok());
}

TEST(Pipeline, RejectsOpenCurves) {
  EXPECT_THROW(run_rt_pipeline(gen_random_polylines(3, 4, 1)), PreconditionError);
}
