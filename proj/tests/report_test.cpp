// Copyright 2026 The vscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <string>

#include "fixtures.hpp"
#include "vscreen/analysis.hpp"
#include "vscreen/report.hpp"
#include "vscreen/synthetic.hpp"

namespace vscreen {
namespace {

using nlohmann::json;

const std::string kSummaryPath = std::string(VSCREEN_SOURCE_DIR) + "/fixtures/cohort_summary.csv";

TEST(SummaryCsv, LoadsFixture) {
  const auto models = load_summary_csv(kSummaryPath);
  ASSERT_EQ(models.size(), 20u);
  EXPECT_EQ(models[0].model_id, "Sonnet-4.6");
  EXPECT_EQ(models[19].tier.value, TierValue::kInvalid);
  EXPECT_DOUBLE_EQ(*models[19].auroc, .031);
  EXPECT_DOUBLE_EQ(*models[19].gain(0.5), -.143);
  EXPECT_FALSE(models[0].keep_rate().has_value());
}

TEST(SummaryCsv, OptionalColumnsAndMarkers) {
  const auto models = parse_summary_csv(
      "model,family,tier,baseline,auroc,gain80,gain70,gain50,L,r\r\n"
      "a,f,Indet.,0.5,---,0.1,,0.2,0.6,0.2\r\n");
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].tier.value, TierValue::kIndeterminate);
  EXPECT_FALSE(models[0].auroc.has_value());
  EXPECT_FALSE(models[0].gain(0.7).has_value());
  EXPECT_DOUBLE_EQ(*models[0].keep_rate(), 0.6);
  EXPECT_DOUBLE_EQ(*models[0].phi(), 0.2);
}

TEST(SummaryCsv, Errors) {
  EXPECT_THROW(parse_summary_csv(""), Error);
  EXPECT_THROW(parse_summary_csv("model,tier\n"), Error);
  try {
    parse_summary_csv(
        "model,family,tier,baseline,auroc,gain80,gain70,gain50\n"
        "a,f,Valid,0.5,0.6,0.1,0.1,0.1\n"
        "b,f,Valid,0.5,abc,0.1,0.1,0.1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_summary_csv("model,family,tier,baseline,auroc,gain80,gain70,gain50\n"
                                 "a,f,Great,0.5,0.6,0.1,0.1,0.1\n"),
               Error);
  EXPECT_THROW(parse_summary_csv("model,family,tier,baseline,auroc,gain80,gain70,gain50\n"
                                 "a,f,Valid,0.5\n"),
               Error);
}

TEST(ReportOrder, TierBlocksThenAurocDescending) {
  const auto models = load_summary_csv(kSummaryPath);
  const auto order = report_order(models);
  ASSERT_EQ(order.size(), models.size());
  auto block = [](TierValue t) {
    return t == TierValue::kValid ? 0 : (t == TierValue::kIndeterminate ? 1 : 2);
  };
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& prev = models[order[i - 1]];
    const auto& cur = models[order[i]];
    ASSERT_LE(block(prev.tier.value), block(cur.tier.value));
    if (block(prev.tier.value) == block(cur.tier.value)) EXPECT_GE(*prev.auroc, *cur.auroc);
  }
  EXPECT_EQ(models[order.back()].model_id, "DeepSeek-R1");
}

class CriterionReport : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    report_ = new json(criterion_report(load_summary_csv(kSummaryPath), 10000, 20260416));
  }
  static void TearDownTestSuite() { delete report_; }
  static const json& report() { return *report_; }

 private:
  static json* report_;
};
json* CriterionReport::report_ = nullptr;

TEST_F(CriterionReport, AurocTierTests) {
  const auto& r = report();
  EXPECT_EQ(r["n_models"], 20);
  EXPECT_NEAR(r["auroc_anova"]["statistic"].get<double>(), 7.539, 5e-4);
  EXPECT_NEAR(r["auroc_anova"]["p_value"].get<double>(), .0045, 5e-5);
  EXPECT_NEAR(r["auroc_anova"]["effect_size"].get<double>(), .470, 5e-4);
  EXPECT_EQ(r["auroc_mann_whitney"]["statistic"].get<double>(), 42.0);
  EXPECT_NEAR(r["auroc_mann_whitney"]["p_value"].get<double>(), 1.0 / 680.0, 1e-12);
  EXPECT_EQ(r["auroc_mann_whitney_without_extreme"]["excluded_model"], "DeepSeek-R1");
  EXPECT_EQ(r["auroc_mann_whitney_without_extreme"]["statistic"].get<double>(), 28.0);
  EXPECT_NEAR(r["auroc_mann_whitney_without_extreme"]["invalid_mean_without_extreme"].get<double>(),
              .520, 1e-12);
  EXPECT_NEAR(r["auroc_cohens_d"]["valid_vs_invalid"].get<double>(), 2.365, 5e-4);
}

TEST_F(CriterionReport, TierBootstrap) {
  const auto& t = report()["auroc_tier_bootstrap"]["tiers"];
  EXPECT_NEAR(t["Invalid"]["ci"][0].get<double>(), .031, 1e-12);
  EXPECT_NEAR(t["Invalid"]["ci"][1].get<double>(), .522, 1e-12);
  EXPECT_NEAR(t["Valid"]["mean"].get<double>(), .624, 5e-4);
  EXPECT_EQ(t["Indeterminate"]["n"], 3);
  const double p = report()["auroc_monotonicity"]["probability"].get<double>();
  EXPECT_GT(p, 0.0);
  EXPECT_LE(p, 1.0);
}

TEST_F(CriterionReport, Gain70Battery) {
  const auto& g = report()["gain70"];
  EXPECT_NEAR(g["valid_mean"].get<double>(), .031071, 1e-6);
  EXPECT_NEAR(g["invalid_mean"].get<double>(), -.007667, 1e-6);
  EXPECT_EQ(g["mann_whitney"]["statistic"].get<double>(), 37.0);
  EXPECT_LT(g["mann_whitney"]["p_value"].get<double>(), .05);
  EXPECT_NEAR(g["anova"]["statistic"].get<double>(), 3.9945, 5e-4);
  EXPECT_NEAR(g["anova"]["p_value"].get<double>(), .0378, 5e-4);
}

TEST_F(CriterionReport, Gain50AnovaFromKeyedInValues) {
  const auto& g = report()["gain50_anova"];
  EXPECT_NEAR(g["statistic"].get<double>(), 6.136, 5e-3);
}

TEST_F(CriterionReport, MissingInputsAreListedAsAbsent) {
  std::set<std::string> absent;
  for (const auto& a : report()["absent"]) absent.insert(a["test"].get<std::string>());
  EXPECT_TRUE(absent.contains("within_valid_l_vs_auroc"));
  EXPECT_TRUE(absent.contains("within_valid_r_vs_auroc"));
  EXPECT_FALSE(report().contains("within_valid_l_vs_auroc"));
}

TEST_F(CriterionReport, FamilyGrouping) {
  const auto& f = report()["family_grouping"];
  ASSERT_TRUE(f.is_object());
  EXPECT_FALSE(f.dump().empty());
}

TEST(CriterionReportSynthetic, DatasetPathFillsCorrelations) {
  ScreenConfig cfg;
  cfg.rbs_bootstrap_samples = 1000;
  std::vector<ModelDataset> cohort;
  for (int i = 0; i < 6; ++i) {
    BehaviourProfile p;
    p.p_keep_given_incorrect = 0.3 + 0.08 * i;
    cohort.push_back(generate_model(p, "d" + std::to_string(i), "f", 1));
  }
  for (int i = 0; i < 2; ++i) {
    cohort.push_back(generate_model(r1_matched_profile(), "r" + std::to_string(i), "g", 1));
  }
  const auto models = analyze_cohort(cohort, cfg);
  const auto rep = criterion_report(models, 1000, 1);
  EXPECT_TRUE(rep.contains("within_valid_l_vs_auroc"));
  EXPECT_TRUE(rep.contains("within_valid_r_vs_auroc"));
  EXPECT_TRUE(rep.contains("auroc_mann_whitney"));
  // Indeterminate is empty, so monotonicity cannot run.
  EXPECT_FALSE(rep.contains("auroc_monotonicity"));
}

TEST(AnalyzeModel, R1Reconstruction) {
  const auto ds = testing::dataset_from_table(testing::kR1Table, "DeepSeek-R1");
  const auto m = analyze_model(ds, ScreenConfig{});
  EXPECT_EQ(m.tier.value, TierValue::kInvalid);
  EXPECT_NEAR(*m.baseline, .853, 5e-4);
  EXPECT_NEAR(m.indices->L, .181, 5e-4);
  ASSERT_TRUE(m.auroc.has_value());
  EXPECT_LT(*m.auroc, .5);
  EXPECT_TRUE(m.gain(0.7).has_value());
  EXPECT_LT(*m.gain(0.7), 0.0);
  EXPECT_EQ(m.per_track->tracks.size(), 6u);
  EXPECT_THROW(analyze_model(ModelDataset{"e", "f", {}}, ScreenConfig{}), Error);
}

TEST(ToolConfig, LoadsShippedDefault) {
  const auto cfg = load_tool_config(std::string(VSCREEN_SOURCE_DIR) + "/configs/default.json");
  EXPECT_EQ(cfg.screen.seed, 20260416u);
  EXPECT_EQ(cfg.tracks.size(), 6u);
  EXPECT_EQ(cfg.track_names.at("T3"), "Social");
}

TEST(ToolConfig, RejectsBadInput) {
  EXPECT_THROW(tool_config_from_json(json{{"alpah", 0.05}}), Error);
  EXPECT_THROW(tool_config_from_json(json{{"alpha", "x"}}), Error);
  EXPECT_THROW(tool_config_from_json(json{{"alpha", 1.5}}), Error);
  EXPECT_THROW(tool_config_from_json(json{{"r_sig_sidedness", "both"}}), Error);
  EXPECT_THROW(tool_config_from_json(json{{"tracks", json::array()}}), Error);
  EXPECT_THROW(tool_config_from_json(json::array()), Error);
  EXPECT_THROW(load_tool_config("/nonexistent/config.json"), Error);
}

TEST(Format, ThreeDecimalsAndMarker) {
  EXPECT_EQ(format3(0.12345), "0.123");
  EXPECT_EQ(format3(-0.0001, true), "+0.000");
  EXPECT_EQ(format3(0.05, true), "+0.050");
  EXPECT_EQ(format3(std::nullopt), "---");
  EXPECT_EQ(parse_format("csv"), Format::kCsv);
  EXPECT_THROW(parse_format("xml"), Error);
}

TEST(Render, UndefinedValuesUseMarkerAndNull) {
  BehaviourProfile p;
  p.kind = BehaviourKind::kBlanket;
  p.p_keep_given_correct = p.p_keep_given_incorrect = 1.0;
  ScreenConfig cfg;
  cfg.rbs_bootstrap_samples = 1000;
  const std::vector<ModelSummary> models = {
      analyze_model(generate_model(p, "blanket", "f", 1), cfg)};
  const auto md = render_vrs_table(models, Format::kMarkdown);
  EXPECT_NE(md.find("---"), std::string::npos);
  EXPECT_NE(md.find("blanket-confidence"), std::string::npos);
  const auto j = to_json(models[0]);
  EXPECT_TRUE(j["indices"]["r"].is_null());
}

TEST(Render, SelectiveTableRowsFollowReportOrder) {
  const auto models = load_summary_csv(kSummaryPath);
  const auto csv = render_selective_table(models, Format::kCsv);
  const auto first_row = csv.substr(csv.find('\n') + 1);
  EXPECT_EQ(first_row.rfind("Sonnet-4.6,", 0), 0u);
  EXPECT_LT(csv.find("Gemma-3-1B"), csv.find("DeepSeek-R1"));
  EXPECT_NE(csv.find("-0.143"), std::string::npos);
}

TEST(Render, FigureCsvHeaders) {
  const auto models = load_summary_csv(kSummaryPath);
  EXPECT_EQ(figure_auroc_csv(models).rfind("model,tier,auroc\n", 0), 0u);
  EXPECT_EQ(figure_gain70_csv(models).rfind("model,tier,gain70\n", 0), 0u);
}

TEST(Manifest, TimestampFromEnvironment) {
  unsetenv("SOURCE_DATE_EPOCH");
  auto m = make_manifest("screen", "in.csv", "", 1, json::object());
  EXPECT_TRUE(to_json(m)["timestamp"].is_null());
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  m = make_manifest("screen", "in.csv", "", 1, json::object());
  EXPECT_EQ(to_json(m)["timestamp"], "1970-01-01T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(to_json(m)["tool"], "vscreen");
}

}  // namespace
}  // namespace vscreen
