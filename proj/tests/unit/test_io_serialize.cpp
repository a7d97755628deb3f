#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "recsel/datasets.hpp"
#include "recsel/errors.hpp"
#include "recsel/io.hpp"
#include "recsel/serialize.hpp"

using namespace recsel;

TEST(Io, ParseSequenceSkipsCommentsAndBlanks) {
  const auto v = parse_sequence("# header\n1.5\n\n  2e3 \n# note\n-0.25\n");
  EXPECT_EQ(v, (std::vector<double>{1.5, 2000.0, -0.25}));
}

TEST(Io, MalformedLineNamesLineNumber) {
  try {
    parse_sequence("1.0\n2.0\nabc\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_sequence("# nothing\n\n"), DataError);
  EXPECT_THROW(parse_sequence("1.0\nnan\n"), DataError);
}

TEST(Io, CsvColumnByNameOrIndex) {
  const std::string csv = "year,rain\n1890,12.69\n1891,10.0\n";
  EXPECT_EQ(parse_csv_column(csv, "rain"), (std::vector<double>{12.69, 10.0}));
  EXPECT_EQ(parse_csv_column(csv, "1"), (std::vector<double>{1890.0, 1891.0}));
  EXPECT_THROW(parse_csv_column(csv, "snow"), UsageError);
}

TEST(Io, SixSignificantDigits) {
  EXPECT_EQ(format_number(358.89213), "358.892");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(60.832812), "60.8328");
}

TEST(Io, RecordsCsv) {
  RecordSet r;
  r.values = {3.0, 4.5};
  r.times = {1, 3};
  EXPECT_EQ(records_to_csv(r), "index,time,value\n1,1,3\n2,3,4.5\n");
}

TEST(Io, ReadMissingFileIsUsageError) {
  EXPECT_THROW(read_file("/nonexistent/recsel/input.txt"), UsageError);
}

TEST(Serialize, FamilyRoundTrip) {
  const std::vector<FamilySpec> all{
      FamilySpec::gamma_type(Member::Gamma, 0.5),
      FamilySpec::gamma_type(Member::WeibullKnownBeta, 1.0, 2.5),
      FamilySpec::gamma_type(Member::InverseGaussian),
      FamilySpec::hazard(Member::Pareto, 3.0),
      FamilySpec::hazard(Member::Burr, 1.5),
      FamilySpec::custom_hazard(PowerCurve{4.0, 1.9, 2.0}),
      FamilySpec::custom_hazard(TabulatedCurve{{0.0, 1.0}, {0.0, 2.0}}),
      FamilySpec::reversed_hazard(Member::Beta),
      FamilySpec::custom_reversed_hazard(TabulatedCurve{{1.0, 2.0}, {-1.0, 0.0}})};
  for (const auto& f : all) {
    const Json j = family_to_json(f);
    EXPECT_EQ(family_to_json(family_from_json(j)), j) << j.dump();
  }
}

TEST(Serialize, CustomHazardDocument) {
  const FamilySpec f =
      family_from_json(Json::parse(R"({"custom_H": {"shift": 4, "power": 1.9, "scale": 1}})"));
  EXPECT_EQ(f.kind(), FamilyKind::ProportionalHazard);
  EXPECT_NEAR(cumulative_hazard(f, 12.69), std::pow(8.69, 1.9), 1e-12);
  const FamilySpec g = family_from_json(
      Json::parse(R"({"kind": "GammaType", "member": "Gamma", "p": 2, "params": {}})"));
  EXPECT_DOUBLE_EQ(g.shape_p(), 2.0);
}

TEST(Serialize, FamilyErrors) {
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind": "GammaType", "member": "Unicorn"})")),
               UsageError);
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind": "Sideways", "member": "Gamma"})")),
               UsageError);
  EXPECT_THROW(family_from_json(Json::parse(R"({"kind": "GammaType", "member": "Rayleigh", "p": 3})")),
               UsageError);
  EXPECT_THROW(family_from_json(Json::parse("[1, 2]")), UsageError);
}

TEST(Serialize, SimulationRequestDefaults) {
  const auto req = simulation_request_from_json(Json::parse(R"({
    "family": {"kind": "ProportionalHazard", "member": "Exponential"},
    "scheme": "WhiteNoise", "n_target": 3})"));
  EXPECT_EQ(req.config.theta_model.scheme, Scheme::WhiteNoise);
  EXPECT_DOUBLE_EQ(req.config.theta_model.noise_mean, 10.0);
  EXPECT_EQ(req.config.n_target, 3);
  EXPECT_EQ(req.config.replications, 100000u);
  EXPECT_EQ(req.config.master_seed, kDefaultSeed);
  EXPECT_EQ(req.estimators, (std::vector<EstimatorId>{EstimatorId::UmvuePhr, EstimatorId::NaturalPhr}));
  const auto again = simulation_request_from_json(simulation_request_to_json(req));
  EXPECT_EQ(simulation_request_to_json(again), simulation_request_to_json(req));
}

TEST(Serialize, SimulationRequestErrors) {
  EXPECT_THROW(simulation_request_from_json(Json::parse(R"({
    "family": {"kind": "GammaType", "member": "Gamma", "p": 1},
    "scheme": {"name": "Brownian"}})")),
               UsageError);
  EXPECT_THROW(simulation_request_from_json(Json::parse(R"({
    "family": {"kind": "GammaType", "member": "Gamma", "p": 1},
    "scheme": "Constant", "estimators": ["UmvuePhr"]})")),
               UsageError);
  EXPECT_THROW(simulation_request_from_json(Json::parse(R"({"scheme": "Constant"})")), UsageError);
  EXPECT_THROW(simulation_request_from_json(Json::parse(R"({
    "family": {"kind": "GammaType", "member": "Gamma", "p": 1},
    "scheme": "Constant", "n_target": "four"})")),
               UsageError);
}

TEST(Serialize, SummaryMarksUndefinedErrors) {
  SimulationSummary s;
  s.scheme = Scheme::Constant;
  s.family_kind = FamilyKind::ProportionalHazard;
  s.replications = 1;
  SummaryCell c;
  c.estimator = EstimatorId::UmvuePhr;
  c.n = 2;
  c.bias = 0.5;
  c.risk = 0.25;
  c.se_bias = std::nan("");
  c.se_risk = std::nan("");
  c.count = 1;
  s.cells.push_back(c);
  EXPECT_EQ(summary_to_csv(s),
            "scheme,p,n,estimator,bias,risk,se_bias,se_risk,count\n"
            "Constant,NA,2,UmvuePhr,0.5,0.25,NA,NA,1\n");
  const Json j = summary_to_json(s);
  EXPECT_TRUE(j["cells"][0]["se_bias"].is_null());
  EXPECT_FALSE(j["se_defined"].get<bool>());
}

TEST(Serialize, ReportJsonKeepsFullPrecision) {
  const EstimateReport r = make_report(EstimatorId::UmvuePhr, 3, 1.0 / 3.0, 2.0 / 9.0);
  const Json j = report_to_json(r);
  EXPECT_EQ(j["estimate"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(j["estimator_id"], "UmvuePhr");
  EXPECT_EQ(estimate_csv_row(r), "3,UmvuePhr,0.333333,0.222222,0,1.04044");
}

TEST(Datasets, Rainfall) {
  const auto d = bundled_dataset("lacc-rainfall-records");
  EXPECT_EQ(d.values.size(), 8u);
  EXPECT_DOUBLE_EQ(d.values.front(), 12.69);
  EXPECT_DOUBLE_EQ(d.values.back(), 34.04);
  EXPECT_NEAR(cumulative_hazard(d.family, 34.04), std::pow(30.04, 1.9), 1e-10);
  EXPECT_THROW(bundled_dataset("nope"), UsageError);
}
