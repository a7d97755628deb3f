#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "app.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "recsel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = recsel::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string source(const std::string& rel) { return std::string(RECSEL_SOURCE_DIR) + "/" + rel; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("recsel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const char* kExpFamily = R"({"kind":"ProportionalHazard","member":"Exponential"})";

}  // namespace

TEST_F(CliTest, RecordsOnRainfallFile) {
  const CliRun r = run({"records", "--input", source("data/lacc_rainfall_records.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], "index,time,value");
  EXPECT_EQ(rows[8], "8,8,34.04");
}

TEST_F(CliTest, RecordsSingleValue) {
  const CliRun r = run({"records", "--input", write("one.txt", "4.2\n")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "index,time,value\n1,1,4.2\n");
}

TEST_F(CliTest, RecordsLowerAndFamily) {
  const std::string in = write("s.txt", "3\n1\n4\n1\n5\n");
  EXPECT_EQ(run({"records", "--input", in, "--direction", "lower"}).out,
            "index,time,value\n1,1,3\n2,2,1\n");
  const CliRun fam = run({"records", "--input", in, "--family", kExpFamily});
  EXPECT_EQ(fam.out, "index,time,value,key\n1,1,3,3\n2,3,4,4\n3,5,5,5\n");
  EXPECT_EQ(run({"records", "--input", in, "--direction", "sideways"}).code, 2);
}

TEST_F(CliTest, MalformedInputIsDataError) {
  const CliRun r = run({"records", "--input", write("bad.txt", "1.0\n2.x\n")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, CsvColumnInput) {
  const std::string in = write("rain.csv", "year,rain\n1,2.0\n2,1.0\n3,5.0\n");
  const CliRun r = run({"records", "--input", in, "--column", "rain"});
  EXPECT_EQ(r.out, "index,time,value\n1,1,2\n2,3,5\n");
}

TEST_F(CliTest, EstimateRainfallBothModels) {
  const CliRun h1 = run({"estimate", "--input", "bundled:lacc-rainfall-records", "--model",
                      "nonstationary"});
  ASSERT_EQ(h1.code, 0) << h1.err;
  auto rows = lines(h1.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], "n,estimator_id,estimate,risk_estimate,band_lo,band_hi");
  EXPECT_EQ(rows[1].substr(0, 20), "1,UmvuePhr,60.8328,1");
  EXPECT_EQ(rows[8].substr(0, 19), "8,UmvuePhr,107.447,");

  const CliRun h0 = run({"estimate", "--input", source("data/lacc_rainfall_records.txt"),
                      "--family", R"({"custom_H":{"shift":4,"power":1.9,"scale":1}})",
                      "--model", "stationary"});
  ASSERT_EQ(h0.code, 0) << h0.err;
  rows = lines(h0.out);
  EXPECT_EQ(rows[8].substr(0, 26), "8,StationaryUmvue,80.2675,");
}

TEST_F(CliTest, EstimateFamilyFromFileAndBandFactor) {
  const std::string fam = write("fam.json", kExpFamily);
  const CliRun r = run({"estimate", "--input", write("s.txt", "2\n5\n"), "--family", fam,
                     "--band-factor", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out)[2], "2,UmvuePhr,3,4.5,0.87868,5.12132");
}

TEST_F(CliTest, EstimateErrors) {
  const CliRun constant = run({"estimate", "--input", write("c.txt", "3\n3\n3\n"), "--family",
                            kExpFamily});
  EXPECT_EQ(constant.code, 3);
  EXPECT_NE(constant.err.find("fewer than 2 records"), std::string::npos);
  const CliRun mismatch = run({"estimate", "--input", write("s.txt", "1\n2\n"), "--family",
                            R"({"kind":"GammaType","member":"Gamma","p":2})", "--model",
                            "stationary"});
  EXPECT_EQ(mismatch.code, 2);
  EXPECT_EQ(run({"estimate", "--input", write("t.txt", "1\n2\n")}).code, 2);
  EXPECT_EQ(run({"estimate", "--input", "/no/such/file", "--family", kExpFamily}).code, 2);
  EXPECT_EQ(run({"estimate", "--input", write("u.txt", "1\n2\n"), "--family", "{broken"}).code, 2);
}

TEST_F(CliTest, SimulateTableConfig) {
  const CliRun r = run({"simulate", "--config", source("configs/table1_scheme1_p05.json"), "--reps",
                     "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "scheme,p,n,estimator,bias,risk,se_bias,se_risk,count");
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(rows[1 + k].substr(0, 27), "ArPositiveError,0.5," + std::to_string(2 + k) + ",Umvue");
  }
}

TEST_F(CliTest, SimulateSingleReplicate) {
  const CliRun r = run({"simulate", "--config", source("configs/table1_scheme3_p2.json"), "--reps",
                     "1", "--out", path("one.csv"), "--json", path("one.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("undefined"), std::string::npos);
  const std::string csv = slurp(path("one.csv"));
  EXPECT_NE(csv.find(",NA,NA,1"), std::string::npos) << csv;
  EXPECT_NE(slurp(path("one.json")).find("\"se_defined\": false"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("one.csv.manifest.json")));
}

TEST_F(CliTest, SimulateConfigErrors) {
  const std::string bad = write("bad.json", R"({"family":{"kind":"GammaType","member":"Gamma","p":1},
    "scheme":{"name":"Brownian"}})");
  EXPECT_EQ(run({"simulate", "--config", bad}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", write("x.json", "{not json")}).code, 2);
  const std::string truncating = write("t.json", R"({"family":{"kind":"GammaType","member":"Gamma","p":1},
    "scheme":"WhiteNoise","n_target":4,"replications":400,"max_observations":50})");
  EXPECT_EQ(run({"simulate", "--config", truncating}).code, 4);
}

TEST_F(CliTest, CritvalsShapeAndWarning) {
  const CliRun r = run({"critvals", "--reps", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 12u);  // two comment lines, header, n = 2..10
  EXPECT_EQ(rows[2], "n,0.01,0.025,0.05,0.1");
  EXPECT_EQ(rows[11].substr(0, 3), "10,");
  const CliRun median = run({"critvals", "--n-min", "3", "--n-max", "3", "--alphas", "0.5",
                          "--reps", "2000"});
  EXPECT_EQ(median.code, 0);
  EXPECT_EQ(lines(median.out)[2], "n,0.5");
  EXPECT_EQ(run({"critvals", "--reps", "10"}).code, 2);
  EXPECT_EQ(run({"critvals", "--reps", "2.5"}).code, 2);
}

TEST_F(CliTest, TestRainfall) {
  const CliRun r = run({"test", "--input", "bundled:lacc-rainfall-records", "--alpha", "0.05",
                     "--reps", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "n,statistic,alpha,table,critical_value,decision");
  EXPECT_EQ(rows[1].substr(0, 27), "8,358.892,0.05,regenerated,");
  EXPECT_EQ(rows[2], "8,358.892,0.05,reference,2698.59,FailToReject");
  EXPECT_EQ(rows[1].substr(rows[1].size() - 12), "FailToReject");
}

TEST_F(CliTest, TestWithTableFile) {
  const std::string table = path("t.csv");
  ASSERT_EQ(run({"critvals", "--n-min", "4", "--n-max", "4", "--reps", "5000", "--out", table}).code, 0);
  const CliRun equal = run({"test", "--input", write("eq.txt", "1\n2\n3\n4\n"), "--family", kExpFamily,
                         "--table", table});
  ASSERT_EQ(equal.code, 0) << equal.err;
  EXPECT_EQ(lines(equal.out)[1].substr(0, 14), "4,0,0.05,file,");
  EXPECT_NE(lines(equal.out)[1].find("FailToReject"), std::string::npos);
  EXPECT_EQ(run({"test", "--input", write("five.txt", "1\n2\n3\n4\n5\n"), "--family", kExpFamily,
                 "--table", table}).code,
            2);
}

TEST_F(CliTest, TestExplodingSpacingsReject) {
  // Estimates 1, 1e3, 1e6: every ratio is 1000.
  const CliRun r = run({"test", "--input", write("x.txt", "1\n1001\n1001001\n"), "--family", kExpFamily,
                     "--alpha", "0.01", "--reps", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(lines(r.out)[1].find(",Reject"), std::string::npos) << r.out;
}

TEST_F(CliTest, DemoRainfallDirectory) {
  const CliRun r = run({"demo-rainfall", "--reps", "5000", "--out", path("demo")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"records.csv", "estimates.csv", "test.csv", "NOTE.txt", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "demo" / f)) << f;
  }
  EXPECT_EQ(lines(slurp(path("demo/estimates.csv"))).size(), 17u);
  const std::string manifest = slurp(path("demo/manifest.json"));
  EXPECT_NE(manifest.find("\"subcommand\": \"demo-rainfall\""), std::string::npos);
  EXPECT_NE(manifest.find("\"master_seed\": 20150601"), std::string::npos);
}

TEST_F(CliTest, UsageExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"records"}).code, 2);
  EXPECT_EQ(run({"records", "--input", "x", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"records", "--input", "bundled:unknown"}).code, 2);
}

TEST_F(CliTest, ManifestRecordsInputDigest) {
  const std::string in = write("s.txt", "1\n2\n");
  ASSERT_EQ(run({"records", "--input", in, "--out", path("r.csv")}).code, 0);
  const std::string m = slurp(path("r.csv.manifest.json"));
  EXPECT_NE(m.find(recsel::cli::sha256_hex("1\n2\n")), std::string::npos);
  EXPECT_NE(m.find("\"tool_version\""), std::string::npos);
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(recsel::cli::sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, SeededSubcommandsIgnoreThreadCount) {
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "--config", source("configs/table1_scheme2_p05.json"), "--reps", "3000"},
      {"critvals", "--reps", "3000"},
      {"test", "--input", "bundled:lacc-rainfall-records", "--reps", "3000"},
      {"demo-rainfall", "--reps", "3000"}};
  for (const auto& base : commands) {
    std::string reference;
    for (const char* threads : {"1", "4", "8"}) {
      for (int repeat = 0; repeat < 2; ++repeat) {
        auto args = base;
        args.push_back("--threads");
        args.push_back(threads);
        const CliRun r = run(args);
        ASSERT_EQ(r.code, 0) << r.err;
        if (reference.empty()) reference = r.out;
        EXPECT_EQ(r.out, reference) << base[0] << " threads=" << threads;
      }
    }
  }
}
