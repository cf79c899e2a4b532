#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "topent/persistence.hpp"
#include "topent/separate.hpp"

namespace topent {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("topent_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  std::string barcode_file(const std::string& name, const std::string& points,
                           std::vector<std::string> extra = {}) const {
    std::vector<std::string> args{"barcode", points, "--out", path(name)};
    args.insert(args.end(), extra.begin(), extra.end());
    EXPECT_EQ(run(args).code, 0);
    return path(name);
  }

  fs::path dir_;
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST_F(Cli, SampleCircleAndTorus) {
  const Outcome c = run({"sample", "circle", "--n", "30", "--radius", "1", "--seed", "7"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(lines(c.out), 30u);
  EXPECT_EQ(run({"sample", "circle", "--n", "30", "--radius", "1", "--seed", "7"}).out, c.out);

  ASSERT_EQ(run({"sample", "torus", "--n", "100", "--R", "2", "--rho", "0.5", "--seed", "7",
                 "--out", path("t.csv")}).code, 0);
  const std::string torus = slurp(path("t.csv"));
  EXPECT_EQ(lines(torus), 100u);
  std::istringstream in(torus);
  const PointCloud cloud = load_points(in);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    const double ring = std::hypot(p[0], p[1]) - 2.0;
    EXPECT_NEAR(ring * ring + p[2] * p[2], 0.25, 1e-9);
  }
}

TEST_F(Cli, BarcodeExamples) {
  const std::string line = write("line.csv", "0\n1\n3\n");
  const Outcome b = run({"barcode", line, "--dim-cap", "1"});
  ASSERT_EQ(b.code, 0) << b.err;
  std::istringstream in(b.out);
  const Barcode bars = read_barcode_json(in);
  std::vector<double> lengths;
  for (const Bar& bar : bars.bars()) lengths.push_back(bar.length());
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<double>{1, 2, 2}));

  ASSERT_EQ(run({"sample", "circle", "--n", "30", "--out", path("gon.csv")}).code, 0);
  const Barcode gon = load_barcode_file(barcode_file("gon.json", path("gon.csv")));
  EXPECT_EQ(restrict_dim(gon, 0).size(), 30u);
  EXPECT_EQ(restrict_dim(gon, 1).size(), 1u);

  const Barcode cut =
      load_barcode_file(barcode_file("cut.json", path("gon.csv"), {"--t-max", "0.5", "--dim-cap", "1"}));
  EXPECT_EQ(cut.size(), 30u);
  EXPECT_EQ(cut.t_max(), 0.5);

  const Outcome text = run({"barcode", line, "--format", "text"});
  EXPECT_EQ(text.out, "0 0 1\n0 0 2\n0 0 2 essential\n");
}

TEST_F(Cli, BarcodeErrors) {
  ASSERT_EQ(run({"sample", "circle", "--n", "30", "--out", path("gon.csv")}).code, 0);
  const Outcome budget = run({"barcode", path("gon.csv"), "--budget", "100"});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("100"), std::string::npos);
  EXPECT_EQ(run({"barcode", path("gon.csv"), "--dim-cap", "0"}).code, 2);
  EXPECT_EQ(run({"barcode", path("missing.csv")}).code, 2);
  EXPECT_EQ(run({"barcode", write("dup.csv", "0,0\n0,0\n")}).code, 2);
  EXPECT_EQ(run({"barcode", write("rag.csv", "0,0\n1\n")}).code, 2);
  EXPECT_EQ(run({"barcode", path("gon.csv"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"barcode", path("gon.csv"), "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"barcode", "--help"}).code, 0);
}

TEST_F(Cli, Entropy) {
  std::string uniform = R"({"t_max": 2, "scale_convention": "diameter", "bars": [)";
  for (int k = 0; k < 8; ++k) {
    uniform += std::string(k ? ", " : "") + R"({"dim": )" + std::to_string(k % 2) +
               R"(, "birth": 0.5, "death": 1.5, "essential": false})";
  }
  uniform += "]}";
  const std::string file = write("u.json", uniform);
  const Outcome text = run({"entropy", file});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NEAR(std::stod(text.out), std::log(8.0), 1e-12);

  const Outcome json = run({"entropy", file, "--dims", "0", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  const auto rec = nlohmann::json::parse(json.out);
  EXPECT_EQ(rec.at("n"), 4);
  EXPECT_NEAR(rec.at("entropy").get<double>(), std::log(4.0), 1e-12);
  for (const char* key : {"T", "r", "alpha", "relative_entropy"}) EXPECT_TRUE(rec.contains(key));
  EXPECT_EQ(rec.at("relative_entropy").get<double>(), 1.0);

  EXPECT_EQ(run({"entropy", file, "--dims", "3"}).code, 2);
  EXPECT_EQ(run({"entropy", write("bad.json", "{")}).code, 2);
}

TEST_F(Cli, SeparateThirtyGon) {
  ASSERT_EQ(run({"sample", "circle", "--n", "30", "--out", path("gon.csv")}).code, 0);
  const std::string bars = barcode_file("gon.json", path("gon.csv"));

  const Outcome json = run({"separate", bars, "--format", "json"});
  ASSERT_EQ(json.code, 0) << json.err;
  std::istringstream in(json.out);
  const SeparationResult r = parse_trace_json(in);
  ASSERT_EQ(r.feature_bars.size(), 2u);
  EXPECT_TRUE(r.feature_bars[0].essential);
  EXPECT_EQ(r.feature_bars[1].dim, 1);
  EXPECT_EQ(render_trace(r, TraceFormat::kJson), json.out);

  const Outcome h0 = run({"separate", bars, "--dims", "0", "--format", "json"});
  std::istringstream in0(h0.out);
  EXPECT_EQ(parse_trace_json(in0).feature_bars.size(), 1u);

  const Outcome csv = run({"separate", bars, "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, 7), "H,1,31,");
  EXPECT_EQ(run({"separate", bars, "--dims", "1"}).code, 2);
}

TEST_F(Cli, Bottleneck) {
  const std::string a = write("a.json",
                              R"({"t_max": 2, "scale_convention": "diameter", "bars": [{"dim": 0, "birth": 0, "death": 2, "essential": true}]})");
  const std::string b = write("b.json",
                              R"({"t_max": 2, "scale_convention": "diameter", "bars": [{"dim": 0, "birth": 0, "death": 1.5, "essential": false}]})");
  EXPECT_EQ(run({"bottleneck", a, a, "--dims", "0"}).out, "0\n");
  EXPECT_EQ(run({"bottleneck", a, b, "--dims", "0"}).out, "0.5\n");
  EXPECT_EQ(run({"bottleneck", a, b, "--dims", "1"}).out, "0\n");
  EXPECT_EQ(run({"bottleneck", a, b}).code, 1);
  const auto j = nlohmann::json::parse(run({"bottleneck", a, b, "--dims", "0", "--format", "json"}).out);
  EXPECT_EQ(j.at("bottleneck").get<double>(), 0.5);
}

TEST_F(Cli, Gh) {
  const std::string v = write("v.csv", "0\n1\n2\n");
  const std::string w = write("w.csv", "0\n1\n");
  EXPECT_EQ(run({"gh", v, w}).out, "1\n");
  EXPECT_EQ(run({"gh", w, v}).code, 2);
  const auto j = nlohmann::json::parse(run({"gh", v, v, "--format", "json"}).out);
  EXPECT_EQ(j.at("gh_distortion").get<double>(), 0.0);
}

TEST_F(Cli, Stability) {
  const std::string v = write("v.csv", "0,0\n1,0\n0,1\n1.1,1.3\n0.4,2\n2,0.5\n1.7,1.9\n");
  const Outcome text = run({"stability", v, "--deltas", "0.1,0.001,0.01", "--seed", "3"});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NE(text.out.find("all stability inequalities hold"), std::string::npos);

  const Outcome json = run({"stability", v, "--deltas", "0.1,0.001,0.01", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  const auto arr = nlohmann::json::parse(json.out);
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_EQ(arr[0].at("delta").get<double>(), 0.001);
  EXPECT_TRUE(arr[2].at("exact_gh").get<bool>());

  EXPECT_EQ(run({"stability", v, "--deltas", "0.1,x"}).code, 2);
}

TEST_F(Cli, Deterministic) {
  ASSERT_EQ(run({"sample", "torus", "--n", "40", "--seed", "5", "--out", path("t.csv")}).code, 0);
  const std::vector<std::vector<std::string>> commands{
      {"sample", "circle", "--n", "20", "--jitter", "0.05", "--seed", "4"},
      {"barcode", path("t.csv")},
      {"barcode", path("t.csv"), "--format", "text"},
      {"stability", path("t.csv"), "--deltas", "0.01"},
  };
  for (const auto& cmd : commands) {
    const Outcome first = run(cmd);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(run(cmd).out, first.out);
  }
  const std::string bars = barcode_file("t.json", path("t.csv"));
  for (const char* fmt : {"text", "json", "csv"}) {
    EXPECT_EQ(run({"separate", bars, "--format", fmt}).out,
              run({"separate", bars, "--format", fmt}).out);
  }
}

}  // namespace
}  // namespace topent
