#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "symred/cli.hpp"
#include "symred/report.hpp"

using namespace symred;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "symred");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& text) {
  const std::string path = ::testing::TempDir() + "symred_cli_test.toml";
  std::ofstream(path) << text;
  return path;
}

const std::string kDir = SYMRED_CASES_DIR;

}  // namespace

TEST(Cli, ReduceByTheGaussianGeneratorShowsTheFlux) {
  const auto r = cli({"reduce", "--case", "decomposable_flat_1p2", "--by", "X2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("w/(2*tau)"), std::string::npos) << r.out;
}

TEST(Cli, ClassifyFrwBySecondGeneratorAsJson) {
  const auto r = cli({"classify", "--case", "gradient_hv_flat_frw", "--by", "H2", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["reductions"].size(), 1u);
  const auto& t2 = doc["reductions"][0]["type2_hidden"];
  ASSERT_EQ(t2.size(), 3u);
  EXPECT_EQ(t2[0]["generator"], "phi*x*d_phi + ln(phi)*d_x - x*w*d_w");
  EXPECT_EQ(doc["reductions"][0]["type1_hidden"], json::array({"X_t"}));
}

TEST(Cli, CollineationsOfTheShippedPetrovDFile) {
  const auto r = cli({"collineations", kDir + "/petrov_D.toml", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  int kv = 0, hv = 0;
  for (const auto& v : doc["collineation_search"]["vectors"]) {
    kv += v["class"] == "KV";
    if (v["class"] == "HV") {
      ++hv;
      EXPECT_EQ(v["psi"], "1");
    }
  }
  EXPECT_EQ(kv, 4);
  EXPECT_EQ(hv, 1);
}

TEST(Cli, CommutatorsAndHeatSymmetries) {
  auto r = cli({"commutators", "--case", "petrov_III"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[X1, X4] = X1"), std::string::npos) << r.out;
  r = cli({"heat-symmetries", "--case", "decomposable_flat_1p2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("X2 = t*d_x - x/2*u*d_u"), std::string::npos) << r.out;
}

TEST(Cli, LaplaceSymmetriesOfAFlatPlane) {
  const std::string f = temp_file(
      "[space]\nname = \"plane\"\ncoords = [\"x\", \"y\"]\n[metric]\ndiag = [\"1\", \"1\"]\n");
  const auto r = cli({"laplace-symmetries", f, "--ansatz-degree", "2", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  // Conformal algebra of the plane up to degree 2: 6 vectors, plus u*d_u and b.
  EXPECT_EQ(json::parse(r.out)["laplace_symmetries"].size(), 8u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"reduce", "--case", "petrov_D"}).code, 1);                  // no --by
  EXPECT_EQ(cli({"validate", "--case", "nope"}).code, 1);
  EXPECT_EQ(cli({"validate"}).code, 1);                                      // no input
  EXPECT_EQ(cli({"classify", "--case", "petrov_D", "--by", "Q"}).code, 1);   // no such generator
  EXPECT_EQ(cli({"validate", "--case", "petrov_D", "--tol", "-1"}).code, 1);
  EXPECT_EQ(cli({"validate", "--case", "petrov_D"}).code, 0);
  EXPECT_EQ(cli({"--help"}).code, 0);

  const std::string wrong = temp_file(
      "[space]\nname = \"w\"\ncoords = [\"x\", \"y\"]\n[metric]\ndiag = [\"1\", \"1\"]\n"
      "[vector.T]\ncomponents = [\"1\", \"0\"]\nclass = \"HV\"\npsi = \"1\"\n");
  const auto r = cli({"validate", wrong});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("FAIL vector T is HV"), std::string::npos) << r.out;

  const std::string broken = temp_file("[space]\nname = \"b\"\ncoords = [\"x\"\n");
  const auto e = cli({"validate", broken, "--json"});
  EXPECT_EQ(e.code, 1);
  EXPECT_EQ(json::parse(e.out)["error"]["kind"], "parse");
}

TEST(Cli, SeedAndToleranceAreRecorded) {
  const auto r = cli({"heat-symmetries", "--case", "petrov_N", "--seed", "42", "--tol", "1e-11",
                      "--json"});
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["numeric"]["seed"], 42);
  EXPECT_EQ(doc["numeric"]["tol"], 1e-11);
  EXPECT_EQ(cli({"heat-symmetries", "--case", "petrov_N", "--seed", "42", "--tol", "1e-11",
                 "--json"}).out,
            r.out);
}
