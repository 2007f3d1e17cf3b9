#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LAMBDAHULL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lambdahull_cli_" + name);
}

}  // namespace

TEST_CASE("cli gen and measure") {
  const auto lens = temp_path("lens.json");
  Run g = run("--dim 2 --lambda 1 --out " + lens.string() + " gen --kind lens --inradius 0.5");
  REQUIRE(g.code == 0);
  Run m = run("measure --body " + lens.string() + " --samples 100000");
  REQUIRE(m.code == 0);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j["V1"].get<double>() == doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-6));
  CHECK(j["r"].get<double>() == doctest::Approx(0.5));
  CHECK(j["R"].get<double>() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-6));

  Run d = run("dual --body " + lens.string());
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["kind"] == "spindle");

  const auto poly = temp_path("poly.json");
  REQUIRE(run("--dim 3 --seed 4 --out " + poly.string() + " gen --kind random --inradius 0.4 --contacts 4").code == 0);
  Run dp = run("--samples 20000 dual --body " + poly.string());
  REQUIRE(dp.code == 0);
  CHECK(nlohmann::json::parse(dp.out)["R"].get<double>() == doctest::Approx(0.6).epsilon(1e-5));
  std::filesystem::remove(lens);
  std::filesystem::remove(poly);
}

TEST_CASE("cli verify") {
  Run a = run("verify --theorem a --dim 2 --lambda 1 --inradius 0.3 --trials 100 --seed 7 --samples 20000");
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["records"].size() == 100);
  CHECK(j["summary"]["fail"] == 0);

  Run d = run("verify --theorem duality --trials 4");
  CHECK(d.code == 0);

  Run csv = run("--format csv verify --theorem lemma-m --trials 2 --samples 20000");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("theorem,trial,seed", 0) == 0);

  Run p = run("profile");
  CHECK(p.code == 0);
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify --theorem z").code == 2);
  CHECK(run("--format xml profile").code == 2);
  CHECK(run("measure --body /nonexistent.json").code == 2);
  CHECK(run("verify --theorem b --radius 3").code == 2);
  CHECK(run("--help").code == 0);
}
