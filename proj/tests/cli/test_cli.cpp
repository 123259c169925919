#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gaplab/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  gaplab::io::write_file(p, text);
  return p;
}

Run gaplab_cli(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + " \"" GAPLAB_CLI_PATH "\" " + args + " > \"" +
                          out.string() + "\" 2> \"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = gaplab::io::read_file(out);
  r.err = gaplab::io::read_file(err);
  return r;
}

const char* kZeroGame = R"({"block_sizes":[1,2],"P":[[0,0,0],[0,0,0],[0,0,0]],"epsilon":[1,-2,3]})";
const char* kCycleGame = R"({"block_sizes":[1,1,1],"P":[[0,0,0.5],[0.5,0,0],[0,0.5,0]],"epsilon":[1,1,1]})";

}  // namespace

TEST_CASE("solve") {
  auto r = gaplab_cli("solve " + write("zero.json", kZeroGame).string());
  REQUIRE(r.status == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["equilibrium"] == json::array({1.0, -2.0, 3.0}));

  r = gaplab_cli("solve " + write("cycle.json", kCycleGame).string());
  REQUIRE(r.status == 0);
  for (const auto& v : json::parse(r.out)["equilibrium"]) {
    CHECK(v.get<double>() == doctest::Approx(2.0).epsilon(1e-15));
  }

  r = gaplab_cli("solve " + write("broken.json", "{\"P\": [").string());
  CHECK(r.status == 2);
  CHECK(r.err.find("byte") != std::string::npos);

  r = gaplab_cli("solve " + write("badpath.json",
                                  R"({"block_sizes":[1,1],"P":[[0,1],[1]],"epsilon":[1,1]})")
                                .string());
  CHECK(r.status == 2);
  CHECK(r.err.find("$.P[1]") != std::string::npos);

  r = gaplab_cli("solve " + write("nonmono.json",
                                  R"({"block_sizes":[1,1],"P":[[0,1.5],[1.5,0]],"epsilon":[1,1]})")
                                .string());
  CHECK(r.status == 1);
  CHECK(r.out.find("validation") != std::string::npos);

  CHECK(gaplab_cli("solve missing_file.json").status == 2);
  CHECK(gaplab_cli("frobnicate").status == 2);
}

TEST_CASE("gap") {
  auto r = gaplab_cli("gap --format json --closed-form --bound " +
                      write("homog.json", kCycleGame).string());
  REQUIRE(r.status == 0);
  for (const auto& item : json::parse(r.out)) {
    CHECK(item["gap_direct"].get<double>() == 0.0);
    CHECK(item["gap_closed_form"].get<double>() == 0.0);
  }

  r = gaplab_cli("construct shock --delta 0.1 --M 1000 --out-profile " +
                 (scratch() / "p1_profile.json").string() + " --out-certificate " +
                 (scratch() / "p1_cert.json").string());
  REQUIRE(r.status == 0);
  r = gaplab_cli("gap --closed-form --per-pair --bound --format json " +
                 (scratch() / "p1_profile.json").string() + " --certificate " +
                 (scratch() / "p1_cert.json").string());
  REQUIRE(r.status == 0);
  for (const auto& item : json::parse(r.out)) {
    CHECK(item["gap_direct"].get<double>() > 1000.0);
    CHECK(item["closed_form_kind"] == "shock");
    CHECK(item["per_pair_terms"].size() == 2);
    CHECK(item["bound"].get<double>() >= item["gap_direct"].get<double>());
  }

  r = gaplab_cli("gap --format csv " + (scratch() / "p1_profile.json").string());
  CHECK(r.status == 0);
  CHECK(r.out.rfind("instance_id,player,gap_direct,gap_closed,bound,rel_gap\n", 0) == 0);

  r = gaplab_cli("construct graph --delta 0.5 --M 10 --out-profile " +
                 (scratch() / "p2_profile.json").string() + " --out-certificate " +
                 (scratch() / "p2_cert.json").string());
  REQUIRE(r.status == 0);
  r = gaplab_cli("gap --closed-form " + (scratch() / "p2_profile.json").string());
  CHECK(r.status == 2);
  CHECK(r.err.find("direct only") != std::string::npos);
  r = gaplab_cli("gap " + (scratch() / "p2_profile.json").string());
  CHECK(r.status == 0);
  CHECK(r.out.find("gap_direct") != std::string::npos);

  const auto scaled = write("scaled.json", std::string(R"({"base":)") + kCycleGame +
                                               R"(,"conjectures":[{"player":1,"alpha":1.2}]})");
  r = gaplab_cli("gap --format json --closed-form --bound " + scaled.string());
  REQUIRE(r.status == 0);
  for (const auto& item : json::parse(r.out)) CHECK(item["closed_form_kind"] == "graph");
}

TEST_CASE("centrality") {
  auto r = gaplab_cli("centrality " + write("zero_c.json", kZeroGame).string());
  REQUIRE(r.status == 0);
  for (const auto& item : json::parse(r.out)) {
    for (const auto& v : item["bonacich"]) CHECK(v.get<double>() == 1.0);
  }
  r = gaplab_cli("centrality --kind bonacich " + write("cycle_c.json", kCycleGame).string());
  REQUIRE(r.status == 0);
  for (const auto& item : json::parse(r.out)) {
    CHECK(item["bonacich"][0].get<double>() == doctest::Approx(2.0));
  }
  r = gaplab_cli("centrality --kind shock " + (scratch() / "cycle_c.json").string());
  CHECK(r.status == 2);
  r = gaplab_cli("centrality --kind shock --i 0 --j 2 --csv " +
                 (scratch() / "b02.csv").string() + " " + (scratch() / "cycle_c.json").string());
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["kind"] == "shock");
  const std::string csv = gaplab::io::read_file(scratch() / "b02.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  r = gaplab_cli("centrality --kind graph --i 0 --j 1 " + (scratch() / "p2_profile.json").string());
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["kind"] == "graph");
}

TEST_CASE("construct") {
  auto r = gaplab_cli("construct shock --delta 0.1 --M 1000");
  REQUIRE(r.status == 0);
  auto cert = json::parse(r.out);
  CHECK(cert["passed"] == true);
  for (const auto& g : cert["gaps_direct"]) CHECK(g.get<double>() > 1000.0);

  r = gaplab_cli("construct shock --delta 0.2 --M 0.05 --gamma 0.5 --beta 0.9");
  REQUIRE(r.status == 0);
  for (const auto& g : json::parse(r.out)["gaps_direct"]) {
    CHECK(g.get<double>() == doctest::Approx(0.0808163265306122).epsilon(1e-12));
  }

  r = gaplab_cli("construct graph --delta 0.5 --M 1000 --shock-pattern alternating");
  CHECK(r.status == 1);
  CHECK(json::parse(r.out)["passed"] == false);
  CHECK(gaplab_cli("construct graph --delta 2 --M 10").status == 2);
  CHECK(gaplab_cli("construct shock --delta 0.1").status == 2);
}

TEST_CASE("mc") {
  auto r = gaplab_cli("mc --mode shock --delta-s 0 --trials 10 --seed 3");
  REQUIRE(r.status == 0);
  std::size_t rows = 0;
  std::size_t pos = r.out.find('\n') + 1;
  while (pos < r.out.size()) {
    const auto end = r.out.find('\n', pos);
    const std::string line = r.out.substr(pos, end - pos);
    // gap_direct and relative_gap columns are both zero.
    CHECK(line.find(",0,0,1") != std::string::npos);
    ++rows;
    pos = end + 1;
  }
  CHECK(rows == 50);

  const std::string args =
      "mc --mode both --delta-s 0.5 --delta-g 0.2 --trials 100 --seed 7 --out ";
  REQUIRE(gaplab_cli(args + (scratch() / "a.csv").string(), "GAPLAB_THREADS=1").status == 0);
  REQUIRE(gaplab_cli(args + (scratch() / "b.csv").string() + " --threads 4").status == 0);
  CHECK(gaplab::io::read_file(scratch() / "a.csv") ==
        gaplab::io::read_file(scratch() / "b.csv"));

  const auto cfg = write("mc.json", R"({"mode":"graph","delta_g":0.4,"trials":5,"seed":9,"players":3})");
  r = gaplab_cli("mc --config " + cfg.string() + " --trials 2 --summary " +
                 (scratch() / "s.csv").string());
  REQUIRE(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 2 * 3);
  CHECK(r.out.find(",0,0.4,") != std::string::npos);
  CHECK(gaplab::io::read_file(scratch() / "s.csv").rfind("delta_s,delta_g,count", 0) == 0);

  CHECK(gaplab_cli("mc --trials 0").status == 2);
  CHECK(gaplab_cli("mc --mode sideways").status == 2);
  CHECK(gaplab_cli("mc --players 2 --block-sizes 1,1").status == 2);

  r = gaplab_cli("mc --mode shock --delta-s 0.1,0.5,1.0 --trials 50 --seed 12345 --out " +
                 (scratch() / "g.csv").string() + " --summary -");
  REQUIRE(r.status == 0);
  CHECK(r.out == gaplab::io::read_file(fs::path(GAPLAB_TEST_DATA_DIR) / "golden_summary.csv"));
}
