#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "lienard/cli.hpp"
#include "lienard/errors.hpp"
#include "lienard/io.hpp"
#include "test_support.hpp"

using namespace lienard;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lienard_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_config(const cli::RunConfig& c) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

cli::RunConfig config(cli::Command cmd, const std::string& builtin, Params params,
                      const fs::path& out) {
  cli::RunConfig c;
  c.command = cmd;
  c.builtin = builtin;
  c.params = std::move(params);
  c.out_dir = out;
  c.golden_dir = LIENARD_GOLDEN_DIR;
  return c;
}

int run_argv(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return cli::main_entry(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

}  // namespace

TEST_CASE("parse_range") {
  const Interval r = cli::parse_range("0.5:2.25");
  CHECK(r.lo == 0.5);
  CHECK(r.hi == 2.25);
  CHECK_THROWS_AS(cli::parse_range("1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_range("2:1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_range("a:b"), ConfigError);
  CHECK_THROWS_AS(cli::parse_range("1:2:3"), ConfigError);
}

TEST_CASE("render_table") {
  const std::string one = render_table({{0.1, 2.00117, 2.0000586437}});
  int data_lines = 0;
  std::istringstream in(one);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.find("0.1 ") == 0) ++data_lines;
  }
  CHECK(data_lines == 1);
  CHECK(one.find("2.000058644") != std::string::npos);  // 10 significant digits
  CHECK_THROWS_AS(render_table({}), ConfigError);

  std::vector<TableRow> rows;
  for (int i = 14; i >= 1; --i) rows.push_back({0.1 * i, 2.0 + 0.01 * i, 2.0 + 0.001 * i});
  const std::string a = render_table(rows);
  CHECK(a == render_table(rows));
  // ascending mu
  CHECK(a.find("0.1 ") < a.find("1.4 "));
}

TEST_CASE("write_atomic and number round trips") {
  const fs::path dir = fresh_dir("atomic");
  write_atomic(dir / "a.txt", "first");
  write_atomic(dir / "a.txt", "second");
  CHECK(slurp(dir / "a.txt") == "second");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
  CHECK(number_from(number(INFINITY)) == INFINITY);
  CHECK(std::isnan(number_from(number(NAN))));
  CHECK(number_from(number(0.1)) == 0.1);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("model file round trip") {
  const LienardSystem s = builtin("three_cycle");
  const LienardSystem t = system_from_json(system_to_json(s));
  for (double x : {0.01, 0.1, 0.2, 0.3, 0.5}) CHECK(t.F().value(x) == s.F().value(x));
  CHECK(t.d() == s.d());
  const fs::path dir = fresh_dir("model");
  write_atomic(dir / "m.json", system_to_json(builtin("vdp_bounded", {{"mu", 1.0}})).dump(2));
  const LienardSystem u = load_system_file(dir / "m.json");
  CHECK(u.F().value(5.0) == builtin("vdp_bounded", {{"mu", 1.0}}).F().value(5.0));
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"name":"x","F":{"segments":[]}})")), ModelError);
}

TEST_CASE("cycles command on van der Pol") {
  const fs::path dir = fresh_dir("cycles");
  const Outcome o = run_config(config(cli::Command::cycles, "vdp", {{"mu", 1.0}}, dir));
  REQUIRE(o.code == cli::kOk);
  const Json j = read_json(dir / "cycles.json");
  CHECK(keys(j) == std::vector<std::string>{"model", "cycles", "scan", "potential_roots",
                                            "potential_flagged"});
  REQUIRE(j.at("cycles").size() == 1);
  const Json& c = j.at("cycles")[0];
  CHECK(c.at("stability") == "stable");
  CHECK(std::abs(c.at("y_plus0").get<double>() - 2.1727) < 1e-4);
  CHECK(slurp(dir / "half_return.csv").rfind("y0,D\n", 0) == 0);
  CHECK(slurp(dir / "potential.csv").rfind("alpha,V\n", 0) == 0);
}

TEST_CASE("check and cycles on quintic k = 3.65") {
  const fs::path dir = fresh_dir("check");
  const Outcome o = run_config(config(cli::Command::check, "quintic", {{"k", 3.65}}, dir));
  REQUIRE(o.code == cli::kOk);
  const Json j = read_json(dir / "check.json");
  CHECK(j.at("predicted_N").is_null());
  CHECK(j.at("detected_cycles") == 0);
  CHECK(j.at("report").contains("hypotheses"));
  CHECK(fs::exists(dir / "check.txt"));
  CHECK(o.out.find("predicted_N: none") != std::string::npos);
  const Outcome c = run_config(config(cli::Command::cycles, "quintic", {{"k", 3.65}}, dir));
  REQUIRE(c.code == cli::kOk);
  CHECK(read_json(dir / "cycles.json").at("cycles").empty());
}

TEST_CASE("simulate, alphabar and phi artifacts") {
  const fs::path dir = fresh_dir("artifacts");
  cli::RunConfig sim = config(cli::Command::simulate, "vdp", {{"mu", 1.0}}, dir);
  sim.y0 = 2.1727135;
  REQUIRE(run_config(sim).code == cli::kOk);
  CHECK(slurp(dir / "trajectory.csv").rfind("t,x,y\n", 0) == 0);
  CHECK(slurp(dir / "events.csv").rfind("kind,t,x,y\n", 0) == 0);
  CHECK(read_json(dir / "trajectory.json").at("status") == "event_reached");

  cli::RunConfig ab = config(cli::Command::alphabar, "vdp", {{"mu", 1.0}}, dir);
  REQUIRE(run_config(ab).code == cli::kOk);
  const Json a = read_json(dir / "alphabar.json");
  REQUIRE(a.at("alpha_bars").size() == 1);
  CHECK(std::abs(a.at("alpha_bars")[0].at("alpha_bar").get<double>() - 2.032773726195946) < 1e-8);
  for (const char* k : {"interval_index", "alpha_prime", "alpha_double_prime", "alpha_bar", "y_plus0"}) {
    CHECK(a.at("alpha_bars")[0].contains(k));
  }

  cli::RunConfig ph = config(cli::Command::phi, "quintic", {{"k", 3.5}}, dir);
  REQUIRE(run_config(ph).code == cli::kOk);
  const Json p = read_json(dir / "phi.json");
  CHECK(p.at("phi").at("roots").size() == 2);
  CHECK(slurp(dir / "phi.csv").rfind("r,phi\n", 0) == 0);

  cli::RunConfig only_csv = config(cli::Command::phi, "vdp", {{"mu", 1.0}}, fresh_dir("csv_only"));
  only_csv.format = cli::Format::csv;
  REQUIRE(run_config(only_csv).code == cli::kOk);
  CHECK(fs::exists(only_csv.out_dir / "phi.csv"));
  CHECK_FALSE(fs::exists(only_csv.out_dir / "phi.json"));
}

TEST_CASE("exit codes") {
  const fs::path dir = fresh_dir("exit");
  CHECK(run_config(config(cli::Command::cycles, "nope", {}, dir)).code == cli::kModelError);
  CHECK(run_config(config(cli::Command::cycles, "quintic", {}, dir)).code == cli::kModelError);
  cli::RunConfig bad_tol = config(cli::Command::cycles, "vdp", {{"mu", 1.0}}, dir);
  bad_tol.ctrl.rtol = -1.0;
  CHECK(run_config(bad_tol).code == cli::kUsage);
  cli::RunConfig no_root = config(cli::Command::alphabar, "vdp", {{"mu", 1.0}}, dir);
  no_root.y0 = 2.0;
  no_root.alpha_range = Interval{0.1, 0.2};
  CHECK(run_config(no_root).code == cli::kNumericalError);

  CHECK(run_argv({"lienard_lab", "cycles", "--no-such-flag"}) == cli::kUsage);
  CHECK(run_argv({"lienard_lab"}) == cli::kUsage);
  CHECK(run_argv({"lienard_lab", "cycles", "--builtin", "vdp", "--mu", "1", "--alpha-range", "3",
                  "--out", dir.string()}) == cli::kUsage);
  CHECK(run_argv({"lienard_lab", "cycles", "--builtin", "vdp", "--format", "xml"}) == cli::kUsage);

  // A tampered golden file is a golden mismatch.
  const fs::path golden = fresh_dir("golden");
  Json g = read_json(fs::path(LIENARD_GOLDEN_DIR) / "examples.json");
  Json first = g.at("examples")[0];
  first["expect"]["cycle_count"]["reference"] = 1;
  g["examples"] = Json::array({first});
  write_atomic(golden / "examples.json", g.dump(2));
  cli::RunConfig rep = config(cli::Command::reproduce, "", {}, dir);
  rep.target = "examples";
  rep.golden_dir = golden;
  CHECK(run_config(rep).code == cli::kGoldenMismatch);
}

TEST_CASE("reproduce examples matches the committed golden file") {
  const fs::path dir = fresh_dir("reproduce");
  cli::RunConfig rep = config(cli::Command::reproduce, "", {}, dir);
  rep.target = "examples";
  const Outcome o = run_config(rep);
  CHECK(o.code == cli::kOk);
  const Json j = read_json(dir / "examples.json");
  CHECK(j.at("pass") == true);
  CHECK(o.out.find("FAIL") == std::string::npos);
}

TEST_CASE("property: artifacts are byte-identical across runs") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const fs::path& d : {a, b}) {
    REQUIRE(run_config(config(cli::Command::cycles, "three_cycle", {}, d)).code == cli::kOk);
    REQUIRE(run_config(config(cli::Command::check, "three_cycle", {}, d)).code == cli::kOk);
  }
  for (const char* f : {"cycles.json", "half_return.csv", "potential.csv", "check.json", "check.csv",
                        "check.txt"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}
