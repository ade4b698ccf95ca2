#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("garbe_cli_" + std::to_string(::getpid()));
  Scratch() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

fs::path scratch() {
  static Scratch s;
  return s.dir;
}

Run run(const std::string& args) {
  static int counter = 0;
  fs::path o = scratch() / ("stdout" + std::to_string(counter));
  fs::path e = scratch() / ("stderr" + std::to_string(counter++));
  std::string cmd = std::string(GARBE_CLI) + " " + args + " >" + o.string() + " 2>" + e.string();
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

std::string data(const std::string& name) { return std::string(GARBE_TEST_DATA) + "/" + name; }
std::string config(const std::string& name) { return "--config " + data("configs/" + name); }

fs::path write_config(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// Value column of the first CSV row with this stage and quantity.
double csv_value(const std::string& csv, const std::string& stage, const std::string& quantity) {
  std::istringstream in(csv);
  std::string line;
  const std::string key = stage + "," + quantity + ",";
  while (std::getline(in, line))
    if (line.rfind(key, 0) == 0) return std::stod(line.substr(key.size()));
  FAIL("no row " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("verify: identity, broken diagonal, coboundary fixture") {
  CHECK(run("verify " + data("cochain_identity.json")).code == 0);

  Run bad = run("verify " + data("cochain_bad_diagonal.json"));
  CHECK(bad.code == 4);
  CHECK(bad.err.find("f_ii != 1 at (U2,U2,U2)") != std::string::npos);
  CHECK(bad.err.find("p4") != std::string::npos);

  CHECK(run("verify " + data("cochain_coboundary.json")).code == 0);
  CHECK(run(config("verify_coboundary.json")).code == 0);
  CHECK(run("verify " + data("no_such_file.json")).code == 2);
}

TEST_CASE("config errors exit 2 before any computation") {
  fs::path out = scratch() / "never";
  auto unknown = write_config("unknown_op.json", R"({"operation": "split-everything"})");
  Run r = run("--config " + unknown.string() + " --out " + out.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown operation") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  auto mismatch = write_config("mismatch.json", R"({"operation": "dbar"})");
  CHECK(run("--config " + mismatch.string() + " runge").code == 2);

  auto key = write_config("bad_key.json", R"({"operation": "dbar", "grid": [32]})");
  Run k = run("--config " + key.string());
  CHECK(k.code == 2);
  CHECK(k.err.find("'grid'") != std::string::npos);

  CHECK(run("--config " + write_config("not_json.json", "{").string() + " dbar").code == 2);
  CHECK(run("dbar --frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("dbar: zero density and the two-resolution ratio") {
  Run zero = run(config("dbar_zero.json"));
  CHECK(zero.code == 0);
  CHECK(csv_value(zero.out, "grid 32", "residual_max") == 0.0);

  Run two = run(config("dbar_two_grids.json"));
  CHECK(two.code == 0);
  double ratio = csv_value(two.out, "ratio 32/64", "l2_ratio");
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
}

TEST_CASE("split-pair-closed on exp(z)") {
  Run r = run(config("pair_closed_scalar.json"));
  CHECK(r.code == 0);
  CHECK(csv_value(r.out, "pair", "residual") <= 1e-3);
  CHECK(csv_value(r.out, "pair", "spacing") == 1.0 / 64);
}

TEST_CASE("failures map to exit codes 3 and 4") {
  // f(z0) = 0 at the centre of [−1, 1]²
  auto singular = write_config("singular.json", R"({"operation": "entire-approx",
      "f": {"kind": "polynomial", "coeffs": [0, 1]}, "rectangle": [-1, 1, -1, 1], "cells": 8})");
  Run s = run("--config " + singular.string());
  CHECK(s.code == 3);
  CHECK(s.err.find("entire_approx/normalize") != std::string::npos);

  auto strict = write_config("strict.json", R"({"operation": "split-mul",
      "f": {"kind": "constant", "value": 1.1}, "eps_max": 0.01})");
  CHECK(run("--config " + strict.string()).code == 4);

  // A failed row exits 4 and still writes the report.
  auto ratio = write_config("ratio.json", R"({"operation": "dbar", "grids": [16, 32], "ratio_range": [0.9, 1.0]})");
  fs::path out = scratch() / "ratio_out";
  CHECK(run("--config " + ratio.string() + " --out " + out.string()).code == 4);
  CHECK(slurp(out / "report.csv").find(",in [0.90000000000000002 1],0\n") != std::string::npos);
  auto empty_a = write_config("empty_a.json", R"({"operation": "urysohn",
      "cloud": {"coordinates": [[0, 0], [1, 0]]}, "A": [], "B": [1]})");
  CHECK(run("--config " + empty_a.string()).code == 2);
}

TEST_CASE("--out writes the table, the report and the plots") {
  fs::path out = scratch() / "mul";
  Run r = run(config("split_mul_noncommuting.json") + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out / "report.csv").rfind("stage,quantity,value,bound,pass\n", 0) == 0);
  std::string json = slurp(out / "report.json");
  CHECK(json.find("\"input_digest\"") != std::string::npos);
  CHECK(json.find("K |y_{n+1}| <= eps^n |x_1|") != std::string::npos);
  CHECK(slurp(out / "graves_defects.svg").find("<polyline") != std::string::npos);

  fs::path u = scratch() / "ury";
  CHECK(run(config("urysohn.json") + " --out " + u.string()).code == 0);
  CHECK(slurp(u / "values.csv").rfind("point,chi\n", 0) == 0);

  CHECK(run(config("dbar_zero.json") + " --quiet").out.empty());
}

TEST_CASE("every shipped config passes and reruns byte for byte") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(data("configs"))) {
    const std::string name = entry.path().stem().string();
    fs::path a = scratch() / ("a_" + name), b = scratch() / ("b_" + name);
    Run first = run("--config " + entry.path().string() + " --out " + a.string());
    Run second = run("--config " + entry.path().string() + " --out " + b.string());
    INFO(name << ": " << first.err);
    CHECK(first.code == 0);
    CHECK(second.code == 0);
    CHECK(slurp(a / "report.csv") == slurp(b / "report.csv"));
    ++seen;
  }
  CHECK(seen >= 15);
}

TEST_CASE("the seed drives fixture generation") {
  fs::path a = scratch() / "seed_a", b = scratch() / "seed_b";
  CHECK(run(config("urysohn.json") + " --seed 8 --out " + a.string()).code == 0);
  CHECK(run(config("urysohn.json") + " --seed 9 --out " + b.string()).code == 0);
  CHECK(slurp(a / "values.csv") != slurp(b / "values.csv"));
  CHECK(slurp(a / "report.json").find("\"seed\": 8") != std::string::npos);
}
