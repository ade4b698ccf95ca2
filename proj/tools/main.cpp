#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "garbe/error.hpp"
#include "report.hpp"

using namespace garbe;
using namespace garbe::cli;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t input_digest(const std::string& op, const Config& cfg, std::uint64_t seed) {
  std::uint64_t h = fnv1a(op + "\n");
  h = fnv1a(cfg.text(), h);
  h = fnv1a("\nseed=" + std::to_string(seed) + "\n", h);
  for (const auto& path : cfg.inputs()) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    h = fnv1a(path + "\n", h);
    h = fnv1a(ss.str(), h);
  }
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cech cocycle splitting experiments"};
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed_flag;
  bool quiet = false;
  app.add_option("--config", config_path, "experiment configuration (JSON)");
  app.add_option("--out", out_dir, "directory for report.csv, report.json and plots");
  app.add_option("--seed", seed_flag, "seed for fixture generation");
  app.add_flag("--quiet", quiet, "do not print the table");
  app.require_subcommand(0, 1);  // may come from the config's "operation"

  std::string verify_file;
  std::optional<double> verify_tol;
  for (const auto& op : kOperations) {
    auto* sub = app.add_subcommand(op);
    sub->fallthrough();
    if (op == "verify") {
      sub->add_option("cochain", verify_file, "cochain document (overrides the config)");
      sub->add_option("--tol", verify_tol, "tolerance for matrix groups");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::string op = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();

  Config cfg = Config::empty();
  std::uint64_t seed = 1;
  try {
    if (!config_path.empty()) cfg = Config::load(config_path);
    if (cfg.has("operation")) {
      const std::string named = cfg.string("operation", "");
      if (!known_operation(named)) throw InputError("config: unknown operation '" + named + "'");
      if (op.empty()) op = named;
      if (named != op) throw InputError("config is for '" + named + "', not '" + op + "'");
    }
    if (op.empty()) throw InputError("no operation: give a subcommand or an 'operation' in the config");
    if (op == "verify" && (!verify_file.empty() || verify_tol)) {
      json j = cfg.raw();
      if (!verify_file.empty()) j["cochain"] = std::filesystem::absolute(verify_file).string();
      if (verify_tol) j["tol"] = *verify_tol;
      cfg = Config::parse(j.dump(), config_path.empty() ? "." : std::filesystem::absolute(config_path).parent_path().string());
    }
    if (seed_flag) {
      seed = *seed_flag;
    } else if (cfg.has("seed")) {
      if (!cfg.raw()["seed"].is_number_unsigned()) throw InputError("config: seed must be a nonnegative integer");
      seed = cfg.raw()["seed"].get<std::uint64_t>();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Report report;
  Context ctx{cfg, seed, std::mt19937_64(seed), report, std::cerr};
  int code = 0;
  std::string status = "ok";
  const auto start = std::chrono::steady_clock::now();
  try {
    run_operation(op, ctx);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
    status = "config error";
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
    status = "config error";
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure in stage " << e.stage() << ": " << e.what() << "\n";
    code = 3;
    status = "numerical failure";
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    code = 3;
    status = "numerical failure";
  } catch (const BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    code = 4;
    status = "bound violation";
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (code == 0 && report.any_failed()) {
    code = 4;
    status = "bound violation";
    for (const auto& r : report.rows())
      if (r.pass == 0)
        std::cerr << "bound violation: " << r.stage << " " << r.quantity << " = " << format_number(r.value) << ", "
                  << r.bound << "\n";
  }

  if (!out_dir.empty()) {
    json meta = {{"operation", op},
                 {"seed", seed},
                 {"input_digest", hex64(input_digest(op, cfg, seed))},
                 {"status", status},
                 {"exit_code", code},
                 {"wall_time_s", wall}};
    try {
      report.write(out_dir, meta);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return code == 0 ? 2 : code;
    }
  } else if (!quiet) {
    std::cout << report.csv();
  }
  return code;
}
