#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtheta/cli.hpp"

using nlohmann::json;

namespace {

json parse_flag_json(const std::string& field, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    throw gtheta::cli::ConfigError(field, "not valid JSON: '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate generalized theta series and check their identities."};

  std::string command;
  std::string job_path;
  std::string params;
  std::string alpha;
  std::string a;
  std::string elements;
  std::string output;
  std::vector<std::string> grid;
  double tol = 0.0;
  bool relative = false;
  std::int64_t level = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command, "eval, derive, quasiperiod, lattice, pde, embed, group or grid");
  app.add_option("--job", job_path, "JSON job file, or - for stdin");
  app.add_option("--params", params, "JSON array of [re, im] pairs, tau_1 first");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance in (0, 1)");
  app.add_flag("--relative", relative, "interpret --tol relative to the term magnitude sum");
  auto* level_opt = app.add_option("--level", level, "characteristic level for embed");
  auto* seed_opt = app.add_option("--seed", seed, "seed for lattice shifts and random group elements");
  app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid", grid, "axis:start:end:count, e.g. im4:0.5:2:16 (repeatable)");
  app.add_option("--a", a, "quasi-period a, a number or [re, im]");
  app.add_option("--alpha", alpha, "derivative orders, e.g. 2,0,0,0");
  app.add_option("--elements", elements, "group elements as a JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gtheta::cli::exit_code::malformed_input;
  }

  json job = json::object();
  try {
    if (!job_path.empty()) {
      if (job_path == "-") {
        std::cin >> job;
      } else {
        std::ifstream in(job_path);
        if (!in) {
          std::cerr << "error: job: cannot open " << job_path << '\n';
          return gtheta::cli::exit_code::malformed_input;
        }
        in >> job;
      }
      if (!job.is_object()) throw gtheta::cli::ConfigError("job", "expected a JSON object");
    }
    if (!command.empty()) job["command"] = command;
    if (!params.empty()) job["params"] = parse_flag_json("params", params);
    if (*tol_opt) job["tol"] = tol;
    if (relative) job["mode"] = "relative";
    if (*level_opt) job["level"] = level;
    if (*seed_opt) job["seed"] = seed;
    if (!output.empty()) job["output"] = output;
    if (!grid.empty()) job["grid"] = grid;
    if (!a.empty()) job["a"] = parse_flag_json("a", a);
    if (!alpha.empty()) job["alpha"] = alpha;
    if (!elements.empty()) job["elements"] = parse_flag_json("elements", elements);
  } catch (const gtheta::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gtheta::cli::exit_code::malformed_input;
  } catch (const json::exception& e) {
    std::cerr << "error: job: " << e.what() << '\n';
    return gtheta::cli::exit_code::malformed_input;
  }
  return gtheta::cli::run_json(job, std::cout, std::cerr);
}
