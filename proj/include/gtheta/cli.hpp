#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "gtheta/heisenberg.hpp"
#include "gtheta/parameters.hpp"

namespace gtheta::cli {

enum class Command { eval, derive, quasiperiod, lattice, pde, embed, group, grid };
enum class OutputFormat { json, csv };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int malformed_input = 1;
inline constexpr int domain_error = 2;
inline constexpr int check_failed = 3;
}  // namespace exit_code

// One swept coordinate: the real or imaginary part of tau_index.
struct GridAxis {
  bool imaginary = false;
  std::size_t index = 1;
  double start = 0.0;
  double end = 0.0;
  std::int64_t count = 1;

  std::string name() const;
  double at(std::int64_t i) const;
};

// "re1:0:1:11" or "im4:0.5:2:16".
GridAxis parse_grid_axis(const std::string& text);

struct JobConfig {
  Command command = Command::eval;
  // Raw parameters; validated when the job runs so that domain errors map to exit 2.
  std::vector<cplx> params;
  double tol = 1e-12;
  bool relative = false;
  std::int64_t level = 2;
  std::uint64_t seed = 0;
  OutputFormat output = OutputFormat::json;
  std::vector<GridAxis> grid;
  cplx a{1.0, 0.0};
  std::vector<unsigned> alpha;
  std::vector<GroupElement> elements;
};

// Malformed job input; field names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

Command parse_command(const std::string& name);
std::string to_string(Command c);

// Builds a config from a job object {"command", "params", "tol", ...}.
JobConfig parse_job(const nlohmann::json& job);

// Runs a validated config, writing results to out and diagnostics to err.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

// Parses a job object and runs it; malformed input exits 1.
int run_json(const nlohmann::json& job, std::ostream& out, std::ostream& err);

// Reads one JSON job object from in and runs it.
int run(std::istream& in, std::ostream& out, std::ostream& err);

// Rows of a one- or two-axis sweep of theta_eval, row-major (first axis outer).
void emit_grid(const JobConfig& config, std::ostream& out);

}  // namespace gtheta::cli
