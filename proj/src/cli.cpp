#include "gtheta/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "gtheta/characteristics.hpp"
#include "gtheta/pde.hpp"
#include "gtheta/phase.hpp"
#include "gtheta/series.hpp"

namespace gtheta::cli {

using nlohmann::json;

namespace {

struct Check {
  std::string name;
  double relative_error;
  bool pass;
};

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) out.push_back({{"name", c.name}, {"relative_error", c.relative_error}, {"pass", c.pass}});
  return out;
}

json to_json(const GroupElement& g) {
  json b = json::array();
  for (const cplx& x : g.b()) b.push_back(to_json(x));
  return {{"phase", to_json(g.phase())}, {"a", to_json(g.a())}, {"b", b}};
}

double rel_err(cplx got, cplx want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

std::string format(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

cplx parse_complex(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(field, "expected a number or a [re, im] pair");
}

std::vector<cplx> parse_complex_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_complex(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<unsigned> parse_alpha(const json& v) {
  std::vector<unsigned> out;
  auto push = [&](long long x, std::size_t i) {
    if (x < 0 || x > 64) throw ConfigError("alpha[" + std::to_string(i) + "]", "orders must be between 0 and 64");
    out.push_back(static_cast<unsigned>(x));
  };
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      long long x = 0;
      try {
        x = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw ConfigError("alpha", "expected a comma-separated list of integers");
      }
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw ConfigError("alpha", "expected a comma-separated list of integers");
      push(x, i++);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) throw ConfigError("alpha[" + std::to_string(i) + "]", "expected an integer");
      push(v[i].get<long long>(), i);
    }
  } else {
    throw ConfigError("alpha", "expected a comma-separated list or an array of integers");
  }
  return out;
}

GroupElement parse_element(const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "expected an object with phase, a and b");
  for (const auto& [key, _] : v.items())
    if (key != "phase" && key != "a" && key != "b") throw ConfigError(field + "." + key, "unknown field");
  if (!v.contains("b")) throw ConfigError(field + ".b", "required");
  const cplx phase = v.contains("phase") ? parse_complex(v["phase"], field + ".phase") : cplx{};
  const cplx a = v.contains("a") ? parse_complex(v["a"], field + ".a") : cplx{};
  std::vector<cplx> b = parse_complex_list(v["b"], field + ".b");
  if (b.empty()) throw ConfigError(field + ".b", "must not be empty");
  return {phase, a, std::move(b)};
}

EvalOptions eval_options(const JobConfig& c) { return c.relative ? relative_tol(c.tol) : absolute_tol(c.tol); }

json series_fields(const EvalResult& r) {
  return {{"value", to_json(r.value)},
          {"tail_bound", r.tail_bound},
          {"n_range", json::array({r.n_min, r.n_max})},
          {"terms", r.terms_summed}};
}

ParameterVector require_params(const JobConfig& c) {
  if (c.params.empty()) throw ConfigError("params", "required for " + to_string(c.command));
  return ParameterVector(c.params);
}

void write_value_csv(std::ostream& out, const json& result) {
  out << "name,re,im,abs,tail_bound,relative_error,pass\n";
  if (result.contains("value")) {
    const cplx v{result["value"][0].get<double>(), result["value"][1].get<double>()};
    out << "value," << format(v.real()) << ',' << format(v.imag()) << ',' << format(std::abs(v)) << ','
        << format(result.value("tail_bound", 0.0)) << ",,\n";
  }
  for (const json& c : result["checks"])
    out << c["name"].get<std::string>() << ",,,,," << format(c["relative_error"].get<double>()) << ','
        << (c["pass"].get<bool>() ? "true" : "false") << '\n';
}

json run_eval(const JobConfig& c) {
  const EvalResult r = theta_eval(require_params(c), eval_options(c));
  json out = series_fields(r);
  out["checks"] = json::array();
  return out;
}

json run_derive(const JobConfig& c) {
  const ParameterVector p = require_params(c);
  if (c.alpha.size() != p.size())
    throw ConfigError("alpha", "needs " + std::to_string(p.size()) + " entries, got " + std::to_string(c.alpha.size()));
  const MultiIndex alpha(c.alpha);
  const EvalResult r = theta_derivative(alpha, p, eval_options(c));
  json out = series_fields(r);
  out["alpha"] = c.alpha;
  std::vector<Check> checks;
  if (alpha.total_order() <= 4) {
    const double e = rel_err(finite_difference(alpha, p, DifferenceOptions{}), r.value);
    checks.push_back({"finite-difference", e, e < 1e-5});
  }
  out["checks"] = to_json(checks);
  return out;
}

json run_quasiperiod(const JobConfig& c) {
  const ParameterVector p = require_params(c);
  const EvalOptions opts = relative_tol(c.tol);
  const TAction t = apply_T(c.a, p);
  const EvalResult shifted = theta_eval(t.new_params, opts);
  const cplx rhs = t.multiplier * theta_eval_offset(p, c.a, opts).value;
  json out = series_fields(shifted);
  out["multiplier"] = to_json(t.multiplier);
  json np = json::array();
  for (const cplx& x : t.new_params) np.push_back(to_json(x));
  out["shifted_params"] = np;
  const double e = rel_err(shifted.value, rhs);
  out["checks"] = to_json({{"quasi-periodicity", e, e < 1e-9}});
  return out;
}

json run_lattice(const JobConfig& c) {
  const ParameterVector p = require_params(c);
  const EvalOptions opts = relative_tol(c.tol);
  const EvalResult base = theta_eval(p, opts);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::int64_t> pick(-2, 2);
  std::vector<Check> checks;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::int64_t> j(p.size());
    for (auto& x : j) x = pick(rng);
    const double e = rel_err(theta_eval(apply_S(lattice_translation(j), p), opts).value, base.value);
    checks.push_back({"lattice-shift-" + std::to_string(i), e, e < 1e-10});
  }
  json out = series_fields(base);
  out["checks"] = to_json(checks);
  return out;
}

json run_pde(const JobConfig& c) {
  const ParameterVector p = require_params(c);
  const EvalOptions opts = relative_tol(c.tol);
  json out = series_fields(theta_eval(p, opts));
  std::vector<Check> checks;
  for (const PdeSpec& spec : builtin_pdes(p.size())) {
    const double e = pde_residual(spec, p, opts).relative();
    checks.push_back({spec.name, e, e < 1e-9});
  }
  out["checks"] = to_json(checks);
  return out;
}

json run_embed(const JobConfig& c) {
  const ParameterVector p = require_params(c);
  if (c.level < 1) throw ConfigError("level", "must be a positive integer");
  const ProjectivePoint x = embed(p, c.level, eval_options(c));
  const std::vector<Characteristic> chars = enumerate_chars(c.level, p.size());
  json coords = json::array();
  json names = json::array();
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    coords.push_back(to_json(x.coords[i]));
    names.push_back(chars[i].to_string());
  }
  return {{"level", c.level}, {"coords", coords}, {"characteristics", names}, {"checks", json::array()}};
}

json run_group(const JobConfig& c) {
  std::vector<GroupElement> g = c.elements;
  if (g.empty()) {
    const std::size_t n = c.params.empty() ? 4 : c.params.size();
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      std::vector<cplx> b(n);
      for (auto& x : b) x = u(rng);
      const double phase = 0.5 * (u(rng) + 1.0);
      const double a = u(rng);
      g.emplace_back(phase, a, std::move(b));
    }
  }
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i].size() != g[0].size())
      throw ConfigError("elements[" + std::to_string(i) + "].b", "all elements need the same number of b entries");

  GroupElement product = g[0];
  for (std::size_t i = 1; i < g.size(); ++i) product = group_multiply(product, g[i]);
  const GroupElement inverse = group_inverse(product);
  const GroupElement e = GroupElement::identity(product.size());

  std::vector<Check> checks;
  const double inv = group_distance(group_multiply(product, inverse), e);
  checks.push_back({"inverse", inv, inv < 1e-10});
  if (g.size() >= 3) {
    const double assoc =
        group_distance(group_multiply(group_multiply(g[0], g[1]), g[2]), group_multiply(g[0], group_multiply(g[1], g[2])));
    checks.push_back({"associativity", assoc, assoc < 1e-10});
  }
  if (g.size() >= 2) {
    const double hom = rep_distance(matrix_rep(group_multiply(g[0], g[1])), matrix_rep(g[0]) * matrix_rep(g[1]));
    checks.push_back({"homomorphism", hom, hom < 1e-10});
  }
  const RepMatrix m = matrix_rep(product);
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return {{"product", to_json(product)}, {"inverse", to_json(inverse)}, {"matrix", rows}, {"checks", to_json(checks)}};
}

}  // namespace

std::string GridAxis::name() const { return (imaginary ? "im" : "re") + std::to_string(index); }

double GridAxis::at(std::int64_t i) const {
  if (count <= 1) return start;
  return start + (end - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

GridAxis parse_grid_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("grid", "expected axis:start:end:count, got '" + text + "'");
  GridAxis g;
  const std::string& axis = parts[0];
  if (axis.size() < 3 || (axis.rfind("re", 0) != 0 && axis.rfind("im", 0) != 0))
    throw ConfigError("grid", "axis must be re<k> or im<k>, got '" + axis + "'");
  g.imaginary = axis[0] == 'i';
  try {
    std::size_t used = 0;
    const long long k = std::stoll(axis.substr(2), &used);
    if (used != axis.size() - 2 || k < 1) throw std::invalid_argument("index");
    g.index = static_cast<std::size_t>(k);
    g.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    g.end = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("end");
    g.count = std::stoll(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw ConfigError("grid", "cannot parse '" + text + "'");
  }
  if (g.count < 1 || g.count > 1000000) throw ConfigError("grid", "count must be between 1 and 1000000");
  return g;
}

Command parse_command(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"eval", Command::eval},       {"derive", Command::derive}, {"quasiperiod", Command::quasiperiod},
      {"lattice", Command::lattice}, {"pde", Command::pde},       {"embed", Command::embed},
      {"group", Command::group},     {"grid", Command::grid}};
  for (const auto& [n, c] : table)
    if (name == n) return c;
  throw ConfigError("command", "unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::eval: return "eval";
    case Command::derive: return "derive";
    case Command::quasiperiod: return "quasiperiod";
    case Command::lattice: return "lattice";
    case Command::pde: return "pde";
    case Command::embed: return "embed";
    case Command::group: return "group";
    case Command::grid: return "grid";
  }
  return "unknown";
}

JobConfig parse_job(const json& job) {
  if (!job.is_object()) throw ConfigError("job", "expected a JSON object");
  static const char* known[] = {"command", "params", "tol",   "mode", "level",   "seed",
                                "output",  "grid",   "a",     "alpha", "elements"};
  for (const auto& [key, _] : job.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) throw ConfigError(key, "unknown field");

  JobConfig c;
  if (!job.contains("command") || !job["command"].is_string()) throw ConfigError("command", "required string");
  c.command = parse_command(job["command"].get<std::string>());
  if (job.contains("params")) c.params = parse_complex_list(job["params"], "params");
  if (job.contains("tol")) {
    if (!job["tol"].is_number()) throw ConfigError("tol", "expected a number");
    c.tol = job["tol"].get<double>();
  }
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("tol", "must lie in (0, 1)");
  if (job.contains("mode")) {
    const json& m = job["mode"];
    if (m == "relative")
      c.relative = true;
    else if (m != "absolute")
      throw ConfigError("mode", "expected 'absolute' or 'relative'");
  }
  if (job.contains("level")) {
    if (!job["level"].is_number_integer() || job["level"].get<long long>() < 1)
      throw ConfigError("level", "expected a positive integer");
    c.level = job["level"].get<std::int64_t>();
  }
  if (job.contains("seed")) {
    if (!job["seed"].is_number_integer() || job["seed"].get<long long>() < 0) throw ConfigError("seed", "expected a nonnegative integer");
    c.seed = job["seed"].get<std::uint64_t>();
  }
  if (job.contains("output")) {
    const json& o = job["output"];
    if (o == "csv")
      c.output = OutputFormat::csv;
    else if (o != "json")
      throw ConfigError("output", "expected 'json' or 'csv'");
  }
  if (job.contains("grid")) {
    const json& g = job["grid"];
    if (g.is_string()) {
      c.grid.push_back(parse_grid_axis(g.get<std::string>()));
    } else if (g.is_array()) {
      for (const json& axis : g) {
        if (!axis.is_string()) throw ConfigError("grid", "expected axis strings");
        c.grid.push_back(parse_grid_axis(axis.get<std::string>()));
      }
    } else {
      throw ConfigError("grid", "expected an axis string or an array of them");
    }
  }
  if (job.contains("a")) c.a = parse_complex(job["a"], "a");
  if (job.contains("alpha")) c.alpha = parse_alpha(job["alpha"]);
  if (job.contains("elements")) {
    const json& e = job["elements"];
    if (!e.is_array()) throw ConfigError("elements", "expected an array");
    for (std::size_t i = 0; i < e.size(); ++i) c.elements.push_back(parse_element(e[i], "elements[" + std::to_string(i) + "]"));
  }
  return c;
}

void emit_grid(const JobConfig& config, std::ostream& out) {
  if (config.grid.empty() || config.grid.size() > 2) throw ConfigError("grid", "one or two axes are required");
  if (config.params.empty()) throw ConfigError("params", "required for grid");
  for (const GridAxis& g : config.grid)
    if (g.index > config.params.size())
      throw ConfigError("grid", "axis " + g.name() + " exceeds the " + std::to_string(config.params.size()) + " parameters");

  const GridAxis& outer = config.grid[0];
  const GridAxis inner = config.grid.size() == 2 ? config.grid[1] : GridAxis{false, 1, 0.0, 0.0, 1};
  const bool two = config.grid.size() == 2;
  const EvalOptions opts = eval_options(config);
  const bool csv = config.output == OutputFormat::csv;

  json rows = json::array();
  if (csv) {
    out << outer.name() << ',';
    if (two) out << inner.name() << ',';
    out << "re,im,abs,tail_bound,error\n";
  }
  for (std::int64_t i = 0; i < outer.count; ++i)
    for (std::int64_t j = 0; j < inner.count; ++j) {
      std::vector<cplx> p = config.params;
      std::vector<double> coords{outer.at(i)};
      if (two) coords.push_back(inner.at(j));
      for (std::size_t d = 0; d < coords.size(); ++d) {
        const GridAxis& g = d == 0 ? outer : inner;
        cplx& t = p[g.index - 1];
        t = g.imaginary ? cplx{t.real(), coords[d]} : cplx{coords[d], t.imag()};
      }
      std::optional<EvalResult> r;
      std::string error;
      try {
        r = theta_eval(ParameterVector(p), opts);
      } catch (const ThetaError& e) {
        error = to_string(e.code());
      }
      if (csv) {
        for (double x : coords) out << format(x) << ',';
        if (r)
          out << format(r->value.real()) << ',' << format(r->value.imag()) << ',' << format(std::abs(r->value)) << ','
              << format(r->tail_bound) << ",\n";
        else
          out << ",,,," << error << '\n';
      } else {
        json row{{"coords", coords}};
        row["value"] = r ? to_json(r->value) : json(nullptr);
        row["tail_bound"] = r ? json(r->tail_bound) : json(nullptr);
        row["error"] = r ? json(nullptr) : json(error);
        rows.push_back(row);
      }
    }
  if (!csv) {
    json axes = json::array();
    for (const GridAxis& g : config.grid) axes.push_back(g.name());
    out << json{{"command", "grid"}, {"axes", axes}, {"rows", rows}}.dump() << '\n';
  }
}

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == Command::grid) {
      emit_grid(config, out);
      return exit_code::ok;
    }
    json result;
    switch (config.command) {
      case Command::eval: result = run_eval(config); break;
      case Command::derive: result = run_derive(config); break;
      case Command::quasiperiod: result = run_quasiperiod(config); break;
      case Command::lattice: result = run_lattice(config); break;
      case Command::pde: result = run_pde(config); break;
      case Command::embed: result = run_embed(config); break;
      case Command::group: result = run_group(config); break;
      case Command::grid: break;
    }
    result["command"] = to_string(config.command);

    if (config.output == OutputFormat::json) {
      out << result.dump() << '\n';
    } else if (config.command == Command::embed) {
      out << "index,characteristic,re,im,abs\n";
      for (std::size_t i = 0; i < result["coords"].size(); ++i) {
        const cplx v{result["coords"][i][0].get<double>(), result["coords"][i][1].get<double>()};
        out << i << ",\"" << result["characteristics"][i].get<std::string>() << "\"," << format(v.real()) << ','
            << format(v.imag()) << ',' << format(std::abs(v)) << '\n';
      }
    } else if (config.command == Command::group) {
      out << "row,col,re,im\n";
      const json& m = result["matrix"];
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
          out << i << ',' << j << ',' << format(m[i][j][0].get<double>()) << ',' << format(m[i][j][1].get<double>())
              << '\n';
    } else {
      write_value_csv(out, result);
    }

    bool pass = true;
    for (const json& c : result["checks"]) {
      if (!c["pass"].get<bool>()) {
        pass = false;
        err << "check failed: " << c["name"].get<std::string>() << " (relative error "
            << format(c["relative_error"].get<double>()) << ")\n";
      }
    }
    return pass ? exit_code::ok : exit_code::check_failed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::malformed_input;
  } catch (const ThetaError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::domain_error;
  }
}

int run_json(const json& job, std::ostream& out, std::ostream& err) {
  JobConfig config;
  try {
    config = parse_job(job);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::malformed_input;
  }
  return run(config, out, err);
}

int run(std::istream& in, std::ostream& out, std::ostream& err) {
  json job;
  try {
    in >> job;
  } catch (const json::exception& e) {
    err << "error: job: " << e.what() << '\n';
    return exit_code::malformed_input;
  }
  return run_json(job, out, err);
}

}  // namespace gtheta::cli
