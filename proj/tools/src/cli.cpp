#include "spherewf_cli/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spherewf/acceptance.hpp"
#include "spherewf/errors.hpp"
#include "spherewf/moran.hpp"
#include "spherewf/report.hpp"
#include "spherewf/rng.hpp"
#include "spherewf/simulate.hpp"
#include "spherewf/sphere_heat.hpp"
#include "spherewf/wf_density.hpp"

namespace spherewf::cli {

namespace {

// A bad flag value or combination; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output = "-";
  std::string format = "csv";
};

struct DensityArgs {
  std::string kernel;
  std::optional<int> k;
  double t = 1.0;
  double D = 0.125;
  std::vector<double> epsilon{0.5};
  std::vector<double> x;
  std::vector<double> x_prime;
  std::string input;
  std::optional<double> tol;
  std::optional<int> max_terms;
};

struct SimulateArgs {
  std::string model;
  std::optional<int> k;
  double c = 1.0;
  std::vector<double> epsilon{0.5};
  std::vector<double> start;
  double T = 1.0;
  double dt = 1e-4;
  int stride = 1;
  int paths = 1;
};

struct VerifyArgs {
  std::string suite = "all";
  std::optional<int> k;
  std::string summary;
};

struct MoranArgs {
  std::vector<std::int64_t> counts;
  std::optional<std::int64_t> N;
  int k = 2;
  double lambda = 1.0;
  std::optional<std::int64_t> events;
  std::optional<double> T;
  std::int64_t record_every = 1;
  int replicates = 1;
};

// Writes to --output, or to the caller's stream for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path != "-" && !path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("--output: cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

// Header lines naming the resolved configuration, seed and generator.
void write_metadata(std::ostream& os, const std::string& format, const std::string& config_text,
                    const Globals& g) {
  if (format == "jsonl") {
    nlohmann::ordered_json j;
    j["record"] = "config";
    j["seed"] = g.seed;
    j["rng"] = std::string(kRngAlgorithm);
    j["config"] = config_text;
    os << j.dump() << '\n';
    return;
  }
  std::istringstream lines(config_text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) os << "# config: " << line << "\r\n";
  }
  os << "# seed: " << g.seed << "\r\n";
  os << "# rng: " << kRngAlgorithm << "\r\n";
}

// Emits one row either as CSV or as a JSON object keyed by the header.
class Table {
 public:
  Table(std::ostream& os, std::string format, std::vector<std::string> header)
      : os_(os), format_(std::move(format)), header_(std::move(header)) {
    if (format_ == "csv") os_ << join(header_) << "\r\n";
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == "csv") {
      os_ << join(cells) << "\r\n";
      return;
    }
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      const std::string& c = cells[i];
      // Numbers stay numbers; everything else is a string.
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (!c.empty() && end == c.c_str() + c.size() && std::isfinite(v)) {
        if (c.find_first_of(".eE") == std::string::npos) {
          j[header_[i]] = std::stoll(c);
        } else {
          j[header_[i]] = v;
        }
      } else {
        j[header_[i]] = c;
      }
    }
    os_ << j.dump() << '\n';
  }

 private:
  std::ostream& os_;
  std::string format_;
  std::vector<std::string> header_;
};

SimplexPoint simplex_arg(const char* field, const std::vector<double>& v) {
  try {
    return SimplexPoint(v);
  } catch (const DomainError& e) {
    throw ConfigError(std::string(field) + ": " + e.what());
  }
}

SpherePoint sphere_arg(const char* field, const std::vector<double>& v) {
  try {
    return SpherePoint(v);
  } catch (const DomainError& e) {
    throw ConfigError(std::string(field) + ": " + e.what());
  }
}

std::vector<std::string> indexed(const std::string& prefix, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<double> parse_numbers(const std::string& line, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError(where + ": '" + cell + "' is not a number");
    }
  }
  return out;
}

// Point pairs: inline --x/--x-prime, or rows of an input CSV holding x then x'.
std::vector<std::pair<std::vector<double>, std::vector<double>>> density_points(const DensityArgs& a,
                                                                                bool needs_prime) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  if (a.input.empty()) {
    if (a.x.empty()) throw ConfigError("--x: required unless --input is given");
    if (needs_prime && a.x_prime.empty()) throw ConfigError("--x-prime: required for kernel '" + a.kernel + "'");
    out.emplace_back(a.x, a.x_prime);
    return out;
  }
  std::ifstream in(a.input);
  if (!in) throw ConfigError("--input: cannot open '" + a.input + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header row
    const std::vector<double> v = parse_numbers(line, "--input line " + std::to_string(lineno));
    if (needs_prime) {
      if (v.size() % 2 != 0) throw ConfigError("--input line " + std::to_string(lineno) + ": expected x then x'");
      const auto half = static_cast<std::ptrdiff_t>(v.size() / 2);
      out.emplace_back(std::vector<double>(v.begin(), v.begin() + half), std::vector<double>(v.begin() + half, v.end()));
    } else {
      out.emplace_back(v, std::vector<double>{});
    }
  }
  if (out.empty()) throw ConfigError("--input: no point rows in '" + a.input + "'");
  return out;
}

std::vector<double> broadcast_epsilon(const std::vector<double>& eps, int k) {
  if (eps.size() == 1) return std::vector<double>(static_cast<std::size_t>(k), eps[0]);
  if (static_cast<int>(eps.size()) != k) {
    throw ConfigError("--epsilon: expected 1 or " + std::to_string(k) + " values, got " + std::to_string(eps.size()));
  }
  return eps;
}

Truncation truncation_for(const DensityArgs& a, Truncation base) {
  if (a.tol) base.tol = *a.tol;
  if (a.max_terms) base.max_terms = *a.max_terms;
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--tol/--max-terms: ") + e.what());
  }
  return base;
}

int cmd_density(const DensityArgs& a, const Globals& g, const std::string& config_text, std::ostream& out) {
  const bool stationary = a.kernel == "stationary";
  const auto points = density_points(a, !stationary);
  const int k = a.k.value_or(static_cast<int>(points.front().first.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = a.input.empty() ? "" : " (row " + std::to_string(i + 1) + ")";
    if (static_cast<int>(points[i].first.size()) != k) {
      throw ConfigError("--x" + where + ": expected " + std::to_string(k) + " coordinates");
    }
    if (!stationary && static_cast<int>(points[i].second.size()) != k) {
      throw ConfigError("--x-prime" + where + ": expected " + std::to_string(k) + " coordinates");
    }
  }
  if (!(a.t > 0.0)) throw ConfigError("--t: must be positive");
  if (!(a.D > 0.0)) throw ConfigError("--D: must be positive");

  std::vector<std::string> header = {"kernel", "k", "t"};
  for (auto& h : indexed("x_", k)) header.push_back(h);
  if (!stationary) {
    for (auto& h : indexed("xp_", k)) header.push_back(h);
  }
  for (const char* h : {"value", "terms", "tail_bound", "converged"}) header.emplace_back(h);

  struct Row {
    double value = 0.0;
    int terms = 0;
    double tail = 0.0;
    bool converged = true;
  };
  std::vector<Row> rows;
  for (const auto& [xv, xpv] : points) {
    Row r;
    try {
      if (a.kernel == "sphere") {
        const SeriesValue v = heat_kernel({sphere_arg("--x", xv), sphere_arg("--x-prime", xpv), a.t, a.D,
                                           truncation_for(a, Truncation{})});
        r = {v.value, v.terms, v.tail_bound, v.converged};
      } else if (a.kernel == "pushforward") {
        const PushforwardValue v = pushforward_density({simplex_arg("--x", xv), simplex_arg("--x-prime", xpv), a.t,
                                                        a.D, truncation_for(a, Truncation{})});
        r = {v.value, v.terms, v.tail_bound, v.converged};
      } else if (a.kernel == "griffiths") {
        const std::vector<double> eps = broadcast_epsilon(a.epsilon, k);
        for (double e : eps) {
          if (e != eps[0]) throw ConfigError("--epsilon: the griffiths kernel needs a common value");
        }
        GriffithsQuery q{simplex_arg("--x", xv), simplex_arg("--x-prime", xpv), a.t, eps[0],
                         truncation_for(a, Truncation{200, 1e-15, 3})};
        const DensityValue v = griffiths_density(q);
        r = {v.value, v.terms, v.last_term, v.converged};
      } else {
        const std::vector<double> eps = broadcast_epsilon(a.epsilon, k);
        r = {dirichlet_stationary(simplex_arg("--x", xv), eps), 0, 0.0, true};
      }
    } catch (const DomainError& e) {
      throw ConfigError("--kernel " + a.kernel + ": " + e.what());
    }
    rows.push_back(r);
  }

  Sink sink(g.output, out);
  write_metadata(*sink, g.format, config_text, g);
  Table table(*sink, g.format, header);
  bool all_converged = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> cells = {a.kernel, std::to_string(k), format_real(a.t)};
    for (double v : points[i].first) cells.push_back(format_real(v));
    if (!stationary) {
      for (double v : points[i].second) cells.push_back(format_real(v));
    }
    cells.push_back(format_real(rows[i].value));
    cells.push_back(std::to_string(rows[i].terms));
    cells.push_back(format_real(rows[i].tail));
    cells.emplace_back(rows[i].converged ? "true" : "false");
    table.row(cells);
    all_converged = all_converged && rows[i].converged;
  }
  if (!all_converged) throw NonConvergence("series did not reach --tol within --max-terms");
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& a, const Globals& g, const std::string& config_text, std::ostream& out) {
  const std::optional<Model> model = parse_model(a.model);
  if (!model) throw ConfigError("--model: unknown model '" + a.model + "'");
  int k = a.k.value_or(static_cast<int>(a.start.size()));
  if (a.start.empty() && !a.k) throw ConfigError("--k: required unless --start is given");
  if (!a.start.empty() && static_cast<int>(a.start.size()) != k) {
    throw ConfigError("--start: expected " + std::to_string(k) + " coordinates");
  }
  if (k < 2) throw ConfigError("--k: must be >= 2");
  if (!(a.c > 0.0)) throw ConfigError("--c: must be positive");
  if (a.stride < 1) throw ConfigError("--stride: must be >= 1");
  if (a.paths < 1) throw ConfigError("--paths: must be >= 1");

  std::vector<double> start = a.start;
  if (start.empty()) {
    start = *model == Model::Sphere ? SpherePoint::pole(k).vec() : SimplexPoint::barycenter(k).vec();
  } else if (*model == Model::Sphere) {
    start = sphere_arg("--start", start).vec();
  } else {
    start = simplex_arg("--start", start).vec();
  }

  std::optional<ModelParams> params;
  try {
    params.emplace(k, a.c, broadcast_epsilon(a.epsilon, k));
    (void)step_count(a.T, a.dt);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--T/--dt/--epsilon: ") + e.what());
  }

  Sink sink(g.output, out);
  write_metadata(*sink, g.format, config_text, g);
  std::vector<std::string> header = {"path", "t"};
  for (auto& h : indexed(*model == Model::Sphere ? "y_" : "x_", k)) header.push_back(h);
  header.emplace_back("defect");
  header.emplace_back("clamped");
  Table table(*sink, g.format, header);
  for (int p = 0; p < a.paths; ++p) {
    Rng rng = make_stream(g.seed, static_cast<std::uint64_t>(p));
    const PathRecord rec = simulate_path(*model, start, a.T, a.dt, *params, rng, a.stride);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      std::vector<std::string> cells = {std::to_string(p), format_real(rec.times[i])};
      for (double v : rec.states[i]) cells.push_back(format_real(v));
      cells.push_back(format_real(rec.defects[i]));
      cells.push_back(std::to_string(rec.clamped[i]));
      table.row(cells);
    }
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, const std::string& config_text, std::ostream& out,
               std::ostream& err) {
  SuiteOptions o;
  o.seed = g.seed;
  o.threads = g.threads;
  o.k = a.k;
  if (a.k && (*a.k < 2 || *a.k > 6)) throw ConfigError("--k: must be in [2, 6]");
  std::vector<VerificationReport> reports;
  try {
    reports = run_suite(a.suite, o);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--suite: ") + e.what());
  }
  Sink sink(g.output, out);
  if (g.format == "csv") {
    write_metadata(*sink, g.format, config_text, g);
    *sink << summary_csv(reports);
  } else {
    write_metadata(*sink, g.format, config_text, g);
    for (const auto& r : reports) *sink << r.to_json_line() << '\n';
  }
  if (!a.summary.empty()) {
    std::ofstream s(a.summary, std::ios::binary);
    if (!s) throw ConfigError("--summary: cannot open '" + a.summary + "' for writing");
    s << summary_csv(reports);
  }
  bool ok = true;
  for (const auto& r : reports) {
    err << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_moran(const MoranArgs& a, const Globals& g, const std::string& config_text, std::ostream& out) {
  std::vector<std::int64_t> counts = a.counts;
  if (counts.empty()) {
    if (!a.N) throw ConfigError("--counts: required unless --N is given");
    if (a.k < 2) throw ConfigError("--k: must be >= 2");
    if (*a.N < 1) throw ConfigError("--N: must be >= 1");
    // 2N particles split as evenly as possible.
    const std::int64_t total = 2 * *a.N;
    counts.assign(static_cast<std::size_t>(a.k), total / a.k);
    counts[0] += total % a.k;
  }
  MoranState s0;
  try {
    s0 = MoranState::from_counts(counts, a.lambda);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--counts/--lambda: ") + e.what());
  }
  std::int64_t events = 0;
  if (a.events) {
    events = *a.events;
  } else if (a.T) {
    events = static_cast<std::int64_t>(std::llround(moran_event_rate(s0) * *a.T));
  } else {
    throw ConfigError("--events: required unless --T is given");
  }
  if (events < 0) throw ConfigError("--events: must be >= 0");
  if (a.record_every < 1) throw ConfigError("--record-every: must be >= 1");
  if (a.replicates < 1) throw ConfigError("--replicates: must be >= 1");

  Sink sink(g.output, out);
  write_metadata(*sink, g.format, config_text, g);
  std::vector<std::string> header = {"replicate", "event", "t"};
  for (auto& h : indexed("count_", s0.k())) header.push_back(h);
  header.emplace_back("heterozygosity");
  Table table(*sink, g.format, header);
  for (int r = 0; r < a.replicates; ++r) {
    Rng rng = make_stream(g.seed, static_cast<std::uint64_t>(r));
    const MoranTrajectory tr = simulate_moran(s0, events, rng, a.record_every);
    for (std::size_t i = 0; i < tr.events.size(); ++i) {
      std::vector<std::string> cells = {std::to_string(r), std::to_string(tr.events[i]), format_real(tr.times[i])};
      for (auto c : tr.counts[i]) cells.push_back(std::to_string(c));
      cells.push_back(format_real(tr.heterozygosity[i]));
      table.row(cells);
    }
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sphere and Wright-Fisher diffusion densities, simulators and checks", "spherewf"};
  app.set_config("--config", "", "TOML or INI file with option values (flags override it)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed")->envname(kSeedEnv)->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
  app.add_option("-o,--output", g.output, "Output file, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Evaluate a transition or stationary density");
  density->add_option("--kernel", da.kernel, "sphere | griffiths | pushforward | stationary")
      ->required()
      ->check(CLI::IsMember({"sphere", "griffiths", "pushforward", "stationary"}));
  density->add_option("--k", da.k, "Dimension (inferred from --x when omitted)");
  density->add_option("--t", da.t, "Time")->capture_default_str();
  density->add_option("--D", da.D, "Sphere diffusion constant")->capture_default_str();
  density->add_option("--epsilon", da.epsilon, "Mutation parameter(s)")->delimiter(',')->capture_default_str();
  density->add_option("--x", da.x, "Point, comma separated")->delimiter(',');
  density->add_option("--x-prime", da.x_prime, "Starting point, comma separated")->delimiter(',');
  density->add_option("--input", da.input, "CSV of point rows: x then x'");
  density->add_option("--tol", da.tol, "Series tolerance");
  density->add_option("--max-terms", da.max_terms, "Series term cap");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Run Euler-Maruyama paths");
  simulate->add_option("--model", sa.model, "sphere | wf-neutral | wf-mutation | wf-isotropic")->required();
  simulate->add_option("--k", sa.k, "Dimension (inferred from --start when omitted)");
  simulate->add_option("--c", sa.c, "Noise scale")->capture_default_str();
  simulate->add_option("--epsilon", sa.epsilon, "Mutation parameter(s)")->delimiter(',')->capture_default_str();
  simulate->add_option("--start", sa.start, "Initial state (default: pole or barycenter)")->delimiter(',');
  simulate->add_option("--T", sa.T, "Final time")->capture_default_str();
  simulate->add_option("--dt", sa.dt, "Step size")->capture_default_str();
  simulate->add_option("--stride", sa.stride, "Record every n-th step")->capture_default_str();
  simulate->add_option("--paths", sa.paths, "Number of independent paths")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run acceptance checks and write JSONL reports");
  verify->add_option("--suite", va.suite, "Suite name")->check(CLI::IsMember(suite_names()))->capture_default_str();
  verify->add_option("--k", va.k, "Restrict k-scanned checks to one k");
  verify->add_option("--summary", va.summary, "Also write a CSV summary here");

  MoranArgs ma;
  auto* moran = app.add_subcommand("moran", "Simulate the interacting-particle Moran model");
  moran->add_option("--counts", ma.counts, "Initial allele counts")->delimiter(',');
  moran->add_option("--N", ma.N, "Diploid population size; 2N particles split evenly over --k types");
  moran->add_option("--k", ma.k, "Allele types with --N")->capture_default_str();
  moran->add_option("--lambda", ma.lambda, "Per-particle event rate")->capture_default_str();
  moran->add_option("--events", ma.events, "Number of pair events");
  moran->add_option("--T", ma.T, "Elapsed time; events = lambda * particles / 2 * T");
  moran->add_option("--record-every", ma.record_every, "Record every n-th event")->capture_default_str();
  moran->add_option("--replicates", ma.replicates, "Independent replicates")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  // Resolved values of the global options and the chosen subcommand only.
  std::string config_text;
  {
    const std::string prefix = app.get_subcommands().front()->get_name() + ".";
    std::istringstream all(app.config_to_str(true, false));
    std::string line;
    while (std::getline(all, line)) {
      const auto eq = line.find('=');
      const std::string key = line.substr(0, eq);
      if (key.find('.') == std::string::npos || key.rfind(prefix, 0) == 0) config_text += line + '\n';
    }
  }
  try {
    if (*density) return cmd_density(da, g, config_text, out);
    if (*simulate) return cmd_simulate(sa, g, config_text, out);
    if (*verify) return cmd_verify(va, g, config_text, out, err);
    return cmd_moran(ma, g, config_text, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace spherewf::cli
