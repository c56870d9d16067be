#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsqstab/bounds.hpp"
#include "lsqstab/conditioning.hpp"
#include "lsqstab/csv.hpp"
#include "lsqstab/errors.hpp"
#include "lsqstab/experiments.hpp"
#include "lsqstab/jacobi_basis.hpp"
#include "lsqstab/oracle.hpp"
#include "lsqstab/parallel.hpp"
#include "lsqstab/sampler.hpp"

namespace lsqstab::cli {

namespace {

struct Options {
  double alpha = 0.0;
  double beta = 0.0;
  int m = 10;
  std::size_t n = 100;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 1;
  double big_c = 0.0;
  std::string out;
  double tau = 0.0;
  double theta = 1.0;
  std::size_t grid = 128;
  int m_min = 0;
  int m_max = 99;
  std::size_t n_min = 1;
  std::size_t n_max = 100;
  std::string points;
  std::string points_file;
  double r = 1.0;
  std::string kind = "iid";
  std::string function = "runge";
  std::string config;
};

std::string footer() {
  return std::string(
             "Defaults: trials 100 per cell; the smallest Gram eigenvalue is floored at\n"
             "1e-13 (kappa capped at 10^6.5, clamped trials counted); C = 2 e^2 cbar + 1\n"
             "with cbar = c 2^min(alpha,beta) / (1 + max(alpha,beta)) when --big-c is\n"
             "omitted or not positive. x lies in [-1, 1]; all quantities are\n"
             "dimensionless.\n"
             "Environment: ") +
         kThreadsEnv +
         " sets the worker count (default: hardware\n"
         "concurrency); results do not depend on it.\n"
         "--config FILE reads a JSON object whose keys are flag names without the\n"
         "leading dashes; flags given on the command line take precedence.\n"
         "Exit status 0 on success, 2 on error with 'error: <code>: <detail>' on stderr.";
}

/// Adds options to subcommands and remembers every flag name, so config
/// keys meant for another subcommand can be told apart from typos.
class Builder {
 public:
  Builder(std::set<std::string>& names, Options& o) : o_(o), names_(names) {}

  template <class T>
  void add(CLI::App* s, const std::string& name, T& var, const std::string& help) {
    s->add_option("--" + name, var, help);
    names_.insert(name);
  }

  void measure(CLI::App* s) {
    add(s, "alpha", o_.alpha, "Jacobi exponent of (1 - x), > -1");
    add(s, "beta", o_.beta, "Jacobi exponent of (1 + x), > -1");
  }
  void degree(CLI::App* s) { add(s, "m", o_.m, "polynomial degree"); }
  void count(CLI::App* s) { add(s, "n", o_.n, "number of sample points"); }
  void seed(CLI::App* s) { add(s, "seed", o_.seed, "master seed (64-bit)"); }
  void trials(CLI::App* s, const std::string& what) { add(s, "trials", o_.trials, what); }
  void big_c(CLI::App* s) {
    add(s, "big-c", o_.big_c, "order-statistic constant C; <= 0 selects 2 e^2 cbar + 1");
  }
  void out(CLI::App* s) { add(s, "out", o_.out, "output file (default: stdout)"); }
  void points(CLI::App* s) {
    add(s, "points", o_.points, "explicit comma-separated sample points in [-1, 1]");
    add(s, "points-file", o_.points_file, "file with one sample point per line");
  }
  void m_range(CLI::App* s) {
    add(s, "m-min", o_.m_min, "smallest degree");
    add(s, "m-max", o_.m_max, "largest degree");
  }
  void n_range(CLI::App* s) {
    add(s, "n-min", o_.n_min, "smallest sample count");
    add(s, "n-max", o_.n_max, "largest sample count");
  }
  void grid(CLI::App* s) {
    add(s, "grid", o_.grid, "oracle Chebyshev grid size, raised to 8m when smaller");
  }

 private:
  Options& o_;
  std::set<std::string>& names_;
};

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_number_unsigned()) {
    return std::to_string(v.get<std::uint64_t>());
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    return format_real(v.get<double>());
  }
  if (v.is_string()) {
    return v.get<std::string>();
  }
  throw Error("config", "value of '" + key + "' must be a scalar or a list of scalars");
}

void apply_config(CLI::App* sub, const std::string& path, const std::set<std::string>& known) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config", "'" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw Error("config", "'" + path + "' must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      if (known.count(key) != 0) {
        continue;
      }
      throw Error("config", "unknown key '" + key + "' in '" + path + "'");
    }
    if (opt->count() > 0) {
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (const auto& item : value) {
        text += (text.empty() ? "" : ",") + json_scalar(item, key);
      }
    } else {
      text = json_scalar(value, key);
    }
    try {
      opt->add_result(text);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Error("config", "'" + key + "': " + e.what());
    }
  }
}

std::vector<double> parse_point_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(", \t", pos);
    if (end == std::string::npos) {
      end = text.size();
    }
    if (end > pos) {
      double v = 0.0;
      const char* first = text.data() + pos;
      const char* last = text.data() + end;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw DomainError("bad number in --points: '" + std::string(first, last) + "'");
      }
      values.push_back(v);
    }
    pos = end + 1;
  }
  return values;
}

bool given(const CLI::App* sub, const std::string& flag) {
  const CLI::Option* opt = sub->get_option_no_throw(flag);
  return opt != nullptr && opt->count() > 0;
}

/// Explicit points when --points or --points-file is given, else i.i.d. draws.
SampleSet resolve_samples(const CLI::App* sub, const Options& o, const JacobiParams& params) {
  if (given(sub, "--points") && given(sub, "--points-file")) {
    throw DomainError("--points and --points-file are mutually exclusive");
  }
  if (given(sub, "--points")) {
    return from_points(parse_point_list(o.points));
  }
  if (given(sub, "--points-file")) {
    std::ifstream in(o.points_file);
    if (!in) {
      throw IoError("cannot open points file '" + o.points_file + "'");
    }
    return read_samples(in);
  }
  return sample_iid(params, o.n, o.seed);
}

template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& write) {
  if (o.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out);
  if (!file) {
    throw IoError("cannot open '" + o.out + "' for writing");
  }
  write(file);
  file.flush();
  if (!file) {
    throw IoError("write to '" + o.out + "' failed");
  }
}

double resolve_big_c(const Options& o, const JacobiParams& params) {
  return o.big_c > 0.0 ? o.big_c : default_big_c(params);
}

template <class T>
std::vector<T> inclusive_range(T lo, T hi, const char* what) {
  if (lo > hi) {
    throw DomainError(std::string(what) + " range is empty");
  }
  std::vector<T> v;
  for (T x = lo; x <= hi; ++x) {
    v.push_back(x);
  }
  return v;
}

// ---------------------------------------------------------------------------

void cmd_condition(const CLI::App* sub, const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  const OrthonormalBasis basis(params, o.m);
  const SampleSet s = resolve_samples(sub, o, params);
  const Conditioning c = condition_number(basis, s);
  emit(o, out, [&](std::ostream& os) {
    os << "alpha,beta,m,n,provenance,seed,kappa,lambda_min,clamped\n";
    CsvRow row;
    row.add(o.alpha).add(o.beta).add(o.m).add(s.n()).add(to_string(s.provenance));
    if (s.provenance == Provenance::iid) {
      row.add(s.seed);
    } else {
      row.add_empty();
    }
    row.add(c.kappa).add(c.lambda_min).add(c.clamped);
    os << row.str() << '\n';
  });
}

void cmd_kfun(const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  const double k = christoffel_K(OrthonormalBasis(params, o.m));
  emit(o, out, [&](std::ostream& os) {
    os << "alpha,beta,m,K\n" << CsvRow().add(o.alpha).add(o.beta).add(o.m).add(k).str() << '\n';
  });
}

void cmd_sample(const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  SampleSet s;
  if (o.kind == "iid") {
    s = sample_iid(params, o.n, o.seed);
  } else if (o.kind == "equidistributed") {
    s = equidistributed(params, o.n);
  } else {
    s = equispaced(o.n);
  }
  emit(o, out, [&](std::ostream& os) { write_samples(os, s); });
}

void cmd_stability_map(const Options& o, std::ostream& out) {
  ExperimentConfig c;
  c.params = make_params(o.alpha, o.beta);
  c.m_values = inclusive_range(o.m_min, o.m_max, "degree");
  c.n_values = inclusive_range(o.n_min, o.n_max, "sample-size");
  c.trials = o.trials;
  c.seed = o.seed;
  const auto rows = stability_map(c);
  emit(o, out, [&](std::ostream& os) { write_stability_csv(os, rows); });
}

void cmd_orderstats(const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  const double big_c = resolve_big_c(o, params);
  const OrderStatProbability p = orderstat_probability(params, o.n, big_c, o.trials, o.seed);
  emit(o, out, [&](std::ostream& os) {
    os << "alpha,beta,n,C,trials,estimate,bound\n"
       << CsvRow()
              .add(o.alpha)
              .add(o.beta)
              .add(o.n)
              .add(big_c)
              .add(p.trials)
              .add(p.estimate)
              .add(p.bound)
              .str()
       << '\n';
  });
}

void cmd_convergence(const Options& o, std::ostream& out) {
  ExperimentConfig c;
  c.params = make_params(o.alpha, o.beta);
  c.m_values = inclusive_range(o.m_min, o.m_max, "degree");
  c.trials = o.trials;
  c.seed = o.seed;
  const double tau =
      o.tau > 0.0 ? o.tau : std::min(1.0, 1.0 / (2.0 * (1.0 + c.params.gamma)));
  const auto rows = convergence_experiment(c, target_function(o.function), tau, o.theta);
  emit(o, out, [&](std::ostream& os) { write_convergence_csv(os, rows); });
}

void cmd_cohen(const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  if (o.trials == 0) {
    throw DomainError("trials must be at least 1");
  }
  const CohenResult r = cohen_sufficiency_experiment(params, o.m, o.r, o.trials, o.seed);
  emit(o, out, [&](std::ostream& os) {
    os << "alpha,beta,m,r,iota,K,n_star,trials,empirical_prob,target_prob,log_base\n"
       << CsvRow()
              .add(o.alpha)
              .add(o.beta)
              .add(o.m)
              .add(o.r)
              .add(r.iota)
              .add(r.christoffel)
              .add(r.n_star)
              .add(r.trials)
              .add(r.empirical_prob)
              .add(r.target_prob)
              .add("e")
              .str()
       << '\n';
  });
}

void cmd_witness(const CLI::App* sub, const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  const SampleSet s = sort_samples(resolve_samples(sub, o, params));
  const double big_c = resolve_big_c(o, params);
  const WitnessResult w = witness_lower_bound(s, o.m, params, big_c);
  emit(o, out, [&](std::ostream& os) {
    os << "m,n,seed,C,case,K,lambda,witness_bound,sup_location,max_on_samples,event_holds\n";
    CsvRow row;
    row.add(o.m).add(s.n());
    if (s.provenance == Provenance::iid) {
      row.add(s.seed);
    } else {
      row.add_empty();
    }
    row.add(big_c)
        .add(w.witness_case == WitnessCase::I ? "I" : "II")
        .add(w.K)
        .add(w.lambda)
        .add(w.bound)
        .add(w.sup_location)
        .add(w.max_on_samples)
        .add(w.event_holds);
    os << row.str() << '\n';
  });
}

void cmd_b_oracle(const CLI::App* sub, const Options& o, std::ostream& out) {
  const JacobiParams params = make_params(o.alpha, o.beta);
  const SampleSet s = resolve_samples(sub, o, params);
  const std::size_t grid = std::max(o.grid, 8 * static_cast<std::size_t>(std::max(o.m, 1)));
  const double b = b_exact(s, o.m, grid);
  emit(o, out, [&](std::ostream& os) { os << std::setprecision(12) << b << '\n'; });
}

void cmd_witness_vs_oracle(const Options& o, std::ostream& out) {
  WitnessSweepConfig w;
  w.base.params = make_params(o.alpha, o.beta);
  w.base.m_values = inclusive_range(o.m_min, o.m_max, "degree");
  w.base.n_values = inclusive_range(o.n_min, o.n_max, "sample-size");
  w.base.trials = o.trials;
  w.base.seed = o.seed;
  w.big_c = o.big_c;
  w.grid_size = o.grid;
  const auto rows = witness_vs_oracle(w);
  emit(o, out, [&](std::ostream& os) { write_witness_csv(os, rows); });
}

/// CLI11 reads a value that starts with '-' as a flag; glue it to --points.
std::vector<std::string> normalized_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--points" && i + 1 < argc) {
      args.push_back(a + "=" + argv[++i]);
    } else {
      args.push_back(a);
    }
  }
  // CLI11 consumes the vector form back to front.
  return {args.rbegin(), args.rend()};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Stability of discrete least-squares polynomial approximation under "
      "Jacobi-measure sampling."};
  app.name("lsqstab");
  app.footer(footer());
  app.require_subcommand(1);
  std::map<std::string, Options> opts;
  std::set<std::string> names;

  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->footer(footer());
    s->option_defaults()->always_capture_default();
    s->add_option("--config", opts[name].config, "JSON file of flag values");
    return s;
  };

  {
    CLI::App* s = make("condition", "condition number kappa_2 of one sample set (CSV row)");
    Builder b(names, opts["condition"]);
    b.measure(s);
    b.degree(s);
    b.count(s);
    b.seed(s);
    b.points(s);
    b.out(s);
  }
  {
    CLI::App* s = make("kfun", "K(m+1) = sup_x sum_j L_j(x)^2 (CSV row)");
    Builder b(names, opts["kfun"]);
    b.measure(s);
    b.degree(s);
    b.out(s);
  }
  {
    CLI::App* s = make("sample", "point set, one value per line with 17 significant digits");
    Options& o = opts["sample"];
    Builder b(names, o);
    b.measure(s);
    b.count(s);
    b.seed(s);
    b.add(s, "kind", o.kind, "iid, equidistributed or equispaced");
    s->get_option("--kind")->check(CLI::IsMember({"iid", "equidistributed", "equispaced"}));
    b.out(s);
  }
  {
    CLI::App* s = make("stability-map", "mean kappa over i.i.d. samplings for every m < n (CSV)");
    Builder b(names, opts["stability-map"]);
    b.measure(s);
    b.m_range(s);
    b.n_range(s);
    b.trials(s, "samplings per (m, n) cell");
    b.seed(s);
    b.out(s);
  }
  {
    CLI::App* s = make("orderstats",
                       "Monte Carlo frequency of the order-statistic event and its bound (CSV)");
    Options& o = opts["orderstats"];
    o.trials = 10000;
    Builder b(names, o);
    b.measure(s);
    b.count(s);
    b.big_c(s);
    b.trials(s, "Monte Carlo samplings");
    b.seed(s);
    b.out(s);
  }
  {
    CLI::App* s = make("convergence",
                       "median sup error of least-squares fits at n = round(theta m^(1/tau)) (CSV)");
    Options& o = opts["convergence"];
    o.m_min = 5;
    o.m_max = 30;
    o.trials = 20;
    Builder b(names, o);
    b.measure(s);
    b.m_range(s);
    b.add(s, "tau", o.tau, "rate exponent in (0, 1]; <= 0 selects min(1, 1/(2(1+gamma)))");
    b.add(s, "theta", o.theta, "rate multiplier, > 0");
    b.add(s, "function", o.function, "target: runge, abs, cheb3 or exp");
    b.trials(s, "samplings per degree");
    b.seed(s);
    b.out(s);
  }
  {
    CLI::App* s = make("cohen",
                       "smallest n with K(m+1) <= iota n / ln n, and the frequency of "
                       "|||G - I||| <= 1/2 there (CSV row)");
    Options& o = opts["cohen"];
    Builder b(names, o);
    b.measure(s);
    b.degree(s);
    b.add(s, "r", o.r, "probability exponent r > 0 (target 1 - 2 n^-r)");
    b.trials(s, "Monte Carlo samplings");
    b.seed(s);
    b.out(s);
  }
  {
    CLI::App* s =
        make("witness", "certified witness-polynomial lower bound on B(n, m) (CSV row)");
    Builder b(names, opts["witness"]);
    b.measure(s);
    b.degree(s);
    b.count(s);
    b.seed(s);
    b.big_c(s);
    b.points(s);
    b.out(s);
  }
  {
    CLI::App* s =
        make("b-oracle", "B(n, m) by linear programming over a Chebyshev grid (one number)");
    Options& o = opts["b-oracle"];
    o.m = 2;
    o.n = 3;
    Builder b(names, o);
    b.measure(s);
    b.degree(s);
    b.count(s);
    b.seed(s);
    b.grid(s);
    b.points(s);
    b.out(s);
  }
  {
    CLI::App* s = make("witness-vs-oracle",
                       "witness bound beside the exact B for every m < n and sampling (CSV)");
    Options& o = opts["witness-vs-oracle"];
    o.m_min = 1;
    o.m_max = 8;
    o.n_min = 2;
    o.n_max = 24;
    o.trials = 1;
    Builder b(names, o);
    b.measure(s);
    b.m_range(s);
    b.n_range(s);
    b.trials(s, "samplings per (m, n) cell");
    b.seed(s);
    b.big_c(s);
    b.grid(s);
    b.out(s);
  }

  std::vector<std::string> args = normalized_args(argc, argv);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const Options& o = opts[name];
    if (!o.config.empty()) {
      apply_config(sub, o.config, names);
    }
    if (name == "condition") {
      cmd_condition(sub, o, out);
    } else if (name == "kfun") {
      cmd_kfun(o, out);
    } else if (name == "sample") {
      cmd_sample(o, out);
    } else if (name == "stability-map") {
      cmd_stability_map(o, out);
    } else if (name == "orderstats") {
      cmd_orderstats(o, out);
    } else if (name == "convergence") {
      cmd_convergence(o, out);
    } else if (name == "cohen") {
      cmd_cohen(o, out);
    } else if (name == "witness") {
      cmd_witness(sub, o, out);
    } else if (name == "b-oracle") {
      cmd_b_oracle(sub, o, out);
    } else {
      cmd_witness_vs_oracle(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 2;
  }
  out.flush();
  return 0;
}

}  // namespace lsqstab::cli
