#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ugof/alternative_theory.hpp"
#include "ugof/classical_tests.hpp"
#include "ugof/composite.hpp"
#include "ugof/distributions.hpp"
#include "ugof/mc_engine.hpp"
#include "ugof/null_theory.hpp"
#include "ugof/pearson.hpp"
#include "ugof/sample.hpp"

namespace ugof {
namespace {

constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_number(const std::string& s, double& v) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() &&
         std::isfinite(v);
}

// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    double v = 0.0;
    if (!parse_number(t, v)) {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": cannot parse \"" + t + "\" as a finite number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(path + ": no values");
  return values;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, std::string_view what) {
  double v = 0.0;
  if (!parse_number(s, v)) {
    throw UsageError(std::string(what) + ": \"" + s + "\" is not a number");
  }
  return v;
}

int to_int(const std::string& s, std::string_view what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || v < 1 || v > 1e9) {
    throw UsageError(std::string(what) + ": \"" + s + "\" is not a positive integer");
  }
  return static_cast<int>(v);
}

/// "10,20,50" or the range "10:200:10".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range must look like from:to:step");
    const int from = to_int(parts[0], "range start");
    const int to = to_int(parts[1], "range end");
    const int step = to_int(parts[2], "range step");
    for (int n = from; n <= to; n += step) out.push_back(n);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(to_int(p, "sample size"));
  }
  if (out.empty()) throw UsageError("no sample sizes");
  return out;
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(to_double(p, "alpha"));
  return out;
}

void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  write(file);
}

struct StudyFlags {
  std::string tests = "all";
  std::string alphas;
  int reps = 0;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
};

void add_study_flags(CLI::App* cmd, StudyFlags& f) {
  cmd->add_option("--tests", f.tests, "comma-separated tests or 'all'")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--workers", f.workers, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "output file (default stdout)");
}

// ---------------------------------------------------------------- test

struct TestFlags {
  std::string data;
  std::string null = "uniform";
  double alpha = 0.05;
  std::string critvals = "mc";
  StudyFlags study;
};

int cmd_test(const TestFlags& f, std::ostream& out) {
  const Sample x(read_values(f.data));
  const std::vector<TestId> tests = parse_test_list(f.study.tests);
  if (!(f.alpha > 0.0 && f.alpha < 1.0)) throw UsageError("alpha must lie in (0,1)");

  // A family name selects a composite (or the uniform) null; anything else
  // is read as a fully specified distribution whose cdf is applied.
  NullFamily family = NullFamily::uniform;
  std::optional<AlternativeSpec> simple;
  try {
    family = parse_null_family(f.null);
  } catch (const std::invalid_argument&) {
    simple = parse_alternative(f.null);
  }
  const UnitSample u =
      simple ? transform(x, [&](double v) { return cdf(*simple, v); })
             : null_transform(family, x);
  const int n = static_cast<int>(u.size());
  const std::vector<double> sorted = u.sorted();

  std::map<TestId, std::pair<double, std::string>> crit;
  if (f.critvals == "mc" || f.critvals == "pearson") {
    StudyConfig cfg;
    cfg.tests = tests;
    cfg.family = family;
    cfg.sizes = {n};
    cfg.alphas = {f.alpha};
    cfg.replications = f.study.reps;
    cfg.master_seed = f.study.seed;
    cfg.workers = f.study.workers;
    const StudyResult r = estimate_critical_values(cfg);
    for (const StudyCell& c : r.cells) crit[c.test] = {c.estimate, "mc"};
    if (f.critvals == "pearson") {
      if (family != NullFamily::uniform) {
        throw UsageError("--critvals pearson applies to simple nulls only");
      }
      crit[TestId::t_n] = {
          pearson_quantile(pearson_fit(cumulants_closed()), 1.0 - f.alpha),
          "pearson"};
    }
  } else {
    std::ifstream in(f.critvals);
    if (!in) throw UsageError("cannot open critical-value file " + f.critvals);
    const StudyResult r = read_csv(in);
    for (TestId id : tests) {
      if (const StudyCell* c = r.find(id, n, f.alpha)) {
        crit[id] = {c->estimate, "file"};
      }
    }
  }

  out << "null: " << (simple ? simple->label() : std::string(null_family_name(family)))
      << ", n = " << n << ", alpha = " << number_text(f.alpha) << '\n';
  out << std::left << std::setw(6) << "test" << std::right << std::setw(14)
      << "statistic" << std::setw(14) << "critical" << std::setw(9) << "source"
      << std::setw(10) << "decision" << '\n';
  std::optional<bool> tn_reject;
  bool any_reject = false;
  for (TestId id : tests) {
    TestOutcome o;
    o.test_id = id;
    try {
      o.statistic = statistic_sorted(id, sorted);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    const auto it = crit.find(id);
    if (!o.error && it != crit.end()) o.decide_by_critical_value(it->second.first);
    out << std::left << std::setw(6) << test_name(id) << std::right;
    if (o.error) {
      out << "  error: " << *o.error << '\n';
      continue;
    }
    std::ostringstream stat;
    stat << std::setprecision(6) << o.statistic;
    out << std::setw(14) << stat.str();
    if (o.critical_value) {
      std::ostringstream cv;
      cv << std::setprecision(6) << *o.critical_value;
      out << std::setw(14) << cv.str() << std::setw(9) << it->second.second
          << std::setw(10) << (*o.reject ? "reject" : "retain");
      any_reject = any_reject || *o.reject;
      if (id == TestId::t_n) tn_reject = *o.reject;
    } else {
      out << std::setw(14) << "-" << std::setw(9) << "missing" << std::setw(10)
          << "-";
    }
    out << '\n';
  }
  if (tn_reject) return *tn_reject ? 1 : 0;
  return any_reject ? 1 : 0;
}

// ------------------------------------------------------------- critval

struct CritvalFlags {
  std::string family = "uniform";
  std::string sizes;
  bool table = false;
  StudyFlags study;
};

StudyConfig base_config(const StudyFlags& f, const std::string& family,
                        const std::string& sizes) {
  StudyConfig cfg;
  cfg.tests = parse_test_list(f.tests);
  cfg.family = parse_null_family(family);
  cfg.sizes = parse_sizes(sizes);
  cfg.alphas = parse_alphas(f.alphas);
  cfg.replications = f.reps;
  cfg.master_seed = f.seed;
  cfg.workers = f.workers;
  return cfg;
}

int cmd_critval(const CritvalFlags& f, std::ostream& out) {
  StudyConfig cfg = base_config(f.study, f.family, f.sizes);
  cfg.mode = StudyMode::critical_values;
  const StudyResult r = estimate_critical_values(cfg);
  emit(f.study.out, out, [&](std::ostream& o) {
    if (f.table) {
      write_table(o, r, StudyMode::critical_values);
    } else {
      write_csv(o, r);
    }
  });
  return 0;
}

// --------------------------------------------------------------- power

struct PowerFlags {
  std::string family = "uniform";
  std::vector<std::string> alts;
  std::string sizes = "30,50";
  int cv_reps = 100000;
  std::string critvals;
  bool table = false;
  StudyFlags study;
};

int cmd_power(const PowerFlags& f, std::ostream& out) {
  StudyConfig cfg = base_config(f.study, f.family, f.sizes);
  cfg.mode = StudyMode::power;
  if (f.alts.empty() || (f.alts.size() == 1 && f.alts[0] == "table")) {
    cfg.alternatives = table_alternatives(cfg.family);
  } else {
    for (const auto& a : f.alts) cfg.alternatives.push_back(parse_alternative(a));
  }

  StudyResult crit;
  if (!f.critvals.empty()) {
    std::ifstream in(f.critvals);
    if (!in) throw UsageError("cannot open critical-value file " + f.critvals);
    crit = read_csv(in);
  } else {
    StudyConfig cv = cfg;
    cv.mode = StudyMode::critical_values;
    cv.replications = f.cv_reps;
    crit = estimate_critical_values(cv);
  }
  const StudyResult r = estimate_power(cfg, crit);
  emit(f.study.out, out, [&](std::ostream& o) {
    if (f.table) {
      write_table(o, r, StudyMode::power);
    } else {
      write_csv(o, r);
    }
  });
  return 0;
}

// --------------------------------------------------------------- curve

struct CurveFlags {
  std::string alt;
  std::string range = "10:200:10";
  double alpha = 0.05;
  StudyFlags study;
};

int cmd_curve(const CurveFlags& f, std::ostream& out) {
  StudyConfig cfg;
  cfg.mode = StudyMode::power_curve;
  cfg.tests = {TestId::t_n};
  cfg.alternatives = {parse_alternative(f.alt)};
  cfg.sizes = parse_sizes(f.range);
  cfg.alphas = {f.alpha};
  cfg.replications = f.study.reps;
  cfg.master_seed = f.study.seed;
  cfg.workers = f.study.workers;
  const PowerCurve curve = run_power_curve(cfg);
  emit(f.study.out, out, [&](std::ostream& o) { write_power_curve_csv(o, curve); });
  return 0;
}

// ----------------------------------------------------------- bootstrap

struct BootstrapFlags {
  std::string data;
  std::string family;
  int B = 999;
  StudyFlags study;
};

int cmd_bootstrap(const BootstrapFlags& f, std::ostream& out) {
  const Sample x(read_values(f.data));
  const NullFamily family = parse_null_family(f.family);
  const std::vector<TestId> tests = parse_test_list(f.study.tests);
  const std::vector<BootstrapResult> res =
      bootstrap_pvalues(family, tests, x, f.B, f.study.seed, f.study.workers);
  emit(f.study.out, out, [&](std::ostream& o) {
    o << "test,statistic,p_value,replications,seed\n";
    for (const auto& r : res) {
      o << test_name(r.test) << ',' << number_text(r.observed_statistic) << ','
        << number_text(r.p_value) << ',' << r.replications << ',' << f.study.seed
        << '\n';
    }
  });
  return 0;
}

// ------------------------------------------------------------ spectrum

struct SpectrumFlags {
  int order = 512;
  int count = 10;
  std::string out;
};

int cmd_spectrum(const SpectrumFlags& f, std::ostream& out) {
  const NystromSpectrum s = nystrom_spectrum(f.order);
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(f.count),
                                           s.eigenvalues.size());
  emit(f.out, out, [&](std::ostream& o) {
    o << "index,eigenvalue\n";
    for (std::size_t i = 0; i < count; ++i) {
      o << i + 1 << ',' << number_text(s.eigenvalues[i]) << '\n';
    }
  });
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Goodness-of-fit tests built on a characterisation of uniformity"};
  app.name("ugof");
  app.require_subcommand(1);
  app.footer(std::string(alternative_grammar()));

  TestFlags test_f;
  test_f.study.reps = 10000;
  auto* test_cmd = app.add_subcommand("test", "run the test battery on a data file");
  test_cmd->add_option("data", test_f.data, "file with one value per line")->required();
  test_cmd->add_option("--null", test_f.null,
                       "uniform, normal, pareto or a distribution spec")
      ->capture_default_str();
  test_cmd->add_option("--alpha", test_f.alpha)->capture_default_str();
  test_cmd->add_option("--critvals", test_f.critvals, "mc, pearson or a critval CSV")
      ->capture_default_str();
  test_cmd->add_option("--reps", test_f.study.reps, "replications for mc critical values")
      ->capture_default_str();
  add_study_flags(test_cmd, test_f.study);

  CritvalFlags cv_f;
  cv_f.study.reps = 100000;
  cv_f.study.alphas = "0.1,0.05,0.01";
  auto* cv_cmd = app.add_subcommand("critval", "Monte Carlo critical values");
  cv_cmd->add_option("--family", cv_f.family, "uniform, normal or pareto")
      ->capture_default_str();
  cv_cmd->add_option("--n", cv_f.sizes, "sizes, e.g. 10,20,50 or 10:100:10")->required();
  cv_cmd->add_option("--alpha", cv_f.study.alphas)->capture_default_str();
  cv_cmd->add_option("--reps", cv_f.study.reps)->capture_default_str();
  cv_cmd->add_flag("--table", cv_f.table, "print a table instead of CSV");
  add_study_flags(cv_cmd, cv_f.study);

  PowerFlags pw_f;
  pw_f.study.reps = 10000;
  pw_f.study.alphas = "0.05";
  auto* pw_cmd = app.add_subcommand("power", "Monte Carlo rejection rates");
  pw_cmd->add_option("--family", pw_f.family)->capture_default_str();
  pw_cmd->add_option("--alt", pw_f.alts,
                     "alternative spec (repeatable); 'table' or none for the "
                     "published rows");
  pw_cmd->add_option("--n", pw_f.sizes)->capture_default_str();
  pw_cmd->add_option("--alpha", pw_f.study.alphas)->capture_default_str();
  pw_cmd->add_option("--reps", pw_f.study.reps)->capture_default_str();
  pw_cmd->add_option("--cv-reps", pw_f.cv_reps, "replications for critical values")
      ->capture_default_str();
  pw_cmd->add_option("--critvals", pw_f.critvals, "critval CSV instead of simulating");
  pw_cmd->add_flag("--table", pw_f.table, "print a table instead of CSV");
  add_study_flags(pw_cmd, pw_f.study);

  CurveFlags cu_f;
  cu_f.study.reps = 10000;
  auto* cu_cmd = app.add_subcommand("curve", "empirical vs approximate T_n power");
  cu_cmd->add_option("--alt", cu_f.alt, "alternative on [0,1]")->required();
  cu_cmd->add_option("--n-range", cu_f.range)->capture_default_str();
  cu_cmd->add_option("--alpha", cu_f.alpha)->capture_default_str();
  cu_cmd->add_option("--reps", cu_f.study.reps)->capture_default_str();
  add_study_flags(cu_cmd, cu_f.study);

  BootstrapFlags bs_f;
  auto* bs_cmd = app.add_subcommand("bootstrap", "parametric bootstrap p-values");
  bs_cmd->add_option("data", bs_f.data)->required();
  bs_cmd->add_option("--family", bs_f.family, "normal or pareto")->required();
  bs_cmd->add_option("-B", bs_f.B, "bootstrap replicates")->capture_default_str();
  add_study_flags(bs_cmd, bs_f.study);

  SpectrumFlags sp_f;
  auto* sp_cmd = app.add_subcommand("spectrum", "Nystrom eigenvalues of the null kernel");
  sp_cmd->add_option("--order", sp_f.order)->capture_default_str();
  sp_cmd->add_option("--count", sp_f.count)->capture_default_str();
  sp_cmd->add_option("--out", sp_f.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*test_cmd) return cmd_test(test_f, out);
    if (*cv_cmd) return cmd_critval(cv_f, out);
    if (*pw_cmd) return cmd_power(pw_f, out);
    if (*cu_cmd) return cmd_curve(cu_f, out);
    if (*bs_cmd) return cmd_bootstrap(bs_f, out);
    if (*sp_cmd) return cmd_spectrum(sp_f, out);
  } catch (const SpecParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ugof
