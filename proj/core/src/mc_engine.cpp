#include "ugof/mc_engine.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ugof/classical_tests.hpp"
#include "ugof/parallel.hpp"
#include "ugof/pearson.hpp"
#include "ugof/t_statistic.hpp"

namespace ugof {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": not a number: \"" + s + "\"");
  }
  return v;
}

// Statistics of every requested test for `count` replicates of size n;
// slot r * m + k holds test k of replicate r.
std::vector<double> simulate(const StudyConfig& config,
                             const AlternativeSpec& source, NullFamily family,
                             int n, std::uint64_t seed) {
  const std::size_t m = config.tests.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<double> stats(reps * m);
  parallel_for(reps, config.workers, [&](std::size_t r) {
    RngStream rng = rng_substream(seed, r);
    std::vector<double> draws(static_cast<std::size_t>(n));
    sample_into(source, draws, rng);
    const UnitSample u = null_transform(family, Sample(std::move(draws)));
    const std::vector<double> sorted = u.sorted();
    for (std::size_t k = 0; k < m; ++k) {
      stats[r * m + k] = statistic_sorted(config.tests[k], sorted);
    }
  });
  return stats;
}

std::uint64_t critval_seed(const StudyConfig& config, int n) {
  const std::string key =
      "critval|" + std::string(null_family_name(config.family)) + "|" +
      std::to_string(n);
  return cell_seed(config.master_seed, cell_salt(key));
}

std::uint64_t power_seed(const StudyConfig& config, const std::string& label,
                         int n) {
  const std::string key = "power|" +
                          std::string(null_family_name(config.family)) + "|" +
                          label + "|" + std::to_string(n);
  return cell_seed(config.master_seed, cell_salt(key));
}

bool is_builtin_beta(const AlternativeSpec& alt, double a, double b) {
  return alt.family() == Family::beta && !alt.translate_by_one() &&
         alt.params()[0] == a && alt.params()[1] == b;
}

}  // namespace

void validate(const StudyConfig& config) {
  if (config.replications < 100) {
    throw std::invalid_argument("replications must be at least 100");
  }
  if (config.sizes.empty()) throw std::invalid_argument("no sample sizes given");
  for (int n : config.sizes) {
    if (n < 1) throw std::invalid_argument("sample sizes must be positive");
  }
  if (config.alphas.empty()) throw std::invalid_argument("no alpha levels given");
  for (double a : config.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (config.tests.empty()) throw std::invalid_argument("no tests selected");
  if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

const StudyCell* StudyResult::find(TestId test, int n, double alpha,
                                   std::optional<std::string> alternative) const {
  for (const StudyCell& c : cells) {
    if (c.test == test && c.n == n && std::abs(c.alpha - alpha) < 1e-12 &&
        (!alternative || c.alternative == *alternative)) {
      return &c;
    }
  }
  return nullptr;
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of no values");
  const double r = static_cast<double>(sorted.size());
  const double h = std::clamp(r * p, 1.0, r);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= sorted.size()) return sorted.back();
  return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

StudyResult estimate_critical_values(const StudyConfig& config) {
  validate(config);
  const auto start = Clock::now();
  const AlternativeSpec member = standard_member(config.family);
  const std::size_t m = config.tests.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  const double rd = static_cast<double>(reps);

  StudyResult result;
  result.seed = config.master_seed;
  result.replications = config.replications;
  for (int n : config.sizes) {
    const std::vector<double> stats =
        simulate(config, member, config.family, n, critval_seed(config, n));
    std::vector<double> column(reps);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t r = 0; r < reps; ++r) column[r] = stats[r * m + k];
      std::sort(column.begin(), column.end());
      for (double alpha : config.alphas) {
        const double p = 1.0 - alpha;
        const double band = std::sqrt(p * (1.0 - p) / rd);
        StudyCell cell;
        cell.test = config.tests[k];
        cell.alternative = std::string(null_family_name(config.family));
        cell.n = n;
        cell.alpha = alpha;
        cell.estimate = empirical_quantile(column, p);
        cell.mc_se = 0.5 * (empirical_quantile(column, std::min(1.0, p + band)) -
                            empirical_quantile(column, std::max(0.0, p - band)));
        result.cells.push_back(cell);
      }
    }
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

StudyResult estimate_power(const StudyConfig& config,
                           const StudyResult& critical_values) {
  validate(config);
  if (config.alternatives.empty()) {
    throw std::invalid_argument("no alternatives given");
  }
  const auto start = Clock::now();
  const std::size_t m = config.tests.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  const double rd = static_cast<double>(reps);

  // Resolve every critical value before simulating.
  std::map<std::tuple<int, int, std::size_t>, double> crit;
  for (int n : config.sizes) {
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      for (std::size_t k = 0; k < m; ++k) {
        const StudyCell* c =
            critical_values.find(config.tests[k], n, config.alphas[a]);
        if (!c) {
          throw std::invalid_argument(
              "missing critical value for " +
              std::string(test_name(config.tests[k])) + " at n=" +
              std::to_string(n) + ", alpha=" + number_text(config.alphas[a]));
        }
        crit[{n, static_cast<int>(a), k}] = c->estimate;
      }
    }
  }

  StudyResult result;
  result.seed = config.master_seed;
  result.replications = config.replications;
  for (const AlternativeSpec& alt : config.alternatives) {
    const std::string label = alt.label();
    for (int n : config.sizes) {
      const std::vector<double> stats =
          simulate(config, alt, config.family, n, power_seed(config, label, n));
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
          const double c = crit.at({n, static_cast<int>(a), k});
          std::size_t rejects = 0;
          for (std::size_t r = 0; r < reps; ++r) {
            if (stats[r * m + k] > c) ++rejects;
          }
          const double p = static_cast<double>(rejects) / rd;
          result.cells.push_back({config.tests[k], label, n, config.alphas[a], p,
                                  std::sqrt(p * (1.0 - p) / rd)});
        }
      }
    }
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

AlternativeTheorySpec theory_for(const AlternativeSpec& alt) {
  if (alt.family() == Family::uniform && !alt.translate_by_one()) {
    return uniform_theory_spec();
  }
  const std::vector<AlternativeTheorySpec> builtin = builtin_beta_specs();
  const double shapes[4][2] = {{2, 2}, {2, 3}, {1, 0.5}, {0.5, 0.5}};
  for (std::size_t i = 0; i < 4; ++i) {
    if (is_builtin_beta(alt, shapes[i][0], shapes[i][1])) return builtin[i];
  }
  if (alt.family() == Family::beta && !alt.translate_by_one()) {
    return beta_theory_spec(alt.params()[0], alt.params()[1]);
  }
  if (cdf(alt, 0.0) != 0.0 || cdf(alt, 1.0) != 1.0) {
    throw std::invalid_argument("power theory needs an alternative on [0,1]; got " +
                                alt.label());
  }
  return theory_spec_from_cdf(alt.label(), [alt](double x) { return cdf(alt, x); });
}

PowerCurve run_power_curve(const StudyConfig& config) {
  validate(config);
  if (config.alternatives.empty()) throw std::invalid_argument("no alternative given");
  const AlternativeSpec& alt = config.alternatives.front();
  const AlternativeTheorySpec theory = theory_for(alt);
  const double alpha = config.alphas.front();
  const double c = pearson_quantile(pearson_fit(cumulants_closed()), 1.0 - alpha);

  StudyConfig tn_only = config;
  tn_only.tests = {TestId::t_n};
  const std::vector<double> crit(config.sizes.size(), c);
  PowerCurve curve = power_curve(theory, alpha, config.sizes, crit);

  const double rd = static_cast<double>(config.replications);
  std::vector<double> emp;
  std::vector<double> se;
  for (int n : config.sizes) {
    const std::vector<double> stats = simulate(
        tn_only, alt, NullFamily::uniform, n, power_seed(tn_only, alt.label(), n));
    const auto rejects = std::count_if(stats.begin(), stats.end(),
                                       [c](double t) { return t > c; });
    const double p = static_cast<double>(rejects) / rd;
    emp.push_back(p);
    se.push_back(std::sqrt(p * (1.0 - p) / rd));
  }
  curve.empirical_power = std::move(emp);
  curve.mc_se = std::move(se);
  return curve;
}

void write_csv(std::ostream& out, const StudyResult& result) {
  out << "test,alternative,n,alpha,estimate,mc_se,replications,seed\n";
  for (const StudyCell& c : result.cells) {
    out << test_name(c.test) << ',' << csv_field(c.alternative) << ',' << c.n
        << ',' << number_text(c.alpha) << ',' << number_text(c.estimate) << ','
        << number_text(c.mc_se) << ',' << result.replications << ','
        << result.seed << '\n';
  }
}

StudyResult read_csv(std::istream& in) {
  StudyResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (header) {
      header = false;
      if (f.size() != 8 || f[0] != "test") {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": expected the study CSV header");
      }
      continue;
    }
    if (f.size() != 8) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 8 fields, got " +
                                  std::to_string(f.size()));
    }
    const std::optional<TestId> id = parse_test_id(f[0]);
    if (!id) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": unknown test \"" + f[0] + "\"");
    }
    StudyCell c;
    c.test = *id;
    c.alternative = f[1];
    c.n = static_cast<int>(parse_double(f[2], line_no));
    c.alpha = parse_double(f[3], line_no);
    c.estimate = parse_double(f[4], line_no);
    c.mc_se = parse_double(f[5], line_no);
    result.replications = static_cast<int>(parse_double(f[6], line_no));
    result.seed = std::stoull(f[7]);
    result.cells.push_back(std::move(c));
  }
  if (header) throw std::invalid_argument("empty study CSV");
  return result;
}

void write_table(std::ostream& out, const StudyResult& result, StudyMode mode) {
  std::vector<int> sizes;
  std::vector<double> alphas;
  std::vector<TestId> tests;
  std::vector<std::string> alts;
  for (const StudyCell& c : result.cells) {
    if (std::find(sizes.begin(), sizes.end(), c.n) == sizes.end()) sizes.push_back(c.n);
    if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) {
      alphas.push_back(c.alpha);
    }
    if (std::find(tests.begin(), tests.end(), c.test) == tests.end()) {
      tests.push_back(c.test);
    }
    if (std::find(alts.begin(), alts.end(), c.alternative) == alts.end()) {
      alts.push_back(c.alternative);
    }
  }

  if (mode == StudyMode::critical_values) {
    for (TestId t : tests) {
      out << test_name(t) << '\n' << std::setw(10) << "alpha";
      for (int n : sizes) out << std::setw(9) << n;
      out << '\n';
      for (double a : alphas) {
        out << std::setw(10) << number_text(a);
        for (int n : sizes) {
          const StudyCell* c = result.find(t, n, a);
          out << std::setw(9);
          if (c) {
            std::ostringstream v;
            v << std::fixed << std::setprecision(3) << c->estimate;
            out << v.str();
          } else {
            out << "-";
          }
        }
        out << '\n';
      }
      out << '\n';
    }
    return;
  }

  std::size_t width = 12;
  for (const auto& a : alts) width = std::max(width, a.size() + 2);
  for (double a : alphas) {
    for (int n : sizes) {
      out << "n = " << n << ", alpha = " << number_text(a) << '\n';
      out << std::left << std::setw(static_cast<int>(width)) << "alternative"
          << std::right;
      for (TestId t : tests) out << std::setw(5) << test_name(t);
      out << '\n';
      for (const std::string& alt : alts) {
        out << std::left << std::setw(static_cast<int>(width)) << alt << std::right;
        for (TestId t : tests) {
          const StudyCell* c = result.find(t, n, a, alt);
          out << std::setw(5);
          if (c) {
            out << static_cast<long>(std::lround(100.0 * c->estimate));
          } else {
            out << "-";
          }
        }
        out << '\n';
      }
      out << '\n';
    }
  }
}

std::vector<AlternativeSpec> table_alternatives(NullFamily family) {
  static const char* const kUniform[] = {
      "uniform",        "beta(2,2)",      "beta(2,3)",
      "beta(1,0.5)",    "beta(0.5,0.5)",  "tn(0,0.5)",
      "tn(0,1)",        "tn(0.25,0.5)",   "k(1,1.5)",
      "k(1.5,1)",       "k(1.5,2.5)",     "mix(0.75,beta(2,3),uniform)",
      "mix(0.75,beta(1,0.5),uniform)",    "mix(0.75,tn(0,0.5),uniform)",
      "mix(0.75,tn(0.25,0.25),uniform)",  "mix(0.75,k(1.5,1),uniform)",
      "mix(0.75,k(2,1),uniform)",         "s1(0.7)",
      "s1(1.5)",        "s2(0.7)",        "s2(1.5)",
      "s3(0.7)",        "s3(1.5)"};
  static const char* const kNormal[] = {
      "z",           "n(3,1)",         "n(0,9)",         "n(3,9)",
      "t(3)",        "t(5)",           "t(10)",          "mix(0.5,z,n(1,4))",
      "mix(0.5,z,n(1,9))",             "mix(0.5,z,n(2,4))",
      "sn(2)",       "sn(2.5)",        "sn(3)",          "tn(-1,1)",
      "tn(-2,1)",    "tn(-2.5,1.5)",   "chisq(5)",       "chisq(10)",
      "chisq(15)",   "beta(2,1.5)",    "beta(2.5,2)",    "beta(3,2)",
      "hn(1)"};
  static const char* const kPareto[] = {
      "p(0.5)",      "p(1)",           "p(2)",           "p(5)",
      "gamma(0.7)+1", "gamma(0.8)+1",  "gamma(1)+1",     "w(0.7)+1",
      "w(0.8)+1",    "w(0.9)+1",       "lfr(0.2)+1",     "lfr(0.5)+1",
      "lfr(1)+1",    "eg(0.3)+1",      "eg(0.4)+1",
      "mix(0.75,gamma(0.7)+1,p)",      "mix(0.75,gamma(0.8)+1,p)",
      "mix(0.75,gamma(1)+1,p)",        "mix(0.75,w(0.7)+1,p)",
      "mix(0.75,w(0.8)+1,p)",          "mix(0.75,w(0.9)+1,p)",
      "mix(0.75,lfr(0.2)+1,p)",        "mix(0.75,lfr(0.5)+1,p)"};

  std::vector<AlternativeSpec> out;
  auto add = [&out](const auto& list) {
    for (const char* s : list) out.push_back(parse_alternative(s));
  };
  switch (family) {
    case NullFamily::uniform: add(kUniform); break;
    case NullFamily::normal: add(kNormal); break;
    case NullFamily::pareto: add(kPareto); break;
  }
  return out;
}

}  // namespace ugof
