#include "ugof/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ugof/special_math.hpp"

namespace ugof {
namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::uniform, "uniform", 0},
    {Family::beta, "beta", 2},
    {Family::trunc_normal, "tn", 2},
    {Family::kumaraswamy, "kumaraswamy", 2},
    {Family::stephens1, "stephens1", 1},
    {Family::stephens2, "stephens2", 1},
    {Family::stephens3, "stephens3", 1},
    {Family::weibull, "weibull", 1},
    {Family::gamma, "gamma", 1},
    {Family::skew_normal, "skewnormal", 1},
    {Family::lfr, "lfr", 1},
    {Family::exp_geometric, "expgeom", 1},
    {Family::student_t, "t", 1},
    {Family::chi_square, "chisq", 1},
    {Family::half_normal, "halfnormal", 1},
    {Family::normal, "normal", 2},
    {Family::pareto, "pareto", 1},
};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw std::invalid_argument("mixture has no family entry");
}

void append_number(std::string& s, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, res.ptr);
}

void require(bool ok, std::string_view family, std::string_view what) {
  if (!ok) {
    throw std::invalid_argument(std::string(family) + ": " + std::string(what));
  }
}

double gamma_draw(double shape, RngStream& rng) {
  if (shape < 1.0) {
    // Boost: G(k) = G(k + 1) U^(1/k).
    const double g = gamma_draw(shape + 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Truncated normal on [0, 1]. Works on the upper tail when the interval
// sits far right of mu so the inversion keeps its precision.
double trunc_normal_draw(double mu, double sigma, double u) {
  const double a = -mu / sigma;
  const double b = (1.0 - mu) / sigma;
  double z;
  if (a > 0.0) {
    const double sa = normal_sf(a);
    const double sb = normal_sf(b);
    z = -normal_quantile(sa - u * (sa - sb));
  } else {
    const double fa = normal_cdf(a);
    const double fb = normal_cdf(b);
    z = normal_quantile(fa + u * (fb - fa));
  }
  return std::clamp(mu + sigma * z, 0.0, 1.0);
}

double trunc_normal_cdf(double mu, double sigma, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = -mu / sigma;
  const double b = (1.0 - mu) / sigma;
  const double z = (x - mu) / sigma;
  if (a > 0.0) {
    const double sa = normal_sf(a);
    return (sa - normal_sf(z)) / (sa - normal_sf(b));
  }
  const double fa = normal_cdf(a);
  return (normal_cdf(z) - fa) / (normal_cdf(b) - fa);
}

double draw_base(const AlternativeSpec& spec, RngStream& rng) {
  const auto p = spec.params();
  switch (spec.family()) {
    case Family::uniform:
      return rng.uniform();
    case Family::beta: {
      const double x = gamma_draw(p[0], rng);
      const double y = gamma_draw(p[1], rng);
      return x / (x + y);
    }
    case Family::trunc_normal:
      return trunc_normal_draw(p[0], p[1], rng.uniform());
    case Family::kumaraswamy:
      return std::pow(1.0 - std::pow(1.0 - rng.uniform(), 1.0 / p[1]), 1.0 / p[0]);
    case Family::stephens1:
      return 1.0 - std::pow(1.0 - rng.uniform(), 1.0 / p[0]);
    case Family::stephens2: {
      const double u = rng.uniform();
      return u <= 0.5 ? 0.5 * std::pow(2.0 * u, 1.0 / p[0])
                      : 1.0 - 0.5 * std::pow(2.0 * (1.0 - u), 1.0 / p[0]);
    }
    case Family::stephens3: {
      const double u = rng.uniform();
      return u <= 0.5 ? 0.5 * (1.0 - std::pow(1.0 - 2.0 * u, 1.0 / p[0]))
                      : 0.5 * (1.0 + std::pow(2.0 * u - 1.0, 1.0 / p[0]));
    }
    case Family::weibull:
      return std::pow(-std::log1p(-rng.uniform()), 1.0 / p[0]);
    case Family::gamma:
      return gamma_draw(p[0], rng);
    case Family::skew_normal: {
      const double delta = p[0] / std::sqrt(1.0 + p[0] * p[0]);
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      return delta * std::abs(z1) + std::sqrt(1.0 - delta * delta) * z2;
    }
    case Family::lfr: {
      // Root of x + theta x^2 / 2 = E.
      const double e = -std::log1p(-rng.uniform());
      return 2.0 * e / (1.0 + std::sqrt(1.0 + 2.0 * p[0] * e));
    }
    case Family::exp_geometric: {
      const double u = rng.uniform();
      return std::log((1.0 - p[0] * u) / (1.0 - u));
    }
    case Family::student_t: {
      const double z = rng.normal();
      const double chi2 = 2.0 * gamma_draw(0.5 * p[0], rng);
      return z / std::sqrt(chi2 / p[0]);
    }
    case Family::chi_square:
      return 2.0 * gamma_draw(0.5 * p[0], rng);
    case Family::half_normal:
      return p[0] * std::abs(rng.normal());
    case Family::normal:
      return p[0] + std::sqrt(p[1]) * rng.normal();
    case Family::pareto:
      return std::pow(1.0 - rng.uniform(), -1.0 / p[0]);
    case Family::mixture:
      return rng.uniform() < spec.mixture_weight()
                 ? draw(spec.component_a(), rng)
                 : draw(spec.component_b(), rng);
  }
  return 0.0;
}

double cdf_base(const AlternativeSpec& spec, double x) {
  const auto p = spec.params();
  switch (spec.family()) {
    case Family::uniform:
      return std::clamp(x, 0.0, 1.0);
    case Family::beta:
      return incomplete_beta(p[0], p[1], std::clamp(x, 0.0, 1.0));
    case Family::trunc_normal:
      return trunc_normal_cdf(p[0], p[1], x);
    case Family::kumaraswamy: {
      const double t = std::clamp(x, 0.0, 1.0);
      return 1.0 - std::pow(1.0 - std::pow(t, p[0]), p[1]);
    }
    case Family::stephens1: {
      const double t = std::clamp(x, 0.0, 1.0);
      return 1.0 - std::pow(1.0 - t, p[0]);
    }
    case Family::stephens2: {
      const double t = std::clamp(x, 0.0, 1.0);
      return t <= 0.5 ? 0.5 * std::pow(2.0 * t, p[0])
                      : 1.0 - 0.5 * std::pow(2.0 * (1.0 - t), p[0]);
    }
    case Family::stephens3: {
      const double t = std::clamp(x, 0.0, 1.0);
      return t <= 0.5 ? 0.5 * (1.0 - std::pow(1.0 - 2.0 * t, p[0]))
                      : 0.5 * (1.0 + std::pow(2.0 * t - 1.0, p[0]));
    }
    case Family::weibull:
      return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, p[0]));
    case Family::gamma:
      return x <= 0.0 ? 0.0 : gamma_p(p[0], x);
    case Family::skew_normal:
      return std::clamp(skew_normal_cdf(p[0], x), 0.0, 1.0);
    case Family::lfr:
      return x <= 0.0 ? 0.0 : -std::expm1(-x - 0.5 * p[0] * x * x);
    case Family::exp_geometric: {
      if (x <= 0.0) return 0.0;
      const double e = std::exp(-x);
      return -std::expm1(-x) / (1.0 - p[0] * e);
    }
    case Family::student_t:
      return student_t_cdf(p[0], x);
    case Family::chi_square:
      return x <= 0.0 ? 0.0 : gamma_p(0.5 * p[0], 0.5 * x);
    case Family::half_normal:
      return x <= 0.0 ? 0.0 : 1.0 - 2.0 * normal_sf(x / p[0]);
    case Family::normal:
      return normal_cdf((x - p[0]) / std::sqrt(p[1]));
    case Family::pareto:
      return x <= 1.0 ? 0.0 : -std::expm1(-p[0] * std::log(x));
    case Family::mixture: {
      const double w = spec.mixture_weight();
      return w * cdf(spec.component_a(), x) +
             (1.0 - w) * cdf(spec.component_b(), x);
    }
  }
  return 0.0;
}

// Recursive-descent parser over a lowercased, space-free copy.
class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  AlternativeSpec parse_all() {
    AlternativeSpec spec = term();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return spec;
  }

 private:
  [[noreturn]] void fail(std::string_view what) const {
    throw SpecParseError("cannot parse alternative \"" + s_ + "\" at position " +
                         std::to_string(pos_) + ": " + std::string(what) +
                         "\n" + std::string(alternative_grammar()));
  }

  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a family name");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || !std::isfinite(v)) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  std::vector<double> number_list() {
    std::vector<double> out;
    if (!accept('(')) return out;
    if (accept(')')) return out;
    out.push_back(number());
    while (accept(',')) out.push_back(number());
    expect(')');
    return out;
  }

  AlternativeSpec term() {
    AlternativeSpec spec = primary();
    if (accept('+')) {
      const std::size_t at = pos_;
      const double shift = number();
      if (shift != 1.0) {
        pos_ = at;
        fail("only a shift of +1 is supported");
      }
      spec = spec.translated();
    }
    return spec;
  }

  AlternativeSpec primary() {
    const std::string name = identifier();
    if (name == "mix" || name == "mixture") {
      expect('(');
      const double p = number();
      expect(',');
      AlternativeSpec a = term();
      expect(',');
      AlternativeSpec b = term();
      expect(')');
      return wrap([&] { return AlternativeSpec::mixture(p, a, b); });
    }
    const Family family = resolve(name);
    std::vector<double> params = number_list();
    // Short-hands with default parameters.
    if (params.empty()) {
      if (name == "z") params = {0.0, 1.0};
      if (name == "p") params = {1.0};
    }
    return wrap([&] { return AlternativeSpec::make(family, params); });
  }

  template <class F>
  AlternativeSpec wrap(F&& f) {
    try {
      return f();
    } catch (const SpecParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Family resolve(const std::string& name) {
    struct Alias {
      std::string_view text;
      Family family;
    };
    static constexpr Alias kAliases[] = {
        {"u", Family::uniform},           {"unif", Family::uniform},
        {"k", Family::kumaraswamy},       {"s1", Family::stephens1},
        {"s2", Family::stephens2},        {"s3", Family::stephens3},
        {"w", Family::weibull},           {"sn", Family::skew_normal},
        {"eg", Family::exp_geometric},    {"chi2", Family::chi_square},
        {"hn", Family::half_normal},      {"n", Family::normal},
        {"z", Family::normal},            {"p", Family::pareto},
        {"truncnormal", Family::trunc_normal},
    };
    for (const auto& i : kFamilies) {
      if (i.name == name) return i.family;
    }
    for (const auto& a : kAliases) {
      if (a.text == name) return a.family;
    }
    fail("unknown family \"" + name + "\"");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

AlternativeSpec AlternativeSpec::make(Family family, std::vector<double> params) {
  if (family == Family::mixture) {
    throw std::invalid_argument("use AlternativeSpec::mixture for mixtures");
  }
  const FamilyInfo& fi = info(family);
  if (params.size() != fi.arity) {
    throw std::invalid_argument(std::string(fi.name) + " takes " +
                                std::to_string(fi.arity) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
  for (double v : params) require(std::isfinite(v), fi.name, "parameters must be finite");
  const auto& p = params;
  switch (family) {
    case Family::uniform:
      break;
    case Family::beta:
    case Family::kumaraswamy:
      require(p[0] > 0.0 && p[1] > 0.0, fi.name, "both parameters must be positive");
      break;
    case Family::trunc_normal:
      require(p[1] > 0.0, fi.name, "sigma must be positive");
      break;
    case Family::normal:
      require(p[1] > 0.0, fi.name, "variance must be positive");
      break;
    case Family::lfr:
      require(p[0] >= 0.0, fi.name, "theta must be non-negative");
      break;
    case Family::exp_geometric:
      require(p[0] < 1.0, fi.name, "theta must be below 1");
      break;
    case Family::skew_normal:
      break;
    default:
      require(p[0] > 0.0, fi.name, "parameter must be positive");
      break;
  }
  AlternativeSpec spec;
  spec.family_ = family;
  spec.params_ = std::move(params);
  return spec;
}

AlternativeSpec AlternativeSpec::mixture(double p, AlternativeSpec a,
                                         AlternativeSpec b) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("mix: weight must lie in [0, 1]");
  }
  AlternativeSpec spec;
  spec.family_ = Family::mixture;
  spec.p_ = p;
  spec.a_ = std::make_shared<const AlternativeSpec>(std::move(a));
  spec.b_ = std::make_shared<const AlternativeSpec>(std::move(b));
  return spec;
}

AlternativeSpec AlternativeSpec::translated() const {
  if (translate_) throw std::invalid_argument("spec is already translated by 1");
  AlternativeSpec copy = *this;
  copy.translate_ = true;
  return copy;
}

std::string AlternativeSpec::label() const {
  std::string s;
  if (family_ == Family::mixture) {
    s = "mix(";
    append_number(s, p_);
    s += ',' + a_->label() + ',' + b_->label() + ')';
  } else {
    s = std::string(info(family_).name);
    if (!params_.empty()) {
      s += '(';
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ',';
        append_number(s, params_[i]);
      }
      s += ')';
    }
  }
  if (translate_) s += "+1";
  return s;
}

double draw(const AlternativeSpec& spec, RngStream& stream) {
  const double x = draw_base(spec, stream);
  return spec.translate_by_one() ? x + 1.0 : x;
}

Sample sample(const AlternativeSpec& spec, std::size_t n, RngStream& stream) {
  std::vector<double> out(n);
  sample_into(spec, out, stream);
  return Sample(std::move(out));
}

void sample_into(const AlternativeSpec& spec, std::span<double> out,
                 RngStream& stream) {
  for (double& v : out) v = draw(spec, stream);
}

double cdf(const AlternativeSpec& spec, double x) {
  if (std::isnan(x)) throw std::domain_error("cdf of NaN");
  return cdf_base(spec, spec.translate_by_one() ? x - 1.0 : x);
}

double sampler_goodness(const AlternativeSpec& spec, std::size_t n,
                        RngStream& stream) {
  std::vector<double> x(n);
  sample_into(spec, x, stream);
  std::sort(x.begin(), x.end());
  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(spec, x[i]);
    d = std::max({d, (i + 1) / nd - f, f - i / nd});
  }
  return d;
}

std::string_view alternative_grammar() {
  return R"grammar(alternative grammar:
  spec   := term
  term   := primary [ "+1" ]                 (shift draws by 1)
  primary:= "mix(" p "," term "," term ")"   (A with probability p, else B)
          | family [ "(" number {"," number} ")" ]
  families (aliases):
    uniform (u)               beta(a,b)              tn(mu,sigma) on [0,1]
    kumaraswamy(a,b) (k)      stephens1(k) (s1)      stephens2(k) (s2)
    stephens3(k) (s3)         weibull(theta) (w)     gamma(theta)
    skewnormal(theta) (sn)    lfr(theta)             expgeom(theta) (eg)
    t(dof)                    chisq(dof) (chi2)      halfnormal(scale) (hn)
    normal(mu,variance) (n; z = normal(0,1))         pareto(beta) (p = pareto(1))
  examples: beta(2,3)  mix(0.75,gamma(1)+1,pareto(1))  mix(0.5,z,n(1,4)))grammar";
}

AlternativeSpec parse_alternative(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      cleaned += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (cleaned.empty()) {
    throw SpecParseError("empty alternative\n" + std::string(alternative_grammar()));
  }
  return Parser(std::move(cleaned)).parse_all();
}

}  // namespace ugof
