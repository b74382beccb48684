#include "ugof/sample.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ugof {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("sample value " + std::to_string(i + 1) +
                                  " is not finite");
    }
  }
}

UnitSample::UnitSample(std::vector<double> u) : u_(std::move(u)) {
  if (u_.empty()) throw std::invalid_argument("unit sample is empty");
  for (std::size_t i = 0; i < u_.size(); ++i) {
    // The negated form also rejects NaN.
    if (!(u_[i] >= 0.0 && u_[i] <= 1.0)) {
      throw std::domain_error("unit sample value " + std::to_string(i + 1) +
                              " lies outside [0,1]");
    }
  }
}

std::vector<double> UnitSample::sorted() const {
  std::vector<double> out(u_);
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view test_name(TestId id) {
  switch (id) {
    case TestId::ks: return "KS";
    case TestId::cvm: return "CvM";
    case TestId::ad: return "AD";
    case TestId::watson: return "WA";
    case TestId::sherman: return "S";
    case TestId::kuiper: return "K";
    case TestId::quesenberry_miller: return "QM";
    case TestId::frosini: return "FR";
    case TestId::zhang: return "ZC";
    case TestId::t_n: return "Tn";
  }
  return "?";
}

std::optional<TestId> parse_test_id(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  struct Alias {
    std::string_view name;
    TestId id;
  };
  static constexpr Alias kAliases[] = {
      {"ks", TestId::ks},
      {"kolmogorov", TestId::ks},
      {"cvm", TestId::cvm},
      {"cv", TestId::cvm},
      {"cramer", TestId::cvm},
      {"ad", TestId::ad},
      {"anderson", TestId::ad},
      {"wa", TestId::watson},
      {"w", TestId::watson},
      {"watson", TestId::watson},
      {"s", TestId::sherman},
      {"sherman", TestId::sherman},
      {"k", TestId::kuiper},
      {"kuiper", TestId::kuiper},
      {"qm", TestId::quesenberry_miller},
      {"q", TestId::quesenberry_miller},
      {"quesenberry", TestId::quesenberry_miller},
      {"fr", TestId::frosini},
      {"f", TestId::frosini},
      {"frosini", TestId::frosini},
      {"zc", TestId::zhang},
      {"zhang", TestId::zhang},
      {"tn", TestId::t_n},
      {"t", TestId::t_n},
      {"un", TestId::t_n},
  };
  for (const auto& alias : kAliases) {
    if (alias.name == key) return alias.id;
  }
  return std::nullopt;
}

std::vector<TestId> parse_test_list(std::string_view text) {
  if (text == "all" || text.empty()) {
    return {kAllTests.begin(), kAllTests.end()};
  }
  std::vector<TestId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view token = text.substr(start, comma - start);
    const auto id = parse_test_id(token);
    if (!id) {
      throw std::invalid_argument("unknown test '" + std::string(token) +
                                  "' (expected KS,CvM,AD,WA,S,K,QM,FR,ZC,Tn)");
    }
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    start = comma + 1;
  }
  return out;
}

void TestOutcome::decide_by_critical_value(double c) {
  critical_value = c;
  reject = statistic > c;
}

void TestOutcome::decide_by_p_value(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("p-value outside [0,1]");
  }
  p_value = p;
  reject = p <= alpha;
}

UnitSample transform(const Sample& sample,
                     const std::function<double(double)>& cdf) {
  std::vector<double> u;
  u.reserve(sample.size());
  for (double x : sample.values()) {
    const double v = cdf(x);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("distribution function returned " +
                              std::to_string(v) + " at x = " +
                              std::to_string(x));
    }
    u.push_back(v);
  }
  return UnitSample(std::move(u));
}

}  // namespace ugof
