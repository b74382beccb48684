#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugof {

/// Raw observations X_1..X_n. Always non-empty and finite.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Observations mapped to the closed unit interval, U_j = F0(X_j).
class UnitSample {
 public:
  explicit UnitSample(std::vector<double> u);

  std::span<const double> values() const noexcept { return u_; }
  std::size_t size() const noexcept { return u_.size(); }
  double operator[](std::size_t i) const noexcept { return u_[i]; }

  /// Ascending copy of the values.
  std::vector<double> sorted() const;

 private:
  std::vector<double> u_;
};

enum class TestId {
  ks,
  cvm,
  ad,
  watson,
  sherman,
  kuiper,
  quesenberry_miller,
  frosini,
  zhang,
  t_n,
};

inline constexpr std::array<TestId, 10> kAllTests = {
    TestId::ks,      TestId::cvm,    TestId::ad,
    TestId::watson,  TestId::sherman, TestId::kuiper,
    TestId::quesenberry_miller, TestId::frosini, TestId::zhang,
    TestId::t_n};

/// Short column label ("KS", "CvM", ..., "Tn").
std::string_view test_name(TestId id);

/// Accepts the short labels case-insensitively plus a few long aliases
/// ("kolmogorov", "anderson", "zc", ...).
std::optional<TestId> parse_test_id(std::string_view text);

/// Comma-separated list or "all".
std::vector<TestId> parse_test_list(std::string_view text);

struct TestOutcome {
  TestId test_id = TestId::t_n;
  double statistic = 0.0;
  std::optional<double> critical_value;
  std::optional<double> p_value;
  std::optional<bool> reject;
  /// Set when the statistic could not be evaluated; statistic is NaN then.
  std::optional<std::string> error;

  /// Attaches a critical value and the matching decision (reject when the
  /// statistic exceeds it).
  void decide_by_critical_value(double c);
  /// Attaches a p-value in [0,1] and rejects when it is at most alpha.
  void decide_by_p_value(double p, double alpha);
};

/// Probability integral transform. Throws std::domain_error when the cdf
/// returns something outside [0,1].
UnitSample transform(const Sample& sample,
                     const std::function<double(double)>& cdf);

}  // namespace ugof
