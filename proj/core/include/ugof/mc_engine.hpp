#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugof/alternative_theory.hpp"
#include "ugof/composite.hpp"
#include "ugof/distributions.hpp"
#include "ugof/sample.hpp"

namespace ugof {

enum class StudyMode { critical_values, power, size, power_curve };

struct StudyConfig {
  StudyMode mode = StudyMode::critical_values;
  std::vector<TestId> tests{kAllTests.begin(), kAllTests.end()};
  NullFamily family = NullFamily::uniform;
  std::vector<AlternativeSpec> alternatives;
  std::vector<int> sizes;
  std::vector<double> alphas{0.05};
  int replications = 100000;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

/// Throws std::invalid_argument unless replications >= 100, every alpha is
/// in (0,1), sizes are positive and non-empty, and tests are non-empty.
void validate(const StudyConfig& config);

struct StudyCell {
  TestId test = TestId::t_n;
  /// Null family name for critical values, alternative label for powers.
  std::string alternative;
  int n = 0;
  double alpha = 0.0;
  double estimate = 0.0;
  double mc_se = 0.0;
};

struct StudyResult {
  std::vector<StudyCell> cells;
  std::uint64_t seed = 0;
  int replications = 0;
  double wall_seconds = 0.0;

  /// First cell matching (test, n, alpha) within 1e-12 on alpha, optionally
  /// restricted to one alternative label.
  const StudyCell* find(TestId test, int n, double alpha,
                        std::optional<std::string> alternative = {}) const;
};

/// Quantile at probability p from an ascending array: linear interpolation
/// at the 1-based position h = R p, clamped to [1, R]. For a critical value
/// p = 1 - alpha.
double empirical_quantile(std::span<const double> sorted, double p);

/// Monte Carlo (1 - alpha)-quantiles of each test's null statistic for each
/// n. Composite families simulate the standard member, then estimate and
/// transform. Replicate r of a cell uses
///   rng_substream(cell_seed(master_seed, cell_salt(family + n)), r).
/// mc_se is half the width of the order-statistic band
/// x_(R(p +/- sqrt(p(1-p)/R))).
StudyResult estimate_critical_values(const StudyConfig& config);

/// Rejection frequencies for each (alternative, n, test, alpha) against the
/// supplied critical values; mc_se = sqrt(p(1-p)/R). Throws
/// std::invalid_argument when a needed critical value is missing.
StudyResult estimate_power(const StudyConfig& config,
                           const StudyResult& critical_values);

/// Empirical T_n power of alternatives[0] under the uniform null at every
/// size, paired with the normal approximation. c_n is the Pearson-system
/// quantile of the limit law at alphas[0], for every n. The alternative
/// must be a Beta (closed-form theory) or supported on [0,1].
PowerCurve run_power_curve(const StudyConfig& config);

/// Theory ingredients for a catalog alternative on [0,1].
AlternativeTheorySpec theory_for(const AlternativeSpec& alternative);

/// CSV with header test,alternative,n,alpha,estimate,mc_se,replications,seed.
/// Doubles are printed in shortest round-trip form, so the output is a
/// pure function of the result.
void write_csv(std::ostream& out, const StudyResult& result);
StudyResult read_csv(std::istream& in);

/// Paper-style layout. Critical values: one row per alpha, one column per
/// n. Powers: one block per n, rows = alternatives, columns = tests,
/// entries in rounded percent.
void write_table(std::ostream& out, const StudyResult& result,
                 StudyMode mode);

/// Rows of the published power tables for each null family.
std::vector<AlternativeSpec> table_alternatives(NullFamily family);

}  // namespace ugof
