#include "vrteh/estimation.hpp"

#include <cmath>
#include <string>

#include "vrteh/errors.hpp"
#include "vrteh/gaussian.hpp"

namespace vrteh {

namespace {

void check_arm(const ArmSummary& arm, const char* which) {
  if (arm.n < 2) {
    throw domain_error(std::string("ln_vr: ") + which +
                       " arm needs at least 2 units");
  }
  if (!(arm.sd >= 0.0) || !std::isfinite(arm.sd)) {
    throw domain_error(std::string("ln_vr: ") + which +
                       " arm sd must be finite and >= 0");
  }
  if (arm.sd == 0.0) {
    throw domain_error(std::string("ln_vr: degenerate ") + which +
                       " arm (sd is zero)");
  }
}

}  // namespace

double sample_sd(std::span<const double> values, int denominator_offset) {
  if (denominator_offset != 0 && denominator_offset != 1) {
    throw domain_error("sample_sd: denominator_offset must be 0 or 1");
  }
  const auto n = static_cast<long long>(values.size());
  if (n < denominator_offset + 1 || (denominator_offset == 1 && n < 2)) {
    throw domain_error("sample_sd: not enough values for the requested "
                       "denominator");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - denominator_offset));
}

double ln_vr_point(const ArmSummary& treat, const ArmSummary& ctrl) {
  check_arm(treat, "treatment");
  check_arm(ctrl, "control");
  return std::log(treat.sd / ctrl.sd) +
         1.0 / (2.0 * static_cast<double>(treat.n - 1)) -
         1.0 / (2.0 * static_cast<double>(ctrl.n - 1));
}

double ln_vr_se(long long treat_n, long long ctrl_n) {
  if (treat_n < 2 || ctrl_n < 2) {
    throw domain_error("ln_vr_se: both arms need at least 2 units");
  }
  return std::sqrt(1.0 / (2.0 * static_cast<double>(treat_n - 1)) +
                   1.0 / (2.0 * static_cast<double>(ctrl_n - 1)));
}

VrEstimate estimate(const ArmSummary& treat, const ArmSummary& ctrl,
                    double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw domain_error("estimate: ci_level must lie in (0, 1)");
  }
  VrEstimate e;
  e.ln_vr = ln_vr_point(treat, ctrl);
  e.se_ln_vr = ln_vr_se(treat.n, ctrl.n);
  e.vr = std::exp(e.ln_vr);
  e.ci_level = ci_level;
  const double z = normal_quantile(0.5 * (1.0 + ci_level));
  e.ci_low = std::exp(e.ln_vr - z * e.se_ln_vr);
  e.ci_high = std::exp(e.ln_vr + z * e.se_ln_vr);
  return e;
}

VrEstimate estimate_from_raw(std::span<const double> treat_values,
                             std::span<const double> ctrl_values,
                             double ci_level) {
  ArmSummary treat{static_cast<long long>(treat_values.size()),
                   sample_sd(treat_values, 1)};
  ArmSummary ctrl{static_cast<long long>(ctrl_values.size()),
                  sample_sd(ctrl_values, 1)};
  return estimate(treat, ctrl, ci_level);
}

}  // namespace vrteh
