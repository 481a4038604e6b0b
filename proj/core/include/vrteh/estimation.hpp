#pragma once

#include <span>

namespace vrteh {

// Summary of one trial arm: unit count and sample SD of the observed
// responses (n-1 denominator).
struct ArmSummary {
  long long n = 0;
  double sd = 0.0;
};

// Point estimate of the log variability ratio with its standard error and
// a log-normal (Wald on the log scale) confidence interval.
struct VrEstimate {
  double ln_vr = 0.0;
  double se_ln_vr = 0.0;
  double vr = 1.0;
  double ci_level = 0.95;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Sample SD with a selectable denominator: sqrt(sum of squared deviations
// from the mean / (n - denominator_offset)). Offset 1 is the usual
// unbiased-variance convention, offset 0 the population convention.
// Throws domain_error when fewer values are supplied than the chosen
// denominator supports.
double sample_sd(std::span<const double> values, int denominator_offset);

// Bias-corrected point estimate:
//   ln(sd_treat / sd_ctrl) + 1/(2(n_treat-1)) - 1/(2(n_ctrl-1)).
// Arms with sd == 0 are degenerate and rejected.
double ln_vr_point(const ArmSummary& treat, const ArmSummary& ctrl);

// Standard error of ln VR. Note the sum of the two arm terms:
//   sqrt(1/(2(n_treat-1)) + 1/(2(n_ctrl-1))).
// A difference of the terms would be zero for equal arm sizes and negative
// when the control arm is larger, so it cannot serve as a sampling variance.
double ln_vr_se(long long treat_n, long long ctrl_n);

// Full estimate from arm summaries. ci_level must lie in (0, 1); the
// interval is exp(ln_vr -/+ z * se) with z the standard normal quantile at
// (1 + ci_level) / 2.
VrEstimate estimate(const ArmSummary& treat, const ArmSummary& ctrl,
                    double ci_level = 0.95);

// Convenience wrapper: computes each arm's summary with sample_sd
// (offset 1) and forwards to estimate. Constant arms are degenerate.
VrEstimate estimate_from_raw(std::span<const double> treat_values,
                             std::span<const double> ctrl_values,
                             double ci_level = 0.95);

}  // namespace vrteh
