#pragma once

namespace vrteh {

// Inverse of the standard normal CDF, computed with Wichura's PPND16
// rational approximation (algorithm AS 241). Absolute error is below
// 1e-15 over the whole open interval, far inside the 1e-9 budget that
// the confidence-interval and sampling code rely on. The evaluation is
// branch-stable, so results are bit-identical across platforms with
// IEEE-754 doubles.
//
// Throws domain_error unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace vrteh
