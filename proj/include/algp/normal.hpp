#pragma once

namespace algp {

// Standard normal CDF, absolute error below 1e-12 for |z| <= 8.
double std_normal_cdf(double z);

// Inverse standard normal CDF (Wichura's PPND16 rational approximations).
// Throws DomainError unless 0 < p < 1.
double std_normal_inv_cdf(double p);

}  // namespace algp
