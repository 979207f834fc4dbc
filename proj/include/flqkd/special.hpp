#pragma once

namespace flqkd {

/// Complementary error function. Positive-term series below |x| = 2, Lentz
/// continued fraction above; ~1e-14 relative over |x| <= 6.
double erfc(double x);

/// Upper-tail standard normal probability, Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

/// Binary entropy h2(p) in bits with 0 log 0 = 0.
double binary_entropy(double p);

}  // namespace flqkd
