#pragma once

namespace heatwave {

/// Largest |z| accepted by kummer_1f1; beyond it the series loses the 1e-10 target.
inline constexpr double kKummerMaxAbsZ = 200.0;

/// Confluent hypergeometric 1F1(a; b; z) by its power series (Kummer-transformed for z < 0).
double kummer_1f1(double a, double b, double z);

/// Bessel function of the first kind, integer order, by Miller's backward recurrence.
double bessel_j(int k, double z);

}  // namespace heatwave
