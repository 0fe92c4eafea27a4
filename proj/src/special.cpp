#include "heatwave/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatwave/errors.hpp"
#include "heatwave/numfmt.hpp"

namespace heatwave {

namespace {

constexpr int kMaxTerms = 500;

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Neumaier-compensated power series of 1F1.
double kummer_series(double a, double b, double z) {
    double sum = 1.0, comp = 0.0, term = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) / (b + n) * z / (n + 1.0);
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        if (term == 0.0) return sum + comp;
        const bool decaying = std::abs((a + n + 1.0) / (b + n + 1.0) * z / (n + 2.0)) < 1.0;
        if (decaying && std::abs(term) <= 1e-17 * std::abs(sum + comp)) return sum + comp;
    }
    throw ConvergenceError("1F1 series did not converge within " + std::to_string(kMaxTerms) +
                           " terms (a=" + format_double(a) + ", b=" + format_double(b) +
                           ", z=" + format_double(z) + ")");
}

}  // namespace

double kummer_1f1(double a, double b, double z) {
    if (nonpositive_integer(b)) throw DomainError("1F1 needs b not a nonpositive integer");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("1F1 needs finite arguments");
    if (std::abs(z) > kKummerMaxAbsZ)
        throw DomainError("1F1 argument |z| = " + format_double(std::abs(z)) +
                          " beyond the working range");
    if (z == 0.0) return 1.0;
    if (z < 0.0 && !nonpositive_integer(a)) return std::exp(z) * kummer_series(b - a, b, -z);
    return kummer_series(a, b, z);
}

double bessel_j(int k, double z) {
    if (k < 0) throw DomainError("bessel_j needs k >= 0");
    const double sign = (z < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    const double x = std::abs(z);
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;

    const double big = std::max(static_cast<double>(k), x);
    int start = static_cast<int>(big + 30.0 + std::sqrt(60.0 * big));
    start += start % 2;

    double jp1 = 0.0, j = 1e-300, result = 0.0, norm = 0.0;
    for (int n = start; n >= 1; --n) {
        const double jm1 = 2.0 * n / x * j - jp1;
        jp1 = j;
        j = jm1;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            result *= 1e-250;
            norm *= 1e-250;
        }
        // j now holds J_{n-1} up to a common factor.
        if (n - 1 == k) result = j;
        if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * j;
    }
    norm += j;
    return sign * result / norm;
}

}  // namespace heatwave
