#include "heatwave/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

#include "heatwave/errors.hpp"

namespace heatwave {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(n) * (2 * kl + ku + 1), 0.0) {}

double BandedMatrix::get(int i, int j) const { return in_band(i, j) ? cref(i, j) : 0.0; }

void BandedMatrix::add(int i, int j, double v) {
    if (!in_band(i, j)) throw DomainError("banded matrix entry outside the band");
    ref(i, j) += v;
}

void BandedMatrix::set(int i, int j, double v) {
    if (!in_band(i, j)) throw DomainError("banded matrix entry outside the band");
    ref(i, j) = v;
}

void BandedMatrix::zero_row(int i) {
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) ref(i, j) = 0.0;
}

void BandedMatrix::scale_column(int j, double s) {
    for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i) ref(i, j) *= s;
}

std::vector<double> BandedMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) y[i] += cref(i, j) * x[j];
    return y;
}

std::vector<double> BandedMatrix::solve(std::vector<double> b) const {
    std::vector<double> ab = ab_;
    std::vector<lapack_int> ipiv(n_);
    const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n_, kl_, ku_, 1, ab.data(), ldab_,
                                          ipiv.data(), b.data(), n_);
    if (info != 0) throw ConvergenceError("banded LU failed, info = " + std::to_string(info));
    return b;
}

}  // namespace heatwave
