#pragma once

#include <vector>

namespace heatwave {

/// General banded matrix in LAPACK band storage with room for LU fill-in.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }
    bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }

    double get(int i, int j) const;
    void add(int i, int j, double v);
    void set(int i, int j, double v);
    void zero_row(int i);
    void scale_column(int j, double s);

    std::vector<double> multiply(const std::vector<double>& x) const;

    /// Solves A x = b by banded LU with partial pivoting; throws on a singular factor.
    std::vector<double> solve(std::vector<double> b) const;

private:
    double& ref(int i, int j) { return ab_[static_cast<std::size_t>(j) * ldab_ + kl_ + ku_ + i - j]; }
    double cref(int i, int j) const { return ab_[static_cast<std::size_t>(j) * ldab_ + kl_ + ku_ + i - j]; }

    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
};

}  // namespace heatwave
