#pragma once

#include <span>
#include <vector>

namespace heatwave {

enum class ElementKind { linear, quadratic };

/// Radial mesh on [0, l]: strictly increasing vertices starting at 0.
class Mesh1D {
public:
    static constexpr int kMinElements = 8;

    Mesh1D() = default;
    Mesh1D(std::vector<double> vertices, ElementKind kind = ElementKind::linear);

    static Mesh1D uniform(double length, int elements, ElementKind kind = ElementKind::linear);

    const std::vector<double>& vertices() const { return vertices_; }
    ElementKind kind() const { return kind_; }
    int num_elements() const { return static_cast<int>(vertices_.size()) - 1; }
    int degree() const { return kind_ == ElementKind::linear ? 1 : 2; }
    int num_dofs() const { return degree() * num_elements() + 1; }
    double length() const { return vertices_.back(); }
    double h_max() const;
    double h_min() const;

    /// Node coordinates of the degrees of freedom; quadratic elements add midpoints.
    std::vector<double> dof_coordinates() const;

private:
    std::vector<double> vertices_;
    ElementKind kind_ = ElementKind::linear;
};

/// Nodal values over increasing coordinates; used for reference profiles and snapshots.
struct GridFunction {
    std::vector<double> x;
    std::vector<double> v;
};

/// Piecewise-linear interpolation of (x, v) at q; 0 outside [x.front(), x.back()].
double interpolate_linear(std::span<const double> x, std::span<const double> v, double q);

/// Sign changes of v - level, ignoring exact touches.
int count_crossings(std::span<const double> v, double level);

}  // namespace heatwave
