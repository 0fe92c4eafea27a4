#include "heatwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatwave/errors.hpp"

namespace heatwave {

Mesh1D::Mesh1D(std::vector<double> vertices, ElementKind kind)
    : vertices_(std::move(vertices)), kind_(kind) {
    if (static_cast<int>(vertices_.size()) < kMinElements + 1)
        throw DomainError("mesh needs at least " + std::to_string(kMinElements) + " elements");
    if (vertices_.front() != 0.0) throw DomainError("mesh must start at 0");
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        if (!(vertices_[i] > vertices_[i - 1]))
            throw DomainError("mesh vertices must be strictly increasing");
}

Mesh1D Mesh1D::uniform(double length, int elements, ElementKind kind) {
    if (!(length > 0.0)) throw DomainError("mesh length must be positive");
    if (elements < kMinElements)
        throw DomainError("mesh needs at least " + std::to_string(kMinElements) + " elements");
    std::vector<double> v(elements + 1);
    for (int i = 0; i <= elements; ++i) v[i] = length * i / elements;
    v.back() = length;
    return Mesh1D(std::move(v), kind);
}

double Mesh1D::h_max() const {
    double h = 0.0;
    for (std::size_t i = 1; i < vertices_.size(); ++i) h = std::max(h, vertices_[i] - vertices_[i - 1]);
    return h;
}

double Mesh1D::h_min() const {
    double h = vertices_.back();
    for (std::size_t i = 1; i < vertices_.size(); ++i) h = std::min(h, vertices_[i] - vertices_[i - 1]);
    return h;
}

std::vector<double> Mesh1D::dof_coordinates() const {
    if (kind_ == ElementKind::linear) return vertices_;
    std::vector<double> x;
    x.reserve(num_dofs());
    for (int e = 0; e < num_elements(); ++e) {
        x.push_back(vertices_[e]);
        x.push_back(0.5 * (vertices_[e] + vertices_[e + 1]));
    }
    x.push_back(vertices_.back());
    return x;
}

double interpolate_linear(std::span<const double> x, std::span<const double> v, double q) {
    if (x.empty() || q < x.front() || q > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), q);
    if (it == x.end()) return v.back();
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double w = (q - x[j - 1]) / (x[j] - x[j - 1]);
    return (1.0 - w) * v[j - 1] + w * v[j];
}

int count_crossings(std::span<const double> v, double level) {
    int count = 0, last = 0;
    for (double value : v) {
        const double d = value - level;
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace heatwave
