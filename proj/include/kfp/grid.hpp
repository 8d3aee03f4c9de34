/*
   Copyright 2026 The kinetic-fp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace kfp {

/// One tensor-grid axis. Gauss-Hermite axes remember the Gaussian they were
/// built around (nodes = center + sqrt(variance) * z_i), which the Mehler
/// propagator uses to work in Hermite space.
struct GridAxis {
  std::vector<double> nodes;
  std::vector<double> weights;  // quadrature weights (bin widths for regular axes)
  bool regular = false;
  std::optional<double> gauss_center;
  std::optional<double> gauss_variance;

  std::size_t size() const { return nodes.size(); }
  double spacing() const;  // regular axes only
};

/// Regular axis with `count` nodes spaced h apart starting at `first`,
/// trapezoid-free (uniform) weights h.
GridAxis regular_axis(double first, double spacing, int count);

/// Regular axis of `bins` cells covering [lo, hi]; nodes are cell centres.
GridAxis bin_axis(double lo, double hi, int bins);

/// Gauss-Hermite axis matched to N(center, variance); `count` nodes.
GridAxis gauss_hermite_axis(double center, double variance, int count);

/// A sampled density on a tensor grid. Values are stored row-major with the
/// last axis fastest. `order` is the number of particles the density
/// describes (0 when the axes are not particle velocities).
class DensityGrid {
 public:
  DensityGrid() = default;
  DensityGrid(std::vector<GridAxis> axes, int order);

  int order() const { return order_; }
  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return values_.size(); }
  const GridAxis& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<GridAxis>& axes() const { return axes_; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::size_t stride(std::size_t k) const { return strides_[k]; }
  /// Multi-index of the flat position i.
  std::vector<std::size_t> unravel(std::size_t i) const;
  /// Coordinates of node i.
  void point(std::size_t i, std::span<double> out) const;
  std::vector<double> point(std::size_t i) const;
  /// Product of the per-axis quadrature weights at node i.
  double weight(std::size_t i) const;

  /// Quadrature integral of the stored values.
  double mass() const;
  /// Quadrature integral of values times g(point).
  template <class F>
  double integrate(F&& g) const {
    std::vector<double> x(dims());
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      point(i, x);
      sum += weight(i) * values_[i] * g(std::span<const double>(x));
    }
    return sum;
  }

  /// Fill the values from f(point).
  template <class F>
  void fill(F&& f) {
    std::vector<double> x(dims());
    for (std::size_t i = 0; i < size(); ++i) {
      point(i, x);
      values_[i] = f(std::span<const double>(x));
    }
  }

  /// Quadrature L1 distance to another grid on the same axes.
  double l1_distance(const DensityGrid& other) const;
  bool same_axes(const DensityGrid& other) const;

 private:
  void compute_strides();

  int order_ = 0;
  std::vector<GridAxis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> values_;
};

/// Tensor product a (x) b; axes of b follow those of a.
DensityGrid tensor_product(const DensityGrid& a, const DensityGrid& b);

/// CSV layout, floats with 17 significant digits:
///
///   order,<n>
///   axis,<k>,<regular|gauss|general>,<center>,<variance>,node_0,node_1,...
///   weights,<k>,w_0,w_1,...              (one axis/weights pair per axis)
///   v1,v2,...,vd,value
///   <x_1>,...,<x_d>,<value>              (one row per node, last axis fastest)
void write_csv(const DensityGrid& grid, std::ostream& out);
DensityGrid read_csv(std::istream& in);

}  // namespace kfp
