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

#include "kfp/grid.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kfp/quadrature.hpp"

namespace kfp {

double GridAxis::spacing() const {
  if (!regular || nodes.size() < 2) throw std::logic_error("GridAxis::spacing: not a regular axis");
  return nodes[1] - nodes[0];
}

GridAxis regular_axis(double first, double spacing, int count) {
  if (count < 1 || !(spacing > 0.0)) throw std::invalid_argument("regular_axis: bad spacing or count");
  GridAxis axis;
  axis.regular = true;
  axis.nodes.resize(count);
  axis.weights.assign(count, spacing);
  for (int i = 0; i < count; ++i) axis.nodes[i] = first + i * spacing;
  return axis;
}

GridAxis bin_axis(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bin_axis: bad range");
  const double h = (hi - lo) / bins;
  return regular_axis(lo + 0.5 * h, h, bins);
}

GridAxis gauss_hermite_axis(double center, double variance, int count) {
  if (!(variance > 0.0)) throw std::invalid_argument("gauss_hermite_axis: variance must be positive");
  const auto rule = gauss_hermite(count);
  GridAxis axis;
  axis.nodes.resize(count);
  axis.weights.resize(count);
  const double scale = std::sqrt(2.0 * variance);
  for (int i = 0; i < count; ++i) {
    const double x = rule.nodes[i];
    axis.nodes[i] = center + scale * x;
    // exp(-x^2)-weighted rule turned into a plain dv rule
    axis.weights[i] = scale * std::exp(std::log(rule.weights[i]) + x * x);
  }
  axis.gauss_center = center;
  axis.gauss_variance = variance;
  return axis;
}

DensityGrid::DensityGrid(std::vector<GridAxis> axes, int order) : order_(order), axes_(std::move(axes)) {
  std::size_t total = 1;
  for (const auto& a : axes_) {
    if (a.nodes.size() != a.weights.size() || a.nodes.empty()) {
      throw std::invalid_argument("DensityGrid: inconsistent axis");
    }
    total *= a.nodes.size();
  }
  values_.assign(total, 0.0);
  compute_strides();
}

void DensityGrid::compute_strides() {
  strides_.assign(axes_.size(), 1);
  for (std::size_t k = axes_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * axes_[k].size();
}

std::vector<std::size_t> DensityGrid::unravel(std::size_t i) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    idx[k] = (i / strides_[k]) % axes_[k].size();
  }
  return idx;
}

void DensityGrid::point(std::size_t i, std::span<double> out) const {
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    out[k] = axes_[k].nodes[(i / strides_[k]) % axes_[k].size()];
  }
}

std::vector<double> DensityGrid::point(std::size_t i) const {
  std::vector<double> x(axes_.size());
  point(i, x);
  return x;
}

double DensityGrid::weight(std::size_t i) const {
  double w = 1.0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    w *= axes_[k].weights[(i / strides_[k]) % axes_[k].size()];
  }
  return w;
}

double DensityGrid::mass() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) sum += weight(i) * values_[i];
  return sum;
}

bool DensityGrid::same_axes(const DensityGrid& other) const {
  if (dims() != other.dims()) return false;
  for (std::size_t k = 0; k < dims(); ++k) {
    if (axes_[k].nodes != other.axes_[k].nodes || axes_[k].weights != other.axes_[k].weights) return false;
  }
  return true;
}

double DensityGrid::l1_distance(const DensityGrid& other) const {
  if (!same_axes(other)) throw std::invalid_argument("l1_distance: grids differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) sum += weight(i) * std::abs(values_[i] - other.values_[i]);
  return sum;
}

DensityGrid tensor_product(const DensityGrid& a, const DensityGrid& b) {
  std::vector<GridAxis> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  DensityGrid out(std::move(axes), a.order() + b.order());
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) out[i * nb + j] = a[i] * b[j];
  }
  return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("read_csv: malformed number '" + s + "'");
  return v;
}

}  // namespace

void write_csv(const DensityGrid& grid, std::ostream& out) {
  out << std::setprecision(17);
  out << "order," << grid.order() << '\n';
  for (std::size_t k = 0; k < grid.dims(); ++k) {
    const auto& a = grid.axis(k);
    const char* kind = a.regular ? "regular" : (a.gauss_center ? "gauss" : "general");
    out << "axis," << k << ',' << kind << ',' << a.gauss_center.value_or(0.0) << ','
        << a.gauss_variance.value_or(0.0);
    for (double x : a.nodes) out << ',' << x;
    out << '\n' << "weights," << k;
    for (double w : a.weights) out << ',' << w;
    out << '\n';
  }
  for (std::size_t k = 0; k < grid.dims(); ++k) out << 'v' << (k + 1) << ',';
  out << "value\n";
  std::vector<double> x(grid.dims());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    for (double c : x) out << c << ',';
    out << grid[i] << '\n';
  }
}

DensityGrid read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
  auto cells = split_csv(line);
  if (cells.size() != 2 || cells[0] != "order") throw std::runtime_error("read_csv: missing order row");
  const int order = std::stoi(cells[1]);
  std::vector<GridAxis> axes;
  while (std::getline(in, line)) {
    cells = split_csv(line);
    if (cells.empty()) continue;
    if (cells[0] != "axis") break;
    if (cells.size() < 6) throw std::runtime_error("read_csv: short axis row");
    GridAxis a;
    a.regular = cells[2] == "regular";
    if (cells[2] == "gauss") {
      a.gauss_center = parse_double(cells[3]);
      a.gauss_variance = parse_double(cells[4]);
    }
    for (std::size_t c = 5; c < cells.size(); ++c) a.nodes.push_back(parse_double(cells[c]));
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing weights row");
    cells = split_csv(line);
    if (cells.size() < 2 || cells[0] != "weights") throw std::runtime_error("read_csv: missing weights row");
    for (std::size_t c = 2; c < cells.size(); ++c) a.weights.push_back(parse_double(cells[c]));
    axes.push_back(std::move(a));
  }
  // `line` now holds the column header.
  DensityGrid grid(std::move(axes), order);
  const std::size_t expected_cols = grid.dims() + 1;
  if (split_csv(line).size() != expected_cols) throw std::runtime_error("read_csv: bad column header");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: truncated data");
    cells = split_csv(line);
    if (cells.size() != expected_cols) throw std::runtime_error("read_csv: bad data row");
    grid[i] = parse_double(cells.back());
  }
  return grid;
}

}  // namespace kfp
