#pragma once

// Perron-Frobenius eigenvalue of dense nonnegative matrices by shifted power
// iteration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fea/core/scc.hpp"
#include "fea/error.hpp"

namespace fea {

/// Dense square matrix with nonnegative finite entries and one label per
/// row/column.
class NonnegativeMatrix {
public:
  explicit NonnegativeMatrix(std::size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), entries_(dim * dim, 0.0), labels_(std::move(labels)) {
    if (dim == 0) throw InvalidInput("matrix dimension must be positive");
    if (labels_.empty())
      for (std::size_t i = 0; i < dim; ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != dim) throw InvalidInput("matrix needs exactly one label per row");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != dim)
      throw InvalidInput("matrix labels must be unique");
  }

  static NonnegativeMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                     std::vector<std::string> labels = {}) {
    NonnegativeMatrix m(rows.size(), std::move(labels));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw InvalidInput("matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    check(v);
    entries_[i * dim_ + j] = v;
  }
  void add(std::size_t i, std::size_t j, double v) { set(i, j, (*this)(i, j) + v); }

  NonnegativeMatrix scaled(double c) const {
    check(c);
    NonnegativeMatrix r = *this;
    for (auto& x : r.entries_) x *= c;
    return r;
  }

  bool all_zero() const {
    for (double x : entries_)
      if (x != 0.0) return false;
    return true;
  }

private:
  static void check(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("matrix entries must be finite and nonnegative");
  }

  std::size_t dim_;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

struct SpectralOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

struct SpectralResult {
  double radius = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

namespace detail {

// Shifted power iteration on one irreducible block (dimension >= 1, not the
// zero 1x1 block). Iterates x <- (b + I) x / |(b + I) x|_1 with b = block / s,
// s its largest row sum, so the unit shift is commensurate with the spectrum
// and periodic blocks (eigenvalues spread evenly on a circle) do not
// oscillate. The Perron vector of an irreducible block is positive, so the
// Collatz-Wielandt bracket min_i (b x)_i / x_i <= rho <= max_i (b x)_i / x_i
// closes; the run stops once its relative width is within `tolerance`.
inline SpectralResult irreducible_radius(const std::vector<std::vector<double>>& block, const SpectralOptions& opts) {
  const std::size_t n = block.size();
  struct Entry {
    std::size_t row, col;
    double value;
  };
  double scale = 0.0;
  for (const auto& row : block) {
    double sum = 0.0;
    for (double v : row) sum += v;
    scale = std::max(scale, sum);
  }
  std::vector<Entry> nonzeros;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block[i][j] != 0.0) nonzeros.push_back({i, j, block[i][j] / scale});

  // x stays L1-normalized, so sum(b x) is an x-weighted mean of the bracket
  // ratios and lies inside the bracket.
  SpectralResult result;
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), bx(n);
  double estimate = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    std::fill(bx.begin(), bx.end(), 0.0);
    for (const auto& e : nonzeros) bx[e.row] += e.value * x[e.col];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    estimate = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      estimate += bx[i];
      lo = std::min(lo, bx[i] / x[i]);
      hi = std::max(hi, bx[i] / x[i]);
    }
    const double norm = 1.0 + estimate;
    for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] + bx[i]) / norm;

    result.iterations = it;
    result.residual = lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
    if (result.residual <= opts.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.radius = estimate * scale;
  return result;
}

}  // namespace detail

/// Spectral radius of `m`: the largest radius over the irreducible diagonal
/// blocks (strongly connected parts of the nonzero pattern). Each block runs
/// its own iteration; iterations add up, residual is the worst block's, and
/// converged requires every block to converge. A block that runs out of
/// iterations contributes its last estimate.
inline SpectralResult spectral_radius(const NonnegativeMatrix& m, const SpectralOptions& opts = {}) {
  if (opts.tolerance <= 0.0 || opts.max_iterations == 0)
    throw InvalidInput("spectral tolerance and iteration limit must be positive");
  SpectralResult result;
  result.converged = true;
  const std::size_t n = m.dim();
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0.0) succ[i].push_back(j);

  for (const auto& part : detail::tarjan(succ)) {
    if (part.size() == 1 && m(part[0], part[0]) == 0.0) continue;  // radius 0
    std::vector<std::vector<double>> block(part.size(), std::vector<double>(part.size()));
    for (std::size_t i = 0; i < part.size(); ++i)
      for (std::size_t j = 0; j < part.size(); ++j) block[i][j] = m(part[i], part[j]);
    const auto r = detail::irreducible_radius(block, opts);
    result.radius = std::max(result.radius, r.radius);
    result.iterations += r.iterations;
    result.residual = std::max(result.residual, r.residual);
    result.converged = result.converged && r.converged;
  }
  return result;
}

/// Radii of `m` and of `c * m`; used by the scaling property checks.
inline std::pair<SpectralResult, SpectralResult> scale_check(const NonnegativeMatrix& m, double c,
                                                             const SpectralOptions& opts = {}) {
  if (!(c >= 0.0)) throw InvalidInput("scale factor must be nonnegative");
  if (c == 0.0) {
    SpectralResult zero;
    zero.converged = true;
    return {spectral_radius(m, opts), zero};
  }
  return {spectral_radius(m, opts), spectral_radius(m.scaled(c), opts)};
}

}  // namespace fea
