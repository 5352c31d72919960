#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gjs/determinants.hpp"
#include "gjs/rng.hpp"
#include "gjs/spectral.hpp"

namespace gjs {

/// Gaussian measure N(mean, cov) with a positive semi-definite covariance
/// (finite trace stands in for the trace-class condition).
template <typename Scalar>
struct GaussianMeasure {
  VectorX<Scalar> mean;
  SymOperator<Scalar> cov;

  Eigen::Index dim() const { return cov.dim(); }
};

/// Reference measure of the equivalence class. The covariance spectrum is
/// required to be strictly positive at the truncation scale; all relative
/// coordinates are expressed in its eigenbasis, where C_*^{+-1/2} act
/// diagonally.
template <typename Scalar>
class BaseMeasure {
 public:
  explicit BaseMeasure(GaussianMeasure<Scalar> measure)
      : measure_(std::move(measure)), spectrum_(eig_sym(measure_.cov)) {
    if (measure_.mean.size() != measure_.cov.dim()) {
      throw ConfigError("BaseMeasure: mean/covariance dimension mismatch");
    }
    const Scalar floor =
        positivity_floor(spectrum_.eigenvalues.cwiseAbs().maxCoeff());
    if (spectrum_.eigenvalues.minCoeff() <= floor) {
      throw DomainViolation(
          "BaseMeasure: covariance has a near-zero eigenvalue",
          static_cast<double>(spectrum_.eigenvalues.minCoeff()));
    }
  }

  const GaussianMeasure<Scalar>& measure() const { return measure_; }
  const SpectralDecomp<Scalar>& spectrum() const { return spectrum_; }
  Eigen::Index dim() const { return measure_.dim(); }

  /// Coordinates of an ambient vector in the covariance eigenbasis.
  VectorX<Scalar> to_basis(const VectorX<Scalar>& x) const {
    return spectrum_.eigenvectors.transpose() * x;
  }
  VectorX<Scalar> from_basis(const VectorX<Scalar>& w) const {
    return spectrum_.eigenvectors * w;
  }

 private:
  GaussianMeasure<Scalar> measure_;
  SpectralDecomp<Scalar> spectrum_;
};

/// Base-relative form of a measure in the equivalence class of the base:
/// u = C_*^{-1/2}(m - m_*) and S with C = C_*^{1/2}(I - S)C_*^{1/2},
/// both expressed in the base eigenbasis.
template <typename Scalar>
struct RelativeGaussian {
  VectorX<Scalar> u;
  SymOperator<Scalar> s;

  Eigen::Index dim() const { return s.dim(); }
};

template <typename Scalar>
RelativeGaussian<Scalar> to_relative(const GaussianMeasure<Scalar>& mu,
                                     const BaseMeasure<Scalar>& base) {
  if (mu.dim() != base.dim() || mu.mean.size() != base.dim()) {
    throw ConfigError("to_relative: dimension mismatch");
  }
  const VectorX<Scalar>& lam = base.spectrum().eigenvalues;
  const VectorX<Scalar> inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  const MatrixX<Scalar> cov_basis = base.spectrum().eigenvectors.transpose() *
                                    mu.cov.matrix() *
                                    base.spectrum().eigenvectors;
  MatrixX<Scalar> i_minus_s =
      inv_sqrt.asDiagonal() * cov_basis * inv_sqrt.asDiagonal();
  RelativeGaussian<Scalar> rel;
  rel.s = SymOperator<Scalar>(MatrixX<Scalar>(
      MatrixX<Scalar>::Identity(mu.dim(), mu.dim()) - i_minus_s));
  rel.u = inv_sqrt.asDiagonal() * base.to_basis(mu.mean - base.measure().mean);
  const SymOperator<Scalar> ims(std::move(i_minus_s));
  const Scalar lo = min_eigenvalue(ims);
  if (lo <= positivity_floor(norms(ims).op_norm)) {
    throw NotEquivalent("to_relative: I - S is not strictly positive",
                        static_cast<double>(lo));
  }
  return rel;
}

template <typename Scalar>
GaussianMeasure<Scalar> from_relative(const RelativeGaussian<Scalar>& rel,
                                      const BaseMeasure<Scalar>& base) {
  if (rel.dim() != base.dim() || rel.u.size() != base.dim()) {
    throw ConfigError("from_relative: dimension mismatch");
  }
  const Eigen::Index n = base.dim();
  const VectorX<Scalar> sq = base.spectrum().eigenvalues.cwiseSqrt();
  MatrixX<Scalar> cov_basis =
      sq.asDiagonal() *
      (MatrixX<Scalar>::Identity(n, n) - rel.s.matrix()) * sq.asDiagonal();
  GaussianMeasure<Scalar> mu;
  mu.cov = SymOperator<Scalar>(
      MatrixX<Scalar>(base.spectrum().eigenvectors * cov_basis *
                      base.spectrum().eigenvectors.transpose()));
  mu.mean = base.measure().mean +
            base.from_basis(VectorX<Scalar>(sq.asDiagonal() * rel.u));
  return mu;
}

/// Truncation-refinement evidence for the equivalence conditions. Values
/// are reported at the dyadic sub-truncations N/4, N/2, N; a quantity that
/// keeps growing by more than 20% in the last refinement is flagged, since
/// the finite proxy cannot certify convergence of the underlying series.
template <typename Scalar>
struct EquivalenceReport {
  Scalar min_eig_i_minus_s{};
  Scalar hs_norm_s{};
  Scalar trace_norm_s{};
  Scalar picard_sum{};
  std::array<Scalar, 3> picard_levels{};
  std::array<Scalar, 3> hs_levels{};
  std::array<Scalar, 3> trace_levels{};
  bool warn_picard{false};
  bool warn_hs{false};
  bool warn_trace{false};

  bool any_warning() const { return warn_picard || warn_hs || warn_trace; }
};

namespace detail {

template <typename Scalar>
bool fails_to_plateau(const std::array<Scalar, 3>& levels) {
  const Scalar full = levels[2];
  if (!(full > Scalar(1e-12))) return false;
  return full > Scalar(1.2) * levels[1];
}

}  // namespace detail

template <typename Scalar>
EquivalenceReport<Scalar> equivalence_diagnostics(
    const GaussianMeasure<Scalar>& mu, const BaseMeasure<Scalar>& base) {
  if (mu.dim() != base.dim() || mu.mean.size() != base.dim()) {
    throw ConfigError("equivalence_diagnostics: dimension mismatch");
  }
  const Eigen::Index n = base.dim();
  const VectorX<Scalar>& lam = base.spectrum().eigenvalues;
  const VectorX<Scalar> w = base.to_basis(mu.mean - base.measure().mean);
  const VectorX<Scalar> inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  const MatrixX<Scalar> cov_basis = base.spectrum().eigenvectors.transpose() *
                                    mu.cov.matrix() *
                                    base.spectrum().eigenvectors;
  const MatrixX<Scalar> s =
      MatrixX<Scalar>::Identity(n, n) -
      MatrixX<Scalar>(inv_sqrt.asDiagonal() * cov_basis *
                      inv_sqrt.asDiagonal());

  EquivalenceReport<Scalar> report;
  const std::array<Eigen::Index, 3> cuts = {
      std::max<Eigen::Index>(1, n / 4), std::max<Eigen::Index>(1, n / 2), n};
  for (int level = 0; level < 3; ++level) {
    const Eigen::Index k = cuts[level];
    Scalar picard = 0;
    for (Eigen::Index i = 0; i < k; ++i) picard += w(i) * w(i) / lam(i);
    report.picard_levels[level] = picard;
    const MatrixX<Scalar> block = s.topLeftCorner(k, k);
    report.hs_levels[level] = block.norm();
    report.trace_levels[level] =
        norms(SymOperator<Scalar>(MatrixX<Scalar>(block))).trace_norm;
  }
  report.picard_sum = report.picard_levels[2];
  report.hs_norm_s = report.hs_levels[2];
  report.trace_norm_s = report.trace_levels[2];
  report.min_eig_i_minus_s =
      Scalar(1) -
      eig_sym(SymOperator<Scalar>(MatrixX<Scalar>(s))).eigenvalues.maxCoeff();
  report.warn_picard = detail::fails_to_plateau(report.picard_levels);
  report.warn_hs = detail::fails_to_plateau(report.hs_levels);
  report.warn_trace = detail::fails_to_plateau(report.trace_levels);
  return report;
}

namespace detail {

/// Spectral square root with roundoff-negative eigenvalues clipped to zero;
/// genuinely negative spectra are rejected.
template <typename Scalar>
MatrixX<Scalar> covariance_sqrt(const SymOperator<Scalar>& cov) {
  const SpectralDecomp<Scalar> d = eig_sym(cov);
  const Scalar floor = positivity_floor(d.eigenvalues.cwiseAbs().maxCoeff());
  VectorX<Scalar> root(d.eigenvalues.size());
  for (Eigen::Index k = 0; k < root.size(); ++k) {
    if (d.eigenvalues(k) < -floor) {
      throw DomainViolation("covariance is not positive semi-definite",
                            static_cast<double>(d.eigenvalues(k)));
    }
    root(k) = d.eigenvalues(k) > Scalar(0) ? std::sqrt(d.eigenvalues(k))
                                           : Scalar(0);
  }
  return d.eigenvectors * root.asDiagonal() * d.eigenvectors.transpose();
}

}  // namespace detail

/// Draws `count` samples m + C^{1/2} z, one per column. Deterministic for
/// a fixed (seed, count, dimension): draw j consumes the counter stream j.
template <typename Scalar>
MatrixX<Scalar> sample(const GaussianMeasure<Scalar>& mu, std::int64_t count,
                       std::uint64_t seed) {
  if (mu.mean.size() != mu.dim()) {
    throw ConfigError("sample: mean/covariance dimension mismatch");
  }
  const Eigen::Index n = mu.dim();
  MatrixX<Scalar> out(n, count);
  if (count == 0) return out;
  const MatrixX<Scalar> root = detail::covariance_sqrt(mu.cov);
  const CounterRng rng(seed);
  VectorX<Scalar> z(n);
  for (std::int64_t j = 0; j < count; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      z(k) = static_cast<Scalar>(
          rng.normal(static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k)));
    }
    out.col(j) = mu.mean + root * z;
  }
  return out;
}

enum class Kernel { Rbf, Matern32 };

/// Gram matrix K(i,j) = scale * k(x_i, x_j) / n over a strictly increasing
/// grid, a natural trace-class covariance whose spectrum converges under
/// grid refinement. Roundoff-negative eigenvalues are clipped to zero.
template <typename Scalar>
SymOperator<Scalar> kernel_covariance(Kernel kind, Scalar lengthscale,
                                      const std::vector<Scalar>& grid,
                                      Scalar scale) {
  if (grid.empty()) throw ConfigError("kernel_covariance: empty grid");
  if (!(scale > Scalar(0))) {
    throw ConfigError("kernel_covariance: scale must be positive");
  }
  if (!(lengthscale > Scalar(0))) {
    throw ConfigError("kernel_covariance: lengthscale must be positive");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError("kernel_covariance: grid must be strictly increasing");
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  MatrixX<Scalar> k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const Scalar r = std::abs(grid[static_cast<std::size_t>(i)] -
                                grid[static_cast<std::size_t>(j)]);
      Scalar v;
      if (kind == Kernel::Rbf) {
        v = std::exp(-r * r / (Scalar(2) * lengthscale * lengthscale));
      } else {
        const Scalar t = std::sqrt(Scalar(3)) * r / lengthscale;
        v = (Scalar(1) + t) * std::exp(-t);
      }
      k(i, j) = k(j, i) = scale * v / static_cast<Scalar>(n);
    }
  }
  SymOperator<Scalar> gram(std::move(k));
  const SpectralDecomp<Scalar> d = eig_sym(gram);
  const Scalar floor = positivity_floor(d.eigenvalues.cwiseAbs().maxCoeff());
  if (d.eigenvalues.minCoeff() <= floor) {
    return apply_spectral(
        d, [&](Scalar l) { return l > floor ? l : Scalar(0); });
  }
  return gram;
}

}  // namespace gjs
