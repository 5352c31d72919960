#pragma once

#include <cmath>
#include <utility>

#include "gjs/gaussian.hpp"
#include "gjs/logdet.hpp"

namespace gjs {

/// Geometric mixture of two base-relative Gaussians: the operator S_alpha,
/// the relative mean shift u_alpha of the mixture mean, and the log of the
/// normalizing factor of the unnormalized density p0^{1-alpha} p1^alpha.
template <typename Scalar>
struct MixtureResult {
  Scalar alpha{};
  SymOperator<Scalar> s_alpha;
  VectorX<Scalar> u_alpha;
  Scalar log_z{};
};

/// I - S viewed as a perturbation of the identity by -S, so that
/// fredholm_log_det(negated(S)) is log det(I - S).
template <typename Scalar>
SymOperator<Scalar> negated(const SymOperator<Scalar>& s) {
  return SymOperator<Scalar>(MatrixX<Scalar>(-s.matrix()));
}

namespace detail {

template <typename Scalar>
void check_same_class(const RelativeGaussian<Scalar>& r0,
                      const RelativeGaussian<Scalar>& r1) {
  if (r0.dim() != r1.dim() || r0.u.size() != r0.dim() ||
      r1.u.size() != r1.dim()) {
    throw ConfigError("mixture: relatives have mismatched dimensions");
  }
}

/// Spectral (I - S)^{-1} with a strict positivity check.
template <typename Scalar>
MatrixX<Scalar> resolvent_at_one(const SymOperator<Scalar>& s,
                                 const char* who) {
  const SpectralDecomp<Scalar> d = eig_sym(s);
  const Scalar floor =
      positivity_floor(Scalar(1) + d.eigenvalues.cwiseAbs().maxCoeff());
  VectorX<Scalar> inv(d.eigenvalues.size());
  for (Eigen::Index k = 0; k < inv.size(); ++k) {
    const Scalar gap = Scalar(1) - d.eigenvalues(k);
    if (gap <= floor) {
      throw DomainViolation(std::string(who) + ": I - S is not positive",
                            static_cast<double>(gap));
    }
    inv(k) = Scalar(1) / gap;
  }
  return d.eigenvectors * inv.asDiagonal() * d.eigenvectors.transpose();
}

template <typename Scalar>
struct MixtureOperators {
  MatrixX<Scalar> p0;              // (I - S0)^{-1}
  MatrixX<Scalar> p1;              // (I - S1)^{-1}
  MatrixX<Scalar> i_minus_s_alpha; // inverse of (1-a) p0 + a p1
  SymOperator<Scalar> s_alpha;
  VectorX<Scalar> u_alpha;
};

/// Resolvent average of positive definite operators; unconditionally valid
/// for any S with I - S strictly positive, no series expansion involved.
template <typename Scalar>
MixtureOperators<Scalar> mixture_operators(const RelativeGaussian<Scalar>& r0,
                                           const RelativeGaussian<Scalar>& r1,
                                           Scalar alpha) {
  MixtureOperators<Scalar> ops;
  ops.p0 = resolvent_at_one(r0.s, "interpolate_relative");
  ops.p1 = resolvent_at_one(r1.s, "interpolate_relative");
  const Eigen::Index n = r0.dim();
  const SymOperator<Scalar> avg(
      MatrixX<Scalar>((Scalar(1) - alpha) * ops.p0 + alpha * ops.p1));
  const SpectralDecomp<Scalar> dm = eig_sym(avg);
  ops.i_minus_s_alpha =
      apply_spectral(dm, [](Scalar l) { return Scalar(1) / l; }).matrix();
  ops.s_alpha = SymOperator<Scalar>(MatrixX<Scalar>(
      MatrixX<Scalar>::Identity(n, n) - ops.i_minus_s_alpha));
  ops.u_alpha = ops.i_minus_s_alpha * ((Scalar(1) - alpha) * (ops.p0 * r0.u) +
                                       alpha * (ops.p1 * r1.u));
  return ops;
}

/// log Z. The determinant block is evaluated on the spectrum of
/// A = (I-S1)^{-1/2}(S1-S0)(I-S1)^{-1/2}; the product form
/// det(I-S0)^{1-a} det(I-S1)^a / det(I-S_alpha) is evaluated alongside and
/// must agree, both being finite sums at the working truncation.
template <typename Scalar>
Scalar log_z_impl(const RelativeGaussian<Scalar>& r0,
                  const RelativeGaussian<Scalar>& r1, Scalar alpha,
                  const MixtureOperators<Scalar>& ops) {
  const SpectralDecomp<Scalar> d1 = eig_sym(r1.s);
  const Scalar gap1 = Scalar(1) - d1.eigenvalues.maxCoeff();
  if (gap1 <= positivity_floor(Scalar(1) +
                               d1.eigenvalues.cwiseAbs().maxCoeff())) {
    throw DomainViolation("log_normalizing_factor: I - S1 is not positive",
                          static_cast<double>(gap1));
  }
  const MatrixX<Scalar> w1 =
      apply_spectral(d1, [](Scalar l) {
        return Scalar(1) / std::sqrt(Scalar(1) - l);
      }).matrix();
  const SymOperator<Scalar> a(
      MatrixX<Scalar>(w1 * (r1.s.matrix() - r0.s.matrix()) * w1));
  const VectorX<Scalar> a_eigs = eig_sym(a).eigenvalues;
  const Scalar a_floor = positivity_floor(a_eigs.cwiseAbs().maxCoeff());

  Scalar det_block = 0;
  for (Eigen::Index k = 0; k < a_eigs.size(); ++k) {
    const Scalar one_plus = Scalar(1) + a_eigs(k);
    if (one_plus <= a_floor) {
      throw DomainViolation("log_normalizing_factor: I + A is singular",
                            static_cast<double>(a_eigs(k)));
    }
    det_block += std::log(
        (Scalar(1) - alpha) * std::pow(one_plus, -alpha) +
        alpha * std::pow(one_plus, Scalar(1) - alpha));
  }
  det_block *= Scalar(-0.5);

  const Scalar det_product_form =
      -(Scalar(1) - alpha) / Scalar(2) * fredholm_log_det(negated(r0.s)) -
      alpha / Scalar(2) * fredholm_log_det(negated(r1.s)) +
      Scalar(0.5) * fredholm_log_det(negated(ops.s_alpha));
  if (std::abs(det_product_form - det_block) >
      Scalar(1e-9) * std::max<Scalar>(Scalar(1), std::abs(det_block))) {
    throw NonConvergence(
        "log_normalizing_factor: determinant forms disagree beyond 1e-9");
  }

  const MatrixX<Scalar> mix_precision =
      (Scalar(1) - alpha) * ops.p0 + alpha * ops.p1;
  const Scalar exponents =
      -(Scalar(1) - alpha) * Scalar(0.5) * r0.u.dot(ops.p0 * r0.u) -
      alpha * Scalar(0.5) * r1.u.dot(ops.p1 * r1.u) +
      Scalar(0.5) * ops.u_alpha.dot(mix_precision * ops.u_alpha);
  return det_block + exponents;
}

}  // namespace detail

/// Geometric interpolation
///   (I - S_alpha)^{-1} = (1-alpha)(I-S0)^{-1} + alpha(I-S1)^{-1},
///   u_alpha = (I-S_alpha)[(1-alpha)(I-S0)^{-1} u0 + alpha(I-S1)^{-1} u1].
/// Endpoints are returned exactly.
template <typename Scalar>
MixtureResult<Scalar> interpolate_relative(const RelativeGaussian<Scalar>& r0,
                                           const RelativeGaussian<Scalar>& r1,
                                           Scalar alpha) {
  detail::check_same_class(r0, r1);
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("interpolate_relative: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  MixtureResult<Scalar> out;
  out.alpha = alpha;
  if (alpha == Scalar(0) || alpha == Scalar(1)) {
    const RelativeGaussian<Scalar>& end = alpha == Scalar(0) ? r0 : r1;
    out.s_alpha = end.s;
    out.u_alpha = end.u;
    out.log_z = Scalar(0);
    return out;
  }
  const detail::MixtureOperators<Scalar> ops =
      detail::mixture_operators(r0, r1, alpha);
  out.s_alpha = ops.s_alpha;
  out.u_alpha = ops.u_alpha;
  out.log_z = detail::log_z_impl(r0, r1, alpha, ops);
  return out;
}

template <typename Scalar>
Scalar log_normalizing_factor(const RelativeGaussian<Scalar>& r0,
                              const RelativeGaussian<Scalar>& r1,
                              Scalar alpha) {
  detail::check_same_class(r0, r1);
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("log_normalizing_factor: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  if (alpha == Scalar(0) || alpha == Scalar(1)) return Scalar(0);
  return detail::log_z_impl(r0, r1, alpha,
                            detail::mixture_operators(r0, r1, alpha));
}

/// Finite-dimensional interpolation: harmonic-mean covariance
///   C_alpha = [(1-alpha) C0^{-1} + alpha C1^{-1}]^{-1}
/// and precision-weighted mean.
template <typename Scalar>
std::pair<VectorX<Scalar>, SymOperator<Scalar>> interpolate_finite(
    const VectorX<Scalar>& m0, const SymOperator<Scalar>& c0,
    const VectorX<Scalar>& m1, const SymOperator<Scalar>& c1, Scalar alpha) {
  if (c0.dim() != c1.dim() || m0.size() != c0.dim() || m1.size() != c1.dim()) {
    throw ConfigError("interpolate_finite: dimension mismatch");
  }
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("interpolate_finite: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  if (alpha == Scalar(0)) return {m0, c0};
  if (alpha == Scalar(1)) return {m1, c1};
  const SymOperator<Scalar> p0 = op_func(c0, OpFunc::Inverse);
  const SymOperator<Scalar> p1 = op_func(c1, OpFunc::Inverse);
  const SymOperator<Scalar> precision(
      MatrixX<Scalar>((Scalar(1) - alpha) * p0.matrix() +
                      alpha * p1.matrix()));
  const SymOperator<Scalar> c_alpha = op_func(precision, OpFunc::Inverse);
  const VectorX<Scalar> m_alpha =
      c_alpha.matrix() * ((Scalar(1) - alpha) * (p0.matrix() * m0) +
                          alpha * (p1.matrix() * m1));
  return {m_alpha, c_alpha};
}

}  // namespace gjs
