#pragma once

#include <cmath>

#include "gjs/spectral.hpp"

namespace gjs {

/// Unitized trace-class operator A + gamma*I. The trace-class part A lives
/// on the truncated span; the scalar part gamma acts on all of H, so the
/// tail spectrum of the represented operator is {gamma}.
template <typename Scalar>
struct ExtendedOperator {
  SymOperator<Scalar> a;
  Scalar gamma{};

  Eigen::Index dim() const { return a.dim(); }

  /// Dense action on the truncated span.
  MatrixX<Scalar> dense() const {
    return a.matrix() +
           gamma * MatrixX<Scalar>::Identity(a.dim(), a.dim());
  }
};

template <typename Scalar>
ExtendedOperator<Scalar> extended_identity(Eigen::Index n) {
  return {SymOperator<Scalar>::Zero(n), Scalar(1)};
}

/// Smallest point of the full spectrum {lambda_k + gamma} union {gamma}.
template <typename Scalar>
Scalar min_eigenvalue(const ExtendedOperator<Scalar>& x) {
  const Scalar lo = eig_sym(x.a).eigenvalues.minCoeff();
  return x.gamma + std::min(lo, Scalar(0));
}

/// Membership in PC1(H): A + gamma*I strictly positive definite.
template <typename Scalar>
bool is_pc1(const ExtendedOperator<Scalar>& x) {
  const Scalar scale = norms(x.a).op_norm + std::abs(x.gamma);
  return min_eigenvalue(x) > positivity_floor(scale);
}

/// log det(I + A) = sum log(1 + lambda_k) for trace-class A.
template <typename Scalar>
Scalar fredholm_log_det(const SymOperator<Scalar>& a) {
  const VectorX<Scalar> ev = eig_sym(a).eigenvalues;
  const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
  Scalar sum = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (Scalar(1) + ev(k) <= floor) {
      throw DomainViolation("fredholm_log_det: I + A is singular",
                            static_cast<double>(ev(k)));
    }
    sum += std::log1p(ev(k));
  }
  return sum;
}

/// log det2(I + A) = sum [log(1 + lambda_k) - lambda_k], the
/// Hilbert-Carleman determinant in log domain. Non-positive for real
/// symmetric A. The exponential compensation is summed eigenvalue-wise;
/// no exp(-A) matrix is formed.
template <typename Scalar>
Scalar carleman_log_det2(const SymOperator<Scalar>& a) {
  const VectorX<Scalar> ev = eig_sym(a).eigenvalues;
  const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
  Scalar sum = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (Scalar(1) + ev(k) <= floor) {
      throw DomainViolation("carleman_log_det2: I + A is singular",
                            static_cast<double>(ev(k)));
    }
    sum += std::log1p(ev(k)) - ev(k);
  }
  return sum;
}

/// etr(A + gamma*I) = trace(A) + gamma, assigning the identity extended
/// trace one.
template <typename Scalar>
Scalar extended_trace(const ExtendedOperator<Scalar>& x) {
  return x.a.matrix().trace() + x.gamma;
}

/// log detX(A + gamma*I) = log gamma + log det(I + A/gamma), restricted
/// to gamma > 0 with A + gamma*I positive definite.
template <typename Scalar>
Scalar extended_log_detX(const ExtendedOperator<Scalar>& x) {
  if (!(x.gamma > Scalar(0))) {
    throw DomainViolation("extended_log_detX: gamma must be positive",
                          static_cast<double>(x.gamma));
  }
  const VectorX<Scalar> ev = eig_sym(x.a).eigenvalues;
  const Scalar scale = ev.cwiseAbs().maxCoeff() + x.gamma;
  const Scalar floor = positivity_floor(scale);
  Scalar sum = std::log(x.gamma);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) + x.gamma <= floor) {
      throw DomainViolation("extended_log_detX: operator is not in PC1",
                            static_cast<double>(ev(k) + x.gamma));
    }
    sum += std::log1p(ev(k) / x.gamma);
  }
  return sum;
}

enum class Pc1Op { Multiply, Inverse, InverseTimes };

/// Algebra operations with exact gamma bookkeeping.
///
///   Multiply:      (A + g I)(B + m I) = (AB + mA + gB) + gm I; the
///                  trace-class part is stored symmetrized, which is exact
///                  for commuting factors and trace-exact always.
///   Inverse:       spectral inverse of X, gamma part 1/g.
///   InverseTimes:  X^{-1} Y through the congruent form
///                  X^{-1/2} Y X^{-1/2}, which shares its spectrum with
///                  the non-symmetric product; gamma part m/g.
template <typename Scalar>
ExtendedOperator<Scalar> pc1_compose(const ExtendedOperator<Scalar>& x,
                                     const ExtendedOperator<Scalar>& y,
                                     Pc1Op op) {
  if (op != Pc1Op::Inverse && x.dim() != y.dim()) {
    throw ConfigError("pc1_compose: dimension mismatch");
  }
  switch (op) {
    case Pc1Op::Multiply: {
      MatrixX<Scalar> part = x.a.matrix() * y.a.matrix() +
                             y.gamma * x.a.matrix() +
                             x.gamma * y.a.matrix();
      return {SymOperator<Scalar>(std::move(part)), x.gamma * y.gamma};
    }
    case Pc1Op::Inverse: {
      if (!is_pc1(x)) {
        throw DomainViolation("pc1_compose: inverse of a singular operator",
                              static_cast<double>(min_eigenvalue(x)));
      }
      const SpectralDecomp<Scalar> d = eig_sym(x.a);
      const Scalar ginv = Scalar(1) / x.gamma;
      SymOperator<Scalar> part = apply_spectral(
          d, [&](Scalar l) { return Scalar(1) / (l + x.gamma) - ginv; });
      return {std::move(part), ginv};
    }
    case Pc1Op::InverseTimes: {
      if (!is_pc1(x)) {
        throw DomainViolation(
            "pc1_compose: inverse_times with a singular left factor",
            static_cast<double>(min_eigenvalue(x)));
      }
      const SpectralDecomp<Scalar> d = eig_sym(x.a);
      const MatrixX<Scalar> xinvsqrt =
          apply_spectral(d, [&](Scalar l) {
            return Scalar(1) / std::sqrt(l + x.gamma);
          }).matrix();
      const Scalar g = y.gamma / x.gamma;
      MatrixX<Scalar> part = xinvsqrt * y.dense() * xinvsqrt -
                             g * MatrixX<Scalar>::Identity(x.dim(), x.dim());
      return {SymOperator<Scalar>(std::move(part)), g};
    }
  }
  throw ConfigError("pc1_compose: unknown operation");
}

}  // namespace gjs
