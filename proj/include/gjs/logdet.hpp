#pragma once

#include <cmath>

#include "gjs/determinants.hpp"

namespace gjs {

/// Near-singular inputs are rejected rather than regularized; choosing a
/// larger gamma is the caller's regularization lever.
template <typename Scalar>
void reject_near_singular(const ExtendedOperator<Scalar>& x,
                                  const char* who) {
  const Scalar lo = min_eigenvalue(x);
  if (lo <= Scalar(1e-10)) {
    throw DomainViolation(std::string(who) +
                              ": spectrum within 1e-10 of singular",
                          static_cast<double>(lo));
  }
}

/// Log-Det divergence between unitized trace-class operators sharing the
/// same scalar part:
///   trX[(B+gI)^{-1}(A+gI) - I] - log detX[(B+gI)^{-1}(A+gI)].
/// Computed eigenvalue-wise as sum of z - log(1+z) >= 0 over the spectrum
/// of the congruent product minus the identity.
template <typename Scalar>
Scalar d1_logdet_same_gamma(const ExtendedOperator<Scalar>& x,
                            const ExtendedOperator<Scalar>& y) {
  if (!(x.gamma == y.gamma) || !(x.gamma > Scalar(0))) {
    throw DomainViolation("d1_logdet_same_gamma: scalar parts must match and "
                          "be positive",
                          static_cast<double>(x.gamma - y.gamma));
  }
  reject_near_singular(x, "d1_logdet_same_gamma");
  reject_near_singular(y, "d1_logdet_same_gamma");
  const ExtendedOperator<Scalar> z = pc1_compose(y, x, Pc1Op::InverseTimes);
  const VectorX<Scalar> ev = eig_sym(z.a).eigenvalues;
  const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
  Scalar sum = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (Scalar(1) + ev(k) <= floor) {
      throw DomainViolation("d1_logdet_same_gamma: product is singular",
                            static_cast<double>(ev(k)));
    }
    sum += ev(k) - std::log1p(ev(k));
  }
  return sum;
}

/// General Log-Det divergence on PC1(H):
///   (g/m - 1) log(g/m) + trX[(B+mI)^{-1}(A+gI) - I]
///     - (g/m) log detX[(B+mI)^{-1}(A+gI)].
template <typename Scalar>
Scalar d1_logdet_extended(const ExtendedOperator<Scalar>& x,
                          const ExtendedOperator<Scalar>& y) {
  if (!(x.gamma > Scalar(0)) || !(y.gamma > Scalar(0))) {
    throw DomainViolation("d1_logdet_extended: scalar parts must be positive",
                          static_cast<double>(std::min(x.gamma, y.gamma)));
  }
  if (!is_pc1(x) || !is_pc1(y)) {
    throw DomainViolation("d1_logdet_extended: inputs must be in PC1");
  }
  reject_near_singular(x, "d1_logdet_extended");
  reject_near_singular(y, "d1_logdet_extended");
  const Scalar ratio = x.gamma / y.gamma;
  const ExtendedOperator<Scalar> z = pc1_compose(y, x, Pc1Op::InverseTimes);
  const Scalar trace_term = extended_trace(z) - Scalar(1);
  const Scalar det_term = extended_log_detX(z);
  return (ratio - Scalar(1)) * std::log(ratio) + trace_term -
         ratio * det_term;
}

/// Finite-dimensional Bregman Log-Det divergence
///   trace(C2^{-1} C1 - I) - log det(C2^{-1} C1)
/// for SPD matrices, accumulated eigenvalue-wise as t - 1 - log t >= 0.
template <typename Scalar>
Scalar d1_logdet_finite(const SymOperator<Scalar>& c1,
                        const SymOperator<Scalar>& c2) {
  if (c1.dim() != c2.dim()) {
    throw ConfigError("d1_logdet_finite: dimension mismatch");
  }
  const SpectralDecomp<Scalar> d2 = eig_sym(c2);
  const Scalar floor2 = positivity_floor(d2.eigenvalues.cwiseAbs().maxCoeff());
  if (d2.eigenvalues.minCoeff() <= floor2) {
    throw DomainViolation("d1_logdet_finite: C2 is not positive definite",
                          static_cast<double>(d2.eigenvalues.minCoeff()));
  }
  const MatrixX<Scalar> w =
      apply_spectral(d2, [](Scalar l) { return Scalar(1) / std::sqrt(l); })
          .matrix();
  const SymOperator<Scalar> t(MatrixX<Scalar>(w * c1.matrix() * w));
  const VectorX<Scalar> ev = eig_sym(t).eigenvalues;
  const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
  Scalar sum = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) <= floor) {
      throw DomainViolation("d1_logdet_finite: C1 is not positive definite",
                            static_cast<double>(ev(k)));
    }
    sum += ev(k) - Scalar(1) - std::log(ev(k));
  }
  return sum;
}

}  // namespace gjs
