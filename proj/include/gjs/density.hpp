#pragma once

#include <cmath>

#include "gjs/determinants.hpp"
#include "gjs/gaussian.hpp"
#include "gjs/mixture.hpp"

namespace gjs {

/// Coefficients of the log Radon-Nikodym density of a relative Gaussian
/// with respect to the base, in whitened base coordinates w:
///   log(dmu/dmu_*)(x) = -1/2 <w, quad w> + <w, lin> + const_term.
template <typename Scalar>
struct LogDensityForm {
  SymOperator<Scalar> quad;  // S (I - S)^{-1}
  VectorX<Scalar> lin;       // (I - S)^{-1} u
  Scalar const_term;         // -1/2 log det(I-S) - 1/2 ||(I-S)^{-1/2} u||^2
};

template <typename Scalar>
LogDensityForm<Scalar> log_density_form(const RelativeGaussian<Scalar>& rel) {
  const MatrixX<Scalar> p = detail::resolvent_at_one(rel.s, "log_density");
  LogDensityForm<Scalar> form;
  form.quad = SymOperator<Scalar>(MatrixX<Scalar>(rel.s.matrix() * p));
  form.lin = p * rel.u;
  form.const_term = Scalar(-0.5) * fredholm_log_det(negated(rel.s)) -
                    Scalar(0.5) * rel.u.dot(form.lin);
  return form;
}

/// Whitened coordinates of an ambient point: w = C_*^{-1/2}(x - m_*).
template <typename Scalar>
VectorX<Scalar> whiten(const BaseMeasure<Scalar>& base,
                       const VectorX<Scalar>& x) {
  return base.spectrum().eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
         base.to_basis(x - base.measure().mean);
}

template <typename Scalar>
Scalar evaluate(const LogDensityForm<Scalar>& form, const VectorX<Scalar>& w) {
  return Scalar(-0.5) * w.dot(form.quad.matrix() * w) + w.dot(form.lin) +
         form.const_term;
}

/// log Radon-Nikodym density of the measure described by rel with respect
/// to the base, evaluated at an ambient point x.
template <typename Scalar>
Scalar log_density(const RelativeGaussian<Scalar>& rel,
                   const BaseMeasure<Scalar>& base, const VectorX<Scalar>& x) {
  if (rel.dim() != base.dim() || x.size() != base.dim()) {
    throw ConfigError("log_density: dimension mismatch");
  }
  return evaluate(log_density_form(rel), whiten(base, x));
}

/// L^2(nu) inner product of the log densities of two measures relative to
/// the shared base, in closed form: a trace block coupling the two
/// covariance perturbations through nu, a mean-coupling block, and the
/// product of the two scalar compensators.
template <typename Scalar>
Scalar log_density_inner_product(const RelativeGaussian<Scalar>& r1,
                                 const RelativeGaussian<Scalar>& r2,
                                 const RelativeGaussian<Scalar>& nu) {
  if (r1.dim() != r2.dim() || r1.dim() != nu.dim()) {
    throw ConfigError("log_density_inner_product: dimension mismatch");
  }
  const Eigen::Index n = r1.dim();
  const MatrixX<Scalar> identity = MatrixX<Scalar>::Identity(n, n);
  const MatrixX<Scalar> i_minus_snu = identity - nu.s.matrix();

  const MatrixX<Scalar> p1 =
      detail::resolvent_at_one(r1.s, "log_density_inner_product");
  const MatrixX<Scalar> p2 =
      detail::resolvent_at_one(r2.s, "log_density_inner_product");
  const MatrixX<Scalar> m1 = r1.s.matrix() * p1;  // S1 (I-S1)^{-1}
  const MatrixX<Scalar> m2 = r2.s.matrix() * p2;

  const Scalar trace_block =
      Scalar(0.5) * (i_minus_snu * m1 * i_minus_snu * m2).trace();

  const VectorX<Scalar> v1 = p1 * r1.u - m1 * nu.u;
  const VectorX<Scalar> v2 = p2 * r2.u - m2 * nu.u;
  const Scalar mean_block = v1.dot(i_minus_snu * v2);

  // Each compensator is -2 E_nu[log p_i]; the quadratic piece collapses to
  // ||(I-S_i)^{-1/2}(u_i - u_nu)||^2 - ||u_nu||^2.
  auto compensator = [&](const RelativeGaussian<Scalar>& r,
                         const MatrixX<Scalar>& p,
                         const MatrixX<Scalar>& m) {
    // log det2[(I-S)^{-1}] = -[log det2(I-S) + trace(S^2 (I-S)^{-1})]
    const Scalar log_det2_inv =
        -(carleman_log_det2(negated(r.s)) +
          (r.s.matrix() * r.s.matrix() * p).trace());
    return nu.u.dot(m * nu.u) - Scalar(2) * (p * r.u).dot(nu.u) +
           r.u.dot(p * r.u) - (nu.s.matrix() * m).trace() - log_det2_inv;
  };
  const Scalar scalar_block = Scalar(0.25) * compensator(r1, p1, m1) *
                              compensator(r2, p2, m2);
  return trace_block + mean_block + scalar_block;
}

/// Log of the Gaussian integral of exp(1/2 <w, A w> + <w, b>) in whitened
/// coordinates w of any nondegenerate Gaussian:
///   -1/2 log det(I - A) + 1/2 ||(I-A)^{-1/2} b||^2.
/// Requires I - A strictly positive, otherwise the integral diverges.
template <typename Scalar>
Scalar gaussian_exp_quadratic(const SymOperator<Scalar>& a,
                              const VectorX<Scalar>& b) {
  if (a.dim() != b.size()) {
    throw ConfigError("gaussian_exp_quadratic: dimension mismatch");
  }
  const SpectralDecomp<Scalar> d = eig_sym(a);
  const Scalar floor =
      positivity_floor(Scalar(1) + d.eigenvalues.cwiseAbs().maxCoeff());
  const VectorX<Scalar> bb = d.eigenvectors.transpose() * b;
  Scalar log_det = 0;
  Scalar quad = 0;
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    const Scalar gap = Scalar(1) - d.eigenvalues(k);
    if (gap <= floor) {
      throw DomainViolation(
          "gaussian_exp_quadratic: I - A is not strictly positive, the "
          "integral diverges",
          static_cast<double>(d.eigenvalues(k)));
    }
    log_det += std::log(gap);
    quad += bb(k) * bb(k) / gap;
  }
  return Scalar(-0.5) * log_det + Scalar(0.5) * quad;
}

/// White-noise functional W_z(x) = <x - m_*, C_*^{-1/2} z> on the
/// truncated span; an L^2 isometry in z under the base measure.
template <typename Scalar>
Scalar white_noise(const VectorX<Scalar>& z, const BaseMeasure<Scalar>& base,
                   const VectorX<Scalar>& x) {
  if (z.size() != base.dim() || x.size() != base.dim()) {
    throw ConfigError("white_noise: dimension mismatch");
  }
  const VectorX<Scalar> xb = base.to_basis(x - base.measure().mean);
  const VectorX<Scalar> zb = base.to_basis(z);
  return (xb.cwiseQuotient(base.spectrum().eigenvalues.cwiseSqrt()))
      .dot(zb);
}

}  // namespace gjs
