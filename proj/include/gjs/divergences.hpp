#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gjs/logdet.hpp"
#include "gjs/mixture.hpp"

namespace gjs {

/// Divergence value with its term decomposition and conditioning
/// diagnostics. The invariant value == mean_term + det_term + trace_term
/// holds by construction.
template <typename Scalar>
struct DivergenceReport {
  Scalar value{};
  Scalar mean_term{};
  Scalar det_term{};
  Scalar trace_term{};
  Scalar alpha{};
  std::optional<Scalar> gamma;
  std::map<std::string, Scalar> diagnostics;

  /// Smallest conditioning number recorded during the computation.
  Scalar min_diagnostic() const {
    Scalar lo = std::numeric_limits<Scalar>::infinity();
    for (const auto& [key, v] : diagnostics) lo = std::min(lo, v);
    return lo;
  }

  /// Convenience accessor for the associated distance.
  Scalar distance() const { return std::sqrt(std::max(value, Scalar(0))); }
};

/// Exact KL divergence KL(nu || mu) between equivalent Gaussians in
/// base-relative form:
///   1/2 ||(I-S_mu)^{-1/2}(u_nu - u_mu)||^2 - 1/2 log det2(T),
/// where T = (I-S_mu)^{-1/2}(I-S_nu)(I-S_mu)^{-1/2} carries the spectrum
/// of (I-S_mu)^{-1}(I-S_nu).
template <typename Scalar>
DivergenceReport<Scalar> kl_exact(const RelativeGaussian<Scalar>& nu,
                                  const RelativeGaussian<Scalar>& mu) {
  detail::check_same_class(nu, mu);
  DivergenceReport<Scalar> report;
  report.alpha = Scalar(0);

  const SpectralDecomp<Scalar> dmu = eig_sym(mu.s);
  const Scalar gap_mu = Scalar(1) - dmu.eigenvalues.maxCoeff();
  const Scalar floor =
      positivity_floor(Scalar(1) + dmu.eigenvalues.cwiseAbs().maxCoeff());
  if (gap_mu <= floor) {
    throw DomainViolation("kl_exact: I - S of the reference is not positive",
                          static_cast<double>(gap_mu));
  }
  const MatrixX<Scalar> w =
      apply_spectral(dmu, [](Scalar l) {
        return Scalar(1) / std::sqrt(Scalar(1) - l);
      }).matrix();
  report.mean_term =
      Scalar(0.5) * (w * (nu.u - mu.u)).squaredNorm();
  const SymOperator<Scalar> t_minus_i(
      MatrixX<Scalar>(w * (mu.s.matrix() - nu.s.matrix()) * w));
  report.det_term = Scalar(-0.5) * carleman_log_det2(t_minus_i);
  report.trace_term = Scalar(0);
  report.value = report.mean_term + report.det_term + report.trace_term;
  report.diagnostics["min_eig_i_minus_s_ref"] = gap_mu;
  report.diagnostics["min_eig_i_minus_s_arg"] =
      Scalar(1) - eig_sym(nu.s).eigenvalues.maxCoeff();
  return report;
}

/// KL(N(m1,C1) || N(m2,C2)) for SPD matrices:
///   1/2 <m1-m2, C2^{-1}(m1-m2)> + 1/2 d1_logdet(C1, C2),
/// with the Log-Det part split into its trace and determinant terms.
template <typename Scalar>
DivergenceReport<Scalar> kl_finite(const VectorX<Scalar>& m1,
                                   const SymOperator<Scalar>& c1,
                                   const VectorX<Scalar>& m2,
                                   const SymOperator<Scalar>& c2) {
  if (c1.dim() != c2.dim() || m1.size() != c1.dim() || m2.size() != c2.dim()) {
    throw ConfigError("kl_finite: dimension mismatch");
  }
  const SpectralDecomp<Scalar> d2 = eig_sym(c2);
  const Scalar floor2 = positivity_floor(d2.eigenvalues.cwiseAbs().maxCoeff());
  if (d2.eigenvalues.minCoeff() <= floor2) {
    throw DomainViolation("kl_finite: C2 is not positive definite",
                          static_cast<double>(d2.eigenvalues.minCoeff()));
  }
  const MatrixX<Scalar> w =
      apply_spectral(d2, [](Scalar l) {
        return Scalar(1) / std::sqrt(l);
      }).matrix();
  DivergenceReport<Scalar> report;
  report.alpha = Scalar(0);
  report.mean_term = Scalar(0.5) * (w * (m1 - m2)).squaredNorm();
  const SymOperator<Scalar> t(MatrixX<Scalar>(w * c1.matrix() * w));
  const VectorX<Scalar> ev = eig_sym(t).eigenvalues;
  const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
  Scalar trace_part = 0;
  Scalar logdet_part = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) <= floor) {
      throw DomainViolation("kl_finite: C1 is not positive definite",
                            static_cast<double>(ev(k)));
    }
    trace_part += ev(k) - Scalar(1);
    logdet_part += std::log(ev(k));
  }
  report.trace_term = Scalar(0.5) * trace_part;
  report.det_term = Scalar(-0.5) * logdet_part;
  report.value = report.mean_term + report.det_term + report.trace_term;
  report.diagnostics["min_eig_c1"] = eig_sym(c1).eigenvalues.minCoeff();
  report.diagnostics["min_eig_c2"] = d2.eigenvalues.minCoeff();
  return report;
}

/// Exact geometric Jensen-Shannon divergence between equivalent Gaussians,
///   (1-alpha) KL(mu_0 || mu_alpha) + alpha KL(mu_1 || mu_alpha),
/// with mu_alpha the geometric mixture. The reported decomposition uses
/// the trace-class split
///   -1/2 log [det(I-S0)^{1-a} det(I-S1)^a / det(I-S_alpha)]
///   +1/2 tr [(I-S_alpha)^{-1}(S_alpha - (1-a)S0 - a S1)];
/// the Hilbert-Carleman form of the same value is evaluated alongside and
/// the two must agree to 1e-9.
template <typename Scalar>
DivergenceReport<Scalar> js_geometric_exact(const RelativeGaussian<Scalar>& r0,
                                            const RelativeGaussian<Scalar>& r1,
                                            Scalar alpha) {
  detail::check_same_class(r0, r1);
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("js_geometric_exact: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  DivergenceReport<Scalar> report;
  report.alpha = alpha;
  const Scalar gap0 = Scalar(1) - eig_sym(r0.s).eigenvalues.maxCoeff();
  const Scalar gap1 = Scalar(1) - eig_sym(r1.s).eigenvalues.maxCoeff();
  const Scalar floor = positivity_floor(
      Scalar(1) + std::max(norms(r0.s).op_norm, norms(r1.s).op_norm));
  if (gap0 <= floor || gap1 <= floor) {
    throw NotEquivalent("js_geometric_exact: an endpoint leaves the "
                        "equivalence class (I - S not positive)",
                        static_cast<double>(std::min(gap0, gap1)));
  }
  report.diagnostics["min_eig_i_minus_s0"] = gap0;
  report.diagnostics["min_eig_i_minus_s1"] = gap1;
  if (alpha == Scalar(0) || alpha == Scalar(1)) {
    report.diagnostics["min_eig_i_minus_s_alpha"] =
        alpha == Scalar(0) ? gap0 : gap1;
    return report;  // mixture coincides with the reference endpoint
  }

  const detail::MixtureOperators<Scalar> ops =
      detail::mixture_operators(r0, r1, alpha);
  const SpectralDecomp<Scalar> da = eig_sym(ops.s_alpha);
  const Scalar gap_alpha = Scalar(1) - da.eigenvalues.maxCoeff();
  report.diagnostics["min_eig_i_minus_s_alpha"] = gap_alpha;
  const MatrixX<Scalar> w =
      apply_spectral(da, [](Scalar l) {
        return Scalar(1) / std::sqrt(Scalar(1) - l);
      }).matrix();

  report.mean_term =
      (Scalar(1) - alpha) * Scalar(0.5) *
          (w * (r0.u - ops.u_alpha)).squaredNorm() +
      alpha * Scalar(0.5) * (w * (r1.u - ops.u_alpha)).squaredNorm();

  report.det_term =
      Scalar(-0.5) *
      ((Scalar(1) - alpha) * fredholm_log_det(negated(r0.s)) +
       alpha * fredholm_log_det(negated(r1.s)) -
       fredholm_log_det(negated(ops.s_alpha)));
  const MatrixX<Scalar> drift = ops.s_alpha.matrix() -
                                (Scalar(1) - alpha) * r0.s.matrix() -
                                alpha * r1.s.matrix();
  const MatrixX<Scalar> mix_precision =
      (Scalar(1) - alpha) * ops.p0 + alpha * ops.p1;
  report.trace_term = Scalar(0.5) * (mix_precision * drift).trace();
  report.value = report.mean_term + report.det_term + report.trace_term;

  // same value through the weighted Hilbert-Carleman determinants
  auto det2_term = [&](const RelativeGaussian<Scalar>& r) {
    const SymOperator<Scalar> t_minus_i(
        MatrixX<Scalar>(w * (ops.s_alpha.matrix() - r.s.matrix()) * w));
    return carleman_log_det2(t_minus_i);
  };
  const Scalar value_det2 =
      report.mean_term - (Scalar(1) - alpha) * Scalar(0.5) * det2_term(r0) -
      alpha * Scalar(0.5) * det2_term(r1);
  if (std::abs(value_det2 - report.value) >
      Scalar(1e-9) * std::max<Scalar>(Scalar(1), std::abs(report.value))) {
    throw NonConvergence(
        "js_geometric_exact: determinant forms disagree beyond 1e-9");
  }
  return report;
}

namespace detail {

/// (1-a)/2 ||W (m0 - ma)||^2 + a/2 ||W (m1 - ma)||^2 for W = C^{-1/2}.
template <typename Scalar>
Scalar weighted_mahalanobis(const MatrixX<Scalar>& w, Scalar alpha,
                            const VectorX<Scalar>& m0,
                            const VectorX<Scalar>& m1,
                            const VectorX<Scalar>& ma) {
  return (Scalar(1) - alpha) * Scalar(0.5) * (w * (m0 - ma)).squaredNorm() +
         alpha * Scalar(0.5) * (w * (m1 - ma)).squaredNorm();
}

}  // namespace detail

/// Finite-dimensional geometric Jensen-Shannon divergence: two weighted
/// Mahalanobis terms, the log-determinant ratio and the trace correction.
template <typename Scalar>
DivergenceReport<Scalar> js_geometric_finite(const VectorX<Scalar>& m0,
                                             const SymOperator<Scalar>& c0,
                                             const VectorX<Scalar>& m1,
                                             const SymOperator<Scalar>& c1,
                                             Scalar alpha) {
  if (c0.dim() != c1.dim() || m0.size() != c0.dim() || m1.size() != c1.dim()) {
    throw ConfigError("js_geometric_finite: dimension mismatch");
  }
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("js_geometric_finite: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  const SpectralDecomp<Scalar> d0 = eig_sym(c0);
  const SpectralDecomp<Scalar> d1 = eig_sym(c1);
  for (const auto* d : {&d0, &d1}) {
    const Scalar lo = d->eigenvalues.minCoeff();
    if (lo <= positivity_floor(d->eigenvalues.cwiseAbs().maxCoeff())) {
      throw DomainViolation(
          "js_geometric_finite: covariance is not positive definite",
          static_cast<double>(lo));
    }
  }
  DivergenceReport<Scalar> report;
  report.alpha = alpha;
  report.diagnostics["min_eig_c0"] = d0.eigenvalues.minCoeff();
  report.diagnostics["min_eig_c1"] = d1.eigenvalues.minCoeff();
  if (alpha == Scalar(0) || alpha == Scalar(1)) return report;

  auto [m_alpha, c_alpha] = interpolate_finite(m0, c0, m1, c1, alpha);
  const SpectralDecomp<Scalar> dac = eig_sym(c_alpha);
  report.diagnostics["min_eig_c_alpha"] = dac.eigenvalues.minCoeff();
  const MatrixX<Scalar> w =
      apply_spectral(dac, [](Scalar l) {
        return Scalar(1) / std::sqrt(l);
      }).matrix();
  const MatrixX<Scalar> precision =
      apply_spectral(dac, [](Scalar l) { return Scalar(1) / l; }).matrix();

  report.mean_term = detail::weighted_mahalanobis(w, alpha, m0, m1, m_alpha);
  const Scalar logdet0 = d0.eigenvalues.array().log().sum();
  const Scalar logdet1 = d1.eigenvalues.array().log().sum();
  const Scalar logdet_alpha = dac.eigenvalues.array().log().sum();
  report.det_term = Scalar(-0.5) * ((Scalar(1) - alpha) * logdet0 +
                                    alpha * logdet1 - logdet_alpha);
  const MatrixX<Scalar> blend =
      (Scalar(1) - alpha) * c0.matrix() + alpha * c1.matrix();
  report.trace_term =
      Scalar(0.5) *
      ((precision * blend).trace() - static_cast<Scalar>(c0.dim()));
  report.value = report.mean_term + report.det_term + report.trace_term;
  return report;
}

/// Regularized mixture operator C_{alpha,gamma} in unitized trace-class
/// form together with the regularized mixture mean.
template <typename Scalar>
struct RegularizedTerms {
  ExtendedOperator<Scalar> c;  // gamma I + gamma (I-B)^{-1/2} B (I-B)^{-1/2}
  VectorX<Scalar> m;
};

/// Builds C_{alpha,gamma} = [(1-a)(C0+gI)^{-1} + a(C1+gI)^{-1}]^{-1} in the
/// form gamma I + A with trace-class A >= 0, via
/// B = (1-a) C0 (C0+gI)^{-1} + a C1 (C1+gI)^{-1}, and the mean
/// m_{alpha,gamma} = C_{alpha,gamma}[(1-a)(C0+gI)^{-1}m0 + a(C1+gI)^{-1}m1].
/// Equivalence of the inputs is not required: any PSD pair is admitted.
template <typename Scalar>
RegularizedTerms<Scalar> regularized_terms(const GaussianMeasure<Scalar>& mu0,
                                           const GaussianMeasure<Scalar>& mu1,
                                           Scalar alpha, Scalar gamma) {
  if (mu0.dim() != mu1.dim() || mu0.mean.size() != mu0.dim() ||
      mu1.mean.size() != mu1.dim()) {
    throw ConfigError("regularized_terms: dimension mismatch");
  }
  if (!(gamma > Scalar(0))) {
    throw DomainViolation("regularized_terms: gamma must be positive",
                          static_cast<double>(gamma));
  }
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) {
    throw DomainViolation("regularized_terms: alpha outside [0, 1]",
                          static_cast<double>(alpha));
  }
  const Eigen::Index n = mu0.dim();
  MatrixX<Scalar> b = MatrixX<Scalar>::Zero(n, n);
  VectorX<Scalar> precision_mean = VectorX<Scalar>::Zero(n);
  const std::array<const GaussianMeasure<Scalar>*, 2> mus = {&mu0, &mu1};
  const std::array<Scalar, 2> weights = {Scalar(1) - alpha, alpha};
  for (int i = 0; i < 2; ++i) {
    const SpectralDecomp<Scalar> d = eig_sym(mus[i]->cov);
    const Scalar floor =
        positivity_floor(d.eigenvalues.cwiseAbs().maxCoeff());
    if (d.eigenvalues.minCoeff() < -floor) {
      throw DomainViolation(
          "regularized_terms: covariance is not positive semi-definite",
          static_cast<double>(d.eigenvalues.minCoeff()));
    }
    b += weights[i] *
         apply_spectral(d, [&](Scalar l) { return l / (l + gamma); })
             .matrix();
    precision_mean +=
        weights[i] *
        (apply_spectral(d, [&](Scalar l) {
           return Scalar(1) / (l + gamma);
         }).matrix() *
         mus[i]->mean);
  }
  const SpectralDecomp<Scalar> db = eig_sym(SymOperator<Scalar>(b));
  const Scalar gap = Scalar(1) - db.eigenvalues.maxCoeff();
  if (gap <= positivity_floor(Scalar(1))) {
    throw DomainViolation("regularized_terms: I - B is not positive",
                          static_cast<double>(gap));
  }
  RegularizedTerms<Scalar> out;
  out.c.gamma = gamma;
  out.c.a = apply_spectral(
      db, [&](Scalar l) { return gamma * l / (Scalar(1) - l); });
  out.m = out.c.dense() * precision_mean;
  return out;
}

/// Regularized geometric Jensen-Shannon divergence, finite for any pair of
/// PSD-covariance Gaussians including mutually singular ones:
///   (1-a)/2 ||C_ag^{-1/2}(m0 - m_ag)||^2 + a/2 ||C_ag^{-1/2}(m1 - m_ag)||^2
///   + (1-a)/2 d1[(C0+gI), C_ag] + a/2 d1[(C1+gI), C_ag],
/// with the shared-gamma Log-Det divergence accumulated eigenvalue-wise as
/// z - log(1+z) >= 0, so nonnegativity holds term by term.
template <typename Scalar>
DivergenceReport<Scalar> js_regularized(const GaussianMeasure<Scalar>& mu0,
                                        const GaussianMeasure<Scalar>& mu1,
                                        Scalar alpha, Scalar gamma) {
  const RegularizedTerms<Scalar> rt = regularized_terms(mu0, mu1, alpha, gamma);
  DivergenceReport<Scalar> report;
  report.alpha = alpha;
  report.gamma = gamma;

  const SpectralDecomp<Scalar> da = eig_sym(rt.c.a);
  report.diagnostics["min_eig_c_alpha_gamma"] =
      gamma + std::min(da.eigenvalues.minCoeff(), Scalar(0));
  const MatrixX<Scalar> w =
      apply_spectral(da, [&](Scalar l) {
        return Scalar(1) / std::sqrt(l + gamma);
      }).matrix();
  report.mean_term =
      detail::weighted_mahalanobis(w, alpha, mu0.mean, mu1.mean, rt.m);

  const std::array<const GaussianMeasure<Scalar>*, 2> mus = {&mu0, &mu1};
  const std::array<Scalar, 2> weights = {Scalar(1) - alpha, alpha};
  Scalar trace_term = 0;
  Scalar det_term = 0;
  for (int i = 0; i < 2; ++i) {
    if (weights[i] == Scalar(0)) continue;
    const ExtendedOperator<Scalar> xi{mus[i]->cov, gamma};
    const ExtendedOperator<Scalar> z =
        pc1_compose(rt.c, xi, Pc1Op::InverseTimes);
    const VectorX<Scalar> ev = eig_sym(z.a).eigenvalues;
    const Scalar floor = positivity_floor(ev.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (Scalar(1) + ev(k) <= floor) {
        throw DomainViolation("js_regularized: Log-Det argument is singular",
                              static_cast<double>(ev(k)));
      }
      trace_term += weights[i] * Scalar(0.5) * ev(k);
      det_term -= weights[i] * Scalar(0.5) * std::log1p(ev(k));
    }
  }
  report.trace_term = trace_term;
  report.det_term = det_term;
  report.value = report.mean_term + report.det_term + report.trace_term;
  return report;
}

/// One row of a regularization-limit study.
template <typename Scalar>
struct GammaRow {
  Scalar gamma{};
  Scalar value{};
  std::optional<Scalar> abs_error;
};

/// Evaluates the regularized divergence along a decreasing gamma grid. For
/// a zero-mean pair that is equivalent at the working truncation the exact
/// geometric divergence serves as the reference and the error column is
/// filled; otherwise values are reported without a reference.
template <typename Scalar>
std::vector<GammaRow<Scalar>> gamma_limit_study(
    const GaussianMeasure<Scalar>& mu0, const GaussianMeasure<Scalar>& mu1,
    Scalar alpha, const std::vector<Scalar>& gammas) {
  if (gammas.empty()) {
    throw ConfigError("gamma_limit_study: empty gamma grid");
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > Scalar(0)) ||
        (i > 0 && !(gammas[i] < gammas[i - 1]))) {
      throw DomainViolation(
          "gamma_limit_study: gammas must be positive and strictly "
          "decreasing",
          static_cast<double>(gammas[i]));
    }
  }
  std::optional<Scalar> reference;
  const Scalar mean_scale = std::max<Scalar>(
      Scalar(1), norms(mu0.cov).op_norm + norms(mu1.cov).op_norm);
  const bool zero_means =
      mu0.mean.template lpNorm<Eigen::Infinity>() <=
          Scalar(1e-14) * mean_scale &&
      mu1.mean.template lpNorm<Eigen::Infinity>() <= Scalar(1e-14) * mean_scale;
  if (zero_means) {
    try {
      const BaseMeasure<Scalar> base(mu0);
      const RelativeGaussian<Scalar> r0{
          VectorX<Scalar>::Zero(mu0.dim()), SymOperator<Scalar>::Zero(mu0.dim())};
      const RelativeGaussian<Scalar> r1 = to_relative(mu1, base);
      reference = js_geometric_exact(r0, r1, alpha).value;
    } catch (const DomainViolation&) {
      // no exact reference for a non-equivalent or degenerate pair
    }
  }
  std::vector<GammaRow<Scalar>> rows;
  rows.reserve(gammas.size());
  for (const Scalar g : gammas) {
    GammaRow<Scalar> row;
    row.gamma = g;
    row.value = js_regularized(mu0, mu1, alpha, g).value;
    if (reference) row.abs_error = std::abs(row.value - *reference);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gjs
