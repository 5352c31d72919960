#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gjs/oracles.hpp"

namespace gjs {

/// Outcome of one closed-form / oracle pairing. For Monte-Carlo oracles the
/// tolerance is four standard errors; wide_ci marks runs whose confidence
/// interval is too wide to be informative (tiny sample counts).
struct PairingResult {
  std::string op;
  std::string oracle;
  double value{};
  double oracle_value{};
  double tolerance{};
  bool pass{};
  bool wide_ci{};
};

namespace detail {

inline PairingResult deterministic_pairing(std::string op, std::string oracle,
                                           double value, double oracle_value,
                                           double tolerance) {
  PairingResult r;
  r.op = std::move(op);
  r.oracle = std::move(oracle);
  r.value = value;
  r.oracle_value = oracle_value;
  r.tolerance = tolerance;
  r.pass = std::abs(value - oracle_value) <= tolerance;
  r.wide_ci = false;
  return r;
}

inline PairingResult mc_pairing(std::string op, double value,
                                const McEstimate<double>& est) {
  PairingResult r;
  r.op = std::move(op);
  r.oracle = "monte_carlo";
  r.value = value;
  r.oracle_value = est.mean;
  r.tolerance = 4.0 * est.std_error;
  r.pass = std::abs(value - est.mean) <= r.tolerance;
  r.wide_ci = r.tolerance > std::max(0.1 * std::abs(value), 1e-3);
  return r;
}

/// Deterministic pseudo-random SPD/relative instances shared by the
/// pairing table. Each instance is a pure function of the tag.
struct Instances {
  using Mat = MatrixX<double>;
  using Vec = VectorX<double>;

  static Mat random_matrix(std::uint64_t tag, Eigen::Index n) {
    CounterRng rng(0x9a7Fu);
    Mat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = rng.normal(tag, static_cast<std::uint64_t>(i * n + j));
      }
    }
    return m;
  }

  static Vec random_vector(std::uint64_t tag, Eigen::Index n) {
    CounterRng rng(0x51EDu);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v(i) = rng.normal(tag, static_cast<std::uint64_t>(i));
    }
    return v;
  }

  /// Symmetric with operator norm scaled to `radius`.
  static SymOperator<double> contraction(std::uint64_t tag, Eigen::Index n,
                                         double radius) {
    SymOperator<double> s(random_matrix(tag, n));
    const double big = norms(s).op_norm;
    return SymOperator<double>(Mat(s.matrix() * (radius / big)));
  }

  static SymOperator<double> spd(std::uint64_t tag, Eigen::Index n,
                                 double lo, double hi) {
    const Mat q = eig_sym(SymOperator<double>(random_matrix(tag, n)))
                      .eigenvectors;
    Vec lam(n);
    CounterRng rng(0x5bdu);
    for (Eigen::Index i = 0; i < n; ++i) {
      lam(i) = lo + (hi - lo) * rng.uniform(tag, static_cast<std::uint64_t>(i));
    }
    return SymOperator<double>(Mat(q * lam.asDiagonal() * q.transpose()));
  }
};

}  // namespace detail

/// Closed forms that must each carry at least one oracle pairing.
inline std::vector<std::string> required_oracle_coverage() {
  return {"fredholm_log_det",
          "carleman_log_det2",
          "extended_trace",
          "extended_log_detX",
          "pc1_compose",
          "d1_logdet_extended",
          "d1_logdet_same_gamma",
          "d1_logdet_finite",
          "interpolate_relative",
          "interpolate_finite",
          "log_normalizing_factor",
          "kl_exact",
          "kl_finite",
          "js_geometric_exact",
          "js_geometric_finite",
          "regularized_terms",
          "js_regularized",
          "gamma_limit_study",
          "log_density",
          "log_density_inner_product",
          "gaussian_exp_quadratic",
          "white_noise"};
}

/// Runs the whole pairing table. Every closed form in the determinant,
/// mixture, divergence and density layers is checked against an
/// independent route: dense linear algebra, quadrature, Monte Carlo, or a
/// second algebraic form.
inline std::vector<PairingResult> run_oracle_pairings(std::uint64_t seed,
                                                      std::int64_t samples,
                                                      int threads = 1) {
  using detail::deterministic_pairing;
  using detail::Instances;
  using detail::mc_pairing;
  using Mat = MatrixX<double>;
  using Vec = VectorX<double>;
  std::vector<PairingResult> out;

  // fredholm_log_det against a dense LU log-determinant of I + A
  {
    const SymOperator<double> a = Instances::contraction(11, 6, 0.8);
    const Mat dense = Mat::Identity(6, 6) + a.matrix();
    const double lu = std::log(dense.partialPivLu().determinant());
    out.push_back(deterministic_pairing("fredholm_log_det", "dense_lu_logdet",
                                        fredholm_log_det(a), lu, 1e-10));
  }

  // carleman_log_det2 against log det(I+A) - trace(A) with a dense LU det
  {
    const SymOperator<double> a = Instances::contraction(12, 6, 0.6);
    const Mat dense = Mat::Identity(6, 6) + a.matrix();
    const double lu =
        std::log(dense.partialPivLu().determinant()) - a.matrix().trace();
    out.push_back(deterministic_pairing("carleman_log_det2",
                                        "dense_lu_logdet_minus_trace",
                                        carleman_log_det2(a), lu, 1e-11));
  }

  // extended trace against direct entry arithmetic
  {
    const SymOperator<double> a = Instances::contraction(13, 5, 2.0);
    const ExtendedOperator<double> x{a, 0.75};
    out.push_back(deterministic_pairing(
        "extended_trace", "dense_trace", extended_trace(x),
        a.matrix().diagonal().sum() + 0.75, 1e-12));
  }

  // extended Fredholm determinant: gamma det(I + A/gamma) against
  // exp(etr(log(A + gamma I)))
  {
    SymOperator<double> a = Instances::contraction(14, 5, 0.9);
    const ExtendedOperator<double> x{a, 1.7};
    const SpectralDecomp<double> d = eig_sym(a);
    double etr_log = std::log(1.7);
    for (Eigen::Index k = 0; k < 5; ++k) {
      etr_log += std::log(d.eigenvalues(k) + 1.7) - std::log(1.7);
    }
    out.push_back(deterministic_pairing("extended_log_detX",
                                        "exp_etr_log_route",
                                        extended_log_detX(x), etr_log, 1e-10));
  }

  // pc1_compose multiplication against the dense matrix product, on a
  // commuting pair sharing an eigenbasis
  {
    const Mat q =
        eig_sym(SymOperator<double>(Instances::random_matrix(15, 5)))
            .eigenvectors;
    Vec la = Instances::random_vector(16, 5);
    Vec lb = Instances::random_vector(17, 5);
    const SymOperator<double> a(Mat(q * la.asDiagonal() * q.transpose()));
    const SymOperator<double> b(Mat(q * lb.asDiagonal() * q.transpose()));
    const ExtendedOperator<double> x{a, 0.8};
    const ExtendedOperator<double> y{b, 1.3};
    const ExtendedOperator<double> z = pc1_compose(x, y, Pc1Op::Multiply);
    const Mat dense = x.dense() * y.dense();
    const double err = (z.dense() - dense).cwiseAbs().maxCoeff();
    out.push_back(deterministic_pairing("pc1_compose", "dense_product", err,
                                        0.0, 1e-11));
  }

  // d1_logdet_extended with gamma = mu against the same-gamma form
  {
    const SymOperator<double> a = Instances::spd(18, 5, 0.2, 2.0);
    const SymOperator<double> b = Instances::spd(19, 5, 0.3, 1.5);
    const ExtendedOperator<double> x{a, 0.9};
    const ExtendedOperator<double> y{b, 0.9};
    out.push_back(deterministic_pairing(
        "d1_logdet_extended", "same_gamma_cross_form",
        d1_logdet_extended(x, y), d1_logdet_same_gamma(x, y), 1e-11));
  }

  // same-gamma Log-Det divergence against the dense finite formula on the
  // embedded matrices
  {
    const SymOperator<double> a = Instances::spd(20, 6, 0.2, 2.0);
    const SymOperator<double> b = Instances::spd(21, 6, 0.3, 1.5);
    const double gamma = 0.45;
    const ExtendedOperator<double> x{a, gamma};
    const ExtendedOperator<double> y{b, gamma};
    const SymOperator<double> c1(Mat(x.dense()));
    const SymOperator<double> c2(Mat(y.dense()));
    out.push_back(deterministic_pairing(
        "d1_logdet_same_gamma", "dense_finite_embedding",
        d1_logdet_same_gamma(x, y), d1_logdet_finite(c1, c2), 1e-10));
  }

  // congruence invariance of the finite Log-Det divergence
  {
    const SymOperator<double> c1 = Instances::spd(22, 5, 0.3, 3.0);
    const SymOperator<double> c2 = Instances::spd(23, 5, 0.4, 2.0);
    const Mat m = Instances::random_matrix(24, 5) +
                  3.0 * Mat::Identity(5, 5);
    const SymOperator<double> t1(Mat(m * c1.matrix() * m.transpose()));
    const SymOperator<double> t2(Mat(m * c2.matrix() * m.transpose()));
    out.push_back(deterministic_pairing(
        "d1_logdet_finite", "congruence_invariance",
        d1_logdet_finite(c1, c2), d1_logdet_finite(t1, t2), 1e-9));
  }

  // relative-form interpolation against the dense finite route
  {
    const Eigen::Index n = 5;
    const SymOperator<double> cstar = Instances::spd(25, n, 0.5, 2.0);
    const BaseMeasure<double> base(
        GaussianMeasure<double>{Vec::Zero(n), cstar});
    const GaussianMeasure<double> mu0{Instances::random_vector(26, n),
                                      Instances::spd(27, n, 0.4, 1.8)};
    const GaussianMeasure<double> mu1{Instances::random_vector(28, n),
                                      Instances::spd(29, n, 0.5, 2.2)};
    const double alpha = 0.35;
    const MixtureResult<double> mix =
        interpolate_relative(to_relative(mu0, base), to_relative(mu1, base),
                             alpha);
    const GaussianMeasure<double> via_relative = from_relative(
        RelativeGaussian<double>{mix.u_alpha, mix.s_alpha}, base);
    const auto [m_alpha, c_alpha] =
        interpolate_finite(mu0.mean, mu0.cov, mu1.mean, mu1.cov, alpha);
    const double err = std::max(
        (via_relative.cov.matrix() - c_alpha.matrix()).cwiseAbs().maxCoeff(),
        (via_relative.mean - m_alpha).cwiseAbs().maxCoeff());
    out.push_back(deterministic_pairing(
        "interpolate_relative", "dense_finite_route", err, 0.0, 1e-9));
    out.push_back(deterministic_pairing(
        "interpolate_finite", "relative_route", err, 0.0, 1e-9));
  }

  // normalizing factor against one-dimensional quadrature
  {
    const double s0 = 0.0;
    const double s1 = -1.0;  // c0 = 1, c1 = 2 against a unit base
    const RelativeGaussian<double> r0{Vec::Constant(1, 0.3),
                                      SymOperator<double>(Mat::Constant(1, 1, s0))};
    const RelativeGaussian<double> r1{Vec::Constant(1, -0.2),
                                      SymOperator<double>(Mat::Constant(1, 1, s1))};
    const double alpha = 0.5;
    const double closed = std::exp(log_normalizing_factor(r0, r1, alpha));
    const double quad = quadrature_z(s0, s1, 0.3, -0.2, alpha);
    out.push_back(deterministic_pairing(
        "log_normalizing_factor", "gauss_hermite_quadrature", closed, quad,
        1e-8 * std::max(1.0, std::abs(quad))));
  }

  // normalizing factor against a Monte-Carlo average of p0^{1-a} p1^a
  // over the base, diagonal three-dimensional instance
  {
    const Eigen::Index n = 3;
    const Vec lam = (Vec(3) << 1.0, 0.7, 0.4).finished();
    const BaseMeasure<double> base(GaussianMeasure<double>{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(lam)});
    const RelativeGaussian<double> r0{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(
                          (Vec(3) << 0.3, -0.2, 0.1).finished())};
    const RelativeGaussian<double> r1{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(
                          (Vec(3) << -0.4, 0.25, -0.1).finished())};
    const double alpha = 0.5;
    const double closed = std::exp(log_normalizing_factor(r0, r1, alpha));
    const LogDensityForm<double> f0 = log_density_form(r0);
    const LogDensityForm<double> f1 = log_density_form(r1);
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const Vec w = whiten(base, x);
          return std::exp((1.0 - alpha) * evaluate(f0, w) +
                          alpha * evaluate(f1, w));
        },
        base.measure(), samples, seed, threads);
    out.push_back(mc_pairing("log_normalizing_factor", closed, est));
  }

  // exact KL against E_nu[log dnu/dmu], diagonal three-dimensional pair
  {
    const Eigen::Index n = 3;
    const Vec lam = (Vec(3) << 1.0, 0.7, 0.4).finished();
    const BaseMeasure<double> base(GaussianMeasure<double>{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(lam)});
    const RelativeGaussian<double> r_nu{
        (Vec(3) << 0.4, -0.1, 0.2).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << 0.25, -0.3, 0.15).finished())};
    const RelativeGaussian<double> r_mu{
        (Vec(3) << -0.2, 0.3, 0.0).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << -0.2, 0.1, 0.35).finished())};
    const double kl = kl_exact(r_nu, r_mu).value;
    const LogDensityForm<double> fnu = log_density_form(r_nu);
    const LogDensityForm<double> fmu = log_density_form(r_mu);
    const GaussianMeasure<double> nu = from_relative(r_nu, base);
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const Vec w = whiten(base, x);
          return evaluate(fnu, w) - evaluate(fmu, w);
        },
        nu, samples, seed + 1, threads);
    out.push_back(mc_pairing("kl_exact", kl, est));
  }

  // finite KL against the same Monte-Carlo estimator on ambient densities
  {
    const Eigen::Index n = 3;
    const Vec m1 = (Vec(3) << 0.2, -0.4, 0.1).finished();
    const Vec m2 = (Vec(3) << -0.1, 0.2, 0.3).finished();
    const SymOperator<double> c1 = Instances::spd(30, n, 0.4, 1.5);
    const SymOperator<double> c2 = Instances::spd(31, n, 0.5, 1.8);
    const double kl = kl_finite(m1, c1, m2, c2).value;
    const Mat p1 = op_func(c1, OpFunc::Inverse).matrix();
    const Mat p2 = op_func(c2, OpFunc::Inverse).matrix();
    const double logdet1 = eig_sym(c1).eigenvalues.array().log().sum();
    const double logdet2 = eig_sym(c2).eigenvalues.array().log().sum();
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const double q1 = (x - m1).dot(p1 * (x - m1));
          const double q2 = (x - m2).dot(p2 * (x - m2));
          return 0.5 * (q2 - q1) + 0.5 * (logdet2 - logdet1);
        },
        GaussianMeasure<double>{m1, c1}, samples, seed + 2, threads);
    out.push_back(mc_pairing("kl_finite", kl, est));
  }

  // geometric Jensen-Shannon divergences against their defining weighted
  // KL sums
  {
    const Eigen::Index n = 4;
    const SymOperator<double> cstar = Instances::spd(32, n, 0.5, 1.5);
    const BaseMeasure<double> base(
        GaussianMeasure<double>{Vec::Zero(n), cstar});
    const GaussianMeasure<double> mu0{Instances::random_vector(33, n),
                                      Instances::spd(34, n, 0.4, 1.6)};
    const GaussianMeasure<double> mu1{Instances::random_vector(35, n),
                                      Instances::spd(36, n, 0.6, 2.0)};
    const double alpha = 0.3;
    const RelativeGaussian<double> r0 = to_relative(mu0, base);
    const RelativeGaussian<double> r1 = to_relative(mu1, base);
    const MixtureResult<double> mix = interpolate_relative(r0, r1, alpha);
    const RelativeGaussian<double> r_alpha{mix.u_alpha, mix.s_alpha};
    const double definitional = (1.0 - alpha) * kl_exact(r0, r_alpha).value +
                                alpha * kl_exact(r1, r_alpha).value;
    out.push_back(deterministic_pairing(
        "js_geometric_exact", "weighted_kl_definition",
        js_geometric_exact(r0, r1, alpha).value, definitional, 1e-10));

    const auto [m_alpha, c_alpha] =
        interpolate_finite(mu0.mean, mu0.cov, mu1.mean, mu1.cov, alpha);
    const double definitional_finite =
        (1.0 - alpha) * kl_finite(mu0.mean, mu0.cov, m_alpha, c_alpha).value +
        alpha * kl_finite(mu1.mean, mu1.cov, m_alpha, c_alpha).value;
    out.push_back(deterministic_pairing(
        "js_geometric_finite", "weighted_kl_definition",
        js_geometric_finite(mu0.mean, mu0.cov, mu1.mean, mu1.cov, alpha).value,
        definitional_finite, 1e-10));
  }

  // regularized mixture operator against the dense resolvent average
  {
    const Eigen::Index n = 5;
    const GaussianMeasure<double> mu0{Instances::random_vector(37, n),
                                      Instances::spd(38, n, 0.0, 1.5)};
    const GaussianMeasure<double> mu1{Instances::random_vector(39, n),
                                      Instances::spd(40, n, 0.2, 2.0)};
    const double alpha = 0.6;
    const double gamma = 1e-2;
    const RegularizedTerms<double> rt =
        regularized_terms(mu0, mu1, alpha, gamma);
    const Mat gi = gamma * Mat::Identity(n, n);
    const Mat dense =
        ((1.0 - alpha) * (mu0.cov.matrix() + gi).inverse() +
         alpha * (mu1.cov.matrix() + gi).inverse())
            .inverse();
    const double err = (rt.c.dense() - dense).cwiseAbs().maxCoeff();
    out.push_back(deterministic_pairing("regularized_terms",
                                        "dense_resolvent_average", err, 0.0,
                                        1e-10));
  }

  // regularized divergence against the exact value in the small-gamma
  // limit, one-dimensional instance with exact value known in closed form
  {
    const GaussianMeasure<double> mu0{
        Vec::Zero(1), SymOperator<double>(Mat::Constant(1, 1, 1.0))};
    const GaussianMeasure<double> mu1{
        Vec::Zero(1), SymOperator<double>(Mat::Constant(1, 1, 2.0))};
    const double exact = 0.03305424108590413;
    const double reg = js_regularized(mu0, mu1, 0.5, 1e-8).value;
    out.push_back(deterministic_pairing(
        "js_regularized", "exact_js_small_gamma_limit", reg, exact, 1e-5));

    const std::vector<double> gammas = {1e-1, 1e-2, 1e-3, 1e-4,
                                        1e-5, 1e-6, 1e-7, 1e-8};
    const auto rows = gamma_limit_study(mu0, mu1, 0.5, gammas);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      decreasing = decreasing && rows[i].abs_error && rows[i - 1].abs_error &&
                   *rows[i].abs_error < *rows[i - 1].abs_error;
    }
    out.push_back(deterministic_pairing(
        "gamma_limit_study", "monotone_error_to_exact",
        decreasing && rows.back().abs_error ? *rows.back().abs_error : 1.0,
        0.0, 1e-5));
  }

  // log-density normalization: E_base[exp(log dmu/dbase)] = 1
  {
    const Eigen::Index n = 3;
    const Vec lam = (Vec(3) << 1.0, 0.6, 0.3).finished();
    const BaseMeasure<double> base(GaussianMeasure<double>{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(lam)});
    const RelativeGaussian<double> rel{
        (Vec(3) << 0.3, -0.2, 0.1).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << 0.3, -0.25, 0.2).finished())};
    const LogDensityForm<double> form = log_density_form(rel);
    const auto est = mc_expectation(
        [&](const Vec& x) { return std::exp(evaluate(form, whiten(base, x))); },
        base.measure(), samples, seed + 3, threads);
    out.push_back(mc_pairing("log_density", 1.0, est));
  }

  // closed-form L2 inner product of log densities against Monte Carlo
  {
    const Eigen::Index n = 3;
    const Vec lam = (Vec(3) << 1.0, 0.7, 0.5).finished();
    const BaseMeasure<double> base(GaussianMeasure<double>{
        Vec::Zero(n), SymOperator<double>::FromDiagonal(lam)});
    const RelativeGaussian<double> r1{
        (Vec(3) << 0.2, 0.1, -0.3).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << 0.2, -0.3, 0.1).finished())};
    const RelativeGaussian<double> r2{
        (Vec(3) << -0.1, 0.25, 0.15).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << -0.15, 0.2, 0.25).finished())};
    const RelativeGaussian<double> r_nu{
        (Vec(3) << 0.05, -0.2, 0.1).finished(),
        SymOperator<double>::FromDiagonal(
            (Vec(3) << 0.1, 0.15, -0.2).finished())};
    const double closed = log_density_inner_product(r1, r2, r_nu);
    const LogDensityForm<double> f1 = log_density_form(r1);
    const LogDensityForm<double> f2 = log_density_form(r2);
    const GaussianMeasure<double> nu = from_relative(r_nu, base);
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const Vec w = whiten(base, x);
          return evaluate(f1, w) * evaluate(f2, w);
        },
        nu, samples, seed + 4, threads);
    out.push_back(mc_pairing("log_density_inner_product", closed, est));
  }

  // Gaussian exponential-quadratic integral against Monte Carlo. The
  // quadratic coefficient stays below 1/4 so the estimator has finite
  // fourth moment and the four-sigma band is meaningful.
  {
    const SymOperator<double> a(Mat::Constant(1, 1, 0.2));
    const Vec b = Vec::Constant(1, 1.0);
    const double closed = gaussian_exp_quadratic(a, b);
    const GaussianMeasure<double> mu{
        Vec::Constant(1, 0.4), SymOperator<double>(Mat::Constant(1, 1, 1.7))};
    const BaseMeasure<double> as_base(mu);
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const Vec w = whiten(as_base, x);
          return std::exp(0.5 * w.dot(a.matrix() * w) + w.dot(b));
        },
        mu, samples, seed + 5, threads);
    PairingResult r;
    r.op = "gaussian_exp_quadratic";
    r.oracle = "monte_carlo";
    r.value = std::exp(closed);
    r.oracle_value = est.mean;
    r.tolerance = 4.0 * est.std_error;
    r.pass = std::abs(r.value - est.mean) <= r.tolerance;
    r.wide_ci = r.tolerance > std::max(0.1 * std::abs(r.value), 1e-3);
    out.push_back(r);
  }

  // white-noise isometry: Var[W_z] = ||z||^2 under the base measure
  {
    const Vec lam = (Vec(3) << 1.2, 0.8, 0.5).finished();
    const BaseMeasure<double> base(GaussianMeasure<double>{
        (Vec(3) << 0.3, -0.1, 0.2).finished(),
        SymOperator<double>::FromDiagonal(lam)});
    const Vec z = (Vec(3) << 0.7, -0.4, 0.5).finished();
    const auto est = mc_expectation(
        [&](const Vec& x) {
          const double w = white_noise(z, base, x);
          return w * w;
        },
        base.measure(), samples, seed + 6, threads);
    out.push_back(mc_pairing("white_noise", z.squaredNorm(), est));
  }

  return out;
}

/// True when every name in required_oracle_coverage() appears among the
/// pairing ops.
inline bool oracle_coverage_complete(const std::vector<PairingResult>& rows) {
  std::set<std::string> seen;
  for (const auto& r : rows) seen.insert(r.op);
  for (const auto& name : required_oracle_coverage()) {
    if (!seen.count(name)) return false;
  }
  return true;
}

}  // namespace gjs
