#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gjs/density.hpp"
#include "gjs/divergences.hpp"
#include "gjs/gaussian.hpp"
#include "gjs/mixture.hpp"
#include "gjs/rng.hpp"

namespace gjs {

template <typename Scalar>
struct McEstimate {
  Scalar mean{};
  Scalar std_error{};
  std::int64_t samples{};
  std::uint64_t seed{};
};

/// Monte-Carlo expectation of f under mu. Draw j consumes counter stream j,
/// matching sample(); accumulation is per fixed-size shard and shards are
/// combined in index order, so the estimate is bit-identical for any
/// thread count.
template <typename Scalar, typename F>
McEstimate<Scalar> mc_expectation(F&& f, const GaussianMeasure<Scalar>& mu,
                                  std::int64_t samples, std::uint64_t seed,
                                  int threads = 1) {
  if (samples < 2) {
    throw ConfigError("mc_expectation: needs at least two samples");
  }
  const Eigen::Index n = mu.dim();
  const MatrixX<Scalar> root = detail::covariance_sqrt(mu.cov);
  const CounterRng rng(seed);
  constexpr std::int64_t kShard = 1 << 14;
  const std::int64_t shards = (samples + kShard - 1) / kShard;
  std::vector<Scalar> shard_sum(static_cast<std::size_t>(shards), Scalar(0));
  std::vector<Scalar> shard_sumsq(static_cast<std::size_t>(shards), Scalar(0));
  for_each_shard(samples, kShard, threads,
                 [&](std::int64_t s, std::int64_t begin, std::int64_t end) {
                   VectorX<Scalar> z(n);
                   VectorX<Scalar> x(n);
                   Scalar sum = 0;
                   Scalar sumsq = 0;
                   for (std::int64_t j = begin; j < end; ++j) {
                     for (Eigen::Index k = 0; k < n; ++k) {
                       z(k) = static_cast<Scalar>(rng.normal(
                           static_cast<std::uint64_t>(j),
                           static_cast<std::uint64_t>(k)));
                     }
                     x = mu.mean + root * z;
                     const Scalar v = f(x);
                     sum += v;
                     sumsq += v * v;
                   }
                   shard_sum[static_cast<std::size_t>(s)] = sum;
                   shard_sumsq[static_cast<std::size_t>(s)] = sumsq;
                 });
  Scalar sum = 0;
  Scalar sumsq = 0;
  for (std::int64_t s = 0; s < shards; ++s) {
    sum += shard_sum[static_cast<std::size_t>(s)];
    sumsq += shard_sumsq[static_cast<std::size_t>(s)];
  }
  McEstimate<Scalar> est;
  est.samples = samples;
  est.seed = seed;
  est.mean = sum / static_cast<Scalar>(samples);
  const Scalar var =
      std::max<Scalar>(Scalar(0), (sumsq / static_cast<Scalar>(samples) -
                                   est.mean * est.mean)) *
      static_cast<Scalar>(samples) / static_cast<Scalar>(samples - 1);
  est.std_error = std::sqrt(var / static_cast<Scalar>(samples));
  return est;
}

namespace detail {

/// Gauss-Hermite nodes and weights for weight exp(-t^2), via the Jacobi
/// matrix eigenproblem.
template <typename Scalar>
void gauss_hermite(int n, VectorX<Scalar>& nodes, VectorX<Scalar>& weights) {
  MatrixX<Scalar> jacobi = MatrixX<Scalar>::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const Scalar off = std::sqrt(static_cast<Scalar>(i + 1) / Scalar(2));
    jacobi(i, i + 1) = off;
    jacobi(i + 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw NonConvergence("gauss_hermite: eigensolver failed");
  }
  nodes = solver.eigenvalues();
  weights.resize(n);
  const Scalar sqrt_pi = std::sqrt(Scalar(3.141592653589793238462643383279503));
  for (int i = 0; i < n; ++i) {
    const Scalar first = solver.eigenvectors()(0, i);
    weights(i) = sqrt_pi * first * first;
  }
}

}  // namespace detail

/// Direct numerical evaluation of the geometric-mixture mass
///   Z = E_{x ~ N(m_*, base_variance)} [ p0^{1-alpha}(x) p1^alpha(x) ]
/// for a one-dimensional problem in relative coordinates, by adaptive
/// Gauss-Hermite quadrature refined until the value is stable to 1e-12
/// (estimated error well below 1e-10).
template <typename Scalar>
Scalar quadrature_z(Scalar s0, Scalar s1, Scalar u0, Scalar u1, Scalar alpha,
                    Scalar base_variance = Scalar(1)) {
  if (!(base_variance > Scalar(0))) {
    throw ConfigError("quadrature_z: base variance must be positive");
  }
  if (!(s0 < Scalar(1)) || !(s1 < Scalar(1))) {
    throw DomainViolation("quadrature_z: 1 - s must be positive",
                          static_cast<double>(std::max(s0, s1)));
  }
  auto log_p = [](Scalar s, Scalar u, Scalar w) {
    const Scalar gap = Scalar(1) - s;
    return Scalar(-0.5) * w * w * s / gap + w * u / gap -
           Scalar(0.5) * std::log(gap) - Scalar(0.5) * u * u / gap;
  };
  const Scalar sigma = std::sqrt(base_variance);
  Scalar previous = std::numeric_limits<Scalar>::quiet_NaN();
  for (int n : {16, 32, 64, 128, 256}) {
    VectorX<Scalar> t, w;
    detail::gauss_hermite<Scalar>(n, t, w);
    Scalar z = 0;
    for (int i = 0; i < n; ++i) {
      // integrate in ambient coordinates, whiten for the density forms
      const Scalar dx = std::sqrt(Scalar(2)) * sigma * t(i);
      const Scalar wt = dx / sigma;
      z += w(i) * std::exp((Scalar(1) - alpha) * log_p(s0, u0, wt) +
                           alpha * log_p(s1, u1, wt));
    }
    z /= std::sqrt(Scalar(3.141592653589793238462643383279503));
    if (std::isfinite(previous) &&
        std::abs(z - previous) <=
            Scalar(1e-12) * std::max<Scalar>(Scalar(1), std::abs(z))) {
      return z;
    }
    previous = z;
  }
  throw NonConvergence("quadrature_z: quadrature did not stabilize");
}

/// One scalar cross-check: a library value against an independently coded
/// scalar expression.
struct ScalarCheck {
  std::string name;
  double got;
  double want;
  bool pass;
};

struct ScalarSuiteReport {
  std::vector<ScalarCheck> checks;
  bool all_pass{true};
};

/// Every closed form evaluated at one-dimensional instances where the
/// formulas reduce to scalar arithmetic, against expressions coded
/// directly from the scalar definitions. All must agree to 1e-12.
inline ScalarSuiteReport scalar_suite() {
  ScalarSuiteReport report;
  auto check = [&](const std::string& name, double got, double want) {
    const bool pass = std::abs(got - want) <=
                      1e-12 * std::max(1.0, std::abs(want));
    report.checks.push_back({name, got, want, pass});
    report.all_pass = report.all_pass && pass;
  };
  using Op = SymOperator<double>;
  using Vec = VectorX<double>;
  auto scalar_op = [](double v) {
    return Op(MatrixX<double>::Constant(1, 1, v));
  };
  auto scalar_vec = [](double v) { return Vec(Vec::Constant(1, v)); };

  check("fredholm_log_det", fredholm_log_det(scalar_op(0.5)), std::log(1.5));
  check("carleman_log_det2", carleman_log_det2(scalar_op(-0.5)),
        std::log(0.5) + 0.5);
  check("extended_trace",
        extended_trace(ExtendedOperator<double>{scalar_op(2.0), 3.0}),
        2.0 + 3.0);
  check("extended_log_detX",
        extended_log_detX(ExtendedOperator<double>{scalar_op(1.0), 2.0}),
        std::log(2.0 * (1.0 + 0.5)));
  check("d1_logdet_same_gamma",
        d1_logdet_same_gamma(ExtendedOperator<double>{scalar_op(1.0), 1.0},
                             ExtendedOperator<double>{scalar_op(0.0), 1.0}),
        1.0 - std::log(2.0));
  check("d1_logdet_extended",
        d1_logdet_extended(ExtendedOperator<double>{scalar_op(0.0), 2.0},
                           ExtendedOperator<double>{scalar_op(0.0), 1.0}),
        (2.0 - 1.0) * std::log(2.0) + 1.0 - 2.0 * std::log(2.0));
  check("d1_logdet_finite",
        d1_logdet_finite(scalar_op(2.0), scalar_op(1.0)),
        2.0 - 1.0 - std::log(2.0));
  check("kl_finite",
        kl_finite(scalar_vec(0.0), scalar_op(1.0), scalar_vec(0.0),
                  scalar_op(4.0 / 3.0))
            .value,
        0.5 * (3.0 / 4.0 - 1.0 + std::log(4.0 / 3.0)));

  const RelativeGaussian<double> base_rel{scalar_vec(0.0), scalar_op(0.0)};
  const RelativeGaussian<double> shifted{scalar_vec(0.2), scalar_op(0.0)};
  check("kl_exact_mean_shift", kl_exact(shifted, base_rel).value,
        0.5 * 0.2 * 0.2);

  // c0 = 1, c1 = 2 against a unit base: s0 = 0, s1 = -1
  const RelativeGaussian<double> r0{scalar_vec(0.0), scalar_op(0.0)};
  const RelativeGaussian<double> r1{scalar_vec(0.0), scalar_op(-1.0)};
  auto scalar_kl = [](double c1, double c2) {
    return 0.5 * (c1 / c2 - 1.0 - std::log(c1 / c2));
  };
  const double c_half = 1.0 / (0.5 / 1.0 + 0.5 / 2.0);
  const double js_want =
      0.5 * scalar_kl(1.0, c_half) + 0.5 * scalar_kl(2.0, c_half);
  check("js_geometric_exact", js_geometric_exact(r0, r1, 0.5).value, js_want);
  check("js_geometric_finite",
        js_geometric_finite(scalar_vec(0.0), scalar_op(1.0), scalar_vec(0.0),
                            scalar_op(2.0), 0.5)
            .value,
        js_want);

  const double a_scalar = (-1.0 - 0.0) / (1.0 - (-1.0));  // (s1-s0)/(1-s1)
  const double log_z_want =
      -0.5 * std::log(0.5 * std::pow(1.0 + a_scalar, -0.5) +
                      0.5 * std::pow(1.0 + a_scalar, 0.5));
  check("log_normalizing_factor", log_normalizing_factor(r0, r1, 0.5),
        log_z_want);

  const auto mix = interpolate_finite(scalar_vec(0.0), scalar_op(1.0),
                                      scalar_vec(0.0), scalar_op(1.0 / 3.0),
                                      0.5);
  check("interpolate_finite_harmonic", mix.second(0, 0),
        1.0 / (0.5 / 1.0 + 0.5 / (1.0 / 3.0)));

  check("gaussian_exp_quadratic",
        gaussian_exp_quadratic(scalar_op(0.5), scalar_vec(1.0)),
        -0.5 * std::log(0.5) + 0.5 * (1.0 / 0.5));

  const BaseMeasure<double> base(
      GaussianMeasure<double>{scalar_vec(0.0), scalar_op(1.0)});
  const RelativeGaussian<double> unit_shift{scalar_vec(1.0), scalar_op(0.0)};
  check("log_density_at_base_mean",
        log_density(unit_shift, base, scalar_vec(0.0)), -0.5);

  const RelativeGaussian<double> half{scalar_vec(0.0), scalar_op(0.5)};
  const double g = 1.0 + std::log(0.5);
  check("log_density_inner_product",
        log_density_inner_product(half, half, base_rel),
        0.5 * 1.0 + 0.25 * g * g);

  check("white_noise_isometry_case",
        white_noise(scalar_vec(1.0), base, scalar_vec(0.7)), 0.7);
  return report;
}

}  // namespace gjs
