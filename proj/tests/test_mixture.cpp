#include <cmath>

#include "doctest.h"
#include "gjs/mixture.hpp"
#include "gjs/oracles.hpp"
#include "test_support.hpp"

using namespace gjs;
using namespace gjs::test;

using Rel = RelativeGaussian<double>;

namespace {

Rel random_relative(std::uint64_t tag, Eigen::Index n, double radius) {
  return Rel{random_vector(tag, n), random_contraction(tag + 1, n, radius)};
}

}  // namespace

TEST_CASE("endpoints are returned exactly") {
  const Rel r0 = random_relative(10, 4, 0.6);
  const Rel r1 = random_relative(20, 4, 0.5);
  const auto at0 = interpolate_relative(r0, r1, 0.0);
  CHECK(max_abs_diff(at0.s_alpha.matrix(), r0.s.matrix()) == 0.0);
  CHECK((at0.u_alpha - r0.u).norm() == 0.0);
  CHECK(at0.log_z == 0.0);
  const auto at1 = interpolate_relative(r0, r1, 1.0);
  CHECK(max_abs_diff(at1.s_alpha.matrix(), r1.s.matrix()) == 0.0);
  CHECK((at1.u_alpha - r1.u).norm() == 0.0);
}

TEST_CASE("interpolation of an operator with itself is idempotent") {
  const Rel r = random_relative(30, 5, 0.7);
  const auto mix = interpolate_relative(r, r, 0.37);
  CHECK(max_abs_diff(mix.s_alpha.matrix(), r.s.matrix()) <= 1e-12);
  CHECK((mix.u_alpha - r.u).norm() <= 1e-12);
  CHECK(std::abs(mix.log_z) <= 1e-10);
}

TEST_CASE("one-dimensional harmonic mean of variances") {
  // base variance 1: c0 = 1 (s = 0) and c1 = 1/3 (s = 2/3) mix to 1/2
  const Rel r0{Vec::Zero(1), Op::Zero(1)};
  const Rel r1{Vec::Zero(1), Op(Mat::Constant(1, 1, 2.0 / 3.0))};
  const auto mix = interpolate_relative(r0, r1, 0.5);
  CHECK(1.0 - mix.s_alpha(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("swap symmetry of the mixture") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Rel r0 = random_relative(tag + 40, 4, 0.6);
    const Rel r1 = random_relative(tag + 60, 4, 0.5);
    const double alpha = 0.31;
    const auto a = interpolate_relative(r0, r1, alpha);
    const auto b = interpolate_relative(r1, r0, 1.0 - alpha);
    CHECK(max_abs_diff(a.s_alpha.matrix(), b.s_alpha.matrix()) <= 1e-10);
    CHECK((a.u_alpha - b.u_alpha).norm() <= 1e-10);
    CHECK(std::abs(a.log_z - b.log_z) <= 1e-10);
  }
}

TEST_CASE("mixture operator stays strictly below the identity") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Rel r0 = random_relative(tag + 80, 5, 0.9);
    const Rel r1 = random_relative(tag + 100, 5, 0.95);
    const auto mix = interpolate_relative(r0, r1, 0.5);
    CHECK(1.0 - eig_sym(mix.s_alpha).eigenvalues.maxCoeff() > 0.0);
  }
}

TEST_CASE("normalizing factor is one for coinciding endpoints") {
  const Rel r = random_relative(120, 4, 0.6);
  CHECK(std::abs(log_normalizing_factor(r, r, 0.42)) <= 1e-10);
}

TEST_CASE("normalizing factor matches direct quadrature in one dimension") {
  const double cases[][5] = {
      // s0, s1, u0, u1, alpha
      {0.0, -1.0, 0.0, 0.0, 0.5},
      {0.3, -0.6, 0.4, -0.2, 0.25},
      {-0.8, 0.5, 1.0, 0.3, 0.75},
  };
  for (const auto& c : cases) {
    const Rel r0{Vec::Constant(1, c[2]), Op(Mat::Constant(1, 1, c[0]))};
    const Rel r1{Vec::Constant(1, c[3]), Op(Mat::Constant(1, 1, c[1]))};
    const double closed = std::exp(log_normalizing_factor(r0, r1, c[4]));
    const double quad = quadrature_z(c[0], c[1], c[2], c[3], c[4]);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("determinant part of log Z obeys the mixture bound") {
  // zero means isolate the determinant block
  for (std::uint64_t tag = 0; tag < 20; ++tag) {
    const Eigen::Index n = 5;
    const Op s0 = random_contraction(tag + 140, n, 0.7);
    const Op s1 = random_contraction(tag + 170, n, 0.6);
    const Rel r0{Vec::Zero(n), s0};
    const Rel r1{Vec::Zero(n), s1};
    const double alpha = 0.3;
    const double log_z = log_normalizing_factor(r0, r1, alpha);
    CHECK(log_z <= 1e-12);
    const Mat w1 = op_func(Op(Mat(Mat::Identity(n, n) - s1.matrix())),
                           OpFunc::InverseSqrt)
                       .matrix();
    const Op a(Mat(w1 * (s1.matrix() - s0.matrix()) * w1));
    const Mat inv_ipa = (Mat::Identity(n, n) + a.matrix()).inverse();
    const double bound = alpha * (1.0 - alpha) *
                         norms(Op(Mat(inv_ipa))).op_norm *
                         std::pow(norms(a).hs_norm, 2);
    CHECK(-log_z <= 0.5 * bound + 1e-12);
  }
}

TEST_CASE("interpolate_finite endpoints and equal-covariance collapse") {
  const Vec m0 = random_vector(200, 4);
  const Vec m1 = random_vector(201, 4);
  const Op c = random_spd(202, 4, 0.4, 2.0);
  const auto at0 = interpolate_finite(m0, c, m1, c, 0.0);
  CHECK((at0.first - m0).norm() == 0.0);
  const auto mid = interpolate_finite(m0, c, m1, c, 0.3);
  CHECK(max_abs_diff(mid.second.matrix(), c.matrix()) <= 1e-10);
  CHECK((mid.first - (0.7 * m0 + 0.3 * m1)).norm() <= 1e-10);
  CHECK_THROWS_AS(interpolate_finite(m0, c, m1, c, 1.4), DomainViolation);
}

TEST_CASE("finite interpolation agrees with the relative route") {
  const Eigen::Index n = 5;
  const BaseMeasure<double> base(
      GaussianMeasure<double>{Vec::Zero(n), Op::Identity(n)});
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const GaussianMeasure<double> mu0{random_vector(tag + 210, n),
                                      random_spd(tag + 220, n, 0.3, 2.0)};
    const GaussianMeasure<double> mu1{random_vector(tag + 230, n),
                                      random_spd(tag + 240, n, 0.4, 1.8)};
    const double alpha = 0.6;
    const auto dense =
        interpolate_finite(mu0.mean, mu0.cov, mu1.mean, mu1.cov, alpha);
    const auto mix = interpolate_relative(to_relative(mu0, base),
                                          to_relative(mu1, base), alpha);
    const GaussianMeasure<double> back = from_relative(
        RelativeGaussian<double>{mix.u_alpha, mix.s_alpha}, base);
    CHECK(max_abs_diff(back.cov.matrix(), dense.second.matrix()) <= 1e-9);
    CHECK((back.mean - dense.first).norm() <= 1e-9);
  }
}
