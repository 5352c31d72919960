#include <cmath>

#include "doctest.h"
#include "gjs/divergences.hpp"
#include "test_support.hpp"

using namespace gjs;
using namespace gjs::test;

using Measure = GaussianMeasure<double>;
using Base = BaseMeasure<double>;
using Rel = RelativeGaussian<double>;
using Report = DivergenceReport<double>;

namespace {

Rel random_relative(std::uint64_t tag, Eigen::Index n, double radius) {
  return Rel{random_vector(tag, n), random_contraction(tag + 1, n, radius)};
}

void check_term_sum(const Report& r) {
  CHECK(std::abs(r.value - (r.mean_term + r.det_term + r.trace_term)) <=
        1e-12 * std::max(1.0, std::abs(r.value)));
}

}  // namespace

TEST_CASE("kl_exact vanishes at coincidence and on pure mean shifts") {
  const Rel r = random_relative(1, 4, 0.6);
  CHECK(std::abs(kl_exact(r, r).value) <= 1e-12);

  const Rel a{Vec::Constant(1, 0.2), Op::Zero(1)};
  const Rel b{Vec::Zero(1), Op::Zero(1)};
  const Report shift = kl_exact(a, b);
  CHECK(shift.value == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(shift.mean_term == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(shift.det_term == 0.0);
}

TEST_CASE("kl_exact is nonnegative and decomposes") {
  for (std::uint64_t tag = 0; tag < 20; ++tag) {
    const Rel nu = random_relative(tag + 10, 5, 0.7);
    const Rel mu = random_relative(tag + 40, 5, 0.6);
    const Report r = kl_exact(nu, mu);
    CHECK(r.value >= -1e-10);
    check_term_sum(r);
  }
}

TEST_CASE("kl_finite on the one-dimensional reference instance") {
  const Report r = kl_finite(Vec(Vec::Zero(1)), Op::Identity(1), Vec(Vec::Zero(1)),
                             Op(Mat::Constant(1, 1, 4.0 / 3.0)));
  CHECK(r.value == doctest::Approx(0.01884103622589045).epsilon(1e-12));
  CHECK(std::abs(kl_finite(Vec(Vec::Zero(2)), Op::Identity(2), Vec(Vec::Zero(2)),
                           Op::Identity(2))
                     .value) <= 1e-14);
}

TEST_CASE("kl_finite equals kl_exact through any valid base") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Eigen::Index n = 4;
    const Measure mu1{random_vector(tag + 60, n),
                      random_spd(tag + 70, n, 0.3, 2.0)};
    const Measure mu2{random_vector(tag + 80, n),
                      random_spd(tag + 90, n, 0.4, 1.7)};
    const Base base(
        Measure{random_vector(tag + 95, n), random_spd(tag + 96, n, 0.5, 1.5)});
    const double finite = kl_finite(mu1.mean, mu1.cov, mu2.mean, mu2.cov).value;
    const double exact =
        kl_exact(to_relative(mu1, base), to_relative(mu2, base)).value;
    CHECK(std::abs(finite - exact) <= 1e-9 * std::max(1.0, finite));
  }
}

TEST_CASE("js_geometric_exact endpoint zeros and coincidence") {
  const Rel r0 = random_relative(100, 4, 0.6);
  const Rel r1 = random_relative(110, 4, 0.5);
  CHECK(js_geometric_exact(r0, r1, 0.0).value == 0.0);
  CHECK(js_geometric_exact(r0, r1, 1.0).value == 0.0);
  CHECK(std::abs(js_geometric_exact(r0, r0, 0.5).value) <= 1e-11);
}

TEST_CASE("js_geometric_exact equal-covariance closed form") {
  // equal covariances: JS = alpha (1-alpha) d^2 / 2
  const Rel r0{Vec::Zero(1), Op::Zero(1)};
  const Rel r1{Vec::Constant(1, 1.0), Op::Zero(1)};
  CHECK(js_geometric_exact(r0, r1, 0.5).value ==
        doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("js_geometric_exact one-dimensional variance pair") {
  const Rel r0{Vec::Zero(1), Op::Zero(1)};
  const Rel r1{Vec::Zero(1), Op(Mat::Constant(1, 1, -1.0))};  // c1 = 2
  CHECK(js_geometric_exact(r0, r1, 0.5).value ==
        doctest::Approx(0.03305424108590413).epsilon(1e-12));
}

TEST_CASE("js_geometric_exact matches its defining weighted KL sum") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Rel r0 = random_relative(tag + 120, 5, 0.6);
    const Rel r1 = random_relative(tag + 140, 5, 0.7);
    for (double alpha : {0.25, 0.5, 0.75}) {
      const auto mix = interpolate_relative(r0, r1, alpha);
      const Rel r_alpha{mix.u_alpha, mix.s_alpha};
      const double definitional =
          (1.0 - alpha) * kl_exact(r0, r_alpha).value +
          alpha * kl_exact(r1, r_alpha).value;
      const Report r = js_geometric_exact(r0, r1, alpha);
      CHECK(std::abs(r.value - definitional) <= 1e-10);
      check_term_sum(r);
      CHECK(r.value >= -1e-10);
    }
  }
}

TEST_CASE("js_geometric_exact skew symmetry") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Rel r0 = random_relative(tag + 160, 4, 0.6);
    const Rel r1 = random_relative(tag + 180, 4, 0.5);
    const double a = js_geometric_exact(r0, r1, 0.3).value;
    const double b = js_geometric_exact(r1, r0, 0.7).value;
    CHECK(std::abs(a - b) <= 1e-10);
  }
}

TEST_CASE("js_geometric_exact is invariant under change of base") {
  const Eigen::Index n = 4;
  const Measure mu0{random_vector(200, n), random_spd(201, n, 0.4, 1.8)};
  const Measure mu1{random_vector(202, n), random_spd(203, n, 0.5, 2.0)};
  const Base base_a(
      Measure{random_vector(204, n), random_spd(205, n, 0.5, 1.5)});
  const Base base_b(
      Measure{random_vector(206, n), random_spd(207, n, 0.3, 2.2)});
  for (double alpha : {0.25, 0.5, 0.9}) {
    const double va = js_geometric_exact(to_relative(mu0, base_a),
                                         to_relative(mu1, base_a), alpha)
                          .value;
    const double vb = js_geometric_exact(to_relative(mu0, base_b),
                                         to_relative(mu1, base_b), alpha)
                          .value;
    CHECK(std::abs(va - vb) <= 1e-8 * std::max(1.0, std::abs(va)));
  }
}

TEST_CASE("js_geometric_exact rejects operators outside the class") {
  const Rel bad{Vec::Zero(2),
                Op::FromDiagonal((Vec(2) << 1.5, 0.0).finished())};
  const Rel good{Vec::Zero(2), Op::Zero(2)};
  CHECK_THROWS_AS(js_geometric_exact(bad, good, 0.5), NotEquivalent);
}

TEST_CASE("js_geometric_finite basics and the shared reference value") {
  CHECK(std::abs(js_geometric_finite(Vec(Vec::Zero(2)), Op::Identity(2),
                                     Vec(Vec::Zero(2)), Op::Identity(2), 0.5)
                     .value) <= 1e-14);
  CHECK(js_geometric_finite(Vec(Vec::Zero(1)), Op::Identity(1), Vec(Vec::Zero(1)),
                            Op(Mat::Constant(1, 1, 2.0)), 0.5)
            .value == doctest::Approx(0.03305424108590413).epsilon(1e-12));
}

TEST_CASE("js_geometric_finite matches the weighted finite KL sum") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Eigen::Index n = 5;
    const Vec m0 = random_vector(tag + 220, n);
    const Vec m1 = random_vector(tag + 230, n);
    const Op c0 = random_spd(tag + 240, n, 0.3, 2.0);
    const Op c1 = random_spd(tag + 250, n, 0.4, 1.8);
    const double alpha = 0.4;
    const auto mix = interpolate_finite(m0, c0, m1, c1, alpha);
    const double definitional =
        (1.0 - alpha) * kl_finite(m0, c0, mix.first, mix.second).value +
        alpha * kl_finite(m1, c1, mix.first, mix.second).value;
    const Report r = js_geometric_finite(m0, c0, m1, c1, alpha);
    CHECK(std::abs(r.value - definitional) <= 1e-10);
    check_term_sum(r);
    const double swapped =
        js_geometric_finite(m1, c1, m0, c0, 1.0 - alpha).value;
    CHECK(std::abs(r.value - swapped) <= 1e-10);
  }
}

TEST_CASE("regularized_terms degenerate cases") {
  const Eigen::Index n = 3;
  const Op c = random_spd(300, n, 0.2, 1.5);
  const Vec m = random_vector(301, n);
  const double gamma = 0.05;

  const auto same = regularized_terms(Measure{m, c}, Measure{m, c}, 0.3,
                                      gamma);
  CHECK(max_abs_diff(same.c.dense(),
                     Mat(c.matrix() + gamma * Mat::Identity(n, n))) <= 1e-10);
  CHECK((same.m - m).norm() <= 1e-10);

  const Measure mu0{m, c};
  const Measure mu1{random_vector(302, n), random_spd(303, n, 0.3, 1.2)};
  const auto at0 = regularized_terms(mu0, mu1, 0.0, gamma);
  CHECK(max_abs_diff(at0.c.dense(),
                     Mat(c.matrix() + gamma * Mat::Identity(n, n))) <= 1e-10);
  CHECK((at0.m - m).norm() <= 1e-10);
  CHECK_THROWS_AS(regularized_terms(mu0, mu1, 0.5, 0.0), DomainViolation);
}

TEST_CASE("regularized_terms matches the dense resolvent average") {
  for (std::uint64_t tag = 0; tag < 10; ++tag) {
    const Eigen::Index n = 5;
    const Measure mu0{random_vector(tag + 310, n),
                      random_spd(tag + 320, n, 0.0, 1.5)};
    const Measure mu1{random_vector(tag + 330, n),
                      random_spd(tag + 340, n, 0.1, 2.0)};
    const double alpha = 0.45;
    const double gamma = 1e-3;
    const auto rt = regularized_terms(mu0, mu1, alpha, gamma);
    CHECK(is_pc1(rt.c));
    const Mat gi = gamma * Mat::Identity(n, n);
    const Mat dense = ((1.0 - alpha) * (mu0.cov.matrix() + gi).inverse() +
                       alpha * (mu1.cov.matrix() + gi).inverse())
                          .inverse();
    CHECK(max_abs_diff(rt.c.dense(), dense) <= 1e-10);
  }
}

TEST_CASE("js_regularized vanishes only at coincidence") {
  const Eigen::Index n = 4;
  const Measure mu{random_vector(400, n), random_spd(401, n, 0.2, 1.5)};
  for (double gamma : {1.0, 1e-3, 1e-6}) {
    CHECK(std::abs(js_regularized(mu, mu, 0.5, gamma).value) <= 1e-12);
  }
  for (std::uint64_t tag = 0; tag < 20; ++tag) {
    const Measure mu0{random_vector(tag + 410, n),
                      random_spd(tag + 420, n, 0.0, 1.5)};
    const Measure mu1{random_vector(tag + 430, n),
                      random_spd(tag + 440, n, 0.1, 1.8)};
    const Report r = js_regularized(mu0, mu1, 0.5, 1e-3);
    CHECK(r.value >= -1e-10);
    CHECK(r.value > 1e-10);  // distinct random pairs separate
    check_term_sum(r);
  }
}

TEST_CASE("js_regularized admits mutually singular pairs") {
  const Measure mu0{Vec::Zero(2),
                    Op::FromDiagonal((Vec(2) << 1.0, 0.0).finished())};
  const Measure mu1{Vec::Zero(2),
                    Op::FromDiagonal((Vec(2) << 0.0, 1.0).finished())};
  const Report r = js_regularized(mu0, mu1, 0.5, 1e-3);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0.0);
}

TEST_CASE("js_regularized skew symmetry") {
  const Eigen::Index n = 3;
  const Measure mu0{random_vector(500, n), random_spd(501, n, 0.0, 1.4)};
  const Measure mu1{random_vector(502, n), random_spd(503, n, 0.2, 1.9)};
  const double a = js_regularized(mu0, mu1, 0.3, 1e-2).value;
  const double b = js_regularized(mu1, mu0, 0.7, 1e-2).value;
  CHECK(std::abs(a - b) <= 1e-10);
}

TEST_CASE("js_regularized approaches the exact value for small gamma") {
  const Measure mu0{Vec::Zero(1), Op::Identity(1)};
  const Measure mu1{Vec::Zero(1), Op(Mat::Constant(1, 1, 2.0))};
  const double v = js_regularized(mu0, mu1, 0.5, 1e-6).value;
  CHECK(std::abs(v - 0.03305424108590413) <= 1e-4);
}

TEST_CASE("gamma_limit_study on identical measures is identically zero") {
  const Measure mu{Vec::Zero(2), random_spd(600, 2, 0.3, 1.0)};
  const auto rows = gamma_limit_study(mu, mu, 0.5, {1e-1, 1e-2, 1e-3});
  for (const auto& row : rows) {
    CHECK(std::abs(row.value) <= 1e-12);
    REQUIRE(row.abs_error.has_value());
    CHECK(*row.abs_error <= 1e-12);
  }
}

TEST_CASE("gamma_limit_study error column decreases to the exact value") {
  const Measure mu0{Vec::Zero(1), Op::Identity(1)};
  const Measure mu1{Vec::Zero(1), Op(Mat::Constant(1, 1, 2.0))};
  const std::vector<double> gammas = {1e-1, 1e-2, 1e-3, 1e-4,
                                      1e-5, 1e-6, 1e-7, 1e-8};
  const auto rows = gamma_limit_study(mu0, mu1, 0.5, gammas);
  REQUIRE(rows.size() == gammas.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].abs_error.has_value());
    if (i > 0) CHECK(*rows[i].abs_error < *rows[i - 1].abs_error);
  }
  CHECK(*rows.back().abs_error < 1e-5);
  CHECK_THROWS_AS(gamma_limit_study(mu0, mu1, 0.5, {1e-3, 1e-2}),
                  DomainViolation);
}

TEST_CASE("exact divergence remains consistent near the class boundary") {
  // operator norm of S close to one: the resolvent average has no series
  // expansion to break down, only conditioning grows
  for (std::uint64_t tag = 0; tag < 5; ++tag) {
    const Eigen::Index n = 4;
    const Op raw = random_symmetric(tag + 900, n);
    const Op s0(Mat(raw.matrix() * (0.99 / norms(raw).op_norm)));
    const Op raw1 = random_symmetric(tag + 910, n);
    const Op s1(Mat(raw1.matrix() * (0.95 / norms(raw1).op_norm)));
    const Rel r0{0.1 * random_vector(tag + 920, n), s0};
    const Rel r1{0.1 * random_vector(tag + 930, n), s1};
    const double alpha = 0.5;
    const auto mix = interpolate_relative(r0, r1, alpha);
    const Rel r_alpha{mix.u_alpha, mix.s_alpha};
    const double definitional = (1.0 - alpha) * kl_exact(r0, r_alpha).value +
                                alpha * kl_exact(r1, r_alpha).value;
    const Report r = js_geometric_exact(r0, r1, alpha);
    CHECK(std::abs(r.value - definitional) <=
          1e-10 * std::max(1.0, std::abs(r.value)));
    CHECK(r.value >= -1e-10);
  }
}

TEST_CASE("divergence stack instantiates for float") {
  using OpF = SymOperator<float>;
  using VecF = VectorX<float>;
  const OpF c0 = OpF::Identity(2);
  const OpF c1 = OpF::FromDiagonal((VecF(2) << 2.0f, 0.5f).finished());
  const VecF zero = VecF::Zero(2);
  const auto js = js_geometric_finite(zero, c0, zero, c1, 0.5f);
  CHECK(js.value >= 0.0f);
  const GaussianMeasure<float> mu0{zero, c0};
  const GaussianMeasure<float> mu1{zero, c1};
  CHECK(js_regularized(mu0, mu1, 0.5f, 1e-3f).value >= 0.0f);
  const BaseMeasure<float> base(mu0);
  const auto rel = to_relative(mu1, base);
  CHECK(kl_exact(rel, to_relative(mu0, base)).value >= -1e-6f);
}

TEST_CASE("gamma_limit_study reports no reference for nonzero means") {
  const Measure mu0{Vec::Constant(1, 0.5), Op::Identity(1)};
  const Measure mu1{Vec::Zero(1), Op(Mat::Constant(1, 1, 2.0))};
  const auto rows = gamma_limit_study(mu0, mu1, 0.5, {1e-2, 1e-3});
  for (const auto& row : rows) {
    CHECK_FALSE(row.abs_error.has_value());
    CHECK(std::isfinite(row.value));
  }
}
