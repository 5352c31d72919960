#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "gjs/errors.hpp"

namespace gjs {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense self-adjoint operator on the truncated space. Exact symmetry is
/// enforced on construction by averaging with the transpose; the
/// orthogonal complement of the truncated span acts as zero.
template <typename Scalar>
class SymOperator {
 public:
  SymOperator() = default;

  explicit SymOperator(MatrixX<Scalar> m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw ConfigError("SymOperator: matrix must be square and nonempty");
    }
    if (!m.allFinite()) {
      throw DomainViolation("SymOperator: non-finite entries");
    }
    m_ = ((m + m.transpose()) / Scalar(2)).eval();
  }

  static SymOperator Zero(Eigen::Index n) {
    return SymOperator(MatrixX<Scalar>::Zero(n, n));
  }
  static SymOperator Identity(Eigen::Index n) {
    return SymOperator(MatrixX<Scalar>::Identity(n, n));
  }
  static SymOperator FromDiagonal(const VectorX<Scalar>& d) {
    return SymOperator(MatrixX<Scalar>(d.asDiagonal()));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixX<Scalar>& matrix() const { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  MatrixX<Scalar> m_;
};

/// Eigenvalues sorted descending; eigenvector columns carry a fixed sign
/// convention (first non-negligible component positive) so decompositions
/// are reproducible.
template <typename Scalar>
struct SpectralDecomp {
  VectorX<Scalar> eigenvalues;
  MatrixX<Scalar> eigenvectors;
};

/// Tolerance below which an eigenvalue is treated as zero for positivity
/// checks: 1e-12 * max(1, op_norm).
template <typename Scalar>
Scalar positivity_floor(Scalar op_norm) {
  return Scalar(1e-12) * std::max<Scalar>(Scalar(1), std::abs(op_norm));
}

template <typename Scalar>
SpectralDecomp<Scalar> eig_sym(const SymOperator<Scalar>& m) {
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw NonConvergence("eig_sym: eigensolver failed to converge");
  }
  const Eigen::Index n = m.dim();
  SpectralDecomp<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse().eval();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse().eval();
  for (Eigen::Index k = 0; k < n; ++k) {
    auto col = out.eigenvectors.col(k);
    const Scalar scale = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > Scalar(1e-12) * scale) {
        if (col(i) < Scalar(0)) col = -col;
        break;
      }
    }
  }
  return out;
}

/// V f(diag) V^T for a componentwise map of the spectrum.
template <typename Scalar, typename F>
SymOperator<Scalar> apply_spectral(const SpectralDecomp<Scalar>& d, F&& f) {
  VectorX<Scalar> mapped(d.eigenvalues.size());
  for (Eigen::Index k = 0; k < mapped.size(); ++k) {
    mapped(k) = f(d.eigenvalues(k));
  }
  return SymOperator<Scalar>(d.eigenvectors * mapped.asDiagonal() *
                             d.eigenvectors.transpose());
}

enum class OpFunc { Log, Exp, Power, Inverse, InverseSqrt, Sqrt };

/// Spectral operator function. Power uses the extra exponent argument.
/// Throws DomainViolation (carrying the offending eigenvalue) when the
/// spectrum leaves the domain of f.
template <typename Scalar>
SymOperator<Scalar> op_func(const SymOperator<Scalar>& m, OpFunc f,
                            Scalar exponent = Scalar(0)) {
  const SpectralDecomp<Scalar> d = eig_sym(m);
  const Scalar op_norm =
      d.eigenvalues.size() == 0 ? Scalar(0)
                                : d.eigenvalues.cwiseAbs().maxCoeff();
  const Scalar floor = positivity_floor(op_norm);
  const bool needs_positive =
      f == OpFunc::Log || f == OpFunc::Inverse || f == OpFunc::InverseSqrt ||
      (f == OpFunc::Power && exponent != std::round(exponent));
  if (needs_positive || f == OpFunc::Sqrt) {
    const Scalar lo = f == OpFunc::Sqrt ? -floor : floor;
    for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
      if (d.eigenvalues(k) <= lo) {
        throw DomainViolation("op_func: eigenvalue outside function domain",
                              static_cast<double>(d.eigenvalues(k)));
      }
    }
  }
  switch (f) {
    case OpFunc::Log:
      return apply_spectral(d, [](Scalar x) { return std::log(x); });
    case OpFunc::Exp:
      return apply_spectral(d, [](Scalar x) { return std::exp(x); });
    case OpFunc::Power:
      return apply_spectral(
          d, [exponent](Scalar x) { return std::pow(x, exponent); });
    case OpFunc::Inverse:
      return apply_spectral(d, [](Scalar x) { return Scalar(1) / x; });
    case OpFunc::InverseSqrt:
      return apply_spectral(
          d, [](Scalar x) { return Scalar(1) / std::sqrt(x); });
    case OpFunc::Sqrt:
      return apply_spectral(d, [](Scalar x) {
        return x > Scalar(0) ? std::sqrt(x) : Scalar(0);
      });
  }
  throw ConfigError("op_func: unknown function tag");
}

template <typename Scalar>
struct OperatorNorms {
  Scalar trace_norm;
  Scalar hs_norm;
  Scalar op_norm;
};

/// Trace, Hilbert-Schmidt and operator norms from the spectrum.
template <typename Scalar>
OperatorNorms<Scalar> norms(const SymOperator<Scalar>& m) {
  const VectorX<Scalar> ev = eig_sym(m).eigenvalues;
  OperatorNorms<Scalar> out{Scalar(0), Scalar(0), Scalar(0)};
  if (ev.size() == 0) return out;
  out.trace_norm = ev.cwiseAbs().sum();
  out.hs_norm = std::sqrt(ev.squaredNorm());
  out.op_norm = ev.cwiseAbs().maxCoeff();
  return out;
}

template <typename Scalar>
Scalar min_eigenvalue(const SymOperator<Scalar>& m) {
  return eig_sym(m).eigenvalues.minCoeff();
}

}  // namespace gjs
