#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "gjs/gaussian.hpp"
#include "json.hpp"

namespace gjs {

/// 17-significant-digit decimal formatting used for all CSV output; stable
/// bytes for a fixed input and round-trips double exactly.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CovDescriptor {
  enum class Kind { Dense, Diag, KernelGram };
  Kind kind{Kind::Dense};
  MatrixX<double> dense;
  VectorX<double> diag;
  Kernel kernel{Kernel::Rbf};
  double lengthscale{1.0};
  double scale{1.0};

  /// Dimension fixed by the payload; kernel covariances take theirs from
  /// the truncation.
  std::optional<Eigen::Index> natural_dim() const {
    if (kind == Kind::Dense) return dense.rows();
    if (kind == Kind::Diag) return diag.size();
    return std::nullopt;
  }
};

struct MeasureDescriptor {
  bool zero_mean{true};
  VectorX<double> mean;
  CovDescriptor cov;
};

struct ProblemSpec {
  MeasureDescriptor base;
  std::vector<MeasureDescriptor> measures;
  std::vector<double> alphas;
  std::vector<double> gammas;      // empty selects the exact divergence
  std::vector<int> truncations;    // empty uses the payload dimension
};

namespace detail {

using nlohmann::json;

inline double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ConfigError("problem spec: expected a number at " + where);
  }
  return j.get<double>();
}

inline VectorX<double> vector_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("problem spec: expected a nonempty array at " + where);
  }
  VectorX<double> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        number_at(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

inline std::vector<double> grid_at(const json& j, const std::string& where,
                                   bool ascending) {
  std::vector<double> grid;
  if (j.is_number()) {
    grid.push_back(j.get<double>());
    return grid;
  }
  if (!j.is_array() || j.empty()) {
    throw ConfigError("problem spec: expected a number or nonempty array at " +
                      where);
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    grid.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool ok = ascending ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
    if (!ok) {
      throw ConfigError("problem spec: grid at " + where +
                        " must be strictly " +
                        (ascending ? "increasing" : "decreasing"));
    }
  }
  return grid;
}

inline MeasureDescriptor measure_at(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError("problem spec: expected an object at " + where);
  }
  MeasureDescriptor out;
  if (!j.contains("mean")) {
    throw ConfigError("problem spec: missing \"mean\" at " + where);
  }
  const json& mean = j.at("mean");
  if (mean.is_string() && mean.get<std::string>() == "zero") {
    out.zero_mean = true;
  } else {
    out.zero_mean = false;
    out.mean = vector_at(mean, where + ".mean");
  }
  if (!j.contains("cov") || !j.at("cov").is_object()) {
    throw ConfigError("problem spec: missing \"cov\" object at " + where);
  }
  const json& cov = j.at("cov");
  const std::string kind = cov.value("kind", "");
  if (kind == "dense") {
    const json& entries = cov.at("entries");
    if (!entries.is_array() || entries.empty()) {
      throw ConfigError("problem spec: dense covariance needs entries at " +
                        where);
    }
    const auto n = static_cast<Eigen::Index>(entries.size());
    out.cov.kind = CovDescriptor::Kind::Dense;
    out.cov.dense.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = entries[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw ConfigError("problem spec: dense covariance is not square at " +
                          where);
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        out.cov.dense(i, c) = number_at(
            row[static_cast<std::size_t>(c)], where + ".cov.entries");
      }
    }
  } else if (kind == "diag") {
    out.cov.kind = CovDescriptor::Kind::Diag;
    out.cov.diag = vector_at(cov.at("values"), where + ".cov.values");
  } else if (kind == "kernel") {
    out.cov.kind = CovDescriptor::Kind::KernelGram;
    const std::string name = cov.value("kernel", "");
    if (name == "rbf") {
      out.cov.kernel = Kernel::Rbf;
    } else if (name == "matern32") {
      out.cov.kernel = Kernel::Matern32;
    } else {
      throw ConfigError("problem spec: unknown kernel \"" + name + "\" at " +
                        where);
    }
    out.cov.lengthscale =
        number_at(cov.at("lengthscale"), where + ".cov.lengthscale");
    out.cov.scale = cov.contains("scale")
                        ? number_at(cov.at("scale"), where + ".cov.scale")
                        : 1.0;
  } else {
    throw ConfigError("problem spec: cov.kind must be dense, diag or kernel "
                      "at " + where);
  }
  return out;
}

}  // namespace detail

inline ProblemSpec parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("problem spec: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("problem spec: top level must be an object");
  }
  ProblemSpec spec;
  if (!j.contains("base")) {
    throw ConfigError("problem spec: missing \"base\"");
  }
  spec.base = detail::measure_at(j.at("base"), "base");
  if (!j.contains("measures") || !j.at("measures").is_array() ||
      j.at("measures").size() < 2) {
    throw ConfigError("problem spec: \"measures\" must list at least two "
                      "measures");
  }
  for (std::size_t i = 0; i < j.at("measures").size(); ++i) {
    spec.measures.push_back(detail::measure_at(
        j.at("measures")[i], "measures[" + std::to_string(i) + "]"));
  }
  if (!j.contains("alpha")) {
    throw ConfigError("problem spec: missing \"alpha\"");
  }
  spec.alphas = detail::grid_at(j.at("alpha"), "alpha", /*ascending=*/true);
  for (double a : spec.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ConfigError("problem spec: alpha values must lie in [0, 1]");
    }
  }
  if (j.contains("gamma")) {
    spec.gammas = detail::grid_at(j.at("gamma"), "gamma", /*ascending=*/false);
    for (double g : spec.gammas) {
      if (!(g > 0.0)) {
        throw ConfigError("problem spec: gamma values must be positive");
      }
    }
  }
  if (j.contains("truncation")) {
    for (double t :
         detail::grid_at(j.at("truncation"), "truncation", true)) {
      if (t < 1.0 || t != std::floor(t)) {
        throw ConfigError("problem spec: truncation must be a positive "
                          "integer");
      }
      spec.truncations.push_back(static_cast<int>(t));
    }
  }

  std::optional<Eigen::Index> payload_dim;
  auto merge_dim = [&](const MeasureDescriptor& m, const std::string& who) {
    const auto d = m.cov.natural_dim();
    if (d) {
      if (payload_dim && *payload_dim != *d) {
        throw ConfigError("problem spec: inconsistent dimensions at " + who);
      }
      payload_dim = d;
    }
    if (!m.zero_mean && d && m.mean.size() < *d) {
      throw ConfigError("problem spec: mean shorter than covariance at " +
                        who);
    }
  };
  merge_dim(spec.base, "base");
  for (std::size_t i = 0; i < spec.measures.size(); ++i) {
    merge_dim(spec.measures[i], "measures[" + std::to_string(i) + "]");
  }
  if (!payload_dim && spec.truncations.empty()) {
    throw ConfigError("problem spec: kernel covariances need a truncation");
  }
  if (payload_dim && !spec.truncations.empty()) {
    for (int t : spec.truncations) {
      if (t > *payload_dim) {
        throw ConfigError(
            "problem spec: truncation exceeds the payload dimension");
      }
    }
  }
  return spec;
}

/// Dimension used when no truncation is requested.
inline Eigen::Index natural_dimension(const ProblemSpec& spec) {
  if (!spec.truncations.empty()) {
    return spec.truncations.back();
  }
  const auto d = spec.base.cov.natural_dim();
  if (d) return *d;
  for (const auto& m : spec.measures) {
    if (const auto md = m.cov.natural_dim()) return *md;
  }
  throw ConfigError("problem spec: dimension is undetermined");
}

/// Instantiates a descriptor at the working truncation. Dense and diagonal
/// payloads are cut to their leading block; kernel covariances are built on
/// an n-point midpoint grid of [0, 1].
inline GaussianMeasure<double> realize(const MeasureDescriptor& desc,
                                       Eigen::Index n) {
  GaussianMeasure<double> mu;
  switch (desc.cov.kind) {
    case CovDescriptor::Kind::Dense:
      if (desc.cov.dense.rows() < n) {
        throw ConfigError("realize: truncation exceeds dense payload");
      }
      mu.cov = SymOperator<double>(
          MatrixX<double>(desc.cov.dense.topLeftCorner(n, n)));
      break;
    case CovDescriptor::Kind::Diag:
      if (desc.cov.diag.size() < n) {
        throw ConfigError("realize: truncation exceeds diagonal payload");
      }
      mu.cov = SymOperator<double>::FromDiagonal(
          VectorX<double>(desc.cov.diag.head(n)));
      break;
    case CovDescriptor::Kind::KernelGram: {
      std::vector<double> grid(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] =
            (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      }
      mu.cov = kernel_covariance(desc.cov.kernel, desc.cov.lengthscale, grid,
                                 desc.cov.scale);
      break;
    }
  }
  if (desc.zero_mean) {
    mu.mean = VectorX<double>::Zero(n);
  } else {
    if (desc.mean.size() < n) {
      throw ConfigError("realize: mean shorter than the truncation");
    }
    mu.mean = desc.mean.head(n);
  }
  return mu;
}

}  // namespace gjs
