// Command-line front end: problem ingestion, divergence computation,
// gamma and truncation sweeps, density evaluation and the validation
// suite. Results are CSV on stdout or a file; diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 validation failure, 2 configuration error,
// 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gjs/divergences.hpp"
#include "gjs/problem.hpp"
#include "gjs/validate.hpp"

namespace {

struct GlobalOptions {
  std::string spec_path;
  std::string out_path = "-";
  std::uint64_t seed = 42;
  std::int64_t samples = 1000000;
  int threads = 0;

  int thread_count() const {
    return threads > 0 ? threads : gjs::hardware_threads();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gjs::ConfigError("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const GlobalOptions& opts, const std::string& text) {
  if (opts.out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw gjs::ConfigError("cannot open output file: " + opts.out_path);
  out << text;
}

gjs::ProblemSpec load_spec(const GlobalOptions& opts) {
  if (opts.spec_path.empty()) {
    throw gjs::ConfigError("this command needs --spec <path>");
  }
  return gjs::parse_problem(read_file(opts.spec_path));
}

using Measure = gjs::GaussianMeasure<double>;
using Relative = gjs::RelativeGaussian<double>;

std::vector<Measure> realize_all(const gjs::ProblemSpec& spec,
                                 Eigen::Index n) {
  std::vector<Measure> mus;
  mus.reserve(spec.measures.size());
  for (const auto& desc : spec.measures) mus.push_back(gjs::realize(desc, n));
  return mus;
}

int cmd_divergence(const GlobalOptions& opts) {
  const gjs::ProblemSpec spec = load_spec(opts);
  const Eigen::Index n = gjs::natural_dimension(spec);
  const std::vector<Measure> mus = realize_all(spec, n);
  const bool regularized = !spec.gammas.empty();

  std::ostringstream csv;
  csv << (regularized
              ? "pair,alpha,gamma,value,mean_term,det_term,trace_term,"
                "min_eig_diag\n"
              : "pair,alpha,value,mean_term,det_term,trace_term,"
                "min_eig_diag\n");
  auto row = [&](std::size_t i, std::size_t j,
                 const gjs::DivergenceReport<double>& report) {
    csv << i << "-" << j << "," << gjs::format_number(report.alpha) << ",";
    if (regularized) csv << gjs::format_number(*report.gamma) << ",";
    csv << gjs::format_number(report.value) << ","
        << gjs::format_number(report.mean_term) << ","
        << gjs::format_number(report.det_term) << ","
        << gjs::format_number(report.trace_term) << ","
        << gjs::format_number(report.min_diagnostic()) << "\n";
  };

  if (regularized) {
    for (std::size_t i = 0; i < mus.size(); ++i) {
      for (std::size_t j = i + 1; j < mus.size(); ++j) {
        for (double alpha : spec.alphas) {
          for (double gamma : spec.gammas) {
            row(i, j, gjs::js_regularized(mus[i], mus[j], alpha, gamma));
          }
        }
      }
    }
  } else {
    const gjs::BaseMeasure<double> base(gjs::realize(spec.base, n));
    std::vector<Relative> rels;
    rels.reserve(mus.size());
    for (const auto& mu : mus) rels.push_back(gjs::to_relative(mu, base));
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (std::size_t j = i + 1; j < rels.size(); ++j) {
        for (double alpha : spec.alphas) {
          row(i, j, gjs::js_geometric_exact(rels[i], rels[j], alpha));
        }
      }
    }
  }
  emit(opts, csv.str());
  return 0;
}

int cmd_interpolate(const GlobalOptions& opts) {
  const gjs::ProblemSpec spec = load_spec(opts);
  const Eigen::Index n = gjs::natural_dimension(spec);
  const gjs::BaseMeasure<double> base(gjs::realize(spec.base, n));
  std::vector<Relative> rels;
  for (const auto& mu : realize_all(spec, n)) {
    rels.push_back(gjs::to_relative(mu, base));
  }
  std::ostringstream csv;
  csv << "pair,alpha,log_z,hs_norm_s_alpha,trace_norm_s_alpha,"
         "min_eig_i_minus_s_alpha,mean_shift_norm\n";
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (std::size_t j = i + 1; j < rels.size(); ++j) {
      for (double alpha : spec.alphas) {
        const gjs::MixtureResult<double> mix =
            gjs::interpolate_relative(rels[i], rels[j], alpha);
        const gjs::OperatorNorms<double> sn = gjs::norms(mix.s_alpha);
        const double min_eig =
            1.0 - gjs::eig_sym(mix.s_alpha).eigenvalues.maxCoeff();
        csv << i << "-" << j << "," << gjs::format_number(alpha) << ","
            << gjs::format_number(mix.log_z) << ","
            << gjs::format_number(sn.hs_norm) << ","
            << gjs::format_number(sn.trace_norm) << ","
            << gjs::format_number(min_eig) << ","
            << gjs::format_number(mix.u_alpha.norm()) << "\n";
      }
    }
  }
  emit(opts, csv.str());
  return 0;
}

int cmd_sweep(const GlobalOptions& opts, const std::string& mode) {
  const gjs::ProblemSpec spec = load_spec(opts);
  std::ostringstream csv;
  if (mode == "gamma") {
    if (spec.gammas.empty()) {
      throw gjs::ConfigError("sweep --mode gamma needs a gamma grid");
    }
    const Eigen::Index n = gjs::natural_dimension(spec);
    const std::vector<Measure> mus = realize_all(spec, n);
    const double alpha = spec.alphas.front();
    const auto rows =
        gjs::gamma_limit_study(mus[0], mus[1], alpha, spec.gammas);
    csv << "gamma,value,abs_error_vs_reference\n";
    // without an exact reference the smallest-gamma value anchors the
    // error column
    const double fallback = rows.back().value;
    for (const auto& r : rows) {
      const double err =
          r.abs_error ? *r.abs_error : std::abs(r.value - fallback);
      csv << gjs::format_number(r.gamma) << "," << gjs::format_number(r.value)
          << "," << gjs::format_number(err) << "\n";
    }
  } else if (mode == "truncation") {
    if (spec.truncations.empty()) {
      throw gjs::ConfigError("sweep --mode truncation needs a truncation "
                             "grid");
    }
    const double alpha = spec.alphas.front();
    const std::size_t count = spec.truncations.size();
    std::vector<double> values(count);
    std::vector<std::exception_ptr> errors(count);
    gjs::for_each_shard(
        static_cast<std::int64_t>(count), 1, opts.thread_count(),
        [&](std::int64_t s, std::int64_t, std::int64_t) {
          const auto idx = static_cast<std::size_t>(s);
          try {
            const Eigen::Index n = spec.truncations[idx];
            const std::vector<Measure> mus = realize_all(spec, n);
            if (!spec.gammas.empty()) {
              values[idx] = gjs::js_regularized(mus[0], mus[1], alpha,
                                                spec.gammas.front())
                                .value;
            } else {
              const gjs::BaseMeasure<double> base(
                  gjs::realize(spec.base, n));
              values[idx] = gjs::js_geometric_exact(
                                gjs::to_relative(mus[0], base),
                                gjs::to_relative(mus[1], base), alpha)
                                .value;
            }
          } catch (...) {
            errors[idx] = std::current_exception();
          }
        });
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    csv << "truncation,value,abs_error_vs_reference\n";
    const double reference = values.back();
    for (std::size_t i = 0; i < count; ++i) {
      csv << spec.truncations[i] << "," << gjs::format_number(values[i])
          << "," << gjs::format_number(std::abs(values[i] - reference))
          << "\n";
    }
  } else {
    throw gjs::ConfigError("sweep: --mode must be gamma or truncation");
  }
  emit(opts, csv.str());
  return 0;
}

int cmd_density(const GlobalOptions& opts, std::int64_t points) {
  const gjs::ProblemSpec spec = load_spec(opts);
  const Eigen::Index n = gjs::natural_dimension(spec);
  const gjs::BaseMeasure<double> base(gjs::realize(spec.base, n));
  std::vector<Relative> rels;
  for (const auto& mu : realize_all(spec, n)) {
    rels.push_back(gjs::to_relative(mu, base));
  }
  const gjs::MatrixX<double> draws =
      gjs::sample(base.measure(), points, opts.seed);
  std::ostringstream csv;
  csv << "point,measure,log_density\n";
  for (std::int64_t p = 0; p < points; ++p) {
    for (std::size_t m = 0; m < rels.size(); ++m) {
      const double value =
          gjs::log_density(rels[m], base, gjs::VectorX<double>(draws.col(p)));
      csv << p << "," << m << "," << gjs::format_number(value) << "\n";
    }
  }
  emit(opts, csv.str());
  return 0;
}

int cmd_validate(const GlobalOptions& opts) {
  std::ostringstream report;
  bool ok = true;

  const gjs::ScalarSuiteReport scalars = gjs::scalar_suite();
  for (const auto& c : scalars.checks) {
    report << (c.pass ? "PASS" : "FAIL") << " scalar " << c.name
           << " got=" << gjs::format_number(c.got)
           << " want=" << gjs::format_number(c.want) << "\n";
  }
  ok = ok && scalars.all_pass;

  const auto pairings =
      gjs::run_oracle_pairings(opts.seed, opts.samples, opts.thread_count());
  for (const auto& p : pairings) {
    report << (p.pass ? "PASS" : "FAIL") << (p.wide_ci ? " WIDE-CI" : "")
           << " pairing " << p.op << " vs " << p.oracle
           << " value=" << gjs::format_number(p.value)
           << " oracle=" << gjs::format_number(p.oracle_value)
           << " tol=" << gjs::format_number(p.tolerance) << "\n";
    // a pairing whose confidence interval is too wide to be informative is
    // flagged, not fatal
    ok = ok && (p.pass || p.wide_ci);
  }

  const bool covered = gjs::oracle_coverage_complete(pairings);
  report << (covered ? "PASS" : "FAIL") << " pairing table covers all closed "
                                           "forms\n";
  ok = ok && covered;
  report << (ok ? "OK" : "FAILED") << ": " << scalars.checks.size()
         << " scalar checks, " << pairings.size() << " oracle pairings\n";
  emit(opts, report.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric Jensen-Shannon divergence toolkit for Gaussian "
               "measures"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--spec", opts.spec_path, "Problem description (JSON)");
  app.add_option("--out", opts.out_path, "Output path, or - for stdout");
  app.add_option("--seed", opts.seed, "Seed for sampling-backed commands");
  app.add_option("--samples", opts.samples, "Monte-Carlo sample count");
  app.add_option("--threads", opts.threads,
                 "Worker threads (default: all cores)");

  auto* divergence =
      app.add_subcommand("divergence", "Divergences for every measure pair");
  auto* interpolate =
      app.add_subcommand("interpolate", "Geometric mixtures per alpha");
  auto* sweep = app.add_subcommand("sweep", "Gamma or truncation sweep");
  std::string mode;
  sweep->add_option("--mode", mode, "gamma | truncation")->required();
  auto* density =
      app.add_subcommand("density", "Log densities at base-measure draws");
  std::int64_t points = 10;
  density->add_option("--points", points, "Number of evaluation points");
  auto* validate =
      app.add_subcommand("validate", "Run the oracle pairing suite");
  for (auto* sub : {divergence, interpolate, sweep, density, validate}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (divergence->parsed()) return cmd_divergence(opts);
    if (interpolate->parsed()) return cmd_interpolate(opts);
    if (sweep->parsed()) return cmd_sweep(opts, mode);
    if (density->parsed()) return cmd_density(opts, points);
    if (validate->parsed()) return cmd_validate(opts);
  } catch (const gjs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gjs::DomainViolation& e) {
    std::cerr << "domain error: " << e.what()
              << " (offending value " << gjs::format_number(e.offending())
              << ")\n";
    return 3;
  } catch (const gjs::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
