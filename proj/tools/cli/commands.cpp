#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/dataset.hpp"
#include "cli/json_io.hpp"
#include "convexpmf/simulation.hpp"

namespace convexpmf::cli {
namespace {

constexpr const char* kDistUsage = "usage: --dist geom:GAMMA | tri:J | pois:LAMBDA (e.g. geom:0.5, tri:20, pois:1.0)";

// Writes to `path` when given, otherwise to `fallback`.
bool emit(const std::string& path, std::ostream& fallback, std::ostream& err,
          const std::string& payload) {
  if (path.empty()) {
    fallback << payload;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  file << payload;
  return static_cast<bool>(file);
}

std::string fit_csv(const FitResult& fit, const EmpiricalPmf& empirical) {
  std::ostringstream os;
  os << "i,empirical,fitted\n";
  const std::size_t len = std::max(fit.pmf.size(), empirical.pmf().size());
  for (std::size_t i = 0; i < len; ++i) {
    os << i << ',' << format_double(empirical[i]) << ',' << format_double(fit.pmf[i]) << '\n';
  }
  return os.str();
}

}  // namespace

unsigned threads_from_env() {
  const char* env = std::getenv("CONVEXPMF_THREADS");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 0;
  return static_cast<unsigned>(v);
}

int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.output != "json" && opts.output != "csv") {
      err << "error: --output must be json or csv\n";
      return kExitError;
    }
    const auto empirical = read_dataset(opts.input, parse_format(opts.format));
    const auto result = fit(empirical, opts.solver);
    const std::string payload = opts.output == "json"
                                    ? to_json(result, empirical, opts.certify).dump(2) + "\n"
                                    : fit_csv(result, empirical);
    if (!emit(opts.out_path, out, err, payload)) return kExitError;
    if (opts.certify && !result.certificate.passed()) {
      for (const auto& f : result.certificate.failures) err << "certificate: " << f << '\n';
      return kExitCertificate;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err) {
  FitDocument doc;
  std::optional<EmpiricalPmf> empirical;
  try {
    std::ifstream in(opts.fit_json);
    if (!in) throw SchemaError("cannot open '" + opts.fit_json + "'");
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    doc = parse_fit_document(parsed);
    empirical = read_dataset(opts.data, parse_format(opts.format));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  CertificateReport report;
  MixtureWeights nonnegative;
  std::vector<std::string> sign_failures;
  for (const auto& [j, w] : doc.weights) {
    if (w < 0.0) {
      sign_failures.push_back("negative mixture weight at j=" + std::to_string(j));
    } else {
      nonnegative.emplace(j, w);
    }
  }
  bool negative_pmf = false;
  for (double p : doc.fitted) negative_pmf = negative_pmf || p < 0.0;
  if (negative_pmf) sign_failures.push_back("fitted pmf has a negative entry");

  FitResult fit;
  fit.pmf = Pmf::unchecked(doc.fitted);
  fit.mixture = TriangularMixture(std::move(nonnegative));
  fit.final_L = doc.final_L;
  fit.objective = doc.objective;
  report = certify(fit, *empirical);
  report.failures.insert(report.failures.end(), sign_failures.begin(), sign_failures.end());

  out << to_json(report).dump(2) << '\n';
  if (!report.passed()) {
    for (const auto& f : report.failures) err << "certificate: " << f << '\n';
    return kExitCertificate;
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<ExperimentSpec> specs;
  try {
    if (opts.format != "csv" && opts.format != "json") {
      err << "error: --format must be csv or json\n";
      return kExitError;
    }
    std::vector<Functional> functionals;
    for (const auto& name : opts.functionals) {
      const auto f = parse_functional(name);
      if (!f) {
        err << "error: unknown functional '" << name
            << "' (expected l2, kolmogorov, hellinger, tv, variance, entropy, p0)\n";
        return kExitError;
      }
      functionals.push_back(*f);
    }
    if (opts.grid) specs = standard_grid(opts.replicates, opts.seed);
    for (const auto& text : opts.distributions) {
      ExperimentSpec s;
      try {
        s.distribution = TrueDistribution::parse(text);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << kDistUsage << '\n';
        return kExitError;
      }
      s.replicates = opts.replicates;
      s.seed = opts.seed;
      specs.push_back(std::move(s));
    }
    if (specs.empty()) {
      err << "error: no distribution given\n" << kDistUsage << '\n';
      return kExitError;
    }
    for (auto& s : specs) {
      s.sample_sizes = opts.sample_sizes;
      if (!functionals.empty()) s.functionals = functionals;
      s.validate();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  const auto campaign = run_campaign(specs, RunOptions{opts.threads});
  std::string payload;
  if (opts.format == "json") {
    payload = to_json(campaign).dump(2) + "\n";
  } else {
    std::ostringstream os;
    write_csv(os, campaign.rows);
    payload = os.str();
  }
  if (!emit(opts.out_path, out, err, payload)) return kExitError;
  for (const auto& f : campaign.failures) err << "error: " << f << '\n';
  return campaign.failures.empty() ? kExitOk : kExitError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least-squares estimation of convex discrete distributions"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a convex pmf to count data");
  fit_cmd->add_option("input", fit_opts.input, "Data file")->required();
  fit_cmd->add_option("--format", fit_opts.format, "Input format: raw | counts")
      ->check(CLI::IsMember({"raw", "counts"}));
  fit_cmd->add_option("--d-tol", fit_opts.solver.d_tol, "Directional derivative tolerance");
  fit_cmd->add_option("--mass-tol", fit_opts.solver.mass_tol, "Mixture mass stopping tolerance");
  fit_cmd->add_option("--max-outer", fit_opts.solver.max_outer, "Cap on truncation rounds");
  fit_cmd->add_option("--output", fit_opts.output, "Output format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  fit_cmd->add_option("-o,--out", fit_opts.out_path, "Output file (default stdout)");
  fit_cmd->add_flag("--certify", fit_opts.certify, "Include the optimality certificate");

  CertifyOptions cert_opts;
  auto* cert_cmd = app.add_subcommand("certify", "Check a fit produced by 'fit' against data");
  cert_cmd->add_option("fit_json", cert_opts.fit_json, "Fit JSON")->required();
  cert_cmd->add_option("data", cert_opts.data, "Data file")->required();
  cert_cmd->add_option("--format", cert_opts.format, "Input format: raw | counts")
      ->check(CLI::IsMember({"raw", "counts"}));

  SimulateOptions sim_opts;
  sim_opts.threads = threads_from_env();
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison against the empirical pmf");
  sim_cmd->add_option("--dist", sim_opts.distributions, "geom:GAMMA | tri:J | pois:LAMBDA (repeatable)");
  sim_cmd->add_flag("--grid", sim_opts.grid, "Run the standard nine-distribution grid");
  sim_cmd->add_option("--n", sim_opts.sample_sizes, "Sample sizes")->delimiter(',');
  sim_cmd->add_option("--replicates", sim_opts.replicates, "Replicates per sample size");
  sim_cmd->add_option("--seed", sim_opts.seed, "Base seed");
  sim_cmd->add_option("--functionals", sim_opts.functionals, "Subset of l2,kolmogorov,hellinger,tv,variance,entropy,p0")
      ->delimiter(',');
  sim_cmd->add_option("--format", sim_opts.format, "Output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_option("--out", sim_opts.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (fit_cmd->parsed()) return cmd_fit(fit_opts, out, err);
  if (cert_cmd->parsed()) return cmd_certify(cert_opts, out, err);
  return cmd_simulate(sim_opts, out, err);
}

}  // namespace convexpmf::cli
