#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convexpmf/solver.hpp"

namespace convexpmf::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,        // input, schema or solver error
  kExitCertificate = 2,  // certificate failed
};

struct FitOptions {
  std::string input;
  std::string format = "raw";
  std::string output = "json";  // json | csv
  std::string out_path;         // empty: write to `out`
  bool certify = false;
  SolverConfig solver{};
};

struct CertifyOptions {
  std::string fit_json;
  std::string data;
  std::string format = "raw";
};

struct SimulateOptions {
  std::vector<std::string> distributions;  // "geom:0.5", ...
  bool grid = false;                       // standard nine-distribution grid
  std::vector<std::size_t> sample_sizes{10, 100, 1000};
  std::size_t replicates = 1000;
  std::uint64_t seed = 20120601;
  std::vector<std::string> functionals;  // empty: all
  std::string format = "csv";            // csv | json
  std::string out_path;
  unsigned threads = 0;
};

int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

/// Worker threads from CONVEXPMF_THREADS, 0 (automatic) when unset or invalid.
unsigned threads_from_env();

/// Parses argv and dispatches to the subcommands.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace convexpmf::cli
