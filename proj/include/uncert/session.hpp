#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uncert/explore.hpp"

namespace uncert {

/// Exit codes shared by every command: 0 all bounds satisfied, 1 input or
/// configuration error, 2 a mathematical claim failed to hold.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_violation = 2;

/// Parsed verification job. Complex numbers in the config are [re, im]
/// pairs, matrices are row lists of such pairs, angles are radians.
struct SessionConfig {
  Eigen::Index dim = 0;
  std::map<std::string, HermitianObservable> observables;
  std::map<std::string, std::string> observable_specs;  // preset string or "" for explicit matrices
  std::optional<StateVector> state;

  enum class PerpKind { none, explicit_vec, random, optimal };
  PerpKind perp_kind = PerpKind::none;
  std::optional<StateVector> perp_vec;
  std::uint64_t perp_seed = 0;

  std::vector<std::string> relations;  // ids, plus "family(rho,sigma)"

  std::string out_format;  // "", "csv" or "json"
  std::string out_path;
};

SessionConfig load_config(const std::string& path);

/// Evaluate every configured relation, print one report line per relation to
/// out, optionally write the reports to config.out_path.
int run_verify(const SessionConfig& config, std::ostream& out);

struct SweepOptions {
  std::string preset;     // "fig1" or "fig2"
  double phi = 0.0;
  int grid = 200;
  int samples = -1;       // default: 20 for fig1, 15 for fig2
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
};

/// Deterministic curves plus random-perp clouds over the theta grid, written
/// to out_path with a `<out_path>.meta.json` sidecar describing the
/// protocol. Byte-identical for identical options.
int run_sweep(const SweepOptions& opt, std::ostream& out);

struct AppendixOptions {
  int grid = 720;          // at least 8
  std::uint64_t seed = 1905;
  int audit_instances = 100;
  std::string out_path;
};

/// Tabulate the two-angle family coefficients over the grid, locate their
/// extrema, and audit the family bound on random triples.
int run_appendix(const AppendixOptions& opt, std::ostream& out);

}  // namespace uncert
