#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uncert/qmcore.hpp"

namespace uncert {

/// Identifiers for every inequality the toolkit evaluates. The string forms
/// (to_string / relation_from_string) are the stable external names used in
/// configs and output files.
enum class Relation {
  hr,               // variance product vs squared commutator mean
  sc,               // variance product vs squared commutator and correlation
  mp1,              // variance sum vs commutator plus orthogonal-overlap term
  mp2,              // variance sum vs half the deviation overlap of A+B
  amended_hr,       // deviation product vs commutator over overlap denominator
  new_sum,          // variance sum vs correlation modulus plus phased overlap
  new_sum_reduced,  // variance sum vs correlation modulus alone
  new_product,      // variance product vs correlation over overlap denominator
  sch3,             // triple variance sum vs half the pair correlation moduli
  th1,              // triple variance sum vs combined deviation/commutator/overlap
  thc,              // triple variance sum vs scaled pair commutator moduli
  kw_add,           // quadrature variance sum vs sqrt3
  kw_mult,          // quadrature deviation product vs 3^(-3/4)
  eq31,             // exact decomposition of the triple variance sum
  family,           // two-angle family of triple bounds
};

std::string to_string(Relation r);
std::optional<Relation> relation_from_string(const std::string& s);

/// Side payload of a bound evaluation: phase / sign choices made, which
/// orthogonal state was used, and advisory flags ("degenerate-direction",
/// "truncation-unsafe", ...).
struct BoundParams {
  std::optional<double> alpha;
  std::optional<int> sign;
  std::optional<double> rho;
  std::optional<double> sigma;
  std::optional<std::string> perp;
  std::vector<std::string> flags;

  bool has_flag(const std::string& f) const;
};

/// Outcome of evaluating one inequality on one configuration.
/// satisfied == (slack >= -tol::slack_floor); triviality or truncation issues
/// are flags, never silent failures.
struct BoundReport {
  Relation relation = Relation::hr;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  BoundParams params;
};

BoundReport make_report(Relation r, double lhs, double rhs, BoundParams params = {});

}  // namespace uncert
