#include "uncert/report.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace uncert {

namespace {

constexpr std::array<std::pair<Relation, const char*>, 15> kNames{{
    {Relation::hr, "hr"},
    {Relation::sc, "sc"},
    {Relation::mp1, "mp1"},
    {Relation::mp2, "mp2"},
    {Relation::amended_hr, "amended_hr"},
    {Relation::new_sum, "new_sum"},
    {Relation::new_sum_reduced, "new_sum_reduced"},
    {Relation::new_product, "new_product"},
    {Relation::sch3, "sch3"},
    {Relation::th1, "th1"},
    {Relation::thc, "thc"},
    {Relation::kw_add, "kw_add"},
    {Relation::kw_mult, "kw_mult"},
    {Relation::eq31, "eq31"},
    {Relation::family, "family"},
}};

}  // namespace

std::string to_string(Relation r) {
  for (const auto& [rel, name] : kNames)
    if (rel == r) return name;
  return "unknown";
}

std::optional<Relation> relation_from_string(const std::string& s) {
  for (const auto& [rel, name] : kNames)
    if (s == name) return rel;
  return std::nullopt;
}

bool BoundParams::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

BoundReport make_report(Relation r, double lhs, double rhs, BoundParams params) {
  BoundReport rep;
  rep.relation = r;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = lhs - rhs;
  rep.satisfied = rep.slack >= -tol::slack_floor;
  rep.params = std::move(params);
  return rep;
}

}  // namespace uncert
