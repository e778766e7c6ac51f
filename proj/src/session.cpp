#include "uncert/session.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace uncert {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ComplexVector parse_amplitudes(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw InvalidInput(what + " must be a nonempty array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw InvalidInput(what + " entry " + std::to_string(i) + " must be an [re, im] pair");
    v(static_cast<Eigen::Index>(i)) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

ComplexMatrix parse_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(what + " must be a nonempty array of rows");
  Eigen::Index n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw InvalidInput(what + " row " + std::to_string(r) + " must have " + std::to_string(n) +
                         " [re, im] entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInput(what + " entry (" + std::to_string(r) + "," + std::to_string(c) +
                           ") must be an [re, im] pair");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

struct RelationToken {
  Relation rel;
  double rho = 0.0;
  double sigma = 0.0;
};

RelationToken parse_relation_token(const std::string& s) {
  if (s.rfind("family(", 0) == 0 && s.back() == ')') {
    std::string args = s.substr(7, s.size() - 8);
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw InvalidInput("relation \"" + s + "\" needs two comma-separated angles");
    try {
      return RelationToken{Relation::family, std::stod(args.substr(0, comma)),
                           std::stod(args.substr(comma + 1))};
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse angles in relation \"" + s + "\"");
    }
  }
  auto rel = relation_from_string(s);
  if (!rel) throw InvalidInput("unknown relation \"" + s + "\"");
  if (*rel == Relation::family)
    throw InvalidInput("relation family needs angles, e.g. family(2.0944,4.1888)");
  return RelationToken{*rel};
}

}  // namespace

SessionConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InvalidInput("config root must be an object");

  SessionConfig cfg;
  if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<long>() < 1)
    throw InvalidInput("config needs a positive integer \"dim\"");
  cfg.dim = root["dim"].get<Eigen::Index>();

  if (!root.contains("observables") || !root["observables"].is_object() ||
      root["observables"].empty())
    throw InvalidInput("config needs an \"observables\" object");
  for (const auto& [name, spec] : root["observables"].items()) {
    if (spec.is_string()) {
      HermitianObservable obs = parse_observable(spec.get<std::string>());
      cfg.observable_specs[name] = spec.get<std::string>();
      cfg.observables.emplace(name, std::move(obs));
    } else if (spec.is_object() && spec.contains("matrix")) {
      cfg.observable_specs[name] = "";
      cfg.observables.emplace(
          name, HermitianObservable(parse_matrix(spec["matrix"], "observable " + name)));
    } else {
      throw InvalidInput("observable " + name + " must be a preset string or {\"matrix\": ...}");
    }
    if (cfg.observables.at(name).dim() != cfg.dim)
      throw InvalidInput("observable " + name + " has dimension " +
                         std::to_string(cfg.observables.at(name).dim()) + ", config dim is " +
                         std::to_string(cfg.dim));
  }

  if (!root.contains("state")) throw InvalidInput("config needs a \"state\"");
  const json& st = root["state"];
  if (st.is_object() && st.contains("family")) {
    std::string fam = st.value("family", "");
    double theta = st.value("theta", 0.0);
    double phi = st.value("phi", 0.0);
    if (fam == "fig1")
      cfg.state = fig1_state(Fig1Params{theta, phi});
    else if (fam == "fig2")
      cfg.state = fig2_state(Fig2Params{theta, phi, st.value("beta", 0.0), st.value("gamma", 0.0)});
    else
      throw InvalidInput("unknown state family \"" + fam + "\" (use fig1 or fig2)");
  } else if (st.is_object() && st.contains("amplitudes")) {
    cfg.state = StateVector(parse_amplitudes(st["amplitudes"], "state amplitudes"));
  } else {
    throw InvalidInput("state must give a family or explicit amplitudes");
  }
  if (cfg.state->dim() != cfg.dim)
    throw InvalidInput("state has dimension " + std::to_string(cfg.state->dim()) +
                       ", config dim is " + std::to_string(cfg.dim));

  if (root.contains("perp")) {
    const json& pp = root["perp"];
    if (pp.is_string()) {
      std::string s = pp.get<std::string>();
      if (s == "optimal") {
        cfg.perp_kind = SessionConfig::PerpKind::optimal;
      } else if (s.rfind("random:", 0) == 0) {
        cfg.perp_kind = SessionConfig::PerpKind::random;
        try {
          cfg.perp_seed = std::stoull(s.substr(7));
        } catch (const std::exception&) {
          throw InvalidInput("cannot parse seed in perp \"" + s + "\"");
        }
      } else {
        throw InvalidInput("perp must be \"optimal\", \"random:<seed>\" or explicit amplitudes");
      }
    } else if (pp.is_object() && pp.contains("amplitudes")) {
      cfg.perp_kind = SessionConfig::PerpKind::explicit_vec;
      cfg.perp_vec = StateVector(parse_amplitudes(pp["amplitudes"], "perp amplitudes"));
      if (cfg.perp_vec->dim() != cfg.dim)
        throw InvalidInput("perp has mismatched dimension");
    } else {
      throw InvalidInput("perp must be \"optimal\", \"random:<seed>\" or explicit amplitudes");
    }
  }

  if (!root.contains("relations") || !root["relations"].is_array() || root["relations"].empty())
    throw InvalidInput("config needs a nonempty \"relations\" array");
  for (const json& r : root["relations"]) {
    if (!r.is_string()) throw InvalidInput("relations must be strings");
    parse_relation_token(r.get<std::string>());  // validate now
    cfg.relations.push_back(r.get<std::string>());
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object() || !o.contains("format") || !o.contains("path"))
      throw InvalidInput("output needs \"format\" and \"path\"");
    cfg.out_format = o["format"].get<std::string>();
    cfg.out_path = o["path"].get<std::string>();
    if (cfg.out_format != "csv" && cfg.out_format != "json")
      throw InvalidInput("output format must be csv or json");
  }
  return cfg;
}

namespace {

const HermitianObservable& need_observable(const SessionConfig& cfg, const std::string& name,
                                           const std::string& rel) {
  auto it = cfg.observables.find(name);
  if (it == cfg.observables.end())
    throw InvalidInput("relation " + rel + " needs observable \"" + name + "\"");
  return it->second;
}

/// kw bounds need the quadrature preset triple osc<n>:q, osc<n>:p, osc<n>:r.
OscillatorTriple need_oscillator(const SessionConfig& cfg, const std::string& rel) {
  auto spec = [&](const std::string& name) -> std::string {
    auto it = cfg.observable_specs.find(name);
    return it == cfg.observable_specs.end() ? std::string() : it->second;
  };
  std::string sa = spec("A"), sb = spec("B"), sc_ = spec("C");
  auto prefix = [](const std::string& s) { return s.substr(0, s.find(':')); };
  auto component = [](const std::string& s) {
    auto c = s.find(':');
    return c == std::string::npos ? std::string() : s.substr(c + 1);
  };
  if (sa.rfind("osc", 0) != 0 || prefix(sa) != prefix(sb) || prefix(sa) != prefix(sc_) ||
      component(sa) != "q" || component(sb) != "p" || component(sc_) != "r")
    throw InvalidInput("relation " + rel +
                       " needs observables A,B,C set to the same-size oscillator presets "
                       "osc<n>:q, osc<n>:p, osc<n>:r");
  int n = std::stoi(prefix(sa).substr(3));
  return oscillator_triple(n);
}

StateVector resolve_perp(const SessionConfig& cfg, const RelationToken& tok,
                         std::string& provenance, std::vector<std::string>& extra_flags) {
  const StateVector& psi = *cfg.state;
  switch (cfg.perp_kind) {
    case SessionConfig::PerpKind::explicit_vec:
      provenance = "explicit";
      return *cfg.perp_vec;
    case SessionConfig::PerpKind::random:
      provenance = "random:" + std::to_string(cfg.perp_seed);
      return random_orthogonal_state(psi, cfg.perp_seed);
    case SessionConfig::PerpKind::optimal: {
      provenance = "optimal";
      PerpResult r = [&] {
        switch (tok.rel) {
          case Relation::mp1:
          case Relation::amended_hr:
            return optimal_perp_mp(need_observable(cfg, "A", "perp"),
                                   need_observable(cfg, "B", "perp"), psi);
          case Relation::th1:
            return optimal_perp_triple(need_observable(cfg, "A", "perp"),
                                       need_observable(cfg, "B", "perp"),
                                       need_observable(cfg, "C", "perp"), psi);
          default:
            return optimal_perp_pair(need_observable(cfg, "A", "perp"),
                                     need_observable(cfg, "B", "perp"), psi);
        }
      }();
      if (r.degenerate) extra_flags.push_back("already-tight-for-all-perp");
      return r.state;
    }
    case SessionConfig::PerpKind::none:
      break;
  }
  throw InvalidInput("relation " + to_string(tok.rel) +
                     " needs a \"perp\" entry (optimal, random:<seed> or amplitudes)");
}

BoundReport evaluate_relation(const SessionConfig& cfg, const std::string& token) {
  RelationToken tok = parse_relation_token(token);
  const StateVector& psi = *cfg.state;
  auto a = [&] { return need_observable(cfg, "A", token); };
  auto b = [&] { return need_observable(cfg, "B", token); };
  auto c = [&] { return need_observable(cfg, "C", token); };

  std::string provenance;
  std::vector<std::string> extra_flags;
  BoundReport rep;
  switch (tok.rel) {
    case Relation::hr:
      rep = bound_hr(a(), b(), psi);
      break;
    case Relation::sc:
      rep = bound_schrodinger(a(), b(), psi);
      break;
    case Relation::mp1:
      rep = bound_mp_sum(a(), b(), psi, resolve_perp(cfg, tok, provenance, extra_flags));
      break;
    case Relation::mp2:
      rep = bound_mp_sum2(a(), b(), psi);
      break;
    case Relation::amended_hr:
      rep = bound_amended_hr(a(), b(), psi, resolve_perp(cfg, tok, provenance, extra_flags));
      break;
    case Relation::new_sum:
      rep = bound_new_sum(a(), b(), psi, resolve_perp(cfg, tok, provenance, extra_flags));
      break;
    case Relation::new_sum_reduced:
      rep = bound_new_sum_reduced(a(), b(), psi);
      break;
    case Relation::new_product:
      rep = bound_new_product(a(), b(), psi, resolve_perp(cfg, tok, provenance, extra_flags));
      break;
    case Relation::sch3:
      rep = bound_sch_triple(a(), b(), c(), psi);
      break;
    case Relation::th1:
      rep = bound_th1(a(), b(), c(), psi, resolve_perp(cfg, tok, provenance, extra_flags));
      break;
    case Relation::thc:
      rep = bound_thc(a(), b(), c(), psi);
      break;
    case Relation::kw_add:
      rep = bound_kw_additive(need_oscillator(cfg, token), psi);
      break;
    case Relation::kw_mult:
      rep = bound_kw_multiplicative(need_oscillator(cfg, token), psi);
      break;
    case Relation::eq31: {
      EqualityDecomposition eq = equality_decomposition(a(), b(), c(), psi, complete_basis(psi));
      rep = eq.report;
      break;
    }
    case Relation::family:
      rep = bound_general_family(a(), b(), c(), psi, tok.rho, tok.sigma);
      break;
  }
  if (!provenance.empty()) rep.params.perp = provenance;
  for (auto& f : extra_flags) rep.params.flags.push_back(f);
  return rep;
}

std::string report_line(const BoundReport& rep) {
  std::ostringstream os;
  os << "relation=" << to_string(rep.relation) << " lhs=" << fmt17(rep.lhs)
     << " rhs=" << fmt17(rep.rhs) << " slack=" << fmt17(rep.slack)
     << " satisfied=" << (rep.satisfied ? "yes" : "no");
  if (rep.params.alpha) os << " alpha=" << fmt17(*rep.params.alpha);
  if (rep.params.sign) os << " sign=" << (*rep.params.sign > 0 ? "+1" : "-1");
  if (rep.params.rho) os << " rho=" << fmt17(*rep.params.rho) << " sigma=" << fmt17(*rep.params.sigma);
  if (rep.params.perp) os << " perp=" << *rep.params.perp;
  if (!rep.params.flags.empty()) {
    os << " flags=";
    for (std::size_t i = 0; i < rep.params.flags.size(); ++i)
      os << (i ? "," : "") << rep.params.flags[i];
  }
  return os.str();
}

void write_reports_csv(const std::string& path, const std::vector<BoundReport>& reports) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + path);
  f << "relation,lhs,rhs,slack,satisfied\n";
  for (const BoundReport& r : reports)
    f << to_string(r.relation) << ',' << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ','
      << fmt17(r.slack) << ',' << (r.satisfied ? "yes" : "no") << '\n';
}

void write_reports_json(const std::string& path, const std::vector<BoundReport>& reports) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + path);
  f << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundReport& r = reports[i];
    f << "  {\"relation\":\"" << to_string(r.relation) << "\",\"lhs\":" << fmt17(r.lhs)
      << ",\"rhs\":" << fmt17(r.rhs) << ",\"slack\":" << fmt17(r.slack)
      << ",\"satisfied\":" << (r.satisfied ? "true" : "false");
    if (r.params.alpha) f << ",\"alpha\":" << fmt17(*r.params.alpha);
    if (r.params.sign) f << ",\"sign\":" << *r.params.sign;
    if (r.params.rho) f << ",\"rho\":" << fmt17(*r.params.rho) << ",\"sigma\":" << fmt17(*r.params.sigma);
    if (r.params.perp) f << ",\"perp\":\"" << *r.params.perp << "\"";
    if (!r.params.flags.empty()) {
      f << ",\"flags\":[";
      for (std::size_t k = 0; k < r.params.flags.size(); ++k)
        f << (k ? "," : "") << '"' << r.params.flags[k] << '"';
      f << ']';
    }
    f << '}' << (i + 1 < reports.size() ? "," : "") << '\n';
  }
  f << "]\n";
}

}  // namespace

int run_verify(const SessionConfig& cfg, std::ostream& out) {
  std::vector<BoundReport> reports;
  reports.reserve(cfg.relations.size());
  for (const std::string& token : cfg.relations) reports.push_back(evaluate_relation(cfg, token));

  bool violation = false;
  for (const BoundReport& r : reports) {
    out << report_line(r) << '\n';
    // Truncation-unsafe evaluations are advisory, never counted as violations.
    if (!r.satisfied && !r.params.has_flag("truncation-unsafe")) violation = true;
  }
  out << (violation ? "result: VIOLATION" : "result: all satisfied") << '\n';

  if (!cfg.out_path.empty()) {
    if (cfg.out_format == "csv")
      write_reports_csv(cfg.out_path, reports);
    else
      write_reports_json(cfg.out_path, reports);
  }
  return violation ? exit_violation : exit_ok;
}

namespace {

void write_records_csv(const std::string& path, const std::vector<SweepRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + path);
  f << "theta,phi,relation,sample,value\n";
  for (const SweepRecord& r : records)
    f << fmt17(r.theta) << ',' << fmt17(r.phi) << ',' << r.relation << ',' << r.sample << ','
      << fmt17(r.value) << '\n';
}

void write_records_json(const std::string& path, const std::vector<SweepRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + path);
  f << "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    f << "  {\"theta\":" << fmt17(r.theta) << ",\"phi\":" << fmt17(r.phi) << ",\"relation\":\""
      << r.relation << "\",\"sample\":" << r.sample << ",\"value\":" << fmt17(r.value) << '}'
      << (i + 1 < records.size() ? "," : "") << '\n';
  }
  f << "]\n";
}

}  // namespace

int run_sweep(const SweepOptions& opt, std::ostream& out) {
  if (opt.preset != "fig1" && opt.preset != "fig2")
    throw InvalidInput("sweep preset must be fig1 or fig2");
  if (opt.grid < 2) throw InvalidInput("sweep grid must be at least 2");
  if (opt.format != "csv" && opt.format != "json")
    throw InvalidInput("sweep format must be csv or json");
  if (opt.out_path.empty()) throw InvalidInput("sweep needs an output path");
  bool fig1 = opt.preset == "fig1";
  int samples = opt.samples >= 0 ? opt.samples : (fig1 ? 20 : 15);
  if (samples < 1) throw InvalidInput("sweep needs at least one sample per theta");

  SpinTriple spin = spin_operators(1.0);
  std::vector<double> grid = theta_grid(opt.grid);
  std::vector<SweepRecord> records;
  std::vector<double> crossings;

  if (fig1) {
    std::vector<SweepRecord> mp1_cloud =
        cloud_sample(Relation::mp1, {spin.jx, spin.jy}, StateFamily::fig1, opt.grid, opt.phi,
                     samples, derive_seed(opt.seed, 0, 0xC10DULL));
    std::vector<SweepRecord> new_sum_cloud =
        cloud_sample(Relation::new_sum, {spin.jx, spin.jy}, StateFamily::fig1, opt.grid, opt.phi,
                     samples, derive_seed(opt.seed, 1, 0xC10DULL));
    for (int i = 0; i < opt.grid; ++i) {
      StateVector psi = fig1_state(Fig1Params{grid[i], opt.phi});
      PairMoments m = pair_moments(spin.jx, spin.jy, psi);
      records.push_back({grid[i], opt.phi, "sv", -1, m.var_a + m.var_b, opt.seed});
      records.push_back({grid[i], opt.phi, "sc", -1, std::hypot(m.x, m.w), opt.seed});
      records.push_back({grid[i], opt.phi, "hr", -1, std::abs(m.w), opt.seed});
      for (int k = 0; k < samples; ++k) {
        records.push_back(mp1_cloud[static_cast<std::size_t>(i) * samples + k]);
        records.back().seed = opt.seed;
      }
      for (int k = 0; k < samples; ++k) {
        records.push_back(new_sum_cloud[static_cast<std::size_t>(i) * samples + k]);
        records.back().seed = opt.seed;
      }
    }
  } else {
    std::vector<SweepRecord> th1_cloud =
        cloud_sample(Relation::th1, {spin.jx, spin.jy, spin.jz}, StateFamily::fig2, opt.grid,
                     opt.phi, samples, derive_seed(opt.seed, 2, 0xC10DULL));
    for (int i = 0; i < opt.grid; ++i) {
      StateVector psi = fig2_state(Fig2Params{grid[i], opt.phi, 0.0, 0.0});
      TripleMoments m = triple_moments(spin.jx, spin.jy, spin.jz, psi);
      records.push_back({grid[i], opt.phi, "sv", -1, m.variance_sum(), opt.seed});
      records.push_back({grid[i], opt.phi, "sch3", -1, bound_sch_triple(m).rhs, opt.seed});
      for (int k = 0; k < samples; ++k) {
        records.push_back(th1_cloud[static_cast<std::size_t>(i) * samples + k]);
        records.back().seed = opt.seed;
      }
    }
    auto base = [&](double theta) {
      return th1_base_bound(
          triple_moments(spin.jx, spin.jy, spin.jz, fig2_state(Fig2Params{theta, opt.phi, 0, 0})));
    };
    auto sch3 = [&](double theta) {
      return bound_sch_triple(spin.jx, spin.jy, spin.jz,
                              fig2_state(Fig2Params{theta, opt.phi, 0, 0}))
          .rhs;
    };
    crossings = crossing_scan(base, sch3, 0.0, std::numbers::pi);
  }

  // Random-perp bound values must stay below the variance sum; anything else
  // is a mathematical violation and is surfaced loudly.
  bool violation = false;
  for (const SweepRecord& r : records) {
    if (r.sample < 0) continue;
    double lhs = 0.0;
    if (fig1) {
      PairMoments m = pair_moments(spin.jx, spin.jy, fig1_state(Fig1Params{r.theta, r.phi}));
      lhs = m.var_a + m.var_b;
    } else {
      TripleMoments m =
          triple_moments(spin.jx, spin.jy, spin.jz, fig2_state(Fig2Params{r.theta, r.phi, 0, 0}));
      lhs = m.variance_sum();
    }
    if (r.value > lhs + tol::slack_floor) {
      out << "VIOLATION: relation " << r.relation << " at theta=" << fmt17(r.theta)
          << " sample=" << r.sample << " value=" << fmt17(r.value) << " exceeds lhs=" << fmt17(lhs)
          << '\n';
      violation = true;
    }
  }

  if (opt.format == "csv")
    write_records_csv(opt.out_path, records);
  else
    write_records_json(opt.out_path, records);

  {
    std::ofstream meta(opt.out_path + ".meta.json", std::ios::binary);
    if (!meta) throw InvalidInput("cannot open output file: " + opt.out_path + ".meta.json");
    meta << "{\n";
    meta << "  \"command\": \"sweep\",\n";
    meta << "  \"preset\": \"" << opt.preset << "\",\n";
    meta << "  \"phi\": " << fmt17(opt.phi) << ",\n";
    meta << "  \"grid\": " << opt.grid << ",\n";
    meta << "  \"samples\": " << samples << ",\n";
    meta << "  \"seed\": " << opt.seed << ",\n";
    meta << "  \"format\": \"" << opt.format << "\",\n";
    meta << "  \"records\": \"" << opt.out_path << "\",\n";
    meta << "  \"theta_grid\": \"uniform [0, pi], endpoints included\",\n";
    meta << "  \"perp_distribution\": \"haar-on-complement\",\n";
    if (fig1) {
      meta << "  \"observables\": [\"spin1:Jx\", \"spin1:Jy\"],\n";
      meta << "  \"curves\": {\n";
      meta << "    \"sv\": \"sum of the two variances (lhs)\",\n";
      meta << "    \"sc\": \"correlation modulus sqrt(x^2+w^2)\",\n";
      meta << "    \"hr\": \"absolute commutator mean |<[A,B]>|\"\n";
      meta << "  },\n";
      meta << "  \"clouds\": [\"mp1\", \"new_sum\"]\n";
    } else {
      meta << "  \"observables\": [\"spin1:Jx\", \"spin1:Jy\", \"spin1:Jz\"],\n";
      meta << "  \"curves\": {\n";
      meta << "    \"sv\": \"sum of the three variances (lhs)\",\n";
      meta << "    \"sch3\": \"half the sum of pair correlation moduli\"\n";
      meta << "  },\n";
      meta << "  \"clouds\": [\"th1\"],\n";
      meta << "  \"crossing_curves\": \"th1 perp-independent terms vs sch3 rhs\",\n";
      meta << "  \"crossings\": [";
      for (std::size_t i = 0; i < crossings.size(); ++i)
        meta << (i ? ", " : "") << fmt17(crossings[i]);
      meta << "]\n";
    }
    meta << "}\n";
  }

  out << "wrote " << records.size() << " records to " << opt.out_path << " (meta: " << opt.out_path
      << ".meta.json)\n";
  return violation ? exit_violation : exit_ok;
}

int run_appendix(const AppendixOptions& opt, std::ostream& out) {
  using std::numbers::pi;
  if (opt.grid < 8) throw InvalidInput("appendix grid must be at least 8");
  if (opt.out_path.empty()) throw InvalidInput("appendix needs an output path");

  int n = opt.grid;
  double cell = 2.0 * pi / static_cast<double>(n);
  double mu_max = -1e300, nu_max = -1.0;
  std::vector<std::pair<double, double>> argmax_mu, argmax_nu;
  {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file: " + opt.out_path);
    f << "rho,sigma,mu,nu\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == 0 && j == 0) continue;  // coefficients undefined at the origin
        double rho = cell * i, sigma = cell * j;
        TuningCoefficients tc = mu_nu(rho, sigma);
        f << fmt17(rho) << ',' << fmt17(sigma) << ',' << fmt17(tc.mu) << ',' << fmt17(tc.nu)
          << '\n';
        if (tc.mu > mu_max + 1e-12) {
          mu_max = tc.mu;
          argmax_mu.assign(1, {rho, sigma});
        } else if (tc.mu > mu_max - 1e-12) {
          argmax_mu.emplace_back(rho, sigma);
        }
        double an = std::abs(tc.nu);
        if (an > nu_max + 1e-12) {
          nu_max = an;
          argmax_nu.assign(1, {rho, sigma});
        } else if (an > nu_max - 1e-12) {
          argmax_nu.emplace_back(rho, sigma);
        }
      }
    }
  }

  // The located extrema must sit within one cell of (2pi/3, 4pi/3) or its
  // mirror (4pi/3, 2pi/3).
  auto near_reference = [&](const std::pair<double, double>& p) {
    auto close = [&](double a, double b) { return std::abs(a - b) <= cell + 1e-12; };
    return (close(p.first, 2 * pi / 3) && close(p.second, 4 * pi / 3)) ||
           (close(p.first, 4 * pi / 3) && close(p.second, 2 * pi / 3));
  };
  bool argmax_ok = !argmax_mu.empty() && !argmax_nu.empty();
  for (const auto& p : argmax_mu) argmax_ok = argmax_ok && near_reference(p);
  for (const auto& p : argmax_nu) argmax_ok = argmax_ok && near_reference(p);

  // Audit the family bound on random triples over the same grid.
  double min_slack = 1e300;
  for (int inst = 0; inst < opt.audit_instances; ++inst) {
    std::uint64_t s = derive_seed(opt.seed, 0xA0D1ULL, static_cast<std::uint64_t>(inst));
    HermitianObservable a = random_hermitian(3, derive_seed(s, 1, 0));
    HermitianObservable b = random_hermitian(3, derive_seed(s, 2, 0));
    HermitianObservable c = random_hermitian(3, derive_seed(s, 3, 0));
    StateVector psi = random_state(3, derive_seed(s, 4, 0));
    TripleMoments m = triple_moments(a, b, c, psi);
    double v = m.variance_sum();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == 0 && j == 0) continue;
        TuningCoefficients tc = mu_nu(cell * i, cell * j);
        min_slack = std::min(min_slack, v - (tc.mu * m.var_sum_op - tc.nu * m.kappa));
      }
    }
  }
  bool audit_ok = min_slack >= -tol::slack_floor;

  {
    std::ofstream meta(opt.out_path + ".meta.json", std::ios::binary);
    if (!meta) throw InvalidInput("cannot open output file: " + opt.out_path + ".meta.json");
    meta << "{\n";
    meta << "  \"command\": \"appendix\",\n";
    meta << "  \"grid\": " << n << ",\n";
    meta << "  \"records\": \"" << opt.out_path << "\",\n";
    meta << "  \"grid_convention\": \"rho,sigma = 2*pi*i/grid for i = 0..grid-1; "
            "the undefined cell (0,0) is skipped\",\n";
    meta << "  \"mu_max\": " << fmt17(mu_max) << ",\n";
    meta << "  \"argmax_mu\": [";
    for (std::size_t i = 0; i < argmax_mu.size(); ++i)
      meta << (i ? ", " : "") << '[' << fmt17(argmax_mu[i].first) << ", "
           << fmt17(argmax_mu[i].second) << ']';
    meta << "],\n";
    meta << "  \"abs_nu_max\": " << fmt17(nu_max) << ",\n";
    meta << "  \"argmax_abs_nu\": [";
    for (std::size_t i = 0; i < argmax_nu.size(); ++i)
      meta << (i ? ", " : "") << '[' << fmt17(argmax_nu[i].first) << ", "
           << fmt17(argmax_nu[i].second) << ']';
    meta << "],\n";
    meta << "  \"audit\": {\"instances\": " << opt.audit_instances << ", \"seed\": " << opt.seed
         << ", \"min_slack\": " << fmt17(min_slack) << "}\n";
    meta << "}\n";
  }

  out << "mu max " << fmt17(mu_max) << " at";
  for (const auto& p : argmax_mu)
    out << " (" << fmt17(p.first) << ", " << fmt17(p.second) << ")";
  out << "\n|nu| max " << fmt17(nu_max) << " at";
  for (const auto& p : argmax_nu)
    out << " (" << fmt17(p.first) << ", " << fmt17(p.second) << ")";
  out << "\nextrema at the reference angles: " << (argmax_ok ? "yes" : "NO") << '\n';
  out << "family audit over " << opt.audit_instances
      << " random triples: min slack = " << fmt17(min_slack) << (audit_ok ? "" : " VIOLATION")
      << '\n';
  return (argmax_ok && audit_ok) ? exit_ok : exit_violation;
}

}  // namespace uncert
