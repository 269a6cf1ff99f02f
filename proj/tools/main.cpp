#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <iostream>
#include <json.hpp>

#include "latmod/enumerate.hpp"
#include "latmod/json_io.hpp"
#include "latmod/models.hpp"
#include "latmod/openq.hpp"
#include "latmod/retraction.hpp"

using nlohmann::json;
using namespace latmod;

namespace {

struct Options {
  bool json_out = false;
  uint64_t seed = 1;
  int bound = 16;
  std::string route = "all";
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void emit(const Options& opt, json report, const std::string& human) {
  if (opt.json_out) {
    report["seed"] = opt.seed;
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - opt.start)
                              .count();
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

json error_json(const Error& e) {
  return json{{"error",
               {{"code", errc_name(e.code())}, {"message", e.what()}, {"witness", e.witness()}}}};
}

int route_mask(const std::string& route) {
  if (route == "definition") return RouteDefinition;
  if (route == "local") return RouteLocal;
  if (route == "retraction") return RouteRetraction;
  return RouteAll;
}

// ---------------------------------------------------------------- check ----

int cmd_check(const std::string& file, const Options& opt) {
  FiniteDistLattice L = load_lattice_file(file);
  BooleanCore core = boolean_core(L);
  std::vector<Filter> primes = prime_filters(L);
  RetractionUniqueness ru = retraction_unique(L, core);

  json rep;
  rep["command"] = "check";
  rep["input"] = file;
  rep["names"] = L.names();
  rep["valid"] = true;
  rep["boolean_core"] = core.members;
  json comps = json::array();
  for (ElementId b : core.members) comps.push_back({b, core.complement[b]});
  rep["complements"] = comps;
  json pf = json::array();
  for (const Filter& p : primes) pf.push_back(p.members);
  rep["prime_filters"] = pf;
  json priestley = json::array();
  for (size_t i = 0; i < primes.size(); ++i)
    for (size_t j = 0; j < primes.size(); ++j)
      if (i != j && priestley_leq(primes[i], primes[j])) priestley.push_back({i, j});
  rep["priestley_leq"] = priestley;
  json approx = json::array();
  for (int x = 0; x < L.size(); ++x) {
    ApproxPair ap = approx_bounds(L, core, x);
    approx.push_back({{"x", x}, {"lower", ap.lower}, {"upper", ap.upper}});
  }
  rep["approx"] = approx;
  rep["retraction_unique"] = {{"verdict", ru.unique}};
  if (ru.witness) rep["retraction_unique"]["witness"] = *ru.witness;

  std::string human;
  human += "lattice: " + std::to_string(L.size()) + " elements, valid\n";
  human += "boolean core:";
  for (ElementId b : core.members) human += " " + L.name(b);
  human += "\nprime filters (" + std::to_string(primes.size()) + "):\n";
  for (const Filter& p : primes) {
    human += "  {";
    for (size_t k = 0; k < p.members.size(); ++k)
      human += (k ? ", " : " ") + L.name(p.members[k]);
    human += " }\n";
  }
  human += "approximation bounds:\n";
  for (int x = 0; x < L.size(); ++x) {
    ApproxPair ap = approx_bounds(L, core, x);
    human += "  " + L.name(x) + ": [" + L.name(ap.lower) + ", " + L.name(ap.upper) + "]\n";
  }
  human += "retraction unique: " + std::string(ru.unique ? "yes" : "no");
  if (ru.witness) human += " (witness " + L.name(*ru.witness) + ")";
  human += "\n";

  emit(opt, rep, human);
  return 0;
}

// ---------------------------------------------------------------- model ----

int cmd_model(const std::string& file, const Options& opt) {
  SheafModel M = load_model_file(file);
  const FiniteDistLattice& K = M.source;
  bool canonical = is_canonical(M);
  Filter gamma = gamma_filter(M);
  QuotientLattice Q = l1_quotient(K, gamma);

  json rep;
  rep["command"] = "model";
  rep["input"] = file;
  rep["names"] = {{"lattice", K.names()}, {"boolean", M.target.names()}};
  rep["canonical"] = canonical;
  rep["gamma"] = gamma.members;
  rep["l1_size"] = Q.lattice.size();

  std::string human;
  human += "model: " + std::to_string(K.size()) + " -> " + std::to_string(M.target.size()) +
           (canonical ? " (canonical)\n" : "\n");
  human += "gamma filter: {";
  for (size_t k = 0; k < gamma.members.size(); ++k)
    human += (k ? ", " : " ") + K.name(gamma.members[k]);
  human += " }\nquotient size: " + std::to_string(Q.lattice.size()) + "\n";

  if (canonical) {
    psi_embed(K, boolean_core(K), Q);  // throws InvariantViolated on failure
    rep["psi"] = {{"image_is_core", true}, {"quotient_iso", true}};
    human += "psi embedding: image is the complemented core, quotient is the base\n";
  } else {
    rep["psi"] = nullptr;
  }

  StronglyClosedResult strong = strongly_positively_closed(M);
  json strong_routes = json::array();
  {
    json r0 = {{"route", "cover-split"}, {"verdict", strong.verdict}};
    if (strong.witness)
      r0["witness"] = {{"u", strong.witness->u}, {"x", strong.witness->x}, {"b", strong.witness->b}};
    strong_routes.push_back(r0);
    if (strong.quotient_route)
      strong_routes.push_back({{"route", "quotient-boolean"}, {"verdict", *strong.quotient_route}});
  }
  rep["strongly_positively_closed"] = {{"verdict", strong.verdict}, {"route_verdicts", strong_routes}};

  PositivelyClosedResult pos = positively_closed(M, opt.bound, route_mask(opt.route));
  json pos_routes = json::array();
  if (pos.definition_route) {
    json r = {{"route", "definition"}, {"verdict", *pos.definition_route}};
    if (pos.counter)
      r["witness"] = {{"target_map", pos.counter->target_map},
                      {"u", pos.counter->u},
                      {"x", pos.counter->x}};
    pos_routes.push_back(r);
  }
  if (pos.local_route) {
    json r = {{"route", "local"}, {"verdict", *pos.local_route}};
    if (pos.local_witness)
      r["witness"] = {{"u", pos.local_witness->first}, {"x", pos.local_witness->second}};
    pos_routes.push_back(r);
  }
  if (pos.retraction_route) {
    json r = {{"route", "retraction"}, {"verdict", *pos.retraction_route}};
    if (pos.retraction_witness) r["witness"] = {{"x", *pos.retraction_witness}};
    pos_routes.push_back(r);
  }
  rep["positively_closed"] = {{"verdict", pos.verdict}, {"route_verdicts", pos_routes}};

  json mismatches = json::array();
  for (const std::string& m : pos.mismatches) mismatches.push_back(m);
  if (strong.cross_check_mismatch) mismatches.push_back("cover-split/quotient-boolean");
  rep["cross_check_mismatches"] = mismatches;

  human += "strongly positively closed: " + std::string(strong.verdict ? "yes" : "no");
  if (strong.witness)
    human += " (witness u=" + K.name(strong.witness->u) + ", x=" + K.name(strong.witness->x) +
             ", b=" + M.target.name(strong.witness->b) + ")";
  if (strong.quotient_route)
    human += std::string("; quotient route: ") + (*strong.quotient_route ? "yes" : "no");
  human += "\npositively closed: " + std::string(pos.verdict ? "yes" : "no");
  if (pos.counter) human += " (non-elementary continuation at u=" + K.name(pos.counter->u) + ")";
  if (pos.local_route) human += std::string("; local route: ") + (*pos.local_route ? "yes" : "no");
  if (pos.retraction_route)
    human += std::string("; retraction route: ") + (*pos.retraction_route ? "yes" : "no");
  human += "\n";
  if (!mismatches.empty()) human += "CROSS-CHECK MISMATCH\n";

  emit(opt, rep, human);
  return mismatches.empty() ? 0 : 1;
}

// ------------------------------------------------------------ enumerate ----

int cmd_enumerate(int n, const Options& opt) {
  auto lattices = enumerate_lattices(n);
  json entries = json::array();
  bool all_ok = true;
  std::string human = "enumerating downset lattices of posets on <= " + std::to_string(n) +
                      " points: " + std::to_string(lattices.size()) + " lattices\n";

  for (const FiniteDistLattice& K : lattices) {
    json e;
    e["size"] = K.size();
    bool boolean = is_boolean(K);
    e["boolean"] = boolean;
    BooleanCore core = boolean_core(K);
    RetractionUniqueness ru = retraction_unique(K, core);
    bool ok = (ru.unique == boolean);
    e["retraction_unique"] = ru.unique;

    auto cm = canonical_model(K);
    bool canonical_exists = std::holds_alternative<SheafModel>(cm);
    e["canonical"] = canonical_exists;
    int bound = std::max(opt.bound, K.size());
    if (canonical_exists) {
      const SheafModel& M = std::get<SheafModel>(cm);
      PositivelyClosedResult pos = positively_closed(M, bound);
      StronglyClosedResult strong = strongly_positively_closed(M);
      ok = ok && pos.mismatches.empty() && !strong.cross_check_mismatch;
      ok = ok && (pos.verdict == boolean) && (strong.verdict == boolean);
      e["positively_closed"] = pos.verdict;
      e["strongly_positively_closed"] = strong.verdict;

      Filter gamma = gamma_filter(M);
      QuotientLattice Q = l1_quotient(K, gamma);
      bool l1_iso = Q.lattice.size() == K.size();
      try {
        psi_embed(K, core, Q);
      } catch (const Error&) {
        l1_iso = false;
      }
      e["l1_iso"] = l1_iso;
      ok = ok && l1_iso;

      if (K.size() <= 5) {
        FiniteDistLattice B = core_as_lattice(K, core);
        std::vector<ElementId> constraint(Q.lattice.size(), -1);
        for (int i = 0; i < B.size(); ++i) constraint[Q.class_of[core.members[i]]] = i;
        size_t retract_count = enumerate_homs(Q.lattice, B, constraint, bound).size();
        size_t nat_count = enumerate_nat_trans(M, bound).size();
        e["retraction_hom_count"] = retract_count;
        e["nat_trans_count"] = nat_count;
        ok = ok && retract_count == nat_count;
      }
    }
    e["ok"] = ok;
    if (!ok) e["lattice"] = lattice_to_json(K);
    all_ok = all_ok && ok;
    entries.push_back(e);
    human += "  size " + std::to_string(K.size()) + (boolean ? " boolean" : "        ") +
             (canonical_exists ? "" : " (no canonical model)") + (ok ? "  ok" : "  FAIL") + "\n";
  }

  json rep;
  rep["command"] = "enumerate";
  rep["n"] = n;
  rep["lattices"] = lattices.size();
  rep["entries"] = entries;
  rep["all_ok"] = all_ok;
  human += all_ok ? "all assertions hold\n" : "ASSERTION FAILURE\n";

  emit(opt, rep, human);
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------- openq ----

int cmd_openq_eval(const std::string& expr, const std::string& op, const std::string& expr2,
                   const Options& opt) {
  IntervalUnion u = parse_union(expr);
  json rep;
  rep["command"] = "openq-eval";
  rep["expr"] = expr;
  rep["op"] = op;
  std::string human;

  if (op == "normalize") {
    rep["result"] = to_string(u);
    human = to_string(u) + "\n";
  } else if (op == "complement") {
    auto c = complement(u);
    if (c) {
      rep["result"] = to_string(*c);
      human = to_string(*c) + "\n";
    } else {
      rep["result"] = nullptr;
      human = "absent (a finite endpoint is rational)\n";
    }
  } else {
    IntervalUnion v = parse_union(expr2);
    rep["expr2"] = expr2;
    if (op == "meet") {
      rep["result"] = to_string(iu_meet(u, v));
      human = to_string(iu_meet(u, v)) + "\n";
    } else if (op == "join") {
      rep["result"] = to_string(iu_join(u, v));
      human = to_string(iu_join(u, v)) + "\n";
    } else if (op == "leq") {
      bool r = iu_leq(u, v);
      rep["result"] = r;
      human = r ? "true\n" : "false\n";
    } else if (op == "eq") {
      bool r = (u == v);
      rep["result"] = r;
      human = r ? "true\n" : "false\n";
    } else {
      throw Error(Errc::ParseError, "unknown op: " + op);
    }
  }
  emit(opt, rep, human);
  return 0;
}

int cmd_openq_separation(const Options& opt, int hom_pairs, int forced_samples) {
  std::mt19937_64 rng(opt.seed);
  json rep;
  rep["command"] = "openq-separation";
  rep["seed"] = opt.seed;
  bool pass = true;
  std::string human;

  // The ideal map is a hom: sampled joins split.
  int hom_ok = 0;
  for (int i = 0; i < hom_pairs; ++i) {
    IntervalUnion u = random_union(rng), v = random_union(rng);
    if (check_downarrow_hom(u, v, rng, 4)) ++hom_ok;
  }
  rep["hom_pairs"] = hom_pairs;
  rep["hom_pairs_ok"] = hom_ok;
  pass = pass && hom_ok == hom_pairs;
  human += "ideal-map hom law: " + std::to_string(hom_ok) + "/" + std::to_string(hom_pairs) +
           " sampled joins split\n";

  // Not strongly positively closed: the half-line witness is obstructed.
  IntervalUnion b = parse_union("(-1r2, 1r2)");
  IntervalUnion half = parse_union("(-inf, 0)");
  StrongSplitOutcome sso = strong_split(b, half);
  bool obstructed = !sso.split && sso.obstruction && *sso.obstruction == 0;
  rep["strong_split_absent"] = obstructed;
  pass = pass && obstructed;
  human += std::string("strong split of (-r2, r2) against (-inf, 0): ") +
           (obstructed ? "absent, obstruction 0" : "UNEXPECTED") + "\n";

  // Positively closed: forced-value certificates on named and random elements.
  int forced_ok = 0, forced_total = 0;
  auto run_forced = [&](const IntervalUnion& u) {
    ++forced_total;
    try {
      forced_value(u, rng);
      ++forced_ok;
    } catch (const Error&) {
    }
  };
  run_forced(parse_union("(0,1)"));
  run_forced(parse_union("(0,1) u (1,2)"));
  run_forced(parse_union("(-inf, 0)"));
  for (int i = 0; i < forced_samples; ++i) run_forced(random_union(rng));
  rep["forced_value_ok"] = forced_ok;
  rep["forced_value_total"] = forced_total;

  {
    std::mt19937_64 cert_rng(opt.seed + 1);
    ForcedValueCert sample = forced_value(parse_union("(0,1) u (1,2)"), cert_rng);
    json comps = json::array();
    for (const auto& cc : sample.components)
      comps.push_back({{"component", to_string(cc.component)},
                       {"saturation_samples", cc.saturation_samples},
                       {"disjoint_witnesses", cc.witnesses.size()}});
    rep["certificates"] = {{"element", "(0,1) u (1,2)"},
                           {"components", comps},
                           {"split_records", sample.splits.size()}};
  }
  pass = pass && forced_ok == forced_total;
  human += "forced-value certificates: " + std::to_string(forced_ok) + "/" +
           std::to_string(forced_total) + "\n";

  // Complemented elements are exactly the irrational-endpoint unions.
  bool comp_ok = !complement(parse_union("(0,1)")).has_value();
  auto c = complement(b);
  comp_ok = comp_ok && c && iu_meet(b, *c).is_bottom() && iu_join(b, *c).is_top();
  rep["complement_checks"] = comp_ok;
  pass = pass && comp_ok;
  human += std::string("complement checks: ") + (comp_ok ? "ok" : "FAIL") + "\n";

  rep["pass"] = pass;
  human += pass ? "PASS: positively closed but not strongly positively closed\n" : "FAIL\n";
  emit(opt, rep, human);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checker for finite distributive lattices, Boolean-valued models and "
               "positively closed model certificates"};
  app.require_subcommand(1);
  Options opt;

  std::string lattice_file, model_file;
  int enum_n = 2;
  std::string expr, op = "normalize", expr2;
  int hom_pairs = 200, forced_samples = 50;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opt.json_out, "emit a JSON report");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--bound", opt.bound, "enumeration bound");
  };

  CLI::App* check = app.add_subcommand("check", "validate a lattice file and report its structure");
  check->add_option("file", lattice_file)->required();
  add_common(check);

  CLI::App* model = app.add_subcommand("model", "run the closedness deciders on a model file");
  model->add_option("file", model_file)->required();
  model->add_option("--route", opt.route, "all|definition|local|retraction")
      ->check(CLI::IsMember({"all", "definition", "local", "retraction"}));
  add_common(model);

  CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustive small-lattice property suite");
  enumerate->add_option("n", enum_n)->check(CLI::Range(0, 5));
  add_common(enumerate);

  CLI::App* openq = app.add_subcommand("openq", "interval-union lattice over Q");
  openq->require_subcommand(1);
  CLI::App* eval = openq->add_subcommand("eval", "evaluate an interval expression");
  eval->add_option("expr", expr)->required();
  eval->add_option("op", op)
      ->check(CLI::IsMember({"normalize", "complement", "meet", "join", "leq", "eq"}));
  eval->add_option("expr2", expr2);
  add_common(eval);
  CLI::App* separation =
      openq->add_subcommand("separation", "certify: positively closed, not strongly");
  separation->add_option("--pairs", hom_pairs, "sampled join pairs");
  separation->add_option("--samples", forced_samples, "sampled forced-value elements");
  add_common(separation);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are input errors
  }

  try {
    if (check->parsed()) return cmd_check(lattice_file, opt);
    if (model->parsed()) return cmd_model(model_file, opt);
    if (enumerate->parsed()) return cmd_enumerate(enum_n, opt);
    if (eval->parsed()) return cmd_openq_eval(expr, op, expr2, opt);
    if (separation->parsed()) return cmd_openq_separation(opt, hom_pairs, forced_samples);
  } catch (const Error& e) {
    if (opt.json_out)
      std::cout << error_json(e).dump(2) << "\n";
    else
      std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::InvariantViolated:
      case Errc::CertificateFailed:
      case Errc::InternalInvariant:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
