// ghostcalc: exact command-line checks for graded bracket families, the odd
// derivations they induce on the ghost ring, and the differentials they
// induce on cochains. All arithmetic is exact rational and all output is
// deterministic: byte-identical across runs on the same input.
//
// Exit codes: 0 every selected check passed, 1 a check failed mathematically,
// 2 malformed input or an inapplicable request.

#include "ghostcalc/instance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

using namespace ghostcalc;
using Json = nlohmann::json;

std::string vec_str(const Vec& v) {
  if (v.size() == 1) return rat_to_string(v(0));
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(v(i));
  }
  return s + ")";
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rat_to_string(v(i)));
  return a;
}

Json tuple_json(const GradedBasis& b, const std::vector<int>& t) {
  Json a = Json::array();
  for (int i : t) a.push_back(b.name(i));
  return a;
}

Json cochain_json(const GradedBasis& b, const Cochain& c) {
  Json a = Json::array();
  for (const auto& [t, v] : c.values)
    a.push_back(Json{{"tuple", tuple_json(b, t)}, {"value", vec_json(v)}});
  return a;
}

void print_cochain(const GradedBasis& b, const Cochain& c) {
  if (c.values.empty()) {
    std::cout << "  0\n";
    return;
  }
  for (const auto& [t, v] : c.values)
    std::cout << "  " << tuple_names(b, t) << " -> " << vec_str(v) << "\n";
}

void emit_errors(const std::vector<std::string>& errs, bool json) {
  if (json) std::cout << Json{{"errors", errs}}.dump(2) << "\n";
  for (const std::string& e : errs) std::cerr << "error: " << e << "\n";
}

int load_instance(const std::string& path, bool json, Instance& out) {
  ParseResult r = parse_instance_file(path);
  if (!r.ok()) {
    emit_errors(r.errors, json);
    return kExitUsage;
  }
  out = std::move(r.instance);
  return kExitPass;
}

// ---- check ----

struct CheckSelection {
  bool cl = false;
  bool ga = false;
  bool rep = false;
  bool nilpotent = false;
  bool all = false;
  bool full = false;
};

struct CheckLine {
  std::string name;
  bool ran = true;
  bool pass = false;
  long long equations = 0;
  std::vector<Violation> violations;
  bool truncated = false;
  std::string witness;      // nilpotency failure rendering
  std::string skip_reason;  // when !ran
};

int run_check(const Instance& in, const CheckSelection& sel, bool json) {
  const GradedBasis& b = in.basis;
  CheckOptions opt;
  opt.full_mode = sel.full;

  const bool none = !(sel.cl || sel.ga || sel.rep || sel.nilpotent);
  const bool pick_all = sel.all || none;

  // a derivation may be unavailable: ordered family, or the primary
  // convention's sign is not multiplicative across mixed parities
  bool derivation_ok = in.brackets.skew;
  std::string refusal;
  if (in.brackets.skew) {
    try {
      (void)make_derivation(b, in.brackets, in.rep);
    } catch (const std::domain_error& e) {
      derivation_ok = false;
      refusal = e.what();
    }
  }

  std::vector<CheckLine> lines;
  try {
    if (sel.cl || (pick_all && in.brackets.skew)) {
      CheckReport r = check_cl_infinity(b, in.brackets, opt);
      lines.push_back({r.name, true, r.pass, r.equations, r.violations,
                       r.truncated, "", ""});
    }
    if (sel.ga || (pick_all && !in.brackets.skew)) {
      CheckReport r = check_ga_infinity(b, in.brackets, opt);
      lines.push_back({r.name, true, r.pass, r.equations, r.violations,
                       r.truncated, "", ""});
    }
    if (sel.rep || (pick_all && in.has_rep && !in.rep.table.empty())) {
      if (!in.has_rep)
        throw std::invalid_argument(
            "check --rep: the instance has no representation block");
      CheckReport r = check_representation(b, in.brackets, in.rep, opt);
      lines.push_back({r.name, true, r.pass, r.equations, r.violations,
                       r.truncated, "", ""});
    }
    if (sel.nilpotent || (pick_all && in.brackets.skew)) {
      if (!in.brackets.skew)
        throw std::invalid_argument(
            "check --nilpotent: the induced derivation needs a "
            "graded-symmetric family");
      if (!derivation_ok) {
        if (sel.nilpotent) throw std::domain_error(refusal);
        lines.push_back({"nilpotent", false, false, 0, {}, false, "",
                         refusal});
      } else {
        OddDerivation d = make_derivation(b, in.brackets, in.rep);
        std::string w;
        const bool ok = is_nilpotent(d, &w);
        lines.push_back({"nilpotent", true, ok, 0, {}, false, w, ""});
      }
    }
  } catch (const std::exception& e) {
    emit_errors({e.what()}, json);
    return kExitUsage;
  }

  bool all_pass = true;
  for (const CheckLine& l : lines)
    if (l.ran && !l.pass) all_pass = false;

  if (json) {
    Json checks = Json::array();
    for (const CheckLine& l : lines) {
      if (!l.ran) {
        checks.push_back(Json{{"name", l.name}, {"skipped", l.skip_reason}});
        continue;
      }
      Json viols = Json::array();
      for (const Violation& v : l.violations)
        viols.push_back(Json{{"context", v.context}, {"detail", v.detail}});
      Json c{{"name", l.name},
             {"pass", l.pass},
             {"equations", l.equations},
             {"violations", viols}};
      if (l.name == "nilpotent") c["witness"] = l.witness;
      if (l.truncated) c["truncated"] = true;
      checks.push_back(c);
    }
    Json out{{"command", "check"},
             {"instance", in.name},
             {"checks", checks},
             {"pass", all_pass}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "check " << in.name << "\n";
    for (const CheckLine& l : lines) {
      if (!l.ran) {
        std::cout << "  " << l.name << ": skipped (" << l.skip_reason
                  << ")\n";
        continue;
      }
      std::cout << "  " << l.name << ": " << (l.pass ? "pass" : "fail");
      if (l.equations > 0) {
        std::cout << " (" << l.equations << " equations";
        if (!l.pass) std::cout << ", " << l.violations.size() << " violations";
        std::cout << ")";
      }
      std::cout << "\n";
      for (const Violation& v : l.violations)
        std::cout << "    " << v.context << ": " << v.detail << "\n";
      if (l.truncated) std::cout << "    (violation list truncated)\n";
      if (!l.pass && !l.witness.empty())
        std::cout << "    " << l.witness << "\n";
    }
    std::cout << "overall: " << (all_pass ? "pass" : "fail") << "\n";
  }
  return all_pass ? kExitPass : kExitFail;
}

// ---- differential ----

int run_differential(const Instance& in, int k, const std::string& cname,
                     const std::string& route, bool json) {
  const GradedBasis& b = in.basis;
  auto it = in.cochains.find(cname);
  if (it == in.cochains.end()) {
    std::string avail;
    for (const auto& [n, _] : in.cochains)
      avail += (avail.empty() ? "" : ", ") + n;
    emit_errors({"unknown cochain '" + cname + "'; the instance defines: " +
                 (avail.empty() ? "(none)" : avail)},
                json);
    return kExitUsage;
  }
  const Cochain& c = it->second;
  const int n = c.arity;
  const int N = n + k - 1;

  // use the representation when dimensions line up, trivial coefficients for
  // scalar cochains on module-bearing instances
  RepresentationFamily r;
  if (!in.rep.table.empty() && in.rep.module_dim == c.module_dim) {
    r = in.rep;
  } else if (c.module_dim != 1) {
    emit_errors({"cochain '" + cname +
                 "' is module-valued but the instance has no matching "
                 "representation block"},
                json);
    return kExitUsage;
  } else {
    r.skew = in.brackets.skew;
    validate_representation(b, r);
  }

  Cochain tensor_out;
  Cochain ghost_out;
  bool have_tensor = false;
  bool have_ghost = false;
  try {
    if (route == "tensor" || route == "both") {
      tensor_out = c.skew ? cl_differential_component(b, in.brackets, r, c, k)
                          : ga_differential_component(b, in.brackets, r, c, k);
      have_tensor = true;
    }
    if (route == "ghost" || route == "both") {
      if (!in.brackets.skew || !c.skew)
        throw std::invalid_argument(
            "the ghost route transports through the ghost ring and needs a "
            "graded-symmetric family and cochain; use --route tensor");
      OddDerivation d = r.table.empty() ? make_derivation(b, in.brackets)
                                        : make_derivation(b, in.brackets, r);
      GhostVecPoly image = apply(d, to_ghost(b, c));
      GhostVecPoly slice = vpoly_zero(c.module_dim);
      for (const auto& [m, v] : image.terms)
        if (m.length() == N) slice.add_term(m, v);
      ghost_out = from_ghost(b, slice, N);
      have_ghost = true;
    }
  } catch (const std::exception& e) {
    emit_errors({e.what()}, json);
    return kExitUsage;
  }

  const Cochain& result = have_tensor ? tensor_out : ghost_out;
  bool agree = true;
  if (have_tensor && have_ghost)
    agree = cochain_is_zero(cochain_sub(tensor_out, ghost_out));

  if (json) {
    Json out{{"command", "differential"}, {"instance", in.name},
             {"cochain", cname},          {"k", k},
             {"route", route},            {"arity_in", n},
             {"arity_out", N},            {"result", cochain_json(b, result)}};
    if (have_tensor && have_ghost) out["routes_agree"] = agree;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "differential " << in.name << ": " << cname << " (arity "
              << n << " -> " << N << ", k=" << k << ", route " << route
              << ")\n";
    print_cochain(b, result);
    if (have_tensor && have_ghost) {
      std::cout << (agree ? "routes agree" : "routes disagree") << "\n";
      if (!agree) {
        std::cout << "ghost route:\n";
        print_cochain(b, ghost_out);
      }
    }
  }
  return agree ? kExitPass : kExitFail;
}

// ---- cohomology ----

int run_cohomology(const Instance& in, int max_degree, std::string coeffs,
                   bool json) {
  const GradedBasis& b = in.basis;
  const bool has_action = !in.rep.table.empty();
  if (coeffs == "auto") coeffs = has_action ? "module" : "trivial";
  if (coeffs == "module" && !has_action) {
    emit_errors({"cohomology --coefficients module: the instance has no "
                 "representation block"},
                json);
    return kExitUsage;
  }

  CohomologyReport rep;
  try {
    OddDerivation d = coeffs == "module"
                          ? make_derivation(b, in.brackets, in.rep)
                          : make_derivation(b, in.brackets);
    rep = cohomology_dims(d, max_degree);
  } catch (const std::exception& e) {
    emit_errors({e.what()}, json);
    return kExitUsage;
  }

  if (json) {
    Json out{{"command", "cohomology"},
             {"instance", in.name},
             {"coefficients", coeffs},
             {"max_degree", max_degree},
             {"nilpotent", rep.nilpotent}};
    if (!rep.nilpotent) {
      out["witness"] = rep.witness;
    } else {
      Json table = Json::array();
      for (int n = 0; n <= max_degree; ++n)
        table.push_back(
            Json{{"degree", n},
                 {"dim", rep.space_dims[static_cast<std::size_t>(n)]},
                 {"rank", rep.ranks[static_cast<std::size_t>(n)]},
                 {"h", rep.h_dims[static_cast<std::size_t>(n)]}});
      out["table"] = table;
    }
    std::cout << out.dump(2) << "\n";
    return rep.nilpotent ? kExitPass : kExitFail;
  }

  if (!rep.nilpotent) {
    std::cout << "cohomology " << in.name
              << ": the differential does not square to zero\n  "
              << rep.witness << "\n";
    return kExitFail;
  }
  std::cout << "cohomology " << in.name << " (" << coeffs
            << " coefficients), degrees 0.." << max_degree << "\n";
  for (int n = 0; n <= max_degree; ++n)
    std::cout << "  n=" << n << ": dim C = "
              << rep.space_dims[static_cast<std::size_t>(n)]
              << ", rank d = " << rep.ranks[static_cast<std::size_t>(n)]
              << ", dim H = " << rep.h_dims[static_cast<std::size_t>(n)]
              << "\n";
  return kExitPass;
}

// ---- correspond ----

int run_correspond(const Instance& in, int max_arity, bool full, bool json) {
  const GradedBasis& b = in.basis;
  long long checked = 0;
  bool pass = true;
  std::vector<std::pair<std::string, Violation>> failures;
  int kmax = 0;
  try {
    if (!in.brackets.skew)
      throw std::invalid_argument(
          "correspond: the ghost transport is defined for graded-symmetric "
          "families");
    const bool has_action = !in.rep.table.empty();
    const int mdim = has_action ? in.rep.module_dim : 1;
    kmax = std::max({in.brackets.max_arity,
                     has_action ? in.rep.max_arity + 1 : 1, 1, max_arity});
    for (int n = 0; n <= max_arity; ++n) {
      for (const auto& tuple : enumerate_sorted_tuples(b, n)) {
        for (int t = 0; t < mdim; ++t) {
          Cochain c = make_cochain(n, true, mdim);
          Vec v = zero_vec(mdim);
          v(t) = 1;
          cochain_set(b, c, tuple, v);
          CheckReport r =
              correspondence_check(b, in.brackets, in.rep, c, full, max_arity);
          ++checked;
          if (!r.pass) {
            pass = false;
            std::string label = "delta" + tuple_names(b, tuple);
            if (mdim > 1) label += "[" + std::to_string(t) + "]";
            for (const Violation& viol : r.violations)
              failures.emplace_back(label, viol);
          }
        }
      }
    }
  } catch (const std::exception& e) {
    emit_errors({e.what()}, json);
    return kExitUsage;
  }

  if (json) {
    Json fails = Json::array();
    for (const auto& [label, v] : failures)
      fails.push_back(Json{{"cochain", label},
                           {"context", v.context},
                           {"detail", v.detail}});
    Json out{{"command", "correspond"}, {"instance", in.name},
             {"max_arity", max_arity},  {"components_max", kmax},
             {"cochains", checked},     {"failures", fails},
             {"pass", pass}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "correspond " << in.name << ": " << checked
              << " basis cochains, arities 0.." << max_arity
              << ", components k=1.." << kmax << "\n";
    for (const auto& [label, v] : failures)
      std::cout << "  " << label << ": " << v.context << ": " << v.detail
                << "\n";
    std::cout << "overall: " << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact checks for graded bracket families and the differentials they "
      "induce"};
  app.require_subcommand(1);

  std::string file;
  std::string emit = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", file, "instance file (JSON)")->required();
    sub->add_option("--emit", emit, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* check =
      app.add_subcommand("check", "verify structure equations and nilpotency");
  CheckSelection sel;
  check->add_flag("--cl", sel.cl, "graded-symmetric structure equations");
  check->add_flag("--ga", sel.ga, "ordered structure equations");
  check->add_flag("--rep", sel.rep, "representation equations");
  check->add_flag("--nilpotent", sel.nilpotent,
                  "square of the induced odd derivation");
  check->add_flag("--all", sel.all, "every applicable check (default)");
  check->add_flag("--full-mode", sel.full,
                  "literal symmetric-group sums instead of unshuffle sums");
  add_common(check);

  CLI::App* diff = app.add_subcommand(
      "differential", "apply one arity component of the induced differential");
  int k = 1;
  std::string cname;
  std::string route = "both";
  diff->add_option("--k", k, "component arity (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  diff->add_option("--cochain", cname, "named cochain from the instance")
      ->required();
  diff->add_option("--route", route,
                   "tensor, ghost, or both (both cross-checks equality)")
      ->check(CLI::IsMember({"tensor", "ghost", "both"}));
  add_common(diff);

  CLI::App* coh = app.add_subcommand(
      "cohomology", "dimensions, ranks, and cohomology of the graded complex");
  int max_degree = 0;
  std::string coeffs = "auto";
  coh->add_option("--max-degree", max_degree, "top ghost degree of the table")
      ->required()
      ->check(CLI::NonNegativeNumber);
  coh->add_option("--coefficients", coeffs,
                  "trivial, module, or auto (module when a representation "
                  "is present)")
      ->check(CLI::IsMember({"trivial", "module", "auto"}));
  add_common(coh);

  CLI::App* corr = app.add_subcommand(
      "correspond",
      "compare ghost-ring and tensor differentials on all basis cochains");
  int max_arity = 3;
  bool corr_full = false;
  corr->add_option("--max-arity", max_arity, "largest cochain arity checked")
      ->check(CLI::NonNegativeNumber);
  corr->add_flag("--full-mode", corr_full,
                 "literal symmetric-group sums instead of unshuffle sums");
  add_common(corr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    Instance in;
    const bool json = emit == "json";
    const int rc = load_instance(file, json, in);
    if (rc != kExitPass) return rc;
    if (*check) return run_check(in, sel, json);
    if (*diff) return run_differential(in, k, cname, route, json);
    if (*coh) return run_cohomology(in, max_degree, coeffs, json);
    if (*corr) return run_correspond(in, max_arity, corr_full, json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (...) {
    std::cerr << "error: unexpected failure\n";
    return kExitUsage;
  }
  return kExitUsage;
}
