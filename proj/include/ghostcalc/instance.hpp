#pragma once

// JSON instance files: a self-contained description of a graded basis, a
// bracket family, an optional coefficient representation, and optional named
// cochains. parse_instance_* collects every problem it can find as a
// "field.path: message" string instead of throwing; the parsed instance is
// usable iff ok() returns true. The on-disk layout is documented in
// docs/instance.schema.json and the README.

#include "ghostcalc/cochain.hpp"
#include "ghostcalc/graded.hpp"
#include "ghostcalc/linf.hpp"
#include "ghostcalc/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ghostcalc {

struct Instance {
  std::string name;
  GradedBasis basis;
  BracketFamily brackets;    // validated whenever parsing reported no errors
  RepresentationFamily rep;  // empty family with module_dim 0 when absent
  bool has_rep = false;
  std::map<std::string, Cochain> cochains;
};

struct ParseResult {
  Instance instance;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

namespace detail {

using Json = nlohmann::json;

inline const Json* member(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void reject_unknown(const Json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed,
                           std::vector<std::string>& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) errs.push_back(path + ": unknown field '" + it.key() + "'");
  }
}

inline std::optional<long long> want_int(const Json* j, const std::string& path,
                                         long long lo, long long hi,
                                         std::vector<std::string>& errs) {
  if (!j) {
    errs.push_back(path + ": missing");
    return std::nullopt;
  }
  if (!j->is_number_integer()) {
    errs.push_back(path + ": expected an integer, got " +
                   std::string(j->type_name()));
    return std::nullopt;
  }
  long long v = j->get<long long>();
  if (v < lo || v > hi) {
    errs.push_back(path + ": value " + std::to_string(v) + " outside [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return std::nullopt;
  }
  return v;
}

inline std::optional<std::string> want_string(const Json* j,
                                              const std::string& path,
                                              std::vector<std::string>& errs) {
  if (!j) {
    errs.push_back(path + ": missing");
    return std::nullopt;
  }
  if (!j->is_string()) {
    errs.push_back(path + ": expected a string, got " +
                   std::string(j->type_name()));
    return std::nullopt;
  }
  return j->get<std::string>();
}

inline std::optional<Rat> want_rational(const Json& j, const std::string& path,
                                        std::vector<std::string>& errs) {
  if (!j.is_string()) {
    errs.push_back(path + ": expected a rational string like \"3\" or " +
                   "\"-1/2\", got " + std::string(j.type_name()));
    return std::nullopt;
  }
  std::optional<Rat> r = rat_from_string(j.get<std::string>());
  if (!r)
    errs.push_back(path + ": malformed rational '" + j.get<std::string>() +
                   "'");
  return r;
}

inline std::optional<int> want_generator(const GradedBasis& b, const Json& j,
                                         const std::string& path,
                                         std::vector<std::string>& errs) {
  if (!j.is_string()) {
    errs.push_back(path + ": expected a generator name, got " +
                   std::string(j.type_name()));
    return std::nullopt;
  }
  const std::string n = j.get<std::string>();
  const int idx = b.index_of(n);
  if (idx < 0) {
    errs.push_back(path + ": unknown generator '" + n + "'");
    return std::nullopt;
  }
  return idx;
}

inline std::optional<std::vector<int>> want_tuple(
    const GradedBasis& b, const Json* j, const std::string& path,
    std::vector<std::string>& errs) {
  if (!j) {
    errs.push_back(path + ": missing");
    return std::nullopt;
  }
  if (!j->is_array()) {
    errs.push_back(path + ": expected an array of generator names");
    return std::nullopt;
  }
  std::vector<int> t;
  bool ok = true;
  for (std::size_t i = 0; i < j->size(); ++i) {
    auto g = want_generator(b, (*j)[i], path + "[" + std::to_string(i) + "]",
                            errs);
    if (!g) {
      ok = false;
      continue;
    }
    t.push_back(*g);
  }
  if (!ok) return std::nullopt;
  return t;
}

}  // namespace detail

inline ParseResult parse_instance_text(const std::string& text,
                                       const std::string& origin = "instance") {
  using detail::Json;
  ParseResult res;
  std::vector<std::string>& errs = res.errors;
  Instance& inst = res.instance;
  inst.name = std::filesystem::path(origin).stem().string();
  if (inst.name.empty()) inst.name = "instance";

  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    errs.push_back(std::string("json: ") + e.what());
    return res;
  }
  if (!root.is_object()) {
    errs.push_back("top level: expected an object, got " +
                   std::string(root.type_name()));
    return res;
  }
  detail::reject_unknown(root, "top level",
                         {"format_version", "field", "name", "convention",
                          "generators", "brackets", "representation",
                          "cochains"},
                         errs);

  if (const Json* v = detail::member(root, "format_version")) {
    if (!v->is_number_integer() || v->get<long long>() != 1)
      errs.push_back("format_version: expected the integer 1");
  } else {
    errs.push_back("format_version: missing (expected 1)");
  }

  if (const Json* v = detail::member(root, "field")) {
    if (!v->is_string() || v->get<std::string>() != "Q")
      errs.push_back(
          "field: only \"Q\" (exact rational arithmetic) is supported");
  } else {
    errs.push_back("field: missing (expected \"Q\")");
  }

  if (const Json* v = detail::member(root, "name")) {
    if (auto s = detail::want_string(v, "name", errs)) {
      if (s->empty())
        errs.push_back("name: must be nonempty");
      else
        inst.name = *s;
    }
  }

  inst.basis.conv = Convention::GhostParity;
  if (const Json* v = detail::member(root, "convention")) {
    if (auto s = detail::want_string(v, "convention", errs)) {
      if (*s == "primary")
        inst.basis.conv = Convention::VDeg;
      else if (*s != "standard-koszul")
        errs.push_back(
            "convention: expected \"primary\" or \"standard-koszul\", got '" +
            *s + "'");
    }
  }

  // generators; everything downstream resolves names against this list, so
  // bail out when it is unusable
  {
    const Json* gens = detail::member(root, "generators");
    if (!gens) {
      errs.push_back("generators: missing");
      return res;
    }
    if (!gens->is_array()) {
      errs.push_back("generators: expected an array");
      return res;
    }
    const std::size_t before = errs.size();
    std::set<std::string> names;
    for (std::size_t i = 0; i < gens->size(); ++i) {
      const std::string path = "generators[" + std::to_string(i) + "]";
      const Json& g = (*gens)[i];
      if (!g.is_object()) {
        errs.push_back(path + ": expected an object {\"name\", \"vdeg\"}");
        continue;
      }
      detail::reject_unknown(g, path, {"name", "vdeg"}, errs);
      auto nm = detail::want_string(detail::member(g, "name"), path + ".name",
                                    errs);
      auto vd = detail::want_int(detail::member(g, "vdeg"), path + ".vdeg", 0,
                                 1000000, errs);
      if (!nm || !vd) continue;
      if (nm->empty()) {
        errs.push_back(path + ".name: must be nonempty");
        continue;
      }
      if (!names.insert(*nm).second) {
        errs.push_back(path + ".name: duplicate generator name '" + *nm + "'");
        continue;
      }
      inst.basis.gens.push_back({*nm, static_cast<int>(*vd)});
    }
    if (errs.size() != before) return res;
  }

  inst.brackets.skew = true;
  if (const Json* br = detail::member(root, "brackets")) {
    if (!br->is_object()) {
      errs.push_back("brackets: expected an object");
    } else {
      detail::reject_unknown(*br, "brackets", {"skew", "entries"}, errs);
      if (const Json* s = detail::member(*br, "skew")) {
        if (s->is_boolean())
          inst.brackets.skew = s->get<bool>();
        else
          errs.push_back("brackets.skew: expected a boolean");
      }
      if (const Json* es = detail::member(*br, "entries")) {
        if (!es->is_array()) {
          errs.push_back("brackets.entries: expected an array");
        } else {
          for (std::size_t i = 0; i < es->size(); ++i) {
            const std::string path =
                "brackets.entries[" + std::to_string(i) + "]";
            const Json& en = (*es)[i];
            if (!en.is_object()) {
              errs.push_back(path +
                             ": expected an object {\"inputs\", \"outputs\"}");
              continue;
            }
            detail::reject_unknown(en, path, {"inputs", "outputs"}, errs);
            const std::size_t before = errs.size();
            FamilyEntry fe;
            if (auto t = detail::want_tuple(inst.basis,
                                            detail::member(en, "inputs"),
                                            path + ".inputs", errs))
              fe.inputs = std::move(*t);
            const Json* outs = detail::member(en, "outputs");
            if (!outs) {
              errs.push_back(path + ".outputs: missing");
            } else if (!outs->is_object()) {
              errs.push_back(path +
                             ".outputs: expected an object of generator -> "
                             "rational string");
            } else {
              for (auto it = outs->begin(); it != outs->end(); ++it) {
                const std::string opath = path + ".outputs." + it.key();
                const int j = inst.basis.index_of(it.key());
                if (j < 0) {
                  errs.push_back(opath + ": unknown generator '" + it.key() +
                                 "'");
                  continue;
                }
                if (auto rv = detail::want_rational(it.value(), opath, errs))
                  fe.outputs[j] = *rv;
              }
            }
            if (errs.size() == before)
              inst.brackets.raw.push_back(std::move(fe));
          }
        }
      }
    }
  }
  for (const std::string& e : validate_family(inst.basis, inst.brackets))
    errs.push_back("brackets: " + e);

  inst.rep.skew = inst.brackets.skew;
  if (const Json* rp = detail::member(root, "representation")) {
    inst.has_rep = true;
    if (!rp->is_object()) {
      errs.push_back("representation: expected an object");
    } else {
      detail::reject_unknown(*rp, "representation", {"module_dim", "entries"},
                             errs);
      auto md = detail::want_int(detail::member(*rp, "module_dim"),
                                 "representation.module_dim", 1, 100, errs);
      if (md) {
        inst.rep.module_dim = static_cast<int>(*md);
        const int dim = inst.rep.module_dim;
        if (const Json* es = detail::member(*rp, "entries")) {
          if (!es->is_array()) {
            errs.push_back("representation.entries: expected an array");
          } else {
            for (std::size_t i = 0; i < es->size(); ++i) {
              const std::string path =
                  "representation.entries[" + std::to_string(i) + "]";
              const Json& en = (*es)[i];
              if (!en.is_object()) {
                errs.push_back(path +
                               ": expected an object {\"inputs\", \"matrix\"}");
                continue;
              }
              detail::reject_unknown(en, path, {"inputs", "matrix"}, errs);
              const std::size_t before = errs.size();
              RepEntry re;
              if (auto t = detail::want_tuple(inst.basis,
                                              detail::member(en, "inputs"),
                                              path + ".inputs", errs))
                re.inputs = std::move(*t);
              const Json* mx = detail::member(en, "matrix");
              if (!mx) {
                errs.push_back(path + ".matrix: missing");
              } else if (!mx->is_array() ||
                         static_cast<int>(mx->size()) != dim) {
                errs.push_back(path + ".matrix: expected " +
                               std::to_string(dim) +
                               " rows of rational strings");
              } else {
                re.matrix = zero_mat(dim, dim);
                for (int r = 0; r < dim; ++r) {
                  const std::string rpath =
                      path + ".matrix[" + std::to_string(r) + "]";
                  const Json& row = (*mx)[static_cast<std::size_t>(r)];
                  if (!row.is_array() || static_cast<int>(row.size()) != dim) {
                    errs.push_back(rpath + ": expected " +
                                   std::to_string(dim) + " entries");
                    continue;
                  }
                  for (int c = 0; c < dim; ++c)
                    if (auto rv = detail::want_rational(
                            row[static_cast<std::size_t>(c)],
                            rpath + "[" + std::to_string(c) + "]", errs))
                      re.matrix(r, c) = *rv;
                }
              }
              if (errs.size() == before) inst.rep.raw.push_back(std::move(re));
            }
          }
        }
      }
    }
    for (const std::string& e : validate_representation(inst.basis, inst.rep))
      errs.push_back("representation: " + e);
  } else {
    // validated empty family so downstream constructor guards pass
    validate_representation(inst.basis, inst.rep);
  }

  if (const Json* cs = detail::member(root, "cochains")) {
    if (!cs->is_object()) {
      errs.push_back("cochains: expected an object of named cochains");
    } else {
      for (auto it = cs->begin(); it != cs->end(); ++it) {
        if (it.key().empty()) {
          errs.push_back("cochains: cochain name must be nonempty");
          continue;
        }
        const std::string cpath = "cochains." + it.key();
        const Json& cj = it.value();
        if (!cj.is_object()) {
          errs.push_back(cpath + ": expected an object");
          continue;
        }
        detail::reject_unknown(cj, cpath,
                               {"arity", "skew", "module_dim", "values"},
                               errs);
        const std::size_t before = errs.size();
        auto ar = detail::want_int(detail::member(cj, "arity"),
                                   cpath + ".arity", 0, 12, errs);
        bool skew = inst.brackets.skew;
        if (const Json* s = detail::member(cj, "skew")) {
          if (s->is_boolean())
            skew = s->get<bool>();
          else
            errs.push_back(cpath + ".skew: expected a boolean");
        }
        long long mdim =
            inst.has_rep && inst.rep.module_dim > 0 ? inst.rep.module_dim : 1;
        if (const Json* s = detail::member(cj, "module_dim")) {
          if (auto v =
                  detail::want_int(s, cpath + ".module_dim", 1, 100, errs))
            mdim = *v;
        }
        const Json* vals = detail::member(cj, "values");
        if (!vals)
          errs.push_back(cpath + ".values: missing");
        else if (!vals->is_array())
          errs.push_back(cpath + ".values: expected an array");
        if (!ar || errs.size() != before) continue;
        Cochain c =
            make_cochain(static_cast<int>(*ar), skew, static_cast<int>(mdim));
        std::set<std::vector<int>> seen;
        bool clean = true;
        for (std::size_t k = 0; k < vals->size(); ++k) {
          const std::string vpath =
              cpath + ".values[" + std::to_string(k) + "]";
          const Json& ve = (*vals)[k];
          if (!ve.is_object()) {
            errs.push_back(vpath + ": expected an object {\"tuple\", "
                                   "\"value\"}");
            clean = false;
            continue;
          }
          detail::reject_unknown(ve, vpath, {"tuple", "value"}, errs);
          auto t = detail::want_tuple(inst.basis, detail::member(ve, "tuple"),
                                      vpath + ".tuple", errs);
          if (!t) {
            clean = false;
            continue;
          }
          if (static_cast<int>(t->size()) != c.arity) {
            errs.push_back(vpath + ".tuple: expected " +
                           std::to_string(c.arity) + " generator names");
            clean = false;
            continue;
          }
          const Json* vv = detail::member(ve, "value");
          if (!vv || !vv->is_array() ||
              static_cast<int>(vv->size()) != c.module_dim) {
            errs.push_back(vpath + ".value: expected an array of " +
                           std::to_string(c.module_dim) +
                           " rational strings");
            clean = false;
            continue;
          }
          Vec v = zero_vec(c.module_dim);
          bool entry_ok = true;
          for (int q = 0; q < c.module_dim; ++q) {
            if (auto rv = detail::want_rational(
                    (*vv)[static_cast<std::size_t>(q)],
                    vpath + ".value[" + std::to_string(q) + "]", errs))
              v(q) = *rv;
            else
              entry_ok = false;
          }
          if (!entry_ok) {
            clean = false;
            continue;
          }
          std::vector<int> key = *t;
          if (c.skew) {
            SortedWord s = sort_with_sign(inst.basis, *t);
            if (s.zero) {
              if (!is_zero(v)) {
                errs.push_back(vpath +
                               ": tuple repeats a square-zero generator, so "
                               "the exchange law forces the value to vanish");
                clean = false;
              }
              continue;
            }
            key = s.word;
          }
          if (!seen.insert(key).second) {
            errs.push_back(vpath + ".tuple: duplicate tuple " +
                           tuple_names(inst.basis, *t));
            clean = false;
            continue;
          }
          cochain_set(inst.basis, c, *t, v);
        }
        if (clean) inst.cochains.emplace(it.key(), std::move(c));
      }
    }
  }

  return res;
}

inline ParseResult parse_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult res;
    res.errors.push_back("cannot open instance file '" + path + "'");
    return res;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str(), path);
}

}  // namespace ghostcalc
