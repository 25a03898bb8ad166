#pragma once

// One self-describing JSON interchange format for every artifact the tools
// read and write: categories, sequence windows, profunctors, symmetric
// sequences, species, presheaves, and law reports. Every top-level document
// carries format_version and a kind tag. Parsers validate the schema first
// and then run the library's own structural audits, so a loaded artifact is
// as trustworthy as a freshly constructed one.
//
// Index conventions inside a document: objects are referenced by their index
// in the enclosing category slot, morphisms by [src, dst, k] with k the
// position inside hom(src, dst). Both are deterministic for a given document
// (and, for sequence windows, for a given base content and bound), so
// serialize-parse round-trips are stable.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coend/analytic.hpp"
#include "coend/catsym.hpp"
#include "coend/laws.hpp"

namespace coend {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace fmt_detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

inline const Json& field(const Json& j, const char* name, const char* where) {
  auto it = j.find(name);
  require(it != j.end(), std::string(where) + ": missing field '" + name + "'");
  return *it;
}

inline int int_field(const Json& j, const char* name, const char* where) {
  const Json& f = field(j, name, where);
  require(f.is_number_integer(), std::string(where) + ": field '" + name + "' must be an integer");
  return f.get<int>();
}

inline std::string str_field(const Json& j, const char* name, const char* where) {
  const Json& f = field(j, name, where);
  require(f.is_string(), std::string(where) + ": field '" + name + "' must be a string");
  return f.get<std::string>();
}

inline void check_header(const Json& j, const char* where) {
  require(j.is_object(), std::string(where) + ": document is not an object");
  int v = int_field(j, "format_version", where);
  require(v == kFormatVersion, std::string(where) + ": unsupported format_version " + std::to_string(v));
}

inline std::vector<int> int_array(const Json& j, const std::string& where) {
  require(j.is_array(), where + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number_integer(), where + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

// Morphism slot [src, dst, k]: k is the hom-local position, stable across
// round-trips because hom sets enumerate deterministically.
inline MorRef mor_slot(const Json& j, const std::string& where) {
  auto v = int_array(j, where);
  require(v.size() == 3, where + " must be [src, dst, k]");
  return {v[0], v[1], v[2]};
}

inline Json mor_slot_json(const MorRef& m) { return Json::array({m.src, m.dst, m.idx}); }

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace fmt_detail

// ---------------------------------------------------------------------------
// Categories. A plain category document lists objects, morphisms with labels,
// the identity assignment, and the dense composition table (comp[g][f] =
// index of g after f, -1 where endpoints do not meet). FinCat::make re-runs
// the full structure audit on parse.

inline Json category_to_json(const FinCat& c) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "category";
  j["name"] = c.name();
  Json obs = Json::array();
  for (int o = 0; o < c.object_count(); ++o) obs.push_back(c.object_label(o));
  j["objects"] = std::move(obs);
  Json mors = Json::array();
  for (int m = 0; m < c.mor_count(); ++m) {
    const FinMor& fm = c.mor(m);
    mors.push_back(Json{{"src", fm.src}, {"dst", fm.dst}, {"label", fm.label}});
  }
  j["morphisms"] = std::move(mors);
  Json ids = Json::array();
  for (int o = 0; o < c.object_count(); ++o) ids.push_back(c.identity(o));
  j["identities"] = std::move(ids);
  Json comp = Json::array();
  for (int g = 0; g < c.mor_count(); ++g) {
    Json row = Json::array();
    for (int f = 0; f < c.mor_count(); ++f) {
      const FinMor& fg = c.mor(g);
      const FinMor& ff = c.mor(f);
      row.push_back(ff.dst == fg.src ? c.compose(g, f) : -1);
    }
    comp.push_back(std::move(row));
  }
  j["composition"] = std::move(comp);
  return j;
}

inline FinCatPtr category_from_json(const Json& j) {
  const char* where = "category";
  fmt_detail::check_header(j, where);
  fmt_detail::require(fmt_detail::str_field(j, "kind", where) == "category",
                      "category: document kind is not 'category'");
  std::string name = fmt_detail::str_field(j, "name", where);
  const Json& obs = fmt_detail::field(j, "objects", where);
  fmt_detail::require(obs.is_array(), "category: 'objects' must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& o : obs) {
    fmt_detail::require(o.is_string(), "category: object labels must be strings");
    labels.push_back(o.get<std::string>());
  }
  const Json& ms = fmt_detail::field(j, "morphisms", where);
  fmt_detail::require(ms.is_array(), "category: 'morphisms' must be an array");
  std::vector<FinMor> mors;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string ctx = "category: morphism " + std::to_string(i);
    const Json& m = ms[i];
    fmt_detail::require(m.is_object(), ctx + " must be an object");
    mors.push_back({fmt_detail::int_field(m, "src", ctx.c_str()),
                    fmt_detail::int_field(m, "dst", ctx.c_str()),
                    fmt_detail::str_field(m, "label", ctx.c_str())});
  }
  std::vector<int> ids =
      fmt_detail::int_array(fmt_detail::field(j, "identities", where), "category: 'identities'");
  const Json& comp = fmt_detail::field(j, "composition", where);
  fmt_detail::require(comp.is_array() && comp.size() == mors.size(),
                      "category: composition table needs one row per morphism");
  std::vector<int> flat;
  for (std::size_t g = 0; g < comp.size(); ++g) {
    auto row = fmt_detail::int_array(comp[g], "category: composition row " + std::to_string(g));
    fmt_detail::require(row.size() == mors.size(), "category: composition row " + std::to_string(g) +
                                                       " has the wrong length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return std::make_shared<FinCat>(
      FinCat::make(std::move(name), std::move(labels), std::move(mors), std::move(ids), std::move(flat)));
}

// Any finite category flattens to dense tables. Hom-local morphism order is
// preserved, so [src, dst, k] slots mean the same thing before and after.
inline FinCat materialize(const Category& c, const std::string& name) {
  std::vector<std::string> labels;
  for (int o = 0; o < c.object_count(); ++o) labels.push_back(c.object_label(o));
  std::vector<FinMor> mors;
  std::map<std::pair<std::pair<int, int>, int>, int> global;
  for (int x = 0; x < c.object_count(); ++x)
    for (int y = 0; y < c.object_count(); ++y)
      for (int k = 0; k < c.hom_size(x, y); ++k) {
        global[{{x, y}, k}] = static_cast<int>(mors.size());
        mors.push_back({x, y, c.mor_label({x, y, k})});
      }
  std::vector<int> ids;
  for (int o = 0; o < c.object_count(); ++o) ids.push_back(global.at({{o, o}, c.identity(o).idx}));
  const int m = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (mors[f].dst == mors[g].src) {
        MorRef fg{mors[f].src, mors[f].dst, 0}, gg{mors[g].src, mors[g].dst, 0};
        for (int k = 0; k < c.hom_size(fg.src, fg.dst); ++k)
          if (global.at({{fg.src, fg.dst}, k}) == f) fg.idx = k;
        for (int k = 0; k < c.hom_size(gg.src, gg.dst); ++k)
          if (global.at({{gg.src, gg.dst}, k}) == g) gg.idx = k;
        MorRef r = c.compose(gg, fg);
        comp[static_cast<std::size_t>(g) * m + f] = global.at({{r.src, r.dst}, r.idx});
      }
  return FinCat::make(name, std::move(labels), std::move(mors), std::move(ids), std::move(comp));
}

// A category slot inside a larger document: a builtin name, a plain category
// document, or a sequence window over a nested slot.
inline Json cat_slot_to_json(const CatPtr& c) {
  if (auto v = std::dynamic_pointer_cast<const FinCatView>(c)) return category_to_json(v->fin());
  if (auto b = std::dynamic_pointer_cast<const BangCategory>(c)) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "window";
    j["bound"] = b->bound();
    j["base"] = cat_slot_to_json(b->base());
    return j;
  }
  return category_to_json(materialize(*c, c->key()));
}

inline CatPtr cat_slot_from_json(const Json& j) {
  if (j.is_string()) return view(fincats::by_name(j.get<std::string>()));
  fmt_detail::require(j.is_object(), "category slot must be a builtin name or a document");
  std::string kind = fmt_detail::str_field(j, "kind", "category slot");
  if (kind == "window") {
    fmt_detail::check_header(j, "window");
    int bound = fmt_detail::int_field(j, "bound", "window");
    return CatPtr(bang_of(cat_slot_from_json(fmt_detail::field(j, "base", "window")), bound));
  }
  return view(category_from_json(j));
}

// ---------------------------------------------------------------------------
// Profunctors. Carrier cells are keyed by (cod object, dom object) index
// pairs; the two action tables are keyed by a morphism slot plus the object
// index of the other side. Identity actions and empty cells are implicit.

class TableProf final : public Profunctor {
public:
  using ActKey = std::pair<std::array<int, 3>, int>;

  TableProf(CatPtr dom, CatPtr cod, std::string name, std::vector<int> cells,
            std::map<ActKey, std::vector<int>> lact, std::map<ActKey, std::vector<int>> ract)
      : Profunctor(std::move(dom), std::move(cod)),
        name_(std::move(name)),
        cells_(std::move(cells)),
        lact_(std::move(lact)),
        ract_(std::move(ract)) {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : cells_) h = fmt_detail::mix(h, static_cast<std::uint64_t>(v) + 1);
    for (const auto& [k, t] : lact_)
      for (int v : t) h = fmt_detail::mix(h, static_cast<std::uint64_t>(v) + 2);
    for (const auto& [k, t] : ract_)
      for (int v : t) h = fmt_detail::mix(h, static_cast<std::uint64_t>(v) + 3);
    key_ = "table[" + name_ + ";" + std::to_string(h) + ";" + dom_->key() + ";" + cod_->key() + "]";
  }

  const std::string& name() const { return name_; }
  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    return cells_[static_cast<std::size_t>(c) * dom_->object_count() + a];
  }

  int lact(const MorRef& g, int a, int e) const override {
    if (cod_->is_identity(g)) return e;
    return look(lact_, g, a, e, "cod");
  }

  int ract(const MorRef& f, int c, int e) const override {
    if (dom_->is_identity(f)) return e;
    return look(ract_, f, c, e, "dom");
  }

private:
  int look(const std::map<ActKey, std::vector<int>>& tab, const MorRef& m, int other, int e,
           const char* side) const {
    auto it = tab.find({{m.src, m.dst, m.idx}, other});
    if (it == tab.end() || e >= static_cast<int>(it->second.size()))
      throw ValidationError("profunctor '" + name_ + "': missing " + side + " action entry for morphism [" +
                            std::to_string(m.src) + "," + std::to_string(m.dst) + "," + std::to_string(m.idx) +
                            "] at object " + std::to_string(other));
    return it->second[e];
  }

  std::string name_, key_;
  std::vector<int> cells_;
  std::map<ActKey, std::vector<int>> lact_, ract_;
};

namespace fmt_detail {

inline Json prof_body_to_json(const Profunctor& p) {
  const Category& dc = *p.dom();
  const Category& cc = *p.cod();
  Json body;
  Json cells = Json::array();
  for (int c = 0; c < cc.object_count(); ++c)
    for (int a = 0; a < dc.object_count(); ++a)
      if (int s = p.cell_size(c, a); s > 0)
        cells.push_back(Json{{"cod", c}, {"dom", a}, {"size", s}});
  body["cells"] = std::move(cells);
  Json la = Json::array();
  for (int cs = 0; cs < cc.object_count(); ++cs)
    for (int cd = 0; cd < cc.object_count(); ++cd)
      for (int k = 0; k < cc.hom_size(cs, cd); ++k) {
        MorRef g{cs, cd, k};
        if (cc.is_identity(g)) continue;
        for (int a = 0; a < dc.object_count(); ++a) {
          int n = p.cell_size(g.dst, a);
          if (n == 0) continue;
          Json t = Json::array();
          for (int e = 0; e < n; ++e) t.push_back(p.lact(g, a, e));
          la.push_back(Json{{"mor", mor_slot_json(g)}, {"dom", a}, {"table", std::move(t)}});
        }
      }
  body["cod_action"] = std::move(la);
  Json ra = Json::array();
  for (int as = 0; as < dc.object_count(); ++as)
    for (int ad = 0; ad < dc.object_count(); ++ad)
      for (int k = 0; k < dc.hom_size(as, ad); ++k) {
        MorRef f{as, ad, k};
        if (dc.is_identity(f)) continue;
        for (int c = 0; c < cc.object_count(); ++c) {
          int n = p.cell_size(c, f.src);
          if (n == 0) continue;
          Json t = Json::array();
          for (int e = 0; e < n; ++e) t.push_back(p.ract(f, c, e));
          ra.push_back(Json{{"mor", mor_slot_json(f)}, {"cod", c}, {"table", std::move(t)}});
        }
      }
  body["dom_action"] = std::move(ra);
  return body;
}

inline ProfPtr prof_body_from_json(const Json& body, const CatPtr& dom, const CatPtr& cod,
                                   const std::string& name) {
  const char* where = "profunctor body";
  std::vector<int> cells(
      static_cast<std::size_t>(cod->object_count()) * dom->object_count(), 0);
  const Json& cj = field(body, "cells", where);
  require(cj.is_array(), "profunctor: 'cells' must be an array");
  for (const auto& e : cj) {
    int c = int_field(e, "cod", "cell");
    int a = int_field(e, "dom", "cell");
    int s = int_field(e, "size", "cell");
    require(c >= 0 && c < cod->object_count() && a >= 0 && a < dom->object_count(),
            "profunctor: cell (" + std::to_string(c) + "," + std::to_string(a) + ") is out of range");
    require(s >= 0, "profunctor: negative cell size");
    cells[static_cast<std::size_t>(c) * dom->object_count() + a] = s;
  }
  auto read_actions = [&](const char* fieldname, const char* other) {
    std::map<TableProf::ActKey, std::vector<int>> out;
    const Json& aj = field(body, fieldname, where);
    require(aj.is_array(), std::string("profunctor: '") + fieldname + "' must be an array");
    for (const auto& e : aj) {
      MorRef m = mor_slot(field(e, "mor", fieldname), std::string(fieldname) + ".mor");
      int o = int_field(e, other, fieldname);
      out[{{m.src, m.dst, m.idx}, o}] =
          int_array(field(e, "table", fieldname), std::string(fieldname) + ".table");
    }
    return out;
  };
  auto lact = read_actions("cod_action", "dom");
  auto ract = read_actions("dom_action", "cod");
  return std::make_shared<TableProf>(dom, cod, name, std::move(cells), std::move(lact),
                                     std::move(ract));
}

}  // namespace fmt_detail

inline Json prof_to_json(const Profunctor& p, const std::string& name) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "profunctor";
  j["name"] = name;
  j["dom"] = cat_slot_to_json(p.dom());
  j["cod"] = cat_slot_to_json(p.cod());
  Json body = fmt_detail::prof_body_to_json(p);
  j["cells"] = std::move(body["cells"]);
  j["cod_action"] = std::move(body["cod_action"]);
  j["dom_action"] = std::move(body["dom_action"]);
  return j;
}

// Parses and audits: the loaded table must pass the full functoriality audit
// before anyone composes with it.
inline ProfPtr prof_from_json(const Json& j) {
  const char* where = "profunctor";
  fmt_detail::check_header(j, where);
  fmt_detail::require(fmt_detail::str_field(j, "kind", where) == "profunctor",
                      "profunctor: document kind is not 'profunctor'");
  std::string name = fmt_detail::str_field(j, "name", where);
  CatPtr dom = cat_slot_from_json(fmt_detail::field(j, "dom", where));
  CatPtr cod = cat_slot_from_json(fmt_detail::field(j, "cod", where));
  ProfPtr p = fmt_detail::prof_body_from_json(j, dom, cod, name);
  AuditReport rep = audit_prof(*p);
  fmt_detail::require(rep.ok, "profunctor '" + name + "' failed its functoriality audit: " + rep.detail);
  return p;
}

// ---------------------------------------------------------------------------
// Symmetric sequences: a base slot, a target slot, the window bound, and the
// body profunctor whose domain is the sequence window over the base.

inline Json symseq_to_json(const SymSeq& s, const std::string& name) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "symseq";
  j["name"] = name;
  j["base"] = cat_slot_to_json(s.dom);
  j["cod"] = cat_slot_to_json(s.cod);
  j["bound"] = s.bound;
  j["arity"] = s.arity;
  j["body"] = fmt_detail::prof_body_to_json(*s.body);
  return j;
}

inline SymSeq symseq_from_json(const Json& j) {
  const char* where = "symseq";
  fmt_detail::check_header(j, where);
  fmt_detail::require(fmt_detail::str_field(j, "kind", where) == "symseq",
                      "symseq: document kind is not 'symseq'");
  std::string name = fmt_detail::str_field(j, "name", where);
  CatPtr base = cat_slot_from_json(fmt_detail::field(j, "base", where));
  CatPtr cod = cat_slot_from_json(fmt_detail::field(j, "cod", where));
  int bound = fmt_detail::int_field(j, "bound", where);
  auto window = bang_of(base, bound);
  ProfPtr body =
      fmt_detail::prof_body_from_json(fmt_detail::field(j, "body", where), CatPtr(window), cod, name);
  AuditReport rep = audit_prof(*body);
  fmt_detail::require(rep.ok, "symseq '" + name + "' failed its functoriality audit: " + rep.detail);
  SymSeq s = make_symseq(base, cod, bound, body);
  int declared = fmt_detail::int_field(j, "arity", where);
  fmt_detail::require(declared == s.arity, "symseq '" + name + "': declared arity " +
                                               std::to_string(declared) + " but the body scans to " +
                                               std::to_string(s.arity));
  return s;
}

// ---------------------------------------------------------------------------
// Species: per-arity carrier sizes plus the adjacent-transposition actions.
// swaps[n][i] is the table of the transposition (i, i+1) on the arity-n set.

inline Json species_to_json(const Species& sp, const std::string& name) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "species";
  j["name"] = name;
  j["bound"] = sp.bound;
  j["sizes"] = sp.sizes;
  Json sw = Json::array();
  for (const auto& level : sp.swaps) {
    Json tables = Json::array();
    for (const auto& t : level) tables.push_back(t);
    sw.push_back(std::move(tables));
  }
  j["swaps"] = std::move(sw);
  return j;
}

inline Species species_from_json(const Json& j) {
  const char* where = "species";
  fmt_detail::check_header(j, where);
  fmt_detail::require(fmt_detail::str_field(j, "kind", where) == "species",
                      "species: document kind is not 'species'");
  int bound = fmt_detail::int_field(j, "bound", where);
  std::vector<int> sizes =
      fmt_detail::int_array(fmt_detail::field(j, "sizes", where), "species: 'sizes'");
  const Json& sw = fmt_detail::field(j, "swaps", where);
  fmt_detail::require(sw.is_array(), "species: 'swaps' must be an array");
  std::vector<std::vector<std::vector<int>>> swaps;
  for (std::size_t n = 0; n < sw.size(); ++n) {
    fmt_detail::require(sw[n].is_array(), "species: swaps[" + std::to_string(n) + "] must be an array");
    std::vector<std::vector<int>> level;
    for (std::size_t i = 0; i < sw[n].size(); ++i)
      level.push_back(fmt_detail::int_array(
          sw[n][i], "species: swap table " + std::to_string(i) + " at arity " + std::to_string(n)));
    swaps.push_back(std::move(level));
  }
  return make_species(bound, std::move(sizes), std::move(swaps));
}

// ---------------------------------------------------------------------------
// Presheaves: carrier sizes per object and one table per non-identity
// morphism; the table of f : x -> y sends the carrier at y into the one at x.

inline Json presheaf_to_json(const Presheaf& x, const std::string& name) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "presheaf";
  j["name"] = name;
  j["base"] = cat_slot_to_json(x.base);
  j["sizes"] = x.sizes;
  Json acts = Json::array();
  const Category& c = *x.base;
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < c.object_count(); ++b)
      for (int k = 0; k < c.hom_size(a, b); ++k) {
        MorRef f{a, b, k};
        if (c.is_identity(f)) continue;
        Json t = Json::array();
        for (int e = 0; e < x.sizes[b]; ++e) t.push_back(x.act(f, e));
        acts.push_back(Json{{"mor", fmt_detail::mor_slot_json(f)}, {"table", std::move(t)}});
      }
  j["actions"] = std::move(acts);
  return j;
}

inline Presheaf presheaf_from_json(const Json& j) {
  const char* where = "presheaf";
  fmt_detail::check_header(j, where);
  fmt_detail::require(fmt_detail::str_field(j, "kind", where) == "presheaf",
                      "presheaf: document kind is not 'presheaf'");
  CatPtr base = cat_slot_from_json(fmt_detail::field(j, "base", where));
  std::vector<int> sizes =
      fmt_detail::int_array(fmt_detail::field(j, "sizes", where), "presheaf: 'sizes'");
  auto tables = std::make_shared<std::map<std::array<int, 3>, std::vector<int>>>();
  const Json& acts = fmt_detail::field(j, "actions", where);
  fmt_detail::require(acts.is_array(), "presheaf: 'actions' must be an array");
  for (const auto& e : acts) {
    MorRef m = fmt_detail::mor_slot(fmt_detail::field(e, "mor", "presheaf action"), "presheaf action mor");
    (*tables)[{m.src, m.dst, m.idx}] =
        fmt_detail::int_array(fmt_detail::field(e, "table", "presheaf action"), "presheaf action table");
  }
  CatPtr basec = base;
  auto act = [tables, basec](const MorRef& f, int e) -> int {
    if (basec->is_identity(f)) return e;
    auto it = tables->find({f.src, f.dst, f.idx});
    if (it == tables->end() || e >= static_cast<int>(it->second.size()))
      throw ValidationError("presheaf: missing action entry for morphism [" + std::to_string(f.src) + "," +
                            std::to_string(f.dst) + "," + std::to_string(f.idx) + "]");
    return it->second[e];
  };
  return make_presheaf(base, std::move(sizes), std::move(act));
}

// ---------------------------------------------------------------------------
// Law reports. Witnesses are function-valued and stay in memory; everything
// the caller can diff or archive goes into the document.

inline Json report_to_json(const Report& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "report";
  j["suite"] = r.suite;
  j["bound"] = r.bound;
  j["all_ok"] = r.all_ok;
  Json cases = Json::array();
  for (const LawCase& c : r.cases) {
    Json cj;
    cj["law"] = c.law;
    cj["instance"] = c.instance;
    cj["bound"] = c.bound;
    cj["verdict"] = c.verdict;
    cj["ok"] = c.ok;
    cj["tested_cells"] = c.tested_cells;
    cj["untested_cells"] = c.untested_cells;
    cj["window"] = Json{{"full", c.window.full}, {"measure", c.window.measure}, {"limit", c.window.limit}};
    cj["millis"] = c.millis;
    Json checks = Json::array();
    for (const LawCheck& ch : c.checks)
      checks.push_back(Json{{"name", ch.name},
                            {"ok", ch.ok},
                            {"vacuous", ch.vacuous},
                            {"checks", ch.checks},
                            {"detail", ch.detail}});
    cj["checks"] = std::move(checks);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

// ---------------------------------------------------------------------------
// Workspace: the named store behind the command line. Every artifact is
// validated on load; names are unique per store.

struct Artifact {
  std::string kind;
  std::string name;
  Json doc;
  FinCatPtr category;
  ProfPtr prof;
  SymSeq symseq;
  Species species;
  Presheaf presheaf;
};

class Workspace {
public:
  // Loads one document from disk, validates it, and stores it by name.
  // Reloading the same name with identical content is a no-op; a different
  // document under a taken name is rejected.
  const Artifact& load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
      j = Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
    Artifact art = parse_artifact(j, path);
    auto it = entries_.find(art.name);
    if (it != entries_.end()) {
      fmt_detail::require(it->second.doc == art.doc,
                          "workspace already holds a different artifact named '" + art.name + "'");
      return it->second;
    }
    return entries_.emplace(art.name, std::move(art)).first->second;
  }

  const Artifact* find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }

private:
  static std::string stem_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
  }

  static Artifact parse_artifact(const Json& j, const std::string& path) {
    fmt_detail::check_header(j, path.c_str());
    Artifact art;
    art.kind = fmt_detail::str_field(j, "kind", path.c_str());
    art.doc = j;
    art.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : stem_of(path);
    if (art.kind == "category") {
      art.category = category_from_json(j);
    } else if (art.kind == "profunctor") {
      art.prof = prof_from_json(j);
    } else if (art.kind == "symseq") {
      art.symseq = symseq_from_json(j);
    } else if (art.kind == "species") {
      art.species = species_from_json(j);
    } else if (art.kind == "presheaf") {
      art.presheaf = presheaf_from_json(j);
    } else {
      throw ValidationError(path + ": unknown document kind '" + art.kind + "'");
    }
    return art;
  }

  std::map<std::string, Artifact> entries_;
};

}  // namespace coend
