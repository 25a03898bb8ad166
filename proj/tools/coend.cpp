// Command line workbench over the header library. Every artifact is one JSON
// document (see include/coend/format.hpp); every subcommand either prints a
// human-readable view or emits another document. Commands that produce an
// artifact print it to stdout unless --out names a file. Exit codes are the
// machine contract: 0 success / all laws pass, 1 a law check or isomorphism
// search failed, 2 usage or validation errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coend/format.hpp"

namespace {

using namespace coend;

// Default arity bound: 3 unless the environment overrides it.
int env_default_bound() {
  const char* s = std::getenv("COEND_ARITY_BOUND");
  if (!s || !*s) return 3;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (!end || *end || v < 1 || v > 16)
    throw ValidationError(std::string("COEND_ARITY_BOUND must be an integer in [1,16], got '") + s + "'");
  return static_cast<int>(v);
}

void emit(const Json& doc, const std::string& out) {
  std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ValidationError("cannot write '" + out + "'");
  f << text;
  std::cout << "wrote " << out << "\n";
}

bool is_builtin_name(const std::string& s) {
  return s == "zero" || s == "one" || s == "discrete2" || s == "discrete3" || s == "arrow" ||
         s == "bz2";
}

FinCatPtr resolve_category(Workspace& ws, const std::string& arg) {
  if (is_builtin_name(arg)) return fincats::by_name(arg);
  const Artifact& a = ws.load(arg);
  if (a.kind != "category")
    throw ValidationError("'" + arg + "' holds a " + a.kind + ", expected a category");
  return a.category;
}

const Artifact& need(Workspace& ws, const std::string& path, const std::string& kind) {
  const Artifact& a = ws.load(path);
  if (a.kind != kind)
    throw ValidationError("'" + path + "' holds a " + a.kind + ", expected a " + kind);
  return a;
}

std::string rat_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

void print_category(const FinCat& c) {
  std::cout << "category " << c.name() << ": " << c.object_count() << " object(s), "
            << c.mor_count() << " morphism(s)\n";
  for (int o = 0; o < c.object_count(); ++o)
    std::cout << "  object " << o << ": " << c.object_label(o) << "\n";
  for (int m = 0; m < c.mor_count(); ++m)
    std::cout << "  morphism " << m << ": " << c.mor(m).label << " : " << c.mor(m).src << " -> "
              << c.mor(m).dst << (c.is_identity(m) ? "  (identity)" : "") << "\n";
  if (c.mor_count() > 0) {
    std::cout << "  composition (row g, column f, entry g after f; . where undefined):\n";
    for (int g = 0; g < c.mor_count(); ++g) {
      std::cout << "   ";
      for (int f = 0; f < c.mor_count(); ++f) {
        if (c.mor(f).dst == c.mor(g).src)
          std::cout << " " << c.compose(g, f);
        else
          std::cout << " .";
      }
      std::cout << "\n";
    }
  }
}

void print_prof(const Profunctor& p, const std::string& name) {
  const Category& dc = *p.dom();
  const Category& cc = *p.cod();
  std::cout << "profunctor " << name << ": " << dc.object_count() << " source object(s), "
            << cc.object_count() << " target object(s)\n";
  std::cout << "  cells (row = target object, column = source object):\n";
  long long total = 0;
  for (int c = 0; c < cc.object_count(); ++c) {
    std::cout << "   ";
    for (int a = 0; a < dc.object_count(); ++a) {
      int s = p.cell_size(c, a);
      total += s;
      std::cout << " " << s;
    }
    std::cout << "\n";
  }
  std::cout << "  total elements: " << total << "\n";
}

void print_witness(const NatTrans& w) {
  const Category& dc = *w.src->dom();
  const Category& cc = *w.src->cod();
  for (int c = 0; c < cc.object_count(); ++c)
    for (int a = 0; a < dc.object_count(); ++a) {
      int n = w.src->cell_size(c, a);
      if (n == 0) continue;
      std::cout << "  cell (" << cc.object_label(c) << ", " << dc.object_label(a) << "):";
      for (int e = 0; e < n; ++e) std::cout << " " << e << "->" << w.map(c, a, e);
      std::cout << "\n";
    }
}

void print_report(const Report& rep, bool timings) {
  std::printf("%-18s %-21s %-13s %10s %10s %7s", "law", "instance", "verdict", "tested",
              "untested", "checks");
  if (timings) std::printf(" %9s", "ms");
  std::printf("\n");
  for (const LawCase& c : rep.cases) {
    std::printf("%-18s %-21s %-13s %10lld %10lld %7zu", c.law.c_str(), c.instance.c_str(),
                c.verdict.c_str(), c.tested_cells, c.untested_cells, c.checks.size());
    if (timings) std::printf(" %9.1f", c.millis);
    std::printf("\n");
    if (!c.ok)
      for (const LawCheck& ch : c.checks)
        if (!ch.ok) std::printf("    failed %s: %s\n", ch.name.c_str(), ch.detail.c_str());
  }
  int failing = 0;
  for (const LawCase& c : rep.cases)
    if (!c.ok) ++failing;
  if (rep.all_ok)
    std::printf("suite '%s' at bound %d: %zu case(s), all passed\n", rep.suite.c_str(), rep.bound,
                rep.cases.size());
  else
    std::printf("suite '%s' at bound %d: %d of %zu case(s) FAILED\n", rep.suite.c_str(), rep.bound,
                failing, rep.cases.size());
}

// Structural map factory shared by `struct`. Two-sided maps take a second
// category; the unit maps take none.
ProfPtr build_struct(const std::string& name, Workspace& ws, const std::string& cat1,
                     const std::string& cat2, int bound) {
  const bool needs_two = name == "mon2" || name == "seely2" || name == "seely2-inv";
  const bool needs_none = name == "mon0" || name == "seely0" || name == "seely0-inv";
  if (needs_none) {
    if (!cat1.empty())
      throw ValidationError("'" + name + "' takes no category argument");
    if (name == "mon0") return mon0(bound);
    if (name == "seely0") return seely0(bound);
    return seely0_inv(bound);
  }
  if (cat1.empty()) throw ValidationError("'" + name + "' needs --category");
  FinCatPtr a = resolve_category(ws, cat1);
  if (needs_two) {
    if (cat2.empty()) throw ValidationError("'" + name + "' needs --category2 as well");
    FinCatPtr b = resolve_category(ws, cat2);
    if (name == "mon2") return mon2(view(a), view(b), bound);
    if (name == "seely2") return seely2(a, b, bound);
    return seely2_inv(a, b, bound);
  }
  if (!cat2.empty()) throw ValidationError("'" + name + "' takes a single category");
  CatPtr av = view(a);
  if (name == "dereliction") return dereliction(av, bound);
  if (name == "codereliction") return codereliction(av, bound);
  if (name == "promotion") return promotion(av, bound);
  if (name == "contraction") return contraction(av, bound);
  if (name == "cocontraction") return cocontraction(av, bound);
  if (name == "weakening") return weakening(av, bound);
  if (name == "coweakening") return coweakening(av, bound);
  if (name == "bang-derel") return bang_derel(av, bound);
  if (name == "bang-promote") return bang_promote(av, bound);
  throw ValidationError(
      "unknown structural map '" + name +
      "' (one of: dereliction codereliction promotion contraction cocontraction weakening "
      "coweakening bang-derel bang-promote mon2 mon0 seely2 seely2-inv seely0 seely0-inv)");
}

}  // namespace

int main(int argc, char** argv) {
  int rc = 0;
  CLI::App app{
      "coend: a workbench for finite categories, profunctors, sequence windows,\n"
      "structural maps, symmetric sequences, and species, with an executable law suite.\n"
      "Artifacts are JSON documents; commands print documents to stdout unless --out is given.\n"
      "Exit codes: 0 success / all checks pass, 1 failed check, 2 usage or validation error."};
  app.require_subcommand(1);
  app.set_version_flag("-V,--version", "coend 1.0.0");

  int default_bound = 3;
  try {
    default_bound = env_default_bound();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Workspace ws;

  // cat ----------------------------------------------------------------
  auto* cat = app.add_subcommand("cat", "build or inspect finite categories");
  cat->require_subcommand(1);

  std::string catb_arg, catb_out;
  auto* catb = cat->add_subcommand("build", "validate a category and emit its document");
  catb->add_option("category", catb_arg, "builtin name or document file")->required();
  catb->add_option("--out", catb_out, "write the document here instead of stdout");
  catb->callback([&] { emit(category_to_json(*resolve_category(ws, catb_arg)), catb_out); });

  std::string cats_arg;
  auto* cats = cat->add_subcommand("show", "print objects, morphisms, and the composition table");
  cats->add_option("category", cats_arg, "builtin name or document file")->required();
  cats->callback([&] { print_category(*resolve_category(ws, cats_arg)); });

  // prof ---------------------------------------------------------------
  auto* prof = app.add_subcommand("prof", "compose, sum, compare, and inspect profunctors");
  prof->require_subcommand(1);

  std::string profc_g, profc_f, profc_out;
  auto* profc = prof->add_subcommand("compose", "composite G after F (target of F = source of G)");
  profc->add_option("g", profc_g, "outer profunctor document")->required();
  profc->add_option("f", profc_f, "inner profunctor document")->required();
  profc->add_option("--out", profc_out, "write the composite document here");
  profc->callback([&] {
    ProfPtr g = need(ws, profc_g, "profunctor").prof;
    ProfPtr f = need(ws, profc_f, "profunctor").prof;
    if (g->dom()->key() != f->cod()->key())
      throw ValidationError("cannot compose: source of '" + profc_g + "' differs from target of '" +
                            profc_f + "'");
    emit(prof_to_json(*compose_prof(g, f), "compose(" + profc_g + "," + profc_f + ")"), profc_out);
  });

  std::string profs_f, profs_g, profs_out;
  auto* profsum = prof->add_subcommand("sum", "pointwise disjoint union of two parallel profunctors");
  profsum->add_option("f", profs_f, "first profunctor document")->required();
  profsum->add_option("g", profs_g, "second profunctor document")->required();
  profsum->add_option("--out", profs_out, "write the sum document here");
  profsum->callback([&] {
    ProfPtr f = need(ws, profs_f, "profunctor").prof;
    ProfPtr g = need(ws, profs_g, "profunctor").prof;
    if (f->dom()->key() != g->dom()->key() || f->cod()->key() != g->cod()->key())
      throw ValidationError("cannot sum: the two profunctors are not parallel");
    emit(prof_to_json(*sum_prof(f, g), "sum(" + profs_f + "," + profs_g + ")"), profs_out);
  });

  std::string profi_f, profi_g;
  auto* profi = prof->add_subcommand("iso-check", "search for an action-preserving bijection");
  profi->add_option("f", profi_f, "first profunctor document")->required();
  profi->add_option("g", profi_g, "second profunctor document")->required();
  profi->callback([&] {
    ProfPtr f = need(ws, profi_f, "profunctor").prof;
    ProfPtr g = need(ws, profi_g, "profunctor").prof;
    IsoResult res = iso_check(f, g);
    if (res.status == IsoStatus::Found) {
      std::cout << "isomorphic (" << res.nodes << " node(s) searched)\n";
      print_witness(res.witness);
      rc = 0;
    } else if (res.status == IsoStatus::None) {
      std::cout << "not isomorphic: " << res.detail << "\n";
      rc = 1;
    } else {
      std::cout << "undecided: " << res.detail << "\n";
      rc = 1;
    }
  });

  std::string profsh_arg;
  auto* profsh = prof->add_subcommand("show", "print the cell size grid");
  profsh->add_option("f", profsh_arg, "profunctor document")->required();
  profsh->callback([&] { print_prof(*need(ws, profsh_arg, "profunctor").prof, profsh_arg); });

  // struct -------------------------------------------------------------
  std::string st_name, st_cat1, st_cat2, st_out;
  int st_bound = default_bound;
  auto* st = app.add_subcommand("struct", "emit a structural map as a profunctor document");
  st->add_option("name", st_name,
                 "dereliction codereliction promotion contraction cocontraction weakening "
                 "coweakening bang-derel bang-promote mon2 mon0 seely2 seely2-inv seely0 seely0-inv")
      ->required();
  st->add_option("--category", st_cat1, "base category (builtin name or document file)");
  st->add_option("--category2", st_cat2, "second base category for the two-sided maps");
  st->add_option("--arity-bound", st_bound, "sequence window bound")->capture_default_str();
  st->add_option("--out", st_out, "write the document here");
  st->callback([&] {
    ProfPtr p = build_struct(st_name, ws, st_cat1, st_cat2, st_bound);
    std::string label = st_name;
    if (!st_cat1.empty()) label += "(" + st_cat1 + (st_cat2.empty() ? "" : "," + st_cat2) + ")";
    label += "@" + std::to_string(st_bound);
    emit(prof_to_json(*p, label), st_out);
  });

  // catsym -------------------------------------------------------------
  auto* csym = app.add_subcommand("catsym", "symmetric sequences and their calculus");
  csym->require_subcommand(1);

  std::string ci_cat, ci_out;
  int ci_bound = default_bound;
  auto* ci = csym->add_subcommand("id", "identity sequence of a base category");
  ci->add_option("--category", ci_cat, "base category (builtin name or document file)")->required();
  ci->add_option("--arity-bound", ci_bound, "sequence window bound")->capture_default_str();
  ci->add_option("--out", ci_out, "write the document here");
  ci->callback([&] {
    FinCatPtr a = resolve_category(ws, ci_cat);
    SymSeq s = kleisli_id(view(a), ci_bound);
    emit(symseq_to_json(s, "id(" + ci_cat + ")@" + std::to_string(ci_bound)), ci_out);
  });

  std::string cd_f, cd_out;
  auto* cd = csym->add_subcommand("derive", "derivative of a symmetric sequence");
  cd->add_option("f", cd_f, "symmetric sequence document")->required();
  cd->add_option("--out", cd_out, "write the document here");
  cd->callback([&] {
    SymSeq s = need(ws, cd_f, "symseq").symseq;
    emit(symseq_to_json(derivative(s), "derive(" + cd_f + ")"), cd_out);
  });

  std::string cc_g, cc_f, cc_out;
  auto* ccm = csym->add_subcommand("compose", "substitution composite G after F");
  ccm->add_option("g", cc_g, "outer sequence document")->required();
  ccm->add_option("f", cc_f, "inner sequence document")->required();
  ccm->add_option("--out", cc_out, "write the document here");
  ccm->callback([&] {
    SymSeq g = need(ws, cc_g, "symseq").symseq;
    SymSeq f = need(ws, cc_f, "symseq").symseq;
    emit(symseq_to_json(kleisli_compose(g, f), "compose(" + cc_g + "," + cc_f + ")"), cc_out);
  });

  // analytic -----------------------------------------------------------
  auto* ana = app.add_subcommand("analytic", "evaluate sequences on presheaf carriers");
  ana->require_subcommand(1);

  std::string ae_f, ae_x, ae_out;
  auto* ae = ana->add_subcommand("eval", "apply a sequence (or species) to a presheaf");
  ae->add_option("f", ae_f, "symseq or species document")->required();
  ae->add_option("x", ae_x, "presheaf document")->required();
  ae->add_option("--out", ae_out, "write the resulting presheaf here");
  ae->callback([&] {
    const Artifact& fa = ws.load(ae_f);
    SymSeq s;
    if (fa.kind == "symseq")
      s = fa.symseq;
    else if (fa.kind == "species")
      s = to_symseq(fa.species);
    else
      throw ValidationError("'" + ae_f + "' holds a " + fa.kind + ", expected a symseq or species");
    Presheaf x = need(ws, ae_x, "presheaf").presheaf;
    Presheaf y = eval_analytic(s, x);
    emit(presheaf_to_json(y, "eval(" + ae_f + "," + ae_x + ")"), ae_out);
  });

  // species ------------------------------------------------------------
  auto* spc = app.add_subcommand("species", "species calculus and exact counting");
  spc->require_subcommand(1);

  std::string se_f;
  int se_bound = default_bound;
  auto* se = spc->add_subcommand("egf", "print exponential generating coefficients |F[n]| / n!");
  se->add_option("f", se_f, "species document")->required();
  se->add_option("--arity-bound", se_bound, "highest arity to print")->capture_default_str();
  se->callback([&] {
    const Species& sp = need(ws, se_f, "species").species;
    std::vector<Rational> cs = egf_coeffs(sp, se_bound);
    for (std::size_t i = 0; i < cs.size(); ++i)
      std::cout << (i ? ", " : "") << rat_str(cs[i]);
    std::cout << "\n";
  });

  std::string sd_f, sd_out;
  auto* sd = spc->add_subcommand("derive", "species derivative");
  sd->add_option("f", sd_f, "species document")->required();
  sd->add_option("--out", sd_out, "write the document here");
  sd->callback([&] {
    const Species& sp = need(ws, sd_f, "species").species;
    emit(species_to_json(sp_derivative(sp), "derive(" + sd_f + ")"), sd_out);
  });

  std::string sc_f, sc_g, sc_out;
  auto* sc = spc->add_subcommand("compose", "substitution F after G");
  sc->add_option("f", sc_f, "outer species document")->required();
  sc->add_option("g", sc_g, "inner species document")->required();
  sc->add_option("--out", sc_out, "write the document here");
  sc->callback([&] {
    const Species& f = need(ws, sc_f, "species").species;
    const Species& g = need(ws, sc_g, "species").species;
    emit(species_to_json(sp_substitute(f, g), "compose(" + sc_f + "," + sc_g + ")"), sc_out);
  });

  std::string sp_f, sp_g, sp_out;
  auto* spr = spc->add_subcommand("product", "pointwise (partitional) product");
  spr->add_option("f", sp_f, "first species document")->required();
  spr->add_option("g", sp_g, "second species document")->required();
  spr->add_option("--out", sp_out, "write the document here");
  spr->callback([&] {
    const Species& f = need(ws, sp_f, "species").species;
    const Species& g = need(ws, sp_g, "species").species;
    emit(species_to_json(sp_product(f, g), "product(" + sp_f + "," + sp_g + ")"), sp_out);
  });

  // laws ---------------------------------------------------------------
  auto* laws = app.add_subcommand("laws", "run the structural law suite");
  laws->require_subcommand(1);

  std::string lr_suite = "default", lr_out, lr_ftarget, lr_flaw, lr_finstance;
  std::vector<std::string> lr_laws, lr_bases;
  int lr_bound = 0;
  std::uint64_t lr_seed = 1;
  bool lr_timings = false;
  auto* lr = laws->add_subcommand("run", "check the structural laws on the builtin family");
  lr->add_option("--suite", lr_suite, "default (all laws, all bases, bound 3) or quick (bound 2, small bases)")
      ->capture_default_str();
  lr->add_option("--laws", lr_laws,
                 "restrict to these laws (first-constraint second-constraint strength comonad "
                 "seely derivative-rules bialgebra)")
      ->delimiter(',');
  lr->add_option("--bases", lr_bases, "restrict to these base categories")->delimiter(',');
  lr->add_option("--arity-bound", lr_bound, "sequence window bound (default per suite)");
  lr->add_flag("--timings", lr_timings, "record per-case wall time");
  lr->add_option("--out", lr_out, "write the report document here");
  lr->add_option("--fault-target", lr_ftarget,
                 "inject one corrupted action entry into this structural map");
  lr->add_option("--fault-law", lr_flaw, "limit the injected fault to one law");
  lr->add_option("--fault-instance", lr_finstance, "limit the injected fault to one instance");
  lr->add_option("--seed", lr_seed, "seed selecting the corrupted entry")->capture_default_str();
  lr->callback([&] {
    SuiteConfig cfg;
    if (lr_suite == "default") {
      cfg.bound = default_bound;
    } else if (lr_suite == "quick") {
      cfg.bases = {"one", "bz2"};
      cfg.bound = 2;
    } else {
      throw ValidationError("unknown suite '" + lr_suite + "' (suites: default quick)");
    }
    cfg.name = lr_suite;
    if (!lr_laws.empty()) cfg.laws = lr_laws;
    if (!lr_bases.empty()) cfg.bases = lr_bases;
    if (lr->count("--arity-bound")) cfg.bound = lr_bound;
    cfg.timings = lr_timings;
    cfg.faults = Faults{lr_ftarget, lr_flaw, lr_finstance, lr_seed};
    Report rep = run_suite(cfg);
    print_report(rep, lr_timings);
    if (!lr_out.empty()) emit(report_to_json(rep), lr_out);
    rc = rep.all_ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
