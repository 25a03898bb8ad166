#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coend/iso.hpp"
#include "coend/structmaps.hpp"

namespace coend {

// ---------------------------------------------------------------------------
// Verdict records. A LawCase bundles the named equation checks run for one
// law on one instance. Truncation never silently passes: cells excluded by
// the exactness window are tallied in untested_cells and the window that was
// actually certified is recorded alongside the verdict.

struct LawCheck {
  std::string name;
  bool ok = false;
  bool vacuous = false;  // the tested region carried no elements at all
  long long checks = 0;
  std::string detail;  // first counterexample when failing
  std::shared_ptr<const NatTrans> witness;  // re-checkable family when present
};

// The region an equation is exact on under window truncation: either the
// whole window, or the objects within a measured limit.
struct SafeWindow {
  bool full = true;
  std::string measure;
  int limit = 0;
};

inline SafeWindow safe_window(const std::string& law, int bound) {
  if (law == "comonad")
    return {false, "total inner length of the doubly iterated sequence", bound};
  if (law == "seely")
    return {false, "combined length of the split sequence pair", bound};
  if (law == "bialgebra")
    return {false, "combined length of the incoming sequence pair", bound};
  return {true, "entire window", 0};
}

struct LawCase {
  std::string law;
  std::string instance;
  int bound = 0;
  SafeWindow window;
  bool ok = false;
  std::string verdict;  // "pass" | "pass-vacuous" | "fail"
  long long tested_cells = 0;
  long long untested_cells = 0;
  std::vector<LawCheck> checks;
  double millis = 0.0;
};

// Single redirected action entry injected into one named structural map,
// used to confirm the checks can fail. law / instance narrow the damage so a
// suite run flips exactly the targeted case.
struct Faults {
  std::string target;    // structural map name, empty = no injection
  std::string law;       // restrict to one law, empty = all
  std::string instance;  // restrict to one instance, empty = all
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = {
      "first-constraint", "second-constraint", "strength",         "comonad",
      "seely",            "derivative-rules",  "bialgebra"};
  return names;
}

inline std::vector<std::string> default_bases() {
  return {"zero", "one", "discrete2", "arrow", "bz2"};
}

struct SuiteConfig {
  std::vector<std::string> laws = law_names();
  std::vector<std::string> bases = default_bases();
  int bound = 3;
  bool timings = false;
  Faults faults;
  std::string name = "default";
};

struct Report {
  std::string suite;
  int bound = 0;
  bool all_ok = true;
  std::vector<LawCase> cases;
};

// ---------------------------------------------------------------------------
// Shared machinery for the check functions.

namespace lawdet {

// Windows of bound zero hold only empty sequences; every law degenerates to
// statements about maps whose canonical witnesses cannot even be formed, so
// the harness rejects the configuration instead of crashing inside one.
inline void require_bound(int bound) {
  if (bound < 1) throw Error("law checks need an arity bound of at least 1");
}

inline std::string display_name(const CatPtr& c) {
  if (auto v = std::dynamic_pointer_cast<const FinCatView>(c)) return v->fin().name();
  return c->key();
}

inline std::uint64_t mix_key(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic pick of an action entry whose output cell holds at least two
// elements, so the redirected value can differ from the true one.
inline bool pick_mutation(const ProfPtr& p, std::uint64_t seed, Mutation& out) {
  constexpr int kCap = 4000;
  struct Cand {
    bool on_lact;
    MorRef mor;
    int other;
    int elem;
  };
  std::vector<Cand> cands;
  const Category& dom = *p->dom();
  const Category& cod = *p->cod();
  const int dn = dom.object_count();
  const int cn = cod.object_count();
  for (int o = 0; o < cn && static_cast<int>(cands.size()) < kCap; ++o)
    for (const MorRef& g : cod.generators_from(o)) {
      if (static_cast<int>(cands.size()) >= kCap) break;
      for (int a = 0; a < dn; ++a) {
        int in = p->cell_size(g.dst, a);
        if (in == 0 || p->cell_size(g.src, a) < 2) continue;
        for (int e = 0; e < in && static_cast<int>(cands.size()) < kCap; ++e)
          cands.push_back({true, g, a, e});
      }
    }
  for (int o = 0; o < dn && static_cast<int>(cands.size()) < kCap; ++o)
    for (const MorRef& f : dom.generators_from(o)) {
      if (static_cast<int>(cands.size()) >= kCap) break;
      for (int c = 0; c < cn; ++c) {
        int in = p->cell_size(c, f.src);
        if (in == 0 || p->cell_size(c, f.dst) < 2) continue;
        for (int e = 0; e < in && static_cast<int>(cands.size()) < kCap; ++e)
          cands.push_back({false, f, c, e});
      }
    }
  if (cands.empty()) return false;
  Rng rng(seed ^ mix_key(p->key()));
  const Cand& c = cands[rng.below(static_cast<int>(cands.size()))];
  int size = c.on_lact ? p->cell_size(c.mor.src, c.other) : p->cell_size(c.other, c.mor.dst);
  int orig = c.on_lact ? p->lact(c.mor, c.other, c.elem) : p->ract(c.mor, c.other, c.elem);
  out.on_lact = c.on_lact;
  out.mor = c.mor;
  out.other = c.other;
  out.elem = c.elem;
  out.value = (orig + 1 + rng.below(size - 1)) % size;
  return true;
}

inline ProfPtr inject(const Faults& faults, const std::string& tag, ProfPtr p) {
  if (faults.target != tag) return p;
  Mutation m;
  if (!pick_mutation(p, faults.seed, m)) return p;
  return std::make_shared<MutatedProf>(std::move(p), m);
}

// Cells inhabited on either side of an equation; the coverage figure reported
// per case.
inline long long inhabited_cells(const Profunctor& f, const Profunctor& g) {
  long long n = 0;
  const int dn = f.dom()->object_count();
  for (int a = 0; a < dn; ++a) {
    std::vector<int> cs = f.cod_support(a);
    const auto& more = g.cod_support(a);
    cs.insert(cs.end(), more.begin(), more.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    n += static_cast<long long>(cs.size());
  }
  return n;
}

// Equation certified by an explicitly constructed component family.
inline LawCheck eq_witness(const std::string& name, NatTrans t) {
  LawCheck c;
  c.name = name;
  CheckResult r = check_iso(t);
  c.ok = r.ok;
  c.checks = r.checks;
  c.detail = r.detail;
  c.vacuous = c.ok && r.checks == 0;
  c.witness = std::make_shared<NatTrans>(std::move(t));
  return c;
}

// Component family that is natural but not claimed bijective.
inline LawCheck eq_natural(const std::string& name, NatTrans t) {
  LawCheck c;
  c.name = name;
  CheckResult r = check_natural(t);
  c.ok = r.ok;
  c.checks = r.checks;
  c.detail = r.detail;
  c.vacuous = c.ok && r.checks == 0;
  c.witness = std::make_shared<NatTrans>(std::move(t));
  return c;
}

// Equation certified by isomorphism search; a found witness is re-verified
// from scratch before it counts.
inline LawCheck eq_search(const std::string& name, const ProfPtr& lhs, const ProfPtr& rhs,
                          long long budget = 500000) {
  LawCheck c;
  c.name = name;
  IsoResult res = iso_check(lhs, rhs, budget);
  if (res.status == IsoStatus::Found) {
    CheckResult r = check_iso(res.witness);
    c.ok = r.ok;
    c.checks = r.checks;
    c.detail = r.detail;
    c.vacuous = c.ok && r.checks == 0;
    c.witness = std::make_shared<NatTrans>(res.witness);
  } else {
    c.ok = false;
    c.checks = res.nodes;
    c.detail = res.status == IsoStatus::Budget
                   ? "isomorphism search exceeded its node budget"
                   : "no isomorphism: " + res.detail;
  }
  return c;
}

// A chain whose source and target are the same profunctor must fix every
// element; certifies the triangle identities.
inline LawCheck eq_identity(const std::string& name, const NatTrans& t) {
  LawCheck c;
  c.name = name;
  if (t.src->key() != t.dst->key()) {
    c.detail = "endpoints differ: " + t.src->key() + " vs " + t.dst->key();
    return c;
  }
  c.ok = true;
  const int dn = t.src->dom()->object_count();
  for (int a = 0; a < dn && c.ok; ++a)
    for (int cc : t.src->cod_support(a)) {
      int n = t.src->cell_size(cc, a);
      for (int e = 0; e < n; ++e) {
        ++c.checks;
        if (t.map(cc, a, e) != e) {
          c.ok = false;
          c.detail = "element moved at cell (" + std::to_string(cc) + "," + std::to_string(a) +
                     ") index " + std::to_string(e);
          break;
        }
      }
      if (!c.ok) break;
    }
  c.vacuous = c.ok && c.checks == 0;
  return c;
}

inline LawCase seal(LawCase lc, std::chrono::steady_clock::time_point t0) {
  lc.ok = true;
  bool all_vacuous = true;
  for (const auto& ch : lc.checks) {
    lc.ok = lc.ok && ch.ok;
    all_vacuous = all_vacuous && ch.vacuous;
  }
  lc.verdict = !lc.ok ? "fail" : (all_vacuous ? "pass-vacuous" : "pass");
  lc.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return lc;
}

}  // namespace lawdet

// ---------------------------------------------------------------------------
// d . dbar collapses to the identity on the base and dbar . d maps to the
// identity on the window through the counit; both triangle identities hold on
// the nose. All four checks run on explicitly constructed components.

inline LawCase check_first_constraint(const CatPtr& a, int bound, const Faults& faults = {}) {
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  lawdet::require_bound(bound);
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "first-constraint";
  lc.instance = lawdet::display_name(a);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto w = bang_of(a, bound);
  CatFunctor sing = singleton_functor(w);
  ProfPtr d = lawdet::inject(faults, "dereliction", dereliction(a, bound));
  ProfPtr db = lawdet::inject(faults, "codereliction", codereliction(a, bound));
  auto dd = compose2(d, db);  // A -> A
  auto ee = compose2(db, d);  // !A -> !A
  ProfPtr ha = hom_prof(a);
  ProfPtr hw = hom_prof(CatPtr(w));

  NatTrans eta{ha, ProfPtr(dd),
               [w, sing, dd](int c, int aa, int e) {
                 MorRef f = sing.mor(MorRef{c, aa, e});
                 return dd->class_from_triple(c, aa, f.src, w->identity(f.src).idx, f.idx);
               },
               "unit"};
  NatTrans eps{ProfPtr(ee), hw,
               [w, sing, ee](int c, int aa, int cls) {
                 auto [b, x, v] = ee->rep_triple(c, aa, cls);
                 int sb = sing.ob(b);
                 return w->compose(MorRef{sb, aa, v}, MorRef{c, sb, x}).idx;
               },
               "counit"};

  lc.checks.push_back(lawdet::eq_witness("unit-iso", eta));
  lc.checks.push_back(lawdet::eq_natural("counit-natural", eps));

  NatTrans tri1 = vertical(
      unit_left_collapse(db),
      vertical(whisker_inner(eps, db),
               vertical(assoc_left(db, d, db),
                        vertical(whisker_outer(db, eta), unit_right_insert(db)))));
  lc.checks.push_back(lawdet::eq_identity("triangle-insert", tri1));

  NatTrans tri2 = vertical(
      unit_right_collapse(d),
      vertical(whisker_outer(d, eps),
               vertical(invert(assoc_left(d, db, d)),
                        vertical(whisker_inner(eta, d), unit_left_insert(d)))));
  lc.checks.push_back(lawdet::eq_identity("triangle-extract", tri2));

  lc.tested_cells = lawdet::inhabited_cells(*ha, *dd) + lawdet::inhabited_cells(*ee, *hw);
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// p . dbar equals inserting the singleton block next to a padding of empty
// blocks: cbar_! . (dbar_! (x) p) . (dbar (x) wbar) . unit_ins. Both sides are
// total, so the equation is certified on the whole window.

inline LawCase check_second_constraint(const CatPtr& a, int bound, const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "second-constraint";
  lc.instance = lawdet::display_name(a);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto w = bang_of(a, bound);
  CatPtr wc(w);
  auto ww = bang_of(wc, bound);

  ProfPtr db = lawdet::inject(faults, "codereliction", codereliction(a, bound));
  ProfPtr pr = lawdet::inject(faults, "promotion", promotion(a, bound));
  ProfPtr dbw = lawdet::inject(faults, "codereliction", codereliction(wc, bound));
  ProfPtr cwk = lawdet::inject(faults, "coweakening", coweakening(a, bound));
  ProfPtr ccw = lawdet::inject(faults, "cocontraction", cocontraction(wc, bound));

  auto lhs = compose2(pr, db);  // A -> !!A

  auto pa1 = product_of(a, one_cat());
  ProfPtr unit_ins = companion(runit_inv_functor(pa1), "unit_ins");
  ProfPtr t1 = tensor_prof(db, cwk);   // A x 1 -> !A x !A
  ProfPtr t2 = tensor_prof(dbw, pr);   // !A x !A -> !!A x !!A
  auto r1 = compose2(t1, unit_ins);
  auto r2 = compose2(t2, ProfPtr(r1));
  auto rhs = compose2(ccw, ProfPtr(r2));

  auto prodw = product_of(wc, wc);
  auto prodww = product_of(CatPtr(ww), CatPtr(ww));
  CatFunctor fl = flatten_functor(ww, w);

  NatTrans mu{
      ProfPtr(lhs), ProfPtr(rhs),
      [=](int Phi, int y, int cls) {
        auto [alpha, x, v] = lhs->rep_triple(Phi, y, cls);
        int sy = w->obj_of_seq({y});
        MorRef wm = w->compose(MorRef{alpha, sy, v}, MorRef{fl.ob(Phi), alpha, x});
        MorRef f = w->perm_mor(wm).arrows[0];
        const auto& blocks = ww->seq(Phi);
        int j = 0;
        while (w->seq(blocks[j]).empty()) ++j;
        int epsW = w->obj_of_seq({});
        int ssy = ww->obj_of_seq({sy});
        int E = ww->obj_of_seq(std::vector<int>(blocks.size() - 1, epsW));
        int tgt = ww->concat_obj(ssy, E);
        PermMor top;
        top.sigma.resize(blocks.size());
        top.arrows.resize(blocks.size());
        int slot = 1;
        for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
          if (i == j) {
            top.sigma[i] = 0;
            top.arrows[i] = w->mor_of(blocks[i], sy, PermMor{{0}, {f}});
          } else {
            top.sigma[i] = slot++;
            top.arrows[i] = w->identity(blocks[i]);
          }
        }
        MorRef X = ww->mor_of(Phi, tgt, top);
        int dpair = pa1->ob_pair(y, 0);
        int x_t1 = w->identity(sy).idx * cwk->cell_size(epsW, 0) + w->identity(epsW).idx;
        int cpair = prodw->ob_pair(sy, epsW);
        int cls1 = r1->class_from_triple(cpair, y, dpair, x_t1, pa1->identity(dpair).idx);
        int bpair = prodww->ob_pair(ssy, E);
        int x_t2 = ww->identity(ssy).idx * pr->cell_size(E, epsW) + w->identity(epsW).idx;
        int cls2 = r2->class_from_triple(bpair, y, cpair, x_t2, cls1);
        return rhs->class_from_triple(Phi, y, bpair, X.idx, cls2);
      },
      "block_insert"};

  lc.checks.push_back(lawdet::eq_witness("promotion-split", mu));
  lc.tested_cells = lawdet::inhabited_cells(*lhs, *rhs);
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// Inserting on the left tensor factor and sequencing pairwise agrees with
// inserting a fresh pair after extracting the right factor:
//   m2 . (dbar (x) 1) = dbar_{AxB} . (1 (x) d). Total on the window.

inline LawCase check_strength(const CatPtr& a, const CatPtr& b, int bound,
                              const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "strength";
  lc.instance = lawdet::display_name(a) + "," + lawdet::display_name(b);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto ba = bang_of(a, bound);
  auto bb = bang_of(b, bound);
  auto base2 = product_of(a, b);
  CatPtr b2c(base2);
  auto bp = bang_of(b2c, bound);

  ProfPtr m2 = lawdet::inject(faults, "mon2", mon2(a, b, bound));
  ProfPtr dba = lawdet::inject(faults, "codereliction", codereliction(a, bound));
  ProfPtr dbp = lawdet::inject(faults, "codereliction", codereliction(b2c, bound));
  ProfPtr dB = lawdet::inject(faults, "dereliction", dereliction(b, bound));

  auto lhs = compose2(m2, tensor_prof(dba, hom_prof(CatPtr(bb))));
  auto rhs = compose2(dbp, tensor_prof(hom_prof(a), dB));

  CatFunctor bpr1 = bang_functor(proj1_functor(base2), bp, ba);
  CatFunctor bpr2 = bang_functor(proj2_functor(base2), bp, bb);
  CatFunctor sing_a = singleton_functor(ba);
  auto prodab = product_of(CatPtr(ba), CatPtr(bb));
  auto dom2 = product_of(a, CatPtr(bb));

  NatTrans sigma{
      ProfPtr(rhs), ProfPtr(lhs),
      [=](int g, int ab, int cls) {
        auto [mid, k, fh] = rhs->rep_triple(g, ab, cls);
        auto [x0, b0] = base2->ob_split(mid);
        auto [aa, beta] = dom2->ob_split(ab);
        MorRef km{g, bp->obj_of_seq({mid}), k};
        MorRef k1 = bpr1.mor(km);
        MorRef k2 = bpr2.mor(km);
        int s2y = dB->cell_size(b0, beta);
        MorRef f{x0, aa, fh / s2y};
        MorRef h{bb->obj_of_seq({b0}), beta, fh % s2y};
        MorRef x1 = ba->compose(sing_a.mor(f), k1);
        MorRef x2 = bb->compose(h, k2);
        int saa = ba->obj_of_seq({aa});
        int mid2 = prodab->ob_pair(saa, beta);
        int xel = x1.idx * bb->hom_size(x2.src, beta) + x2.idx;
        int yel = ba->identity(saa).idx * bb->hom_size(beta, beta) + bb->identity(beta).idx;
        return lhs->class_from_triple(g, ab, mid2, xel, yel);
      },
      "pair_insert"};

  lc.checks.push_back(lawdet::eq_witness("insert-sequence", sigma));
  lc.tested_cells = lawdet::inhabited_cells(*rhs, *lhs);
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// Promotion is coassociative up to window truncation and both counits
// collapse it exactly. The coassociativity square is certified on the region
// where the one-step flattening of the doubly iterated sequence stays inside
// the window; everything outside is tallied as untested.

inline LawCase check_comonad_laws(const CatPtr& a, int bound, const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "comonad";
  lc.instance = lawdet::display_name(a);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto w = bang_of(a, bound);
  CatPtr wc(w);
  auto ww = bang_of(wc, bound);
  CatPtr wwc(ww);
  auto www = bang_of(wwc, bound);

  ProfPtr pr = lawdet::inject(faults, "promotion", promotion(a, bound));
  ProfPtr prw = lawdet::inject(faults, "promotion", promotion(wc, bound));
  ProfPtr bpr = lawdet::inject(faults, "bang-promotion", bang_promote(a, bound));
  ProfPtr dw = lawdet::inject(faults, "dereliction", dereliction(wc, bound));
  ProfPtr bd = lawdet::inject(faults, "bang-dereliction", bang_derel(a, bound));
  ProfPtr hw = hom_prof(wc);

  // Counit on the outer layer: d_! . p = 1.
  auto co = compose2(dw, pr);
  NatTrans outer{hw, ProfPtr(co),
                 [ww, co](int c, int aa, int e) {
                   int sc = ww->obj_of_seq({c});
                   return co->class_from_triple(c, aa, sc, ww->identity(sc).idx, e);
                 },
                 "extract_outer"};
  lc.checks.push_back(lawdet::eq_witness("counit-outer", outer));
  lc.tested_cells += lawdet::inhabited_cells(*hw, *co);

  // Counit under the bang: !d . p = 1.
  CatFunctor s = bang_functor(singleton_functor(w), w, ww);
  auto ci = compose2(bd, pr);
  NatTrans inner{hw, ProfPtr(ci),
                 [s, ww, ci](int c, int aa, int e) {
                   int sc = s.ob(c);
                   return ci->class_from_triple(c, aa, sc, ww->identity(sc).idx, e);
                 },
                 "extract_inner"};
  lc.checks.push_back(lawdet::eq_witness("counit-inner", inner));
  lc.tested_cells += lawdet::inhabited_cells(*hw, *ci);

  // Coassociativity: !p . p = p_! . p on the safe region.
  auto lhs = compose2(bpr, pr);   // total: blockwise flattening stays in window
  auto rhs = compose2(prw, pr);   // truncates: one-step flattening can escape
  CatFunctor g = bang_functor(flatten_functor(ww, w), www, ww);
  CatFunctor fl2 = flatten_functor(ww, w);
  CatFunctor fl3 = flatten_functor(www, ww);

  std::vector<int> safe;
  for (int o = 0; o < www->object_count(); ++o) {
    long long il = 0;
    for (int e : www->seq(o)) il += static_cast<long long>(ww->seq(e).size());
    if (il <= bound) safe.push_back(o);
  }
  auto sub = restrict_window(CatPtr(www), safe);
  CatFunctor inc = inclusion_functor(sub);
  ProfPtr lhs_r = transport_prof(ProfPtr(lhs), identity_functor(wc), inc);
  ProfPtr rhs_r = transport_prof(ProfPtr(rhs), identity_functor(wc), inc);

  NatTrans coassoc{
      lhs_r, rhs_r,
      [=](int cs, int aa, int cls) {
        int Psi = sub->inner_object(cs);
        auto [phi, x, v] = lhs->rep_triple(Psi, aa, cls);
        MorRef xm{g.ob(Psi), phi, x};
        MorRef y = w->compose(MorRef{fl2.ob(phi), aa, v}, fl2.mor(xm));
        int flPsi = fl3.ob(Psi);
        return rhs->class_from_triple(Psi, aa, flPsi, ww->identity(flPsi).idx, y.idx);
      },
      "reassociate"};
  lc.checks.push_back(lawdet::eq_witness("coassociativity", coassoc));
  lc.tested_cells += lawdet::inhabited_cells(*lhs_r, *rhs_r);

  // Honest tally of the inhabited cells the safe region leaves out: the
  // total-side cell is inhabited iff hom(join(blockwise join), alpha) is.
  std::vector<char> is_safe(www->object_count(), 0);
  for (int o : safe) is_safe[o] = 1;
  for (int o = 0; o < www->object_count(); ++o) {
    if (is_safe[o]) continue;
    int bf = g.image_or_none(o);
    if (bf < 0) continue;
    int flat = fl2.image_or_none(bf);
    if (flat < 0) continue;
    for (int aa = 0; aa < w->object_count(); ++aa)
      if (w->hom_size(flat, aa) > 0) ++lc.untested_cells;
  }
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// Storage equivalences for the additive structure. Merging the two sides of
// a split sequence is the identity everywhere; splitting after merging is
// certified on pairs whose combined length fits the window, with the excluded
// inhabited cells tallied. The unit equivalences are exact.

inline LawCase check_seely(const FinCatPtr& a, const FinCatPtr& b, int bound,
                           const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "seely";
  lc.instance = a->name() + "," + b->name();
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto av = view(a), bv = view(b);
  auto co = std::make_shared<FinCat>(coproduct(*a, *b));
  auto cov = view(co);
  auto ba = bang_of(av, bound), bb = bang_of(bv, bound), bco = bang_of(cov, bound);
  const int na = a->object_count();

  ProfPtr s2_raw = seely2_direct(a, b, bound);
  ProfPtr s2i_raw = seely2_inv(a, b, bound);
  auto s2i_t = std::dynamic_pointer_cast<const ComposeProf>(s2i_raw);
  ProfPtr s2 = lawdet::inject(faults, "seely2", s2_raw);
  ProfPtr s2i = lawdet::inject(faults, "seely2-inv", s2i_raw);

  CatFunctor bin1 = bang_functor(lift(smaps::coprod_in(a, b, co, true)), ba, bco);
  CatFunctor bin2 = bang_functor(lift(smaps::coprod_in(a, b, co, false)), bb, bco);
  auto prodab = product_of(CatPtr(ba), CatPtr(bb));
  auto prodcc = product_of(CatPtr(bco), CatPtr(bco));

  // Split then merge: s2 . s2inv = 1 on !(A + B), exact.
  auto rt_mixed = compose2(s2, s2i);
  ProfPtr hc = hom_prof(CatPtr(bco));
  NatTrans mixed{
      hc, ProfPtr(rt_mixed),
      [=](int gp, int gg, int e) {
        const auto& seq = bco->seq(gp);
        const int n = static_cast<int>(seq.size());
        int ka = 0;
        for (int x : seq)
          if (x < na) ++ka;
        PermMor u;
        u.sigma.resize(n);
        u.arrows.reserve(n);
        std::vector<int> aseq, bseq;
        int posA = 0, posB = ka;
        for (int i = 0; i < n; ++i) {
          if (seq[i] < na) {
            u.sigma[i] = posA++;
            aseq.push_back(seq[i]);
          } else {
            u.sigma[i] = posB++;
            bseq.push_back(seq[i] - na);
          }
          u.arrows.push_back(cov->identity(seq[i]));
        }
        std::vector<int> tgtseq = aseq;
        for (int x : bseq) tgtseq.push_back(x + na);
        int tgt = bco->obj_of_seq(tgtseq);
        MorRef um = bco->mor_of(gp, tgt, u);
        PermMor uinv;
        uinv.sigma.resize(n);
        uinv.arrows.resize(n);
        for (int i = 0; i < n; ++i) uinv.sigma[u.sigma[i]] = i;
        for (int i = 0; i < n; ++i) uinv.arrows[i] = cov->identity(tgtseq[i]);
        MorRef vm = bco->compose(MorRef{gp, gg, e}, bco->mor_of(tgt, gp, uinv));
        int alpha = ba->obj_of_seq(aseq);
        int beta = bb->obj_of_seq(bseq);
        int i1a = bco->obj_of_seq(std::vector<int>(tgtseq.begin(), tgtseq.begin() + ka));
        int i2b = bco->obj_of_seq(std::vector<int>(tgtseq.begin() + ka, tgtseq.end()));
        int cpair = prodab->ob_pair(alpha, beta);
        int midcc = prodcc->ob_pair(i1a, i2b);
        int xel = bco->identity(i1a).idx * bco->hom_size(i2b, i2b) + bco->identity(i2b).idx;
        int cls = s2i_t->class_from_triple(cpair, gg, midcc, xel, vm.idx);
        return rt_mixed->class_from_triple(gp, gg, cpair, um.idx, cls);
      },
      "sort_sides"};
  lc.checks.push_back(lawdet::eq_witness("merge-split", mixed));
  lc.tested_cells += lawdet::inhabited_cells(*hc, *rt_mixed);

  // Merge then split: s2inv . s2 = 1 on !A (x) !B within the safe region.
  auto rt_split = compose2(s2i, s2);
  std::vector<int> safe;
  for (int o = 0; o < prodab->object_count(); ++o) {
    auto [x, y] = prodab->ob_split(o);
    if (static_cast<int>(ba->seq(x).size()) + static_cast<int>(bb->seq(y).size()) <= bound)
      safe.push_back(o);
  }
  auto sub = restrict_window(CatPtr(prodab), safe);
  CatFunctor inc = inclusion_functor(sub);
  ProfPtr split_r = transport_prof(ProfPtr(rt_split), inc, inc);
  ProfPtr homp = hom_prof(CatPtr(prodab));
  ProfPtr hom_r = transport_prof(homp, inc, inc);
  NatTrans split{
      hom_r, split_r,
      [=](int cs, int as, int e) {
        int cfull = sub->inner_object(cs);
        int afull = sub->inner_object(as);
        auto [f1, f2] = prodab->mor_split(MorRef{cfull, afull, e});
        auto [ap, bp_] = prodab->ob_split(cfull);
        int i1a = bin1.ob(ap);
        int i2b = bin2.ob(bp_);
        int gmid = bco->concat_obj(i1a, i2b);
        int midcc = prodcc->ob_pair(i1a, i2b);
        int xel = bco->identity(i1a).idx * bco->hom_size(i2b, i2b) + bco->identity(i2b).idx;
        int x = s2i_t->class_from_triple(cfull, gmid, midcc, xel, bco->identity(gmid).idx);
        int y = bco->mor_concat(bin1.mor(f1), bin2.mor(f2)).idx;
        return rt_split->class_from_triple(cfull, afull, gmid, x, y);
      },
      "resplit"};
  lc.checks.push_back(lawdet::eq_witness("split-merge", split));
  lc.tested_cells += lawdet::inhabited_cells(*hom_r, *split_r);
  for (int o = 0; o < prodab->object_count(); ++o) {
    auto [x, y] = prodab->ob_split(o);
    if (static_cast<int>(ba->seq(x).size()) + static_cast<int>(bb->seq(y).size()) <= bound)
      continue;
    for (int c = 0; c < prodab->object_count(); ++c)
      if (homp->cell_nonzero(c, o) || rt_split->cell_nonzero(c, o)) ++lc.untested_cells;
  }

  // Unit direction: the empty-sequence equivalences compose to identities.
  ProfPtr s0 = lawdet::inject(faults, "seely0", seely0(bound));
  ProfPtr s0i = lawdet::inject(faults, "seely0-inv", seely0_inv(bound));
  auto bz = bang_of(view(fincats::zero()), bound);
  int epsZ = bz->obj_of_seq({});
  auto r01 = compose2(s0i, s0);  // 1 -> 1
  NatTrans u1{hom_prof(one_cat()), ProfPtr(r01),
              [bz, epsZ, r01](int, int, int) {
                return r01->class_from_triple(0, 0, epsZ, bz->identity(epsZ).idx, 0);
              },
              "unit_mixed"};
  lc.checks.push_back(lawdet::eq_witness("unit-merge-split", u1));
  auto r02 = compose2(s0, s0i);  // !0 -> !0
  NatTrans u2{hom_prof(CatPtr(bz)), ProfPtr(r02),
              [bz, epsZ, r02](int, int, int e) {
                return r02->class_from_triple(epsZ, epsZ, 0, 0, e);
              },
              "unit_split"};
  lc.checks.push_back(lawdet::eq_witness("unit-split-merge", u2));
  lc.tested_cells += 2;
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// The four derivative rules of the codereliction calculus: deriving a
// constant gives zero, the product rule splits one insertion across the two
// tensor factors, the chain rule reorganizes insertion into a promoted
// sequence, and insertion is compatible with the pairwise sequencing map.

inline LawCase check_derivative_rules(const CatPtr& a, int bound, const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "derivative-rules";
  lc.instance = lawdet::display_name(a);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto w = bang_of(a, bound);
  CatPtr wc(w);
  auto ww = bang_of(wc, bound);

  ProfPtr db = lawdet::inject(faults, "codereliction", codereliction(a, bound));
  ProfPtr wk = lawdet::inject(faults, "weakening", weakening(a, bound));
  ProfPtr ct = lawdet::inject(faults, "contraction", contraction(a, bound));
  ProfPtr cwk = lawdet::inject(faults, "coweakening", coweakening(a, bound));
  ProfPtr cc = lawdet::inject(faults, "cocontraction", cocontraction(a, bound));
  ProfPtr pr = lawdet::inject(faults, "promotion", promotion(a, bound));

  // Constant rule: w . dbar has no inhabited cell.
  {
    auto k = compose2(wk, db);
    LawCheck c;
    c.name = "constant";
    c.ok = true;
    for (int aa = 0; aa < a->object_count(); ++aa) {
      ++c.checks;
      if (k->cell_nonzero(0, aa)) {
        c.ok = false;
        c.detail = "unexpected element deriving a constant at base object " + std::to_string(aa);
        break;
      }
    }
    c.vacuous = c.ok && c.checks == 0;
    lc.checks.push_back(std::move(c));
  }

  // Product rule: c . dbar = (dbar (x) wbar) + (wbar (x) dbar).
  {
    auto lhs = compose2(ct, db);  // A -> !A x !A
    auto pa1 = product_of(a, one_cat());
    auto p1a = product_of(one_cat(), a);
    ProfPtr t1 = tensor_prof(db, cwk);
    ProfPtr t2 = transport_prof(tensor_prof(cwk, db), swap_functor(pa1, p1a),
                                identity_functor(t1->cod()));
    ProfPtr sum = sum_prof(t1, t2);
    ProfPtr rhs = transport_prof(sum, runit_inv_functor(pa1), identity_functor(sum->cod()));
    auto prodw = product_of(wc, wc);
    int epsW = w->obj_of_seq({});
    NatTrans leib{
        ProfPtr(lhs), rhs,
        [=](int cpair, int y, int cls) {
          auto [alpha, x, v] = lhs->rep_triple(cpair, y, cls);
          auto [a1, a2] = prodw->ob_split(cpair);
          int sy = w->obj_of_seq({y});
          MorRef wm = w->compose(MorRef{alpha, sy, v}, MorRef{w->concat_obj(a1, a2), alpha, x});
          if (static_cast<int>(w->seq(a1).size()) == 1)
            return wm.idx * cwk->cell_size(a2, 0) + w->identity(epsW).idx;
          int off = t1->cell_size(cpair, pa1->ob_pair(y, 0));
          return off + w->identity(epsW).idx * db->cell_size(a2, y) + wm.idx;
        },
        "leibniz"};
    lc.checks.push_back(lawdet::eq_witness("product", leib));
    lc.tested_cells += lawdet::inhabited_cells(*lhs, *rhs);
  }

  // Chain rule: p . cbar . (dbar (x) 1) factors through the promoted pair.
  // Witness: collapse the left side to one sequence map h, split off the
  // block containing the entry h sends to the marked singleton (one slot of
  // that block feeds the inner insertion, the rest of the block becomes the
  // first split part), and promote the remaining blocks together.
  {
    ProfPtr dbw = lawdet::inject(faults, "codereliction", codereliction(wc, bound));
    ProfPtr ccw = lawdet::inject(faults, "cocontraction", cocontraction(wc, bound));
    ProfPtr hwp = hom_prof(wc);
    auto innerL = compose2(cc, tensor_prof(db, hwp));
    auto lhs = compose2(pr, ProfPtr(innerL));
    auto x = compose2(dbw, cc);                       // !A x !A -> !!A
    ProfPtr t = tensor_prof(ProfPtr(x), pr);          // (!A x !A) x !A -> !!A x !!A
    auto prodw = product_of(wc, wc);
    auto q_ab_c = product_of(CatPtr(prodw), wc);
    auto q_a_bc = product_of(wc, CatPtr(prodw));
    auto pAw = product_of(a, wc);
    ProfPtr inner = transport_prof(tensor_prof(db, ct), identity_functor(CatPtr(pAw)),
                                   assoc_functor(q_ab_c, q_a_bc));
    auto innerR = compose2(t, inner);
    auto rhs = compose2(ccw, ProfPtr(innerR));
    auto prodWW = product_of(CatPtr(ww), CatPtr(ww));
    CatFunctor fl = flatten_functor(ww, w);
    NatTrans ch{
        ProfPtr(lhs), ProfPtr(rhs),
        [=](int phi, int dompair, int cls) {
          auto [y0, mu] = pAw->ob_split(dompair);
          auto [beta, xu, ycls] = lhs->rep_triple(phi, dompair, cls);
          auto [mid_ak, x2, y2] = innerL->rep_triple(beta, dompair, ycls);
          auto [alpha0, kappa0] = prodw->ob_split(mid_ak);
          int s_h = hwp->cell_size(kappa0, mu);
          int sy = w->obj_of_seq({y0});
          int flphi = fl.ob(phi);
          MorRef h = w->compose(
              w->mor_concat(MorRef{alpha0, sy, y2 / s_h}, MorRef{kappa0, mu, y2 % s_h}),
              w->compose(MorRef{beta, w->concat_obj(alpha0, kappa0), x2},
                         MorRef{flphi, beta, xu}));
          const PermMor& ph = w->perm_mor(h);
          const auto& blocks = ww->seq(phi);
          int pstar = 0;
          while (ph.sigma[pstar] != 0) ++pstar;
          int j = 0, off = 0;
          while (off + static_cast<int>(w->seq(blocks[j]).size()) <= pstar)
            off += static_cast<int>(w->seq(blocks[j++]).size());
          const auto& bseq = w->seq(blocks[j]);
          int nj = static_cast<int>(bseq.size());
          int rstar = pstar - off;
          int alpha = w->obj_of_seq({bseq[rstar]});
          std::vector<int> k1s;
          for (int r = 0; r < nj; ++r)
            if (r != rstar) k1s.push_back(bseq[r]);
          int kappa1 = w->obj_of_seq(k1s);
          std::vector<int> rest(blocks);
          rest.erase(rest.begin() + j);
          int phi2 = ww->obj_of_seq(rest);
          int kappa2 = fl.ob(phi2);
          int betap = w->concat_obj(alpha, kappa1);
          PermMor pb;
          pb.sigma.resize(nj);
          for (int r = 0; r < nj; ++r) {
            pb.sigma[r] = r == rstar ? 0 : (r < rstar ? r + 1 : r);
            pb.arrows.push_back(a->identity(bseq[r]));
          }
          MorRef bj = w->mor_of(blocks[j], betap, pb);
          int phi1 = ww->obj_of_seq({blocks[j]});
          MorRef x4m = ww->mor_of(phi1, ww->obj_of_seq({betap}), PermMor{{0}, {bj}});
          int x_cls = x->class_from_triple(phi1, prodw->ob_pair(alpha, kappa1), betap, x4m.idx,
                                           w->identity(betap).idx);
          int x3 = x_cls * pr->cell_size(phi2, kappa2) + w->identity(kappa2).idx;
          MorRef fm = w->mor_of(alpha, sy, PermMor{{0}, {ph.arrows[pstar]}});
          PermMor pg;
          for (int r = 0; r < nj; ++r)
            if (r != rstar) {
              pg.sigma.push_back(ph.sigma[off + r] - 1);
              pg.arrows.push_back(ph.arrows[off + r]);
            }
          int total = static_cast<int>(ph.sigma.size());
          for (int p = 0; p < total; ++p)
            if (p < off || p >= off + nj) {
              pg.sigma.push_back(ph.sigma[p] - 1);
              pg.arrows.push_back(ph.arrows[p]);
            }
          MorRef gm = w->mor_of(w->concat_obj(kappa1, kappa2), mu, pg);
          int y3 = fm.idx * ct->cell_size(prodw->ob_pair(kappa1, kappa2), mu) + gm.idx;
          int qop = q_ab_c->ob_pair(prodw->ob_pair(alpha, kappa1), kappa2);
          int midWW = prodWW->ob_pair(phi1, phi2);
          int y_rcls = innerR->class_from_triple(midWW, dompair, qop, x3, y3);
          PermMor pww;
          int nb = static_cast<int>(blocks.size());
          pww.sigma.resize(nb);
          for (int i = 0; i < nb; ++i) {
            pww.sigma[i] = i == j ? 0 : (i < j ? i + 1 : i);
            pww.arrows.push_back(w->identity(blocks[i]));
          }
          MorRef xr = ww->mor_of(phi, ww->concat_obj(phi1, phi2), pww);
          return rhs->class_from_triple(phi, dompair, midWW, xr.idx, y_rcls);
        },
        "split_marked_block"};
    lc.checks.push_back(lawdet::eq_witness("chain", ch));
    lc.tested_cells += lawdet::inhabited_cells(*lhs, *rhs);
  }

  // Monoidal rule: m2 . (dbar (x) dbar) = dbar over the product base.
  {
    ProfPtr m2 = lawdet::inject(faults, "mon2", mon2(a, a, bound));
    auto base2 = product_of(a, a);
    CatPtr b2c(base2);
    auto bp = bang_of(b2c, bound);
    ProfPtr db2 = lawdet::inject(faults, "codereliction", codereliction(b2c, bound));
    auto lhs = compose2(m2, tensor_prof(db, db));
    CatFunctor bpr1 = bang_functor(proj1_functor(base2), bp, w);
    CatFunctor bpr2 = bang_functor(proj2_functor(base2), bp, w);
    auto prodaa = product_of(wc, wc);
    NatTrans mono{
        db2, ProfPtr(lhs),
        [=](int g, int xy, int k) {
          auto [x0, y0] = base2->ob_split(xy);
          MorRef km{g, bp->obj_of_seq({xy}), k};
          MorRef k1 = bpr1.mor(km);
          MorRef k2 = bpr2.mor(km);
          int sx = w->obj_of_seq({x0});
          int sy = w->obj_of_seq({y0});
          int mid = prodaa->ob_pair(sx, sy);
          int xel = k1.idx * w->hom_size(k2.src, sy) + k2.idx;
          int yel = w->identity(sx).idx * w->hom_size(sy, sy) + w->identity(sy).idx;
          return lhs->class_from_triple(g, xy, mid, xel, yel);
        },
        "split_insert"};
    lc.checks.push_back(lawdet::eq_witness("monoidal", mono));
    lc.tested_cells += lawdet::inhabited_cells(*db2, *lhs);
  }
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// Merge and split interact as a bialgebra: the main square is certified on
// pairs whose combined length fits the window (rest tallied), the mixed
// weakening squares and the unit loop are exact, and summing with the empty
// profunctor changes nothing.

inline LawCase check_bialgebra(const CatPtr& a, int bound, const Faults& faults = {}) {
  auto t0 = std::chrono::steady_clock::now();
  LawCase lc;
  lc.law = "bialgebra";
  lc.instance = lawdet::display_name(a);
  lc.bound = bound;
  lc.window = safe_window(lc.law, bound);

  auto w = bang_of(a, bound);
  CatPtr wc(w);
  auto prodw = product_of(wc, wc);
  CatPtr pw(prodw);
  int epsW = w->obj_of_seq({});

  ProfPtr ct = lawdet::inject(faults, "contraction", contraction(a, bound));
  ProfPtr cc = lawdet::inject(faults, "cocontraction", cocontraction(a, bound));
  ProfPtr wk = lawdet::inject(faults, "weakening", weakening(a, bound));
  ProfPtr cwk = lawdet::inject(faults, "coweakening", coweakening(a, bound));

  // Main square: c . cbar = (cbar (x) cbar) . shuffle . (c (x) c).
  {
    auto lhs = compose2(ct, cc);
    auto q = product_of(pw, pw);
    CatFunctor shuffle{
        CatPtr(q), CatPtr(q),
        [q, prodw](int o) {
          auto [l, r] = q->ob_split(o);
          auto [x1, x2] = prodw->ob_split(l);
          auto [x3, x4] = prodw->ob_split(r);
          return q->ob_pair(prodw->ob_pair(x1, x3), prodw->ob_pair(x2, x4));
        },
        [q, prodw](const MorRef& m) {
          auto [l, r] = q->mor_split(m);
          auto [f1, f2] = prodw->mor_split(l);
          auto [f3, f4] = prodw->mor_split(r);
          return q->mor_pair(prodw->mor_pair(f1, f3), prodw->mor_pair(f2, f4));
        },
        "shuffle"};
    ProfPtr s = transport_prof(tensor_prof(cc, cc), shuffle, identity_functor(pw));
    auto rhs = compose2(s, tensor_prof(ct, ct));

    std::vector<int> safe;
    for (int o = 0; o < prodw->object_count(); ++o) {
      auto [x, y] = prodw->ob_split(o);
      if (static_cast<int>(w->seq(x).size()) + static_cast<int>(w->seq(y).size()) <= bound)
        safe.push_back(o);
    }
    auto sub = restrict_window(pw, safe);
    CatFunctor inc = inclusion_functor(sub);
    ProfPtr lhs_r = transport_prof(ProfPtr(lhs), inc, identity_functor(pw));
    ProfPtr rhs_r = transport_prof(ProfPtr(rhs), inc, identity_functor(pw));
    // Witness: collapse merge-then-split to one sequence map, cut each
    // incoming component by which outgoing component its entries land in,
    // route the sort permutations through the crossed split and the arrow
    // data through the pairwise merges.
    NatTrans sq{
        lhs_r, rhs_r,
        [=](int cpair, int a_sub, int cls) {
          int apair = sub->inner_object(a_sub);
          auto [g1, g2] = prodw->ob_split(cpair);
          auto [o1, o2] = prodw->ob_split(apair);
          auto [beta, xe, ye] = lhs->rep_triple(cpair, apair, cls);
          MorRef h = w->compose(MorRef{beta, w->concat_obj(o1, o2), ye},
                                MorRef{w->concat_obj(g1, g2), beta, xe});
          const PermMor& ph = w->perm_mor(h);
          const auto& s1 = w->seq(g1);
          const auto& s2 = w->seq(g2);
          int n1 = static_cast<int>(s1.size());
          int n2 = static_cast<int>(s2.size());
          int m1 = static_cast<int>(w->seq(o1).size());
          std::vector<int> t11, t12, t21, t22;  // g_i entries landing in o_j
          for (int p = 0; p < n1; ++p) (ph.sigma[p] < m1 ? t11 : t12).push_back(p);
          for (int p = n1; p < n1 + n2; ++p) (ph.sigma[p] < m1 ? t21 : t22).push_back(p);
          auto part = [&](const std::vector<int>& ps) {
            std::vector<int> s;
            for (int p : ps) s.push_back(p < n1 ? s1[p] : s2[p - n1]);
            return w->obj_of_seq(s);
          };
          int x1 = part(t11), x3 = part(t12), x2 = part(t21), x4 = part(t22);
          PermMor pu1, pu2;
          pu1.sigma.resize(n1);
          pu2.sigma.resize(n2);
          for (int p = 0, c1 = 0, c2 = 0; p < n1; ++p) {
            pu1.sigma[p] = ph.sigma[p] < m1 ? c1++ : static_cast<int>(t11.size()) + c2++;
            pu1.arrows.push_back(a->identity(s1[p]));
          }
          for (int p = 0, c1 = 0, c2 = 0; p < n2; ++p) {
            pu2.sigma[p] = ph.sigma[n1 + p] < m1 ? c1++ : static_cast<int>(t21.size()) + c2++;
            pu2.arrows.push_back(a->identity(s2[p]));
          }
          MorRef u1 = w->mor_of(g1, w->concat_obj(x1, x3), pu1);
          MorRef u2 = w->mor_of(g2, w->concat_obj(x2, x4), pu2);
          PermMor pf1, pf2;
          for (int p : t11) { pf1.sigma.push_back(ph.sigma[p]); pf1.arrows.push_back(ph.arrows[p]); }
          for (int p : t21) { pf1.sigma.push_back(ph.sigma[p]); pf1.arrows.push_back(ph.arrows[p]); }
          for (int p : t12) { pf2.sigma.push_back(ph.sigma[p] - m1); pf2.arrows.push_back(ph.arrows[p]); }
          for (int p : t22) { pf2.sigma.push_back(ph.sigma[p] - m1); pf2.arrows.push_back(ph.arrows[p]); }
          MorRef f1 = w->mor_of(w->concat_obj(x1, x2), o1, pf1);
          MorRef f2 = w->mor_of(w->concat_obj(x3, x4), o2, pf2);
          int qobj = q->ob_pair(prodw->ob_pair(x1, x2), prodw->ob_pair(x3, x4));
          int ex = u1.idx * cc->cell_size(g2, prodw->ob_pair(x2, x4)) + u2.idx;
          int ey = f1.idx * ct->cell_size(prodw->ob_pair(x3, x4), o2) + f2.idx;
          return rhs->class_from_triple(cpair, apair, qobj, ex, ey);
        },
        "four_way_split"};
    lc.checks.push_back(lawdet::eq_witness("square", sq));
    lc.tested_cells += lawdet::inhabited_cells(*lhs_r, *rhs_r);
    std::vector<char> is_safe(prodw->object_count(), 0);
    for (int o : safe) is_safe[o] = 1;
    for (int o = 0; o < prodw->object_count(); ++o) {
      if (is_safe[o]) continue;
      for (int c = 0; c < prodw->object_count(); ++c)
        if (lhs->cell_nonzero(c, o) || rhs->cell_nonzero(c, o)) ++lc.untested_cells;
    }
  }

  auto prod11 = product_of(one_cat(), one_cat());
  int pair00 = prod11->ob_pair(0, 0);

  // w . cbar = w (x) w.
  {
    auto lhs = compose2(wk, cc);
    ProfPtr rhs = transport_prof(tensor_prof(wk, wk), identity_functor(pw),
                                 const_functor(one_cat(), CatPtr(prod11), pair00));
    NatTrans t{rhs, ProfPtr(lhs),
               [=](int, int apair, int) {
                 return lhs->class_from_triple(0, apair, epsW, w->identity(epsW).idx,
                                               w->identity(epsW).idx);
               },
               "discard_both"};
    lc.checks.push_back(lawdet::eq_witness("merge-discard", t));
    lc.tested_cells += lawdet::inhabited_cells(*rhs, *lhs);
  }

  // c . wbar = wbar (x) wbar.
  {
    auto lhs = compose2(ct, cwk);
    ProfPtr rhs = transport_prof(tensor_prof(cwk, cwk),
                                 const_functor(one_cat(), CatPtr(prod11), pair00),
                                 identity_functor(pw));
    NatTrans t{rhs, ProfPtr(lhs),
               [=](int cpair, int, int) {
                 return lhs->class_from_triple(cpair, 0, epsW, w->identity(epsW).idx,
                                               w->identity(epsW).idx);
               },
               "fresh_both"};
    lc.checks.push_back(lawdet::eq_witness("split-fresh", t));
    lc.tested_cells += lawdet::inhabited_cells(*rhs, *lhs);
  }

  // w . wbar = 1.
  {
    auto lhs = compose2(wk, cwk);
    ProfPtr h1 = hom_prof(one_cat());
    NatTrans t{h1, ProfPtr(lhs),
               [=](int, int, int) {
                 return lhs->class_from_triple(0, 0, epsW, w->identity(epsW).idx,
                                               w->identity(epsW).idx);
               },
               "unit_loop"};
    lc.checks.push_back(lawdet::eq_witness("unit-loop", t));
    lc.tested_cells += lawdet::inhabited_cells(*h1, *lhs);
  }

  // Convolution unit: summing with the empty profunctor changes nothing.
  {
    ProfPtr z = zero_prof(ct->dom(), ct->cod());
    NatTrans t1{sum_prof(ct, z), ct, [](int, int, int e) { return e; }, "drop_right"};
    NatTrans t2{sum_prof(z, ct), ct, [](int, int, int e) { return e; }, "drop_left"};
    CheckResult r = check_iso(t1);
    r.merge(check_iso(t2));
    LawCheck c;
    c.name = "convolution-unit";
    c.ok = r.ok;
    c.checks = r.checks;
    c.detail = r.detail;
    c.vacuous = c.ok && r.checks == 0;
    lc.checks.push_back(std::move(c));
    lc.tested_cells += lawdet::inhabited_cells(*ct, *ct);
  }
  return lawdet::seal(std::move(lc), t0);
}

// ---------------------------------------------------------------------------
// Suite driver: every selected law on every selected base (two-sided laws run
// on the diagonal). Defaults cover all laws over the builtin family; an
// explicitly emptied selection yields an empty report. Cases come back sorted
// by (law, instance) and timings are zeroed unless requested.

inline Report run_suite(const SuiteConfig& cfg) {
  if (!cfg.laws.empty() && !cfg.bases.empty()) lawdet::require_bound(cfg.bound);
  Report rep;
  rep.suite = cfg.name;
  rep.bound = cfg.bound;
  const auto& known = law_names();
  for (const std::string& law : cfg.laws)
    if (std::find(known.begin(), known.end(), law) == known.end())
      throw Error("unknown law '" + law + "'");
  for (const std::string& law : cfg.laws) {
    for (const std::string& base : cfg.bases) {
      FinCatPtr fc = fincats::by_name(base);
      CatPtr av = view(fc);
      std::string inst = (law == "strength" || law == "seely") ? base + "," + base : base;
      Faults f;
      if (!cfg.faults.target.empty() && (cfg.faults.law.empty() || cfg.faults.law == law) &&
          (cfg.faults.instance.empty() || cfg.faults.instance == inst))
        f = cfg.faults;
      LawCase c;
      if (law == "first-constraint")
        c = check_first_constraint(av, cfg.bound, f);
      else if (law == "second-constraint")
        c = check_second_constraint(av, cfg.bound, f);
      else if (law == "strength")
        c = check_strength(av, av, cfg.bound, f);
      else if (law == "comonad")
        c = check_comonad_laws(av, cfg.bound, f);
      else if (law == "seely")
        c = check_seely(fc, fc, cfg.bound, f);
      else if (law == "derivative-rules")
        c = check_derivative_rules(av, cfg.bound, f);
      else
        c = check_bialgebra(av, cfg.bound, f);
      if (!cfg.timings) c.millis = 0.0;
      rep.cases.push_back(std::move(c));
    }
  }
  std::sort(rep.cases.begin(), rep.cases.end(), [](const LawCase& x, const LawCase& y) {
    return x.law != y.law ? x.law < y.law : x.instance < y.instance;
  });
  for (const auto& c : rep.cases) rep.all_ok = rep.all_ok && c.ok;
  return rep;
}

}  // namespace coend
