#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coend/prof.hpp"

namespace coend {

// A 2-cell between parallel profunctors: a per-cell function src(c, a) ->
// dst(c, a). Naturality and bijectivity are checked, never assumed.
struct NatTrans {
  ProfPtr src, dst;
  std::function<int(int c, int a, int e)> map;
  std::string desc;
};

struct CheckResult {
  bool ok = true;
  long long checks = 0;
  std::string detail;  // first counterexample, empty when ok

  CheckResult& merge(const CheckResult& other) {
    checks += other.checks;
    if (ok && !other.ok) {
      ok = false;
      detail = other.detail;
    }
    return *this;
  }
};

inline void require_parallel(const ProfPtr& f, const ProfPtr& g, const char* what) {
  require_same_window(f->dom(), g->dom(), what);
  require_same_window(f->cod(), g->cod(), what);
}

inline NatTrans identity_nat(ProfPtr f) {
  return {f, f, [](int, int, int e) { return e; }, "id"};
}

inline NatTrans vertical(const NatTrans& t2, const NatTrans& t1) {
  if (t1.dst->key() != t2.src->key()) throw Error("vertical composition: middle profunctors differ");
  auto m1 = t1.map;
  auto m2 = t2.map;
  return {t1.src, t2.dst,
          [m1, m2](int c, int a, int e) { return m2(c, a, m1(c, a, e)); },
          t2.desc + "." + t1.desc};
}

// Commutation of the components with every generator action on both sides.
inline CheckResult check_natural(const NatTrans& t) {
  require_parallel(t.src, t.dst, "naturality check");
  const Category& dom = *t.src->dom();
  const Category& cod = *t.src->cod();
  CheckResult r;
  for (const MorRef& g : cod.all_generators())
    for (int a = 0; a < dom.object_count(); ++a) {
      if (!t.src->cell_nonzero(g.dst, a)) continue;
      int n = t.src->cell_size(g.dst, a);
      for (int e = 0; e < n; ++e) {
        ++r.checks;
        int via_src = t.map(g.src, a, t.src->lact(g, a, e));
        int via_dst = t.dst->lact(g, a, t.map(g.dst, a, e));
        if (via_src != via_dst) {
          r.ok = false;
          r.detail = "naturality breaks for codomain morphism " + cod.mor_label(g) + " at domain object " +
                     dom.object_label(a) + ", element " + std::to_string(e) + " of cell (" +
                     cod.object_label(g.dst) + ", " + dom.object_label(a) + ")";
          return r;
        }
      }
    }
  for (const MorRef& f : dom.all_generators())
    for (int c = 0; c < cod.object_count(); ++c) {
      if (!t.src->cell_nonzero(c, f.src)) continue;
      int n = t.src->cell_size(c, f.src);
      for (int e = 0; e < n; ++e) {
        ++r.checks;
        int via_src = t.map(c, f.dst, t.src->ract(f, c, e));
        int via_dst = t.dst->ract(f, c, t.map(c, f.src, e));
        if (via_src != via_dst) {
          r.ok = false;
          r.detail = "naturality breaks for domain morphism " + dom.mor_label(f) + " at codomain object " +
                     cod.object_label(c) + ", element " + std::to_string(e) + " of cell (" +
                     cod.object_label(c) + ", " + dom.object_label(f.src) + ")";
          return r;
        }
      }
    }
  return r;
}

// Componentwise bijectivity over every cell where either side is inhabited.
inline CheckResult check_bijective(const NatTrans& t) {
  require_parallel(t.src, t.dst, "bijectivity check");
  const Category& dom = *t.src->dom();
  const Category& cod = *t.src->cod();
  CheckResult r;
  std::vector<char> seen;
  for (int a = 0; a < dom.object_count(); ++a) {
    std::vector<int> cs = t.src->cod_support(a);
    const auto& cs2 = t.dst->cod_support(a);
    cs.insert(cs.end(), cs2.begin(), cs2.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (int c : cs) {
      int ns = t.src->cell_size(c, a);
      int nd = t.dst->cell_size(c, a);
      ++r.checks;
      if (ns != nd) {
        r.ok = false;
        r.detail = "cell (" + cod.object_label(c) + ", " + dom.object_label(a) + ") has size " +
                   std::to_string(ns) + " on the left and " + std::to_string(nd) + " on the right";
        return r;
      }
      seen.assign(ns, 0);
      for (int e = 0; e < ns; ++e) {
        int v = t.map(c, a, e);
        ++r.checks;
        if (v < 0 || v >= nd || seen[v]) {
          r.ok = false;
          r.detail = "component at cell (" + cod.object_label(c) + ", " + dom.object_label(a) +
                     ") is not a bijection at element " + std::to_string(e);
          return r;
        }
        seen[v] = 1;
      }
    }
  }
  return r;
}

inline CheckResult check_iso(const NatTrans& t) {
  CheckResult r = check_natural(t);
  if (!r.ok) return r;
  return r.merge(check_bijective(t));
}

// Cellwise inverse of a bijective transformation; cells are inverted on
// demand and the construction throws if some component is not a bijection.
inline NatTrans invert(const NatTrans& t) {
  auto cache = std::make_shared<std::map<std::int64_t, std::vector<int>>>();
  auto mu = std::make_shared<std::mutex>();
  ProfPtr src = t.src, dst = t.dst;
  auto fwd = t.map;
  auto map = [cache, mu, src, dst, fwd](int c, int a, int e) {
    std::int64_t k = pack2(c, a);
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto it = cache->find(k);
      if (it != cache->end()) return it->second[e];
    }
    int n = src->cell_size(c, a);
    if (dst->cell_size(c, a) != n) throw Error("inverse of a non-bijective transformation");
    std::vector<int> inv(n, -1);
    for (int i = 0; i < n; ++i) {
      int v = fwd(c, a, i);
      if (v < 0 || v >= n || inv[v] != -1) throw Error("inverse of a non-bijective transformation");
      inv[v] = i;
    }
    std::lock_guard<std::mutex> lock(*mu);
    return cache->try_emplace(k, std::move(inv)).first->second[e];
  };
  return {dst, src, map, "inv(" + t.desc + ")"};
}

// ---------------------------------------------------------------------------
// Canonical 2-cells of the composition calculus. All are unconditionally
// well-defined given naturality of the inputs; callers re-verify with
// check_natural / check_bijective as the law harness demands.

struct ComposedPair {
  std::shared_ptr<const ComposeProf> prof;
};

inline std::shared_ptr<const ComposeProf> compose2(ProfPtr n, ProfPtr m) {
  return std::make_shared<ComposeProf>(std::move(n), std::move(m));
}

// 1_h * t : (h o t.src) => (h o t.dst).
inline NatTrans whisker_outer(ProfPtr h, const NatTrans& t) {
  auto src = compose2(h, t.src);
  auto dst = compose2(h, t.dst);
  auto comp = t.map;
  return {src, dst,
          [src, dst, comp](int c, int a, int cls) {
            auto [b, x, y] = src->rep_triple(c, a, cls);
            return dst->class_from_triple(c, a, b, x, comp(b, a, y));
          },
          "(1*" + t.desc + ")"};
}

// t * 1_k : (t.src o k) => (t.dst o k).
inline NatTrans whisker_inner(const NatTrans& t, ProfPtr k) {
  auto src = compose2(t.src, k);
  auto dst = compose2(t.dst, k);
  auto comp = t.map;
  return {src, dst,
          [src, dst, comp](int c, int a, int cls) {
            auto [b, x, y] = src->rep_triple(c, a, cls);
            return dst->class_from_triple(c, a, b, comp(c, b, x), y);
          },
          "(" + t.desc + "*1)"};
}

// (f o 1_dom) => f.
inline NatTrans unit_right_collapse(ProfPtr f) {
  auto src = compose2(f, hom_prof(f->dom()));
  return {src, f,
          [src, f](int c, int a, int cls) {
            auto [mid, x, y] = src->rep_triple(c, a, cls);
            return f->ract(MorRef{mid, a, y}, c, x);
          },
          "runit"};
}

inline NatTrans unit_right_insert(ProfPtr f) {
  auto dst = compose2(f, hom_prof(f->dom()));
  CatPtr dom = f->dom();
  return {f, dst,
          [dst, dom](int c, int a, int e) {
            return dst->class_from_triple(c, a, a, e, dom->identity(a).idx);
          },
          "runit_inv"};
}

// (1_cod o f) => f.
inline NatTrans unit_left_collapse(ProfPtr f) {
  auto src = compose2(hom_prof(f->cod()), f);
  return {src, f,
          [src, f](int c, int a, int cls) {
            auto [mid, x, y] = src->rep_triple(c, a, cls);
            return f->lact(MorRef{c, mid, x}, a, y);
          },
          "lunit"};
}

inline NatTrans unit_left_insert(ProfPtr f) {
  auto dst = compose2(hom_prof(f->cod()), f);
  CatPtr cod = f->cod();
  return {f, dst,
          [dst, cod](int c, int a, int e) {
            return dst->class_from_triple(c, a, c, cod->identity(c).idx, e);
          },
          "lunit_inv"};
}

// (h o (g o f)) => ((h o g) o f).
inline NatTrans assoc_left(ProfPtr h, ProfPtr g, ProfPtr f) {
  auto gf = compose2(g, f);
  auto hg = compose2(h, g);
  auto src = compose2(h, gf);
  auto dst = compose2(hg, f);
  return {src, dst,
          [src, dst, gf, hg](int c, int a, int cls) {
            auto [b, x, q] = src->rep_triple(c, a, cls);
            auto [m, y, z] = gf->rep_triple(b, a, q);
            int p = hg->class_from_triple(c, m, b, x, y);
            return dst->class_from_triple(c, a, m, p, z);
          },
          "assoc"};
}

// ---------------------------------------------------------------------------
// Functoriality audit of a single profunctor. Exhaustive where the window
// permits, generator-based with factorization peeling otherwise; the mode is
// recorded so reports stay honest about coverage.
struct AuditReport {
  bool ok = true;
  std::string mode;
  long long checks = 0;
  std::string detail;
};

namespace detail {

struct ActiveCells {
  // Nonzero cells grouped by domain object; cod supports come back sorted.
  std::vector<std::pair<int, std::vector<int>>> by_dom;
  std::vector<int> active_cod;  // union of all cod supports
  long long elements = 0;
};

inline ActiveCells scan_cells(const Profunctor& p) {
  ActiveCells out;
  std::set<int> cods;
  for (int a = 0; a < p.dom()->object_count(); ++a) {
    const auto& sup = p.cod_support(a);
    if (sup.empty()) continue;
    out.by_dom.push_back({a, sup});
    for (int c : sup) {
      cods.insert(c);
      out.elements += p.cell_size(c, a);
    }
  }
  out.active_cod.assign(cods.begin(), cods.end());
  return out;
}

}  // namespace detail

// Identity actions, composite actions (exhaustive when the estimate fits the
// budget, generator pairs plus factorization peeling otherwise), commutation
// of the two sides, and range validation of every applied action. The mode
// is recorded so reports stay honest about coverage.
inline AuditReport audit_prof(const Profunctor& p, long long budget = 20000000) {
  AuditReport r;
  const Category& dom = *p.dom();
  const Category& cod = *p.cod();
  detail::ActiveCells cells = detail::scan_cells(p);

  auto fail = [&r](std::string msg) {
    r.ok = false;
    if (r.detail.empty()) r.detail = std::move(msg);
  };

  // Every lact lands inside the advertised target cell, or the audit fails.
  auto apply_lact = [&](const MorRef& g, int a, int e) {
    int v = p.lact(g, a, e);
    if (v < 0 || v >= p.cell_size(g.src, a)) {
      fail("codomain action of " + cod.mor_label(g) + " escapes cell (" + cod.object_label(g.src) +
           ", " + dom.object_label(a) + ")");
      return -1;
    }
    return v;
  };
  auto apply_ract = [&](const MorRef& f, int c, int e) {
    int v = p.ract(f, c, e);
    if (v < 0 || v >= p.cell_size(c, f.dst)) {
      fail("domain action of " + dom.mor_label(f) + " escapes cell (" + cod.object_label(c) + ", " +
           dom.object_label(f.dst) + ")");
      return -1;
    }
    return v;
  };

  // Identity actions fix every element.
  for (const auto& [a, sup] : cells.by_dom) {
    MorRef ida = dom.identity(a);
    for (int c : sup) {
      MorRef idc = cod.identity(c);
      int n = p.cell_size(c, a);
      for (int e = 0; e < n; ++e) {
        r.checks += 2;
        if (p.lact(idc, a, e) != e || p.ract(ida, c, e) != e) {
          fail("an identity action moves element " + std::to_string(e) + " of cell (" +
               cod.object_label(c) + ", " + dom.object_label(a) + ")");
          return r;
        }
      }
    }
  }

  // Estimate the exhaustive tier: composable pairs whose action path starts
  // at an inhabited cell, times the elements they touch.
  long long cod_pairs = 0, dom_pairs = 0;
  {
    const int cn = cod.object_count();
    for (int z : cells.active_cod)
      for (int y = 0; y < cn; ++y) {
        long long hyz = cod.hom_size(y, z);
        if (!hyz) continue;
        for (int x = 0; x < cn; ++x) cod_pairs += hyz * cod.hom_size(x, y);
      }
    const int dn = dom.object_count();
    for (const auto& [x, sup] : cells.by_dom)
      for (int y = 0; y < dn; ++y) {
        long long hxy = dom.hom_size(x, y);
        if (!hxy) continue;
        for (int z = 0; z < dn; ++z) dom_pairs += hxy * dom.hom_size(y, z);
      }
  }
  long long avg = cells.by_dom.empty() ? 1 : std::max<long long>(1, cells.elements / (long long)cells.by_dom.size());
  bool full = (cod_pairs + dom_pairs) * avg <= budget;
  r.mode = full ? "full" : "generators";

  // g2: c'' -> c', g1: c' -> c. lact of the composite g1 . g2 agrees with
  // lact(g1) followed by lact(g2) on every inhabited cell at c.
  auto check_lact_pair = [&](const MorRef& g1, const MorRef& g2) {
    MorRef m = cod.compose(g1, g2);
    for (const auto& [a, sup] : cells.by_dom) {
      if (!std::binary_search(sup.begin(), sup.end(), g1.dst)) continue;
      int n = p.cell_size(g1.dst, a);
      for (int e = 0; e < n; ++e) {
        ++r.checks;
        int step = apply_lact(g1, a, e);
        if (step < 0) return false;
        int two = apply_lact(g2, a, step);
        if (two < 0) return false;
        if (apply_lact(m, a, e) != two) {
          fail("codomain actions break down on the pair (" + cod.mor_label(g1) + ", " +
               cod.mor_label(g2) + ") at domain object " + dom.object_label(a));
          return false;
        }
      }
    }
    return true;
  };

  // f1: a -> a', f2: a' -> a''.
  auto check_ract_pair = [&](const MorRef& f1, const MorRef& f2) {
    MorRef m = dom.compose(f2, f1);
    for (const auto& [a, sup] : cells.by_dom) {
      if (a != f1.src) continue;
      for (int c : sup) {
        int n = p.cell_size(c, a);
        for (int e = 0; e < n; ++e) {
          ++r.checks;
          int step = apply_ract(f1, c, e);
          if (step < 0) return false;
          int two = apply_ract(f2, c, step);
          if (two < 0) return false;
          if (apply_ract(m, c, e) != two) {
            fail("domain actions break down on the pair (" + dom.mor_label(f2) + ", " +
                 dom.mor_label(f1) + ") at codomain object " + cod.object_label(c));
            return false;
          }
        }
      }
    }
    return true;
  };

  if (full) {
    const int cn = cod.object_count();
    for (int z : cells.active_cod)
      for (int y = 0; y < cn; ++y)
        for (int j = 0; j < cod.hom_size(y, z); ++j)
          for (int x = 0; x < cn; ++x)
            for (int i = 0; i < cod.hom_size(x, y); ++i)
              if (!check_lact_pair(MorRef{y, z, j}, MorRef{x, y, i})) return r;
    const int dn = dom.object_count();
    for (const auto& [x, sup] : cells.by_dom)
      for (int y = 0; y < dn; ++y)
        for (int i = 0; i < dom.hom_size(x, y); ++i)
          for (int z = 0; z < dn; ++z)
            for (int j = 0; j < dom.hom_size(y, z); ++j)
              if (!check_ract_pair(MorRef{x, y, i}, MorRef{y, z, j})) return r;
  } else {
    // Generator pairs...
    for (const MorRef& g2 : cod.all_generators())
      for (const MorRef& g1 : cod.generators_from(g2.dst))
        if (!check_lact_pair(g1, g2)) return r;
    for (const MorRef& f1 : dom.all_generators())
      for (const MorRef& f2 : dom.generators_from(f1.dst))
        if (!check_ract_pair(f1, f2)) return r;
    // ...then peel every morphism that can act on an inhabited cell into its
    // generator factorization and compare the two applications.
    const int cn = cod.object_count();
    for (int z : cells.active_cod)
      for (int x = 0; x < cn; ++x)
        for (int i = 0; i < cod.hom_size(x, z); ++i) {
          MorRef m{x, z, i};
          auto steps = cod.factor_generators(m);
          for (const auto& [a, sup] : cells.by_dom) {
            if (!std::binary_search(sup.begin(), sup.end(), z)) continue;
            int n = p.cell_size(z, a);
            for (int e = 0; e < n; ++e) {
              ++r.checks;
              int acc = e;
              // m = steps.back() . ... . steps.front(); lact applies the
              // outermost factor first.
              for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                acc = apply_lact(*it, a, acc);
                if (acc < 0) return r;
              }
              if (apply_lact(m, a, e) != acc) {
                fail("codomain action of " + cod.mor_label(m) +
                     " disagrees with its generator factorization at domain object " + dom.object_label(a));
                return r;
              }
            }
          }
        }
    const int dn = dom.object_count();
    for (const auto& [x, sup] : cells.by_dom)
      for (int y = 0; y < dn; ++y)
        for (int i = 0; i < dom.hom_size(x, y); ++i) {
          MorRef m{x, y, i};
          auto steps = dom.factor_generators(m);
          for (int c : sup) {
            int n = p.cell_size(c, x);
            for (int e = 0; e < n; ++e) {
              ++r.checks;
              int acc = e;
              for (const MorRef& s : steps) {
                acc = apply_ract(s, c, acc);
                if (acc < 0) return r;
              }
              if (apply_ract(m, c, e) != acc) {
                fail("domain action of " + dom.mor_label(m) +
                     " disagrees with its generator factorization at codomain object " + cod.object_label(c));
                return r;
              }
            }
          }
        }
  }

  // The two sides commute: for g: c' -> c and f: a -> a', both orders agree
  // as maps cell(c, a) -> cell(c', a').
  for (const MorRef& g : cod.all_generators())
    for (const auto& [a, sup] : cells.by_dom) {
      if (!std::binary_search(sup.begin(), sup.end(), g.dst)) continue;
      for (const MorRef& f : dom.generators_from(a)) {
        int n = p.cell_size(g.dst, a);
        for (int e = 0; e < n; ++e) {
          ++r.checks;
          int left = apply_lact(g, a, e);
          if (left < 0) return r;
          left = apply_ract(f, g.src, left);
          if (left < 0) return r;
          int right = apply_ract(f, g.dst, e);
          if (right < 0) return r;
          right = apply_lact(g, f.dst, right);
          if (right < 0) return r;
          if (left != right) {
            fail("the two actions fail to commute on (" + cod.mor_label(g) + ", " + dom.mor_label(f) + ")");
            return r;
          }
        }
      }
    }

  return r;
}

}  // namespace coend
