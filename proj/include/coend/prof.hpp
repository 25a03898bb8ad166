#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "coend/bang.hpp"
#include "coend/category.hpp"
#include "coend/util.hpp"

namespace coend {

// A profunctor F from A to B assigns a finite set to every pair of a codomain
// object and a domain object, contravariant on the codomain side and
// covariant on the domain side. Cells are integer ranges 0..cell_size-1 with
// deterministic enumeration; actions are total functions between cells.
class Profunctor {
public:
  virtual ~Profunctor() = default;

  const CatPtr& dom() const { return dom_; }
  const CatPtr& cod() const { return cod_; }

  virtual const std::string& key() const = 0;
  // c indexes an object of cod, a an object of dom.
  virtual int cell_size(int c, int a) const = 0;
  virtual bool cell_nonzero(int c, int a) const { return cell_size(c, a) > 0; }
  // g: c' -> c in cod maps cell(c, a) -> cell(c', a).
  virtual int lact(const MorRef& g, int a, int e) const = 0;
  // f: a -> a' in dom maps cell(c, a) -> cell(c, a').
  virtual int ract(const MorRef& f, int c, int e) const = 0;

  // Domain objects with a nonzero cell against the fixed codomain object.
  const std::vector<int>& dom_support(int c) const {
    return support(dom_sup_, c, [this, c](int a) { return cell_nonzero(c, a); }, *dom_);
  }

  // Codomain objects with a nonzero cell against the fixed domain object.
  const std::vector<int>& cod_support(int a) const {
    return support(cod_sup_, a, [this, a](int c) { return cell_nonzero(c, a); }, *cod_);
  }

protected:
  Profunctor(CatPtr dom, CatPtr cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}

  CatPtr dom_, cod_;

private:
  template <typename Pred>
  const std::vector<int>& support(std::map<int, std::vector<int>>& memo, int fixed, Pred pred,
                                  const Category& scan) const {
    {
      std::lock_guard<std::mutex> lock(sup_mu_);
      auto it = memo.find(fixed);
      if (it != memo.end()) return it->second;
    }
    std::vector<int> out;
    for (int o = 0; o < scan.object_count(); ++o)
      if (pred(o)) out.push_back(o);
    std::lock_guard<std::mutex> lock(sup_mu_);
    return memo.try_emplace(fixed, std::move(out)).first->second;
  }

  mutable std::mutex sup_mu_;
  mutable std::map<int, std::vector<int>> dom_sup_, cod_sup_;
};

using ProfPtr = std::shared_ptr<const Profunctor>;

inline void require_same_window(const CatPtr& a, const CatPtr& b, const char* what) {
  if (a->key() != b->key())
    throw Error(std::string(what) + ": window mismatch between " + a->key() + " and " + b->key());
}

// ---------------------------------------------------------------------------
// Hom formula with two functor legs: cell(c, a) = X[u(c), s(a)], elements the
// hom positions, the codomain acting by precomposition through u and the
// domain by postcomposition through s. Covers the representable maps:
// companions, conjoints, and the sequence algebra built from window functors.

class LegHomProf final : public Profunctor {
public:
  LegHomProf(CatPtr dom, CatPtr cod, CatPtr x, CatFunctor u, CatFunctor s, const std::string& name)
      : Profunctor(std::move(dom), std::move(cod)), x_(std::move(x)), u_(std::move(u)), s_(std::move(s)) {
    require_same_window(u_.dom, cod_, "hom formula contravariant leg");
    require_same_window(u_.cod, x_, "hom formula contravariant leg");
    require_same_window(s_.dom, dom_, "hom formula covariant leg");
    require_same_window(s_.cod, x_, "hom formula covariant leg");
    key_ = name + "[" + u_.desc + ";" + s_.desc + ";" + x_->key() + "]";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    int uc = u_.image_or_none(c);
    if (uc < 0) return 0;
    int sa = s_.image_or_none(a);
    if (sa < 0) return 0;
    return x_->hom_size(uc, sa);
  }

  int lact(const MorRef& g, int a, int e) const override {
    MorRef h{u_.ob(g.dst), s_.ob(a), e};
    return x_->compose(h, u_.mor(g)).idx;
  }

  int ract(const MorRef& f, int c, int e) const override {
    MorRef h{u_.ob(c), s_.ob(f.src), e};
    return x_->compose(s_.mor(f), h).idx;
  }

private:
  CatPtr x_;
  CatFunctor u_, s_;
  std::string key_;
};

inline ProfPtr companion(const CatFunctor& f, const std::string& name = "comp") {
  return std::make_shared<LegHomProf>(f.dom, f.cod, f.cod, identity_functor(f.cod), f, name);
}

inline ProfPtr conjoint(const CatFunctor& f, const std::string& name = "conj") {
  return std::make_shared<LegHomProf>(f.cod, f.dom, f.cod, f, identity_functor(f.cod), name);
}

// Identity profunctor: cell(c, a) = A[c, a].
inline ProfPtr hom_prof(const CatPtr& a) { return companion(identity_functor(a), "id"); }

// ---------------------------------------------------------------------------
// Pointwise one-element profunctor (all cells singletons).

class ConstOneProf final : public Profunctor {
public:
  ConstOneProf(CatPtr dom, CatPtr cod) : Profunctor(std::move(dom), std::move(cod)) {
    key_ = "one[" + dom_->key() + ";" + cod_->key() + "]";
  }
  const std::string& key() const override { return key_; }
  int cell_size(int, int) const override { return 1; }
  int lact(const MorRef&, int, int e) const override { return e; }
  int ract(const MorRef&, int, int e) const override { return e; }

private:
  std::string key_;
};

// Empty profunctor.
class ZeroProf final : public Profunctor {
public:
  ZeroProf(CatPtr dom, CatPtr cod) : Profunctor(std::move(dom), std::move(cod)) {
    key_ = "zero[" + dom_->key() + ";" + cod_->key() + "]";
  }
  const std::string& key() const override { return key_; }
  int cell_size(int, int) const override { return 0; }
  int lact(const MorRef&, int, int) const override { throw Error("action on empty cell"); }
  int ract(const MorRef&, int, int) const override { throw Error("action on empty cell"); }

private:
  std::string key_;
};

// ---------------------------------------------------------------------------
// Rank-one building block: cell(b, a) = B[b, b0] x A[a0, a]. Finite sums of
// these are the generic test profunctors.

class MatrixUnitProf final : public Profunctor {
public:
  MatrixUnitProf(CatPtr dom, CatPtr cod, int a0, int b0)
      : Profunctor(std::move(dom), std::move(cod)), a0_(a0), b0_(b0) {
    key_ = "unit[" + std::to_string(a0) + ";" + std::to_string(b0) + ";" + dom_->key() + ";" + cod_->key() + "]";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    return cod_->hom_size(c, b0_) * dom_->hom_size(a0_, a);
  }

  int lact(const MorRef& g, int a, int e) const override {
    int n2 = dom_->hom_size(a0_, a);
    MorRef h{g.dst, b0_, e / n2};
    return cod_->compose(h, g).idx * n2 + e % n2;
  }

  int ract(const MorRef& f, int c, int e) const override {
    int n2 = dom_->hom_size(a0_, f.src);
    MorRef k{a0_, f.src, e % n2};
    return (e / n2) * dom_->hom_size(a0_, f.dst) + dom_->compose(f, k).idx;
  }

private:
  int a0_, b0_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Juxtaposition: (F (x) G)((c, d), (a, b)) = F(c, a) x G(d, b).

class TensorProf final : public Profunctor {
public:
  TensorProf(ProfPtr f, ProfPtr g)
      : Profunctor(product_of(f->dom(), g->dom()), product_of(f->cod(), g->cod())),
        f_(std::move(f)),
        g_(std::move(g)) {
    dp_ = std::static_pointer_cast<const ProductCategory>(dom_);
    cp_ = std::static_pointer_cast<const ProductCategory>(cod_);
    key_ = "(" + f_->key() + ")(x)(" + g_->key() + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    auto [c1, c2] = cp_->ob_split(c);
    auto [a1, a2] = dp_->ob_split(a);
    int s1 = f_->cell_size(c1, a1);
    if (s1 == 0) return 0;
    return s1 * g_->cell_size(c2, a2);
  }

  int lact(const MorRef& g, int a, int e) const override {
    auto [g1, g2] = cp_->mor_split(g);
    auto [a1, a2] = dp_->ob_split(a);
    int s2 = g_->cell_size(cp_->ob_split(g.dst).second, a2);
    int e1 = f_->lact(g1, a1, e / s2);
    int e2 = g_->lact(g2, a2, e % s2);
    return e1 * g_->cell_size(cp_->ob_split(g.src).second, a2) + e2;
  }

  int ract(const MorRef& f, int c, int e) const override {
    auto [f1, f2] = dp_->mor_split(f);
    auto [c1, c2] = cp_->ob_split(c);
    int s2 = g_->cell_size(c2, dp_->ob_split(f.src).second);
    int e1 = f_->ract(f1, c1, e / s2);
    int e2 = g_->ract(f2, c2, e % s2);
    return e1 * g_->cell_size(c2, dp_->ob_split(f.dst).second) + e2;
  }

  const ProfPtr& left() const { return f_; }
  const ProfPtr& right() const { return g_; }

private:
  ProfPtr f_, g_;
  std::shared_ptr<const ProductCategory> dp_, cp_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Cellwise disjoint union of parallel profunctors (left summand first).

class SumProf final : public Profunctor {
public:
  SumProf(ProfPtr f, ProfPtr g) : Profunctor(f->dom(), f->cod()), f_(std::move(f)), g_(std::move(g)) {
    require_same_window(f_->dom(), g_->dom(), "profunctor sum");
    require_same_window(f_->cod(), g_->cod(), "profunctor sum");
    key_ = "(" + f_->key() + ")+(" + g_->key() + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override { return f_->cell_size(c, a) + g_->cell_size(c, a); }
  bool cell_nonzero(int c, int a) const override {
    return f_->cell_nonzero(c, a) || g_->cell_nonzero(c, a);
  }

  int lact(const MorRef& g, int a, int e) const override {
    int s = f_->cell_size(g.dst, a);
    if (e < s) return f_->lact(g, a, e);
    return f_->cell_size(g.src, a) + g_->lact(g, a, e - s);
  }

  int ract(const MorRef& f, int c, int e) const override {
    int s = f_->cell_size(c, f.src);
    if (e < s) return f_->ract(f, c, e);
    return f_->cell_size(c, f.dst) + g_->ract(f, c, e - s);
  }

  const ProfPtr& left() const { return f_; }
  const ProfPtr& right() const { return g_; }

private:
  ProfPtr f_, g_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Dual: swaps the variances, giving a profunctor from B^op to A^op with the
// same cells.

class DualProf final : public Profunctor {
public:
  explicit DualProf(ProfPtr f)
      : Profunctor(opposite_of(f->cod()), opposite_of(f->dom())), f_(std::move(f)) {
    key_ = "dual(" + f_->key() + ")";
  }

  const std::string& key() const override { return key_; }
  int cell_size(int c, int a) const override { return f_->cell_size(a, c); }
  bool cell_nonzero(int c, int a) const override { return f_->cell_nonzero(a, c); }

  int lact(const MorRef& g, int a, int e) const override {
    // g: c' -> c in A^op is a domain arrow c -> c' of the inner profunctor.
    return f_->ract(OppositeCategory::flip(g), a, e);
  }

  int ract(const MorRef& f, int c, int e) const override {
    return f_->lact(OppositeCategory::flip(f), c, e);
  }

  const ProfPtr& inner() const { return f_; }

private:
  ProfPtr f_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Reindexing along functors on both sides: cell(c', a') = F(q(c'), p(a')).

class TransportProf final : public Profunctor {
public:
  TransportProf(ProfPtr f, CatFunctor p, CatFunctor q)
      : Profunctor(p.dom, q.dom), f_(std::move(f)), p_(std::move(p)), q_(std::move(q)) {
    require_same_window(p_.cod, f_->dom(), "transport domain leg");
    require_same_window(q_.cod, f_->cod(), "transport codomain leg");
    key_ = "move[" + p_.desc + ";" + q_.desc + "](" + f_->key() + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    int qc = q_.image_or_none(c);
    if (qc < 0) return 0;
    int pa = p_.image_or_none(a);
    if (pa < 0) return 0;
    return f_->cell_size(qc, pa);
  }

  int lact(const MorRef& g, int a, int e) const override { return f_->lact(q_.mor(g), p_.ob(a), e); }
  int ract(const MorRef& f, int c, int e) const override { return f_->ract(p_.mor(f), q_.ob(c), e); }

private:
  ProfPtr f_;
  CatFunctor p_, q_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Single redirected action entry on top of an inner profunctor; cells and all
// other action entries pass through. Used to probe check sensitivity.

struct Mutation {
  bool on_lact = true;
  MorRef mor;   // acting morphism
  int other = 0;  // the fixed object of the opposite side
  int elem = 0;   // input element
  int value = 0;  // redirected output element
};

class MutatedProf final : public Profunctor {
public:
  MutatedProf(ProfPtr f, Mutation m) : Profunctor(f->dom(), f->cod()), f_(std::move(f)), m_(m) {
    key_ = "mut(" + f_->key() + ")";
  }

  const std::string& key() const override { return key_; }
  int cell_size(int c, int a) const override { return f_->cell_size(c, a); }
  bool cell_nonzero(int c, int a) const override { return f_->cell_nonzero(c, a); }

  int lact(const MorRef& g, int a, int e) const override {
    if (m_.on_lact && g == m_.mor && a == m_.other && e == m_.elem) return m_.value;
    return f_->lact(g, a, e);
  }

  int ract(const MorRef& f, int c, int e) const override {
    if (!m_.on_lact && f == m_.mor && c == m_.other && e == m_.elem) return m_.value;
    return f_->ract(f, c, e);
  }

  const Mutation& mutation() const { return m_; }

private:
  ProfPtr f_;
  Mutation m_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Composite N after M along the middle category: cells are the quotient of
// the disjoint union over middle objects b of N(c, b) x M(b, a) by the
// zig-zag relations generated by the middle generators. Class representatives
// are the least triples in the (support position, left element, right
// element) order, so enumeration is deterministic.

class ComposeProf final : public Profunctor {
public:
  ComposeProf(ProfPtr n, ProfPtr m) : Profunctor(m->dom(), n->cod()), n_(std::move(n)), m_(std::move(m)) {
    require_same_window(n_->dom(), m_->cod(), "profunctor composition middle");
    mid_ = n_->dom();
    key_ = "(" + n_->key() + ")o(" + m_->key() + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override { return static_cast<int>(data(c, a).reps.size()); }

  bool cell_nonzero(int c, int a) const override {
    const auto& ds = n_->dom_support(c);
    for (int b : ds)
      if (m_->cell_nonzero(b, a)) return true;
    return false;
  }

  int lact(const MorRef& g, int a, int e) const override {
    auto [b, x, y] = rep_triple(g.dst, a, e);
    return class_from_triple(g.src, a, b, n_->lact(g, b, x), y);
  }

  int ract(const MorRef& f, int c, int e) const override {
    auto [b, x, y] = rep_triple(c, f.src, e);
    return class_from_triple(c, f.dst, b, x, m_->ract(f, b, y));
  }

  // Representative triple (middle object, left element, right element).
  std::array<int, 3> rep_triple(int c, int a, int cls) const {
    const Cell& cd = data(c, a);
    return decode(cd, cd.reps[cls]);
  }

  int class_from_triple(int c, int a, int b, int x, int y) const {
    const Cell& cd = data(c, a);
    auto it = std::lower_bound(cd.supp.begin(), cd.supp.end(), b);
    if (it == cd.supp.end() || *it != b) throw Error("composite class lookup off the support");
    int k = static_cast<int>(it - cd.supp.begin());
    return cd.class_of[cd.offset[k] + x * cd.msize[k] + y];
  }

  const std::vector<int>& middle_support(int c, int a) const { return data(c, a).supp; }

  const ProfPtr& first() const { return m_; }
  const ProfPtr& second() const { return n_; }

private:
  struct Cell {
    std::vector<int> supp;      // middle objects, ascending
    std::vector<int> nsize;     // N(c, b) sizes per support entry
    std::vector<int> msize;     // M(b, a) sizes per support entry
    std::vector<int> offset;    // triple index base per support entry
    std::vector<int> class_of;  // triple index -> class
    std::vector<int> reps;      // class -> least triple index
  };

  std::array<int, 3> decode(const Cell& cd, int t) const {
    int k = static_cast<int>(std::upper_bound(cd.offset.begin(), cd.offset.end(), t) - cd.offset.begin()) - 1;
    int local = t - cd.offset[k];
    return {cd.supp[k], local / cd.msize[k], local % cd.msize[k]};
  }

  const Cell& data(int c, int a) const {
    std::int64_t kk = pack2(c, a);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cells_.find(kk);
      if (it != cells_.end()) return *it->second;
    }
    auto cd = std::make_unique<Cell>();
    const auto& ds = n_->dom_support(c);
    for (int b : ds)
      if (m_->cell_nonzero(b, a)) cd->supp.push_back(b);
    int total = 0;
    for (int b : cd->supp) {
      cd->nsize.push_back(n_->cell_size(c, b));
      cd->msize.push_back(m_->cell_size(b, a));
      cd->offset.push_back(total);
      total += cd->nsize.back() * cd->msize.back();
    }
    UnionFind uf(total);
    for (std::size_t k = 0; k < cd->supp.size(); ++k) {
      int b = cd->supp[k];
      for (const MorRef& g : mid_->generators_from(b)) {
        auto it = std::lower_bound(cd->supp.begin(), cd->supp.end(), g.dst);
        if (it == cd->supp.end() || *it != g.dst) continue;
        int k2 = static_cast<int>(it - cd->supp.begin());
        // (b, x, yl) and (b2, xr, y2) name the same class when yl is the
        // pullback of y2 and xr the pushforward of x along g.
        for (int x = 0; x < cd->nsize[k]; ++x) {
          int xr = n_->ract(g, c, x);
          for (int y2 = 0; y2 < cd->msize[k2]; ++y2) {
            int yl = m_->lact(g, a, y2);
            uf.unite(cd->offset[k] + x * cd->msize[k] + yl,
                     cd->offset[k2] + xr * cd->msize[k2] + y2);
          }
        }
      }
    }
    cd->class_of.assign(total, -1);
    for (int t = 0; t < total; ++t)
      if (uf.find(t) == t) {
        cd->class_of[t] = static_cast<int>(cd->reps.size());
        cd->reps.push_back(t);
      }
    for (int t = 0; t < total; ++t) cd->class_of[t] = cd->class_of[uf.find(t)];
    std::lock_guard<std::mutex> lock(mu_);
    return *cells_.try_emplace(kk, std::move(cd)).first->second;
  }

  ProfPtr n_, m_;
  CatPtr mid_;
  std::string key_;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, std::unique_ptr<Cell>> cells_;
};

inline ProfPtr compose_prof(ProfPtr n, ProfPtr m) {
  return std::make_shared<ComposeProf>(std::move(n), std::move(m));
}

inline ProfPtr tensor_prof(ProfPtr f, ProfPtr g) {
  return std::make_shared<TensorProf>(std::move(f), std::move(g));
}

inline ProfPtr sum_prof(ProfPtr f, ProfPtr g) {
  return std::make_shared<SumProf>(std::move(f), std::move(g));
}

inline ProfPtr dual_prof(ProfPtr f) { return std::make_shared<DualProf>(std::move(f)); }

inline ProfPtr zero_prof(CatPtr dom, CatPtr cod) {
  return std::make_shared<ZeroProf>(std::move(dom), std::move(cod));
}

inline ProfPtr transport_prof(ProfPtr f, CatFunctor p, CatFunctor q) {
  return std::make_shared<TransportProf>(std::move(f), std::move(p), std::move(q));
}

// Deterministic pseudo-random profunctor: a sum of rank-one blocks drawn from
// the object sets of the two categories.
inline ProfPtr random_prof(CatPtr dom, CatPtr cod, int blocks, Rng& rng) {
  if (dom->object_count() == 0 || cod->object_count() == 0 || blocks == 0)
    return zero_prof(std::move(dom), std::move(cod));
  ProfPtr acc;
  for (int i = 0; i < blocks; ++i) {
    int a0 = rng.below(dom->object_count());
    int b0 = rng.below(cod->object_count());
    ProfPtr unit = std::make_shared<MatrixUnitProf>(dom, cod, a0, b0);
    acc = acc ? sum_prof(acc, unit) : unit;
  }
  return acc;
}

}  // namespace coend
