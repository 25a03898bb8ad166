#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "coend/fincat.hpp"
#include "coend/util.hpp"

namespace coend {

// A morphism is addressed by (source object, target object, position within
// the deterministic enumeration of that hom-set). Virtual categories never
// enumerate morphisms globally, so this is the uniform currency.
struct MorRef {
  int src = 0;
  int dst = 0;
  int idx = 0;

  friend bool operator==(const MorRef& a, const MorRef& b) {
    return a.src == b.src && a.dst == b.dst && a.idx == b.idx;
  }
  friend bool operator!=(const MorRef& a, const MorRef& b) { return !(a == b); }
  friend bool operator<(const MorRef& a, const MorRef& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.idx < b.idx;
  }
};

// Uniform interface over finite (possibly window-truncated virtual)
// categories. Object indices are dense 0..object_count()-1 and the
// enumeration order is deterministic for a given key().
class Category {
public:
  virtual ~Category() = default;

  // Structural identity: two handles with equal keys present identical
  // windows and may be used interchangeably.
  virtual const std::string& key() const = 0;
  virtual int object_count() const = 0;
  virtual std::string object_label(int o) const = 0;
  // Flattened size used by window arithmetic: 1 at base objects, sum of
  // entry weights for sequence objects. Pair objects take the larger
  // component, so a pair occupies one slot per side of a sequence.
  virtual int weight(int o) const = 0;
  virtual int hom_size(int x, int y) const = 0;
  virtual MorRef identity(int x) const = 0;
  virtual MorRef compose(const MorRef& g, const MorRef& f) const = 0;  // g after f
  virtual std::string mor_label(const MorRef& m) const = 0;
  // Generating set with src = o: every morphism is a composite of
  // generators (identities excluded).
  virtual std::vector<MorRef> generators_from(int o) const = 0;
  // Express m as gk . ... . g1 with each gi a generator (empty for
  // identities). Default: m is declared a generator itself.
  virtual std::vector<MorRef> factor_generators(const MorRef& m) const {
    if (m == identity(m.src)) return {};
    return {m};
  }

  bool is_identity(const MorRef& m) const { return m == identity(m.src); }

  std::vector<MorRef> all_generators() const {
    std::vector<MorRef> out;
    for (int o = 0; o < object_count(); ++o) {
      auto g = generators_from(o);
      out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }
};

using CatPtr = std::shared_ptr<const Category>;

// ---------------------------------------------------------------------------
// Table-backed view.

class FinCatView final : public Category {
public:
  explicit FinCatView(FinCatPtr c) : fin_(std::move(c)) {
    key_ = fin_->key();
    const int n = fin_->object_count();
    hom_.resize(static_cast<std::size_t>(n) * n);
    pos_of_.assign(fin_->mor_count(), -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        auto& cell = hom_[static_cast<std::size_t>(x) * n + y];
        cell = fin_->hom(x, y);
        for (int i = 0; i < static_cast<int>(cell.size()); ++i) pos_of_[cell[i]] = i;
      }
  }

  const FinCat& fin() const { return *fin_; }
  const FinCatPtr& fin_ptr() const { return fin_; }
  const std::string& key() const override { return key_; }
  int object_count() const override { return fin_->object_count(); }
  std::string object_label(int o) const override { return fin_->object_label(o); }
  int weight(int) const override { return 1; }

  int hom_size(int x, int y) const override { return static_cast<int>(homset(x, y).size()); }

  MorRef identity(int x) const override {
    return {x, x, pos_of_[fin_->identity(x)]};
  }

  MorRef compose(const MorRef& g, const MorRef& f) const override {
    int r = fin_->compose(global(g), global(f));
    return {f.src, g.dst, pos_of_[r]};
  }

  std::string mor_label(const MorRef& m) const override { return fin_->mor(global(m)).label; }

  std::vector<MorRef> generators_from(int o) const override {
    std::vector<MorRef> out;
    for (int y = 0; y < object_count(); ++y) {
      const auto& cell = homset(o, y);
      for (int i = 0; i < static_cast<int>(cell.size()); ++i)
        if (!fin_->is_identity(cell[i])) out.push_back({o, y, i});
    }
    return out;
  }

  int global(const MorRef& m) const { return homset(m.src, m.dst)[m.idx]; }
  MorRef from_global(int m) const {
    return {fin_->mor(m).src, fin_->mor(m).dst, pos_of_[m]};
  }

private:
  const std::vector<int>& homset(int x, int y) const {
    return hom_[static_cast<std::size_t>(x) * fin_->object_count() + y];
  }

  FinCatPtr fin_;
  std::string key_;
  std::vector<std::vector<int>> hom_;
  std::vector<int> pos_of_;
};

// ---------------------------------------------------------------------------
// Opposite view. Objects coincide; hom(x,y) enumerates inner hom(y,x) with
// the same positions.

class OppositeCategory final : public Category {
public:
  explicit OppositeCategory(CatPtr inner) : inner_(std::move(inner)) {
    key_ = "op(" + inner_->key() + ")";
  }

  const CatPtr& inner() const { return inner_; }
  const std::string& key() const override { return key_; }
  int object_count() const override { return inner_->object_count(); }
  std::string object_label(int o) const override { return inner_->object_label(o); }
  int weight(int o) const override { return inner_->weight(o); }
  int hom_size(int x, int y) const override { return inner_->hom_size(y, x); }

  MorRef identity(int x) const override { return flip(inner_->identity(x)); }

  MorRef compose(const MorRef& g, const MorRef& f) const override {
    // (g.f)~ = f~ . g~ in the inner category.
    return flip(inner_->compose(flip(f), flip(g)));
  }

  std::string mor_label(const MorRef& m) const override { return inner_->mor_label(flip(m)) + "~"; }

  std::vector<MorRef> generators_from(int o) const override {
    // Generators with inner dst = o.
    std::vector<MorRef> out;
    for (int x = 0; x < object_count(); ++x)
      for (const MorRef& g : inner_->generators_from(x))
        if (g.dst == o) out.push_back(flip(g));
    return out;
  }

  std::vector<MorRef> factor_generators(const MorRef& m) const override {
    auto fs = inner_->factor_generators(flip(m));
    std::vector<MorRef> out;
    for (auto it = fs.begin(); it != fs.end(); ++it) out.push_back(flip(*it));
    // Inner list is application order g1..gk of m~ = gk...g1; reversed and
    // flipped it is application order for m.
    std::reverse(out.begin(), out.end());
    return out;
  }

  static MorRef flip(const MorRef& m) { return {m.dst, m.src, m.idx}; }

private:
  CatPtr inner_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Binary product view. Object (x,y) -> x*right.count+y; hom element
// (i,j) -> i*right_hom+j.

class ProductCategory final : public Category {
public:
  ProductCategory(CatPtr l, CatPtr r) : l_(std::move(l)), r_(std::move(r)) {
    key_ = "prod(" + l_->key() + "," + r_->key() + ")";
  }

  const CatPtr& left() const { return l_; }
  const CatPtr& right() const { return r_; }

  int ob_pair(int x, int y) const { return x * r_->object_count() + y; }
  std::pair<int, int> ob_split(int o) const {
    return {o / r_->object_count(), o % r_->object_count()};
  }

  MorRef mor_pair(const MorRef& f, const MorRef& g) const {
    int h2 = r_->hom_size(g.src, g.dst);
    return {ob_pair(f.src, g.src), ob_pair(f.dst, g.dst), f.idx * h2 + g.idx};
  }
  std::pair<MorRef, MorRef> mor_split(const MorRef& m) const {
    auto [xs, ys] = ob_split(m.src);
    auto [xd, yd] = ob_split(m.dst);
    int h2 = r_->hom_size(ys, yd);
    return {MorRef{xs, xd, m.idx / h2}, MorRef{ys, yd, m.idx % h2}};
  }

  const std::string& key() const override { return key_; }
  int object_count() const override { return l_->object_count() * r_->object_count(); }

  std::string object_label(int o) const override {
    auto [x, y] = ob_split(o);
    return "(" + l_->object_label(x) + "," + r_->object_label(y) + ")";
  }

  int weight(int o) const override {
    // A pair occupies one slot of a sequence, so its budget cost is the
    // larger component, not the sum: sequences of pairs of table objects
    // then cost 1 per entry, while pairs of sequences still cost enough to
    // keep every inhabited cell of composite constructions inside the
    // window. Morphisms exist only between componentwise weight-equal
    // objects, so the value is morphism-invariant.
    auto [x, y] = ob_split(o);
    return std::max(l_->weight(x), r_->weight(y));
  }

  int hom_size(int x, int y) const override {
    auto [xs, ys] = ob_split(x);
    auto [xd, yd] = ob_split(y);
    return l_->hom_size(xs, xd) * r_->hom_size(ys, yd);
  }

  MorRef identity(int x) const override {
    auto [a, b] = ob_split(x);
    return mor_pair(l_->identity(a), r_->identity(b));
  }

  MorRef compose(const MorRef& g, const MorRef& f) const override {
    auto [g1, g2] = mor_split(g);
    auto [f1, f2] = mor_split(f);
    return mor_pair(l_->compose(g1, f1), r_->compose(g2, f2));
  }

  std::string mor_label(const MorRef& m) const override {
    auto [f, g] = mor_split(m);
    return "(" + l_->mor_label(f) + "," + r_->mor_label(g) + ")";
  }

  std::vector<MorRef> generators_from(int o) const override {
    auto [x, y] = ob_split(o);
    std::vector<MorRef> out;
    for (const MorRef& g : l_->generators_from(x)) out.push_back(mor_pair(g, r_->identity(y)));
    for (const MorRef& g : r_->generators_from(y)) out.push_back(mor_pair(l_->identity(x), g));
    return out;
  }

  std::vector<MorRef> factor_generators(const MorRef& m) const override {
    auto [f, g] = mor_split(m);
    std::vector<MorRef> out;
    // (f,g) = (f,id) . (id,g); each leg factored in its component.
    for (const MorRef& s : r_->factor_generators(g)) out.push_back(mor_pair(l_->identity(f.src), s));
    for (const MorRef& s : l_->factor_generators(f)) out.push_back(mor_pair(s, r_->identity(g.dst)));
    return out;
  }

private:
  CatPtr l_, r_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Full subcategory on an explicit object subset. Hom-sets are inherited, so
// morphism indices pass through unchanged and only endpoints translate. The
// subset must be closed under the ambient generators (weight-level windows
// are, since every action preserves weight); closure is checked on build.

class FullSubcategory final : public Category {
public:
  FullSubcategory(CatPtr inner, std::vector<int> objects)
      : inner_(std::move(inner)), objs_(std::move(objects)) {
    pos_.assign(inner_->object_count(), -1);
    std::string ix;
    for (int i = 0; i < static_cast<int>(objs_.size()); ++i) {
      if (objs_[i] < 0 || objs_[i] >= inner_->object_count())
        throw ValidationError("subcategory object out of range");
      if (pos_[objs_[i]] != -1) throw ValidationError("subcategory object repeated");
      pos_[objs_[i]] = i;
      ix += (i ? "," : "") + std::to_string(objs_[i]);
    }
    for (int o : objs_)
      for (const MorRef& g : inner_->generators_from(o))
        if (pos_[g.dst] < 0)
          throw ValidationError("subcategory is not closed under the ambient generators");
    key_ = "sub[" + inner_->key() + ";" + ix + "]";
  }

  const CatPtr& inner() const { return inner_; }
  int inner_object(int o) const { return objs_[o]; }
  MorRef to_inner(const MorRef& m) const { return {objs_[m.src], objs_[m.dst], m.idx}; }
  MorRef from_inner(const MorRef& m) const { return {pos_[m.src], pos_[m.dst], m.idx}; }

  const std::string& key() const override { return key_; }
  int object_count() const override { return static_cast<int>(objs_.size()); }
  std::string object_label(int o) const override { return inner_->object_label(objs_[o]); }
  int weight(int o) const override { return inner_->weight(objs_[o]); }
  int hom_size(int x, int y) const override { return inner_->hom_size(objs_[x], objs_[y]); }

  MorRef identity(int x) const override { return from_inner(inner_->identity(objs_[x])); }

  MorRef compose(const MorRef& g, const MorRef& f) const override {
    return from_inner(inner_->compose(to_inner(g), to_inner(f)));
  }

  std::string mor_label(const MorRef& m) const override { return inner_->mor_label(to_inner(m)); }

  std::vector<MorRef> generators_from(int o) const override {
    std::vector<MorRef> out;
    for (const MorRef& g : inner_->generators_from(objs_[o])) out.push_back(from_inner(g));
    return out;
  }

  std::vector<MorRef> factor_generators(const MorRef& m) const override {
    std::vector<MorRef> out;
    for (const MorRef& g : inner_->factor_generators(to_inner(m))) {
      if (pos_[g.src] < 0 || pos_[g.dst] < 0)
        throw ValidationError("subcategory factorization leaves the subset");
      out.push_back(from_inner(g));
    }
    return out;
  }

private:
  CatPtr inner_;
  std::vector<int> objs_;
  std::vector<int> pos_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// Handle factories (with op(op(X)) = X normalization).

inline CatPtr view(FinCatPtr c) { return std::make_shared<FinCatView>(std::move(c)); }

inline CatPtr opposite_of(CatPtr c) {
  if (auto op = std::dynamic_pointer_cast<const OppositeCategory>(c)) return op->inner();
  return std::make_shared<OppositeCategory>(std::move(c));
}

inline std::shared_ptr<const ProductCategory> product_of(CatPtr a, CatPtr b) {
  return std::make_shared<ProductCategory>(std::move(a), std::move(b));
}

inline CatPtr one_cat() {
  static CatPtr c = view(fincats::one());
  return c;
}

inline std::shared_ptr<const FullSubcategory> restrict_window(CatPtr inner, std::vector<int> objects) {
  return std::make_shared<FullSubcategory>(std::move(inner), std::move(objects));
}

// ---------------------------------------------------------------------------
// Functor between category handles.

struct CatFunctor {
  CatPtr dom, cod;
  std::function<int(int)> ob;
  std::function<MorRef(const MorRef&)> mor;
  std::string desc;
  // Window-partial functors (images can fall outside a truncated codomain)
  // provide try_ob returning -1 there; ob may throw on those inputs. All
  // morphism images are safe whenever both endpoint images exist.
  std::function<int(int)> try_ob;

  int image_or_none(int o) const { return try_ob ? try_ob(o) : ob(o); }
};

inline CatFunctor const_functor(CatPtr dom, CatPtr cod, int target) {
  MorRef e = cod->identity(target);
  return {std::move(dom), std::move(cod),
          [target](int) { return target; },
          [e](const MorRef&) { return e; },
          "const" + std::to_string(target)};
}

inline CatFunctor identity_functor(CatPtr a) {
  return {a, a, [](int o) { return o; }, [](const MorRef& m) { return m; }, "id"};
}

inline CatFunctor inclusion_functor(const std::shared_ptr<const FullSubcategory>& s) {
  return {s, s->inner(),
          [s](int o) { return s->inner_object(o); },
          [s](const MorRef& m) { return s->to_inner(m); },
          "incl"};
}

inline CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
  if (f.cod->key() != g.dom->key()) throw Error("functor composition: middle categories differ");
  auto gob = g.ob; auto fob = f.ob; auto gmor = g.mor; auto fmor = f.mor;
  CatFunctor out{f.dom, g.cod,
                 [gob, fob](int o) { return gob(fob(o)); },
                 [gmor, fmor](const MorRef& m) { return gmor(fmor(m)); },
                 g.desc + "." + f.desc};
  if (f.try_ob || g.try_ob) {
    auto ft = f.try_ob; auto gt = g.try_ob;
    out.try_ob = [ft, gt, fob, gob](int o) {
      int m = ft ? ft(o) : fob(o);
      if (m < 0) return -1;
      return gt ? gt(m) : gob(m);
    };
  }
  return out;
}

// Componentwise pair of functors between the given product windows.
inline CatFunctor prod_functor(const std::shared_ptr<const ProductCategory>& p,
                               const std::shared_ptr<const ProductCategory>& q,
                               const CatFunctor& f, const CatFunctor& g) {
  if (f.dom->key() != p->left()->key() || g.dom->key() != p->right()->key() ||
      f.cod->key() != q->left()->key() || g.cod->key() != q->right()->key())
    throw Error("functor pair: factor mismatch");
  auto fo = f.ob; auto go = g.ob; auto fm = f.mor; auto gm = g.mor;
  CatFunctor out{p, q,
                 [p, q, fo, go](int o) {
                   auto [x, y] = p->ob_split(o);
                   return q->ob_pair(fo(x), go(y));
                 },
                 [p, q, fm, gm](const MorRef& m) {
                   auto [m1, m2] = p->mor_split(m);
                   return q->mor_pair(fm(m1), gm(m2));
                 },
                 "(" + f.desc + "x" + g.desc + ")"};
  if (f.try_ob || g.try_ob) {
    auto ft = f.try_ob; auto gt = g.try_ob;
    out.try_ob = [p, q, fo, go, ft, gt](int o) {
      auto [x, y] = p->ob_split(o);
      int fx = ft ? ft(x) : fo(x);
      if (fx < 0) return -1;
      int gy = gt ? gt(y) : go(y);
      if (gy < 0) return -1;
      return q->ob_pair(fx, gy);
    };
  }
  return out;
}

inline CatFunctor proj1_functor(const std::shared_ptr<const ProductCategory>& p) {
  return {p, p->left(),
          [p](int o) { return p->ob_split(o).first; },
          [p](const MorRef& m) { return p->mor_split(m).first; },
          "pr1"};
}

inline CatFunctor proj2_functor(const std::shared_ptr<const ProductCategory>& p) {
  return {p, p->right(),
          [p](int o) { return p->ob_split(o).second; },
          [p](const MorRef& m) { return p->mor_split(m).second; },
          "pr2"};
}

inline CatFunctor pair_functor(const std::shared_ptr<const ProductCategory>& p,
                               const CatFunctor& f, const CatFunctor& g) {
  if (f.dom->key() != g.dom->key()) throw Error("pair functor: domains differ");
  if (f.cod->key() != p->left()->key() || g.cod->key() != p->right()->key())
    throw Error("pair functor: codomain mismatch");
  auto fo = f.ob; auto go = g.ob; auto fm = f.mor; auto gm = g.mor;
  return {f.dom, p,
          [p, fo, go](int o) { return p->ob_pair(fo(o), go(o)); },
          [p, fm, gm](const MorRef& m) { return p->mor_pair(fm(m), gm(m)); },
          "<" + f.desc + "," + g.desc + ">"};
}

inline CatFunctor swap_functor(const std::shared_ptr<const ProductCategory>& ab,
                               const std::shared_ptr<const ProductCategory>& ba) {
  if (ab->left()->key() != ba->right()->key() || ab->right()->key() != ba->left()->key())
    throw Error("swap functor: factor mismatch");
  return {ab, ba,
          [ab, ba](int o) { auto [x, y] = ab->ob_split(o); return ba->ob_pair(y, x); },
          [ab, ba](const MorRef& m) { auto [f, g] = ab->mor_split(m); return ba->mor_pair(g, f); },
          "swap"};
}

// 1 x A -> A and A x 1 -> A eliminations (with their inverses).
inline CatFunctor lunit_functor(const std::shared_ptr<const ProductCategory>& p) {
  if (p->left()->object_count() != 1) throw Error("lunit functor: left factor is not the unit");
  return {p, p->right(),
          [p](int o) { return p->ob_split(o).second; },
          [p](const MorRef& m) { return p->mor_split(m).second; },
          "lunit"};
}

inline CatFunctor lunit_inv_functor(const std::shared_ptr<const ProductCategory>& p) {
  if (p->left()->object_count() != 1) throw Error("lunit functor: left factor is not the unit");
  CatPtr l = p->left();
  return {p->right(), p,
          [p](int o) { return p->ob_pair(0, o); },
          [p, l](const MorRef& m) { return p->mor_pair(l->identity(0), m); },
          "lunit_inv"};
}

inline CatFunctor runit_functor(const std::shared_ptr<const ProductCategory>& p) {
  if (p->right()->object_count() != 1) throw Error("runit functor: right factor is not the unit");
  return {p, p->left(),
          [p](int o) { return p->ob_split(o).first; },
          [p](const MorRef& m) { return p->mor_split(m).first; },
          "runit"};
}

inline CatFunctor runit_inv_functor(const std::shared_ptr<const ProductCategory>& p) {
  if (p->right()->object_count() != 1) throw Error("runit functor: right factor is not the unit");
  CatPtr r = p->right();
  return {p->left(), p,
          [p](int o) { return p->ob_pair(o, 0); },
          [p, r](const MorRef& m) { return p->mor_pair(m, r->identity(0)); },
          "runit_inv"};
}

// (A x B) x C -> A x (B x C).
inline CatFunctor assoc_functor(const std::shared_ptr<const ProductCategory>& ab_c,
                                const std::shared_ptr<const ProductCategory>& a_bc) {
  auto ab = std::dynamic_pointer_cast<const ProductCategory>(ab_c->left());
  auto bc = std::dynamic_pointer_cast<const ProductCategory>(a_bc->right());
  if (!ab || !bc) throw Error("assoc functor: operands are not nested products");
  return {ab_c, a_bc,
          [ab_c, a_bc, ab, bc](int o) {
            auto [xy, z] = ab_c->ob_split(o);
            auto [x, y] = ab->ob_split(xy);
            return a_bc->ob_pair(x, bc->ob_pair(y, z));
          },
          [ab_c, a_bc, ab, bc](const MorRef& m) {
            auto [fg, h] = ab_c->mor_split(m);
            auto [f, g] = ab->mor_split(fg);
            return a_bc->mor_pair(f, bc->mor_pair(g, h));
          },
          "assoc"};
}

// Lift a table functor to the view level.
inline CatFunctor lift(const FinFunctor& f) {
  f.validate();
  auto dv = std::make_shared<FinCatView>(f.dom);
  auto cv = std::make_shared<FinCatView>(f.cod);
  std::vector<int> obmap = f.ob, mormap = f.mor;
  return {dv, cv,
          [obmap](int o) { return obmap[o]; },
          [dv, cv, mormap](const MorRef& m) { return cv->from_global(mormap[dv->global(m)]); },
          "tablefun"};
}

// Exhaustive functor-law audit over the (small) domain window.
inline void validate_functor(const CatFunctor& f) {
  const Category& d = *f.dom;
  const Category& c = *f.cod;
  for (int o = 0; o < d.object_count(); ++o) {
    int fo = f.ob(o);
    if (fo < 0 || fo >= c.object_count()) throw ValidationError("functor object image out of range");
    if (f.mor(d.identity(o)) != c.identity(fo)) throw ValidationError("functor breaks identity at " + d.object_label(o));
  }
  for (int x = 0; x < d.object_count(); ++x)
    for (int y = 0; y < d.object_count(); ++y)
      for (int i = 0; i < d.hom_size(x, y); ++i) {
        MorRef m{x, y, i};
        MorRef fm = f.mor(m);
        if (fm.src != f.ob(x) || fm.dst != f.ob(y)) throw ValidationError("functor breaks endpoints at " + d.mor_label(m));
        for (int z = 0; z < d.object_count(); ++z)
          for (int j = 0; j < d.hom_size(y, z); ++j) {
            MorRef g{y, z, j};
            if (f.mor(d.compose(g, m)) != c.compose(f.mor(g), fm))
              throw ValidationError("functor breaks composition at (" + d.mor_label(g) + ", " + d.mor_label(m) + ")");
          }
      }
}

}  // namespace coend
