#pragma once

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coend/util.hpp"

namespace coend {

struct FinMor {
  int src = 0;
  int dst = 0;
  std::string label;
};

// Finite category given by dense tables. Immutable once built; the builder
// runs the exhaustive structure audit (identities, endpoints, associativity).
class FinCat {
public:
  // comp is dense m*m with comp[g*m + f] = index of g.f (f first), -1 where
  // dst(f) != src(g).
  static FinCat make(std::string name, std::vector<std::string> obj_labels,
                     std::vector<FinMor> mors, std::vector<int> id_of,
                     std::vector<int> comp) {
    FinCat c;
    c.name_ = std::move(name);
    c.obj_labels_ = std::move(obj_labels);
    c.mors_ = std::move(mors);
    c.id_of_ = std::move(id_of);
    c.comp_ = std::move(comp);
    c.validate();
    c.compute_key();
    return c;
  }

  const std::string& name() const { return name_; }
  const std::string& key() const { return key_; }
  int object_count() const { return static_cast<int>(obj_labels_.size()); }
  int mor_count() const { return static_cast<int>(mors_.size()); }
  const std::string& object_label(int o) const { return obj_labels_[o]; }
  const FinMor& mor(int m) const { return mors_[m]; }
  int identity(int o) const { return id_of_[o]; }

  bool is_identity(int m) const { return id_of_[mors_[m].src] == m; }

  // Composite g.f (apply f, then g); requires dst(f) == src(g).
  int compose(int g, int f) const {
    int r = comp_[static_cast<std::size_t>(g) * mors_.size() + f];
    if (r < 0) throw Error("fincat '" + name_ + "': compose undefined for " + mors_[g].label + " after " + mors_[f].label);
    return r;
  }

  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int m = 0; m < mor_count(); ++m)
      if (mors_[m].src == x && mors_[m].dst == y) out.push_back(m);
    return out;
  }

private:
  FinCat() = default;

  void validate() const {
    const int n = object_count(), m = mor_count();
    if (static_cast<int>(id_of_.size()) != n) throw ValidationError("fincat '" + name_ + "': identity table has wrong size");
    if (comp_.size() != static_cast<std::size_t>(m) * m) throw ValidationError("fincat '" + name_ + "': composition table has wrong size");
    for (int o = 0; o < n; ++o) {
      int e = id_of_[o];
      if (e < 0 || e >= m || mors_[e].src != o || mors_[e].dst != o)
        throw ValidationError("fincat '" + name_ + "': identity of object " + obj_labels_[o] + " is not an endomorphism of it");
    }
    for (const FinMor& f : mors_)
      if (f.src < 0 || f.src >= n || f.dst < 0 || f.dst >= n)
        throw ValidationError("fincat '" + name_ + "': morphism " + f.label + " has out-of-range endpoints");
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f) {
        int r = comp_[static_cast<std::size_t>(g) * m + f];
        bool chains = mors_[f].dst == mors_[g].src;
        if (!chains) {
          if (r != -1)
            throw ValidationError("fincat '" + name_ + "': composite defined for non-chaining pair (" + mors_[g].label + ", " + mors_[f].label + ")");
          continue;
        }
        if (r < 0 || r >= m)
          throw ValidationError("fincat '" + name_ + "': missing composite " + mors_[g].label + " after " + mors_[f].label);
        if (mors_[r].src != mors_[f].src || mors_[r].dst != mors_[g].dst)
          throw ValidationError("fincat '" + name_ + "': composite " + mors_[g].label + " after " + mors_[f].label + " has wrong endpoints");
      }
    for (int f = 0; f < m; ++f) {
      if (compose(id_of_[mors_[f].dst], f) != f)
        throw ValidationError("fincat '" + name_ + "': left identity law fails at " + mors_[f].label);
      if (compose(f, id_of_[mors_[f].src]) != f)
        throw ValidationError("fincat '" + name_ + "': right identity law fails at " + mors_[f].label);
    }
    for (int h = 0; h < m; ++h)
      for (int g = 0; g < m; ++g) {
        if (mors_[g].dst != mors_[h].src) continue;
        int hg = compose(h, g);
        for (int f = 0; f < m; ++f) {
          if (mors_[f].dst != mors_[g].src) continue;
          if (compose(hg, f) != compose(h, compose(g, f)))
            throw ValidationError("fincat '" + name_ + "': associativity fails at (" + mors_[h].label + ", " + mors_[g].label + ", " + mors_[f].label + ")");
        }
      }
  }

  void compute_key() {
    // Labels are cosmetic and excluded; the key identifies the tables.
    std::uint64_t h = fnv64(kFnvSeed, static_cast<std::uint64_t>(object_count()));
    h = fnv64(h, static_cast<std::uint64_t>(mor_count()));
    for (const FinMor& f : mors_) {
      h = fnv64(h, static_cast<std::uint64_t>(f.src));
      h = fnv64(h, static_cast<std::uint64_t>(f.dst));
    }
    for (int e : id_of_) h = fnv64(h, static_cast<std::uint64_t>(e));
    for (int r : comp_) h = fnv64(h, static_cast<std::uint64_t>(r + 1));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    key_ = std::string("fin:") + buf;
  }

  std::string name_, key_;
  std::vector<std::string> obj_labels_;
  std::vector<FinMor> mors_;
  std::vector<int> id_of_;
  std::vector<int> comp_;
};

using FinCatPtr = std::shared_ptr<const FinCat>;

namespace fincats {

inline FinCatPtr zero() {
  static FinCatPtr c = std::make_shared<FinCat>(FinCat::make("zero", {}, {}, {}, {}));
  return c;
}

inline FinCatPtr one() {
  static FinCatPtr c = std::make_shared<FinCat>(
      FinCat::make("one", {"*"}, {{0, 0, "id_*"}}, {0}, {0}));
  return c;
}

inline FinCatPtr discrete(int n) {
  std::vector<std::string> obs;
  std::vector<FinMor> mors;
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    std::string l = "x" + std::to_string(i);
    obs.push_back(l);
    mors.push_back({i, i, "id_" + l});
    ids.push_back(i);
  }
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i) * n + i] = i;
  auto c = FinCat::make("discrete" + std::to_string(n), std::move(obs), std::move(mors), std::move(ids), std::move(comp));
  return std::make_shared<FinCat>(std::move(c));
}

// Two objects a, b and one non-identity arrow a -> b.
inline FinCatPtr walking_arrow() {
  static FinCatPtr c = [] {
    std::vector<FinMor> mors = {{0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "f"}};
    std::vector<int> comp = {
        0, -1, -1,   // id_a after {id_a, id_b, f}
        -1, 1, 2,    // id_b after ...
        2, -1, -1};  // f after ...
    return std::make_shared<FinCat>(FinCat::make("arrow", {"a", "b"}, std::move(mors), {0, 1}, std::move(comp)));
  }();
  return c;
}

// One object with an involutive symmetry: the group of order two.
inline FinCatPtr bz2() {
  static FinCatPtr c = [] {
    std::vector<FinMor> mors = {{0, 0, "id"}, {0, 0, "s"}};
    std::vector<int> comp = {0, 1, 1, 0};
    return std::make_shared<FinCat>(FinCat::make("bz2", {"x"}, std::move(mors), {0}, std::move(comp)));
  }();
  return c;
}

inline FinCatPtr by_name(const std::string& name) {
  if (name == "zero") return zero();
  if (name == "one") return one();
  if (name == "discrete2") return discrete(2);
  if (name == "discrete3") return discrete(3);
  if (name == "arrow") return walking_arrow();
  if (name == "bz2") return bz2();
  throw Error("unknown builtin category '" + name + "' (builtins: zero one discrete2 discrete3 arrow bz2)");
}

// The five standard instance categories used throughout the checks.
inline std::vector<FinCatPtr> test_family() {
  return {zero(), one(), discrete(2), walking_arrow(), bz2()};
}

}  // namespace fincats

inline FinCat opposite(const FinCat& a) {
  std::vector<FinMor> mors;
  mors.reserve(a.mor_count());
  for (int m = 0; m < a.mor_count(); ++m)
    mors.push_back({a.mor(m).dst, a.mor(m).src, a.mor(m).label});
  const int mc = a.mor_count();
  std::vector<int> comp(static_cast<std::size_t>(mc) * mc, -1);
  for (int g = 0; g < mc; ++g)
    for (int f = 0; f < mc; ++f)
      if (mors[f].dst == mors[g].src)
        comp[static_cast<std::size_t>(g) * mc + f] = a.compose(f, g);
  std::vector<std::string> obs;
  for (int o = 0; o < a.object_count(); ++o) obs.push_back(a.object_label(o));
  std::vector<int> ids;
  for (int o = 0; o < a.object_count(); ++o) ids.push_back(a.identity(o));
  return FinCat::make(a.name() + "_op", std::move(obs), std::move(mors), std::move(ids), std::move(comp));
}

// Object index (x,y) -> x*b.object_count()+y; morphism index (f,g) -> f*b.mor_count()+g.
inline FinCat product(const FinCat& a, const FinCat& b) {
  std::vector<std::string> obs;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < b.object_count(); ++y)
      obs.push_back("(" + a.object_label(x) + "," + b.object_label(y) + ")");
  std::vector<FinMor> mors;
  const int bm = b.mor_count();
  for (int f = 0; f < a.mor_count(); ++f)
    for (int g = 0; g < bm; ++g)
      mors.push_back({a.mor(f).src * b.object_count() + b.mor(g).src,
                      a.mor(f).dst * b.object_count() + b.mor(g).dst,
                      "(" + a.mor(f).label + "," + b.mor(g).label + ")"});
  std::vector<int> ids;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < b.object_count(); ++y)
      ids.push_back(a.identity(x) * bm + b.identity(y));
  const int mc = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(mc) * mc, -1);
  for (int f1 = 0; f1 < a.mor_count(); ++f1)
    for (int g1 = 0; g1 < bm; ++g1)
      for (int f2 = 0; f2 < a.mor_count(); ++f2)
        for (int g2 = 0; g2 < bm; ++g2) {
          if (a.mor(f2).dst != a.mor(f1).src || b.mor(g2).dst != b.mor(g1).src) continue;
          int hi = f1 * bm + g1, lo = f2 * bm + g2;
          comp[static_cast<std::size_t>(hi) * mc + lo] = a.compose(f1, f2) * bm + b.compose(g1, g2);
        }
  return FinCat::make(a.name() + "*" + b.name(), std::move(obs), std::move(mors), std::move(ids), std::move(comp));
}

// Objects and morphisms of a first, then of b.
inline FinCat coproduct(const FinCat& a, const FinCat& b) {
  std::vector<std::string> obs;
  for (int x = 0; x < a.object_count(); ++x) obs.push_back("l." + a.object_label(x));
  for (int y = 0; y < b.object_count(); ++y) obs.push_back("r." + b.object_label(y));
  std::vector<FinMor> mors;
  for (int f = 0; f < a.mor_count(); ++f)
    mors.push_back({a.mor(f).src, a.mor(f).dst, "l." + a.mor(f).label});
  for (int g = 0; g < b.mor_count(); ++g)
    mors.push_back({a.object_count() + b.mor(g).src, a.object_count() + b.mor(g).dst, "r." + b.mor(g).label});
  std::vector<int> ids;
  for (int x = 0; x < a.object_count(); ++x) ids.push_back(a.identity(x));
  for (int y = 0; y < b.object_count(); ++y) ids.push_back(a.mor_count() + b.identity(y));
  const int mc = static_cast<int>(mors.size());
  std::vector<int> comp(static_cast<std::size_t>(mc) * mc, -1);
  for (int g = 0; g < a.mor_count(); ++g)
    for (int f = 0; f < a.mor_count(); ++f)
      if (a.mor(f).dst == a.mor(g).src)
        comp[static_cast<std::size_t>(g) * mc + f] = a.compose(g, f);
  for (int g = 0; g < b.mor_count(); ++g)
    for (int f = 0; f < b.mor_count(); ++f)
      if (b.mor(f).dst == b.mor(g).src)
        comp[static_cast<std::size_t>(a.mor_count() + g) * mc + a.mor_count() + f] = a.mor_count() + b.compose(g, f);
  return FinCat::make(a.name() + "+" + b.name(), std::move(obs), std::move(mors), std::move(ids), std::move(comp));
}

// Functor between finite categories given by its object and morphism tables.
struct FinFunctor {
  FinCatPtr dom, cod;
  std::vector<int> ob;   // object map
  std::vector<int> mor;  // morphism map

  void validate() const {
    if (static_cast<int>(ob.size()) != dom->object_count() || static_cast<int>(mor.size()) != dom->mor_count())
      throw ValidationError("functor tables have wrong size");
    for (int o = 0; o < dom->object_count(); ++o)
      if (ob[o] < 0 || ob[o] >= cod->object_count()) throw ValidationError("functor object map out of range");
    for (int m = 0; m < dom->mor_count(); ++m) {
      if (mor[m] < 0 || mor[m] >= cod->mor_count()) throw ValidationError("functor morphism map out of range");
      if (cod->mor(mor[m]).src != ob[dom->mor(m).src] || cod->mor(mor[m]).dst != ob[dom->mor(m).dst])
        throw ValidationError("functor breaks endpoints at " + dom->mor(m).label);
    }
    for (int o = 0; o < dom->object_count(); ++o)
      if (mor[dom->identity(o)] != cod->identity(ob[o]))
        throw ValidationError("functor breaks identity at " + dom->object_label(o));
    for (int g = 0; g < dom->mor_count(); ++g)
      for (int f = 0; f < dom->mor_count(); ++f)
        if (dom->mor(f).dst == dom->mor(g).src)
          if (mor[dom->compose(g, f)] != cod->compose(mor[g], mor[f]))
            throw ValidationError("functor breaks composition at (" + dom->mor(g).label + ", " + dom->mor(f).label + ")");
  }
};

}  // namespace coend
