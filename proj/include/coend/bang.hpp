#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "coend/category.hpp"

namespace coend {

// Morphism of the free symmetric strict monoidal category on a base:
// a permutation together with slotwise base arrows,
//   arrows[i] : src[i] -> dst[sigma[i]].
struct PermMor {
  std::vector<int> sigma;
  std::vector<MorRef> arrows;
};

// Free symmetric strict monoidal category on `base`, truncated to a finite
// window: sequences with length <= bound and total weight <= bound. Objects
// are enumerated by length, then lexicographically by entry indices, so
// indices are deterministic for a given (base key, bound). Hom-sets exist
// only between sequences of equal length; they are enumerated permutation-
// lexicographically, then arrow-tuple-lexicographically, and memoized.
class BangCategory final : public Category {
public:
  BangCategory(CatPtr base, int bound) : base_(std::move(base)), bound_(bound) {
    if (bound < 0) throw Error("sequence window bound must be nonnegative");
    key_ = "bang(" + base_->key() + "," + std::to_string(bound) + ")";
    std::vector<int> cur;
    for (int len = 0; len <= bound_; ++len) enumerate(cur, len, 0);
  }

  const CatPtr& base() const { return base_; }
  int bound() const { return bound_; }

  const std::vector<int>& seq(int o) const { return objs_[o]; }

  // Window lookup; -1 when the sequence exceeds the window.
  int try_obj_of_seq(const std::vector<int>& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  int obj_of_seq(const std::vector<int>& s) const {
    int o = try_obj_of_seq(s);
    if (o < 0)
      throw BoundError("sequence object of length " + std::to_string(s.size()) +
                       " falls outside the bound-" + std::to_string(bound_) + " window of " + key_);
    return o;
  }

  int concat_obj(int x, int y) const {
    std::vector<int> s = objs_[x];
    s.insert(s.end(), objs_[y].begin(), objs_[y].end());
    return obj_of_seq(s);
  }

  const PermMor& perm_mor(const MorRef& m) const { return homset(m.src, m.dst).list[m.idx]; }

  MorRef mor_of(int x, int y, const PermMor& pm) const {
    const HomData& h = homset(x, y);
    auto it = h.index.find(mor_key(pm));
    if (it == h.index.end())
      throw Error("permutation morphism not found in hom(" + object_label(x) + "," + object_label(y) + ") of " + key_);
    return {x, y, it->second};
  }

  // Juxtaposition of morphisms: (m1 # m2) : x1#x2 -> y1#y2.
  MorRef mor_concat(const MorRef& m1, const MorRef& m2) const {
    const PermMor& a = perm_mor(m1);
    const PermMor& b = perm_mor(m2);
    PermMor r;
    int n1 = static_cast<int>(a.sigma.size());
    r.sigma = a.sigma;
    for (int v : b.sigma) r.sigma.push_back(v + n1);
    r.arrows = a.arrows;
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return mor_of(concat_obj(m1.src, m2.src), concat_obj(m1.dst, m2.dst), r);
  }

  // Block permutation: blocks[k] moves to slot place[k]; entries ride along
  // with identity arrows. Result: concat(blocks) -> concat(blocks in target order).
  MorRef block_perm(const std::vector<int>& blocks, const std::vector<int>& place) const {
    int nb = static_cast<int>(blocks.size());
    std::vector<int> src_seq, dst_blocks(nb);
    for (int k = 0; k < nb; ++k) dst_blocks[place[k]] = blocks[k];
    std::vector<int> dst_off(nb, 0), src_off(nb, 0);
    {
      int acc = 0;
      for (int k = 0; k < nb; ++k) {
        src_off[k] = acc;
        acc += static_cast<int>(objs_[blocks[k]].size());
      }
      acc = 0;
      std::vector<int> tmp(nb);
      for (int k = 0; k < nb; ++k) {
        tmp[k] = acc;
        acc += static_cast<int>(objs_[dst_blocks[k]].size());
      }
      for (int k = 0; k < nb; ++k) dst_off[k] = tmp[place[k]];
    }
    PermMor r;
    std::vector<int> dst_seq;
    for (int k = 0; k < nb; ++k) {
      const auto& s = objs_[blocks[k]];
      src_seq.insert(src_seq.end(), s.begin(), s.end());
    }
    for (int k = 0; k < nb; ++k) {
      const auto& s = objs_[dst_blocks[k]];
      dst_seq.insert(dst_seq.end(), s.begin(), s.end());
    }
    r.sigma.resize(src_seq.size());
    for (int k = 0; k < nb; ++k)
      for (int j = 0; j < static_cast<int>(objs_[blocks[k]].size()); ++j) {
        r.sigma[src_off[k] + j] = dst_off[k] + j;
        r.arrows.push_back(base_->identity(objs_[blocks[k]][j]));
      }
    // arrows were pushed in source order already
    return mor_of(obj_of_seq(src_seq), obj_of_seq(dst_seq), r);
  }

  // --- Category interface ---

  const std::string& key() const override { return key_; }
  int object_count() const override { return static_cast<int>(objs_.size()); }

  std::string object_label(int o) const override {
    std::string s = "<";
    for (std::size_t i = 0; i < objs_[o].size(); ++i) {
      if (i) s += ",";
      s += base_->object_label(objs_[o][i]);
    }
    return s + ">";
  }

  int weight(int o) const override { return weights_[o]; }

  int hom_size(int x, int y) const override {
    if (!quick_compatible(x, y)) return 0;
    return static_cast<int>(homset(x, y).list.size());
  }

  MorRef identity(int x) const override {
    const auto& s = objs_[x];
    PermMor pm;
    pm.sigma.resize(s.size());
    std::iota(pm.sigma.begin(), pm.sigma.end(), 0);
    for (int e : s) pm.arrows.push_back(base_->identity(e));
    return mor_of(x, x, pm);
  }

  MorRef compose(const MorRef& g, const MorRef& f) const override {
    const PermMor& a = perm_mor(f);
    const PermMor& b = perm_mor(g);
    int n = static_cast<int>(a.sigma.size());
    PermMor r;
    r.sigma.resize(n);
    r.arrows.resize(n);
    for (int i = 0; i < n; ++i) {
      r.sigma[i] = b.sigma[a.sigma[i]];
      r.arrows[i] = base_->compose(b.arrows[a.sigma[i]], a.arrows[i]);
    }
    return mor_of(f.src, g.dst, r);
  }

  std::string mor_label(const MorRef& m) const override {
    const PermMor& pm = perm_mor(m);
    std::string s = "(s=";
    for (std::size_t i = 0; i < pm.sigma.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(pm.sigma[i]);
    }
    s += ";";
    for (std::size_t i = 0; i < pm.arrows.size(); ++i) {
      if (i) s += ",";
      s += base_->mor_label(pm.arrows[i]);
    }
    return s + ")";
  }

  std::vector<MorRef> generators_from(int o) const override {
    std::vector<MorRef> out;
    const auto& s = objs_[o];
    int n = static_cast<int>(s.size());
    // Adjacent transpositions with identity arrows.
    for (int k = 0; k + 1 < n; ++k) out.push_back(transposition(o, k));
    // Single-slot base generators.
    for (int i = 0; i < n; ++i)
      for (const MorRef& g : base_->generators_from(s[i])) out.push_back(slot_mor(o, i, g));
    return out;
  }

  std::vector<MorRef> factor_generators(const MorRef& m) const override {
    const PermMor& pm = perm_mor(m);
    int n = static_cast<int>(pm.sigma.size());
    std::vector<MorRef> steps;
    // Arrows first (identity permutation), slot by slot.
    std::vector<int> cur = objs_[m.src];
    for (int i = 0; i < n; ++i) {
      for (const MorRef& s : base_->factor_generators(pm.arrows[i])) {
        steps.push_back(slot_mor(obj_of_seq(cur), i, s));
        cur[i] = s.dst;
      }
    }
    // Then the permutation as adjacent transpositions (bubble sort).
    std::vector<int> rho = pm.sigma;
    int o = obj_of_seq(cur);
    while (true) {
      int k = -1;
      for (int i = 0; i + 1 < n; ++i)
        if (rho[i] > rho[i + 1]) { k = i; break; }
      if (k < 0) break;
      steps.push_back(transposition(o, k));
      std::swap(rho[k], rho[k + 1]);
      std::swap(cur[k], cur[k + 1]);
      o = obj_of_seq(cur);
    }
    return steps;  // application order
  }

private:
  struct HomData {
    std::vector<PermMor> list;
    std::map<std::vector<int>, int> index;
  };

  void enumerate(std::vector<int>& cur, int len, int w) {
    if (static_cast<int>(cur.size()) == len) {
      index_[cur] = static_cast<int>(objs_.size());
      objs_.push_back(cur);
      weights_.push_back(w);
      return;
    }
    for (int e = 0; e < base_->object_count(); ++e) {
      int we = base_->weight(e);
      if (w + we > bound_) continue;
      cur.push_back(e);
      enumerate(cur, len, w + we);
      cur.pop_back();
    }
  }

  bool quick_compatible(int x, int y) const {
    if (objs_[x].size() != objs_[y].size()) return false;
    if (weights_[x] != weights_[y]) return false;
    return true;
  }

  static std::vector<int> mor_key(const PermMor& pm) {
    std::vector<int> k = pm.sigma;
    for (const MorRef& a : pm.arrows) k.push_back(a.idx);
    return k;
  }

  const HomData& homset(int x, int y) const {
    std::int64_t k = pack2(x, y);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = hom_cache_.find(k);
      if (it != hom_cache_.end()) return *it->second;
    }
    auto data = std::make_unique<HomData>();
    const auto& xs = objs_[x];
    const auto& ys = objs_[y];
    int n = static_cast<int>(xs.size());
    if (quick_compatible(x, y)) {
      std::vector<int> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
          if (base_->hom_size(xs[i], ys[sigma[i]]) == 0) ok = false;
        if (!ok) continue;
        // Arrow tuples in lexicographic order, last slot fastest.
        std::vector<int> tup(n, 0);
        while (true) {
          PermMor pm;
          pm.sigma = sigma;
          for (int i = 0; i < n; ++i) pm.arrows.push_back({xs[i], ys[sigma[i]], tup[i]});
          data->index[mor_key(pm)] = static_cast<int>(data->list.size());
          data->list.push_back(std::move(pm));
          int i = n - 1;
          while (i >= 0) {
            if (++tup[i] < base_->hom_size(xs[i], ys[sigma[i]])) break;
            tup[i] = 0;
            --i;
          }
          if (i < 0) break;
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = hom_cache_.try_emplace(k, std::move(data));
    return *it->second;
  }

  MorRef transposition(int o, int k) const {
    const auto& s = objs_[o];
    int n = static_cast<int>(s.size());
    std::vector<int> t = s;
    std::swap(t[k], t[k + 1]);
    PermMor pm;
    pm.sigma.resize(n);
    std::iota(pm.sigma.begin(), pm.sigma.end(), 0);
    std::swap(pm.sigma[k], pm.sigma[k + 1]);
    for (int i = 0; i < n; ++i) pm.arrows.push_back(base_->identity(s[i]));
    return mor_of(o, obj_of_seq(t), pm);
  }

  MorRef slot_mor(int o, int i, const MorRef& g) const {
    const auto& s = objs_[o];
    std::vector<int> t = s;
    t[i] = g.dst;
    PermMor pm;
    pm.sigma.resize(s.size());
    std::iota(pm.sigma.begin(), pm.sigma.end(), 0);
    for (std::size_t j = 0; j < s.size(); ++j)
      pm.arrows.push_back(static_cast<int>(j) == i ? g : base_->identity(s[j]));
    return mor_of(o, obj_of_seq(t), pm);
  }

  CatPtr base_;
  int bound_;
  std::string key_;
  std::vector<std::vector<int>> objs_;
  std::vector<int> weights_;
  std::map<std::vector<int>, int> index_;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, std::unique_ptr<HomData>> hom_cache_;
};

using BangPtr = std::shared_ptr<const BangCategory>;

inline BangPtr bang_of(CatPtr base, int bound) {
  return std::make_shared<BangCategory>(std::move(base), bound);
}

// a |-> <a>.
inline CatFunctor singleton_functor(const BangPtr& b) {
  CatPtr base = b->base();
  CatFunctor f{base, b,
               [b](int a) { return b->obj_of_seq({a}); },
               [b](const MorRef& f) {
                 PermMor pm;
                 pm.sigma = {0};
                 pm.arrows = {f};
                 return b->mor_of(b->obj_of_seq({f.src}), b->obj_of_seq({f.dst}), pm);
               },
               "unit"};
  f.try_ob = [b](int a) { return b->try_obj_of_seq({a}); };
  return f;
}

// Pairwise juxtaposition (<a>,<b>) |-> <a#b>; partial on the window since
// concatenation can overflow the size budget.
inline CatFunctor concat_functor(const std::shared_ptr<const ProductCategory>& bxb,
                                 const BangPtr& b) {
  if (bxb->left()->key() != b->key() || bxb->right()->key() != b->key())
    throw Error("concat_functor: operand is not the square of the target");
  CatFunctor f{bxb, b,
               [bxb, b](int o) {
                 auto [x, y] = bxb->ob_split(o);
                 return b->concat_obj(x, y);
               },
               [bxb, b](const MorRef& m) {
                 auto [f1, f2] = bxb->mor_split(m);
                 return b->mor_concat(f1, f2);
               },
               "concat"};
  f.try_ob = [bxb, b](int o) {
    auto [x, y] = bxb->ob_split(o);
    std::vector<int> s = b->seq(x);
    const auto& t = b->seq(y);
    s.insert(s.end(), t.begin(), t.end());
    return b->try_obj_of_seq(s);
  };
  return f;
}

// Concatenation of a sequence of sequences; on morphisms, the induced block
// permutation with the entry arrows carried along.
inline CatFunctor flatten_functor(const BangPtr& bb, const BangPtr& b) {
  if (bb->base()->key() != b->key()) throw Error("flatten: operand is not a double sequence category over the target");
  auto ob = [bb, b](int phi) {
    std::vector<int> flat;
    for (int entry : bb->seq(phi)) {
      const auto& s = b->seq(entry);
      flat.insert(flat.end(), s.begin(), s.end());
    }
    return b->obj_of_seq(flat);
  };
  auto mor = [bb, b, ob](const MorRef& m) {
    const PermMor& big = bb->perm_mor(m);
    const auto& src_blocks = bb->seq(m.src);
    const auto& dst_blocks = bb->seq(m.dst);
    int nb = static_cast<int>(src_blocks.size());
    std::vector<int> src_off(nb + 1, 0), dst_off(dst_blocks.size() + 1, 0);
    for (int k = 0; k < nb; ++k)
      src_off[k + 1] = src_off[k] + static_cast<int>(b->seq(src_blocks[k]).size());
    for (std::size_t k = 0; k < dst_blocks.size(); ++k)
      dst_off[k + 1] = dst_off[k] + static_cast<int>(b->seq(dst_blocks[k]).size());
    PermMor flat;
    flat.sigma.resize(src_off[nb]);
    flat.arrows.resize(src_off[nb]);
    for (int k = 0; k < nb; ++k) {
      const PermMor& inner = b->perm_mor(big.arrows[k]);
      int tgt_block = big.sigma[k];
      for (int j = 0; j < static_cast<int>(inner.sigma.size()); ++j) {
        flat.sigma[src_off[k] + j] = dst_off[tgt_block] + inner.sigma[j];
        flat.arrows[src_off[k] + j] = inner.arrows[j];
      }
    }
    return b->mor_of(ob(m.src), ob(m.dst), flat);
  };
  CatFunctor f{bb, b, ob, mor, "flatten"};
  f.try_ob = [bb, b](int phi) {
    std::vector<int> flat;
    for (int entry : bb->seq(phi)) {
      const auto& s = b->seq(entry);
      flat.insert(flat.end(), s.begin(), s.end());
    }
    return b->try_obj_of_seq(flat);
  };
  return f;
}

// Entrywise image of a base functor.
inline CatFunctor bang_functor(const CatFunctor& f, const BangPtr& bx, const BangPtr& by) {
  if (bx->base()->key() != f.dom->key() || by->base()->key() != f.cod->key())
    throw Error("bang_functor: sequence categories do not match the functor");
  auto fob = f.ob;
  auto fmor = f.mor;
  auto ob = [bx, by, fob](int x) {
    std::vector<int> s;
    for (int e : bx->seq(x)) s.push_back(fob(e));
    return by->obj_of_seq(s);
  };
  auto mor = [bx, by, fmor, ob](const MorRef& m) {
    const PermMor& pm = bx->perm_mor(m);
    PermMor out;
    out.sigma = pm.sigma;
    for (const MorRef& a : pm.arrows) out.arrows.push_back(fmor(a));
    return by->mor_of(ob(m.src), ob(m.dst), out);
  };
  CatFunctor out{bx, by, ob, mor, "seq(" + f.desc + ")"};
  auto inner_try = f.try_ob;
  out.try_ob = [bx, by, fob, inner_try](int x) {
    std::vector<int> s;
    for (int e : bx->seq(x)) {
      int fe = inner_try ? inner_try(e) : fob(e);
      if (fe < 0) return -1;
      s.push_back(fe);
    }
    return by->try_obj_of_seq(s);
  };
  return out;
}

}  // namespace coend
