#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coend/bang.hpp"
#include "coend/prof.hpp"

namespace coend {

// Pointwise symmetric extension of a profunctor F: A -> B to sequence
// windows, !F: !A -> !B. The cell at (beta, phi) is the quotient of
//
//     sum over same-length delta of  hom(beta, delta) x prod_i F(delta_i, phi_i)
//
// where delta ranges over codomain-window objects, glued by slotwise
// zig-zags over base generators only (composite relations factor through
// intermediate blocks that are always present). Permutations stay in the
// hom factor, which is what distinguishes !F from a plain entrywise product.
class BangProf final : public Profunctor {
public:
  BangProf(ProfPtr f, int bound)
      : Profunctor(bang_of(f->dom(), bound), bang_of(f->cod(), bound)),
        f_(std::move(f)),
        bound_(bound),
        domb_(std::static_pointer_cast<const BangCategory>(dom())),
        codb_(std::static_pointer_cast<const BangCategory>(cod())) {
    key_ = "bang(" + f_->key() + ";" + std::to_string(bound_) + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override { return data(c, a).classes; }

  bool cell_nonzero(int c, int a) const override {
    const auto& beta = codb_->seq(c);
    const auto& phi = domb_->seq(a);
    if (beta.size() != phi.size()) return false;
    const int k = (int)phi.size();
    for (int d = 0; d < codb_->object_count(); ++d) {
      if (!codb_->hom_size(c, d)) continue;
      const auto& ds = codb_->seq(d);
      bool live = true;
      for (int i = 0; i < k && live; ++i) live = f_->cell_nonzero(ds[i], phi[i]);
      if (live) return true;
    }
    return false;
  }

  int lact(const MorRef& g, int a, int e) const override {
    auto [dobj, h, xs] = decode(g.dst, a, e);
    MorRef hm{g.dst, dobj, h};
    MorRef moved = codb_->compose(hm, g);
    return encode(g.src, a, dobj, moved.idx, xs);
  }

  int ract(const MorRef& m, int c, int e) const override {
    auto [dobj, h, xs] = decode(c, m.src, e);
    const PermMor& pm = domb_->perm_mor(m);
    const int k = (int)pm.sigma.size();
    const auto& ds = codb_->seq(dobj);
    // Permute the block: new slot sigma(i) holds old slot i.
    std::vector<int> ds2(k);
    for (int i = 0; i < k; ++i) ds2[pm.sigma[i]] = ds[i];
    int dobj2 = codb_->obj_of_seq(ds2);
    PermMor q;
    q.sigma = pm.sigma;
    q.arrows.reserve(k);
    for (int i = 0; i < k; ++i) q.arrows.push_back(codb_->base()->identity(ds[i]));
    MorRef qm = codb_->mor_of(dobj, dobj2, q);
    MorRef hm{c, dobj, h};
    MorRef moved = codb_->compose(qm, hm);
    std::vector<int> xs2(k);
    for (int i = 0; i < k; ++i) xs2[pm.sigma[i]] = f_->ract(pm.arrows[i], ds[i], xs[i]);
    return encode(c, m.dst, dobj2, moved.idx, xs2);
  }

  const ProfPtr& inner() const { return f_; }
  int bound() const { return bound_; }

  // Witness plumbing mirroring the binary composite: decode a class into its
  // least representative (block object, hom element, slot elements) and map
  // any member back to its class.
  std::tuple<int, int, std::vector<int>> decode(int c, int a, int cls) const {
    const Cell& cell = data(c, a);
    int t = cell.reps[cls];
    int kd = block_of(cell, t);
    int local = t - cell.offset[kd];
    std::vector<int> xs(cell.k);
    for (int i = cell.k - 1; i >= 0; --i) {
      xs[i] = local % cell.fsz[kd][i];
      local /= cell.fsz[kd][i];
    }
    return {cell.deltas[kd], local, xs};
  }

  int encode(int c, int a, int dobj, int h, const std::vector<int>& xs) const {
    const Cell& cell = data(c, a);
    auto it = cell.block_index.find(dobj);
    if (it == cell.block_index.end()) throw Error("sequence extension: element outside the enumerated blocks");
    int kd = it->second;
    int local = h;
    for (int i = 0; i < cell.k; ++i) local = local * cell.fsz[kd][i] + xs[i];
    return cell.class_of[cell.offset[kd] + local];
  }

private:
  struct Cell {
    int k = 0;
    std::vector<int> deltas;             // block objects, ascending
    std::map<int, int> block_index;      // object -> position in deltas
    std::vector<int> hsize;              // hom(beta, delta)
    std::vector<std::vector<int>> fsz;   // slotwise F-cell sizes
    std::vector<int> offset;
    int total = 0;
    int classes = 0;
    std::vector<int> class_of, reps;
  };

  static int block_of(const Cell& cell, int t) {
    int kd = (int)(std::upper_bound(cell.offset.begin(), cell.offset.end(), t) - cell.offset.begin()) - 1;
    return kd;
  }

  const Cell& data(int c, int a) const {
    std::int64_t key = pack2(c, a);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cells_.find(key);
      if (it != cells_.end()) return *it->second;
    }
    auto built = std::make_unique<Cell>(build(c, a));
    std::lock_guard<std::mutex> lock(mu_);
    return *cells_.try_emplace(key, std::move(built)).first->second;
  }

  Cell build(int c, int a) const {
    Cell cell;
    const auto& beta = codb_->seq(c);
    const auto& phi = domb_->seq(a);
    cell.k = (int)phi.size();
    if (beta.size() != phi.size()) return cell;
    const Category& base = *codb_->base();

    for (int d = 0; d < codb_->object_count(); ++d) {
      int hs = codb_->hom_size(c, d);
      if (!hs) continue;
      const auto& ds = codb_->seq(d);
      std::vector<int> fs(cell.k);
      long long prod = 1;
      for (int i = 0; i < cell.k; ++i) {
        fs[i] = f_->cell_size(ds[i], phi[i]);
        prod *= fs[i];
      }
      if (!prod) continue;
      cell.block_index[d] = (int)cell.deltas.size();
      cell.deltas.push_back(d);
      cell.hsize.push_back(hs);
      cell.fsz.push_back(std::move(fs));
      cell.offset.push_back(cell.total);
      cell.total += (int)(hs * prod);
    }
    if (!cell.total) return cell;

    UnionFind uf(cell.total);
    // Mixed-radix strides for rebuilding indices with one slot replaced.
    for (size_t kd = 0; kd < cell.deltas.size(); ++kd) {
      const auto& ds = codb_->seq(cell.deltas[kd]);
      for (int i = 0; i < cell.k; ++i) {
        for (const MorRef& g : base.generators_from(ds[i])) {
          std::vector<int> ds2 = ds;
          ds2[i] = g.dst;
          int d2 = codb_->try_obj_of_seq(ds2);
          if (d2 < 0) continue;
          auto it2 = cell.block_index.find(d2);
          if (it2 == cell.block_index.end()) continue;
          int kd2 = it2->second;
          PermMor sm;
          sm.sigma.resize(cell.k);
          std::iota(sm.sigma.begin(), sm.sigma.end(), 0);
          sm.arrows.reserve(cell.k);
          for (int j = 0; j < cell.k; ++j) sm.arrows.push_back(j == i ? g : base.identity(ds[j]));
          MorRef smr = codb_->mor_of(cell.deltas[kd], d2, sm);
          // Iterate every (h, x-vector with slot i drawn from the far block).
          std::vector<int> radix = cell.fsz[kd];
          radix[i] = cell.fsz[kd2][i];
          long long outer = 1;
          for (int v : radix) outer *= v;
          for (int h = 0; h < cell.hsize[kd]; ++h) {
            MorRef hm{c, cell.deltas[kd], h};
            int h2 = codb_->compose(smr, hm).idx;
            for (long long mix = 0; mix < outer; ++mix) {
              long long rest = mix;
              std::vector<int> xs(cell.k);
              for (int j = cell.k - 1; j >= 0; --j) {
                xs[j] = (int)(rest % radix[j]);
                rest /= radix[j];
              }
              int xi_far = xs[i];
              // Near index: slot i pulled back through F's action.
              long long near = h;
              for (int j = 0; j < cell.k; ++j)
                near = near * cell.fsz[kd][j] + (j == i ? f_->lact(g, phi[i], xi_far) : xs[j]);
              long long far = h2;
              for (int j = 0; j < cell.k; ++j) far = far * cell.fsz[kd2][j] + xs[j];
              uf.unite((int)(cell.offset[kd] + near), (int)(cell.offset[kd2] + far));
            }
          }
        }
      }
    }

    cell.class_of.assign(cell.total, -1);
    for (int t = 0; t < cell.total; ++t) {
      int r = uf.find(t);
      if (cell.class_of[r] == -1) {
        cell.class_of[r] = (int)cell.reps.size();
        cell.reps.push_back(r);
      }
      cell.class_of[t] = cell.class_of[r];
    }
    cell.classes = (int)cell.reps.size();
    return cell;
  }

  ProfPtr f_;
  int bound_;
  BangPtr domb_, codb_;
  std::string key_;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, std::unique_ptr<Cell>> cells_;
};

inline ProfPtr bang_prof(ProfPtr f, int bound) { return std::make_shared<BangProf>(std::move(f), bound); }

}  // namespace coend
