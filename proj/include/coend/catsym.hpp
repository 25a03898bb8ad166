#pragma once
// Symmetric sequences between finite bases: profunctors out of a sequence
// window, with substitution composition, a pointwise derivative, and the
// product structure over sum bases.

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coend/bang.hpp"
#include "coend/bangprof.hpp"
#include "coend/category.hpp"
#include "coend/fincat.hpp"
#include "coend/prof.hpp"
#include "coend/structmaps.hpp"
#include "coend/util.hpp"

namespace coend {

// A symmetric sequence from base A to base B: a profunctor whose domain is
// the sequence window over A and whose codomain is B. `arity` is the largest
// input length carrying a nonzero cell, recomputed by scanning on build.
struct SymSeq {
  CatPtr dom, cod;
  int bound = 0;
  ProfPtr body;
  int arity = 0;
};

inline BangPtr seq_window_of(const SymSeq& s) {
  auto b = std::dynamic_pointer_cast<const BangCategory>(s.body->dom());
  if (!b) throw ValidationError("symmetric sequence body does not start from a sequence window");
  return b;
}

namespace csym {

inline int scan_arity(const Profunctor& body) {
  auto w = std::dynamic_pointer_cast<const BangCategory>(body.dom());
  if (!w) throw ValidationError("symmetric sequence body does not start from a sequence window");
  int best = 0;
  const int nc = body.cod()->object_count();
  for (int a = 0; a < w->object_count(); ++a) {
    int len = static_cast<int>(w->seq(a).size());
    if (len <= best) continue;
    for (int c = 0; c < nc; ++c)
      if (body.cell_nonzero(c, a)) {
        best = len;
        break;
      }
  }
  return best;
}

}  // namespace csym

inline SymSeq make_symseq(const CatPtr& dom, const CatPtr& cod, int bound, ProfPtr body) {
  auto w = std::dynamic_pointer_cast<const BangCategory>(body->dom());
  if (!w) throw ValidationError("symmetric sequence body does not start from a sequence window");
  if (w->base()->key() != dom->key())
    throw ValidationError("symmetric sequence window is over a different base");
  if (w->bound() != bound) throw ValidationError("symmetric sequence window has a different bound");
  if (body->cod()->key() != cod->key())
    throw ValidationError("symmetric sequence body targets a different base");
  SymSeq out{dom, cod, bound, body, 0};
  out.arity = csym::scan_arity(*body);
  return out;
}

// Identity for substitution: singleton extraction.
inline SymSeq kleisli_id(const CatPtr& a, int bound) {
  return make_symseq(a, a, bound, dereliction(a, bound));
}

// Window bound needed so the substitute of g into f keeps every middle
// sequence representable up to the composite's own arity.
inline int required_bound(const SymSeq& g, const SymSeq& f) {
  if (f.cod->key() != g.dom->key())
    throw Error("substitution: inner codomain differs from outer domain");
  return std::max(1, g.arity * std::max(1, f.arity));
}

// Substitution g(f): flatten the input into blocks, apply f to each block,
// then apply g to the sequence of results. Two composition layers:
// g.body . (seq(f.body) . promotion).
inline SymSeq kleisli_compose(const SymSeq& g, const SymSeq& f) {
  if (f.cod->key() != g.dom->key())
    throw Error("substitution: inner codomain differs from outer domain");
  if (f.bound != g.bound) throw Error("substitution: operands use different window bounds");
  auto inner = compose_prof(bang_prof(f.body, f.bound), promotion(f.dom, f.bound));
  return make_symseq(f.dom, g.cod, f.bound, compose_prof(g.body, inner));
}

// ---------------------------------------------------------------------------
// Pointwise derivative: reserve one input slot.
// cell((a~, b), alpha) = body(b, alpha # <a>); the reserved slot is acted on
// by the contravariant base component of the codomain.

class DerivativeProf final : public Profunctor {
public:
  DerivativeProf(ProfPtr body, CatPtr base)
      : Profunctor(body->dom(), product_of(opposite_of(base), body->cod())), f_(std::move(body)) {
    seq_ = std::dynamic_pointer_cast<const BangCategory>(dom_);
    if (!seq_) throw ValidationError("derivative of a body without a sequence window");
    if (seq_->base()->key() != base->key())
      throw ValidationError("derivative base differs from the sequence window base");
    prod_ = std::static_pointer_cast<const ProductCategory>(cod_);
    key_ = "d(" + f_->key() + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int c, int a) const override {
    auto [ao, b] = prod_->ob_split(c);
    int ext = extended(a, ao);
    if (ext < 0) return 0;
    return f_->cell_size(b, ext);
  }

  bool cell_nonzero(int c, int a) const override {
    auto [ao, b] = prod_->ob_split(c);
    int ext = extended(a, ao);
    if (ext < 0) return false;
    return f_->cell_nonzero(b, ext);
  }

  int lact(const MorRef& g, int a, int e) const override {
    auto [u_op, v] = prod_->mor_split(g);
    MorRef u = OppositeCategory::flip(u_op);  // u : a_dst -> a_src in the base
    int src_ext = extended(a, u.src);
    int dst_ext = extended(a, u.dst);
    if (src_ext < 0 || dst_ext < 0) throw Error("derivative action outside the window");
    // move the reserved slot along u, then the output along v
    int x = f_->ract(slot_arrow(src_ext, dst_ext, u), v.dst, e);
    return f_->lact(v, dst_ext, x);
  }

  int ract(const MorRef& h, int c, int e) const override {
    auto [ao, b] = prod_->ob_split(c);
    int src_ext = extended(h.src, ao);
    int dst_ext = extended(h.dst, ao);
    if (src_ext < 0 || dst_ext < 0) throw Error("derivative action outside the window");
    const PermMor& pm = seq_->perm_mor(h);
    PermMor wide;
    wide.sigma = pm.sigma;
    wide.sigma.push_back(static_cast<int>(pm.sigma.size()));
    wide.arrows = pm.arrows;
    wide.arrows.push_back(seq_->base()->identity(ao));
    return f_->ract(seq_->mor_of(src_ext, dst_ext, wide), b, e);
  }

private:
  int extended(int a, int ao) const {
    std::vector<int> s = seq_->seq(a);
    s.push_back(ao);
    return seq_->try_obj_of_seq(s);
  }

  // identity permutation moving only the reserved last slot along u
  MorRef slot_arrow(int src_ext, int dst_ext, const MorRef& u) const {
    const auto& s = seq_->seq(src_ext);
    PermMor pm;
    for (int i = 0; i < static_cast<int>(s.size()); ++i) pm.sigma.push_back(i);
    for (int i = 0; i + 1 < static_cast<int>(s.size()); ++i)
      pm.arrows.push_back(seq_->base()->identity(s[i]));
    pm.arrows.push_back(u);
    return seq_->mor_of(src_ext, dst_ext, pm);
  }

  ProfPtr f_;
  BangPtr seq_;
  std::shared_ptr<const ProductCategory> prod_;
  std::string key_;
};

// d(F) : A -> A~ x B, one arity lower; the arity drop is re-verified by the
// support scan.
inline SymSeq derivative(const SymSeq& s) {
  auto body = std::make_shared<DerivativeProf>(s.body, s.dom);
  auto out = make_symseq(s.dom, body->cod(), s.bound, body);
  if (out.arity != std::max(s.arity - 1, 0))
    throw ValidationError("derivative support scan disagrees with the arity shift");
  return out;
}

// Base of the function space between symmetric sequences over A and B: pairs
// of an input sequence (contravariantly) and an output object.
inline CatPtr exponential_object(const CatPtr& a, const CatPtr& b, int bound) {
  return product_of(opposite_of(bang_of(a, bound)), b);
}

// ---------------------------------------------------------------------------
// Product structure over sum bases: A + B with the two restriction
// projections is a product in the substitution category.

namespace csym {

// Partial projection from the sum base onto one side; morphism positions are
// inherited blockwise, so indices pass through.
inline CatFunctor coprod_proj(const FinCatPtr& a, const FinCatPtr& b, const FinCatPtr& co,
                              bool first) {
  auto cv = std::make_shared<FinCatView>(co);
  auto tv = std::make_shared<FinCatView>(first ? a : b);
  const int ob_off = first ? 0 : a->object_count();
  const int ob_n = (first ? a : b)->object_count();
  CatFunctor f{cv, tv,
               [ob_off](int o) { return o - ob_off; },
               [ob_off](const MorRef& m) {
                 return MorRef{m.src - ob_off, m.dst - ob_off, m.idx};
               },
               first ? "side1" : "side2"};
  f.try_ob = [ob_off, ob_n](int o) {
    int t = o - ob_off;
    return (t >= 0 && t < ob_n) ? t : -1;
  };
  return f;
}

}  // namespace csym

// pr_i : A1 + A2 -> A_i, the arity-one restriction of singletons.
inline SymSeq product_projection(const FinCatPtr& a, const FinCatPtr& b, int bound, int side) {
  if (side != 1 && side != 2) throw Error("product projection side must be 1 or 2");
  auto co = std::make_shared<FinCat>(coproduct(*a, *b));
  auto cov = view(co);
  auto bco = bang_of(cov, bound);
  auto inj = lift(smaps::coprod_in(a, b, co, side == 1));
  auto body = conjoint(compose_functors(singleton_functor(bco), inj),
                       side == 1 ? "proj1" : "proj2");
  return make_symseq(cov, view(side == 1 ? a : b), bound, body);
}

// <f, g> : C -> A + B, cells split by the side of the output object.
inline SymSeq product_pairing(const SymSeq& f, const SymSeq& g, const FinCatPtr& a,
                              const FinCatPtr& b) {
  if (f.dom->key() != g.dom->key()) throw Error("pairing: operand domains differ");
  if (f.bound != g.bound) throw Error("pairing: operands use different window bounds");
  if (f.cod->key() != view(a)->key() || g.cod->key() != view(b)->key())
    throw Error("pairing: operand codomains do not match the given bases");
  auto co = std::make_shared<FinCat>(coproduct(*a, *b));
  auto cov = view(co);
  auto idw = identity_functor(f.body->dom());
  auto body = sum_prof(transport_prof(f.body, idw, csym::coprod_proj(a, b, co, true)),
                       transport_prof(g.body, idw, csym::coprod_proj(a, b, co, false)));
  return make_symseq(f.dom, cov, f.bound, body);
}

}  // namespace coend
