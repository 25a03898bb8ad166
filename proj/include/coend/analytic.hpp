#pragma once
// Evaluation of symmetric sequences on finite presheaves by coend quotient,
// and the one-object-base specialization: arity-indexed species with explicit
// permutation action tables, exact generating-series coefficients, and a
// Burnside orbit count used as an independent oracle for the quotient.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "coend/bang.hpp"
#include "coend/catsym.hpp"
#include "coend/category.hpp"
#include "coend/iso.hpp"
#include "coend/prof.hpp"
#include "coend/structmaps.hpp"
#include "coend/util.hpp"

namespace coend {

using Rational = boost::rational<long long>;

// ---------------------------------------------------------------------------
// Finite presheaf: a finite set per object with a contravariant action.
// act(f : a -> a', e in X(a')) lands in X(a).

struct Presheaf {
  CatPtr base;
  std::vector<int> sizes;
  std::function<int(const MorRef&, int)> act;
};

// Exhaustive functoriality check: identities fix, composites factor the
// actions in reverse order, every value stays in range.
inline void validate_presheaf(const Presheaf& x) {
  const Category& c = *x.base;
  const int n = c.object_count();
  if (static_cast<int>(x.sizes.size()) != n)
    throw ValidationError("presheaf has the wrong number of carriers");
  for (int o = 0; o < n; ++o)
    if (x.sizes[o] < 0) throw ValidationError("presheaf carrier with negative size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < c.hom_size(a, b); ++i) {
        MorRef f{a, b, i};
        for (int e = 0; e < x.sizes[b]; ++e) {
          int v = x.act(f, e);
          if (v < 0 || v >= x.sizes[a]) throw ValidationError("presheaf action leaves the carrier");
          if (c.is_identity(f) && v != e) throw ValidationError("presheaf action moves along an identity");
        }
        for (int d = 0; d < n; ++d)
          for (int j = 0; j < c.hom_size(b, d); ++j) {
            MorRef g{b, d, j};
            MorRef gf = c.compose(g, f);
            for (int e = 0; e < x.sizes[d]; ++e)
              if (x.act(gf, e) != x.act(f, x.act(g, e)))
                throw ValidationError("presheaf action does not respect composition");
          }
      }
}

inline Presheaf make_presheaf(CatPtr base, std::vector<int> sizes,
                              std::function<int(const MorRef&, int)> act) {
  Presheaf out{std::move(base), std::move(sizes), std::move(act)};
  validate_presheaf(out);
  return out;
}

// Constant carrier with identity actions; lawful over any base.
inline Presheaf const_presheaf(const CatPtr& base, int n) {
  return make_presheaf(base, std::vector<int>(base->object_count(), n),
                       [](const MorRef&, int e) { return e; });
}

// A presheaf on A packaged as a profunctor 1 -> A, so natural comparisons
// reuse the profunctor isomorphism search.
class PresheafProf final : public Profunctor {
public:
  explicit PresheafProf(Presheaf x, std::string name)
      : Profunctor(one_cat(), x.base), x_(std::move(x)), key_("psh(" + name + ")") {}

  const std::string& key() const override { return key_; }
  int cell_size(int c, int) const override { return x_.sizes[c]; }
  int lact(const MorRef& g, int, int e) const override { return x_.act(g, e); }
  int ract(const MorRef&, int, int e) const override { return e; }

private:
  Presheaf x_;
  std::string key_;
};

inline ProfPtr presheaf_prof(const Presheaf& x, const std::string& name) {
  return std::make_shared<PresheafProf>(x, name);
}

// ---------------------------------------------------------------------------
// Species: one finite carrier per arity with the symmetric-group action given
// by adjacent-transposition tables. swaps[n][k] is the action of the swap of
// slots k and k+1 on the arity-n carrier.

struct Species {
  int bound = 0;
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<int>>> swaps;
};

namespace species_detail {

inline void require_table_perm(const std::vector<int>& t, int n, const char* what) {
  if (static_cast<int>(t.size()) != n) throw ValidationError(std::string(what) + ": wrong table length");
  std::vector<char> seen(n, 0);
  for (int v : t) {
    if (v < 0 || v >= n || seen[v]) throw ValidationError(std::string(what) + ": table is not a permutation");
    seen[v] = 1;
  }
}

}  // namespace species_detail

// The adjacent transpositions present the symmetric group by the involution,
// braid, and distant-commutation relations, so checking those three families
// on the tables checks that each carrier is a genuine group action.
inline void validate_species(const Species& sp) {
  if (sp.bound < 0) throw ValidationError("species with negative bound");
  if (static_cast<int>(sp.sizes.size()) != sp.bound + 1 ||
      static_cast<int>(sp.swaps.size()) != sp.bound + 1)
    throw ValidationError("species tables do not cover every arity up to the bound");
  for (int n = 0; n <= sp.bound; ++n) {
    const int sz = sp.sizes[n];
    if (sz < 0) throw ValidationError("species carrier with negative size");
    const auto& sw = sp.swaps[n];
    if (static_cast<int>(sw.size()) != std::max(0, n - 1))
      throw ValidationError("species is missing adjacent-swap tables");
    for (const auto& t : sw) species_detail::require_table_perm(t, sz, "species swap");
    for (int k = 0; k + 1 < n; ++k)
      for (int e = 0; e < sz; ++e)
        if (sw[k][sw[k][e]] != e) throw ValidationError("species swap is not an involution");
    for (int k = 0; k + 2 < n; ++k)
      for (int e = 0; e < sz; ++e)
        if (sw[k][sw[k + 1][sw[k][e]]] != sw[k + 1][sw[k][sw[k + 1][e]]])
          throw ValidationError("species swaps break the braid relation");
    for (int k = 0; k + 1 < n; ++k)
      for (int j = k + 2; j + 1 < n; ++j)
        for (int e = 0; e < sz; ++e)
          if (sw[k][sw[j][e]] != sw[j][sw[k][e]])
            throw ValidationError("species swaps at distant slots do not commute");
  }
}

inline Species make_species(int bound, std::vector<int> sizes,
                            std::vector<std::vector<std::vector<int>>> swaps) {
  Species out{bound, std::move(sizes), std::move(swaps)};
  validate_species(out);
  return out;
}

namespace species_detail {

inline std::vector<std::vector<std::vector<int>>> trivial_swaps(const std::vector<int>& sizes) {
  std::vector<std::vector<std::vector<int>>> out(sizes.size());
  for (int n = 0; n < static_cast<int>(sizes.size()); ++n) {
    out[n].assign(std::max(0, n - 1), std::vector<int>(sizes[n]));
    for (auto& t : out[n]) std::iota(t.begin(), t.end(), 0);
  }
  return out;
}

}  // namespace species_detail

inline Species zero_species(int bound) {
  return make_species(bound, std::vector<int>(bound + 1, 0),
                      species_detail::trivial_swaps(std::vector<int>(bound + 1, 0)));
}

// One fixed point at every arity.
inline Species species_e(int bound) {
  std::vector<int> sizes(bound + 1, 1);
  return make_species(bound, sizes, species_detail::trivial_swaps(sizes));
}

// One fixed point at arity n only.
inline Species species_en(int n, int bound) {
  if (n < 0 || n > bound) throw BoundError("arity outside the species bound");
  std::vector<int> sizes(bound + 1, 0);
  sizes[n] = 1;
  return make_species(bound, sizes, species_detail::trivial_swaps(sizes));
}

inline Species species_x(int bound) { return species_en(1, bound); }

// Regular carrier at arity n: all permutations, adjacent swaps acting by
// postcomposition on values.
inline Species species_xn(int n, int bound) {
  if (n < 0 || n > bound) throw BoundError("arity outside the species bound");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
  std::vector<int> sizes(bound + 1, 0);
  sizes[n] = static_cast<int>(perms.size());
  auto swaps = species_detail::trivial_swaps(sizes);
  for (int k = 0; k + 1 < n; ++k)
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) {
      auto q = perms[i];
      for (int& v : q)
        if (v == k) v = k + 1;
        else if (v == k + 1) v = k;
      swaps[n][k][i] = index.at(q);
    }
  return make_species(bound, std::move(sizes), std::move(swaps));
}

// Apply an arbitrary arity-n permutation through the swap tables, factoring
// it exactly as the sequence window factors its morphisms: repeatedly apply
// the first descent. sigma[i] is the slot that input i moves to.
inline int apply_perm(const Species& sp, int n, std::vector<int> sigma, int e) {
  while (true) {
    int k = -1;
    for (int i = 0; i + 1 < n; ++i)
      if (sigma[i] > sigma[i + 1]) { k = i; break; }
    if (k < 0) return e;
    std::swap(sigma[k], sigma[k + 1]);
    e = sp.swaps[n][k][e];
  }
}

// ---------------------------------------------------------------------------
// Species as symmetric sequences over the one-object base, both directions.
// The window over the point has exactly one object per length, and its only
// generators are the adjacent transpositions, so the two presentations carry
// the same data.

class SpeciesSeqProf final : public Profunctor {
public:
  SpeciesSeqProf(std::shared_ptr<const Species> sp, BangPtr w)
      : Profunctor(CatPtr(w), one_cat()), sp_(std::move(sp)), w_(std::move(w)) {
    key_ = "species(" + std::to_string(reinterpret_cast<std::uintptr_t>(sp_.get())) + ")";
  }

  const std::string& key() const override { return key_; }

  int cell_size(int, int a) const override {
    return sp_->sizes[static_cast<int>(w_->seq(a).size())];
  }

  int lact(const MorRef& g, int, int e) const override {
    if (!cod_->is_identity(g)) throw Error("species body: non-identity output action");
    return e;
  }

  int ract(const MorRef& f, int, int e) const override {
    const int n = static_cast<int>(w_->seq(f.src).size());
    for (const MorRef& step : w_->factor_generators(f)) {
      const PermMor& pm = w_->perm_mor(step);
      int k = -1;
      for (int i = 0; i + 1 < n; ++i)
        if (pm.sigma[i] == i + 1 && pm.sigma[i + 1] == i) { k = i; break; }
      if (k >= 0) e = sp_->swaps[n][k][e];
      // Slot steps over the point carry identity arrows and act trivially.
    }
    return e;
  }

private:
  std::shared_ptr<const Species> sp_;
  BangPtr w_;
  std::string key_;
};

inline SymSeq to_symseq(const Species& sp) {
  auto w = bang_of(one_cat(), sp.bound);
  auto body = std::make_shared<SpeciesSeqProf>(std::make_shared<Species>(sp), w);
  return make_symseq(one_cat(), one_cat(), sp.bound, body);
}

// Read the tables back out of any symmetric sequence over the point: carrier
// sizes from the cells, swap tables from the covariant transposition action.
inline Species from_symseq(const SymSeq& s) {
  if (s.dom->key() != one_cat()->key() || s.cod->key() != one_cat()->key())
    throw ValidationError("species conversion needs a sequence over the one-object base");
  auto w = seq_window_of(s);
  Species out;
  out.bound = s.bound;
  out.sizes.resize(s.bound + 1);
  out.swaps.resize(s.bound + 1);
  for (int n = 0; n <= s.bound; ++n) {
    int o = w->obj_of_seq(std::vector<int>(n, 0));
    const int sz = s.body->cell_size(0, o);
    out.sizes[n] = sz;
    out.swaps[n].assign(std::max(0, n - 1), std::vector<int>(sz));
    for (int k = 0; k + 1 < n; ++k) {
      PermMor pm;
      pm.sigma.resize(n);
      std::iota(pm.sigma.begin(), pm.sigma.end(), 0);
      std::swap(pm.sigma[k], pm.sigma[k + 1]);
      pm.arrows.assign(n, one_cat()->identity(0));
      MorRef t = w->mor_of(o, o, pm);
      for (int e = 0; e < sz; ++e) out.swaps[n][k][e] = s.body->ract(t, 0, e);
    }
  }
  validate_species(out);
  return out;
}

inline bool species_equal(const Species& f, const Species& g) {
  return f.bound == g.bound && f.sizes == g.sizes && f.swaps == g.swaps;
}

// Drop every carrier above the given arity.
inline Species species_truncate(const Species& sp, int arity) {
  Species out = sp;
  for (int n = arity + 1; n <= out.bound; ++n) {
    out.sizes[n] = 0;
    out.swaps[n].assign(std::max(0, n - 1), std::vector<int>());
  }
  return out;
}

// Equivariant isomorphism arity by arity, through the profunctor search on
// the window presentation.
inline bool species_iso(const Species& f, const Species& g) {
  if (f.bound != g.bound) return false;
  if (f.sizes != g.sizes) return false;
  auto res = iso_check(to_symseq(f).body, to_symseq(g).body);
  return res.status == IsoStatus::Found;
}

// ---------------------------------------------------------------------------
// Calculus operations. Sum and the window operations are taken through the
// sequence presentation so they share the engine's quotient machinery.

inline Species sp_sum(const Species& f, const Species& g) {
  if (f.bound != g.bound) throw Error("species sum: operands use different bounds");
  Species out;
  out.bound = f.bound;
  out.sizes.resize(out.bound + 1);
  out.swaps.resize(out.bound + 1);
  for (int n = 0; n <= out.bound; ++n) {
    const int fs = f.sizes[n];
    out.sizes[n] = fs + g.sizes[n];
    out.swaps[n].assign(std::max(0, n - 1), std::vector<int>(out.sizes[n]));
    for (int k = 0; k + 1 < n; ++k)
      for (int e = 0; e < out.sizes[n]; ++e)
        out.swaps[n][k][e] = e < fs ? f.swaps[n][k][e] : fs + g.swaps[n][k][e - fs];
  }
  validate_species(out);
  return out;
}

// Product: tensor the two bodies and precompose with the window contraction,
// so the carrier at arity n is the induced sum over splittings. The binomial
// convolution of the cardinalities is the acceptance oracle.
inline Species sp_product(const Species& f, const Species& g) {
  if (f.bound != g.bound) throw Error("species product: operands use different bounds");
  const int bound = f.bound;
  auto w = bang_of(one_cat(), bound);
  auto pair = tensor_prof(to_symseq(f).body, to_symseq(g).body);
  auto two = std::static_pointer_cast<const ProductCategory>(pair->cod());
  auto folded = transport_prof(pair, identity_functor(pair->dom()),
                               const_functor(one_cat(), pair->cod(), two->ob_pair(0, 0)));
  auto body = compose_prof(folded, smaps::contraction_raw(one_cat(), bound));
  return from_symseq(make_symseq(one_cat(), one_cat(), bound, body));
}

// Substitution specializes sequence substitution over the point. Exact when
// the inner operand has no constant term; the window truncates block counts
// otherwise.
inline Species sp_substitute(const Species& f, const Species& g) {
  return from_symseq(kleisli_compose(to_symseq(f), to_symseq(g)));
}

// Derivative reserves one input slot; the reserved-slot component of the
// output base is the point, so the codomain folds back to it.
inline Species sp_derivative(const Species& f) {
  SymSeq d = derivative(to_symseq(f));
  auto body = transport_prof(d.body, identity_functor(d.body->dom()),
                             const_functor(one_cat(), d.body->cod(), 0));
  return from_symseq(make_symseq(one_cat(), one_cat(), f.bound, body));
}

// ---------------------------------------------------------------------------
// Exact counting. Coefficients are |F[n]| / n! as exact rationals.

inline std::vector<Rational> egf_coeffs(const Species& sp, int n_max) {
  if (n_max < 0 || n_max > sp.bound) throw BoundError("generating coefficients past the species bound");
  std::vector<Rational> out;
  long long fact = 1;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= n;
    out.emplace_back(sp.sizes[n], fact);
  }
  return out;
}

// Orbit count of the diagonal action on F[n] x X^n summed over arities, by
// the orbit-counting lemma: (1/n!) sum_sigma |Fix(sigma)| x^{cycles(sigma)}.
// Independent of the coend quotient; used as its oracle.
inline long long burnside_count(const Species& sp, int x) {
  if (x < 0) throw Error("carrier size must be nonnegative");
  Rational total(0);
  for (int n = 0; n <= sp.bound; ++n) {
    if (sp.sizes[n] == 0) continue;
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational layer(0);
    do {
      int cycles = 0;
      std::vector<char> seen(n, 0);
      for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = sigma[j]) seen[j] = 1;
      }
      long long fix = 0;
      for (int e = 0; e < sp.sizes[n]; ++e)
        if (apply_perm(sp, n, sigma, e) == e) ++fix;
      long long weight = 1;
      for (int i = 0; i < cycles; ++i) weight *= x;
      layer += Rational(fix * weight);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    total += layer / Rational(fact);
  }
  if (total.denominator() != 1) throw Error("orbit count came out fractional");
  return total.numerator();
}

// Random species: a sum of fixed-point and regular pieces, every piece valid
// by construction. min_arity 1 keeps the constant term empty.
inline Species random_species(int bound, int pieces, int min_arity, Rng& rng) {
  Species out = zero_species(bound);
  for (int i = 0; i < pieces; ++i) {
    int n = min_arity + static_cast<int>(rng.below(bound - min_arity + 1));
    Species piece = rng.below(2) == 0 ? species_en(n, bound) : species_xn(n, bound);
    out = sp_sum(out, piece);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analytic evaluation: FX(b) is the coend over the window of F(b, alpha)
// crossed with one X-value per slot, quotiented by the window generators
// rebalancing between the two factors. Same zig-zag closure as the
// profunctor composite, with the output action inherited from F.

namespace analytic_detail {

struct Slot {
  std::vector<long long> offset;  // per window object; one past the end at the back
  std::vector<int> class_of;
  std::vector<long long> rep;
};

struct EvalData {
  BangPtr w;
  ProfPtr body;
  std::vector<int> xsizes;
  std::vector<long long> xpow;  // product of carrier sizes over the slots
  std::vector<Slot> slots;      // per output object

  long long element(int b, int alpha, int e, long long xcode) const {
    return slots[b].offset[alpha] + static_cast<long long>(e) * xpow[alpha] + xcode;
  }
};

}  // namespace analytic_detail

inline Presheaf eval_analytic(const SymSeq& f, const Presheaf& x) {
  if (x.base->key() != f.dom->key())
    throw ValidationError("presheaf base differs from the sequence domain");
  validate_presheaf(x);
  auto data = std::make_shared<analytic_detail::EvalData>();
  data->w = seq_window_of(f);
  data->body = f.body;
  data->xsizes = x.sizes;
  const BangCategory& w = *data->w;
  const int nw = w.object_count();

  data->xpow.resize(nw);
  for (int o = 0; o < nw; ++o) {
    long long p = 1;
    for (int a : w.seq(o)) p *= x.sizes[a];
    data->xpow[o] = p;
  }

  const Category& cod = *f.cod;
  const int nb = cod.object_count();
  data->slots.resize(nb);
  std::vector<int> out_sizes(nb);

  for (int b = 0; b < nb; ++b) {
    auto& slot = data->slots[b];
    slot.offset.resize(nw + 1);
    long long total = 0;
    for (int o = 0; o < nw; ++o) {
      slot.offset[o] = total;
      total += static_cast<long long>(f.body->cell_size(b, o)) * data->xpow[o];
    }
    slot.offset[nw] = total;
    if (total > 4000000) throw BoundError("presheaf evaluation exceeds the element budget");

    UnionFind uf(static_cast<int>(total));
    std::vector<int> xv, xw;
    for (int o = 0; o < nw; ++o) {
      const auto& src_seq = w.seq(o);
      const int n = static_cast<int>(src_seq.size());
      for (const MorRef& m : w.generators_from(o)) {
        const PermMor& pm = w.perm_mor(m);
        const auto& dst_seq = w.seq(m.dst);
        const int fs = f.body->cell_size(b, o);
        if (fs == 0 || data->xpow[m.dst] == 0) continue;
        for (int e = 0; e < fs; ++e) {
          const int e2 = f.body->ract(m, b, e);
          for (long long code = 0; code < data->xpow[m.dst]; ++code) {
            // Decode over the target, pull each slot value back along the
            // arrow into the source slot it came from.
            xw.assign(n, 0);
            long long rest = code;
            for (int i = n - 1; i >= 0; --i) {
              xw[i] = static_cast<int>(rest % x.sizes[dst_seq[i]]);
              rest /= x.sizes[dst_seq[i]];
            }
            xv.assign(n, 0);
            for (int i = 0; i < n; ++i) xv[i] = x.act(pm.arrows[i], xw[pm.sigma[i]]);
            long long src_code = 0;
            for (int i = 0; i < n; ++i) src_code = src_code * x.sizes[src_seq[i]] + xv[i];
            uf.unite(static_cast<int>(data->element(b, o, e, src_code)),
                     static_cast<int>(data->element(b, m.dst, e2, code)));
          }
        }
      }
    }

    slot.class_of.assign(static_cast<size_t>(total), -1);
    for (long long i = 0; i < total; ++i) {
      int root = uf.find(static_cast<int>(i));
      if (slot.class_of[root] < 0) {
        slot.class_of[root] = static_cast<int>(slot.rep.size());
        slot.rep.push_back(root);
      }
      slot.class_of[i] = slot.class_of[root];
    }
    out_sizes[b] = static_cast<int>(slot.rep.size());
  }

  Presheaf out;
  out.base = f.cod;
  out.sizes = out_sizes;
  out.act = [data](const MorRef& g, int cls) {
    const auto& from = data->slots[g.dst];
    long long r = from.rep[cls];
    int alpha = static_cast<int>(std::upper_bound(from.offset.begin(), from.offset.end(), r) -
                                 from.offset.begin()) - 1;
    long long local = r - from.offset[alpha];
    int e = static_cast<int>(local / data->xpow[alpha]);
    long long xcode = local % data->xpow[alpha];
    int e2 = data->body->lact(g, alpha, e);
    return data->slots[g.src].class_of[data->element(g.src, alpha, e2, xcode)];
  };
  return out;
}

}  // namespace coend
