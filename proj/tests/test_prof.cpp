#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <memory>
#include <vector>

#include "coend/bang.hpp"
#include "coend/iso.hpp"
#include "coend/nat.hpp"
#include "coend/prof.hpp"
#include "oracle.hpp"

using namespace coend;

namespace {

CatPtr one_v() { return view(fincats::one()); }
CatPtr d2_v() { return view(fincats::discrete(2)); }
CatPtr arrow_v() { return view(fincats::walking_arrow()); }
CatPtr bz2_v() { return view(fincats::bz2()); }

// Every inhabited cell of the composite agrees with the brute-force
// partition: equal class counts and mutually refining class maps.
void compare_with_brute(const std::shared_ptr<const ComposeProf>& cp, const ProfPtr& n, const ProfPtr& m) {
  const Category& dom = *cp->dom();
  const Category& cod = *cp->cod();
  for (int a = 0; a < dom.object_count(); ++a)
    for (int c = 0; c < cod.object_count(); ++c) {
      oracle::BruteCoend oc = oracle::brute_coend(*n, *m, c, a);
      REQUIRE(cp->cell_size(c, a) == oc.class_count());
      std::map<int, int> eng_of_root, root_of_eng;
      for (size_t t = 0; t < oc.triples.size(); ++t) {
        auto [b, x, y] = oc.triples[t];
        int root = oc.find((int)t);
        int cls = cp->class_from_triple(c, a, b, x, y);
        auto [it1, fresh1] = eng_of_root.try_emplace(root, cls);
        REQUIRE(it1->second == cls);
        auto [it2, fresh2] = root_of_eng.try_emplace(cls, root);
        REQUIRE(it2->second == root);
      }
    }
}

// Acting through any member of a class gives the same answer as acting
// through the engine's chosen representative.
void check_rep_independence(const std::shared_ptr<const ComposeProf>& cp, const ProfPtr& n, const ProfPtr& m) {
  const Category& dom = *cp->dom();
  const Category& cod = *cp->cod();
  auto cod_gens = cod.all_generators();
  auto dom_gens = dom.all_generators();
  for (int a = 0; a < dom.object_count(); ++a)
    for (int c = 0; c < cod.object_count(); ++c) {
      oracle::BruteCoend oc = oracle::brute_coend(*n, *m, c, a);
      for (const auto& t : oc.triples) {
        auto [b, x, y] = t;
        int cls = cp->class_from_triple(c, a, b, x, y);
        auto rep = cp->rep_triple(c, a, cls);
        REQUIRE(cp->class_from_triple(c, a, rep[0], rep[1], rep[2]) == cls);
        for (const MorRef& g : cod_gens) {
          if (g.dst != c) continue;
          int direct = cp->lact(g, a, cls);
          int via_member = cp->class_from_triple(g.src, a, b, n->lact(g, b, x), y);
          REQUIRE(direct == via_member);
        }
        for (const MorRef& f : dom_gens) {
          if (f.src != a) continue;
          int direct = cp->ract(f, c, cls);
          int via_member = cp->class_from_triple(c, f.dst, b, x, m->ract(f, b, y));
          REQUIRE(direct == via_member);
        }
      }
    }
}

}  // namespace

TEST_CASE("hom profunctor cells are hom sets") {
  auto arr = arrow_v();
  auto h = hom_prof(arr);
  // cell(c, a) = hom(c -> a); the walking arrow has 0 -> 1.
  CHECK(h->cell_size(0, 0) == 1);
  CHECK(h->cell_size(0, 1) == 1);
  CHECK(h->cell_size(1, 0) == 0);
  CHECK(h->cell_size(1, 1) == 1);

  auto b = bz2_v();
  auto hb = hom_prof(b);
  REQUIRE(hb->cell_size(0, 0) == 2);
  // lact precomposes, ract postcomposes; element order follows the table.
  MorRef s{0, 0, 1};
  CHECK(hb->lact(s, 0, 0) == 1);  // id . s = s
  CHECK(hb->lact(s, 0, 1) == 0);  // s . s = id
  CHECK(hb->ract(s, 0, 0) == 1);
  CHECK(hb->ract(s, 0, 1) == 0);
  CHECK(audit_prof(*hb).ok);
}

TEST_CASE("companions and conjoints of the one-element sequence embedding") {
  auto base = one_v();
  auto b1 = bang_of(base, 2);
  auto sing = singleton_functor(b1);

  auto comp = companion(sing);  // cell(q, a) = sequences[q, <a>]
  REQUIRE(comp->dom()->key() == base->key());
  REQUIRE(comp->cod()->key() == b1->key());
  int empty = b1->obj_of_seq({});
  int single = b1->obj_of_seq({0});
  int dbl = b1->obj_of_seq({0, 0});
  CHECK(comp->cell_size(empty, 0) == 0);
  CHECK(comp->cell_size(single, 0) == 1);
  CHECK(comp->cell_size(dbl, 0) == 0);

  auto conj = conjoint(sing);  // cell(a, q) = sequences[<a>, q]
  REQUIRE(conj->dom()->key() == b1->key());
  REQUIRE(conj->cod()->key() == base->key());
  CHECK(conj->cell_size(0, empty) == 0);
  CHECK(conj->cell_size(0, single) == 1);
  CHECK(conj->cell_size(0, dbl) == 0);

  CHECK(audit_prof(*comp).ok);
  CHECK(audit_prof(*conj).ok);
}

TEST_CASE("tensor cells multiply and act componentwise") {
  auto f = hom_prof(arrow_v());
  auto g = hom_prof(bz2_v());
  auto t = tensor_prof(f, g);
  // Product object (c1, c2) with c2 ranging fastest.
  auto pc = t->cod();
  REQUIRE(pc->object_count() == 2);
  CHECK(t->cell_size(0, 0) == 1 * 2);
  CHECK(t->cell_size(1, 0) == 0);
  CHECK(t->cell_size(0, 1) == 1 * 2);
  CHECK(audit_prof(*t).ok);

  // The bz2 generator inside the product acts on the second coordinate only.
  for (const MorRef& m : pc->generators_from(0)) {
    if (pc->mor_label(m).find("s") == std::string::npos) continue;
    CHECK(t->lact(m, 0, 0) == 1);
    CHECK(t->lact(m, 0, 1) == 0);
  }
}

TEST_CASE("sums concatenate cells and keep blocks apart") {
  auto b = bz2_v();
  auto p = hom_prof(b);
  auto z = zero_prof(b, b);
  auto s = sum_prof(p, z);
  CHECK(s->cell_size(0, 0) == 2);
  CHECK(audit_prof(*s).ok);
  auto both = sum_prof(p, p);
  REQUIRE(both->cell_size(0, 0) == 4);
  MorRef sg{0, 0, 1};
  CHECK(both->lact(sg, 0, 0) == 1);
  CHECK(both->lact(sg, 0, 2) == 3);  // second block stays in the second block
  CHECK(audit_prof(*both).ok);

  auto r = iso_check(s, p);
  CHECK(r.status == IsoStatus::Found);
  CHECK(check_iso(r.witness).ok);
}

TEST_CASE("duals flip variance twice to the original") {
  Rng rng(2026);
  auto p = random_prof(arrow_v(), bz2_v(), 3, rng);
  auto dd = dual_prof(dual_prof(p));
  REQUIRE(dd->dom()->key() == p->dom()->key());
  REQUIRE(dd->cod()->key() == p->cod()->key());
  const Category& dom = *p->dom();
  const Category& cod = *p->cod();
  for (int a = 0; a < dom.object_count(); ++a)
    for (int c = 0; c < cod.object_count(); ++c) {
      REQUIRE(dd->cell_size(c, a) == p->cell_size(c, a));
      int n = p->cell_size(c, a);
      for (const MorRef& g : cod.all_generators()) {
        if (g.dst != c) continue;
        for (int e = 0; e < n; ++e) CHECK(dd->lact(g, a, e) == p->lact(g, a, e));
      }
      for (const MorRef& f : dom.all_generators()) {
        if (f.src != a) continue;
        for (int e = 0; e < n; ++e) CHECK(dd->ract(f, c, e) == p->ract(f, c, e));
      }
    }
  CHECK(audit_prof(*dual_prof(p)).ok);
}

TEST_CASE("matrix unit cells are products of hom sets") {
  auto b = bz2_v();
  auto mu = std::make_shared<MatrixUnitProf>(b, b, 0, 0);
  CHECK(mu->cell_size(0, 0) == 4);
  CHECK(audit_prof(*mu).ok);
}

TEST_CASE("coend composite matches the brute-force partition") {
  struct Combo {
    CatPtr a, b, c;
    unsigned seed;
  };
  std::vector<Combo> combos = {
      {one_v(), one_v(), one_v(), 1},
      {arrow_v(), bz2_v(), d2_v(), 2},
      {bz2_v(), arrow_v(), one_v(), 3},
      {d2_v(), d2_v(), arrow_v(), 4},
      {arrow_v(), bang_of(d2_v(), 2), bz2_v(), 5},
  };
  for (const auto& combo : combos) {
    for (unsigned round = 0; round < 3; ++round) {
      Rng rng(combo.seed * 100 + round);
      auto m = random_prof(combo.a, combo.b, 2 + (int)(round % 2), rng);
      auto n = random_prof(combo.b, combo.c, 2, rng);
      auto cp = compose2(n, m);
      compare_with_brute(cp, n, m);
      check_rep_independence(cp, n, m);
      CHECK(audit_prof(*cp).ok);
    }
  }
}

TEST_CASE("composite through sequence windows hits the embedded diagonal") {
  auto base = one_v();
  auto b1 = bang_of(base, 3);
  auto sing = singleton_functor(b1);
  auto into = companion(sing);   // point -> sequences
  auto outof = conjoint(sing);   // sequences -> point
  auto cp = compose2(outof, into);
  REQUIRE(cp->cell_size(0, 0) == 1);
  compare_with_brute(cp, outof, into);
  check_rep_independence(cp, outof, into);
  CHECK(audit_prof(*cp).ok);
}

TEST_CASE("unit collapses are natural isomorphisms") {
  Rng rng(7);
  auto p = random_prof(arrow_v(), bz2_v(), 3, rng);

  auto lc = unit_left_collapse(p);
  auto li = unit_left_insert(p);
  CHECK(check_iso(lc).ok);
  CHECK(check_iso(li).ok);
  auto lroundtrip = vertical(lc, li);
  auto lother = vertical(li, lc);

  auto rc = unit_right_collapse(p);
  auto ri = unit_right_insert(p);
  CHECK(check_iso(rc).ok);
  CHECK(check_iso(ri).ok);
  auto rroundtrip = vertical(rc, ri);
  auto rother = vertical(ri, rc);

  const Category& dom = *p->dom();
  const Category& cod = *p->cod();
  for (int a = 0; a < dom.object_count(); ++a)
    for (int c = 0; c < cod.object_count(); ++c) {
      for (int e = 0; e < p->cell_size(c, a); ++e) {
        CHECK(lroundtrip.map(c, a, e) == e);
        CHECK(rroundtrip.map(c, a, e) == e);
      }
      for (int e = 0; e < lother.src->cell_size(c, a); ++e) CHECK(lother.map(c, a, e) == e);
      for (int e = 0; e < rother.src->cell_size(c, a); ++e) CHECK(rother.map(c, a, e) == e);
    }
}

TEST_CASE("associator is a natural isomorphism") {
  Rng rng(11);
  auto f = random_prof(one_v(), arrow_v(), 2, rng);
  auto g = random_prof(arrow_v(), bz2_v(), 2, rng);
  auto h = random_prof(bz2_v(), d2_v(), 2, rng);
  auto al = assoc_left(h, g, f);
  CHECK(check_iso(al).ok);
  auto inv = invert(al);
  CHECK(check_iso(inv).ok);
}

TEST_CASE("whiskering preserves naturality") {
  Rng rng(13);
  auto f = random_prof(arrow_v(), bz2_v(), 2, rng);
  auto h = random_prof(bz2_v(), d2_v(), 2, rng);

  auto t = unit_left_collapse(f);  // (1 o f) => f
  auto wt = whisker_outer(h, t);
  CHECK(check_natural(wt).ok);
  CHECK(check_bijective(wt).ok);

  auto s = unit_right_collapse(h);  // (h o 1) => h
  auto ws = whisker_inner(s, f);
  CHECK(check_natural(ws).ok);
  CHECK(check_bijective(ws).ok);
}

TEST_CASE("composition distributes over sums and kills zero") {
  Rng rng(17);
  auto m1 = random_prof(arrow_v(), bz2_v(), 2, rng);
  auto m2 = random_prof(arrow_v(), bz2_v(), 2, rng);
  auto n = random_prof(bz2_v(), d2_v(), 2, rng);

  auto lhs = compose_prof(n, sum_prof(m1, m2));
  auto rhs = sum_prof(compose_prof(n, m1), compose_prof(n, m2));
  auto r = iso_check(lhs, rhs);
  REQUIRE(r.status == IsoStatus::Found);
  CHECK(check_iso(r.witness).ok);

  auto z = compose_prof(n, zero_prof(arrow_v(), bz2_v()));
  for (int a = 0; a < z->dom()->object_count(); ++a)
    for (int c = 0; c < z->cod()->object_count(); ++c) CHECK(z->cell_size(c, a) == 0);
}

TEST_CASE("audits accept lawful constructions and flag seeded corruption") {
  auto b = bz2_v();
  auto p = hom_prof(b);
  REQUIRE(audit_prof(*p).ok);

  // Redirect one action entry; the composite-action audit must notice.
  Mutation mut;
  mut.on_lact = true;
  mut.mor = MorRef{0, 0, 1};  // the involution
  mut.other = 0;
  mut.elem = 0;
  mut.value = 0;  // was 1
  auto bad = std::make_shared<MutatedProf>(p, mut);
  auto rep = audit_prof(*bad);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.detail.empty());

  // Corrupting an identity action is caught by the identity sweep.
  Mutation mut2;
  mut2.on_lact = false;
  mut2.mor = MorRef{0, 0, 0};  // identity
  mut2.other = 0;
  mut2.elem = 1;
  mut2.value = 0;
  auto bad2 = std::make_shared<MutatedProf>(p, mut2);
  CHECK_FALSE(audit_prof(*bad2).ok);
}

TEST_CASE("transport restricts along functors on both sides") {
  auto d2 = d2_v();
  auto h = hom_prof(d2);
  // Swap the two objects on the domain side only: cell(c, a) = hom(c, swap a).
  std::vector<int> ob{1, 0};
  std::vector<int> mor{1, 0};
  FinFunctor sw{fincats::discrete(2), fincats::discrete(2), ob, mor};
  REQUIRE_NOTHROW(sw.validate());
  auto t = transport_prof(h, lift(sw), identity_functor(d2));
  CHECK(t->cell_size(0, 0) == 0);
  CHECK(t->cell_size(0, 1) == 1);
  CHECK(t->cell_size(1, 0) == 1);
  CHECK(t->cell_size(1, 1) == 0);
  CHECK(audit_prof(*t).ok);
}

TEST_CASE("isomorphism search distinguishes action structure at equal sizes") {
  auto one = one_v();
  auto b = bz2_v();
  // Two elements swapped by the involution...
  auto swapped = companion(const_functor(one, b, 0));
  // ...against two elements fixed by it.
  auto fixed = sum_prof(std::make_shared<ConstOneProf>(one, b), std::make_shared<ConstOneProf>(one, b));
  REQUIRE(audit_prof(*swapped).ok);
  REQUIRE(audit_prof(*fixed).ok);
  REQUIRE(swapped->cell_size(0, 0) == fixed->cell_size(0, 0));

  auto r = iso_check(swapped, fixed);
  CHECK(r.status == IsoStatus::None);

  auto same = iso_check(swapped, companion(const_functor(one, b, 0)));
  REQUIRE(same.status == IsoStatus::Found);
  CHECK(check_iso(same.witness).ok);
}

TEST_CASE("search budget exhaustion is reported, not guessed") {
  auto p = hom_prof(bz2_v());
  auto r = iso_check(p, p, 1);
  CHECK(r.status == IsoStatus::Budget);
  CHECK(r.nodes > 1);
}
