// Structural transformations: hom-formula cells frozen against hand counts,
// composite-agreement cross-checks, and functoriality audits.
#include <catch2/catch_amalgamated.hpp>

#include "coend/nat.hpp"
#include "coend/structmaps.hpp"

using namespace coend;

namespace {

CatPtr d2_v() { return view(fincats::discrete(2)); }
CatPtr bz2_v() { return view(fincats::bz2()); }

void require_lawful(const ProfPtr& p) {
  auto rep = audit_prof(*p);
  INFO(rep.detail);
  REQUIRE(rep.ok);
}

}  // namespace

TEST_CASE("singleton extraction cells match sequence homs") {
  auto a = bz2_v();
  auto b = bang_of(a, 3);
  auto d = dereliction(a, 3);
  REQUIRE(d->dom()->key() == b->key());
  REQUIRE(d->cod()->key() == a->key());
  // <x> -> <x>: one permutation, two entry arrows.
  REQUIRE(d->cell_size(0, b->obj_of_seq({0})) == 2);
  // length mismatch is empty
  REQUIRE(d->cell_size(0, b->obj_of_seq({0, 0})) == 0);
  REQUIRE(d->cell_size(0, b->obj_of_seq({})) == 0);
  auto db = codereliction(a, 3);
  REQUIRE(db->cell_size(b->obj_of_seq({0}), 0) == 2);
  REQUIRE(db->cell_size(b->obj_of_seq({}), 0) == 0);
  require_lawful(d);
  require_lawful(db);
}

TEST_CASE("promotion cells count flattening-compatible maps") {
  auto one = one_cat();
  auto b1 = bang_of(one, 3);
  auto bb1 = bang_of(b1, 3);
  auto p = promotion(one, 3);
  int phi = bb1->obj_of_seq({b1->obj_of_seq({0}), b1->obj_of_seq({0})});
  // flatten <<*>,<*>> = <*,*>; two permutations of the target.
  REQUIRE(p->cell_size(phi, b1->obj_of_seq({0, 0})) == 2);
  REQUIRE(p->cell_size(phi, b1->obj_of_seq({0})) == 0);

  // Group base: entry arrows multiply the count.
  auto a = bz2_v();
  auto b = bang_of(a, 3);
  auto bb = bang_of(b, 3);
  auto pg = promotion(a, 3);
  int phig = bb->obj_of_seq({b->obj_of_seq({0}), b->obj_of_seq({0})});
  // <x,x> -> <x,x> has |S2| x |Z2|^2 = 8 maps.
  REQUIRE(pg->cell_size(phig, b->obj_of_seq({0, 0})) == 8);
  require_lawful(p);
  require_lawful(pg);
}

TEST_CASE("sequenced extraction and flattening act on double sequences") {
  auto one = one_cat();
  auto b1 = bang_of(one, 3);
  auto bb1 = bang_of(b1, 3);
  auto bd = bang_derel(one, 3);
  int al1 = b1->obj_of_seq({0});
  int al2 = b1->obj_of_seq({0, 0});
  // entrywise singleton of <*> is <<*>>.
  REQUIRE(bd->cell_size(al1, bb1->obj_of_seq({al1})) == 1);
  REQUIRE(bd->cell_size(al2, bb1->obj_of_seq({al1, al1})) == 2);
  // <*,*> maps to <<*,*>>, not to <<*>,<*>>: no cross-length cells.
  REQUIRE(bd->cell_size(al2, bb1->obj_of_seq({al2})) == 0);
  auto bp = bang_promote(one, 3);
  REQUIRE(bp->dom()->key() == bb1->key());
  REQUIRE(bp->cod()->key() == bang_of(bb1, 3)->key());
  require_lawful(bd);
  // The triple-sequence window at bound 3 makes an exhaustive audit too
  // large; the same map is audited on the bound-2 window.
  require_lawful(bang_promote(one, 2));
}

TEST_CASE("binary comparison map pairs up projection homs") {
  auto one = one_cat();
  auto b1 = bang_of(one, 3);
  auto m = mon2(one, one, 3);
  auto p11 = product_of(one, one);
  auto bp = bang_of(CatPtr(p11), 3);
  auto dom2 = product_of(b1, b1);
  int al2 = b1->obj_of_seq({0, 0});
  int g2 = bp->obj_of_seq({p11->ob_pair(0, 0), p11->ob_pair(0, 0)});
  // both projections give <*,*> -> <*,*>: 2 x 2 permutations.
  REQUIRE(m->cell_size(g2, dom2->ob_pair(al2, al2)) == 4);
  // projection lengths must match both components.
  REQUIRE(m->cell_size(g2, dom2->ob_pair(al2, b1->obj_of_seq({0}))) == 0);
  require_lawful(m);

  // Mixed bases: a pair sequence projects to unequal component sequences.
  auto d2 = d2_v();
  auto md = mon2(one, d2, 3);
  auto based = product_of(one, d2);
  auto bpd = bang_of(CatPtr(based), 3);
  auto bd2 = bang_of(d2, 3);
  int gm = bpd->obj_of_seq({based->ob_pair(0, 0), based->ob_pair(0, 1)});
  int am = product_of(b1, bd2)->ob_pair(al2, bd2->obj_of_seq({0, 1}));
  // second projection <0,1> -> <0,1> admits only the identity permutation.
  REQUIRE(md->cell_size(gm, am) == 2);
  require_lawful(md);
}

TEST_CASE("unit comparison map satisfies the lax unit triangle") {
  auto m0 = mon0(3);
  auto b1 = bang_of(one_cat(), 3);
  for (int g = 0; g < b1->object_count(); ++g) REQUIRE(m0->cell_size(g, 0) == 1);
  require_lawful(m0);
}

TEST_CASE("sequence splitting and merging cells") {
  auto d2 = d2_v();
  auto b = bang_of(d2, 3);
  auto dom2 = product_of(b, b);
  auto c = contraction(d2, 3);
  int sx = b->obj_of_seq({0}), sy = b->obj_of_seq({1});
  int xy = b->obj_of_seq({0, 1});
  // <x> # <y> = <x,y>; over a discrete base only the identity permutation.
  REQUIRE(c->cell_size(dom2->ob_pair(sx, sy), xy) == 1);
  // target <y,x> is reached by the swap permutation.
  REQUIRE(c->cell_size(dom2->ob_pair(sx, sy), b->obj_of_seq({1, 0})) == 1);
  REQUIRE(c->cell_size(dom2->ob_pair(sx, sx), xy) == 0);
  auto cb = cocontraction(d2, 3);
  REQUIRE(cb->cell_size(xy, dom2->ob_pair(sx, sy)) == 1);
  require_lawful(c);
  require_lawful(cb);

  auto w = weakening(d2, 3);
  auto wb = coweakening(d2, 3);
  REQUIRE(w->cell_size(0, b->obj_of_seq({})) == 1);
  REQUIRE(w->cell_size(0, sx) == 0);
  REQUIRE(wb->cell_size(b->obj_of_seq({}), 0) == 1);
  REQUIRE(wb->cell_size(sx, 0) == 0);
  require_lawful(w);
  require_lawful(wb);
}

TEST_CASE("splitting constructors agree with their composite definitions") {
  // The constructors cross-check the hom formula against the defining
  // composite on enumerable bases and throw on mismatch.
  REQUIRE_NOTHROW(contraction(one_cat(), 3));
  REQUIRE_NOTHROW(cocontraction(bz2_v(), 3));
  REQUIRE_NOTHROW(weakening(bz2_v(), 3));
  REQUIRE_NOTHROW(coweakening(d2_v(), 3));
}

TEST_CASE("storage comparison matches its one-hom form") {
  auto fo = fincats::one();
  auto s2 = seely2(fo, fo, 3);
  auto s2d = seely2_direct(fo, fo, 3);
  auto r = iso_check(s2, s2d);
  REQUIRE(r.status == IsoStatus::Found);
  auto back = check_iso(r.witness);
  INFO(back.detail);
  REQUIRE(back.ok);
  require_lawful(s2d);
}

TEST_CASE("storage comparison splits sequences reversibly on the unit base") {
  auto fo = fincats::one();
  auto s2 = seely2(fo, fo, 3);
  auto s2i = seely2_inv(fo, fo, 3);

  // Tensor side: cells whose two components together overflow the window are
  // truncated to empty, so the identity comparison runs on the subwindow of
  // pairs with total weight within the bound.
  auto round = compose_prof(s2i, s2);
  auto dom2 = std::dynamic_pointer_cast<const ProductCategory>(s2->dom());
  REQUIRE(dom2);
  std::vector<int> safe;
  for (int o = 0; o < dom2->object_count(); ++o) {
    auto [x, y] = dom2->ob_split(o);
    if (dom2->left()->weight(x) + dom2->right()->weight(y) <= 3) safe.push_back(o);
  }
  auto sub = restrict_window(s2->dom(), safe);
  auto incl = inclusion_functor(sub);
  auto r = iso_check(transport_prof(round, incl, incl), hom_prof(sub));
  REQUIRE(r.status == IsoStatus::Found);
  auto back = check_iso(r.witness);
  INFO(back.detail);
  REQUIRE(back.ok);

  // Outside the window the truncated composite is empty, never fabricated.
  auto b1 = bang_of(one_cat(), 3);
  int big = dom2->ob_pair(b1->obj_of_seq({0, 0, 0}), b1->obj_of_seq({0}));
  REQUIRE(round->cell_size(big, big) == 0);

  // Mixed-sequence side: every sequence splits within the window, so the
  // other roundtrip is an equivalence on the whole window.
  auto round2 = compose_prof(s2, s2i);
  auto r2 = iso_check(round2, hom_prof(s2->cod()));
  REQUIRE(r2.status == IsoStatus::Found);
  auto back2 = check_iso(r2.witness);
  INFO(back2.detail);
  REQUIRE(back2.ok);
}

TEST_CASE("empty-base storage equivalence is invertible") {
  auto s0 = seely0(3);
  auto s0i = seely0_inv(3);
  auto r1 = iso_check(compose_prof(s0i, s0), hom_prof(one_cat()));
  REQUIRE(r1.status == IsoStatus::Found);
  auto r2 = iso_check(compose_prof(s0, s0i), hom_prof(s0->cod()));
  REQUIRE(r2.status == IsoStatus::Found);
}

TEST_CASE("structural map registry builds every named map") {
  auto fa = fincats::discrete(2);
  for (const auto& name : structural_map_names()) {
    auto sm = structural_map(name, fa, nullptr, 2);
    REQUIRE(sm.realized != nullptr);
    REQUIRE(sm.name == name);
    REQUIRE_FALSE(sm.shape.empty());
  }
  REQUIRE_THROWS_AS(structural_map("unknown-map", fa, nullptr, 2), Error);
  REQUIRE_THROWS_AS(structural_map("dereliction", nullptr, nullptr, 2), Error);
  // Two-base maps accept distinct bases.
  auto sm = structural_map("seely2", fincats::one(), fa, 2);
  REQUIRE(sm.realized->cod()->object_count() > 0);
}
