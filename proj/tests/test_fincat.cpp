#include <catch2/catch_amalgamated.hpp>

#include "check.hpp"
#include "coend/category.hpp"
#include "coend/fincat.hpp"

using namespace coend;

TEST_CASE("builtin categories have the expected shapes") {
  REQUIRE(fincats::zero()->object_count() == 0);
  REQUIRE(fincats::one()->object_count() == 1);
  REQUIRE(fincats::one()->mor_count() == 1);
  REQUIRE(fincats::discrete(3)->mor_count() == 3);

  auto arrow = fincats::walking_arrow();
  REQUIRE(arrow->object_count() == 2);
  REQUIRE(arrow->mor_count() == 3);
  REQUIRE(arrow->hom(0, 1).size() == 1);
  REQUIRE(arrow->hom(1, 0).empty());

  auto z2 = fincats::bz2();
  REQUIRE(z2->mor_count() == 2);
  int s = z2->hom(0, 0)[1];
  REQUIRE(z2->compose(s, s) == z2->identity(0));
}

TEST_CASE("keys identify tables and ignore labels") {
  auto a = FinCat::make("left", {"p"}, {{0, 0, "e"}}, {0}, {0});
  auto b = FinCat::make("right", {"q"}, {{0, 0, "u"}}, {0}, {0});
  REQUIRE(a.key() == b.key());
  REQUIRE(a.key() != fincats::bz2()->key());
}

TEST_CASE("structure audit rejects broken tables") {
  // Identity entry that is not an endomorphism of its object.
  REQUIRE_THROWS_AS(FinCat::make("bad", {"a", "b"},
                                 {{0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "f"}},
                                 {0, 2},
                                 {0, -1, -1, -1, 1, 2, 2, -1, -1}),
                    ValidationError);
  // Left identity law broken: id.e retables to id.
  REQUIRE_THROWS_AS(FinCat::make("bad", {"x"},
                                 {{0, 0, "id"}, {0, 0, "e"}},
                                 {0},
                                 {0, 0, 1, 0}),
                    ValidationError);
  // Associativity broken: a.a=b, a.b=id, b.a=a, b.b=id gives (a.a).a != a.(a.a).
  REQUIRE_THROWS_AS(FinCat::make("bad", {"x"},
                                 {{0, 0, "id"}, {0, 0, "a"}, {0, 0, "b"}},
                                 {0},
                                 {0, 1, 2,
                                  1, 2, 0,
                                  2, 1, 0}),
                    ValidationError);
  // Composite defined for a non-chaining pair.
  REQUIRE_THROWS_AS(FinCat::make("bad", {"a", "b"},
                                 {{0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "f"}},
                                 {0, 1},
                                 {0, -1, -1, 2, 1, 2, 2, -1, -1}),
                    ValidationError);
}

TEST_CASE("table product and coproduct have the expected sizes") {
  auto arrow = fincats::walking_arrow();
  auto p = product(*arrow, *arrow);
  REQUIRE(p.object_count() == 4);
  REQUIRE(p.mor_count() == 9);

  auto c = coproduct(*fincats::bz2(), *fincats::one());
  REQUIRE(c.object_count() == 2);
  REQUIRE(c.mor_count() == 3);
  // No cross morphisms between the summands.
  REQUIRE(c.hom(0, 1).empty());
  REQUIRE(c.hom(1, 0).empty());
}

TEST_CASE("table opposite reverses hom-sets") {
  auto arrow = fincats::walking_arrow();
  auto op = opposite(*arrow);
  REQUIRE(op.hom(0, 1).empty());
  REQUIRE(op.hom(1, 0).size() == 1);
  // Opposite of the opposite restores the original tables.
  REQUIRE(opposite(op).key() == arrow->key());
}

TEST_CASE("finite functor audit accepts collapse and rejects identity breakage") {
  auto arrow = fincats::walking_arrow();
  FinFunctor collapse{arrow, fincats::one(), {0, 0}, {0, 0, 0}};
  REQUIRE_NOTHROW(collapse.validate());

  // id_a sent to the symmetry breaks the identity law.
  FinFunctor bad{arrow, fincats::bz2(), {0, 0}, {1, 0, 0}};
  REQUIRE_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("category views satisfy the laws") {
  for (const auto& fc : fincats::test_family()) {
    auto v = view(fc);
    check::category_laws(*v);
    check::factorization(*v);
  }
}

TEST_CASE("view round-trips global morphism ids") {
  auto arrow = fincats::walking_arrow();
  auto v = std::make_shared<FinCatView>(arrow);
  for (int m = 0; m < arrow->mor_count(); ++m) REQUIRE(v->global(v->from_global(m)) == m);
  auto gens = v->generators_from(0);
  REQUIRE(gens.size() == 1);
  REQUIRE(v->global(gens[0]) == 2);
}

TEST_CASE("opposite view composes backwards and normalizes double flips") {
  auto v = view(fincats::walking_arrow());
  auto ov = opposite_of(v);
  REQUIRE(ov->hom_size(1, 0) == 1);
  REQUIRE(ov->hom_size(0, 1) == 0);
  check::category_laws(*ov);
  check::factorization(*ov);
  REQUIRE(opposite_of(ov)->key() == v->key());

  auto oz2 = opposite_of(view(fincats::bz2()));
  check::category_laws(*oz2);
}

TEST_CASE("product view satisfies the laws and splits correctly") {
  auto a = view(fincats::walking_arrow());
  auto b = view(fincats::bz2());
  auto p = product_of(a, b);
  REQUIRE(p->object_count() == 2);
  REQUIRE(p->hom_size(p->ob_pair(0, 0), p->ob_pair(1, 0)) == 2);
  check::category_laws(*p);
  check::factorization(*p);

  for (int x = 0; x < p->object_count(); ++x)
    for (int y = 0; y < p->object_count(); ++y)
      for (int i = 0; i < p->hom_size(x, y); ++i) {
        MorRef m{x, y, i};
        auto [f, g] = p->mor_split(m);
        REQUIRE(p->mor_pair(f, g) == m);
      }
}

TEST_CASE("standard functors pass the exhaustive audit") {
  auto a = view(fincats::walking_arrow());
  auto b = view(fincats::bz2());
  auto ab = product_of(a, b);
  auto ba = product_of(b, a);

  validate_functor(identity_functor(a));
  validate_functor(proj1_functor(ab));
  validate_functor(proj2_functor(ab));
  validate_functor(swap_functor(ab, ba));
  validate_functor(pair_functor(ab, proj1_functor(ab), proj2_functor(ab)));

  auto ia = product_of(one_cat(), a);
  auto ai = product_of(a, one_cat());
  validate_functor(lunit_functor(ia));
  validate_functor(lunit_inv_functor(ia));
  validate_functor(runit_functor(ai));
  validate_functor(runit_inv_functor(ai));

  auto ab_c = product_of(ab, b);
  auto a_bc = product_of(a, product_of(b, b));
  validate_functor(assoc_functor(ab_c, a_bc));

  FinFunctor collapse{fincats::walking_arrow(), fincats::one(), {0, 0}, {0, 0, 0}};
  validate_functor(lift(collapse));
}

TEST_CASE("pair functor rejects mismatched shapes") {
  auto a = view(fincats::walking_arrow());
  auto b = view(fincats::bz2());
  auto ab = product_of(a, b);
  REQUIRE_THROWS_AS(pair_functor(ab, identity_functor(a), identity_functor(a)), Error);
  REQUIRE_THROWS_AS(compose_functors(identity_functor(a), identity_functor(b)), Error);
}
