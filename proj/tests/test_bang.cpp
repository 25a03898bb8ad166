#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "check.hpp"
#include "coend/bang.hpp"
#include "coend/fincat.hpp"
#include "oracle.hpp"

using namespace coend;

TEST_CASE("sequence windows have the expected sizes") {
  REQUIRE(bang_of(view(fincats::discrete(2)), 2)->object_count() == 7);
  REQUIRE(bang_of(view(fincats::one()), 3)->object_count() == 4);
  REQUIRE(bang_of(view(fincats::zero()), 2)->object_count() == 1);
  REQUIRE(bang_of(view(fincats::zero()), 0)->object_count() == 1);

  // Iterated window: entries weigh as much as the sequences they name.
  auto b = bang_of(view(fincats::walking_arrow()), 2);
  REQUIRE(bang_of(b, 2)->object_count() == 25);
}

TEST_CASE("window enumeration is length-first and matches the brute force") {
  for (const auto& fc : fincats::test_family()) {
    auto b = bang_of(view(fc), 2);
    auto want = oracle::seq_window(*fc, 2);
    std::set<std::vector<int>> got;
    std::size_t prev_len = 0;
    for (int o = 0; o < b->object_count(); ++o) {
      REQUIRE(b->seq(o).size() >= prev_len);
      prev_len = b->seq(o).size();
      got.insert(b->seq(o));
      REQUIRE(b->obj_of_seq(b->seq(o)) == o);
    }
    REQUIRE(got == want);
  }
}

TEST_CASE("hom-set sizes match the brute-force count") {
  for (const auto& fc : fincats::test_family()) {
    auto b = bang_of(view(fc), 2);
    for (int x = 0; x < b->object_count(); ++x)
      for (int y = 0; y < b->object_count(); ++y)
        REQUIRE(b->hom_size(x, y) == oracle::seq_hom_count(*fc, b->seq(x), b->seq(y)));
  }
  auto b1 = bang_of(view(fincats::one()), 3);
  int o3 = b1->obj_of_seq({0, 0, 0});
  REQUIRE(b1->hom_size(o3, o3) == 6);
}

TEST_CASE("repeated entries induce exactly the compatible permutations") {
  auto b = bang_of(view(fincats::discrete(2)), 3);
  int x = b->obj_of_seq({0, 0, 1});
  int y = b->obj_of_seq({0, 1, 0});
  REQUIRE(b->hom_size(x, y) == 2);
  REQUIRE(b->hom_size(x, b->obj_of_seq({1, 1, 0})) == 0);
}

TEST_CASE("sequence categories satisfy the category laws") {
  for (const auto& fc : fincats::test_family()) {
    auto b = bang_of(view(fc), 2);
    check::category_laws(*b);
    check::factorization(*b);
  }
  auto b1 = bang_of(view(fincats::one()), 3);
  check::category_laws(*b1);
  check::factorization(*b1);
}

TEST_CASE("adjacent transpositions square to the identity and braid") {
  auto b = bang_of(view(fincats::one()), 3);
  int o = b->obj_of_seq({0, 0, 0});
  auto gens = b->generators_from(o);
  REQUIRE(gens.size() == 2);
  MorRef t0 = gens[0], t1 = gens[1];
  REQUIRE(b->compose(t0, t0) == b->identity(o));
  REQUIRE(b->compose(t1, t1) == b->identity(o));
  REQUIRE(b->compose(t0, b->compose(t1, t0)) == b->compose(t1, b->compose(t0, t1)));
}

TEST_CASE("singleton objects outside the window raise bound errors") {
  auto b0 = bang_of(view(fincats::one()), 0);
  REQUIRE(b0->try_obj_of_seq({0}) == -1);
  REQUIRE_THROWS_AS(b0->obj_of_seq({0}), BoundError);
}

TEST_CASE("morphism concatenation and block permutations behave") {
  auto b = bang_of(view(fincats::walking_arrow()), 3);
  int x = b->obj_of_seq({0});
  int y = b->obj_of_seq({1, 0});
  REQUIRE(b->mor_concat(b->identity(x), b->identity(y)) == b->identity(b->obj_of_seq({0, 1, 0})));

  // Swapping two blocks twice is the identity.
  MorRef fwd = b->block_perm({x, y}, {1, 0});
  REQUIRE(fwd.src == b->obj_of_seq({0, 1, 0}));
  REQUIRE(fwd.dst == b->obj_of_seq({1, 0, 0}));
  MorRef bwd = b->block_perm({y, x}, {1, 0});
  REQUIRE(b->compose(bwd, fwd) == b->identity(fwd.src));

  // Trivial placement is the identity.
  REQUIRE(b->block_perm({x, y}, {0, 1}) == b->identity(b->obj_of_seq({0, 1, 0})));
}

TEST_CASE("sequence-level functors pass the exhaustive audit") {
  auto a = view(fincats::walking_arrow());
  auto b = bang_of(a, 2);
  validate_functor(singleton_functor(b));

  auto bb = bang_of(b, 2);
  validate_functor(flatten_functor(bb, b));

  FinFunctor collapse{fincats::walking_arrow(), fincats::one(), {0, 0}, {0, 0, 0}};
  auto lifted = lift(collapse);
  auto b1 = bang_of(lifted.cod, 2);
  auto bx = bang_of(lifted.dom, 2);
  validate_functor(bang_functor(lifted, bx, b1));
}

TEST_CASE("flatten concatenates entries in order") {
  auto a = view(fincats::walking_arrow());
  auto b = bang_of(a, 3);
  auto bb = bang_of(b, 3);
  auto fl = flatten_functor(bb, b);
  int phi = bb->obj_of_seq({b->obj_of_seq({0, 1}), b->obj_of_seq({}), b->obj_of_seq({1})});
  REQUIRE(fl.ob(phi) == b->obj_of_seq({0, 1, 1}));
}
