// Presheaf evaluation and the species layer: quotient counts against the
// orbit-counting oracle, exact generating coefficients, and the calculus
// rules at desk-size arities.
#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>

#include "coend/analytic.hpp"
#include "coend/nat.hpp"

using namespace coend;

namespace {

void require_lawful(const ProfPtr& p) {
  auto rep = audit_prof(*p);
  INFO(rep.detail);
  REQUIRE(rep.ok);
}

void require_equiv(const ProfPtr& l, const ProfPtr& r) {
  auto res = iso_check(l, r);
  INFO(res.detail);
  REQUIRE(res.status == IsoStatus::Found);
  auto back = check_iso(res.witness);
  INFO(back.detail);
  REQUIRE(back.ok);
}

// Two-element presheaf on the one-generator involution base, the generator
// swapping the elements.
Presheaf flip_presheaf() {
  auto base = view(fincats::bz2());
  return make_presheaf(base, {2}, [base](const MorRef& f, int e) {
    return base->is_identity(f) ? e : 1 - e;
  });
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

}  // namespace

TEST_CASE("presheaf validation accepts lawful actions and rejects broken ones") {
  auto arrow = view(fincats::walking_arrow());
  REQUIRE_NOTHROW(const_presheaf(arrow, 3));
  REQUIRE_NOTHROW(flip_presheaf());

  auto bz2 = view(fincats::bz2());
  // Collapsing action: composition of the involution with itself must give
  // the identity action, and a constant map cannot.
  REQUIRE_THROWS_AS(make_presheaf(bz2, {2},
                                  [bz2](const MorRef& f, int e) {
                                    return bz2->is_identity(f) ? e : 0;
                                  }),
                    ValidationError);
  // Out-of-range value.
  REQUIRE_THROWS_AS(make_presheaf(arrow, {1, 1}, [](const MorRef&, int) { return 7; }),
                    ValidationError);
}

TEST_CASE("species validation enforces the permutation relations") {
  REQUIRE_NOTHROW(species_xn(3, 3));
  REQUIRE_NOTHROW(species_e(4));

  // Non-involutive table.
  {
    std::vector<int> sizes{0, 0, 3, 0};
    auto swaps = std::vector<std::vector<std::vector<int>>>(4);
    swaps[2] = {{1, 2, 0}};
    swaps[3] = {{}, {}};
    REQUIRE_THROWS_AS(make_species(3, sizes, swaps), ValidationError);
  }
  // Involutions that break the braid relation: one slot swap acts, the
  // neighboring one does not.
  {
    std::vector<int> sizes{0, 0, 0, 2};
    auto swaps = std::vector<std::vector<std::vector<int>>>(4);
    swaps[2] = {std::vector<int>{}};
    swaps[3] = {{1, 0}, {0, 1}};
    REQUIRE_THROWS_AS(make_species(3, sizes, swaps), ValidationError);
  }
}

TEST_CASE("species and window presentations carry the same data") {
  Rng rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    auto sp = random_species(3, 3, 0, rng);
    auto back = from_symseq(to_symseq(sp));
    REQUIRE(species_equal(sp, back));
  }

  // Starting from a window body: round-trip preserves every cell and every
  // covariant action.
  auto w = bang_of(one_cat(), 3);
  auto body = random_prof(w, one_cat(), 3, rng);
  auto sp = from_symseq(make_symseq(one_cat(), one_cat(), 3, body));
  auto again = to_symseq(sp).body;
  require_lawful(again);
  for (int x = 0; x < w->object_count(); ++x)
    for (int y = 0; y < w->object_count(); ++y)
      for (int i = 0; i < w->hom_size(x, y); ++i) {
        MorRef m{x, y, i};
        REQUIRE(body->cell_size(0, x) == again->cell_size(0, x));
        for (int e = 0; e < body->cell_size(0, x); ++e)
          REQUIRE(body->ract(m, 0, e) == again->ract(m, 0, e));
      }
}

TEST_CASE("table application of a whole permutation matches the window action") {
  Rng rng(22);
  auto sp = random_species(3, 3, 0, rng);
  auto s = to_symseq(sp);
  auto w = seq_window_of(s);
  int o3 = w->obj_of_seq({0, 0, 0});
  std::vector<int> sigma{0, 1, 2};
  do {
    PermMor pm;
    pm.sigma = sigma;
    pm.arrows.assign(3, one_cat()->identity(0));
    MorRef m = w->mor_of(o3, o3, pm);
    for (int e = 0; e < sp.sizes[3]; ++e)
      REQUIRE(apply_perm(sp, 3, sigma, e) == s.body->ract(m, 0, e));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("evaluating the pair species counts multisets") {
  // Brute-force oracle: orbits of ordered pairs over a 3-element carrier
  // under the slot swap.
  std::set<std::pair<int, int>> orbits;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) orbits.insert({std::min(i, j), std::max(i, j)});
  REQUIRE(orbits.size() == 6);

  auto fx = eval_analytic(to_symseq(species_en(2, 2)), const_presheaf(one_cat(), 3));
  REQUIRE(fx.sizes == std::vector<int>{6});
}

TEST_CASE("evaluating the singleton extraction gives back the carrier") {
  auto one = one_cat();
  auto fx = eval_analytic(kleisli_id(one, 3), const_presheaf(one, 3));
  REQUIRE(fx.sizes == std::vector<int>{3});

  auto x2 = flip_presheaf();
  auto fx2 = eval_analytic(kleisli_id(x2.base, 2), x2);
  validate_presheaf(fx2);
  require_equiv(presheaf_prof(fx2, "eval"), presheaf_prof(x2, "flip"));

  auto arrow = view(fincats::walking_arrow());
  auto x3 = make_presheaf(arrow, {2, 1}, [arrow](const MorRef& f, int e) {
    return f.src == f.dst ? e : 1;
  });
  auto fx3 = eval_analytic(kleisli_id(arrow, 2), x3);
  validate_presheaf(fx3);
  require_equiv(presheaf_prof(fx3, "eval"), presheaf_prof(x3, "arrow"));
}

TEST_CASE("evaluating the empty and the fixed-point species") {
  auto fx = eval_analytic(to_symseq(zero_species(2)), const_presheaf(one_cat(), 3));
  REQUIRE(fx.sizes == std::vector<int>{0});

  // Multisets of size at most three from three colors: 1 + 3 + 6 + 10.
  auto ex = eval_analytic(to_symseq(species_e(3)), const_presheaf(one_cat(), 3));
  REQUIRE(ex.sizes == std::vector<int>{20});
}

TEST_CASE("product carrier is the induced sum over splittings") {
  auto x = species_x(3);
  auto xx = sp_product(x, x);
  REQUIRE(xx.sizes == std::vector<int>{0, 0, 2, 0});
  REQUIRE(xx.swaps[2][0] == std::vector<int>{1, 0});
  auto fx = eval_analytic(to_symseq(xx), const_presheaf(one_cat(), 3));
  REQUIRE(fx.sizes == std::vector<int>{9});

  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    auto f = random_species(3, 2, 0, rng);
    auto g = random_species(3, 2, 0, rng);
    auto p = sp_product(f, g);
    for (int n = 0; n <= 3; ++n) {
      long long expect = 0;
      for (int k = 0; k <= n; ++k)
        expect += binomial(n, k) * f.sizes[k] * g.sizes[n - k];
      REQUIRE(p.sizes[n] == expect);
    }
  }
}

TEST_CASE("substitution units at the species level") {
  auto e = species_e(3);
  auto x = species_x(3);
  REQUIRE(species_iso(sp_substitute(e, x), e));

  Rng rng(24);
  auto g = random_species(3, 3, 0, rng);
  REQUIRE(species_iso(sp_substitute(x, g), g));
  auto f = random_species(3, 3, 0, rng);
  REQUIRE(species_iso(sp_substitute(f, x), f));

  // Pairs of two-cycles: carrier count fixed by the substitution quotient.
  auto comp = sp_substitute(species_en(2, 4), species_xn(2, 4));
  REQUIRE(comp.sizes[4] == 12);
}

TEST_CASE("derivative shifts carriers and frees the reserved slot") {
  auto de = sp_derivative(species_e(3));
  REQUIRE(species_equal(de, species_truncate(species_e(3), 2)));

  REQUIRE(species_iso(sp_derivative(species_en(3, 3)), species_en(2, 3)));

  auto dx2 = sp_derivative(species_xn(2, 3));
  REQUIRE(species_iso(dx2, sp_sum(species_x(3), species_x(3))));

  // Regular carrier at arity three restricted to the subgroup fixing the
  // reserved slot: three free orbits.
  auto dx3 = sp_derivative(species_xn(3, 3));
  auto x2 = species_xn(2, 3);
  REQUIRE(species_iso(dx3, sp_sum(x2, sp_sum(x2, x2))));
}

TEST_CASE("generating coefficients are exact rationals") {
  auto egf = egf_coeffs(species_e(4), 4);
  REQUIRE(egf == std::vector<Rational>{Rational(1), Rational(1), Rational(1, 2), Rational(1, 6),
                                       Rational(1, 24)});
  auto zero = egf_coeffs(zero_species(3), 3);
  REQUIRE(zero == std::vector<Rational>(4, Rational(0)));
  REQUIRE_THROWS_AS(egf_coeffs(species_e(2), 3), BoundError);

  Rng rng(25);
  for (int trial = 0; trial < 4; ++trial) {
    auto f = random_species(3, 3, 0, rng);
    auto df = sp_derivative(f);
    auto cf = egf_coeffs(f, 3);
    auto cd = egf_coeffs(df, 3);
    for (int n = 0; n + 1 <= 3; ++n) REQUIRE(cd[n] == Rational(n + 1) * cf[n + 1]);
  }
}

TEST_CASE("orbit counting agrees with the coend quotient") {
  REQUIRE(burnside_count(species_en(2, 2), 3) == 6);
  REQUIRE(burnside_count(species_x(1), 5) == 5);
  REQUIRE(burnside_count(species_e(3), 1) == 4);

  Rng rng(26);
  for (int trial = 0; trial < 8; ++trial) {
    auto f = random_species(3, 1 + static_cast<int>(rng.below(3)), 0, rng);
    int x = static_cast<int>(rng.below(5));
    auto fx = eval_analytic(to_symseq(f), const_presheaf(one_cat(), x));
    REQUIRE(fx.sizes[0] == burnside_count(f, x));
  }
}

TEST_CASE("derivative of a substitution expands block by block") {
  // Reserved slot lands either in the outer layer or in one inner block:
  // d(F after G) matches d(F) after G, multiplied by d(G). Inner operands
  // keep an empty constant term so the window truncates neither side.
  auto check = [](const Species& f, const Species& g) {
    auto lhs = species_truncate(sp_derivative(sp_substitute(f, g)), 3);
    auto rhs = species_truncate(sp_product(sp_substitute(sp_derivative(f), g), sp_derivative(g)), 3);
    REQUIRE(species_iso(lhs, rhs));
  };
  check(species_en(2, 4), species_xn(2, 4));
  Rng rng(27);
  check(random_species(4, 2, 0, rng), random_species(4, 2, 1, rng));
}

TEST_CASE("derivative of a product obeys the two-term expansion") {
  auto check = [](const Species& f, const Species& g) {
    auto lhs = species_truncate(sp_derivative(sp_product(f, g)), 3);
    auto rhs = species_truncate(
        sp_sum(sp_product(sp_derivative(f), g), sp_product(f, sp_derivative(g))), 3);
    REQUIRE(species_iso(lhs, rhs));
  };
  check(species_en(2, 4), species_xn(2, 4));
  Rng rng(28);
  check(random_species(4, 2, 0, rng), random_species(4, 2, 0, rng));
}

TEST_CASE("species window bodies pass the functoriality audit") {
  Rng rng(29);
  auto sp = random_species(3, 3, 0, rng);
  require_lawful(to_symseq(sp).body);
  require_lawful(presheaf_prof(flip_presheaf(), "flip"));
}
