// Exhaustive structural property checks shared by the unit tests. Intended
// for small windows only: everything loops over entire hom-sets.
#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "coend/category.hpp"

namespace check {

// Identity and associativity laws plus endpoint sanity, straight off the
// abstract interface.
inline void category_laws(const coend::Category& c) {
  const int n = c.object_count();
  for (int x = 0; x < n; ++x) {
    coend::MorRef e = c.identity(x);
    REQUIRE(e.src == x);
    REQUIRE(e.dst == x);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int i = 0; i < c.hom_size(x, y); ++i) {
        coend::MorRef f{x, y, i};
        REQUIRE(c.compose(c.identity(y), f) == f);
        REQUIRE(c.compose(f, c.identity(x)) == f);
        for (int z = 0; z < n; ++z)
          for (int j = 0; j < c.hom_size(y, z); ++j) {
            coend::MorRef g{y, z, j};
            coend::MorRef gf = c.compose(g, f);
            REQUIRE(gf.src == x);
            REQUIRE(gf.dst == z);
            for (int w = 0; w < n; ++w)
              for (int k = 0; k < c.hom_size(z, w); ++k) {
                coend::MorRef h{z, w, k};
                REQUIRE(c.compose(h, gf) == c.compose(c.compose(h, g), f));
              }
          }
      }
}

// Every morphism is recovered by composing its generator factorization.
inline void factorization(const coend::Category& c) {
  const int n = c.object_count();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int i = 0; i < c.hom_size(x, y); ++i) {
        coend::MorRef m{x, y, i};
        auto steps = c.factor_generators(m);
        if (c.is_identity(m)) {
          REQUIRE(steps.empty());
          continue;
        }
        REQUIRE(!steps.empty());
        coend::MorRef acc = steps.front();
        for (std::size_t s = 1; s < steps.size(); ++s) acc = c.compose(steps[s], acc);
        REQUIRE(acc == m);
      }
}

}  // namespace check
