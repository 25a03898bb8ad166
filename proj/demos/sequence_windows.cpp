// Prints how the truncated sequence windows grow over a few small bases.
#include <cstdio>

#include "coend/bang.hpp"
#include "coend/fincat.hpp"

int main() {
  using namespace coend;
  for (const auto& base : fincats::test_family()) {
    std::printf("%s:", base->name().c_str());
    for (int bound = 0; bound <= 3; ++bound) {
      auto b = bang_of(view(base), bound);
      std::printf(" bound%d=%d", bound, b->object_count());
    }
    std::printf("\n");
  }
  return 0;
}
