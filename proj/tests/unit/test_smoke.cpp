#include "doctest.h"
#include "periods/motivic.hpp"
#include "periods/numerics.hpp"

using namespace periods;

TEST_CASE("zeta(2) numerics") {
  auto v = eval_mzv({{2, 1}}, 30);
  CHECK(v.to_string(25).substr(0, 20) == "1.644934066848226436");
}
