#include "doctest.h"

#include <set>

#include "excon/nc_tensor.hpp"
#include "support/fuzz.hpp"

using namespace excon;
using namespace excon::testing;

TEST_CASE("fuzz generators are deterministic") {
  const auto a = fuzz_morita(6, 7);
  const auto b = fuzz_morita(6, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].description == b[i].description);
    CHECK(same_structure(*a[i].context.gamma, *b[i].context.gamma));
  }
  const auto p = fuzz_pure(6, 7);
  const auto q = fuzz_pure(6, 7);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(same_structure(*p[i].context.ring, *q[i].context.ring));
}

TEST_CASE("fuzz corpus covers vanishing and surviving extra blocks") {
  std::set<std::size_t> ring_dims;
  std::size_t w_zero = 0, w_nonzero = 0;
  for (const auto& m : fuzz_morita(24, 1)) {
    MESSAGE(m.description);
    const BlockOracle o = nc_tensor_morita_oracle(m.context.data);
    (o.w.dim() == 0 ? w_zero : w_nonzero)++;
    ring_dims.insert(build_nc_tensor(m.context.context).dim());
  }
  for (const auto& p : fuzz_pure(24, 2)) {
    MESSAGE(p.description);
    const BlockOracle o = nc_tensor_pure_oracle(p.context);
    (o.w.dim() == 0 ? w_zero : w_nonzero)++;
    ring_dims.insert(build_nc_tensor(p.context.context).dim());
  }
  CHECK(w_zero >= 5);
  CHECK(w_nonzero >= 5);
  CHECK(ring_dims.size() >= 4);
}
