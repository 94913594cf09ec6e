#include <map>
#include <set>

#include "doctest.h"
#include "testutil.h"
#include "xormc/hashing.h"

using namespace xormc;
using namespace xormc::test;

namespace {

std::vector<uint8_t> bits_of(uint64_t v, uint32_t n) {
  std::vector<uint8_t> out(n);
  for (uint32_t i = 0; i < n; ++i) out[i] = (v >> i) & 1;
  return out;
}

// Reference GF(2) affine map evaluated straight off the matrix.
std::vector<uint8_t> reference_apply(const XorHash& h, const std::vector<uint8_t>& y) {
  std::vector<uint8_t> out(h.m());
  for (uint32_t i = 0; i < h.m(); ++i) {
    uint8_t acc = h.bit(i, 0);
    for (uint32_t k = 1; k <= h.n(); ++k) acc ^= h.bit(i, k) & y[k - 1];
    out[i] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("empty hash maps everything to the empty vector") {
  Rng rng(1);
  const XorHash h = draw_hash(4, 0, rng);
  CHECK(apply_hash(h, bits_of(9, 4)).empty());
  CHECK(hash_to_constraints(h, CellTarget{}, std::vector<Var>{1, 2, 3, 4}).empty());
}

TEST_CASE("draws are deterministic under a fixed seed") {
  Rng a(42), b(42);
  const XorHash h1 = draw_hash(4, 2, a);
  const XorHash h2 = draw_hash(4, 2, b);
  for (uint32_t i = 0; i < 2; ++i) {
    for (uint32_t k = 0; k <= 4; ++k) CHECK(h1.bit(i, k) == h2.bit(i, k));
  }
}

TEST_CASE("matrix entries are fair coins") {
  Rng rng(7);
  int ones = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const XorHash h = draw_hash(3, 1, rng);
    ones += h.bit(0, 1);
  }
  const double frac = static_cast<double>(ones) / draws;
  CHECK(frac > 0.48);
  CHECK(frac < 0.52);
}

TEST_CASE("apply on explicit 1x1 matrix") {
  const XorHash h = XorHash::from_bits(1, 1, {{1, 1}});
  const std::vector<uint8_t> zero{0}, one{1};
  CHECK(apply_hash(h, zero) == std::vector<uint8_t>{1});
  CHECK(apply_hash(h, one) == std::vector<uint8_t>{0});
}

TEST_CASE("zero matrix maps everything to zero") {
  const XorHash h = XorHash::from_bits(3, 2, {{0, 0, 0, 0}, {0, 0, 0, 0}});
  for (uint64_t y = 0; y < 8; ++y) {
    CHECK(apply_hash(h, bits_of(y, 3)) == std::vector<uint8_t>(2, 0));
  }
}

TEST_CASE("apply matches the reference map exhaustively") {
  Rng rng(13);
  for (int iter = 0; iter < 20; ++iter) {
    const XorHash h = draw_hash(3, 2, rng);
    for (uint64_t y = 0; y < 8; ++y) {
      const auto inp = bits_of(y, 3);
      CHECK(apply_hash(h, inp) == reference_apply(h, inp));
    }
  }
  // Also at widths crossing the word boundary.
  const XorHash wide = draw_hash(70, 3, rng);
  Rng yr(99);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<uint8_t> y(70);
    for (auto& b : y) b = yr.coin();
    CHECK(apply_hash(wide, y) == reference_apply(wide, y));
  }
}

TEST_CASE("apply rejects wrong input length") {
  Rng rng(3);
  const XorHash h = draw_hash(4, 1, rng);
  CHECK_THROWS_AS(apply_hash(h, bits_of(0, 3)), Error);
}

TEST_CASE("explicit constraint translation") {
  const XorHash h = XorHash::from_bits(2, 1, {{0, 1, 1}});
  CellTarget alpha{{1}};
  const auto cs = hash_to_constraints(h, alpha, std::vector<Var>{1, 2});
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].vars == std::vector<Var>{1, 2});
  CHECK(cs[0].parity == true);
}

TEST_CASE("constraint solutions equal hash preimages") {
  Rng rng(17);
  const std::vector<Var> s{1, 2, 3, 4};
  for (int iter = 0; iter < 20; ++iter) {
    const XorHash h = draw_hash(4, 2, rng);
    const CellTarget alpha = draw_target(2, rng);
    const auto cs = hash_to_constraints(h, alpha, s);
    for (uint64_t y = 0; y < 16; ++y) {
      const bool in_cell = apply_hash(h, bits_of(y, 4)) == alpha.alpha;
      bool satisfies = true;
      for (const auto& c : cs) {
        bool acc = false;
        for (const Var v : c.vars) acc ^= (y >> (v - 1)) & 1;
        if (acc != c.parity) {
          satisfies = false;
          break;
        }
      }
      CHECK(in_cell == satisfies);
    }
  }
}

TEST_CASE("cells partition the input space") {
  Rng rng(23);
  for (uint32_t n = 1; n <= 6; ++n) {
    for (uint32_t m = 1; m <= 3; ++m) {
      const XorHash h = draw_hash(n, m, rng);
      std::map<std::vector<uint8_t>, uint64_t> cells;
      for (uint64_t y = 0; y < (1ULL << n); ++y) ++cells[apply_hash(h, bits_of(y, n))];
      uint64_t total = 0;
      for (const auto& [alpha, size] : cells) total += size;
      CHECK(total == (1ULL << n));  // disjoint by function-ness, union everything
    }
  }
}

TEST_CASE("family H(3,1) is exactly 3-universal") {
  // All 16 members: one bit each for a0, a1, a2, a3.
  std::vector<XorHash> family;
  for (uint32_t bits = 0; bits < 16; ++bits) {
    family.push_back(XorHash::from_bits(
        3, 1,
        {{static_cast<int>(bits & 1), static_cast<int>((bits >> 1) & 1),
          static_cast<int>((bits >> 2) & 1), static_cast<int>((bits >> 3) & 1)}}));
  }
  for (uint32_t y1 = 0; y1 < 8; ++y1) {
    for (uint32_t y2 = y1 + 1; y2 < 8; ++y2) {
      for (uint32_t y3 = y2 + 1; y3 < 8; ++y3) {
        for (uint32_t targets = 0; targets < 8; ++targets) {
          int matching = 0;
          for (const auto& h : family) {
            const bool ok = apply_hash(h, bits_of(y1, 3))[0] == ((targets >> 0) & 1) &&
                            apply_hash(h, bits_of(y2, 3))[0] == ((targets >> 1) & 1) &&
                            apply_hash(h, bits_of(y3, 3))[0] == ((targets >> 2) & 1);
            if (ok) ++matching;
          }
          CHECK(matching == 2);  // 16 * 2^-3
        }
      }
    }
  }
}

TEST_CASE("expected constraint width is about half the input width") {
  Rng rng(29);
  const uint32_t n = 40;
  const int draws = 2000;
  uint64_t total_width = 0;
  for (int i = 0; i < draws; ++i) {
    const XorHash h = draw_hash(n, 1, rng);
    const auto cs = hash_to_constraints(h, draw_target(1, rng),
                                        [] {
                                          std::vector<Var> s;
                                          for (Var v = 1; v <= 40; ++v) s.push_back(v);
                                          return s;
                                        }());
    total_width += cs[0].vars.size();
  }
  const double mean = static_cast<double>(total_width) / draws;
  // Binomial(40, 1/2): mean 20, sigma of the sample mean ~ 3.16/sqrt(2000).
  const double sigma = std::sqrt(40.0 * 0.25 / draws);
  CHECK(mean > 20.0 - 3.0 * sigma - 1e-9);
  CHECK(mean < 20.0 + 3.0 * sigma + 1e-9);
}
