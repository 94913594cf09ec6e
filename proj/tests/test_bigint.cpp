#include <cstdint>

#include "doctest.h"
#include "xormc/bigint.h"
#include "xormc/rng.h"

using namespace xormc;

TEST_CASE("biguint basic arithmetic matches 128-bit reference") {
  Rng rng(42);
  for (int iter = 0; iter < 2000; ++iter) {
    const uint64_t a = rng.next_u64() >> (rng.below(40));
    const uint64_t b = rng.next_u64() >> (rng.below(40));
    unsigned __int128 ref = static_cast<unsigned __int128>(a) + b;
    BigUint x = BigUint(a) + BigUint(b);
    const uint64_t lo = static_cast<uint64_t>(ref);
    const uint64_t hi = static_cast<uint64_t>(ref >> 64);
    BigUint expect = (BigUint(hi) << 64) + BigUint(lo);
    CHECK(x == expect);

    ref = static_cast<unsigned __int128>(a) * (b >> 32);
    x = BigUint(a) * (b >> 32);
    expect = (BigUint(static_cast<uint64_t>(ref >> 64)) << 64) +
             BigUint(static_cast<uint64_t>(ref));
    CHECK(x == expect);
  }
}

TEST_CASE("biguint shifting and pow2") {
  CHECK(BigUint::pow2(0) == BigUint(1));
  CHECK(BigUint::pow2(63) == BigUint(1ULL << 63));
  CHECK(BigUint::pow2(64) == (BigUint(1) << 64));
  CHECK((BigUint(5) << 100) == (BigUint(5) * 16 << 96));
  CHECK(((BigUint(0) << 1000) == BigUint(0)));
}

TEST_CASE("biguint decimal printing") {
  CHECK(BigUint(0).to_string() == "0");
  CHECK(BigUint(1234567890123456789ULL).to_string() == "1234567890123456789");
  // 2^100 = 1267650600228229401496703205376
  CHECK(BigUint::pow2(100).to_string() == "1267650600228229401496703205376");
  BigUint v = BigUint(999999999999999999ULL) * 10 + BigUint(9);
  CHECK(v.to_string() == "9999999999999999999");
}

TEST_CASE("biguint divmod") {
  BigUint v = BigUint::pow2(100);
  const uint64_t rem = v.divmod_u64(1000000007ULL);
  // 2^100 mod 1000000007 == 976371285 (checked against 128-bit folding below)
  unsigned __int128 ref = 1;
  for (int i = 0; i < 100; ++i) ref = (ref * 2) % 1000000007ULL;
  CHECK(rem == static_cast<uint64_t>(ref));
}

TEST_CASE("biguint ordering and bit length") {
  CHECK(BigUint(3) < BigUint(5));
  CHECK(BigUint::pow2(64) > BigUint(UINT64_MAX));
  CHECK(BigUint(0).bit_length() == 0);
  CHECK(BigUint(1).bit_length() == 1);
  CHECK(BigUint::pow2(100).bit_length() == 101);
}

TEST_CASE("biguint log2 and double conversion") {
  CHECK(BigUint(1).log2d() == doctest::Approx(0.0));
  CHECK(BigUint(1024).log2d() == doctest::Approx(10.0));
  CHECK(BigUint::pow2(200).log2d() == doctest::Approx(200.0));
  CHECK((BigUint(3) << 150).log2d() == doctest::Approx(150.0 + std::log2(3.0)));
  CHECK(BigUint(12345).to_double() == doctest::Approx(12345.0));
}

TEST_CASE("dyadic normalization and decimal form") {
  Dyadic d{BigUint(6), 3};  // 6/8
  d.normalize();
  CHECK(d.num == BigUint(3));
  CHECK(d.log2_den == 2);
  CHECK(d.to_decimal_string() == "0.75");
  CHECK(d.to_double() == doctest::Approx(0.75));

  Dyadic whole{BigUint(12), 2};  // 12/4 = 3
  CHECK(whole.to_decimal_string() == "3");

  Dyadic tiny{BigUint(1), 8};
  CHECK(tiny.to_decimal_string() == "0.00390625");

  Dyadic zero{BigUint(0), 5};
  zero.normalize();
  CHECK(zero.log2_den == 0);
  CHECK(zero.to_decimal_string() == "0");
}

TEST_CASE("rng determinism and bounds") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng r(123);
  for (int i = 0; i < 10000; ++i) {
    const uint64_t v = r.below(17);
    CHECK(v < 17);
  }

  // Derivation produces distinct child streams.
  CHECK(Rng::derive(1, 0) != Rng::derive(1, 1));
  CHECK(Rng::derive(1, 0) != Rng::derive(2, 0));

  // Coin flips are roughly fair.
  Rng c(99);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += c.coin();
  CHECK(ones > 49000);
  CHECK(ones < 51000);
}
