#include <random>
#include <set>

#include "bloomrf/error.hpp"
#include "bloomrf/hashing.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bloomrf;

namespace {

// Straight-line recomputation of MH_{i,r} from the published constant table.
bit_position mh_reference(const filter_config& c, unsigned layer, unsigned replica, key_type key) {
  const unsigned s = c.layout.width - c.layout.bottom_levels[layer];
  const unsigned b = c.layout.heights[layer] - 1;
  const key_type shifted = key >> s;
  const std::uint64_t offset = shifted % (std::uint64_t{1} << b);
  const std::uint64_t selector = shifted >> b;
  const auto k = hash_family(c.seed).constants(layer, replica);
  __extension__ using u128 = unsigned __int128;
  const u128 product = static_cast<u128>(k.multiplier) * selector + k.addend;
  const std::uint64_t h = static_cast<std::uint64_t>(product >> 64) ^ static_cast<std::uint64_t>(product);
  const std::size_t segment = c.segment_of[layer];
  const std::uint64_t slots = c.segment_bits[segment] >> b;
  return {segment, ((h % slots) << b) + offset};
}

filter_config replicated_config() {
  filter_config c = make_basic_config(32, {0, 2, 6, 6, 6, 6, 6}, 1 << 14, 99);
  c.hashes[3] = 3;
  validate(c);
  return c;
}

}  // namespace

TEST_CASE("hash constants are odd, distinct and seed-determined") {
  const hash_family a(1), b(1), c(2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (unsigned layer = 0; layer < 64; ++layer) {
    for (unsigned r = 0; r < max_hashes_per_layer; ++r) {
      const auto k = a.constants(layer, r);
      CHECK((k.multiplier & 1) == 1);
      CHECK(seen.insert({k.multiplier, k.addend}).second);
      CHECK(k.multiplier == b.constants(layer, r).multiplier);
      CHECK(k.addend == b.constants(layer, r).addend);
      CHECK(k.multiplier != c.constants(layer, r).multiplier);
    }
  }
}

TEST_CASE("positions match the reference formula") {
  const auto c = replicated_config();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const key_type key = rng() & low_mask(32);
    for (unsigned layer = 1; layer <= c.layout.layers(); ++layer) {
      for (unsigned r = 0; r < c.hashes[layer]; ++r) CHECK(mh(c, layer, r, key) == mh_reference(c, layer, r, key));
    }
  }
  const auto fig = testing::example_config(0x5eed);
  CHECK(mh(fig, 2, 0, 129) == mh_reference(fig, 2, 0, 129));
}

TEST_CASE("piecewise monotone inside a trace") {
  const auto c = replicated_config();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50000; ++i) {
    const unsigned layer = 1 + static_cast<unsigned>(rng() % c.layout.layers());
    const unsigned s = c.layout.position_shift(layer);
    const unsigned b = c.layout.trace_bits[layer];
    const key_type key = rng() & low_mask(32);
    const auto offset = (key >> s) & low_mask(b);
    if (offset == low_mask(b)) continue;
    const key_type next = key + (key_type{1} << s);
    for (unsigned r = 0; r < c.hashes[layer]; ++r) {
      const auto p = mh(c, layer, r, key);
      const auto q = mh(c, layer, r, next);
      CHECK(q.segment == p.segment);
      CHECK(q.bit == p.bit + 1);
      CHECK((q.bit >> b) == (p.bit >> b));
    }
  }
}

TEST_CASE("replicas keep the trace offset") {
  const auto c = replicated_config();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5000; ++i) {
    const key_type key = rng() & low_mask(32);
    const auto base = mh(c, 3, 0, key).bit & 31;
    CHECK((mh(c, 3, 1, key).bit & 31) == base);
    CHECK((mh(c, 3, 2, key).bit & 31) == base);
  }
}

TEST_CASE("byte example: keys sharing a top-layer trace position") {
  const auto c = testing::example_config();
  // 129 = 1000 0001, 137 = 1000 1001: same level-4 interval [128,143].
  CHECK(mh(c, 1, 0, 129) == mh(c, 1, 0, 137));
  CHECK((mh(c, 1, 0, 129).bit & 7) == 0);
  // Leaf: different selectors (16 vs 17), so different trace elements
  // unless the 8-slot hash collides; the offset is the low three bits.
  CHECK((mh(c, 2, 0, 129).bit & 7) == 1);
  CHECK((mh(c, 2, 0, 137).bit & 7) == 1);
  std::size_t distinct = 0;
  for (std::uint64_t seed = 1; seed <= 64; ++seed) {
    const auto s = testing::example_config(seed);
    distinct += (mh(s, 2, 0, 129).bit >> 3) != (mh(s, 2, 0, 137).bit >> 3);
  }
  CHECK(distinct > 40);  // 7/8 expected
}

TEST_CASE("exact positions") {
  filter_config c = make_basic_config(8, {0, 4, 4}, 64);
  CHECK_THROWS_AS(exact_position(c, 1), error);

  filter_config e;
  const unsigned h[] = {8};
  e.layout = build_layout(8, h);
  e.hashes = {0};
  e.segment_of = {0};
  e.segment_bits = {256};
  validate(e);
  CHECK(exact_position(e, 129) == bit_position{0, 129});

  filter_config wide;
  const unsigned hw[] = {28, 2, 2, 4, 7, 7, 7, 7};
  wide.layout = build_layout(64, hw);
  wide.hashes = {0, 2, 1, 1, 1, 1, 1, 1};
  wide.segment_of = {0, 1, 1, 1, 2, 2, 2, 2};
  wide.segment_bits = {std::uint64_t{1} << 28, 1 << 20, 1 << 20};
  validate(wide);
  const key_type k = 0xfedcba9876543210ULL;
  CHECK(exact_position(wide, k).bit == (k >> 36));
  CHECK(exact_position(wide, k).bit == exact_position(wide, k | low_mask(36)).bit);
}

TEST_CASE("positions_for lists every written bit") {
  const auto fig = testing::example_config();
  CHECK(positions_for(fig, 129).size() == 2);

  const auto c = replicated_config();
  const auto all = positions_for(c, 12345);
  CHECK(all.size() == 8);  // k = 1, 1, 3, 1, 1, 1

  // A single hashed layer below a 2-level exact layer.
  filter_config one;
  const unsigned h[] = {2, 6};
  one.layout = build_layout(8, h);
  one.hashes = {0, 1};
  one.segment_of = {0, 1};
  one.segment_bits = {4, 64};
  validate(one);
  const auto p = positions_for(one, 200);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == bit_position{0, 3});
  CHECK(p[1].segment == 1);
}

TEST_CASE("mh argument errors") {
  const auto c = testing::example_config();
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const error& e) {
      return e.code();
    }
    return errc::parse_error;
  };
  CHECK(code([&] { mh(c, 0, 0, 1); }) == errc::layer_out_of_range);
  CHECK(code([&] { mh(c, 3, 0, 1); }) == errc::layer_out_of_range);
  CHECK(code([&] { mh(c, 1, 1, 1); }) == errc::replica_out_of_range);
}
