#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "bloomrf/dyadic.hpp"
#include "bloomrf/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bloomrf;

namespace {

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected bloomrf::error");
  return errc::parse_error;
}

// Every key of [lo, hi] exactly once, nothing else, siblings never both present.
void check_decomposition(unsigned width, key_type lo, key_type hi) {
  const auto parts = dyadic_decompose(width, lo, hi);
  REQUIRE_FALSE(parts.empty());
  key_type next = lo;
  for (const auto& p : parts) {
    const unsigned span = width - p.level;
    CHECK(p.lo == next);
    CHECK((p.lo & low_mask(span)) == 0);
    CHECK(p.hi - p.lo == low_mask(span));
    next = p.hi + 1;
  }
  CHECK(parts.back().hi == hi);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const auto& a = parts[i];
    const auto& b = parts[i + 1];
    const bool siblings = a.level == b.level && a.level > 0 && (a.lo >> (width - a.level + 1)) == (b.lo >> (width - b.level + 1));
    CHECK_FALSE(siblings);
  }
  const double len = static_cast<double>(hi - lo) + 1.0;
  CHECK(static_cast<double>(parts.size()) <= 2.0 * std::log2(len) + 2.0);
}

}  // namespace

TEST_CASE("layout of the two-layer byte domain") {
  const unsigned h[] = {0, 4, 4};
  const auto layout = build_layout(8, h);
  CHECK(layout.layers() == 2);
  CHECK(layout.bottom_levels == std::vector<unsigned>{0, 4, 8});
  CHECK(layout.trace_size(1) == 8);
  CHECK(layout.trace_size(2) == 8);
  CHECK_FALSE(layout.has_exact_layer());
  CHECK(layout.tt_counts[1] == 2);
  CHECK(layout.tt_counts[2] == 32);
  CHECK(layout.tt_max == 34);
}

TEST_CASE("layout with a 28-level exact layer") {
  const unsigned h[] = {28, 2, 2, 4, 7, 7, 7, 7};
  const auto layout = build_layout(64, h);
  CHECK(layout.bottom_levels == std::vector<unsigned>{28, 30, 32, 36, 43, 50, 57, 64});
  CHECK(layout.has_exact_layer());
  CHECK(layout.exact_level() == 28);
  CHECK(layout.trace_bits == std::vector<unsigned>{0, 1, 1, 3, 6, 6, 6, 6});
  CHECK(layout.tt_counts[1] == std::ldexp(1.0, 29));
}

TEST_CASE("layout errors") {
  const unsigned too_many[] = {0, 4, 5};
  CHECK(code_of([&] { build_layout(8, too_many); }) == errc::sum_mismatch);
  const unsigned zero[] = {4, 0, 4};
  CHECK(code_of([&] { build_layout(8, zero); }) == errc::zero_height);
  const unsigned wide[] = {0, 8};
  CHECK(code_of([&] { build_layout(8, wide); }) == errc::trace_too_wide);
  const unsigned ok[] = {0, 4, 4};
  CHECK(code_of([&] { build_layout(12, ok); }) == errc::unsupported_width);
  CHECK(code_of([&] { build_layout(8, std::span<const unsigned>{}); }) == errc::sum_mismatch);
}

TEST_CASE("exact-only layout") {
  const unsigned h[] = {16};
  const auto layout = build_layout(16, h);
  CHECK(layout.layers() == 0);
  CHECK(layout.exact_level() == 16);
}

TEST_CASE("covering intervals") {
  CHECK(covering_interval(8, 129, 1) == dyadic_interval{1, 128, 255});
  CHECK(covering_interval(8, 129, 8) == dyadic_interval{8, 129, 129});
  CHECK(covering_interval(8, 129, 0) == dyadic_interval{0, 0, 255});
  CHECK(covering_interval(64, 12345, 0) == dyadic_interval{0, 0, ~key_type{0}});
  CHECK(code_of([] { covering_interval(8, 1, 9); }) == errc::level_out_of_range);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const key_type key = rng();
    const unsigned level = static_cast<unsigned>(rng() % 65);
    const auto iv = covering_interval(64, key, level);
    CHECK((iv.lo & low_mask(64 - level)) == 0);
    CHECK(iv.lo <= key);
    CHECK(key <= iv.hi);
  }
}

TEST_CASE("decomposition examples") {
  CHECK(dyadic_decompose(8, 0, 255) == std::vector<dyadic_interval>{{0, 0, 255}});
  CHECK(dyadic_decompose(8, 5, 5) == std::vector<dyadic_interval>{{8, 5, 5}});
  CHECK(dyadic_decompose(64, 0, ~key_type{0}) == std::vector<dyadic_interval>{{0, 0, ~key_type{0}}});
  const std::vector<dyadic_interval> expected{{7, 190, 191}, {5, 192, 199}, {6, 200, 203}, {8, 204, 204}};
  CHECK(dyadic_decompose(8, 190, 204) == expected);
}

TEST_CASE("decomposition is exact and maximal for every byte range") {
  for (key_type lo = 0; lo < 256; ++lo) {
    for (key_type hi = lo; hi < 256; ++hi) check_decomposition(8, lo, hi);
  }
}

TEST_CASE("decomposition on wide domains") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    key_type a = rng();
    key_type b = rng() >> (rng() % 64);
    key_type lo = std::min(a, a + b);
    key_type hi = std::max(a, a + b);
    check_decomposition(64, lo, hi);
  }
  check_decomposition(64, 1, ~key_type{0} - 1);
}

TEST_CASE("trace masks of the byte example") {
  const unsigned h[] = {0, 4, 4};
  const auto layout = build_layout(8, h);
  const auto top = trace_bitmask(layout, 1, 129, 190, 204);
  CHECK(top == 0b00011000);
  CHECK(format_trace(top, 8) == "00011000");
  // Leaf tree over [184,191]: positions 6 and 7 are keys 190 and 191.
  const auto leaf = trace_bitmask(layout, 2, 184, 190, 191);
  CHECK(leaf == 0b11000000);
  CHECK(format_trace(leaf, 8) == "00000011");
  CHECK(trace_bitmask(layout, 2, 184, 0, 255) == 0xff);
  bool thrown = false;
  try {
    trace_bitmask(layout, 2, 184, 192, 200);
  } catch (const error& e) {
    thrown = e.code() == errc::no_intersection;
  }
  CHECK(thrown);
}

TEST_CASE("trace masks agree with position intervals") {
  std::mt19937_64 rng(3);
  const std::vector<std::vector<unsigned>> shapes{{0, 4, 4}, {0, 1, 7}, {2, 3, 3}, {0, 3, 3, 3, 3, 4}, {4, 6, 6}};
  for (const auto& heights : shapes) {
    const unsigned width = 0u + [&] { unsigned s = 0; for (auto h : heights) s += h; return s; }();
    const auto layout = build_layout(width, heights);
    for (unsigned layer = 1; layer <= layout.layers(); ++layer) {
      const unsigned pos_span = width - layout.bottom_levels[layer];
      const unsigned tree_span = width - layout.bottom_levels[layer - 1] - 1;
      for (int trial = 0; trial < 300; ++trial) {
        const key_type a = rng() & low_mask(width);
        const key_type b = rng() & low_mask(width);
        const key_type lo = std::min(a, b);
        const key_type hi = std::max(a, b);
        const key_type tree_lo = (lo >> tree_span) << tree_span;
        const auto mask = trace_bitmask(layout, layer, lo, lo, hi);
        CHECK(mask != 0);
        // Contiguous run of ones.
        const auto shifted = mask >> std::countr_zero(mask);
        CHECK((shifted & (shifted + 1)) == 0);
        for (unsigned p = 0; p < layout.trace_size(layer); ++p) {
          const key_type p_lo = tree_lo + (key_type{p} << pos_span);
          const key_type p_hi = p_lo + low_mask(pos_span);
          const bool intersects = p_lo <= hi && lo <= p_hi;
          CHECK(((mask >> p) & 1) == intersects);
        }
      }
    }
  }
}
