#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace feigenjet {

// Dyadic rational num / 2^k. Enough for pixel centers, window corners and
// square corners; arithmetic that must stay exact is done on integers at a
// common scale by the callers.
struct Dyadic {
  std::int64_t num = 0;
  int k = 0;  // denominator exponent

  double to_double() const;
  // value rescaled to denominator 2^target_k (requires target_k >= k)
  std::int64_t scaled_num(int target_k) const;
};

Dyadic dyadic_from_double(double x, int k);  // nearest multiple of 2^-k

struct DyadicPoint {
  Dyadic x, y;
};

// Axis-aligned closed square [i,i+1]x[j,j+1] scaled by 2^-q.
struct DyadicSquare {
  int q = 0;
  std::int64_t i = 0, j = 0;
};

// Finite union of closed dyadic squares, all of one pitch 2^-q.
// Supports exact point membership, conservative banded membership for
// approximate points, and exact distance comparisons against dyadic radii.
class DyadicSet {
 public:
  DyadicSet() = default;
  explicit DyadicSet(int q) : q_(q) {}

  int pitch_exp() const { return q_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  void insert(std::int64_t i, std::int64_t j);
  bool has_cell(std::int64_t i, std::int64_t j) const;

  // cell containing (x,y); points on a grid line belong to the upper cell,
  // membership tests below look at neighbors so this never matters
  bool contains(double x, double y) const;
  // true iff some square intersects the closed band-ball around (x,y)
  bool contains_within(double x, double y, double band) const;
  // true iff every point of the band-ball lies in the union (band in cells)
  bool ball_inside(double x, double y, double band) const;

  // exact: d((px,py)/2^s, set) compared to tau_num/2^tau_k.
  // returns -1 if d < tau, 0 if d == tau, +1 if d > tau. Empty set: +1.
  int cmp_distance(std::int64_t px, std::int64_t py, int s,
                   std::int64_t tau_num, int tau_k) const;

  double approx_distance(double x, double y) const;  // 0 inside

  // every cell of this set, re-expressed at pitch q' >= q, is in `other`
  bool subset_of(const DyadicSet& other) const;

  // union of all cells within Chebyshev radius r (in cells)
  DyadicSet dilated(int r) const;
  // same set at a finer pitch q_new >= q
  DyadicSet refined(int q_new) const;

  std::vector<DyadicSquare> squares() const;  // sorted, deterministic
  void bbox(std::int64_t& i0, std::int64_t& i1, std::int64_t& j0, std::int64_t& j1) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (auto key : cells_) fn(unpack_i(key), unpack_j(key));
  }

 private:
  static std::uint64_t pack(std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i + (1ll << 31))) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(j + (1ll << 31)));
  }
  static std::int64_t unpack_i(std::uint64_t key) {
    return static_cast<std::int64_t>(key >> 32) - (1ll << 31);
  }
  static std::int64_t unpack_j(std::uint64_t key) {
    return static_cast<std::int64_t>(key & 0xffffffffull) - (1ll << 31);
  }

  void build_buckets() const;

  int q_ = 0;
  std::unordered_set<std::uint64_t> cells_;
  // coarse bucket index (cells grouped by i>>kBucketShift, j>>...) for
  // distance queries; rebuilt lazily
  static constexpr int kBucketShift = 4;
  mutable bool buckets_ok_ = false;
  mutable std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets_;
  mutable std::int64_t bi0_ = 0, bi1_ = -1, bj0_ = 0, bj1_ = -1;
};

}  // namespace feigenjet
