#include "feigenjet/dyadic.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace feigenjet {

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -k); }

std::int64_t Dyadic::scaled_num(int target_k) const { return num << (target_k - k); }

Dyadic dyadic_from_double(double x, int k) {
  return Dyadic{static_cast<std::int64_t>(std::llround(std::ldexp(x, k))), k};
}

void DyadicSet::insert(std::int64_t i, std::int64_t j) {
  cells_.insert(pack(i, j));
  buckets_ok_ = false;
}

bool DyadicSet::has_cell(std::int64_t i, std::int64_t j) const {
  return cells_.count(pack(i, j)) != 0;
}

bool DyadicSet::contains(double x, double y) const {
  double s = std::ldexp(1.0, q_);
  return has_cell(static_cast<std::int64_t>(std::floor(x * s)),
                  static_cast<std::int64_t>(std::floor(y * s)));
}

bool DyadicSet::contains_within(double x, double y, double band) const {
  double s = std::ldexp(1.0, q_);
  std::int64_t i0 = static_cast<std::int64_t>(std::floor((x - band) * s));
  std::int64_t i1 = static_cast<std::int64_t>(std::floor((x + band) * s));
  std::int64_t j0 = static_cast<std::int64_t>(std::floor((y - band) * s));
  std::int64_t j1 = static_cast<std::int64_t>(std::floor((y + band) * s));
  for (std::int64_t i = i0; i <= i1; ++i)
    for (std::int64_t j = j0; j <= j1; ++j)
      if (has_cell(i, j)) {
        // square intersects the ball, not just the bounding box
        double cx = std::clamp(x, std::ldexp(static_cast<double>(i), -q_),
                               std::ldexp(static_cast<double>(i + 1), -q_));
        double cy = std::clamp(y, std::ldexp(static_cast<double>(j), -q_),
                               std::ldexp(static_cast<double>(j + 1), -q_));
        if ((cx - x) * (cx - x) + (cy - y) * (cy - y) <= band * band) return true;
      }
  return false;
}

bool DyadicSet::ball_inside(double x, double y, double band) const {
  double s = std::ldexp(1.0, q_);
  std::int64_t i0 = static_cast<std::int64_t>(std::floor((x - band) * s));
  std::int64_t i1 = static_cast<std::int64_t>(std::floor((x + band) * s));
  std::int64_t j0 = static_cast<std::int64_t>(std::floor((y - band) * s));
  std::int64_t j1 = static_cast<std::int64_t>(std::floor((y + band) * s));
  for (std::int64_t i = i0; i <= i1; ++i)
    for (std::int64_t j = j0; j <= j1; ++j) {
      double cx = std::clamp(x, std::ldexp(static_cast<double>(i), -q_),
                             std::ldexp(static_cast<double>(i + 1), -q_));
      double cy = std::clamp(y, std::ldexp(static_cast<double>(j), -q_),
                             std::ldexp(static_cast<double>(j + 1), -q_));
      if ((cx - x) * (cx - x) + (cy - y) * (cy - y) <= band * band && !has_cell(i, j))
        return false;
    }
  return true;
}

void DyadicSet::build_buckets() const {
  buckets_.clear();
  bi0_ = bj0_ = std::numeric_limits<std::int64_t>::max();
  bi1_ = bj1_ = std::numeric_limits<std::int64_t>::min();
  for (auto key : cells_) {
    std::int64_t i = unpack_i(key), j = unpack_j(key);
    bi0_ = std::min(bi0_, i); bi1_ = std::max(bi1_, i);
    bj0_ = std::min(bj0_, j); bj1_ = std::max(bj1_, j);
    buckets_[pack(i >> kBucketShift, j >> kBucketShift)].push_back(key);
  }
  buckets_ok_ = true;
}

double DyadicSet::approx_distance(double x, double y) const {
  if (!buckets_ok_) build_buckets();
  if (cells_.empty()) return std::numeric_limits<double>::infinity();
  double s = std::ldexp(1.0, q_);
  double gx = x * s, gy = y * s;  // in cell units
  std::int64_t bx = static_cast<std::int64_t>(std::floor(gx)) >> kBucketShift;
  std::int64_t by = static_cast<std::int64_t>(std::floor(gy)) >> kBucketShift;
  const double bucket = double(1 << kBucketShift);
  double best = std::numeric_limits<double>::infinity();
  // expand square rings of buckets until the found distance beats the ring
  for (std::int64_t ring = 0;; ++ring) {
    if (ring > 0 && best < (double(ring) - 1.5) * bucket) break;
    bool any_bucket_possible = false;
    for (std::int64_t di = -ring; di <= ring; ++di)
      for (std::int64_t dj = -ring; dj <= ring; ++dj) {
        if (std::max(std::llabs(di), std::llabs(dj)) != ring) continue;
        auto it = buckets_.find(pack(bx + di, by + dj));
        if (it == buckets_.end()) continue;
        any_bucket_possible = true;
        for (auto key : it->second) {
          double i = static_cast<double>(unpack_i(key));
          double j = static_cast<double>(unpack_j(key));
          double dx = std::max({0.0, i - gx, gx - (i + 1)});
          double dy = std::max({0.0, j - gy, gy - (j + 1)});
          best = std::min(best, dx * dx + dy * dy);
        }
      }
    // stop when the whole bbox has been covered
    std::int64_t span = std::max({std::llabs(bx - (bi0_ >> kBucketShift)),
                                  std::llabs(bx - (bi1_ >> kBucketShift)),
                                  std::llabs(by - (bj0_ >> kBucketShift)),
                                  std::llabs(by - (bj1_ >> kBucketShift))});
    (void)any_bucket_possible;
    if (ring > span && best < std::numeric_limits<double>::infinity()) break;
  }
  return std::sqrt(best) / s;
}

int DyadicSet::cmp_distance(std::int64_t px, std::int64_t py, int s,
                            std::int64_t tau_num, int tau_k) const {
  if (cells_.empty()) return +1;
  if (s < q_) {  // bring the point to at least cell resolution
    px <<= (q_ - s);
    py <<= (q_ - s);
    s = q_;
  }
  // quick double screen with a safety margin; exact only near the threshold
  double xd = std::ldexp(static_cast<double>(px), -s);
  double yd = std::ldexp(static_cast<double>(py), -s);
  double tau = std::ldexp(static_cast<double>(tau_num), -tau_k);
  double d = approx_distance(xd, yd);
  double slack = 1e-12 * (std::abs(d) + std::abs(tau) + 1.0);
  if (d > tau + slack) return +1;
  if (d < tau - slack) return -1;

  // exact: min over candidate squares of dx^2+dy^2 at scale 2^-s vs tau^2
  const int shift = s - q_;  // cell edge in units of 2^-s
  mpz_class best_num = -1;   // squared distance numerator at scale 2^-2s
  double sgrid = std::ldexp(1.0, q_);
  double cell_d = d * sgrid + 2.0;  // candidate window in cells
  std::int64_t ci = static_cast<std::int64_t>(std::floor(xd * sgrid));
  std::int64_t cj = static_cast<std::int64_t>(std::floor(yd * sgrid));
  std::int64_t r = static_cast<std::int64_t>(std::ceil(cell_d)) + 1;
  for (std::int64_t i = ci - r; i <= ci + r; ++i)
    for (std::int64_t j = cj - r; j <= cj + r; ++j) {
      if (!has_cell(i, j)) continue;
      mpz_class lo_x = mpz_class(static_cast<long>(i)) << shift;
      mpz_class hi_x = mpz_class(static_cast<long>(i + 1)) << shift;
      mpz_class lo_y = mpz_class(static_cast<long>(j)) << shift;
      mpz_class hi_y = mpz_class(static_cast<long>(j + 1)) << shift;
      mpz_class dx = 0, dy = 0;
      if (lo_x > px) dx = lo_x - px; else if (px > hi_x) dx = px - hi_x;
      if (lo_y > py) dy = lo_y - py; else if (py > hi_y) dy = py - hi_y;
      mpz_class d2 = dx * dx + dy * dy;
      if (best_num < 0 || d2 < best_num) best_num = d2;
    }
  if (best_num < 0) return +1;  // all candidates missed: genuinely far
  // compare best_num / 2^2s with tau_num^2 / 2^2tau_k
  mpz_class lhs = best_num, rhs = mpz_class(static_cast<long>(tau_num));
  rhs *= static_cast<long>(tau_num);
  if (tau_k < s) rhs <<= 2 * (s - tau_k); else lhs <<= 2 * (tau_k - s);
  return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? +1 : 0);
}

bool DyadicSet::subset_of(const DyadicSet& other) const {
  if (other.q_ < q_) {
    for (auto key : cells_) {
      std::int64_t i = unpack_i(key) >> (q_ - other.q_);
      std::int64_t j = unpack_j(key) >> (q_ - other.q_);
      if (!other.has_cell(i, j)) return false;
    }
    return true;
  }
  int shift = other.q_ - q_;
  std::int64_t n = std::int64_t{1} << shift;
  for (auto key : cells_) {
    std::int64_t i0 = unpack_i(key) << shift, j0 = unpack_j(key) << shift;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        if (!other.has_cell(i0 + a, j0 + b)) return false;
  }
  return true;
}

DyadicSet DyadicSet::dilated(int r) const {
  DyadicSet out(q_);
  for (auto key : cells_) {
    std::int64_t i = unpack_i(key), j = unpack_j(key);
    for (std::int64_t a = -r; a <= r; ++a)
      for (std::int64_t b = -r; b <= r; ++b) out.cells_.insert(pack(i + a, j + b));
  }
  return out;
}

DyadicSet DyadicSet::refined(int q_new) const {
  DyadicSet out(q_new);
  int shift = q_new - q_;
  std::int64_t n = std::int64_t{1} << shift;
  for (auto key : cells_) {
    std::int64_t i0 = unpack_i(key) << shift, j0 = unpack_j(key) << shift;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b) out.cells_.insert(pack(i0 + a, j0 + b));
  }
  return out;
}

std::vector<DyadicSquare> DyadicSet::squares() const {
  std::vector<DyadicSquare> out;
  out.reserve(cells_.size());
  for (auto key : cells_) out.push_back(DyadicSquare{q_, unpack_i(key), unpack_j(key)});
  std::sort(out.begin(), out.end(), [](const DyadicSquare& a, const DyadicSquare& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

void DyadicSet::bbox(std::int64_t& i0, std::int64_t& i1, std::int64_t& j0, std::int64_t& j1) const {
  if (!buckets_ok_) build_buckets();
  i0 = bi0_; i1 = bi1_; j0 = bj0_; j1 = bj1_;
}

}  // namespace feigenjet
