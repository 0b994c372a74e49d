#pragma once

// Open chart domains and reproducible sample-point generation. Every model
// documents a safe box well inside its domain (e.g. theta2 in [0.5, 3] for
// the scale-like coordinates); acceptance sweeps draw seeded points there so
// runs are byte-reproducible.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "statgeo/errors.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }
};

struct ChartDomain {
  int dim = 0;
  std::function<bool(const Point&)> contains;
  Box sample_box;  // strictly interior; margin exceeds every FD stencil used

  void require_inside(const Point& p) const {
    if (p.size() != dim) {
      throw ShapeError("point dimension " + std::to_string(p.size()) +
                       " does not match chart dimension " + std::to_string(dim));
    }
    if (!p.allFinite()) throw DomainError("point has non-finite coordinates");
    if (contains && !contains(p)) throw DomainError("point outside chart domain");
  }
};

// Counter-based generator: output depends only on (seed, index), never on
// call order, so parallel sweeps and reruns agree.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// uniform in [0,1)
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(seed + counter * 0x9e3779b97f4a7c15ULL);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace rng

inline std::vector<Point> sample_points(const Box& box, int count, std::uint64_t seed) {
  if (count < 1) throw UsageError("sample count must be at least 1");
  const int n = box.dim();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point p(n);
    for (int a = 0; a < n; ++a) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(i) * kMaxDim + static_cast<std::uint64_t>(a) + 1;
      p(a) = box.lo(a) + (box.hi(a) - box.lo(a)) * rng::uniform01(seed, counter);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace statgeo
