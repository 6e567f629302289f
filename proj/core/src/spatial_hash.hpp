#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dfforge/cpoint.hpp"

namespace dfforge::detail {

/// Uniform-grid bucket index over points of R^4.
class SpatialHash4 {
 public:
  using Key = std::array<std::int64_t, 4>;

  SpatialHash4(const std::vector<Vec4>& pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(pts[i])].push_back(i);
  }

  Key key(const Vec4& p) const {
    Key k;
    for (int i = 0; i < 4; ++i) k[i] = static_cast<std::int64_t>(std::floor(p[i] / cell_));
    return k;
  }
  double cell() const { return cell_; }

  /// Calls f(index) for every point in cells within `ring` cells of q's cell.
  template <class F>
  void for_near(const Vec4& q, int ring, F&& f) const {
    const Key c = key(q);
    Key k;
    for (k[0] = c[0] - ring; k[0] <= c[0] + ring; ++k[0])
      for (k[1] = c[1] - ring; k[1] <= c[1] + ring; ++k[1])
        for (k[2] = c[2] - ring; k[2] <= c[2] + ring; ++k[2])
          for (k[3] = c[3] - ring; k[3] <= c[3] + ring; ++k[3]) {
            auto it = cells_.find(k);
            if (it == cells_.end()) continue;
            for (std::size_t idx : it->second) f(idx);
          }
  }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  const std::vector<Vec4>& pts_;
  double cell_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

}  // namespace dfforge::detail
