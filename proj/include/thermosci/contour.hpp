#pragma once

// Marching-squares level-set extraction on a rectilinear grid.
//
// A node is "inside" when its value is strictly above the level, so plateaus
// sitting exactly at the level never produce spurious boundaries. Crossing
// points are linearly interpolated along cell edges in index space and then
// mapped to axis coordinates (geometrically for log-spaced axes). Saddle cells
// are disambiguated with the mean of the four corners.

#include <cmath>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

namespace thermosci {

struct ContourPoint {
  double x = 0.0;
  double y = 0.0;
};

using Polyline = std::vector<ContourPoint>;

struct AxisNodes {
  std::vector<double> values;
  bool log_scale = false;

  /// Coordinate at fractional index `f` in [0, size-1].
  double at(double f) const {
    const auto last = values.size() - 1;
    auto i = static_cast<std::size_t>(std::floor(f));
    if (i >= last) i = last == 0 ? 0 : last - 1;
    const double frac = f - static_cast<double>(i);
    if (values.size() == 1) return values.front();
    const double a = values[i];
    const double b = values[i + 1];
    if (log_scale) return std::exp(std::log(a) + frac * (std::log(b) - std::log(a)));
    return a + frac * (b - a);
  }
};

namespace detail {

struct EdgePoint {
  std::size_t edge = 0;
  double fx = 0.0;
  double fy = 0.0;
};

struct Segment {
  EdgePoint a;
  EdgePoint b;
};

}  // namespace detail

/// Level set of `values` (row-major, x varying fastest, nx * ny entries) as
/// polylines in axis coordinates. Open chains come first, ordered by their
/// first segment; closed loops repeat their first point at the end.
inline std::vector<Polyline> marching_squares(std::span<const double> values, const AxisNodes& x_axis,
                                              const AxisNodes& y_axis, double level = 0.0) {
  const std::size_t nx = x_axis.values.size();
  const std::size_t ny = y_axis.values.size();
  std::vector<Polyline> out;
  if (nx < 2 || ny < 2 || values.size() != nx * ny) return out;

  auto v = [&](std::size_t i, std::size_t j) { return values[j * nx + i]; };
  auto inside = [&](std::size_t i, std::size_t j) { return v(i, j) > level; };
  const std::size_t h_edges = (nx - 1) * ny;

  // Edge ids: horizontal edge from (i,j) to (i+1,j) is j*(nx-1)+i; vertical
  // edge from (i,j) to (i,j+1) is h_edges + j*nx + i.
  auto horizontal = [&](std::size_t i, std::size_t j) {
    const double va = v(i, j);
    const double vb = v(i + 1, j);
    const double t = (level - va) / (vb - va);
    return detail::EdgePoint{j * (nx - 1) + i, static_cast<double>(i) + t, static_cast<double>(j)};
  };
  auto vertical = [&](std::size_t i, std::size_t j) {
    const double va = v(i, j);
    const double vb = v(i, j + 1);
    const double t = (level - va) / (vb - va);
    return detail::EdgePoint{h_edges + j * nx + i, static_cast<double>(i), static_cast<double>(j) + t};
  };

  std::vector<detail::Segment> segments;
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const unsigned c = (inside(i, j) ? 1u : 0u) | (inside(i + 1, j) ? 2u : 0u) |
                         (inside(i + 1, j + 1) ? 4u : 0u) | (inside(i, j + 1) ? 8u : 0u);
      if (c == 0 || c == 15) continue;
      auto bottom = [&] { return horizontal(i, j); };
      auto top = [&] { return horizontal(i, j + 1); };
      auto left = [&] { return vertical(i, j); };
      auto right = [&] { return vertical(i + 1, j); };
      auto add = [&](detail::EdgePoint a, detail::EdgePoint b) { segments.push_back({a, b}); };

      if (c == 5 || c == 10) {
        const double center = 0.25 * (v(i, j) + v(i + 1, j) + v(i + 1, j + 1) + v(i, j + 1));
        const bool center_inside = center > level;
        // Isolate whichever diagonal pair is not joined through the center.
        const bool cut_corners_00_11 = (c == 5) != center_inside;
        if (cut_corners_00_11) {
          add(left(), bottom());
          add(right(), top());
        } else {
          add(bottom(), right());
          add(top(), left());
        }
        continue;
      }

      std::vector<detail::EdgePoint> crossed;
      const bool b0 = c & 1u, b1 = c & 2u, b2 = c & 4u, b3 = c & 8u;
      if (b0 != b1) crossed.push_back(bottom());
      if (b1 != b2) crossed.push_back(right());
      if (b2 != b3) crossed.push_back(top());
      if (b3 != b0) crossed.push_back(left());
      add(crossed[0], crossed[1]);
    }
  }

  // Link segments through shared edge crossings.
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_edge[segments[s].a.edge].push_back(s);
    by_edge[segments[s].b.edge].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);

  auto to_axis = [&](const detail::EdgePoint& p) {
    return ContourPoint{x_axis.at(p.fx), y_axis.at(p.fy)};
  };
  auto other_segment = [&](std::size_t edge, std::size_t current) -> long {
    for (auto s : by_edge[edge]) {
      if (s != current && !used[s]) return static_cast<long>(s);
    }
    return -1;
  };

  auto trace = [&](std::size_t start, bool start_from_a) {
    Polyline line;
    std::size_t seg = start;
    detail::EdgePoint head = start_from_a ? segments[seg].a : segments[seg].b;
    line.push_back(to_axis(head));
    while (true) {
      used[seg] = true;
      const auto& s = segments[seg];
      const detail::EdgePoint next = s.a.edge == head.edge ? s.b : s.a;
      line.push_back(to_axis(next));
      const long follow = other_segment(next.edge, seg);
      if (follow < 0) break;
      seg = static_cast<std::size_t>(follow);
      head = next;
    }
    return line;
  };

  // Open chains start at a crossing used by exactly one segment.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    if (by_edge[segments[s].a.edge].size() == 1) {
      out.push_back(trace(s, true));
    } else if (by_edge[segments[s].b.edge].size() == 1) {
      out.push_back(trace(s, false));
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) out.push_back(trace(s, true));
  }
  return out;
}

}  // namespace thermosci
