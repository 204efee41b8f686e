#include <algorithm>
#include <cmath>
#include <deque>
#include <tuple>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/grid.hpp"
#include "birs/textfmt.hpp"

namespace birs::grid {

std::string_view to_string(DiffKind k) {
  switch (k) {
    case DiffKind::None: return "NONE";
    case DiffKind::Extra: return "EXTRA";
    case DiffKind::Missing: return "MISSING";
  }
  return "?";
}

std::size_t DiffLattice::count(DiffKind k) const { return std::count(cells.begin(), cells.end(), k); }

namespace {

int cell_offset(double from, double to, double res, const char* axis) {
  double d = (to - from) / res;
  double k = std::round(d);
  if (std::abs(d - k) > 1e-6) {
    throw Error("RegistrationError", fmt::format("{} origins differ by {} cells, not a whole number", axis, d));
  }
  return static_cast<int>(k);
}

}  // namespace

DiffLattice diff_grids(const OccupancyGrid& planned, const OccupancyGrid& built) {
  const double res = planned.resolution();
  if (std::abs(res - built.resolution()) > 1e-9 * res) {
    throw Error("ResolutionMismatch", fmt::format("planned {} vs built {} m/cell", res, built.resolution()));
  }
  if (planned.origin().theta != built.origin().theta) {
    throw Error("RegistrationError", "origins differ in yaw");
  }
  // Built cell (c, r) sits at planned cell (c + kx, r + ky).
  const int kx = cell_offset(planned.origin().x, built.origin().x, res, "x");
  const int ky = cell_offset(planned.origin().y, built.origin().y, res, "y");

  const int c0 = std::max(0, kx), c1 = std::min(planned.width(), kx + built.width());
  const int r0 = std::max(0, ky), r1 = std::min(planned.height(), ky + built.height());

  DiffLattice d;
  d.spec.resolution = res;
  d.spec.width = std::max(0, c1 - c0);
  d.spec.height = std::max(0, r1 - r0);
  d.spec.origin = {std::round((planned.origin().x + c0 * res) * 1e9) / 1e9,
                   std::round((planned.origin().y + r0 * res) * 1e9) / 1e9, planned.origin().theta};
  d.cells.assign(d.spec.cells(), DiffKind::None);
  for (int r = 0; r < d.spec.height; ++r) {
    for (int c = 0; c < d.spec.width; ++c) {
      Cell p = planned.at(c + c0, r + r0);
      Cell b = built.at(c + c0 - kx, r + r0 - ky);
      DiffKind k = DiffKind::None;
      if (b == Cell::Occupied && p == Cell::Free) k = DiffKind::Extra;
      if (p == Cell::Occupied && b == Cell::Free) k = DiffKind::Missing;
      d.cells[static_cast<std::size_t>(r) * d.spec.width + c] = k;
    }
  }
  return d;
}

std::vector<DiffCluster> cluster_diff(const DiffLattice& diff, double min_area) {
  const int w = diff.spec.width, h = diff.spec.height;
  const double res = diff.spec.resolution;
  std::vector<bool> seen(diff.cells.size(), false);
  std::vector<DiffCluster> out;

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      const DiffKind kind = diff.cells[i];
      if (kind == DiffKind::None || seen[i]) continue;
      DiffCluster cl;
      cl.kind = kind;
      std::deque<CellIndex> work{{c, r}};
      seen[i] = true;
      while (!work.empty()) {
        CellIndex cur = work.front();
        work.pop_front();
        cl.cells.push_back(cur);
        const CellIndex next[] = {{cur.c + 1, cur.r}, {cur.c - 1, cur.r}, {cur.c, cur.r + 1}, {cur.c, cur.r - 1}};
        for (const auto& n : next) {
          if (n.c < 0 || n.r < 0 || n.c >= w || n.r >= h) continue;
          const std::size_t j = static_cast<std::size_t>(n.r) * w + n.c;
          if (seen[j] || diff.cells[j] != kind) continue;
          seen[j] = true;
          work.push_back(n);
        }
      }
      cl.area = static_cast<double>(cl.cells.size()) * res * res;
      if (cl.area < min_area - 1e-12) continue;
      std::sort(cl.cells.begin(), cl.cells.end(),
                [](const CellIndex& a, const CellIndex& b) { return std::tie(a.r, a.c) < std::tie(b.r, b.c); });
      double sx = 0, sy = 0;
      for (const auto& cell : cl.cells) {
        Point2 p = diff.spec.cell_center(cell.c, cell.r);
        sx += p.x;
        sy += p.y;
        cl.bbox.expand(Point2{diff.spec.origin.x + cell.c * res, diff.spec.origin.y + cell.r * res});
        cl.bbox.expand(Point2{diff.spec.origin.x + (cell.c + 1) * res, diff.spec.origin.y + (cell.r + 1) * res});
      }
      cl.centroid = {sx / cl.cells.size(), sy / cl.cells.size()};
      out.push_back(std::move(cl));
    }
  }

  auto min_rc = [](const DiffCluster& cl) {
    // cells are sorted by (r, c), so the first cell has the smallest r.
    int min_c = cl.cells.front().c;
    for (const auto& cell : cl.cells) min_c = std::min(min_c, cell.c);
    return std::pair{cl.cells.front().r, min_c};
  };
  std::stable_sort(out.begin(), out.end(), [&](const DiffCluster& a, const DiffCluster& b) {
    if (a.cells.size() != b.cells.size()) return a.cells.size() > b.cells.size();
    return min_rc(a) < min_rc(b);
  });
  for (std::size_t k = 0; k < out.size(); ++k) out[k].id = static_cast<int>(k + 1);
  return out;
}

std::string write_diff_report(const DiffLattice& diff, const std::vector<DiffCluster>& clusters) {
  std::string out = fmt::format("DIFF {} {} {} {} {} {}\n", diff.spec.width, diff.spec.height,
                                text::decimal(diff.spec.resolution), text::decimal_point(diff.spec.origin.x),
                                text::decimal_point(diff.spec.origin.y), clusters.size());
  for (const auto& cl : clusters) {
    out += fmt::format("CLUSTER {} {} cells={} area={} centroid={},{} bbox={},{},{},{}\n", cl.id, to_string(cl.kind),
                       cl.cells.size(), text::fixed(cl.area, 4), text::fixed(cl.centroid.x, 4),
                       text::fixed(cl.centroid.y, 4), text::fixed(cl.bbox.xmin, 4), text::fixed(cl.bbox.ymin, 4),
                       text::fixed(cl.bbox.xmax, 4), text::fixed(cl.bbox.ymax, 4));
  }
  return out;
}

}  // namespace birs::grid
