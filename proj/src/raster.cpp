#include "plb/raster.hpp"

#include <cmath>
#include <iostream>
#include <vector>

namespace plb {

double polygon_area(const Eigen::ArrayX2d& poly) {
  const Eigen::Index n = poly.rows();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index m = (k + 1) % n;
    acc += poly(k, 0) * poly(m, 1) - poly(m, 0) * poly(k, 1);
  }
  return 0.5 * acc;
}

bool point_in_polygon(const Eigen::ArrayX2d& poly, double px, double py) {
  const Eigen::Index n = poly.rows();
  bool inside = false;
  for (Eigen::Index k = 0, m = n - 1; k < n; m = k++) {
    const double xi = poly(k, 0), yi = poly(k, 1);
    const double xj = poly(m, 0), yj = poly(m, 1);
    if ((yi > py) != (yj > py) &&
        px < (xj - xi) * (py - yi) / (yj - yi) + xi)
      inside = !inside;
  }
  return inside;
}

namespace {

double point_segment_distance_sq(double px, double py, double x0, double y0,
                                 double x1, double y1) {
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((px - x0) * dx + (py - y0) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const double rx = px - (x0 + t * dx), ry = py - (y0 + t * dy);
  return rx * rx + ry * ry;
}

// Remove all but the largest 4-connected component.
void keep_largest_component(Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
  const Eigen::Index nx = mask.rows(), ny = mask.cols();
  Eigen::ArrayXXi label = Eigen::ArrayXXi::Constant(nx, ny, -1);
  int n_labels = 0;
  std::vector<Eigen::Index> sizes;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index j = 0; j < ny; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      if (!mask(i, j) || label(i, j) >= 0) continue;
      const int id = n_labels++;
      sizes.push_back(0);
      stack.push_back({i, j});
      label(i, j) = id;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        ++sizes[id];
        const Eigen::Index nb[4][2] = {{a + 1, b}, {a - 1, b}, {a, b + 1}, {a, b - 1}};
        for (const auto& q : nb) {
          if (q[0] < 0 || q[0] >= nx || q[1] < 0 || q[1] >= ny) continue;
          if (mask(q[0], q[1]) && label(q[0], q[1]) < 0) {
            label(q[0], q[1]) = id;
            stack.push_back({q[0], q[1]});
          }
        }
      }
    }
  }
  if (n_labels <= 1) return;
  int keep = 0;
  for (int id = 1; id < n_labels; ++id)
    if (sizes[id] > sizes[keep]) keep = id;
  Eigen::Index dropped = 0;
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      if (mask(i, j) && label(i, j) != keep) {
        mask(i, j) = false;
        ++dropped;
      }
  std::cerr << "rasterize: discarded " << n_labels - 1
            << " disconnected component(s) totalling " << dropped << " node(s)\n";
}

}  // namespace

RasterDomain rasterize(const Eigen::ArrayX2d& polyline, double h) {
  if (polyline.rows() < 3) throw ValidationError("polyline needs at least 3 points");
  if (!(h > 0.0)) throw ValidationError("grid spacing h must be positive");

  RasterDomain dom;
  dom.h = h;
  dom.source = polyline;
  const double xmin = polyline.col(0).minCoeff(), xmax = polyline.col(0).maxCoeff();
  const double ymin = polyline.col(1).minCoeff(), ymax = polyline.col(1).maxCoeff();
  dom.origin = {xmin, ymin};
  const auto count_nodes = [h](double lo, double hi) {
    return static_cast<Eigen::Index>(std::ceil((hi - lo) / h - 1e-12)) + 1;
  };
  const Eigen::Index nx = count_nodes(xmin, xmax), ny = count_nodes(ymin, ymax);
  dom.mask.resize(nx, ny);

  for (Eigen::Index j = 0; j < ny; ++j) {
    const double py = ymin + double(j) * h;
    for (Eigen::Index i = 0; i < nx; ++i)
      dom.mask(i, j) = point_in_polygon(polyline, xmin + double(i) * h, py);
  }

  // Nodes sitting on the polyline itself are exterior; the interior is open.
  const Eigen::Index nseg = polyline.rows();
  const double on_eps = 1e-9 * h;
  const auto nodes_near_segment = [&](Eigen::Index k, double radius, auto&& fn) {
    const Eigen::Index m = (k + 1) % nseg;
    const double x0 = polyline(k, 0), y0 = polyline(k, 1);
    const double x1 = polyline(m, 0), y1 = polyline(m, 1);
    const auto lo_idx = [&](double v, double o) {
      return std::max<Eigen::Index>(0, Eigen::Index(std::floor((v - o - radius) / h)));
    };
    const Eigen::Index i0 = lo_idx(std::min(x0, x1), xmin);
    const Eigen::Index j0 = lo_idx(std::min(y0, y1), ymin);
    const Eigen::Index i1 = std::min(
        nx - 1, Eigen::Index(std::ceil((std::max(x0, x1) - xmin + radius) / h)));
    const Eigen::Index j1 = std::min(
        ny - 1, Eigen::Index(std::ceil((std::max(y0, y1) - ymin + radius) / h)));
    for (Eigen::Index j = j0; j <= j1; ++j)
      for (Eigen::Index i = i0; i <= i1; ++i) {
        if (!dom.mask(i, j)) continue;
        const double d2 = point_segment_distance_sq(
            xmin + double(i) * h, ymin + double(j) * h, x0, y0, x1, y1);
        if (d2 <= radius * radius) fn(i, j);
      }
  };
  for (Eigen::Index k = 0; k < nseg; ++k)
    nodes_near_segment(k, on_eps, [&](Eigen::Index i, Eigen::Index j) {
      dom.mask(i, j) = false;
    });

  // Slit segments: both sides of the segment classify interior. Nodes within
  // h/2 of them are removed so the trace acts as a Dirichlet barrier.
  for (Eigen::Index k = 0; k < nseg; ++k) {
    const Eigen::Index m = (k + 1) % nseg;
    const double dx = polyline(m, 0) - polyline(k, 0);
    const double dy = polyline(m, 1) - polyline(k, 1);
    const double len = std::hypot(dx, dy);
    if (len == 0.0) continue;
    const double mx = 0.5 * (polyline(k, 0) + polyline(m, 0));
    const double my = 0.5 * (polyline(k, 1) + polyline(m, 1));
    const double off = 0.25 * h;
    const double nxu = -dy / len, nyu = dx / len;
    if (point_in_polygon(polyline, mx + off * nxu, my + off * nyu) &&
        point_in_polygon(polyline, mx - off * nxu, my - off * nyu)) {
      nodes_near_segment(k, 0.5 * h, [&](Eigen::Index i, Eigen::Index j) {
        dom.mask(i, j) = false;
      });
    }
  }

  if (dom.mask.count() == 0)
    throw ResolutionError("rasterization produced an empty interior; use a smaller h");
  keep_largest_component(dom.mask);
  return dom;
}

}  // namespace plb
