#ifndef PLB_RASTER_HPP
#define PLB_RASTER_HPP

#include <Eigen/Dense>

#include "plb/errors.hpp"

namespace plb {

/// Boolean interior mask of a polygonal domain on a uniform Cartesian grid.
/// Node (i, j) sits at origin + (i, j) * h; true marks an interior node.
/// The interior is a single 4-connected component; anything smaller was
/// discarded at construction.
struct RasterDomain {
  double h = 0.0;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  Eigen::ArrayX2d source;  // classifying polyline

  Eigen::Index interior_count() const { return mask.count(); }
  double mask_area() const { return double(interior_count()) * h * h; }
};

/// Even-odd classification of grid nodes against a closed polyline (the edge
/// back from the last row to the first is implied). Nodes on the polyline
/// count as exterior. Segments with interior on both sides (slits traced by a
/// degenerate boundary) act as barriers: nodes within h/2 of them are removed.
RasterDomain rasterize(const Eigen::ArrayX2d& polyline, double h);

/// Signed polygon area of a closed polyline (positive when counterclockwise).
double polygon_area(const Eigen::ArrayX2d& polyline);

/// Even-odd membership test of a single point.
bool point_in_polygon(const Eigen::ArrayX2d& polyline, double px, double py);

}  // namespace plb

#endif
