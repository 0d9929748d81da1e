#include "deepgcc/geometry.hpp"

#include <cmath>
#include <numbers>

#include "deepgcc/errors.hpp"

namespace deepgcc {

bool Point3::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double Point3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

void PhysicalConstants::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("sound speed must be positive");
  if (!(fs > 0.0) || !std::isfinite(fs)) throw ValidationError("sampling rate must be positive");
}

void MicArray::validate() const {
  if (mics.size() < 2) throw ValidationError("microphone array needs at least 2 microphones");
  if (!labels.empty() && labels.size() != mics.size())
    throw ValidationError("label count does not match microphone count");
  for (std::size_t i = 0; i < mics.size(); ++i) {
    if (!mics[i].finite()) throw ValidationError("non-finite microphone coordinates");
    for (std::size_t j = i + 1; j < mics.size(); ++j) {
      if (mics[i] == mics[j]) throw ValidationError("two microphones share the same position");
    }
  }
}

Point3 MicArray::centroid() const {
  Point3 s;
  for (const auto& m : mics) s = s + m;
  return s * (1.0 / static_cast<double>(mics.size()));
}

double MicArray::max_pairwise_distance() const {
  double best = 0.0;
  for (std::size_t i = 0; i < mics.size(); ++i)
    for (std::size_t j = i + 1; j < mics.size(); ++j)
      best = std::max(best, distance(mics[i], mics[j]));
  return best;
}

MicArray MicArray::circular(const Point3& center, double radius, int count) {
  if (count < 2) throw ValidationError("circular array needs at least 2 microphones");
  if (!(radius > 0.0)) throw ValidationError("circular array radius must be positive");
  MicArray array;
  array.mics.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    array.mics.push_back(
        {center.x + radius * std::cos(phi), center.y + radius * std::sin(phi), center.z});
  }
  return array;
}

void Grid3D::validate() const {
  if (!min.finite() || !max.finite()) throw ValidationError("grid corners must be finite");
  if (!(max.x >= min.x && max.y >= min.y && max.z >= min.z))
    throw ValidationError("grid max must be >= min on every axis");
  for (double r : resolution)
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("grid resolution must be positive");
}

std::array<int, 3> Grid3D::cell_counts() const {
  validate();
  const double ext[3] = {max.x - min.x, max.y - min.y, max.z - min.z};
  std::array<int, 3> counts;
  for (int a = 0; a < 3; ++a) {
    // Tolerate extents that are an integer multiple of the resolution up to rounding.
    counts[a] = static_cast<int>(std::floor(ext[a] / resolution[a] + 1e-9)) + 1;
  }
  return counts;
}

std::size_t Grid3D::point_count() const {
  const auto c = cell_counts();
  return static_cast<std::size_t>(c[0]) * c[1] * c[2];
}

Point3 Grid3D::point_at(std::size_t index) const {
  const auto c = cell_counts();
  const std::size_t nx = static_cast<std::size_t>(c[0]);
  const std::size_t ny = static_cast<std::size_t>(c[1]);
  const std::size_t ix = index % nx;
  const std::size_t iy = (index / nx) % ny;
  const std::size_t iz = index / (nx * ny);
  return {min.x + static_cast<double>(ix) * resolution[0],
          min.y + static_cast<double>(iy) * resolution[1],
          min.z + static_cast<double>(iz) * resolution[2]};
}

Grid3D Grid3D::cube(const Point3& min, const Point3& max, double resolution) {
  Grid3D g;
  g.min = min;
  g.max = max;
  g.resolution = {resolution, resolution, resolution};
  g.validate();
  return g;
}

double tdoa(const Point3& q, const Point3& mk, const Point3& ml, double c) {
  if (!(c > 0.0)) throw ValidationError("sound speed must be positive");
  if (!q.finite() || !mk.finite() || !ml.finite())
    throw ValidationError("tdoa: non-finite coordinates");
  return (distance(q, mk) - distance(q, ml)) / c;
}

int max_lag_samples(const MicArray& array, const PhysicalConstants& consts) {
  array.validate();
  consts.validate();
  return static_cast<int>(std::ceil(consts.fs * array.max_pairwise_distance() / consts.c));
}

std::vector<std::pair<int, int>> enumerate_pairs(int mic_count) {
  if (mic_count < 2) throw ValidationError("pair enumeration needs at least 2 microphones");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(mic_count) * (mic_count - 1) / 2);
  for (int k = 0; k < mic_count; ++k)
    for (int l = k + 1; l < mic_count; ++l) pairs.emplace_back(k, l);
  return pairs;
}

std::vector<std::pair<int, int>> enumerate_pairs(const MicArray& array) {
  array.validate();
  return enumerate_pairs(array.size());
}

std::vector<Point3> grid_points(const Grid3D& grid) {
  const std::size_t n = grid.point_count();
  std::vector<Point3> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(grid.point_at(i));
  return points;
}

}  // namespace deepgcc
