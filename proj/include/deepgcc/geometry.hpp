#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace deepgcc {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool finite() const;
  double norm() const;

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Point3& o) const = default;
};

double distance(const Point3& a, const Point3& b);

struct PhysicalConstants {
  double c = 340.0;  // sound speed, m/s
  double fs = 96000.0;

  void validate() const;
};

// Ordered microphone positions. At least two, all distinct.
struct MicArray {
  std::vector<Point3> mics;
  std::vector<std::string> labels;  // optional, empty or one per mic

  void validate() const;
  int size() const { return static_cast<int>(mics.size()); }
  Point3 centroid() const;
  double max_pairwise_distance() const;

  // count mics evenly spaced on a horizontal circle, first mic at +x.
  static MicArray circular(const Point3& center, double radius, int count);
};

// Axis-aligned candidate grid. Both boundary planes are included, so the
// per-axis count is floor(extent/resolution) + 1.
struct Grid3D {
  Point3 min;
  Point3 max;
  std::array<double, 3> resolution{0.1, 0.1, 0.1};

  void validate() const;
  std::array<int, 3> cell_counts() const;
  std::size_t point_count() const;
  // Point at flat index (x fastest, then y, then z).
  Point3 point_at(std::size_t index) const;

  static Grid3D cube(const Point3& min, const Point3& max, double resolution);
};

// Eq. of propagation: (||q-mk|| - ||q-ml||) / c, in seconds.
double tdoa(const Point3& q, const Point3& mk, const Point3& ml, double c);

// ceil(fs * max pairwise mic distance / c); upper bound on |tdoa * fs|.
int max_lag_samples(const MicArray& array, const PhysicalConstants& consts);

// All (k, l) with k < l, lexicographic. M*(M-1)/2 entries.
std::vector<std::pair<int, int>> enumerate_pairs(const MicArray& array);
std::vector<std::pair<int, int>> enumerate_pairs(int mic_count);

// Row-major enumeration of all grid points, x fastest.
std::vector<Point3> grid_points(const Grid3D& grid);

}  // namespace deepgcc
