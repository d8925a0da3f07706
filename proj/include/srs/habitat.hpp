#ifndef SRS_HABITAT_HPP
#define SRS_HABITAT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace srs {

using AntId = std::int64_t;

/// Canonical (wrapped) lattice coordinate. Column x grows to the east, row y
/// grows to the north.
struct CellCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

/// Compass octants in clockwise order starting at north.
enum class Direction : int { N = 0, NE, E, SE, S, SW, W, NW };

inline constexpr int kNumDirections = 8;

/// Cell offset of one step in direction `d`.
constexpr std::array<int, 2> direction_offset(Direction d) {
  constexpr std::array<std::array<int, 2>, kNumDirections> offsets{{
      {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};
  return offsets[static_cast<int>(d)];
}

/// Toroidal lattice carrying the pheromone field and the per-cell occupant.
///
/// The pheromone density is stored as a dense `width x height` array indexed
/// `(x, y)`; it never becomes negative. Each cell holds at most one agent id.
class HabitatGrid {
 public:
  HabitatGrid(int width = 100, int height = 100);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return static_cast<std::size_t>(width_) * height_; }

  CellCoord wrap(long long raw_x, long long raw_y) const;

  /// The 8 surrounding cells in N, NE, E, SE, S, SW, W, NW order.
  std::array<CellCoord, kNumDirections> moore_neighbors(CellCoord c) const;

  double pheromone(CellCoord c) const { return pheromone_(c.x, c.y); }
  const Eigen::ArrayXXd& pheromone_field() const { return pheromone_; }
  double total_pheromone() const { return pheromone_.sum(); }

  /// Adds `amount` (must be >= 0) to the density at `c`.
  void deposit(CellCoord c, double amount);

  /// Multiplies every cell by (1 - k), k in [0, 1].
  void evaporate(double k);

  bool is_occupied(CellCoord c) const { return occupancy_[index(c)] != kEmpty; }
  std::optional<AntId> occupant(CellCoord c) const;
  void occupy(CellCoord c, AntId id);
  void vacate(CellCoord c);

  /// Number of occupied cells among the Moore neighbors of `c`.
  int occupied_neighbor_count(CellCoord c) const;

  std::size_t index(CellCoord c) const {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }
  CellCoord coord(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

 private:
  static constexpr AntId kEmpty = -1;

  int width_;
  int height_;
  Eigen::ArrayXXd pheromone_;
  std::vector<AntId> occupancy_;
};

/// Writes `field` as a plain (P2) grayscale PGM, linearly rescaled to 0..255
/// over its own min/max. Row order is north first.
void write_pgm(const std::filesystem::path& path, const Eigen::ArrayXXd& field);

/// `pheromone_t{step}.pgm`
std::filesystem::path snapshot_filename(int step);

}  // namespace srs

#endif  // SRS_HABITAT_HPP
