#include "srs/habitat.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace srs {

namespace {

int floor_mod(long long value, int modulus) {
  const long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

}  // namespace

HabitatGrid::HabitatGrid(int width, int height)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("habitat dimensions must be positive");
  }
  pheromone_ = Eigen::ArrayXXd::Zero(width, height);
  occupancy_.assign(cell_count(), kEmpty);
}

CellCoord HabitatGrid::wrap(long long raw_x, long long raw_y) const {
  return {floor_mod(raw_x, width_), floor_mod(raw_y, height_)};
}

std::array<CellCoord, kNumDirections> HabitatGrid::moore_neighbors(CellCoord c) const {
  std::array<CellCoord, kNumDirections> out;
  for (int d = 0; d < kNumDirections; ++d) {
    const auto [dx, dy] = direction_offset(static_cast<Direction>(d));
    out[d] = wrap(static_cast<long long>(c.x) + dx, static_cast<long long>(c.y) + dy);
  }
  return out;
}

void HabitatGrid::deposit(CellCoord c, double amount) {
  if (!(amount >= 0.0)) {
    throw std::invalid_argument("pheromone deposit must be non-negative");
  }
  pheromone_(c.x, c.y) += amount;
}

void HabitatGrid::evaporate(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("evaporation rate must lie in [0, 1]");
  }
  pheromone_ *= (1.0 - k);
}

std::optional<AntId> HabitatGrid::occupant(CellCoord c) const {
  const AntId id = occupancy_[index(c)];
  if (id == kEmpty) return std::nullopt;
  return id;
}

void HabitatGrid::occupy(CellCoord c, AntId id) {
  if (id < 0) throw std::logic_error("agent ids are non-negative");
  AntId& slot = occupancy_[index(c)];
  if (slot != kEmpty) {
    throw std::logic_error("cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                           ") is already occupied");
  }
  slot = id;
}

void HabitatGrid::vacate(CellCoord c) {
  AntId& slot = occupancy_[index(c)];
  if (slot == kEmpty) {
    throw std::logic_error("cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                           ") is already empty");
  }
  slot = kEmpty;
}

int HabitatGrid::occupied_neighbor_count(CellCoord c) const {
  int n = 0;
  for (const CellCoord& nb : moore_neighbors(c)) n += is_occupied(nb) ? 1 : 0;
  return n;
}

void write_pgm(const std::filesystem::path& path, const Eigen::ArrayXXd& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

  const double lo = field.minCoeff();
  const double hi = field.maxCoeff();
  const double span = hi - lo;

  out << "P2\n" << field.rows() << ' ' << field.cols() << "\n255\n";
  for (Eigen::Index y = field.cols() - 1; y >= 0; --y) {
    for (Eigen::Index x = 0; x < field.rows(); ++x) {
      int level = 0;
      if (span > 0.0) {
        level = static_cast<int>(std::lround(255.0 * (field(x, y) - lo) / span));
      }
      out << level << (x + 1 == field.rows() ? '\n' : ' ');
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::filesystem::path snapshot_filename(int step) {
  return "pheromone_t" + std::to_string(step) + ".pgm";
}

}  // namespace srs
