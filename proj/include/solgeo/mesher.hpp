#pragma once

// Zero-set extraction of scalar fields on a regular grid, mesh topology checks
// and plain-text writers (OBJ meshes, CSV curves).

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "solgeo/sol_core.hpp"

namespace solgeo {

struct Box {
  SolPoint min{-5.0, -5.0, -5.0};
  SolPoint max{5.0, 5.0, 5.0};

  static Box cube(double half_width);
};

struct GridSpec {
  Box bounds;
  std::array<int, 3> cells{96, 96, 96};  // cells per axis; nodes = cells + 1

  static GridSpec uniform(const Box& box, int cells_per_axis);
  /// Throws SolError(InvalidArgument) unless min < max and cells >= 2 per axis.
  void validate() const;
  SolPoint node(int i, int j, int k) const;
  double max_cell_diagonal() const;
};

struct TriMesh {
  std::vector<SolPoint> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  bool empty() const { return triangles.empty(); }
};

using ScalarField = std::function<double(const SolPoint&)>;

/// Triangulates {f = 0}, oriented so normals point towards f > 0. Each grid
/// cell is split into six tetrahedra around its main diagonal, which keeps
/// neighbouring cells consistent and the result watertight inside the box.
/// Field evaluation runs on up to SOLGEO_THREADS threads; output does not
/// depend on the thread count.
TriMesh march(const ScalarField& f, const GridSpec& grid);

/// V - E + F over the vertices referenced by triangles.
long euler_characteristic(const TriMesh& mesh);

/// Every edge is shared by exactly two triangles.
bool is_closed(const TriMesh& mesh);

/// Number of threads the field evaluation may use.
unsigned worker_threads();

/// Decimal form with 17 significant digits (round-trips any double).
std::string format_number(double v);

void write_obj(std::ostream& out, const TriMesh& mesh);

/// RFC 4180 CSV with a header row.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace solgeo
