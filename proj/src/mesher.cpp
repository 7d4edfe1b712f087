#include "solgeo/mesher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>
#include <utility>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "solgeo/error.hpp"

namespace solgeo {

namespace {

// Interpolated vertices closer than this (in edge parameter) to a grid node are
// placed on the node, so near-zero node values do not produce sliver triangles.
constexpr double kSnap = 1e-6;

// Six tetrahedra around the diagonal 0-7 of a cell; corner bit 0 is x, bit 1 is
// y, bit 2 is z. Every cell uses the same diagonal, so shared faces agree.
constexpr std::array<std::array<int, 4>, 6> kTets{{
    {0, 1, 3, 7},
    {0, 1, 5, 7},
    {0, 2, 3, 7},
    {0, 2, 6, 7},
    {0, 4, 5, 7},
    {0, 4, 6, 7},
}};

Eigen::Vector3d vec(const SolPoint& p) { return {p.x, p.y, p.z}; }

class NodeField {
 public:
  NodeField(const ScalarField& f, const GridSpec& g)
      : g_(g), nx_(g.cells[0] + 1), ny_(g.cells[1] + 1), nz_(g.cells[2] + 1) {
    values_.resize(static_cast<std::size_t>(nx_) * ny_ * nz_);
    const unsigned n_threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(nz_));
    std::vector<std::exception_ptr> errors(n_threads);
    auto work = [&](unsigned t) {
      try {
        for (int k = static_cast<int>(t); k < nz_; k += static_cast<int>(n_threads)) {
          for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
              const double v = f(g_.node(i, j, k));
              if (!std::isfinite(v)) {
                throw SolError(ErrorCode::InvalidArgument, "field is not finite at a grid node");
              }
              values_[id(i, j, k)] = v;
            }
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t id(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * (j + static_cast<std::size_t>(ny_) * k);
  }
  std::size_t count() const { return values_.size(); }
  double value(std::size_t n) const { return values_[n]; }

 private:
  const GridSpec& g_;
  int nx_, ny_, nz_;
  std::vector<double> values_;
};

struct Corner {
  std::size_t id;
  SolPoint p;
  double f;
  bool inside() const { return f < 0.0; }
};

class MeshBuilder {
 public:
  explicit MeshBuilder(std::size_t node_count) : nodes_(node_count) {}

  std::uint32_t edge_vertex(const Corner& a, const Corner& b) {
    const double t = a.f / (a.f - b.f);
    if (t <= kSnap) return vertex_at(key(a.id, a.id), a.p);
    if (t >= 1.0 - kSnap) return vertex_at(key(b.id, b.id), b.p);
    const auto [lo, hi] = std::minmax(a.id, b.id);
    const SolPoint p{a.p.x + t * (b.p.x - a.p.x), a.p.y + t * (b.p.y - a.p.y),
                     a.p.z + t * (b.p.z - a.p.z)};
    return vertex_at(key(lo, hi), p);
  }

  // Adds the triangle facing `outward` (a vector towards f > 0).
  void triangle(std::uint32_t i, std::uint32_t j, std::uint32_t k, const Eigen::Vector3d& outward) {
    if (i == j || j == k || i == k) return;
    const Eigen::Vector3d p0 = vec(mesh_.vertices[i]);
    const Eigen::Vector3d n = (vec(mesh_.vertices[j]) - p0).cross(vec(mesh_.vertices[k]) - p0);
    if (n.squaredNorm() == 0.0) return;
    if (n.dot(outward) < 0.0) std::swap(j, k);
    mesh_.triangles.push_back({i, j, k});
  }

  TriMesh take() { return std::move(mesh_); }

 private:
  std::uint64_t key(std::size_t lo, std::size_t hi) const {
    return static_cast<std::uint64_t>(lo) * nodes_ + hi;
  }

  std::uint32_t vertex_at(std::uint64_t k, const SolPoint& p) {
    const auto [it, inserted] = index_.try_emplace(k, static_cast<std::uint32_t>(mesh_.vertices.size()));
    if (inserted) mesh_.vertices.push_back(p);
    return it->second;
  }

  std::uint64_t nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  TriMesh mesh_;
};

void march_tet(const std::array<Corner, 4>& c, MeshBuilder& mb) {
  std::array<int, 4> in{};
  std::array<int, 4> out{};
  int n_in = 0;
  int n_out = 0;
  for (int v = 0; v < 4; ++v) {
    if (c[v].inside()) {
      in[n_in++] = v;
    } else {
      out[n_out++] = v;
    }
  }
  if (n_in == 0 || n_out == 0) return;

  Eigen::Vector3d centre_in = Eigen::Vector3d::Zero();
  Eigen::Vector3d centre_out = Eigen::Vector3d::Zero();
  for (int v = 0; v < n_in; ++v) centre_in += vec(c[in[v]].p) / n_in;
  for (int v = 0; v < n_out; ++v) centre_out += vec(c[out[v]].p) / n_out;
  const Eigen::Vector3d outward = centre_out - centre_in;

  if (n_in == 1 || n_out == 1) {
    const bool lone_inside = n_in == 1;
    const int lone = lone_inside ? in[0] : out[0];
    const auto& rest = lone_inside ? out : in;
    mb.triangle(mb.edge_vertex(c[lone], c[rest[0]]), mb.edge_vertex(c[lone], c[rest[1]]),
                mb.edge_vertex(c[lone], c[rest[2]]), outward);
    return;
  }
  // Two inside, two outside: the cut is a quad with corners on the four mixed
  // edges, taken in cyclic order.
  const std::uint32_t e00 = mb.edge_vertex(c[in[0]], c[out[0]]);
  const std::uint32_t e01 = mb.edge_vertex(c[in[0]], c[out[1]]);
  const std::uint32_t e11 = mb.edge_vertex(c[in[1]], c[out[1]]);
  const std::uint32_t e10 = mb.edge_vertex(c[in[1]], c[out[0]]);
  mb.triangle(e00, e01, e11, outward);
  mb.triangle(e00, e11, e10, outward);
}

using Edge = std::pair<std::uint32_t, std::uint32_t>;

std::map<Edge, int> edge_counts(const TriMesh& mesh) {
  std::map<Edge, int> counts;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto [lo, hi] = std::minmax(t[e], t[(e + 1) % 3]);
      ++counts[{lo, hi}];
    }
  }
  return counts;
}

}  // namespace

Box Box::cube(double half_width) {
  return {{-half_width, -half_width, -half_width}, {half_width, half_width, half_width}};
}

GridSpec GridSpec::uniform(const Box& box, int cells_per_axis) {
  return {box, {cells_per_axis, cells_per_axis, cells_per_axis}};
}

void GridSpec::validate() const {
  const bool ordered = bounds.min.x < bounds.max.x && bounds.min.y < bounds.max.y &&
                       bounds.min.z < bounds.max.z;
  if (!ordered || !is_finite(bounds.min) || !is_finite(bounds.max)) {
    throw SolError(ErrorCode::InvalidArgument, "grid box must satisfy min < max on every axis");
  }
  if (std::any_of(cells.begin(), cells.end(), [](int n) { return n < 2; })) {
    throw SolError(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
  }
}

SolPoint GridSpec::node(int i, int j, int k) const {
  auto lerp = [](double lo, double hi, int idx, int n) {
    return idx == n ? hi : lo + (hi - lo) * idx / n;
  };
  return {lerp(bounds.min.x, bounds.max.x, i, cells[0]), lerp(bounds.min.y, bounds.max.y, j, cells[1]),
          lerp(bounds.min.z, bounds.max.z, k, cells[2])};
}

double GridSpec::max_cell_diagonal() const {
  const double dx = (bounds.max.x - bounds.min.x) / cells[0];
  const double dy = (bounds.max.y - bounds.min.y) / cells[1];
  const double dz = (bounds.max.z - bounds.min.z) / cells[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SOLGEO_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

TriMesh march(const ScalarField& f, const GridSpec& grid) {
  grid.validate();
  const NodeField field(f, grid);
  MeshBuilder mb(field.count());
  for (int k = 0; k < grid.cells[2]; ++k) {
    for (int j = 0; j < grid.cells[1]; ++j) {
      for (int i = 0; i < grid.cells[0]; ++i) {
        std::array<Corner, 8> cube;
        for (int v = 0; v < 8; ++v) {
          const int ii = i + (v & 1);
          const int jj = j + ((v >> 1) & 1);
          const int kk = k + ((v >> 2) & 1);
          const std::size_t id = field.id(ii, jj, kk);
          cube[v] = {id, grid.node(ii, jj, kk), field.value(id)};
        }
        for (const auto& tet : kTets) {
          march_tet({cube[tet[0]], cube[tet[1]], cube[tet[2]], cube[tet[3]]}, mb);
        }
      }
    }
  }
  return mb.take();
}

long euler_characteristic(const TriMesh& mesh) {
  std::vector<bool> used(mesh.vertices.size(), false);
  for (const auto& t : mesh.triangles) {
    for (auto v : t) used[v] = true;
  }
  const long v = std::count(used.begin(), used.end(), true);
  const long e = static_cast<long>(edge_counts(mesh).size());
  return v - e + static_cast<long>(mesh.triangles.size());
}

bool is_closed(const TriMesh& mesh) {
  if (mesh.triangles.empty()) return false;
  const auto counts = edge_counts(mesh);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 2; });
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_obj(std::ostream& out, const TriMesh& mesh) {
  for (const auto& p : mesh.vertices) {
    out << "v " << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(p.z)
        << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << csv_field(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\r\n";
  }
}

}  // namespace solgeo
