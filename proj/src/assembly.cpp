#include "stgp/assembly.hpp"

#include <algorithm>
#include <string>

#include "stgp/error.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace stgp {

namespace {

// Elements are processed in blocks: local contributions are computed in
// parallel, then merged serially in element order. The summation order of
// every global entry is therefore independent of the worker count.
constexpr std::size_t kBlockSize = 512;

double dot(const Vector& a, const Vector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::vector<std::vector<std::size_t>> mass_pattern(const Mesh& mesh, const EdgeTable& edges) {
  std::vector<std::vector<std::size_t>> columns(edges.size());
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto local = edges.local(e);
    for (const auto& a : local) {
      for (const auto& b : local) columns[a.index].push_back(b.index);
    }
  }
  for (auto& row : columns) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return columns;
}

}  // namespace

SparseSymMatrix assemble_spatial_mass(const Mesh& mesh, const EdgeTable& edges,
                                      const QuadratureRule& quad, unsigned threads) {
  if (quad.dim != mesh.dim()) throw ArgumentError("quadrature dimension does not match the mesh");
  if (quad.order < 2) throw ArgumentError("mass assembly needs quadrature order >= 2");

  SparseSymMatrix a(mass_pattern(mesh, edges));
  const int nl = edges.local_count();
  const std::size_t ne = mesh.element_count();
  std::vector<double> block(kBlockSize * 36);

  for (std::size_t first = 0; first < ne; first += kBlockSize) {
    const std::size_t last = std::min(ne, first + kBlockSize);
    detail::parallel_for(first, last, threads, [&](std::size_t e) {
      double* local = block.data() + (e - first) * 36;
      std::fill(local, local + 36, 0.0);
      const auto g = element_geometry(mesh, e);
      const auto map = edges.local(e);
      const double scale = mesh.mu(e) * g.volume * (mesh.dim() == 2 ? 2.0 : 6.0);
      for (std::size_t q = 0; q < quad.size(); ++q) {
        const auto w = whitney_eval(g, map, quad.points[q]);
        const double wq = scale * quad.weights[q];
        for (int i = 0; i < nl; ++i) {
          for (int j = 0; j < nl; ++j) local[i * 6 + j] += wq * dot(w[i], w[j]);
        }
      }
    });
    for (std::size_t e = first; e < last; ++e) {
      const double* local = block.data() + (e - first) * 36;
      const auto map = edges.local(e);
      for (int i = 0; i < nl; ++i) {
        for (int j = 0; j < nl; ++j) a.add(map[i].index, map[j].index, local[i * 6 + j]);
      }
    }
  }
  return a;
}

TriDiagMatrix assemble_temporal_gram(const TemporalGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> diag(n, 0.0), off(n - 1, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h = grid[k + 1] - grid[k];
    diag[k] += h / 3.0;
    diag[k + 1] += h / 3.0;
    off[k] = h / 6.0;
  }
  return TriDiagMatrix(std::move(diag), std::move(off));
}

std::vector<TimeSample> build_time_samples(const TemporalGrid& grid,
                                           std::span<const double> breakpoints,
                                           const QuadratureRule& time_quad) {
  if (time_quad.dim != 1) throw ArgumentError("temporal quadrature must be a 1D rule");
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  std::sort(cuts.begin(), cuts.end());

  std::vector<TimeSample> samples;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t0 = grid[k];
    const double t1 = grid[k + 1];
    const double h = t1 - t0;
    std::vector<double> nodes{t0};
    for (auto it = std::upper_bound(cuts.begin(), cuts.end(), t0); it != cuts.end() && *it < t1; ++it) {
      nodes.push_back(*it);
    }
    nodes.push_back(t1);
    for (std::size_t p = 0; p + 1 < nodes.size(); ++p) {
      const double a = nodes[p];
      const double len = nodes[p + 1] - a;
      for (std::size_t q = 0; q < time_quad.size(); ++q) {
        const double t = a + len * time_quad.coordinate(q);
        const double theta = (t - t0) / h;
        samples.push_back({t, len * time_quad.weights[q], k, 1.0 - theta, theta});
      }
    }
  }
  return samples;
}

SourceAssembly assemble_source_matrix(const Mesh& mesh, const EdgeTable& edges,
                                      const TemporalGrid& grid, const SourceField& source,
                                      const QuadratureRule& space_quad,
                                      const QuadratureRule& time_quad, OutsidePolicy policy,
                                      unsigned threads) {
  if (space_quad.dim != mesh.dim()) throw ArgumentError("quadrature dimension does not match the mesh");
  if (source.dim() != mesh.dim()) throw ArgumentError("source and target dimensions differ");
  if (grid.start() < source.time_start() || grid.stop() > source.time_stop()) {
    throw DomainError("target time span [" + std::to_string(grid.start()) + ", " +
                      std::to_string(grid.stop()) + "] exceeds the source span");
  }

  const auto samples = build_time_samples(grid, source.time_breakpoints(), time_quad);
  std::vector<double> times(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) times[s] = samples[s].t;

  const std::size_t n = grid.size();
  const int nl = edges.local_count();
  const std::size_t ne = mesh.element_count();
  const std::size_t stride = 6 * n;
  const double ref = mesh.dim() == 2 ? 2.0 : 6.0;

  SourceAssembly out{DenseDofMatrix(edges.size(), n), 0};
  std::vector<double> block(std::min(ne, kBlockSize) * stride);
  std::vector<std::size_t> outside(std::min(ne, kBlockSize));

  for (std::size_t first = 0; first < ne; first += kBlockSize) {
    const std::size_t last = std::min(ne, first + kBlockSize);
    detail::parallel_for(first, last, threads, [&](std::size_t e) {
      double* local = block.data() + (e - first) * stride;
      std::fill(local, local + stride, 0.0);
      std::size_t& miss = outside[e - first];
      miss = 0;
      std::vector<Vector> h(samples.size());
      const auto g = element_geometry(mesh, e);
      const auto map = edges.local(e);
      const auto verts = element_vertices(mesh, e);
      const double scale = mesh.mu(e) * g.volume * ref;
      for (std::size_t q = 0; q < space_quad.size(); ++q) {
        const Point x = g.point(space_quad.points[q], verts);
        if (!source.sample(x, times, h, policy)) ++miss;
        const auto w = whitney_eval(g, map, space_quad.points[q]);
        const double wq = scale * space_quad.weights[q];
        for (std::size_t s = 0; s < samples.size(); ++s) {
          const auto& ts = samples[s];
          const double f = wq * ts.weight;
          for (int i = 0; i < nl; ++i) {
            const double v = f * dot(w[i], h[s]);
            local[i * n + ts.interval] += v * ts.left;
            local[i * n + ts.interval + 1] += v * ts.right;
          }
        }
      }
    });
    for (std::size_t e = first; e < last; ++e) {
      const double* local = block.data() + (e - first) * stride;
      const auto map = edges.local(e);
      for (int i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.c(map[i].index, j) += local[i * n + j];
      }
      out.outside_points += outside[e - first];
    }
  }
  return out;
}

std::string write_matrix(const SparseSymMatrix& a) {
  std::string s = "stgp-matrix 1\nkind sparse-sym\nrows " + std::to_string(a.size()) + " cols " +
                  std::to_string(a.size()) + " nnz " + std::to_string(a.nnz()) + "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t p = a.row_start()[i]; p < a.row_start()[i + 1]; ++p) {
      s += std::to_string(i) + ' ' + std::to_string(a.column_index()[p]) + ' ' +
           detail::format_double(a.values()[p]) + '\n';
    }
  }
  return s;
}

std::string write_matrix(const TriDiagMatrix& b) {
  const std::size_t n = b.size();
  const std::size_t nnz = n == 0 ? 0 : 3 * n - 2;
  std::string s = "stgp-matrix 1\nkind tridiag\nrows " + std::to_string(n) + " cols " +
                  std::to_string(n) + " nnz " + std::to_string(nnz) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i == 0 ? 0 : i - 1; j < std::min(n, i + 2); ++j) {
      s += std::to_string(i) + ' ' + std::to_string(j) + ' ' + detail::format_double(b(i, j)) + '\n';
    }
  }
  return s;
}

std::string write_matrix(const DenseDofMatrix& c) {
  std::string s = "stgp-matrix 1\nkind dense\nrows " + std::to_string(c.rows()) + " cols " +
                  std::to_string(c.cols()) + "\n";
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (j > 0) s += ' ';
      s += detail::format_double(c(i, j));
    }
    s += '\n';
  }
  return s;
}

}  // namespace stgp
