#pragma once

// Fixtures and independent oracles shared by the test suites.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "stgp/basis.hpp"
#include "stgp/matrix.hpp"
#include "stgp/mesh.hpp"

namespace stgp::test {

/// Structured mesh with interior nodes moved by up to `amount` * h and,
/// optionally, a random mu per element in [0.5, 4].
inline Mesh jittered(MeshKind kind, std::size_t n, std::mt19937_64& rng, double amount = 0.2,
                     bool random_mu = true) {
  const Mesh base = generate_structured_mesh(kind, n, 1.0);
  const double h = 1.0 / static_cast<double>(n);
  std::uniform_real_distribution<double> shift(-amount * h, amount * h);
  std::uniform_real_distribution<double> mu(0.5, 4.0);
  std::vector<Point> nodes(base.nodes().begin(), base.nodes().end());
  for (auto& p : nodes) {
    bool interior = true;
    for (int k = 0; k < base.dim(); ++k) interior = interior && p[k] > 0.0 && p[k] < 1.0;
    if (!interior) continue;
    for (int k = 0; k < base.dim(); ++k) p[k] += shift(rng);
  }
  std::vector<double> m(base.element_count(), 1.0);
  if (random_mu) {
    for (auto& v : m) v = mu(rng);
  }
  return Mesh(base.dim(), std::move(nodes), {base.elements().begin(), base.elements().end()},
              std::move(m));
}

/// N nodes from 0 with steps drawn from [0.3, 1.7] / N.
inline TemporalGrid random_grid(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> step(0.3, 1.7);
  std::vector<double> t{0.0};
  for (std::size_t k = 1; k < n; ++k) t.push_back(t.back() + step(rng) / static_cast<double>(n));
  return TemporalGrid(std::move(t));
}

inline DenseDofMatrix random_dofs(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  DenseDofMatrix x(m, n);
  for (auto& v : x.data()) v = normal(rng);
  return x;
}

/// Dense row-major copy of a sparse matrix.
inline std::vector<double> dense(const SparseSymMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = a(i, j);
  return d;
}

/// Explicit kron(B^T, A) (row-major, size MN x MN) for vec = column stack.
inline std::vector<double> kron_bt_a(const std::vector<double>& a, std::size_t m,
                                     const std::vector<double>& b, std::size_t n) {
  const std::size_t s = m * n;
  std::vector<double> k(s * s, 0.0);
  for (std::size_t bi = 0; bi < n; ++bi)
    for (std::size_t bj = 0; bj < n; ++bj)
      for (std::size_t ai = 0; ai < m; ++ai)
        for (std::size_t aj = 0; aj < m; ++aj)
          k[(bi * m + ai) * s + (bj * m + aj)] = b[bj * n + bi] * a[ai * m + aj];
  return k;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("stgp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Integral of x^a y^b (z^c) over the reference simplex:
/// a! b! (c!) / (a + b (+ c) + dim)!.
inline double monomial_integral(int dim, int a, int b, int c = 0) {
  const auto fact = [](int k) { return std::tgamma(k + 1.0); };
  if (dim == 1) return 1.0 / (a + 1.0);
  if (dim == 2) return fact(a) * fact(b) / fact(a + b + 2);
  return fact(a) * fact(b) * fact(c) / fact(a + b + c + 3);
}

}  // namespace stgp::test
