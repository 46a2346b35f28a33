#pragma once

// Shared random generators for property-style tests. All draws come from an
// explicitly seeded engine so failures replay.

#include <random>

#include "fsscomp/core_state.hpp"

namespace testgen {

using fsscomp::cplx;
using fsscomp::DensityMatrix;
using fsscomp::Mat4;

inline cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline Mat4 random_matrix(std::mt19937_64& rng) {
  Mat4 m;
  for (auto& z : m.a) z = gaussian(rng);
  return m;
}

// A†A scaled to unit trace: a PSD, Hermitian, trace-1 matrix, generically
// full rank.
inline DensityMatrix random_density(std::mt19937_64& rng) {
  const Mat4 a = random_matrix(rng);
  Mat4 p = a.adjoint() * a;
  const double tr = p.trace().real();
  DensityMatrix rho;
  rho.m = (1.0 / tr) * p;
  return rho;
}

inline Mat4 random_hermitian(std::mt19937_64& rng) {
  const Mat4 a = random_matrix(rng);
  return 0.5 * (a + a.adjoint());
}

// Random 2x2 unitary by Gram-Schmidt on two Gaussian columns.
struct U2 {
  cplx u00, u01, u10, u11;
};

inline U2 random_unitary2(std::mt19937_64& rng) {
  cplx a = gaussian(rng), b = gaussian(rng);
  double n1 = std::sqrt(std::norm(a) + std::norm(b));
  a /= n1;
  b /= n1;
  cplx c = gaussian(rng), d = gaussian(rng);
  const cplx proj = std::conj(a) * c + std::conj(b) * d;
  c -= proj * a;
  d -= proj * b;
  double n2 = std::sqrt(std::norm(c) + std::norm(d));
  c /= n2;
  d /= n2;
  return {a, c, b, d};
}

inline Mat4 kron(const U2& u, const U2& v) {
  const cplx uu[2][2] = {{u.u00, u.u01}, {u.u10, u.u11}};
  const cplx vv[2][2] = {{v.u00, v.u01}, {v.u10, v.u11}};
  Mat4 w;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      w(i, j) = uu[i / 2][j / 2] * vv[i % 2][j % 2];
  return w;
}

}  // namespace testgen
