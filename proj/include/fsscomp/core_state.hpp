#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fsscomp {

using cplx = std::complex<double>;

/// Reduced Planck constant in μeV·ns (CODATA). The only physical constant
/// used anywhere in the library; all times are ns, energies μeV.
inline constexpr double kHbarUevNs = 0.6582119569;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// 4x4 complex matrix, row-major. Fixed dimension: the two-photon polarization
// space in the (HH, HV, VH, VV) basis. That ordering is shared by every
// module; index 0 is HH, index 3 is VV.
// ---------------------------------------------------------------------------
struct Mat4 {
  std::array<cplx, 16> a{};

  cplx& operator()(int i, int j) { return a[4 * i + j]; }
  const cplx& operator()(int i, int j) const { return a[4 * i + j]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat4 adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Mat4 conjugated() const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = std::conj(a[i]);
    return r;
  }

  cplx trace() const { return a[0] + a[5] + a[10] + a[15]; }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
  }

  double hermiticity_residual() const {
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return r;
  }
};

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (int j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Mat4 operator+(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat4 operator-(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat4 operator*(double s, const Mat4& x) {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
  return r;
}

inline double max_abs_diff(const Mat4& x, const Mat4& y) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Pure two-photon polarization state.
// ---------------------------------------------------------------------------
struct TwoPhotonKet {
  std::array<cplx, 4> amp{};  // (HH, HV, VH, VV)

  double norm() const {
    double s = 0.0;
    for (const cplx& z : amp) s += std::norm(z);
    return std::sqrt(s);
  }
};

enum class BellTarget { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline TwoPhotonKet bell_state(BellTarget target) {
  const double a = 1.0 / std::sqrt(2.0);
  switch (target) {
    case BellTarget::PhiPlus:  return {{a, 0.0, 0.0, a}};
    case BellTarget::PhiMinus: return {{a, 0.0, 0.0, -a}};
    case BellTarget::PsiPlus:  return {{0.0, a, a, 0.0}};
    case BellTarget::PsiMinus: return {{0.0, a, -a, 0.0}};
  }
  throw std::invalid_argument("bell_state: bad target tag");
}

/// (|HH⟩ + e^{iφ}|VV⟩)/√2 — the single-parameter family every emitted pair
/// belongs to.
inline TwoPhotonKet ket_from_phase(double phi) {
  if (!std::isfinite(phi))
    throw std::invalid_argument("ket_from_phase: non-finite phase");
  const double a = 1.0 / std::sqrt(2.0);
  return {{a, 0.0, 0.0, a * std::polar(1.0, phi)}};
}

struct DensityMatrix {
  Mat4 m;
};

inline DensityMatrix density_from_ket(const TwoPhotonKet& k) {
  if (std::abs(k.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("density_from_ket: ket not normalized");
  DensityMatrix rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.m(i, j) = k.amp[i] * std::conj(k.amp[j]);
  return rho;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic Jacobi on the 4x4 complex matrix. Converges
// when the off-diagonal Frobenius norm drops below 1e-12. Self-contained so
// the whole library stays header-only with no linear-algebra dependency.
// ---------------------------------------------------------------------------
struct EigSystem {
  std::array<double, 4> values{};  // descending
  Mat4 vectors;                    // columns are the matching eigenvectors
};

namespace detail {

inline double offdiag_norm(const Mat4& m) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace detail

inline EigSystem hermitian_eigs(const Mat4& h) {
  if (h.hermiticity_residual() > 1e-8)
    throw std::invalid_argument("hermitian_eigs: input not Hermitian");

  // Symmetrize away the sub-1e-8 asymmetry so rotations stay exact.
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  Mat4 v = Mat4::identity();
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (detail::offdiag_norm(a) < 1e-12) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Zero the (p,q) element: r(1−t²) + (aqq−app)t = 0, small-|t| root.
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0)
                             ? -1.0 / (tau + std::sqrt(tau * tau + 1.0))
                             : 1.0 / (std::sqrt(tau * tau + 1.0) - tau);
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx u_qp = s * std::conj(phase);  // U(q,p)
        const cplx u_pq = -s * phase;            // U(p,q)
        // A ← U† A U, acting on columns then rows p,q.
        for (int k = 0; k < 4; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + u_qp * akq;
          a(k, q) = u_pq * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + u_qp * vkq;
          v(k, q) = u_pq * vkp + c * vkq;
        }
      }
  }

  EigSystem out;
  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> diag;
  for (int i = 0; i < 4; ++i) diag[i] = a(i, i).real();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (diag[order[j]] > diag[order[i]]) std::swap(order[i], order[j]);
  for (int i = 0; i < 4; ++i) {
    out.values[i] = diag[order[i]];
    for (int k = 0; k < 4; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

/// Hermitian square root of a PSD matrix. Eigenvalues in [−1e−9, 0) are
/// clamped to zero; anything more negative is rejected.
inline Mat4 psd_sqrt(const Mat4& h) {
  EigSystem e = hermitian_eigs(h);
  for (double& lam : e.values) {
    if (lam < -1e-9)
      throw std::invalid_argument("psd_sqrt: matrix not PSD");
    if (lam < 0.0) lam = 0.0;
  }
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k)
        s += std::sqrt(e.values[k]) * e.vectors(i, k) * std::conj(e.vectors(j, k));
      r(i, j) = s;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Density-matrix validity.
// ---------------------------------------------------------------------------
struct ValidityReport {
  double hermiticity_residual = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool pass = false;
};

inline ValidityReport validate_density(const DensityMatrix& rho, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("validate_density: tol must be > 0");
  ValidityReport rep;
  rep.hermiticity_residual = rho.m.hermiticity_residual();
  const cplx tr = rho.m.trace();
  rep.trace_deviation = std::max(std::abs(tr.real() - 1.0), std::abs(tr.imag()));
  if (rep.hermiticity_residual < 1e-8) {
    rep.min_eigenvalue = hermitian_eigs(rho.m).values[3];
  } else {
    rep.min_eigenvalue = -1.0;
  }
  rep.pass = rep.hermiticity_residual < tol && rep.trace_deviation < tol &&
             rep.min_eigenvalue > -std::max(tol, 1e-9);
  return rep;
}

// ---------------------------------------------------------------------------
// Text serialization: 4 lines of 4 entries "re+imj", 12 significant digits,
// row-major. Consumed by the CLI --dump-rho / validate round trip.
// ---------------------------------------------------------------------------
inline std::string format_density(const DensityMatrix& rho) {
  std::string out;
  char buf[96];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      std::snprintf(buf, sizeof(buf), "%.11e%+.11ej", rho.m(i, j).real(),
                    rho.m(i, j).imag());
      out += buf;
      out += (j == 3) ? '\n' : ' ';
    }
  }
  return out;
}

inline DensityMatrix parse_density(std::istream& in) {
  DensityMatrix rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::string tok;
      if (!(in >> tok))
        throw std::runtime_error("parse_density: truncated input");
      double re = 0.0, im = 0.0;
      char tail = 0;
      if (std::sscanf(tok.c_str(), "%lf%lf%c", &re, &im, &tail) != 3 || tail != 'j')
        throw std::runtime_error("parse_density: bad entry '" + tok + "'");
      rho.m(i, j) = {re, im};
    }
  return rho;
}

inline DensityMatrix parse_density(const std::string& text) {
  std::istringstream in(text);
  return parse_density(in);
}

}  // namespace fsscomp
