#include "pdmdirac/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

namespace {

double pair_tol(const Complex& l) { return std::max(1.0, std::abs(l)); }

struct RawEigen {
  std::vector<Complex> values;
  std::vector<std::vector<Complex>> vectors;  // unit-normalised by LAPACK or below
};

RawEigen solve_tridiagonal(const BandedComplexOperator& op, int k, EigenSortMode mode) {
  const int n = op.dim();
  std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = op.band_entry(i, 0).real();
  for (int i = 0; i + 1 < n; ++i) off[static_cast<std::size_t>(i)] = op.band_entry(i, 1).real();

  const bool select_range = (mode == EigenSortMode::SmallestReal && k < n);
  const lapack_int m_expect = select_range ? k : n;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(m_expect));
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * std::max<lapack_int>(1, m_expect)));
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', select_range ? 'I' : 'A', n, diag.data(), off.data(), 0.0, 0.0,
      1, select_range ? k : n, 0.0, &m, w.data(), z.data(), n, isuppz.data());
  if (info != 0) throw EigenSolveError("tridiagonal eigensolver failed", info);

  RawEigen out;
  out.values.resize(static_cast<std::size_t>(m));
  out.vectors.resize(static_cast<std::size_t>(m));
  for (lapack_int j = 0; j < m; ++j) {
    out.values[static_cast<std::size_t>(j)] = Complex(w[static_cast<std::size_t>(j)], 0.0);
    auto& v = out.vectors[static_cast<std::size_t>(j)];
    v.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = Complex(z[static_cast<std::size_t>(j) * n + i], 0.0);
  }
  return out;
}

RawEigen solve_real_general(const Eigen::MatrixXcd& dense) {
  const int n = static_cast<int>(dense.rows());
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(c) * n + r] = dense(r, c).real();
  std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  std::vector<double> vr(static_cast<std::size_t>(n) * n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, wr.data(),
                                        wi.data(), nullptr, 1, vr.data(), n);
  if (info != 0) throw EigenSolveError("real general eigensolver failed", info);

  RawEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = Complex(wr[static_cast<std::size_t>(j)], wi[static_cast<std::size_t>(j)]);
  }
  // dgeev packs complex pairs: column j holds Re v, column j+1 holds Im v.
  for (int j = 0; j < n; ++j) {
    auto& v = out.vectors[static_cast<std::size_t>(j)];
    if (wi[static_cast<std::size_t>(j)] == 0.0) {
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = Complex(vr[static_cast<std::size_t>(j) * n + i], 0.0);
    } else if (wi[static_cast<std::size_t>(j)] > 0.0) {
      for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            Complex(vr[static_cast<std::size_t>(j) * n + i], vr[(static_cast<std::size_t>(j) + 1) * n + i]);
    } else {
      for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            Complex(vr[(static_cast<std::size_t>(j) - 1) * n + i], -vr[static_cast<std::size_t>(j) * n + i]);
    }
  }
  return out;
}

RawEigen solve_hermitian(const Eigen::MatrixXcd& dense) {
  const int n = static_cast<int>(dense.rows());
  std::vector<lapack_complex_double> a(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const Complex v = dense(r, c);
      a[static_cast<std::size_t>(c) * n + r] = v;
    }
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0) throw EigenSolveError("Hermitian eigensolver failed", info);

  RawEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = Complex(w[static_cast<std::size_t>(j)], 0.0);
    auto& v = out.vectors[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(j) * n + i];
  }
  return out;
}

RawEigen solve_complex_general(const Eigen::MatrixXcd& dense) {
  const int n = static_cast<int>(dense.rows());
  std::vector<lapack_complex_double> a(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const Complex v = dense(r, c);
      a[static_cast<std::size_t>(c) * n + r] = v;
    }
  std::vector<lapack_complex_double> w(static_cast<std::size_t>(n));
  std::vector<lapack_complex_double> vr(static_cast<std::size_t>(n) * n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, w.data(),
                                        nullptr, 1, vr.data(), n);
  if (info != 0) throw EigenSolveError("complex general eigensolver failed", info);

  RawEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j)];
    auto& v = out.vectors[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = vr[static_cast<std::size_t>(j) * n + i];
  }
  return out;
}

}  // namespace

int Spectrum::n_real() const {
  int c = 0;
  for (const auto& cls : classification)
    if (cls == EigenClassification::Real) ++c;
  return c;
}

int Spectrum::n_conjugate_pairs() const {
  int c = 0;
  for (const auto& cls : classification)
    if (cls == EigenClassification::ConjugatePair) ++c;
  return c / 2;
}

double Spectrum::max_imag() const {
  double m = 0.0;
  for (const auto& l : eigenvalues) m = std::max(m, std::abs(l.imag()));
  return m;
}

double Spectrum::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

bool Spectrum::conjugation_closed(double tol) const {
  for (const auto& l : eigenvalues) {
    if (std::abs(l.imag()) <= tol * pair_tol(l)) continue;
    const Complex target = std::conj(l);
    bool found = false;
    for (const auto& other : eigenvalues) {
      if (std::abs(other - target) <= tol * pair_tol(l)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Spectrum eigen_solve(const BandedComplexOperator& op, int k, EigenSortMode mode) {
  const int n = op.dim();
  const int cap = op.block_size() == 1 ? kScalarDimCap : kSpinorDimCap;
  if (n > cap)
    throw std::invalid_argument("eigen_solve: dimension exceeds desk-scale cap");
  if (k <= 0 || k > n) k = n;

  RawEigen raw;
  if (op.is_real_symmetric_tridiagonal()) {
    raw = solve_tridiagonal(op, k, mode);
  } else {
    const Eigen::MatrixXcd dense = op.to_dense();
    const double scale = dense.cwiseAbs().maxCoeff();
    if ((dense.imag().cwiseAbs().maxCoeff()) == 0.0) {
      raw = solve_real_general(dense);
    } else if ((dense - dense.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
      raw = solve_hermitian(dense);
    } else {
      raw = solve_complex_general(dense);
    }
  }

  // Select k eigenpairs by the requested mode, then order by real part.
  std::vector<std::size_t> idx(raw.values.size());
  std::iota(idx.begin(), idx.end(), 0u);
  if (mode == EigenSortMode::SmallestRealMagnitude) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(raw.values[a].real()) < std::abs(raw.values[b].real());
    });
  } else {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return raw.values[a].real() < raw.values[b].real();
    });
  }
  idx.resize(static_cast<std::size_t>(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(k))));
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (raw.values[a].real() != raw.values[b].real())
      return raw.values[a].real() < raw.values[b].real();
    return raw.values[a].imag() < raw.values[b].imag();
  });

  Spectrum spec;
  spec.eigenvalues.reserve(idx.size());
  spec.eigenvectors.reserve(idx.size());
  for (std::size_t j : idx) {
    spec.eigenvalues.push_back(raw.values[j]);
    spec.eigenvectors.push_back(std::move(raw.vectors[j]));
  }

  // Residuals from the banded operator itself.
  spec.residuals.resize(spec.eigenvalues.size());
  for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const auto& v = spec.eigenvectors[j];
    const auto hv = op.apply(v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      num += std::norm(hv[i] - spec.eigenvalues[j] * v[i]);
      den += std::norm(v[i]);
    }
    spec.residuals[j] = std::sqrt(num / den);
    if (!(spec.residuals[j] < 1e-8))
      throw EigenSolveError("eigenpair residual contract violated", static_cast<long>(j));
  }

  // Classification.
  spec.classification.resize(spec.eigenvalues.size());
  for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const Complex l = spec.eigenvalues[j];
    if (std::abs(l.imag()) < kRealClassificationTol * pair_tol(l)) {
      spec.classification[j] = EigenClassification::Real;
      continue;
    }
    bool matched = false;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
      if (i == j) continue;
      if (std::abs(spec.eigenvalues[i] - std::conj(l)) <= 1e-10 * pair_tol(l)) {
        matched = true;
        break;
      }
    }
    spec.classification[j] =
        matched ? EigenClassification::ConjugatePair : EigenClassification::Complex;
  }
  return spec;
}

}  // namespace pdmdirac
