#include "lil/nest.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lil {

std::size_t AtomPartition::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t(0));
}

std::size_t AtomPartition::offset(std::size_t k) const {
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(k),
                         std::size_t(0));
}

std::size_t AtomPartition::atom_of(std::size_t index) const {
  std::size_t acc = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    acc += sizes[k];
    if (index < acc) return k;
  }
  fail(Status::BadArgument, "index outside the atom partition");
}

bool is_block_upper(const AtomPartition& atoms, const CMatrix& a) {
  const std::size_t n = atoms.total();
  if (a.rows() != static_cast<Eigen::Index>(n) || a.cols() != static_cast<Eigen::Index>(n)) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (atoms.atom_of(i) > atoms.atom_of(j) && a(i, j) != 0.0) return false;
    }
  }
  return true;
}

CMatrix path_point(const AtomPartition& atoms, const CMatrix& a, std::complex<double> z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    fail(Status::BadArgument, "path points live on the closed unit disk");
  }
  if (!is_block_upper(atoms, a)) {
    fail(Status::BadArgument, "matrix is not block upper triangular for the atoms");
  }
  // Powers z^0 .. z^{p-1}, one per diagonal above the main one.
  std::vector<std::complex<double>> power(atoms.count());
  power[0] = 1.0;
  for (std::size_t d = 1; d < atoms.count(); ++d) power[d] = power[d - 1] * z;

  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  const std::size_t n = atoms.total();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bi = atoms.atom_of(i);
      const std::size_t bj = atoms.atom_of(j);
      if (bi <= bj) out(i, j) = a(i, j) * power[bj - bi];
    }
  }
  return out;
}

CMatrix diagonal_unitary(const AtomPartition& atoms, double theta) {
  const std::size_t n = atoms.total();
  CMatrix u = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = static_cast<double>(atoms.atom_of(i) + 1) * theta;
    u(i, i) = std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return u;
}

double boundary_conjugation_residual(const AtomPartition& atoms, const CMatrix& a,
                                     double theta) {
  const CMatrix u = diagonal_unitary(atoms, theta);
  const CMatrix conj = u.adjoint() * a * u;
  const CMatrix target = path_point(atoms, a, std::polar(1.0, theta));
  return (conj - target).norm();
}

double spectral_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

NormBoundReport norm_bound_check(const AtomPartition& atoms, const CMatrix& a, int samples) {
  NormBoundReport report;
  const double base = spectral_norm(a);

  // Split the budget between an interior polar grid and the boundary circle.
  const int boundary = std::max(8, samples / 4);
  const int interior = std::max(1, samples - boundary);
  const int rings = std::max(1, static_cast<int>(std::sqrt(interior / 4.0)));
  const int per_ring = std::max(1, interior / rings);

  for (int r = 0; r < rings; ++r) {
    const double radius = (r + 0.5) / rings;
    for (int t = 0; t < per_ring; ++t) {
      const double angle = 2.0 * M_PI * t / per_ring;
      const double norm = spectral_norm(path_point(atoms, a, std::polar(radius, angle)));
      report.max_interior_excess = std::max(report.max_interior_excess, norm - base);
      if (norm > base + 1e-9) ++report.violations;
      ++report.samples;
    }
  }
  for (int t = 0; t < boundary; ++t) {
    const double angle = 2.0 * M_PI * t / boundary;
    const double norm = spectral_norm(path_point(atoms, a, std::polar(1.0, angle)));
    const double deviation = std::abs(norm - base);
    report.max_boundary_deviation = std::max(report.max_boundary_deviation, deviation);
    if (deviation > 1e-9) ++report.violations;
    ++report.samples;
  }
  return report;
}

InversePathReport inverse_path_check(const AtomPartition& atoms, const CMatrix& a,
                                     const CMatrix& b, int samples) {
  const std::size_t n = atoms.total();
  const CMatrix eye = CMatrix::Identity(n, n);

  Eigen::JacobiSVD<CMatrix> svd(a);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0 || (a * b - eye).norm() > 1e-10 * std::max(1.0, smax * smax / smin)) {
    fail(Status::BadArgument, "b is not an inverse of a");
  }

  InversePathReport report;
  report.condition = smax / smin;
  report.tolerance = 1e-8 * std::max(1.0, report.condition);

  const int rings = std::max(1, static_cast<int>(std::sqrt(samples / 8.0)));
  const int per_ring = std::max(1, samples / rings);
  for (int r = 0; r < rings; ++r) {
    const double radius = static_cast<double>(r + 1) / rings; // includes |z| = 1
    for (int t = 0; t < per_ring; ++t) {
      const double angle = 2.0 * M_PI * t / per_ring;
      const std::complex<double> z = std::polar(radius, angle);
      const double residual =
          (path_point(atoms, a, z) * path_point(atoms, b, z) - eye).norm();
      report.max_residual = std::max(report.max_residual, residual);
      ++report.samples;
    }
  }
  return report;
}

CMatrix random_block_upper(const AtomPartition& atoms, Rng& rng, const Pattern* mask,
                           bool make_invertible) {
  const std::size_t n = atoms.total();
  if (mask && mask->size() != n) {
    fail(Status::Dimension, "mask size does not match the atom partition");
  }
  CMatrix a = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (atoms.atom_of(i) > atoms.atom_of(j)) continue;
      if (mask && !mask->has(i, j)) continue;
      a(i, j) = std::complex<double>(2.0 * rng.real01() - 1.0, 2.0 * rng.real01() - 1.0);
    }
  }
  if (make_invertible) {
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0;
  }
  return a;
}

AtomPartition atoms_of_pattern(const Algebra& a) {
  const auto& bs = a.blocks();
  for (std::size_t pos = 0; pos < bs.order.size(); ++pos) {
    if (bs.order[pos] != pos) {
      fail(Status::BadArgument,
           "pattern must be block upper triangular as written (canonical order "
           "permutes the indices)");
    }
  }
  AtomPartition atoms;
  for (const auto& blk : bs.blocks) atoms.sizes.push_back(blk.size());
  return atoms;
}

CslDriftReport csl_conjugation_check(const Algebra& mask, const AtomPartition& atoms,
                                     const Subspace& lie_ideal, int samples, Rng& rng) {
  const std::size_t n = mask.n();
  if (atoms.total() != n) fail(Status::Dimension, "atoms do not match the mask size");
  if (lie_ideal.ambient_dim() != n * n) {
    fail(Status::Dimension, "subspace ambient does not match the mask");
  }

  CslDriftReport report;
  if (lie_ideal.dim() == 0) {
    report.samples = samples;
    return report; // the zero ideal cannot drift
  }

  // Basis matrix of the ideal, converted to floats, for least-squares
  // projection of conjugated elements.
  CMatrix basis(n * n, lie_ideal.dim());
  for (std::size_t c = 0; c < lie_ideal.dim(); ++c) {
    for (std::size_t r = 0; r < n * n; ++r) {
      basis(r, c) = lie_ideal.basis()[c][r].get_d();
    }
  }
  const Eigen::ColPivHouseholderQR<CMatrix> qr(basis);

  const CMatrix a = random_block_upper(atoms, rng, &mask.pattern(), true);
  CMatrix b = a.inverse();
  // The inverse lives in the algebra exactly; numerically, entries below the
  // block diagonal are rounding dust and are dropped.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (atoms.atom_of(i) > atoms.atom_of(j)) b(i, j) = 0.0;
    }
  }

  for (int s = 0; s < samples; ++s) {
    const double radius = rng.real01();
    const double angle = 2.0 * M_PI * rng.real01();
    const std::complex<double> z = std::polar(radius, angle);
    const CMatrix az = path_point(atoms, a, z);
    const CMatrix bz = path_point(atoms, b, z);
    for (std::size_t c = 0; c < lie_ideal.dim(); ++c) {
      CMatrix x(n, n);
      for (std::size_t r = 0; r < n * n; ++r) {
        x(static_cast<Eigen::Index>(r / n), static_cast<Eigen::Index>(r % n)) =
            basis(r, c);
      }
      const CMatrix moved = az * x * bz;
      Eigen::VectorXcd y(n * n);
      for (std::size_t r = 0; r < n * n; ++r) {
        y(static_cast<Eigen::Index>(r)) = moved(static_cast<Eigen::Index>(r / n),
                                                static_cast<Eigen::Index>(r % n));
      }
      const Eigen::VectorXcd coeffs = qr.solve(y);
      const double residual = (basis * coeffs - y).norm();
      report.max_residual = std::max(report.max_residual, residual);
    }
    ++report.samples;
  }
  return report;
}

} // namespace lil
