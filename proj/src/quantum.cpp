// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlbox/quantum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_dims(std::size_t total, std::span<const std::size_t> dims) {
  if (dims.empty() || product_of(dims) != total) {
    throw ArgumentError("factor dimensions do not multiply to " + std::to_string(total));
  }
}

std::vector<std::size_t> digits(std::size_t index, std::span<const std::size_t> dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

}  // namespace

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const CMatrix& hermitian) {
  const CMatrix sym = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CMatrix psd_sqrt(const CMatrix& hermitian) {
  const CMatrix sym = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  Eigen::VectorXd vals = solver.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < kPsdFloor) throw DomainError("square root of a non-PSD operator");
    vals[i] = std::sqrt(std::max(vals[i], 0.0));
  }
  return solver.eigenvectors() * vals.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  const auto d = static_cast<std::size_t>(matrix_.rows());
  if (d == 0 || matrix_.rows() != matrix_.cols()) throw ArgumentError("density matrix must be square");
  if (d > kMaxDimension) throw ArgumentError("dimension above " + std::to_string(kMaxDimension));
  if (!is_hermitian(matrix_)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kStateTolerance) {
    throw DomainError("density matrix trace is not 1");
  }
  if (min_eigenvalue(matrix_) < kPsdFloor) throw DomainError("density matrix is not PSD");
}

DensityMatrix DensityMatrix::from_pure(const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("zero state vector");
  const CVector v = psi / norm;
  CMatrix rho = v * v.adjoint();
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

Measurement::Measurement(std::vector<CMatrix> effects, std::vector<CMatrix> kraus)
    : effects_(std::move(effects)), kraus_(std::move(kraus)) {
  if (effects_.empty()) throw ArgumentError("measurement needs at least one outcome");
  if (effects_.size() != kraus_.size()) throw ArgumentError("one Kraus operator per effect");
  const auto d = effects_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < effects_.size(); ++k) {
    const auto& e = effects_[k];
    if (e.rows() != d || e.cols() != d || kraus_[k].rows() != d || kraus_[k].cols() != d) {
      throw ArgumentError("measurement operators have inconsistent dimensions");
    }
    if (!is_hermitian(e) || min_eigenvalue(e) < kPsdFloor) throw DomainError("effect is not PSD");
    if ((kraus_[k].adjoint() * kraus_[k] - e).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw DomainError("Kraus operator does not reproduce its effect");
    }
    sum += e;
  }
  if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw DomainError("effects do not sum to the identity");
  }
}

Measurement Measurement::luders(std::vector<CMatrix> effects) {
  std::vector<CMatrix> kraus;
  kraus.reserve(effects.size());
  for (const auto& e : effects) kraus.push_back(psd_sqrt(e));
  return Measurement(std::move(effects), std::move(kraus));
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
  check_dims(rho.dim(), dims);
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() ||
      (!kept.empty() && kept.back() >= dims.size())) {
    throw ArgumentError("invalid subsystem indices for partial trace");
  }
  std::vector<std::size_t> kept_dims;
  for (std::size_t k : kept) kept_dims.push_back(dims[k]);
  const std::size_t out_dim = product_of(kept_dims);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : kept) is_kept[k] = true;
  const std::size_t d = rho.dim();
  for (std::size_t r = 0; r < d; ++r) {
    const auto dr = digits(r, dims);
    for (std::size_t c = 0; c < d; ++c) {
      const auto dc = digits(c, dims);
      bool diagonal = true;
      std::size_t rr = 0, cc = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (is_kept[k]) {
          rr = rr * dims[k] + dr[k];
          cc = cc * dims[k] + dc[k];
        } else if (dr[k] != dc[k]) {
          diagonal = false;
          break;
        }
      }
      if (diagonal) out(rr, cc) += rho.matrix()(r, c);
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const std::size_t> perm,
                                 std::span<const std::size_t> dims) {
  check_dims(rho.dim(), dims);
  if (perm.size() != dims.size()) throw ArgumentError("permutation has wrong length");
  std::vector<std::size_t> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != k) throw ArgumentError("not a permutation");
  }
  std::vector<std::size_t> new_dims;
  for (std::size_t p : perm) new_dims.push_back(dims[p]);
  const std::size_t d = rho.dim();
  // index map old -> new
  std::vector<std::size_t> map(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto di = digits(i, dims);
    std::size_t j = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) j = j * new_dims[k] + di[perm[k]];
    map[i] = j;
  }
  CMatrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out(map[r], map[c]) = rho.matrix()(r, c);
  }
  return DensityMatrix(std::move(out));
}

CMatrix embed(const CMatrix& op, std::size_t factor, std::span<const std::size_t> dims) {
  if (factor >= dims.size() || static_cast<std::size_t>(op.rows()) != dims[factor]) {
    throw ArgumentError("operator does not match subsystem dimension");
  }
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto dk = static_cast<Eigen::Index>(dims[k]);
    out = tensor(out, k == factor ? op : CMatrix::Identity(dk, dk));
  }
  return out;
}

double born(const DensityMatrix& rho, std::span<const CMatrix> effects) {
  if (effects.empty()) throw ArgumentError("born needs at least one effect");
  CMatrix full = effects.front();
  for (std::size_t k = 1; k < effects.size(); ++k) full = tensor(full, effects[k]);
  if (static_cast<std::size_t>(full.rows()) != rho.dim()) {
    throw ArgumentError("effect dimensions do not match the state");
  }
  const double p = (full * rho.matrix()).trace().real();
  if (p < -kStateTolerance || p > 1.0 + kStateTolerance) {
    throw DomainError("Born value outside [0, 1]: " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

DensityMatrix post_measurement(const DensityMatrix& rho, const CMatrix& kraus) {
  if (static_cast<std::size_t>(kraus.rows()) != rho.dim() || kraus.rows() != kraus.cols()) {
    throw ArgumentError("Kraus operator does not match the state");
  }
  CMatrix out = kraus * rho.matrix() * kraus.adjoint();
  const double p = out.trace().real();
  if (!(p > 1e-12)) throw UpdateError("post-measurement update on a zero-probability outcome");
  out /= p;
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

namespace states {

DensityMatrix singlet() {
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi);
}

DensityMatrix ghz3() {
  CVector psi = CVector::Zero(8);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(7) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi);
}

DensityMatrix basis(std::span<const int> bits) {
  if (bits.empty()) throw ArgumentError("basis state needs at least one qubit");
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ArgumentError("basis bits must be 0 or 1");
    index = index * 2 + static_cast<std::size_t>(b);
  }
  CVector psi = CVector::Zero(Eigen::Index{1} << bits.size());
  psi(static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix::from_pure(psi);
}

DensityMatrix maximally_mixed(std::size_t qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix product(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw ArgumentError("product of no factors");
  CMatrix m = factors.front().matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) m = tensor(m, factors[k].matrix());
  return DensityMatrix(std::move(m));
}

DensityMatrix random_pure(std::size_t qubits, StreamRng& rng) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  CVector psi(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    psi(i) = Complex(re, im);
  }
  return DensityMatrix::from_pure(psi);
}

}  // namespace states

Measurement planar_measurement(double theta) {
  CMatrix z(2, 2), x(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  x << 0.0, 1.0, 1.0, 0.0;
  const CMatrix id = CMatrix::Identity(2, 2);
  CMatrix plus = (id + std::cos(theta) * z + std::sin(theta) * x) / 2.0;
  CMatrix minus = id - plus;
  // Rank-one projectors are their own square roots.
  return Measurement({plus, minus}, {plus, minus});
}

MeasurementSet planar_measurements(std::span<const double> angles) {
  MeasurementSet set;
  set.reserve(angles.size());
  for (double a : angles) set.push_back(planar_measurement(a));
  return set;
}

}  // namespace nlbox
