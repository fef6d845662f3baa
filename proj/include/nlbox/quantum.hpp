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

#pragma once

// Small dense quantum states and measurements (at most 64 dimensions).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nlbox/random.hpp"

namespace nlbox {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDimension = 64;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kPsdFloor = -1e-9;

/// Hermitian, unit-trace, positive semidefinite matrix. The invariants are
/// checked on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix matrix);

  /// Projector onto a (renormalized) pure state.
  static DensityMatrix from_pure(const CVector& psi);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  double purity() const;

 private:
  CMatrix matrix_;
};

/// One measurement setting: an effect per outcome plus the Kraus operator used
/// for post-measurement updates.
class Measurement {
 public:
  Measurement(std::vector<CMatrix> effects, std::vector<CMatrix> kraus);

  /// Kraus operators are the positive square roots of the effects.
  static Measurement luders(std::vector<CMatrix> effects);

  std::size_t outcomes() const { return effects_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(effects_.front().rows()); }
  const CMatrix& effect(std::size_t outcome) const { return effects_.at(outcome); }
  const CMatrix& kraus(std::size_t outcome) const { return kraus_.at(outcome); }

 private:
  std::vector<CMatrix> effects_;
  std::vector<CMatrix> kraus_;
};

/// Measurements indexed by input label.
using MeasurementSet = std::vector<Measurement>;

bool is_hermitian(const CMatrix& m, double tol = kStateTolerance);
double min_eigenvalue(const CMatrix& hermitian);
CMatrix psd_sqrt(const CMatrix& hermitian);

/// Kronecker product.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the subsystems in `keep` (kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

/// Reorders tensor factors: factor k of the result is factor perm[k] of rho.
DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const std::size_t> perm,
                                 std::span<const std::size_t> dims);

/// Lifts a single-factor operator to the full space, identity elsewhere.
CMatrix embed(const CMatrix& op, std::size_t factor, std::span<const std::size_t> dims);

/// Tr((E_1 x ... x E_k) rho), clamped to [0, 1].
double born(const DensityMatrix& rho, std::span<const CMatrix> effects);

/// K rho K^dagger / Tr(K rho K^dagger); `kraus` acts on the full space.
DensityMatrix post_measurement(const DensityMatrix& rho, const CMatrix& kraus);

namespace states {

/// (|01> - |10>) / sqrt(2).
DensityMatrix singlet();
/// (|000> + |111>) / sqrt(2).
DensityMatrix ghz3();
/// Computational basis state, bits[0] is the first qubit.
DensityMatrix basis(std::span<const int> bits);
DensityMatrix maximally_mixed(std::size_t qubits);
DensityMatrix product(std::span<const DensityMatrix> factors);
/// Haar-random pure state on `qubits` qubits.
DensityMatrix random_pure(std::size_t qubits, StreamRng& rng);

}  // namespace states

/// Projective qubit measurement along the Bloch direction
/// (sin theta, 0, cos theta); outcome 0 is the +1 eigenspace.
Measurement planar_measurement(double theta);
MeasurementSet planar_measurements(std::span<const double> angles);

}  // namespace nlbox
