// Copyright 2026 The wigpos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Phase-space ellipsoids B_M = {z : M z.z <= hbar}, their symplectic capacity
// and quantum blobs (symplectic images of the ball of radius sqrt(hbar)).

#pragma once

#include "wigpos/symplectic.hpp"

namespace wigpos {

class EllipsoidSpec {
 public:
  EllipsoidSpec(Matrix m, PhaseSpaceContext ctx);
  const Matrix &m() const { return m_; }
  const PhaseSpaceContext &ctx() const { return ctx_; }

 private:
  Matrix m_;
  PhaseSpaceContext ctx_;
};

struct BlobSpec {
  Matrix s;
  PhaseSpacePoint center;
  /// Min eigenvalue of (S S^T)^{-1} - M; >= 0 when the blob lies in B_M.
  double containment_residual = 0.0;
};

constexpr double kAdmissibleTol = 1e-10;

/// pi hbar / mu_1(M).
double capacity(const EllipsoidSpec &e);

/// capacity >= pi hbar, i.e. mu_1 <= 1 + tol.
bool is_admissible(const EllipsoidSpec &e, double tol = kAdmissibleTol);

/// Area of the central section by the (x_j, p_j) plane, j in [1, N].
double section_area(const EllipsoidSpec &e, int j);

struct QuantumBlob {
  BlobSpec blob;
  EllipsoidSpec ellipsoid;
};

QuantumBlob quantum_blob(const Matrix &s, const PhaseSpacePoint &center,
                         const PhaseSpaceContext &ctx);

/// Blob inside B_M built from the Williamson factorization of M.
/// Throws std::domain_error when B_M is not admissible.
BlobSpec find_contained_blob(const EllipsoidSpec &e);

}  // namespace wigpos
