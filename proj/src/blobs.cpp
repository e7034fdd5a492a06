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


#include "wigpos/blobs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wigpos {

EllipsoidSpec::EllipsoidSpec(Matrix m, PhaseSpaceContext ctx)
    : m_(std::move(m)), ctx_(ctx) {
  if (m_.rows() != ctx_.dim()) {
    throw std::invalid_argument("EllipsoidSpec: matrix size does not match 2N");
  }
  require_symmetric_pd(m_, "EllipsoidSpec");
  m_ = 0.5 * (m_ + m_.transpose());
}

double capacity(const EllipsoidSpec &e) {
  return std::numbers::pi * e.ctx().hbar() / symplectic_spectrum(e.m()).max();
}

bool is_admissible(const EllipsoidSpec &e, double tol) {
  return symplectic_spectrum(e.m()).max() <= 1.0 + tol;
}

double section_area(const EllipsoidSpec &e, int j) {
  const int n = e.ctx().dof();
  if (j < 1 || j > n) throw std::out_of_range("section_area: index out of range");
  const int a = j - 1;
  const int b = n + j - 1;
  const double det = e.m()(a, a) * e.m()(b, b) - e.m()(a, b) * e.m()(b, a);
  return std::numbers::pi * e.ctx().hbar() / std::sqrt(det);
}

QuantumBlob quantum_blob(const Matrix &s, const PhaseSpacePoint &center,
                         const PhaseSpaceContext &ctx) {
  if (s.rows() != ctx.dim() || center.size() != ctx.dim()) {
    throw std::invalid_argument("quantum_blob: dimension mismatch");
  }
  if (!is_symplectic(s, 1e-9)) {
    throw std::invalid_argument("quantum_blob: matrix is not symplectic");
  }
  Matrix m = (s * s.transpose()).inverse();
  m = 0.5 * (m + m.transpose());
  return {BlobSpec{s, center, 0.0}, EllipsoidSpec(m, ctx)};
}

BlobSpec find_contained_blob(const EllipsoidSpec &e) {
  if (!is_admissible(e)) {
    throw std::domain_error("find_contained_blob: ellipsoid not admissible, no blob fits");
  }
  const WilliamsonFactorization wf = williamson(e.m());
  const Matrix &s0 = wf.s;
  const Matrix gap = s0.transpose() * s0 - e.m();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gap + gap.transpose()));
  const double residual = es.eigenvalues()(0);
  const double tol = 1e-10 * e.m().norm();
  if (residual < -tol) {
    throw std::runtime_error("find_contained_blob: containment check failed");
  }
  return {s0.inverse(), PhaseSpacePoint(Vector::Zero(e.ctx().dim())), residual};
}

}  // namespace wigpos
