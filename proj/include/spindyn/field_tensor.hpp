#pragma once

#include <Eigen/Dense>

#include "spindyn/common.hpp"

namespace spindyn::field {

enum class Variance { Contravariant, Covariant };

// Antisymmetric rank-2 electromagnetic field tensor on Minkowski space with
// metric diag(+,-,-,-), c = 1, E and H sharing units.
struct FieldTensor {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  Variance variance = Variance::Contravariant;
};

struct EMFieldVectors {
  Eigen::Vector3d E = Eigen::Vector3d::Zero();
  Eigen::Vector3d H = Eigen::Vector3d::Zero();
};

struct FieldInvariants {
  double scalar = 0.0;        // (1/2) F_{mu nu} F^{mu nu}  =  |H|^2 - |E|^2
  double pseudoscalar = 0.0;  // -(1/4) Fdual^{mu nu} F_{mu nu}  =  -(E . H)
};

// Orientation of the fully antisymmetric unit tensor: e_{0123} = +1, hence
// e^{0123} = -1 under this metric. This is the orientation for which the
// dual maps the (E, H) layout onto (-H, E); the induced pseudoscalar
// invariant is -(E . H) (constant documented, see FieldInvariants).
inline constexpr double kLeviCivitaLower0123 = 1.0;

// Contravariant tensor with row 0 = (0, -E1, -E2, -E3) and space block
// F^{ij} = -eps_{ijk} H_k.
FieldTensor from_fields(const EMFieldVectors& f);

// Inverse reading of from_fields: E_i = F^{i0}, H_k = -(1/2) eps_{ijk} F^{ij}.
// Requires a contravariant tensor.
EMFieldVectors extract(const FieldTensor& F);

// Flip variance by contracting with the metric on both indices.
FieldTensor lower(const FieldTensor& F);
FieldTensor raise(const FieldTensor& F);

// Dual^{mu nu} = (1/2) e^{mu nu alpha beta} F_{alpha beta}. Input may have
// either variance (it is lowered internally); the result is contravariant.
// Applying dual twice yields -F. Throws std::invalid_argument when the
// input is not antisymmetric within 1e-12.
FieldTensor dual(const FieldTensor& F);

FieldInvariants invariants(const FieldTensor& F);

// Pure Lorentz boost along z with velocity v (|v| < 1); test utility for
// checking the invariance of the two invariants.
FieldTensor boost_z(const FieldTensor& F, double v);

bool is_antisymmetric(const FieldTensor& F, double tol = 1e-12);

}  // namespace spindyn::field
