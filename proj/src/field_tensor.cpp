#include "spindyn/field_tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace spindyn::field {

namespace {

const Eigen::Matrix4d& metric() {
  static const Eigen::Matrix4d g = [] {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << 1.0, -1.0, -1.0, -1.0;
    return m;
  }();
  return g;
}

// Sign of the permutation (a b c d) of (0 1 2 3); 0 on repeated indices.
int perm_sign(int a, int b, int c, int d) {
  int idx[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

bool is_antisymmetric(const FieldTensor& F, double tol) {
  return (F.m + F.m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

FieldTensor from_fields(const EMFieldVectors& f) {
  FieldTensor F;
  for (int i = 0; i < 3; ++i) {
    F.m(0, i + 1) = -f.E(i);
    F.m(i + 1, 0) = f.E(i);
  }
  F.m(1, 2) = -f.H(2);
  F.m(2, 1) = f.H(2);
  F.m(2, 3) = -f.H(0);
  F.m(3, 2) = f.H(0);
  F.m(3, 1) = -f.H(1);
  F.m(1, 3) = f.H(1);
  return F;
}

EMFieldVectors extract(const FieldTensor& F) {
  if (F.variance != Variance::Contravariant)
    throw std::invalid_argument("extract expects a contravariant tensor");
  EMFieldVectors f;
  for (int i = 0; i < 3; ++i) f.E(i) = F.m(i + 1, 0);
  f.H(0) = -F.m(2, 3);
  f.H(1) = -F.m(3, 1);
  f.H(2) = -F.m(1, 2);
  return f;
}

FieldTensor lower(const FieldTensor& F) {
  if (F.variance == Variance::Covariant) return F;
  FieldTensor out;
  out.m = metric() * F.m * metric();
  out.variance = Variance::Covariant;
  return out;
}

FieldTensor raise(const FieldTensor& F) {
  if (F.variance == Variance::Contravariant) return F;
  FieldTensor out;
  out.m = metric() * F.m * metric();  // the metric is its own inverse
  out.variance = Variance::Contravariant;
  return out;
}

FieldTensor dual(const FieldTensor& F) {
  if (!is_antisymmetric(F, 1e-12))
    throw std::invalid_argument("dual requires an antisymmetric tensor");
  const FieldTensor cov = lower(F);
  FieldTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      double sum = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const int sign = perm_sign(mu, nu, a, b);
          if (sign == 0) continue;
          // e^{mu nu a b} = -perm_sign under e_{0123} = +1 and this metric.
          sum += -kLeviCivitaLower0123 * sign * cov.m(a, b);
        }
      }
      out.m(mu, nu) = 0.5 * sum;
    }
  }
  return out;
}

FieldInvariants invariants(const FieldTensor& F) {
  const FieldTensor contra = raise(F);
  const FieldTensor cov = lower(F);
  FieldInvariants inv;
  inv.scalar = 0.5 * (cov.m.cwiseProduct(contra.m)).sum();
  inv.pseudoscalar = -0.25 * (dual(contra).m.cwiseProduct(cov.m)).sum();
  return inv;
}

FieldTensor boost_z(const FieldTensor& F, double v) {
  if (!(std::abs(v) < 1.0))
    throw std::invalid_argument("boost velocity must satisfy |v| < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  Eigen::Matrix4d lambda = Eigen::Matrix4d::Identity();
  lambda(0, 0) = gamma;
  lambda(0, 3) = -gamma * v;
  lambda(3, 0) = -gamma * v;
  lambda(3, 3) = gamma;
  const FieldTensor contra = raise(F);
  FieldTensor out;
  out.m = lambda * contra.m * lambda.transpose();
  return out;
}

}  // namespace spindyn::field
