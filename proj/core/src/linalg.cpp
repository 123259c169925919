#include "gaplab/linalg.hpp"

#include <cmath>
#include <limits>

#include "gaplab/errors.hpp"

namespace gaplab::linalg {

double symmetric_part_max_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double min_singular_value(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues().minCoeff();
}

double max_singular_value(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const Eigen::MatrixXd& a) { return max_singular_value(a); }

Eigen::MatrixXd identity_minus(const Eigen::MatrixXd& a) {
  return Eigen::MatrixXd::Identity(a.rows(), a.cols()) - a;
}

ShiftedLu::ShiftedLu(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw InputError("expected a square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  lu_.compute(identity_minus(a));
  const double rcond = lu_.rcond();
  const auto& lu = lu_.matrixLU();
  const bool zero_pivot =
      a.rows() > 0 && lu.diagonal().cwiseAbs().minCoeff() == 0.0;
  if (zero_pivot || !std::isfinite(rcond) ||
      rcond < std::numeric_limits<double>::epsilon()) {
    throw NumericalError("I - P is singular to working precision (rcond = " +
                         std::to_string(rcond) + ")");
  }
  condition_ = 1.0 / rcond;
}

Eigen::VectorXd ShiftedLu::solve(const Eigen::VectorXd& rhs) const {
  return lu_.solve(rhs);
}

Eigen::MatrixXd ShiftedLu::solve(const Eigen::MatrixXd& rhs) const {
  return lu_.solve(rhs);
}

Eigen::MatrixXd ShiftedLu::solve_transposed(const Eigen::MatrixXd& rhs) const {
  return lu_.transpose().solve(rhs);
}

Eigen::MatrixXd ShiftedLu::inverse() const { return lu_.inverse(); }

Eigen::MatrixXd resolvent_difference(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b) {
  const ShiftedLu lu_a(a);
  const ShiftedLu lu_b(b);
  // (I-A)⁻¹ (A-B) (I-B)⁻¹ = (I-A)⁻¹ [ (I-B)⁻ᵀ (A-B)ᵀ ]ᵀ
  const Eigen::MatrixXd right =
      lu_b.solve_transposed((a - b).transpose()).transpose();
  return lu_a.solve(right);
}

}  // namespace gaplab::linalg
