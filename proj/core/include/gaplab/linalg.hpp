#pragma once

#include <Eigen/Dense>

namespace gaplab::linalg {

// Largest eigenvalue of the symmetric part (A + Aᵀ)/2.
double symmetric_part_max_eigenvalue(const Eigen::MatrixXd& a);

double min_singular_value(const Eigen::MatrixXd& a);
double max_singular_value(const Eigen::MatrixXd& a);

// Induced 2-norm; zero for empty blocks.
double spectral_norm(const Eigen::MatrixXd& a);

// I - A.
Eigen::MatrixXd identity_minus(const Eigen::MatrixXd& a);

// Dense LU of I - A with partial pivoting plus its one-norm condition
// estimate. Throws NumericalError when I - A is numerically singular.
class ShiftedLu {
 public:
  explicit ShiftedLu(const Eigen::MatrixXd& a);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  // Solves (I - A)ᵀ X = rhs.
  Eigen::MatrixXd solve_transposed(const Eigen::MatrixXd& rhs) const;
  Eigen::MatrixXd inverse() const;

  // Estimate of cond_1(I - A) = ‖I-A‖₁‖(I-A)⁻¹‖₁.
  double condition_estimate() const noexcept { return condition_; }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_ = 1.0;
};

// (I - A)⁻¹ - (I - B)⁻¹ evaluated as (I - A)⁻¹ (A - B) (I - B)⁻¹.
Eigen::MatrixXd resolvent_difference(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b);

}  // namespace gaplab::linalg
