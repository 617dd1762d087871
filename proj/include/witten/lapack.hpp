#pragma once

#include <Eigen/Dense>

namespace witten {

// Eigenvalues (ascending) of a Hermitian matrix; optionally eigenvectors.
Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& h);
void eigh(const Eigen::MatrixXcd& h, Eigen::VectorXd& values,
          Eigen::MatrixXcd& vectors);

// Economy SVD A = W S V^dagger. Returns singular values (descending, LAPACK
// order) and right singular vectors V (cols x min(rows,cols)).
void svd_right(const Eigen::MatrixXcd& a, Eigen::VectorXd& s,
               Eigen::MatrixXcd& v);
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);

}  // namespace witten
