#pragma once

#include <Eigen/Core>

#include "dirac/rational_expr.hpp"

namespace dirac
{
/// Dense row-major matrix of exact rational functions.
using ExprMatrix = Eigen::Matrix<RationalExpr, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ExprVector = Eigen::Matrix<RationalExpr, Eigen::Dynamic, 1>;

/**
 * Exact inverse over the rational-function field by Gauss-Jordan elimination.
 *
 * Pivot: among nonzero entries at or below the diagonal of the current column,
 * the one whose numerator has the fewest terms; ties go to the lowest row.
 * Throws SingularMatrix when a column has no nonzero candidate.
 */
ExprMatrix invert_matrix(ExprMatrix const & mat);

bool is_exact_identity(ExprMatrix const & mat);
bool is_exact_skew_symmetric(ExprMatrix const & mat);
bool is_exact_zero(ExprMatrix const & mat);

/// Numeric image of a symbolic matrix at a dense symbol point.
template <typename Derived>
Eigen::MatrixXd evaluate(ExprMatrix const & mat, Eigen::MatrixBase<Derived> const & point)
{
	Eigen::MatrixXd out(mat.rows(), mat.cols());
	for (Eigen::Index i = 0; i < mat.rows(); ++i)
		for (Eigen::Index j = 0; j < mat.cols(); ++j)
			out(i, j) = mat(i, j).evaluate(point);
	return out;
}

}  // namespace dirac
