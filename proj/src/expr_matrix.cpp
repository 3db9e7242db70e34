#include "dirac/expr_matrix.hpp"

#include "dirac/errors.hpp"

namespace dirac
{
ExprMatrix invert_matrix(ExprMatrix const & mat)
{
	if (mat.rows() != mat.cols())
		throw PreconditionViolated("invert_matrix: matrix is not square");
	Eigen::Index const size = mat.rows();
	ExprMatrix work = mat;
	ExprMatrix inv = ExprMatrix::Identity(size, size);

	for (Eigen::Index col = 0; col < size; ++col)
	{
		Eigen::Index pivot = -1;
		for (Eigen::Index r = col; r < size; ++r)
		{
			if (work(r, col).is_zero())
				continue;
			if (pivot < 0 || work(r, col).num().size() < work(pivot, col).num().size())
				pivot = r;
		}
		if (pivot < 0)
			throw SingularMatrix(static_cast<std::size_t>(col));
		if (pivot != col)
		{
			work.row(pivot).swap(work.row(col));
			inv.row(pivot).swap(inv.row(col));
		}

		RationalExpr const scale = RationalExpr(1) / work(col, col);
		for (Eigen::Index j = 0; j < size; ++j)
		{
			if (!work(col, j).is_zero())
				work(col, j) *= scale;
			if (!inv(col, j).is_zero())
				inv(col, j) *= scale;
		}

		for (Eigen::Index r = 0; r < size; ++r)
		{
			if (r == col || work(r, col).is_zero())
				continue;
			RationalExpr const factor = work(r, col);
			for (Eigen::Index j = 0; j < size; ++j)
			{
				if (!work(col, j).is_zero())
					work(r, j) -= factor * work(col, j);
				if (!inv(col, j).is_zero())
					inv(r, j) -= factor * inv(col, j);
			}
		}
	}
	return inv;
}

bool is_exact_identity(ExprMatrix const & mat)
{
	if (mat.rows() != mat.cols())
		return false;
	for (Eigen::Index i = 0; i < mat.rows(); ++i)
		for (Eigen::Index j = 0; j < mat.cols(); ++j)
			if (!(mat(i, j) == RationalExpr(i == j ? 1 : 0)))
				return false;
	return true;
}

bool is_exact_skew_symmetric(ExprMatrix const & mat)
{
	if (mat.rows() != mat.cols())
		return false;
	for (Eigen::Index i = 0; i < mat.rows(); ++i)
		for (Eigen::Index j = i; j < mat.cols(); ++j)
			if (!(mat(i, j) + mat(j, i)).is_zero())
				return false;
	return true;
}

bool is_exact_zero(ExprMatrix const & mat)
{
	for (Eigen::Index i = 0; i < mat.rows(); ++i)
		for (Eigen::Index j = 0; j < mat.cols(); ++j)
			if (!mat(i, j).is_zero())
				return false;
	return true;
}

}  // namespace dirac
