#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

// Bracket values from central finite differences of plain C++ functions.
// Nothing here touches the symbolic layer.
namespace dirac::testing
{
using NumericFn = std::function<double(Eigen::VectorXd const &)>;

inline double fd_partial(NumericFn const & f, Eigen::VectorXd const & z, Eigen::Index i, double h = 1e-5)
{
	Eigen::VectorXd up = z, down = z;
	up(i) += h;
	down(i) -= h;
	return (f(up) - f(down)) / (2 * h);
}

/// z holds x_1..x_n, p_1..p_n followed by any parameters.
inline double fd_poisson(NumericFn const & f, NumericFn const & g, Eigen::VectorXd const & z, Eigen::Index n)
{
	double sum = 0;
	for (Eigen::Index i = 0; i < n; ++i)
		sum += fd_partial(f, z, i) * fd_partial(g, z, n + i) - fd_partial(f, z, n + i) * fd_partial(g, z, i);
	return sum;
}

inline double fd_dirac(NumericFn const & f, NumericFn const & g, std::vector<NumericFn> const & chi,
					   Eigen::VectorXd const & z, Eigen::Index n)
{
	auto const m = static_cast<Eigen::Index>(chi.size());
	Eigen::MatrixXd delta(m, m);
	Eigen::VectorXd f_chi(m), chi_g(m);
	for (Eigen::Index a = 0; a < m; ++a)
	{
		for (Eigen::Index b = 0; b < m; ++b)
			delta(a, b) = fd_poisson(chi[a], chi[b], z, n);
		f_chi(a) = fd_poisson(f, chi[a], z, n);
		chi_g(a) = fd_poisson(chi[a], g, z, n);
	}
	return fd_poisson(f, g, z, n) - f_chi.dot(delta.inverse() * chi_g);
}

}  // namespace dirac::testing
