#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dirac/bracket.hpp"

namespace dirac
{
struct SamplerConfig
{
	std::uint64_t seed = 0;
	double tolerance = 1e-10;
	int max_newton_iters = 100;
	int max_retries = 50;
	int point_count = 16;
	std::map<std::string, double> bindings;

	/// Throws PreconditionViolated on a non-positive tolerance or point count.
	void validate() const;
};

/// Dense symbol-indexed point: all 2n variables followed by the bound parameters.
using PhasePoint = Eigen::VectorXd;

/**
 * Points where every constraint vanishes to within cfg.tolerance.
 *
 * Each attempt draws standard-normal variables and runs Newton iterations with a
 * minimum-norm least-squares step on the symbolic Jacobian. A point that fails
 * cfg.max_retries attempts raises NoOnShellPoint. Deterministic in cfg.
 */
std::vector<PhasePoint> sample_on_shell(PhaseSpace const & ps, std::span<RationalExpr const> constraints,
										SamplerConfig const & cfg);
std::vector<PhasePoint> sample_on_shell(DiracContext const & ctx, SamplerConfig const & cfg);

/// Numeric rank with singular values above 1e-8 relative to the largest.
Eigen::Index numeric_rank(Eigen::MatrixXd const & mat, double relative_threshold = 1e-8);

enum class ConstraintClass
{
	second_class,
	degenerate
};

std::string_view to_string(ConstraintClass c) noexcept;

struct Classification
{
	ConstraintClass verdict = ConstraintClass::degenerate;
	std::size_t m = 0;
	bool symbolic_det_nonzero = false;
	/// Smallest rank of the constraint matrix over the sampled points.
	std::size_t on_shell_rank = 0;
	std::size_t dof_pairs = 0;
};

/**
 * Second class iff the constraint matrix is invertible over rational functions
 * and has full rank at every sampled on-shell point. An empty constraint set is
 * classified as second class with m = 0.
 */
Classification classify_constraints(PhaseSpace const & ps, std::span<RationalExpr const> constraints,
									SamplerConfig const & cfg);

struct TraceIdentity
{
	RationalExpr value;
	long expected = 0;
	bool holds = false;
};

/// sum_i {x_i, p_i}_D compared with n - m.
TraceIdentity trace_identity(DiracContext const & ctx);
/// Unconstrained counterpart: sum_i {x_i, p_i} against n.
TraceIdentity trace_identity(PhaseSpace const & ps);

/**
 * Checks that on a context whose constraints are exactly {x_k, p_k : k in
 * eliminated} (0-based pair indices), the Dirac bracket of f and g equals the
 * Poisson bracket computed on the phase space with those pairs removed.
 * Throws PreconditionViolated when the context or f, g do not fit.
 */
bool reduction_check(DiracContext const & ctx, std::set<std::size_t> const & eliminated, RationalExpr const & f,
					 RationalExpr const & g);

/// n - m; throws InvalidCounts when m > n.
long dof_count(long n, long m);

}  // namespace dirac
