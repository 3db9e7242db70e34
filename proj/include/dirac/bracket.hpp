#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dirac/expr_matrix.hpp"
#include "dirac/phase_space.hpp"

namespace dirac
{
enum class BracketMode
{
	poisson,
	dirac
};

std::string_view to_string(BracketMode mode) noexcept;

/// {f, g} = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i).
RationalExpr poisson_bracket(RationalExpr const & f, RationalExpr const & g, PhaseSpace const & ps);

/// Pairwise Poisson brackets of the constraints. Throws OddConstraintCount.
ExprMatrix delta_matrix(std::span<RationalExpr const> constraints, PhaseSpace const & ps);

/**
 * A phase space with a second-class constraint set and its cached constraint
 * matrix and inverse. Immutable once built.
 */
class DiracContext
{
public:
	/**
	 * Throws OddConstraintCount (also for an empty set), TooManyConstraints when
	 * m > n, and NotSecondClass when the constraint matrix is singular as a
	 * matrix of rational functions.
	 */
	static DiracContext make(PhaseSpace ps, std::vector<RationalExpr> constraints);

	PhaseSpace const & phase_space() const noexcept { return ps_; }
	std::vector<RationalExpr> const & constraints() const noexcept { return constraints_; }
	ExprMatrix const & delta() const noexcept { return delta_; }
	ExprMatrix const & delta_inv() const noexcept { return delta_inv_; }
	/// Number of constraint pairs.
	std::size_t m() const noexcept { return constraints_.size() / 2; }

private:
	DiracContext(PhaseSpace ps, std::vector<RationalExpr> constraints, ExprMatrix delta, ExprMatrix delta_inv);

	PhaseSpace ps_;
	std::vector<RationalExpr> constraints_;
	ExprMatrix delta_;
	ExprMatrix delta_inv_;
};

inline DiracContext make_context(PhaseSpace ps, std::vector<RationalExpr> constraints)
{
	return DiracContext::make(std::move(ps), std::move(constraints));
}

/// {f, g}_D = {f, g} - {f, chi_a} (Delta^-1)_ab {chi_b, g}.
RationalExpr dirac_bracket(RationalExpr const & f, RationalExpr const & g, DiracContext const & ctx);

/// k x k table of brackets; skew-symmetric by construction.
ExprMatrix bracket_table(std::span<RationalExpr const> items, PhaseSpace const & ps);
ExprMatrix bracket_table(std::span<RationalExpr const> items, DiracContext const & ctx);

}  // namespace dirac
