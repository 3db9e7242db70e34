#include "dirac/bracket.hpp"

#include "dirac/errors.hpp"

namespace dirac
{
std::string_view to_string(BracketMode mode) noexcept
{
	return mode == BracketMode::poisson ? "poisson" : "dirac";
}

RationalExpr poisson_bracket(RationalExpr const & f, RationalExpr const & g, PhaseSpace const & ps)
{
	RationalExpr sum;
	if (f.is_constant() || g.is_constant())
		return sum;
	for (std::size_t i = 0; i < ps.n(); ++i)
	{
		RationalExpr const fx = differentiate(f, ps.x(i));
		RationalExpr const fp = differentiate(f, ps.p(i));
		if (!fx.is_zero())
		{
			RationalExpr const gp = differentiate(g, ps.p(i));
			if (!gp.is_zero())
				sum += fx * gp;
		}
		if (!fp.is_zero())
		{
			RationalExpr const gx = differentiate(g, ps.x(i));
			if (!gx.is_zero())
				sum -= fp * gx;
		}
	}
	return sum;
}

ExprMatrix delta_matrix(std::span<RationalExpr const> constraints, PhaseSpace const & ps)
{
	if (constraints.empty() || constraints.size() % 2 != 0)
		throw OddConstraintCount(constraints.size());
	auto const size = static_cast<Eigen::Index>(constraints.size());
	ExprMatrix delta(size, size);
	for (Eigen::Index a = 0; a < size; ++a)
	{
		delta(a, a) = RationalExpr{};
		for (Eigen::Index b = a + 1; b < size; ++b)
		{
			delta(a, b) = poisson_bracket(constraints[a], constraints[b], ps);
			delta(b, a) = -delta(a, b);
		}
	}
	return delta;
}

DiracContext::DiracContext(PhaseSpace ps, std::vector<RationalExpr> constraints, ExprMatrix delta, ExprMatrix delta_inv)
	: ps_(std::move(ps)), constraints_(std::move(constraints)), delta_(std::move(delta)), delta_inv_(std::move(delta_inv))
{
}

DiracContext DiracContext::make(PhaseSpace ps, std::vector<RationalExpr> constraints)
{
	if (constraints.empty() || constraints.size() % 2 != 0)
		throw OddConstraintCount(constraints.size());
	if (constraints.size() > 2 * ps.n())
		throw TooManyConstraints(constraints.size() / 2, ps.n());
	ExprMatrix delta = delta_matrix(constraints, ps);
	ExprMatrix delta_inv;
	try
	{
		delta_inv = invert_matrix(delta);
	}
	catch (SingularMatrix const & e)
	{
		throw NotSecondClass(std::string("constraints are not second class: ") + e.what());
	}
	return DiracContext(std::move(ps), std::move(constraints), std::move(delta), std::move(delta_inv));
}

RationalExpr dirac_bracket(RationalExpr const & f, RationalExpr const & g, DiracContext const & ctx)
{
	auto const & ps = ctx.phase_space();
	auto const & chi = ctx.constraints();
	auto const size = static_cast<Eigen::Index>(chi.size());

	ExprVector f_chi(size);
	ExprVector chi_g(size);
	for (Eigen::Index a = 0; a < size; ++a)
	{
		f_chi(a) = poisson_bracket(f, chi[a], ps);
		chi_g(a) = poisson_bracket(chi[a], g, ps);
	}

	RationalExpr correction;
	for (Eigen::Index a = 0; a < size; ++a)
	{
		if (f_chi(a).is_zero())
			continue;
		RationalExpr weighted;
		for (Eigen::Index b = 0; b < size; ++b)
		{
			if (!ctx.delta_inv()(a, b).is_zero() && !chi_g(b).is_zero())
				weighted += ctx.delta_inv()(a, b) * chi_g(b);
		}
		if (!weighted.is_zero())
			correction += f_chi(a) * weighted;
	}
	return poisson_bracket(f, g, ps) - correction;
}

namespace
{
template <typename Bracket>
ExprMatrix skew_table(std::span<RationalExpr const> items, Bracket && bracket)
{
	auto const k = static_cast<Eigen::Index>(items.size());
	ExprMatrix table(k, k);
	for (Eigen::Index a = 0; a < k; ++a)
	{
		table(a, a) = RationalExpr{};
		for (Eigen::Index b = a + 1; b < k; ++b)
		{
			table(a, b) = bracket(items[a], items[b]);
			table(b, a) = -table(a, b);
		}
	}
	return table;
}
}  // namespace

ExprMatrix bracket_table(std::span<RationalExpr const> items, PhaseSpace const & ps)
{
	return skew_table(items, [&](auto const & f, auto const & g) { return poisson_bracket(f, g, ps); });
}

ExprMatrix bracket_table(std::span<RationalExpr const> items, DiracContext const & ctx)
{
	return skew_table(items, [&](auto const & f, auto const & g) { return dirac_bracket(f, g, ctx); });
}

}  // namespace dirac
