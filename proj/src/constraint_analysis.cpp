#include "dirac/constraint_analysis.hpp"

#include <algorithm>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "dirac/errors.hpp"

namespace dirac
{
void SamplerConfig::validate() const
{
	if (!(tolerance > 0))
		throw PreconditionViolated("sampler tolerance must be positive");
	if (point_count < 1)
		throw PreconditionViolated("sampler point count must be at least 1");
	if (max_newton_iters < 1 || max_retries < 1)
		throw PreconditionViolated("sampler iteration limits must be at least 1");
}

namespace
{
Eigen::VectorXd bound_parameters(PhaseSpace const & ps, SamplerConfig const & cfg)
{
	Eigen::VectorXd values(static_cast<Eigen::Index>(ps.parameters().size()));
	for (std::size_t j = 0; j < ps.parameters().size(); ++j)
	{
		auto it = cfg.bindings.find(ps.parameters()[j]);
		if (it == cfg.bindings.end())
			throw PreconditionViolated("parameter '" + ps.parameters()[j] + "' needs a numeric binding for sampling");
		values(static_cast<Eigen::Index>(j)) = it->second;
	}
	return values;
}

class NewtonProjector
{
public:
	NewtonProjector(PhaseSpace const & ps, std::span<RationalExpr const> constraints, SamplerConfig const & cfg)
		: constraints_(constraints.begin(), constraints.end()),
		  jacobian_(static_cast<Eigen::Index>(constraints.size()), static_cast<Eigen::Index>(ps.variable_count())),
		  vars_(static_cast<Eigen::Index>(ps.variable_count())),
		  cfg_(cfg)
	{
		for (Eigen::Index a = 0; a < jacobian_.rows(); ++a)
			for (Eigen::Index v = 0; v < jacobian_.cols(); ++v)
				jacobian_(a, v) = differentiate(constraints_[static_cast<std::size_t>(a)], static_cast<std::size_t>(v));
	}

	/// Projects `z` (variables then parameters) onto the constraint surface in place.
	bool project(PhasePoint & z) const
	{
		Eigen::VectorXd residual(jacobian_.rows());
		try
		{
			for (int iter = 0; iter <= cfg_.max_newton_iters; ++iter)
			{
				for (Eigen::Index a = 0; a < residual.size(); ++a)
					residual(a) = constraints_[static_cast<std::size_t>(a)].evaluate(z);
				if (!residual.allFinite() || !z.allFinite())
					return false;
				if (residual.size() == 0 || residual.cwiseAbs().maxCoeff() <= cfg_.tolerance)
					return true;
				if (iter == cfg_.max_newton_iters)
					break;
				Eigen::MatrixXd const jac = evaluate(jacobian_, z);
				z.head(vars_) -= jac.completeOrthogonalDecomposition().solve(residual);
			}
		}
		catch (PoleAtPoint const &)
		{
		}
		return false;
	}

private:
	std::vector<RationalExpr> constraints_;
	ExprMatrix jacobian_;
	Eigen::Index vars_;
	SamplerConfig const & cfg_;
};

}  // namespace

std::vector<PhasePoint> sample_on_shell(PhaseSpace const & ps, std::span<RationalExpr const> constraints,
										SamplerConfig const & cfg)
{
	cfg.validate();
	Eigen::VectorXd const params = bound_parameters(ps, cfg);
	auto const vars = static_cast<Eigen::Index>(ps.variable_count());
	NewtonProjector const projector(ps, constraints, cfg);

	std::mt19937_64 rng(cfg.seed);
	std::normal_distribution<double> normal(0.0, 1.0);

	std::vector<PhasePoint> points;
	points.reserve(static_cast<std::size_t>(cfg.point_count));
	for (int k = 0; k < cfg.point_count; ++k)
	{
		bool found = false;
		for (int attempt = 0; attempt < cfg.max_retries && !found; ++attempt)
		{
			PhasePoint z(vars + params.size());
			for (Eigen::Index v = 0; v < vars; ++v)
				z(v) = normal(rng);
			z.tail(params.size()) = params;
			if (projector.project(z))
			{
				points.push_back(std::move(z));
				found = true;
			}
		}
		if (!found)
			throw NoOnShellPoint("no on-shell point found after " + std::to_string(cfg.max_retries) +
								 " attempts (point " + std::to_string(k + 1) + ")");
	}
	return points;
}

std::vector<PhasePoint> sample_on_shell(DiracContext const & ctx, SamplerConfig const & cfg)
{
	return sample_on_shell(ctx.phase_space(), ctx.constraints(), cfg);
}

Eigen::Index numeric_rank(Eigen::MatrixXd const & mat, double relative_threshold)
{
	if (mat.size() == 0)
		return 0;
	Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
	auto const & sv = svd.singularValues();
	double const largest = sv.size() > 0 ? sv(0) : 0.0;
	if (!(largest > 0))
		return 0;
	return (sv.array() > relative_threshold * largest).count();
}

std::string_view to_string(ConstraintClass c) noexcept
{
	return c == ConstraintClass::second_class ? "second_class" : "degenerate";
}

Classification classify_constraints(PhaseSpace const & ps, std::span<RationalExpr const> constraints,
									SamplerConfig const & cfg)
{
	if (constraints.size() % 2 != 0)
		throw OddConstraintCount(constraints.size());
	Classification out;
	out.m = constraints.size() / 2;
	if (out.m > ps.n())
		throw TooManyConstraints(out.m, ps.n());
	out.dof_pairs = static_cast<std::size_t>(dof_count(static_cast<long>(ps.n()), static_cast<long>(out.m)));
	if (constraints.empty())
	{
		out.verdict = ConstraintClass::second_class;
		out.symbolic_det_nonzero = true;
		return out;
	}

	ExprMatrix const delta = delta_matrix(constraints, ps);
	try
	{
		(void)invert_matrix(delta);
		out.symbolic_det_nonzero = true;
	}
	catch (SingularMatrix const &)
	{
		out.symbolic_det_nonzero = false;
	}

	std::size_t rank = constraints.size();
	for (auto const & z : sample_on_shell(ps, constraints, cfg))
	{
		std::size_t here = 0;
		try
		{
			here = static_cast<std::size_t>(numeric_rank(evaluate(delta, z)));
		}
		catch (PoleAtPoint const &)
		{
			here = 0;
		}
		rank = std::min(rank, here);
	}
	out.on_shell_rank = rank;
	out.verdict = out.symbolic_det_nonzero && rank == constraints.size() ? ConstraintClass::second_class
																		  : ConstraintClass::degenerate;
	return out;
}

TraceIdentity trace_identity(DiracContext const & ctx)
{
	auto const & ps = ctx.phase_space();
	TraceIdentity out;
	for (std::size_t i = 0; i < ps.n(); ++i)
		out.value += dirac_bracket(RationalExpr::variable(ps.x(i)), RationalExpr::variable(ps.p(i)), ctx);
	out.expected = dof_count(static_cast<long>(ps.n()), static_cast<long>(ctx.m()));
	out.holds = (out.value - RationalExpr(static_cast<int>(out.expected))).is_zero();
	return out;
}

TraceIdentity trace_identity(PhaseSpace const & ps)
{
	TraceIdentity out;
	for (std::size_t i = 0; i < ps.n(); ++i)
		out.value += poisson_bracket(RationalExpr::variable(ps.x(i)), RationalExpr::variable(ps.p(i)), ps);
	out.expected = static_cast<long>(ps.n());
	out.holds = (out.value - RationalExpr(static_cast<int>(out.expected))).is_zero();
	return out;
}

bool reduction_check(DiracContext const & ctx, std::set<std::size_t> const & eliminated, RationalExpr const & f,
					 RationalExpr const & g)
{
	auto const & ps = ctx.phase_space();
	if (eliminated.empty() || *eliminated.rbegin() >= ps.n())
		throw PreconditionViolated("reduction_check: eliminated pair indices out of range");

	std::set<std::size_t> expected;
	for (auto k : eliminated)
	{
		expected.insert(ps.x(k));
		expected.insert(ps.p(k));
	}
	std::set<std::size_t> present;
	for (auto const & chi : ctx.constraints())
	{
		bool matched = false;
		for (auto s : expected)
		{
			if (chi.identical(RationalExpr::variable(s)))
			{
				matched = present.insert(s).second;
				break;
			}
		}
		if (!matched)
			throw PreconditionViolated("reduction_check: constraints are not exactly the eliminated pairs");
	}
	if (present != expected)
		throw PreconditionViolated("reduction_check: constraints are not exactly the eliminated pairs");

	for (auto s : expected)
		if (f.mentions(s) || g.mentions(s))
			throw PreconditionViolated("reduction_check: f or g mentions eliminated variable " + ps.name(s));

	RationalExpr const dirac = dirac_bracket(f, g, ctx);
	for (auto s : expected)
		if (dirac.mentions(s))
			return false;

	std::size_t const reduced_n = ps.n() - eliminated.size();
	if (reduced_n == 0)
		return dirac.is_zero();

	// Kept coordinates, kept momenta and parameters move down to their reduced slots.
	PhaseSpace const reduced(reduced_n, ps.parameters());
	std::vector<std::size_t> map(ps.symbol_count(), 0);
	std::size_t next = 0;
	for (std::size_t i = 0; i < ps.n(); ++i)
	{
		if (eliminated.contains(i))
			continue;
		map[ps.x(i)] = reduced.x(next);
		map[ps.p(i)] = reduced.p(next);
		++next;
	}
	for (std::size_t j = 0; j < ps.parameters().size(); ++j)
		map[ps.parameter(j)] = reduced.parameter(j);

	RationalExpr const reduced_pb = poisson_bracket(f.reindexed(map), g.reindexed(map), reduced);
	return dirac.reindexed(map) == reduced_pb;
}

long dof_count(long n, long m)
{
	if (m < 0 || n < 0 || m > n)
		throw InvalidCounts("invalid counts: n = " + std::to_string(n) + ", m = " + std::to_string(m));
	return n - m;
}

}  // namespace dirac
