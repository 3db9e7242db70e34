#include <doctest.h>

#include <cmath>
#include <cstring>

#include "dirac/constraint_analysis.hpp"
#include "dirac/expression_io.hpp"
#include "support/generators.hpp"

using namespace dirac;
using dirac::testing::Rng;

namespace
{
std::vector<RationalExpr> parse_all(std::vector<std::string> const & texts, PhaseSpace const & ps)
{
	std::vector<RationalExpr> out;
	for (auto const & t : texts)
		out.push_back(parse_expression(t, ps));
	return out;
}

SamplerConfig bound_radius(double r, std::uint64_t seed = 3)
{
	SamplerConfig cfg;
	cfg.seed = seed;
	cfg.bindings["r"] = r;
	return cfg;
}
}  // namespace

TEST_SUITE("sample_on_shell")
{
	TEST_CASE("sphere points satisfy both constraints")
	{
		PhaseSpace const ps(3, {"r"});
		auto const chi = parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps);
		auto const points = sample_on_shell(ps, chi, bound_radius(1.0));
		REQUIRE(points.size() == 16);
		for (auto const & z : points)
		{
			REQUIRE(z.size() == 7);
			CHECK(z(6) == 1.0);
			CHECK(std::abs(z.head(3).squaredNorm() - 1) <= 1e-10);
			CHECK(std::abs(z.head(3).dot(z.segment(3, 3))) <= 1e-10);
		}
	}

	TEST_CASE("empty real variety")
	{
		PhaseSpace const ps(2);
		SamplerConfig cfg;
		cfg.max_retries = 5;
		cfg.point_count = 1;
		CHECK_THROWS_AS(sample_on_shell(ps, parse_all({"x1^2+1", "p1"}, ps), cfg), NoOnShellPoint);
	}

	TEST_CASE("canonical pair")
	{
		PhaseSpace const ps(3);
		auto const points = sample_on_shell(ps, parse_all({"x1", "p1"}, ps), SamplerConfig{});
		for (auto const & z : points)
		{
			CHECK(std::abs(z(ps.x(0))) <= 1e-10);
			CHECK(std::abs(z(ps.p(0))) <= 1e-10);
		}
	}

	TEST_CASE("deterministic in its configuration")
	{
		PhaseSpace const ps(3, {"r"});
		auto const chi = parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps);
		auto const a = sample_on_shell(ps, chi, bound_radius(2.0, 77));
		auto const b = sample_on_shell(ps, chi, bound_radius(2.0, 77));
		auto const c = sample_on_shell(ps, chi, bound_radius(2.0, 78));
		REQUIRE(a.size() == b.size());
		for (std::size_t k = 0; k < a.size(); ++k)
			for (Eigen::Index i = 0; i < a[k].size(); ++i)
				REQUIRE(std::memcmp(&a[k](i), &b[k](i), sizeof(double)) == 0);
		CHECK_FALSE(a.front().isApprox(c.front()));
	}

	TEST_CASE("preconditions")
	{
		PhaseSpace const ps(3, {"r"});
		auto const chi = parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps);
		CHECK_THROWS_AS(sample_on_shell(ps, chi, SamplerConfig{}), PreconditionViolated);
		SamplerConfig bad = bound_radius(1);
		bad.tolerance = 0;
		CHECK_THROWS_AS(sample_on_shell(ps, chi, bad), PreconditionViolated);
		bad = bound_radius(1);
		bad.point_count = 0;
		CHECK_THROWS_AS(sample_on_shell(ps, chi, bad), PreconditionViolated);
	}
}

TEST_SUITE("numeric_rank")
{
	TEST_CASE("threshold is relative")
	{
		Eigen::MatrixXd m(2, 2);
		m << 1e6, 0, 0, 1e-1;
		CHECK(numeric_rank(m) == 2);
		m(1, 1) = 1e-3;
		CHECK(numeric_rank(m) == 1);
		CHECK(numeric_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
	}
}

TEST_SUITE("classify_constraints")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3, {"r"});
		Classification const pair = classify_constraints(ps, parse_all({"x1", "p1"}, ps), bound_radius(1));
		CHECK(pair.verdict == ConstraintClass::second_class);
		CHECK(pair.m == 1);
		CHECK(pair.dof_pairs == 2);
		CHECK(pair.on_shell_rank == 2);

		Classification const flat = classify_constraints(ps, parse_all({"x1", "x2"}, ps), bound_radius(1));
		CHECK(flat.verdict == ConstraintClass::degenerate);
		CHECK_FALSE(flat.symbolic_det_nonzero);

		Classification const sphere =
			classify_constraints(ps, parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps), bound_radius(1));
		CHECK(sphere.verdict == ConstraintClass::second_class);
		CHECK(sphere.m == 1);
		CHECK(sphere.dof_pairs == 2);
	}

	TEST_CASE("invertible off shell but singular on shell")
	{
		// {x1, x1*p1} = x1 vanishes wherever x1 does
		PhaseSpace const ps(2);
		Classification const c = classify_constraints(ps, parse_all({"x1", "x1*p1"}, ps), SamplerConfig{});
		CHECK(c.symbolic_det_nonzero);
		CHECK(c.on_shell_rank == 0);
		CHECK(c.verdict == ConstraintClass::degenerate);
	}

	TEST_CASE("counts")
	{
		PhaseSpace const ps(1);
		CHECK_THROWS_AS(classify_constraints(ps, parse_all({"x1"}, ps), SamplerConfig{}), OddConstraintCount);
		CHECK_THROWS_AS(classify_constraints(ps, parse_all({"x1", "p1", "x1+p1", "p1-x1"}, ps), SamplerConfig{}),
						TooManyConstraints);
		Classification const none = classify_constraints(ps, {}, SamplerConfig{});
		CHECK(none.verdict == ConstraintClass::second_class);
		CHECK(none.m == 0);
		CHECK(none.dof_pairs == 1);
	}

	TEST_CASE("agrees with context construction on the generated corpus")
	{
		for (auto const & sys : testing::corpus())
		{
			INFO(sys.label);
			Classification const c = classify_constraints(sys.ps, sys.constraints, sys.sampler(9, 4));
			bool context_ok = true;
			try
			{
				(void)sys.context();
			}
			catch (NotSecondClass const &)
			{
				context_ok = false;
			}
			REQUIRE(c.verdict == ConstraintClass::second_class);
			REQUIRE(context_ok);
			REQUIRE(c.on_shell_rank == 2 * sys.m());
			REQUIRE(c.dof_pairs == sys.ps.n() - sys.m());
		}
	}
}

TEST_SUITE("trace_identity")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3, {"r"});
		TraceIdentity const pair = trace_identity(make_context(ps, parse_all({"x1", "p1"}, ps)));
		CHECK(pair.value == RationalExpr(2));
		CHECK(pair.expected == 2);
		CHECK(pair.holds);

		TraceIdentity const sphere =
			trace_identity(make_context(ps, parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps)));
		CHECK(sphere.value.identical(RationalExpr(2)));
		CHECK(sphere.holds);

		TraceIdentity const full = trace_identity(make_context(ps, parse_all({"x1", "p1", "x2", "p2", "x3", "p3"}, ps)));
		CHECK(full.value.is_zero());
		CHECK(full.expected == 0);
		CHECK(full.holds);

		TraceIdentity const free = trace_identity(ps);
		CHECK(free.value == RationalExpr(3));
		CHECK(free.holds);
	}

	TEST_CASE("holds on the generated corpus")
	{
		for (auto const & sys : testing::corpus(77))
		{
			INFO(sys.label);
			TraceIdentity const t = trace_identity(sys.context());
			REQUIRE(t.holds);
			REQUIRE(t.expected == static_cast<long>(sys.ps.n() - sys.m()));
			REQUIRE(t.value == RationalExpr(static_cast<int>(t.expected)));
		}
	}
}

TEST_SUITE("reduction_check")
{
	PhaseSpace const ps3(3);

	TEST_CASE("examples")
	{
		DiracContext const first = make_context(ps3, parse_all({"x1", "p1"}, ps3));
		auto e = [](char const * t) { return parse_expression(t, ps3); };
		CHECK(reduction_check(first, {0}, e("x2*p3"), e("p2")));
		CHECK(reduction_check(first, {0}, e("x2^2"), e("x3")));
		DiracContext const two = make_context(ps3, parse_all({"x1", "p1", "x2", "p2"}, ps3));
		CHECK(reduction_check(two, {0, 1}, e("x3"), e("p3")));
	}

	TEST_CASE("preconditions")
	{
		DiracContext const first = make_context(ps3, parse_all({"x1", "p1"}, ps3));
		auto e = [](char const * t) { return parse_expression(t, ps3); };
		CHECK_THROWS_AS(reduction_check(first, {0}, e("x1*x2"), e("p2")), PreconditionViolated);
		CHECK_THROWS_AS(reduction_check(first, {1}, e("x3"), e("p3")), PreconditionViolated);
		DiracContext const shifted = make_context(ps3, parse_all({"x1", "p1 + x1"}, ps3));
		CHECK_THROWS_AS(reduction_check(shifted, {0}, e("x2"), e("p2")), PreconditionViolated);
	}

	TEST_CASE("random functions over the remaining pairs")
	{
		Rng rng(13);
		for (std::size_t n = 2; n <= 4; ++n)
		{
			for (std::size_t m = 1; m < n; ++m)
			{
				testing::TestSystem const sys = testing::pair_elimination(rng, n, m, false);
				DiracContext const ctx = sys.context();
				std::vector<std::size_t> keep;
				for (std::size_t i = 0; i < n; ++i)
					if (!sys.eliminated.contains(i))
					{
						keep.push_back(sys.ps.x(i));
						keep.push_back(sys.ps.p(i));
					}
				for (int trial = 0; trial < 100; ++trial)
				{
					auto const f = RationalExpr(testing::random_polynomial(rng, keep.size(), 3)).reindexed(keep);
					auto const g = RationalExpr(testing::random_polynomial(rng, keep.size(), 3)).reindexed(keep);
					REQUIRE(reduction_check(ctx, sys.eliminated, f, g));
				}
			}
		}
	}
}

TEST_SUITE("dof_count")
{
	TEST_CASE("examples")
	{
		CHECK(dof_count(3, 1) == 2);
		for (long n = 1; n <= 6; ++n)
			CHECK(dof_count(n, n) == 0);
		CHECK(dof_count(5, 0) == 5);
		CHECK_THROWS_AS(dof_count(2, 3), InvalidCounts);
		CHECK_THROWS_AS(dof_count(2, -1), InvalidCounts);
	}
}
