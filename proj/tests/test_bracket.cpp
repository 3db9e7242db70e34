#include <doctest.h>

#include <cmath>

#include "dirac/constraint_analysis.hpp"
#include "dirac/expr_matrix.hpp"
#include "dirac/expression_io.hpp"
#include "support/generators.hpp"
#include "support/numeric_oracle.hpp"

using namespace dirac;
using dirac::testing::Rng;

namespace
{
RationalExpr parse(std::string_view text, PhaseSpace const & ps)
{
	return parse_expression(text, ps);
}

std::vector<RationalExpr> parse_all(std::vector<std::string> const & texts, PhaseSpace const & ps)
{
	std::vector<RationalExpr> out;
	for (auto const & t : texts)
		out.push_back(parse(t, ps));
	return out;
}

ExprMatrix matrix(std::initializer_list<std::initializer_list<RationalExpr>> rows)
{
	ExprMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
	Eigen::Index i = 0;
	for (auto const & row : rows)
	{
		Eigen::Index j = 0;
		for (auto const & v : row)
			out(i, j++) = v;
		++i;
	}
	return out;
}

bool exactly_equal(ExprMatrix const & a, ExprMatrix const & b)
{
	if (a.rows() != b.rows() || a.cols() != b.cols())
		return false;
	for (Eigen::Index i = 0; i < a.rows(); ++i)
		for (Eigen::Index j = 0; j < a.cols(); ++j)
			if (!(a(i, j) == b(i, j)))
				return false;
	return true;
}

RationalExpr random_function(Rng & rng, PhaseSpace const & ps, unsigned degree)
{
	return RationalExpr(testing::random_polynomial(rng, ps.variable_count(), degree));
}

// Contexts the property tests run against: one with a field-dependent Delta.
std::vector<testing::TestSystem> property_systems()
{
	Rng rng(99);
	return {testing::sphere(3), testing::linear_mix(rng, 3, 2), testing::pair_elimination(rng, 4, 1)};
}
}  // namespace

TEST_SUITE("poisson_bracket")
{
	TEST_CASE("canonical pairs")
	{
		PhaseSpace const ps(3);
		for (std::size_t i = 0; i < 3; ++i)
			for (std::size_t j = 0; j < 3; ++j)
			{
				RationalExpr const b = poisson_bracket(RationalExpr::variable(ps.x(i)), RationalExpr::variable(ps.p(j)), ps);
				CHECK(b == RationalExpr(i == j ? 1 : 0));
			}
		CHECK(poisson_bracket(parse("x1", ps), parse("x2", ps), ps).is_zero());
		CHECK(poisson_bracket(parse("p1", ps), parse("p3", ps), ps).is_zero());
	}

	TEST_CASE("parameters are constants")
	{
		PhaseSpace const ps(1, {"r"});
		CHECK(poisson_bracket(parse("r*x1", ps), parse("p1", ps), ps) == parse("r", ps));
		CHECK(poisson_bracket(parse("r", ps), parse("x1*p1", ps), ps).is_zero());
	}

	TEST_CASE("sphere constraint pair against finite differences")
	{
		PhaseSpace const ps(3);
		RationalExpr const b = poisson_bracket(parse("x1^2+x2^2+x3^2", ps), parse("p1*x1+p2*x2+p3*x3", ps), ps);
		CHECK(b == parse("2*x1^2+2*x2^2+2*x3^2", ps));

		testing::NumericFn const f = [](Eigen::VectorXd const & z) { return z.head(3).squaredNorm(); };
		testing::NumericFn const g = [](Eigen::VectorXd const & z) { return z.head(3).dot(z.segment(3, 3)); };
		Rng rng(1);
		std::normal_distribution<double> normal;
		for (int k = 0; k < 10; ++k)
		{
			Eigen::VectorXd z(6);
			for (auto & v : z)
				v = normal(rng);
			CHECK(b.evaluate(z) == doctest::Approx(testing::fd_poisson(f, g, z, 3)).epsilon(1e-6));
		}
	}

	TEST_CASE("axioms on random polynomials")
	{
		PhaseSpace const ps(3, {"r"});
		Rng rng(7);
		for (int trial = 0; trial < 200; ++trial)
		{
			auto const f = random_function(rng, ps, 3), g = random_function(rng, ps, 3);
			REQUIRE(is_zero(poisson_bracket(f, g, ps) + poisson_bracket(g, f, ps)));
		}
		for (int trial = 0; trial < 100; ++trial)
		{
			auto const f = random_function(rng, ps, 3), g = random_function(rng, ps, 3), h = random_function(rng, ps, 3);
			REQUIRE(poisson_bracket(f, g * h, ps) == poisson_bracket(f, g, ps) * h + g * poisson_bracket(f, h, ps));
		}
		for (int trial = 0; trial < 100; ++trial)
		{
			auto const f = random_function(rng, ps, 3), g = random_function(rng, ps, 3), h = random_function(rng, ps, 3);
			RationalExpr const cyclic = poisson_bracket(f, poisson_bracket(g, h, ps), ps) +
										poisson_bracket(g, poisson_bracket(h, f, ps), ps) +
										poisson_bracket(h, poisson_bracket(f, g, ps), ps);
			REQUIRE(is_zero(cyclic));
		}
	}
}

TEST_SUITE("delta_matrix")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3, {"r"});
		CHECK(exactly_equal(delta_matrix(parse_all({"x1", "p1"}, ps), ps), matrix({{0, 1}, {-1, 0}})));
		RationalExpr const c = parse("2*(x1^2+x2^2+x3^2)", ps);
		CHECK(exactly_equal(delta_matrix(parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps), ps),
							matrix({{0, c}, {-c, 0}})));
		CHECK(is_exact_zero(delta_matrix(parse_all({"x1", "x2"}, ps), ps)));
	}

	TEST_CASE("odd or empty sets")
	{
		PhaseSpace const ps(2);
		CHECK_THROWS_AS(delta_matrix(parse_all({"x1"}, ps), ps), OddConstraintCount);
		CHECK_THROWS_AS(delta_matrix(parse_all({}, ps), ps), OddConstraintCount);
		CHECK_THROWS_AS(delta_matrix(parse_all({"x1", "p1", "x2"}, ps), ps), OddConstraintCount);
	}
}

TEST_SUITE("invert_matrix")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3);
		RationalExpr const c = parse("2*(x1^2+x2^2+x3^2)", ps);
		ExprMatrix const inv = invert_matrix(matrix({{0, c}, {-c, 0}}));
		CHECK(exactly_equal(inv, matrix({{0, -1 / c}, {1 / c, 0}})));

		ExprMatrix const id = ExprMatrix::Identity(4, 4);
		CHECK(is_exact_identity(invert_matrix(id)));
		CHECK_THROWS_AS(invert_matrix(matrix({{0, 0}, {0, 0}})), SingularMatrix);
		CHECK_THROWS_AS(invert_matrix(ExprMatrix(2, 3)), PreconditionViolated);
	}

	TEST_CASE("pivoting past a zero leading entry")
	{
		PhaseSpace const ps(2);
		ExprMatrix const m = matrix({{0, parse("x1", ps), 1}, {parse("p1", ps), 0, 0}, {1, 1, parse("x2", ps)}});
		ExprMatrix const inv = invert_matrix(m);
		CHECK(is_exact_identity(m * inv));
		CHECK(is_exact_identity(inv * m));
	}

	TEST_CASE("random integer matrices")
	{
		Rng rng(4);
		for (int trial = 0; trial < 30; ++trial)
		{
			Eigen::Index const size = testing::uniform(rng, 1, 5);
			ExprMatrix m(size, size);
			for (Eigen::Index i = 0; i < size; ++i)
				for (Eigen::Index j = 0; j < size; ++j)
					m(i, j) = RationalExpr(static_cast<int>(testing::uniform(rng, -3, 3)));
			Eigen::MatrixXd numeric = evaluate(m, Eigen::VectorXd());
			if (std::abs(numeric.determinant()) < 1e-9)
			{
				CHECK_THROWS_AS(invert_matrix(m), SingularMatrix);
				continue;
			}
			CHECK(is_exact_identity(m * invert_matrix(m)));
		}
	}
}

TEST_SUITE("make_context")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3, {"r"});
		DiracContext const ctx = make_context(ps, parse_all({"x1", "p1"}, ps));
		CHECK(ctx.m() == 1);
		CHECK_THROWS_AS(make_context(ps, parse_all({"x1", "x2"}, ps)), NotSecondClass);
		DiracContext const sphere = make_context(ps, parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps));
		CHECK(sphere.m() == 1);
		RationalExpr const det = sphere.delta()(0, 0) * sphere.delta()(1, 1) - sphere.delta()(0, 1) * sphere.delta()(1, 0);
		CHECK(det == parse("4*(x1^2+x2^2+x3^2)^2", ps));
	}

	TEST_CASE("counts")
	{
		PhaseSpace const ps(1);
		CHECK_THROWS_AS(make_context(ps, parse_all({"x1"}, ps)), OddConstraintCount);
		CHECK_THROWS_AS(make_context(ps, {}), OddConstraintCount);
		CHECK_THROWS_AS(make_context(ps, parse_all({"x1", "p1", "x1+p1", "x1-p1"}, ps)), TooManyConstraints);
	}

	TEST_CASE("delta is skew and delta_inv is its inverse for every generated system")
	{
		for (auto const & sys : testing::corpus())
		{
			INFO(sys.label);
			DiracContext const ctx = sys.context();
			REQUIRE(is_exact_skew_symmetric(ctx.delta()));
			REQUIRE(is_exact_identity(ctx.delta() * ctx.delta_inv()));
			REQUIRE(is_exact_identity(ctx.delta_inv() * ctx.delta()));
		}
	}
}

TEST_SUITE("dirac_bracket")
{
	TEST_CASE("examples")
	{
		PhaseSpace const ps(3, {"r"});
		DiracContext const ctx = make_context(ps, parse_all({"x1", "p1"}, ps));
		CHECK(dirac_bracket(parse("x2", ps), parse("p2", ps), ctx) == RationalExpr(1));
		CHECK(dirac_bracket(parse("x1", ps), parse("p1", ps), ctx).is_zero());

		DiracContext const sphere = make_context(ps, parse_all({"x1^2+x2^2+x3^2-r^2", "p1*x1+p2*x2+p3*x3"}, ps));
		RationalExpr sum;
		for (std::size_t i = 0; i < 3; ++i)
			sum += dirac_bracket(RationalExpr::variable(ps.x(i)), RationalExpr::variable(ps.p(i)), sphere);
		CHECK(sum.identical(RationalExpr(2)));
		CHECK(dirac_bracket(parse("x1", ps), parse("p1", ps), sphere) == parse("1 - x1^2/(x1^2+x2^2+x3^2)", ps));
		CHECK(dirac_bracket(parse("x1", ps), parse("x2", ps), sphere).is_zero());
	}

	TEST_CASE("constraints are Casimirs")
	{
		for (auto const & sys : property_systems())
		{
			INFO(sys.label);
			DiracContext const ctx = sys.context();
			Rng rng(31);
			for (int trial = 0; trial < 100; ++trial)
			{
				RationalExpr const f = random_function(rng, sys.ps, 3);
				for (auto const & chi : ctx.constraints())
				{
					REQUIRE(is_zero(dirac_bracket(f, chi, ctx)));
					REQUIRE(is_zero(dirac_bracket(chi, f, ctx)));
				}
			}
		}
	}

	TEST_CASE("skew symmetry and Leibniz")
	{
		for (auto const & sys : property_systems())
		{
			INFO(sys.label);
			DiracContext const ctx = sys.context();
			Rng rng(37);
			for (int trial = 0; trial < 200; ++trial)
			{
				auto const f = random_function(rng, sys.ps, 3), g = random_function(rng, sys.ps, 3);
				REQUIRE(is_zero(dirac_bracket(f, g, ctx) + dirac_bracket(g, f, ctx)));
			}
			for (int trial = 0; trial < 100; ++trial)
			{
				auto const f = random_function(rng, sys.ps, 3), g = random_function(rng, sys.ps, 3),
						   h = random_function(rng, sys.ps, 3);
				REQUIRE(dirac_bracket(f, g * h, ctx) == dirac_bracket(f, g, ctx) * h + g * dirac_bracket(f, h, ctx));
			}
		}
	}

	TEST_CASE("Jacobi at on-shell points")
	{
		for (auto const & sys : property_systems())
		{
			INFO(sys.label);
			DiracContext const ctx = sys.context();
			auto const points = sample_on_shell(ctx, sys.sampler(5, 4));
			Rng rng(41);
			for (int trial = 0; trial < 30; ++trial)
			{
				auto const f = random_function(rng, sys.ps, 2), g = random_function(rng, sys.ps, 2),
						   h = random_function(rng, sys.ps, 2);
				RationalExpr const cyclic = dirac_bracket(f, dirac_bracket(g, h, ctx), ctx) +
											dirac_bracket(g, dirac_bracket(h, f, ctx), ctx) +
											dirac_bracket(h, dirac_bracket(f, g, ctx), ctx);
				for (auto const & z : points)
					REQUIRE(std::abs(cyclic.evaluate(z)) <= 1e-8);
			}
		}
	}

	TEST_CASE("without constraints the two modes agree on the reduced table")
	{
		// a context over pairs the items never touch leaves their brackets unchanged
		PhaseSpace const ps(3);
		DiracContext const ctx = make_context(ps, parse_all({"x3", "p3"}, ps));
		Rng rng(43);
		for (int trial = 0; trial < 50; ++trial)
		{
			PhaseSpace const small(2);
			auto const f = RationalExpr(testing::random_polynomial(rng, 4, 3));
			auto const g = RationalExpr(testing::random_polynomial(rng, 4, 3));
			// symbols 0..1 are x1, x2 and 2..3 are p1, p2 in the small space; map into ps
			std::vector<std::size_t> const map{ps.x(0), ps.x(1), ps.p(0), ps.p(1)};
			REQUIRE(dirac_bracket(f.reindexed(map), g.reindexed(map), ctx) ==
					poisson_bracket(f, g, small).reindexed(map));
		}
	}
}

TEST_SUITE("bracket_table")
{
	TEST_CASE("canonical block table")
	{
		for (std::size_t n = 1; n <= 4; ++n)
		{
			PhaseSpace const ps(n);
			std::vector<RationalExpr> items;
			for (std::size_t i = 0; i < 2 * n; ++i)
				items.push_back(RationalExpr::variable(i));
			ExprMatrix const table = bracket_table(items, ps);
			ExprMatrix expected = ExprMatrix::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
			for (std::size_t i = 0; i < n; ++i)
			{
				expected(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n + i)) = 1;
				expected(static_cast<Eigen::Index>(n + i), static_cast<Eigen::Index>(i)) = -1;
			}
			CHECK(exactly_equal(table, expected));
		}
	}

	TEST_CASE("small tables")
	{
		PhaseSpace const ps(2);
		std::vector<RationalExpr> const one{parse("x1*p2", ps)};
		CHECK(exactly_equal(bracket_table(one, ps), matrix({{0}})));
		DiracContext const ctx = make_context(ps, parse_all({"x1", "p1"}, ps));
		CHECK(exactly_equal(bracket_table(parse_all({"x2", "p2"}, ps), ctx), matrix({{0, 1}, {-1, 0}})));
	}
}
