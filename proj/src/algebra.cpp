#include "dirac/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dirac/errors.hpp"

namespace dirac
{
PrimarySet::PrimarySet(std::vector<std::string> names, std::vector<RationalExpr> exprs,
					   std::optional<RationalExpr> hamiltonian)
	: names_(std::move(names)), exprs_(std::move(exprs)), hamiltonian_(std::move(hamiltonian))
{
	if (names_.empty())
		throw PreconditionViolated("primary set is empty");
	if (names_.size() != exprs_.size())
		throw PreconditionViolated("primary set names and expressions differ in length");
	std::set<std::string> const unique(names_.begin(), names_.end());
	if (unique.size() != names_.size())
		throw PreconditionViolated("primary set has duplicate names");
}

// ---------------------------------------------------------------------------
// decompose_linear

namespace
{
using RationalRow = std::vector<Rational>;

struct MonomialIndex
{
	std::vector<Monomial> monomials;  // decreasing grlex

	void add(Polynomial const & p)
	{
		for (auto const & t : p.terms())
			monomials.push_back(t.monomial);
	}

	void finish()
	{
		std::sort(monomials.begin(), monomials.end(),
				  [](Monomial const & a, Monomial const & b) { return grlex_compare(a, b) > 0; });
		monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
	}

	std::size_t column(Monomial const & m) const
	{
		auto it = std::lower_bound(monomials.begin(), monomials.end(), m, [](Monomial const & a, Monomial const & key) {
			return grlex_compare(a, key) > 0;
		});
		return static_cast<std::size_t>(it - monomials.begin());
	}

	RationalRow dense(Polynomial const & p) const
	{
		RationalRow row(monomials.size());
		for (auto const & t : p.terms())
			row[column(t.monomial)] = t.coefficient;
		return row;
	}
};

Polynomial const & polynomial_part(RationalExpr const & e)
{
	if (!e.is_polynomial())
		throw NonPolynomialInput("expression is not polynomial; supply on-shell rules that remove its denominator");
	// A constant denominator is always normalized to 1.
	return e.num();
}

}  // namespace

LinearDecomposition decompose_linear(RationalExpr const & target, std::span<RationalExpr const> basis,
									 bool allow_constant)
{
	Polynomial const & t = polynomial_part(target);
	std::vector<Polynomial> rows_poly;
	rows_poly.reserve(basis.size() + 1);
	for (auto const & b : basis)
		rows_poly.push_back(polynomial_part(b));
	if (allow_constant)
		rows_poly.emplace_back(1);

	MonomialIndex index;
	index.add(t);
	for (auto const & p : rows_poly)
		index.add(p);
	index.finish();

	std::size_t const rows = rows_poly.size();
	std::size_t const cols = index.monomials.size();
	std::vector<RationalRow> mat;
	std::vector<RationalRow> track;
	for (std::size_t r = 0; r < rows; ++r)
	{
		mat.push_back(index.dense(rows_poly[r]));
		track.emplace_back(rows);
		track.back()[r] = 1;
	}

	// Row echelon form; pivot rows are the lowest-index candidates.
	std::vector<bool> used(rows, false);
	std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
	for (std::size_t col = 0; col < cols; ++col)
	{
		std::size_t pivot = rows;
		for (std::size_t r = 0; r < rows; ++r)
			if (!used[r] && sgn(mat[r][col]) != 0)
			{
				pivot = r;
				break;
			}
		if (pivot == rows)
			continue;
		used[pivot] = true;
		pivots.emplace_back(col, pivot);
		Rational const inv = 1 / mat[pivot][col];
		for (auto & v : mat[pivot])
			v *= inv;
		for (auto & v : track[pivot])
			v *= inv;
		for (std::size_t r = 0; r < rows; ++r)
		{
			if (used[r] || sgn(mat[r][col]) == 0)
				continue;
			Rational const factor = mat[r][col];
			for (std::size_t j = col; j < cols; ++j)
				mat[r][j] -= factor * mat[pivot][j];
			for (std::size_t j = 0; j < rows; ++j)
				track[r][j] -= factor * track[pivot][j];
		}
	}

	RationalRow remaining = index.dense(t);
	RationalRow lambda(rows);
	for (auto const & [col, row] : pivots)
	{
		if (sgn(remaining[col]) == 0)
			continue;
		Rational const factor = remaining[col];
		for (std::size_t j = col; j < cols; ++j)
			remaining[j] -= factor * mat[row][j];
		for (std::size_t j = 0; j < rows; ++j)
			lambda[j] += factor * track[row][j];
	}

	LinearDecomposition out;
	std::vector<Term> residual;
	for (std::size_t j = 0; j < cols; ++j)
		if (sgn(remaining[j]) != 0)
			residual.push_back({index.monomials[j], remaining[j]});
	out.residual = Polynomial::from_terms(std::move(residual));
	if (out.closed())
	{
		out.coefficients.assign(lambda.begin(), lambda.begin() + static_cast<std::ptrdiff_t>(basis.size()));
		if (allow_constant)
			out.constant = lambda.back();
	}
	return out;
}

// ---------------------------------------------------------------------------
// AlgebraReport / closure_analysis

AlgebraReport::AlgebraReport(BracketMode mode, std::vector<std::string> names, bool with_hamiltonian)
	: mode_(mode), names_(std::move(names))
{
	std::size_t const k = names_.size();
	c_.assign(k * k * k, Rational(0));
	z_.assign(k * k, Rational(0));
	if (with_hamiltonian)
	{
		h_.assign(k * k, Rational(0));
		h_constant_.assign(k, Rational(0));
	}
}

void AlgebraReport::set_pair(std::size_t a, std::size_t b, LinearDecomposition const & d)
{
	std::size_t const k = size();
	for (std::size_t j = 0; j < k; ++j)
	{
		c_[(a * k + b) * k + j] = d.coefficients[j];
		c_[(b * k + a) * k + j] = -d.coefficients[j];
	}
	z_[a * k + b] = d.constant;
	z_[b * k + a] = -d.constant;
}

void AlgebraReport::set_hamiltonian_row(std::size_t a, LinearDecomposition const & d)
{
	std::size_t const k = size();
	for (std::size_t j = 0; j < k; ++j)
		h_.at(a * k + j) = d.coefficients[j];
	h_constant_.at(a) = d.constant;
}

namespace
{
template <typename Bracket>
AlgebraReport analyze(PrimarySet const & primaries, BracketMode mode, std::span<Polynomial const> rules,
					  Bracket && bracket)
{
	auto const & names = primaries.names();
	auto const & exprs = primaries.exprs();
	AlgebraReport report(mode, names, primaries.hamiltonian().has_value());

	auto prepare = [&](RationalExpr e, std::string const & left, std::string const & right) {
		if (!rules.empty())
			e = reduce_mod_constraints(e, rules);
		if (!e.is_polynomial())
			throw NonPolynomialInput("bracket {" + left + ", " + right +
									 "} is not polynomial; add on-shell rules that clear its denominator");
		return e;
	};

	for (std::size_t a = 0; a < exprs.size(); ++a)
	{
		for (std::size_t b = a + 1; b < exprs.size(); ++b)
		{
			RationalExpr const entry = prepare(bracket(exprs[a], exprs[b]), names[a], names[b]);
			LinearDecomposition const d = decompose_linear(entry, exprs, true);
			if (d.closed())
				report.set_pair(a, b, d);
			else
				report.add_residual({names[a], names[b], RationalExpr(d.residual)});
		}
	}

	if (auto const & hamiltonian = primaries.hamiltonian())
	{
		for (std::size_t a = 0; a < exprs.size(); ++a)
		{
			RationalExpr const entry = prepare(bracket(exprs[a], *hamiltonian), names[a], "H");
			LinearDecomposition const d = decompose_linear(entry, exprs, true);
			if (d.closed())
				report.set_hamiltonian_row(a, d);
			else
				report.add_residual({names[a], "H", RationalExpr(d.residual)});
		}
	}
	return report;
}
}  // namespace

AlgebraReport closure_analysis(PrimarySet const & primaries, PhaseSpace const & ps,
							   std::span<Polynomial const> on_shell_rules)
{
	return analyze(primaries, BracketMode::poisson, on_shell_rules,
				   [&](RationalExpr const & f, RationalExpr const & g) { return poisson_bracket(f, g, ps); });
}

AlgebraReport closure_analysis(PrimarySet const & primaries, DiracContext const & ctx,
							   std::span<Polynomial const> on_shell_rules)
{
	return analyze(primaries, BracketMode::dirac, on_shell_rules,
				   [&](RationalExpr const & f, RationalExpr const & g) { return dirac_bracket(f, g, ctx); });
}

// ---------------------------------------------------------------------------
// Verdicts

std::string_view to_string(VerdictKind kind) noexcept
{
	switch (kind)
	{
	case VerdictKind::infinite_dimensional:
		return "infinite_dimensional";
	case VerdictKind::no_obstruction_detected:
		return "no_obstruction_detected";
	case VerdictKind::trivial_system:
		return "trivial_system";
	}
	return "unknown";
}

Verdict finite_dim_obstruction(AlgebraReport const & report)
{
	if (!report.closed())
		throw ReportNotClosed();

	Verdict verdict;
	auto const & names = report.names();
	std::string const bracket_name = report.mode() == BracketMode::dirac ? "Dirac" : "Poisson";

	// Prefer a purely central bracket as the witness: its trace argument needs nothing else.
	std::optional<std::pair<std::size_t, std::size_t>> chosen;
	bool pure = false;
	for (std::size_t a = 0; a < report.size() && !pure; ++a)
	{
		for (std::size_t b = a + 1; b < report.size() && !pure; ++b)
		{
			if (sgn(report.z(a, b)) == 0)
				continue;
			bool no_generators = true;
			for (std::size_t k = 0; k < report.size(); ++k)
				no_generators = no_generators && sgn(report.c(a, b, k)) == 0;
			if (!chosen || no_generators)
				chosen = std::pair{a, b};
			pure = no_generators;
		}
	}

	if (chosen)
	{
		auto const [a, b] = *chosen;
		std::string const z = report.z(a, b).get_str();
		verdict.kind = VerdictKind::infinite_dimensional;
		verdict.witness = Witness{Witness::Kind::central_charge, names[a], names[b], RationalExpr(report.z(a, b))};
		verdict.explanation = "The " + bracket_name + " bracket {" + names[a] + ", " + names[b] +
							  "} carries the central charge " + z + ". Quantized with hbar = 1 the constant maps to " +
							  z + " times the identity. On a Hilbert space of finite dimension D the commutator [" +
							  names[a] + ", " + names[b] + "] has zero trace while " + z + "*I has trace " + z + "*D";
		verdict.explanation += pure ? ", so 0 = " + z + "*D and no finite-dimensional representation exists."
									: "; the generator terms of the same bracket must cancel it, which the central "
									  "charge obstructs unless it can be absorbed by shifting a generator.";
	}

	if (!verdict.witness)
	{
		verdict.kind = VerdictKind::no_obstruction_detected;
		verdict.explanation =
			"No central charge appears among the " + bracket_name +
			" brackets of the primary quantities. A vanishing central charge is a necessary condition for a "
			"finite-dimensional representation, not a sufficient one, so nothing is concluded here; so(3), for "
			"one, is represented on C^2 by Pauli matrices.";
	}

	if (report.has_hamiltonian())
	{
		for (std::size_t a = 0; a < report.size(); ++a)
		{
			if (sgn(report.h_constant(a)) != 0)
				verdict.explanation += " Note: {" + names[a] + ", H} has the constant term " +
									   report.h_constant(a).get_str() +
									   ", recorded in the Hamiltonian constant column and not used in the verdict.";
		}
	}
	return verdict;
}

Verdict lemma_verdict(PhaseSpace const & ps, std::span<RationalExpr const> constraints, SamplerConfig const & cfg)
{
	return lemma_verdict(ps, constraints, classify_constraints(ps, constraints, cfg));
}

Verdict lemma_verdict(PhaseSpace const & ps, std::span<RationalExpr const> constraints, Classification const & cls)
{
	if (cls.verdict != ConstraintClass::second_class)
		throw NotSecondClass("constraints are degenerate (symbolic determinant " +
							 std::string(cls.symbolic_det_nonzero ? "nonzero" : "zero") + ", on-shell rank " +
							 std::to_string(cls.on_shell_rank) + " of " + std::to_string(constraints.size()) + ")");

	Verdict verdict;
	if (cls.dof_pairs == 0)
	{
		verdict.kind = VerdictKind::trivial_system;
		verdict.witness = Witness{Witness::Kind::trace_identity, {}, {}, RationalExpr(0)};
		verdict.explanation = "m = n: all canonical pairs are constrained and the reduced phase space is a single "
							  "point; sum_i {x_i, p_i}_D = 0 and the trace argument has nothing to act on.";
		return verdict;
	}

	TraceIdentity const trace =
		constraints.empty()
			? trace_identity(ps)
			: trace_identity(make_context(ps, std::vector<RationalExpr>(constraints.begin(), constraints.end())));
	if (!trace.holds || trace.expected == 0)
		throw std::logic_error("trace identity failed for a second-class system");

	std::string const d = std::to_string(trace.expected);
	verdict.kind = VerdictKind::infinite_dimensional;
	verdict.witness = Witness{Witness::Kind::trace_identity, {}, {}, trace.value};
	verdict.explanation =
		"Second-class system with n = " + std::to_string(ps.n()) + ", m = " + std::to_string(cls.m) +
		": sum_i {x_i, p_i}_D = n - m = " + d +
		", a nonzero constant. Quantizing x_i and p_i as primary quantities (hbar = 1) gives sum_i [x_i, p_i] = i*" + d +
		"*I. On a Hilbert space of finite dimension D the trace of the left side is 0 and of the right side i*" + d +
		"*D, so 0 = " + d + "*D: the Hilbert space is infinite dimensional.";
	return verdict;
}

}  // namespace dirac
