#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirac/bracket.hpp"
#include "dirac/constraint_analysis.hpp"

namespace dirac
{
/// Named functions chosen to be quantized, optionally with a Hamiltonian.
class PrimarySet
{
public:
	/// Throws PreconditionViolated on an empty set, mismatched sizes or duplicate names.
	PrimarySet(std::vector<std::string> names, std::vector<RationalExpr> exprs,
			   std::optional<RationalExpr> hamiltonian = std::nullopt);

	std::size_t size() const noexcept { return names_.size(); }
	std::vector<std::string> const & names() const noexcept { return names_; }
	std::vector<RationalExpr> const & exprs() const noexcept { return exprs_; }
	std::optional<RationalExpr> const & hamiltonian() const noexcept { return hamiltonian_; }

private:
	std::vector<std::string> names_;
	std::vector<RationalExpr> exprs_;
	std::optional<RationalExpr> hamiltonian_;
};

/// Result of writing a polynomial as a linear combination of basis polynomials.
struct LinearDecomposition
{
	/// One coefficient per basis element; meaningful when closed().
	std::vector<Rational> coefficients;
	/// Coefficient of the constant function 1 (zero unless allowed).
	Rational constant;
	/// Part of the target outside the span; zero iff the decomposition exists.
	Polynomial residual;

	bool closed() const noexcept { return residual.is_zero(); }
};

/**
 * Exact rational coefficients with target = sum_b coefficients[b] * basis[b]
 * (+ constant when allowed), by row reduction of the coefficient vectors.
 * Linearly dependent basis elements get coefficient zero when they are not
 * needed, lowest index first. Throws NonPolynomialInput for non-polynomial input.
 */
LinearDecomposition decompose_linear(RationalExpr const & target, std::span<RationalExpr const> basis,
									 bool allow_constant);

struct Residual
{
	std::string left;
	std::string right;
	RationalExpr remainder;
};

/**
 * Bracket algebra of a primary set: {g_a, g_b} = c_abc g_c + z_ab and, with a
 * Hamiltonian, {g_a, H} = h_ab g_b + h_constant_a.
 */
class AlgebraReport
{
public:
	AlgebraReport(BracketMode mode, std::vector<std::string> names, bool with_hamiltonian);

	BracketMode mode() const noexcept { return mode_; }
	std::size_t size() const noexcept { return names_.size(); }
	std::vector<std::string> const & names() const noexcept { return names_; }
	bool closed() const noexcept { return residuals_.empty(); }
	bool has_hamiltonian() const noexcept { return !h_.empty(); }

	Rational const & c(std::size_t a, std::size_t b, std::size_t k) const { return c_[(a * size() + b) * size() + k]; }
	Rational const & z(std::size_t a, std::size_t b) const { return z_[a * size() + b]; }
	Rational const & h(std::size_t a, std::size_t b) const { return h_.at(a * size() + b); }
	/// Constant term of {g_a, H}; not part of h_ab proper.
	Rational const & h_constant(std::size_t a) const { return h_constant_.at(a); }
	std::vector<Residual> const & residuals() const noexcept { return residuals_; }

	void set_pair(std::size_t a, std::size_t b, LinearDecomposition const & d);
	void set_hamiltonian_row(std::size_t a, LinearDecomposition const & d);
	void add_residual(Residual r) { residuals_.push_back(std::move(r)); }

private:
	BracketMode mode_;
	std::vector<std::string> names_;
	std::vector<Rational> c_;
	std::vector<Rational> z_;
	std::vector<Rational> h_;
	std::vector<Rational> h_constant_;
	std::vector<Residual> residuals_;
};

/**
 * Decomposes every bracket of the primary set. When `on_shell_rules` is
 * non-empty each bracket is first reduced modulo those polynomials.
 * Throws NonPolynomialInput when a (reduced) bracket is not polynomial.
 */
AlgebraReport closure_analysis(PrimarySet const & primaries, PhaseSpace const & ps,
							   std::span<Polynomial const> on_shell_rules = {});
AlgebraReport closure_analysis(PrimarySet const & primaries, DiracContext const & ctx,
							   std::span<Polynomial const> on_shell_rules = {});

enum class VerdictKind
{
	infinite_dimensional,
	no_obstruction_detected,
	trivial_system
};

std::string_view to_string(VerdictKind kind) noexcept;

struct Witness
{
	enum class Kind
	{
		central_charge,
		trace_identity
	};
	Kind kind = Kind::central_charge;
	/// Pair names for a central charge; empty for the trace identity.
	std::string left;
	std::string right;
	/// Central charge z_ab, or the value of sum_i {x_i, p_i}.
	RationalExpr value;
};

struct Verdict
{
	VerdictKind kind = VerdictKind::no_obstruction_detected;
	std::optional<Witness> witness;
	std::string explanation;
};

/// Trace argument on a closed report. Throws ReportNotClosed.
Verdict finite_dim_obstruction(AlgebraReport const & report);

/**
 * Classifies the constraints and applies the trace identity: a second-class
 * system with m < n has the nonzero central bracket n - m. Throws NotSecondClass
 * for a degenerate set.
 */
Verdict lemma_verdict(PhaseSpace const & ps, std::span<RationalExpr const> constraints, SamplerConfig const & cfg);
/// Same, reusing a classification already computed for these constraints.
Verdict lemma_verdict(PhaseSpace const & ps, std::span<RationalExpr const> constraints, Classification const & cls);

}  // namespace dirac
