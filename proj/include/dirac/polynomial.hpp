#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Core>

namespace dirac
{
/// Exact rational coefficient; always stored in lowest terms with a positive denominator.
using Rational = mpq_class;

double to_double(Rational const & q);

/**
 * Power product over the symbols of a phase space, indexed by symbol position
 * (coordinates, then momenta, then parameters).
 *
 * Trailing zero exponents are never stored, so a monomial does not need to know
 * how many symbols exist. Two monomials with equal exponents compare equal
 * regardless of where they were built.
 */
class Monomial
{
public:
	Monomial() = default;
	explicit Monomial(std::vector<std::uint32_t> exponents);

	static Monomial variable(std::size_t index, std::uint32_t power = 1);

	std::uint32_t exponent(std::size_t index) const noexcept
	{
		return index < exps_.size() ? exps_[index] : 0;
	}
	/// Number of stored exponent slots (one past the highest symbol present).
	std::size_t width() const noexcept { return exps_.size(); }
	std::uint64_t degree() const noexcept { return degree_; }
	bool is_one() const noexcept { return exps_.empty(); }

	bool divides(Monomial const & other) const noexcept;
	/// this / other; requires other.divides(*this).
	Monomial quotient(Monomial const & other) const;
	/// Lowers the exponent of `index` by one; requires it to be positive.
	Monomial lowered(std::size_t index) const;

	friend Monomial operator*(Monomial const & a, Monomial const & b);
	friend bool operator==(Monomial const & a, Monomial const & b) = default;

private:
	void trim();

	std::vector<std::uint32_t> exps_;
	std::uint64_t degree_ = 0;
};

/// Graded lexicographic order with symbol 0 largest. Returns <0, 0, >0.
int grlex_compare(Monomial const & a, Monomial const & b) noexcept;

struct Term
{
	Monomial monomial;
	Rational coefficient;
};

/**
 * Sparse multivariate polynomial with exact rational coefficients.
 *
 * Terms are kept sorted by strictly decreasing graded-lex monomial and no stored
 * coefficient is zero, so equal polynomials have identical representations.
 */
class Polynomial
{
public:
	Polynomial() = default;
	Polynomial(Rational const & constant);  // NOLINT(google-explicit-constructor)
	Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

	static Polynomial variable(std::size_t index);
	static Polynomial monomial(Monomial m, Rational const & coefficient);
	/// Builds from arbitrary terms: sorts, merges duplicates and drops zeros.
	static Polynomial from_terms(std::vector<Term> terms);

	std::span<Term const> terms() const noexcept { return terms_; }
	std::size_t size() const noexcept { return terms_.size(); }
	bool is_zero() const noexcept { return terms_.empty(); }
	bool is_constant() const noexcept;
	/// Coefficient of the monomial 1.
	Rational constant_term() const;
	Rational coefficient(Monomial const & m) const;
	Term const & leading_term() const { return terms_.front(); }
	std::uint64_t total_degree() const noexcept;
	/// One past the highest symbol index appearing.
	std::size_t width() const noexcept;
	bool mentions(std::size_t index) const noexcept;

	Polynomial operator-() const;
	Polynomial & operator+=(Polynomial const & other);
	Polynomial & operator-=(Polynomial const & other);
	Polynomial & operator*=(Polynomial const & other);
	Polynomial & operator*=(Rational const & scale);

	friend Polynomial operator+(Polynomial a, Polynomial const & b) { return a += b; }
	friend Polynomial operator-(Polynomial a, Polynomial const & b) { return a -= b; }
	friend Polynomial operator*(Polynomial const & a, Polynomial const & b);
	friend Polynomial operator*(Polynomial a, Rational const & s) { return a *= s; }
	friend bool operator==(Polynomial const & a, Polynomial const & b);

	Polynomial pow(unsigned exponent) const;
	Polynomial derivative(std::size_t index) const;
	/// Positive rational c such that this / c has coprime integer coefficients,
	/// signed so that the leading coefficient of this / c is positive.
	Rational content() const;

	/// Quotient when `divisor` divides this exactly, nothing otherwise.
	std::optional<Polynomial> exact_quotient(Polynomial const & divisor) const;

	/**
	 * Remainder of multivariate division by `divisors` (graded-lex order, the first
	 * divisor in list order whose leading monomial divides is used at each step).
	 */
	Polynomial remainder(std::span<Polynomial const> divisors) const;

	/// Reindexes symbols: symbol i becomes map[i]. Every present symbol must be mapped.
	Polynomial reindexed(std::span<std::size_t const> map) const;

	/// Evaluates at a dense point indexed by symbol position.
	template <typename Derived>
	typename Derived::Scalar evaluate(Eigen::MatrixBase<Derived> const & point) const;

private:
	explicit Polynomial(std::vector<Term> sorted) : terms_(std::move(sorted)) {}

	std::vector<Term> terms_;
};

template <typename Derived>
typename Derived::Scalar Polynomial::evaluate(Eigen::MatrixBase<Derived> const & point) const
{
	using Scalar = typename Derived::Scalar;
	Scalar sum{0};
	for (auto const & term : terms_)
	{
		Scalar value = static_cast<Scalar>(to_double(term.coefficient));
		for (std::size_t i = 0; i < term.monomial.width(); ++i)
		{
			for (std::uint32_t e = term.monomial.exponent(i); e > 0; --e)
				value *= point(static_cast<Eigen::Index>(i));
		}
		sum += value;
	}
	return sum;
}

}  // namespace dirac
