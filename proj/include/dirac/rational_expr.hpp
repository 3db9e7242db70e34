#pragma once

#include <span>

#include "dirac/errors.hpp"
#include "dirac/polynomial.hpp"

namespace dirac
{
/**
 * Element of the field of rational functions over the phase-space symbols.
 *
 * Stored as num/den with den nonzero, primitive (coprime integer coefficients) and
 * with a positive leading coefficient. No polynomial gcd is cancelled, so the
 * printed form may be non-minimal; the only other simplification is that a
 * numerator proportional to the denominator collapses to that constant.
 *
 * `==` is mathematical equality, decided by cross-multiplication.
 */
class RationalExpr
{
public:
	RationalExpr() : den_(1) {}
	RationalExpr(int constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
	RationalExpr(Rational const & constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
	RationalExpr(Polynomial num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
	/// Throws DivisionByZero when `den` is the zero polynomial.
	RationalExpr(Polynomial num, Polynomial den);

	static RationalExpr variable(std::size_t index) { return RationalExpr(Polynomial::variable(index)); }

	Polynomial const & num() const noexcept { return num_; }
	Polynomial const & den() const noexcept { return den_; }

	bool is_zero() const noexcept { return num_.is_zero(); }
	bool is_polynomial() const noexcept { return den_.is_constant(); }
	bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
	/// Value of a constant expression; requires is_constant().
	Rational constant_value() const;
	bool mentions(std::size_t index) const noexcept { return num_.mentions(index) || den_.mentions(index); }

	RationalExpr operator-() const;
	RationalExpr & operator+=(RationalExpr const & other);
	RationalExpr & operator-=(RationalExpr const & other);
	RationalExpr & operator*=(RationalExpr const & other);
	RationalExpr & operator/=(RationalExpr const & other);

	friend RationalExpr operator+(RationalExpr a, RationalExpr const & b) { return a += b; }
	friend RationalExpr operator-(RationalExpr a, RationalExpr const & b) { return a -= b; }
	friend RationalExpr operator*(RationalExpr a, RationalExpr const & b) { return a *= b; }
	friend RationalExpr operator/(RationalExpr a, RationalExpr const & b) { return a /= b; }
	friend bool operator==(RationalExpr const & a, RationalExpr const & b);

	/// Identical stored form (stronger than ==).
	bool identical(RationalExpr const & other) const { return num_ == other.num_ && den_ == other.den_; }

	RationalExpr reindexed(std::span<std::size_t const> map) const;

	template <typename Derived>
	typename Derived::Scalar evaluate(Eigen::MatrixBase<Derived> const & point) const;

private:
	struct Normalized
	{
	};
	RationalExpr(Polynomial num, Polynomial den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
	void normalize();

	Polynomial num_;
	Polynomial den_;
};

RationalExpr pow(RationalExpr const & base, int exponent);
/// Exact partial derivative with respect to the symbol at `index`.
RationalExpr differentiate(RationalExpr const & e, std::size_t index);
inline bool is_zero(RationalExpr const & e) noexcept
{
	return e.is_zero();
}

/**
 * Replaces numerator and denominator by their remainders under division by
 * `constraints`. The result agrees with `e` wherever all constraints vanish.
 * Throws ZeroDenominatorOnShell when the denominator reduces to zero.
 */
RationalExpr reduce_mod_constraints(RationalExpr const & e, std::span<Polynomial const> constraints);

/// Throws PoleAtPoint when |den(point)| < 1e-12.
template <typename Derived>
typename Derived::Scalar RationalExpr::evaluate(Eigen::MatrixBase<Derived> const & point) const
{
	using std::abs;
	auto const d = den_.evaluate(point);
	if (abs(d) < 1e-12)
		throw PoleAtPoint();
	return num_.evaluate(point) / d;
}

// Eigen scalar glue; the field is real so conjugation is the identity.
inline RationalExpr const & conj(RationalExpr const & x)
{
	return x;
}
inline RationalExpr const & real(RationalExpr const & x)
{
	return x;
}
inline RationalExpr imag(RationalExpr const &)
{
	return RationalExpr{};
}

}  // namespace dirac

namespace Eigen
{
template <>
struct NumTraits<dirac::RationalExpr> : GenericNumTraits<dirac::RationalExpr>
{
	using Real = dirac::RationalExpr;
	using NonInteger = dirac::RationalExpr;
	using Literal = dirac::RationalExpr;
	using Nested = dirac::RationalExpr;

	enum
	{
		IsComplex = 0,
		IsInteger = 0,
		IsSigned = 1,
		RequireInitialization = 1,
		ReadCost = 1,
		AddCost = 50,
		MulCost = 100
	};
};
}  // namespace Eigen
