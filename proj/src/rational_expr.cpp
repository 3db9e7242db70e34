#include "dirac/rational_expr.hpp"

#include <cassert>

namespace dirac
{
RationalExpr::RationalExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den))
{
	normalize();
}

void RationalExpr::normalize()
{
	if (den_.is_zero())
		throw DivisionByZero();
	if (num_.is_zero())
	{
		den_ = Polynomial(1);
		return;
	}
	Rational const content = den_.content();
	if (content != 1)
	{
		Rational const inv = 1 / content;
		num_ *= inv;
		den_ *= inv;
	}
	if (den_.is_constant() || num_.size() != den_.size())
		return;

	// num = c * den collapses to the constant c.
	auto const nt = num_.terms();
	auto const dt = den_.terms();
	Rational const ratio = nt.front().coefficient / dt.front().coefficient;
	for (std::size_t i = 0; i < nt.size(); ++i)
	{
		if (!(nt[i].monomial == dt[i].monomial) || nt[i].coefficient != ratio * dt[i].coefficient)
			return;
	}
	num_ = Polynomial(ratio);
	den_ = Polynomial(1);
}

Rational RationalExpr::constant_value() const
{
	assert(is_constant());
	return num_.constant_term() / den_.constant_term();
}

RationalExpr RationalExpr::operator-() const
{
	return RationalExpr(-num_, den_, Normalized{});
}

RationalExpr & RationalExpr::operator+=(RationalExpr const & other)
{
	if (other.is_zero())
		return *this;
	if (is_zero())
		return *this = other;

	// Prefer a common denominator that already divides one side, which keeps
	// repeated sums over the same constraint matrix from squaring denominators.
	if (den_ == other.den_)
		num_ += other.num_;
	else if (other.den_.is_constant())
		num_ += other.num_ * den_;
	else if (den_.is_constant())
	{
		num_ = num_ * other.den_ + other.num_;
		den_ = other.den_;
	}
	else if (auto q = den_.exact_quotient(other.den_))
		num_ += other.num_ * *q;
	else if (auto r = other.den_.exact_quotient(den_))
	{
		num_ = num_ * *r + other.num_;
		den_ = other.den_;
	}
	else
	{
		num_ = num_ * other.den_ + other.num_ * den_;
		den_ = den_ * other.den_;
	}
	normalize();
	return *this;
}

RationalExpr & RationalExpr::operator-=(RationalExpr const & other)
{
	return *this += -other;
}

RationalExpr & RationalExpr::operator*=(RationalExpr const & other)
{
	if (is_zero())
		return *this;
	if (other.is_zero())
		return *this = RationalExpr{};

	Polynomial n1 = num_;
	Polynomial d1 = den_;
	Polynomial n2 = other.num_;
	Polynomial d2 = other.den_;
	// Only syntactically identical cross factors cancel.
	if (!d2.is_constant() && n1 == d2)
		n1 = d2 = Polynomial(1);
	if (!d1.is_constant() && n2 == d1)
		n2 = d1 = Polynomial(1);
	num_ = n1 * n2;
	den_ = d1 * d2;
	normalize();
	return *this;
}

RationalExpr & RationalExpr::operator/=(RationalExpr const & other)
{
	if (other.is_zero())
		throw DivisionByZero();
	return *this *= RationalExpr(other.den_, other.num_);
}

bool operator==(RationalExpr const & a, RationalExpr const & b)
{
	if (a.den_ == b.den_)
		return a.num_ == b.num_;
	return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalExpr RationalExpr::reindexed(std::span<std::size_t const> map) const
{
	return RationalExpr(num_.reindexed(map), den_.reindexed(map));
}

RationalExpr pow(RationalExpr const & base, int exponent)
{
	if (exponent < 0)
	{
		if (base.is_zero())
			throw DivisionByZero();
		return pow(RationalExpr(base.den(), base.num()), -exponent);
	}
	auto const e = static_cast<unsigned>(exponent);
	return RationalExpr(base.num().pow(e), base.den().pow(e));
}

RationalExpr differentiate(RationalExpr const & e, std::size_t index)
{
	Polynomial const dnum = e.num().derivative(index);
	Polynomial const dden = e.den().derivative(index);
	if (dden.is_zero())
		return RationalExpr(dnum, e.den());
	return RationalExpr(dnum * e.den() - e.num() * dden, e.den() * e.den());
}

RationalExpr reduce_mod_constraints(RationalExpr const & e, std::span<Polynomial const> constraints)
{
	Polynomial den = e.den().remainder(constraints);
	if (den.is_zero())
		throw ZeroDenominatorOnShell();
	return RationalExpr(e.num().remainder(constraints), std::move(den));
}

}  // namespace dirac
