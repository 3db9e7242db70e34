#include "dirac/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "dirac/errors.hpp"

namespace dirac
{
double to_double(Rational const & q)
{
	return q.get_d();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents))
{
	trim();
}

Monomial Monomial::variable(std::size_t index, std::uint32_t power)
{
	std::vector<std::uint32_t> exps(index + 1, 0);
	exps[index] = power;
	return Monomial(std::move(exps));
}

void Monomial::trim()
{
	while (!exps_.empty() && exps_.back() == 0)
		exps_.pop_back();
	degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::divides(Monomial const & other) const noexcept
{
	if (exps_.size() > other.exps_.size() || degree_ > other.degree_)
		return false;
	for (std::size_t i = 0; i < exps_.size(); ++i)
		if (exps_[i] > other.exps_[i])
			return false;
	return true;
}

Monomial Monomial::quotient(Monomial const & other) const
{
	assert(other.divides(*this));
	std::vector<std::uint32_t> exps = exps_;
	for (std::size_t i = 0; i < other.exps_.size(); ++i)
		exps[i] -= other.exps_[i];
	return Monomial(std::move(exps));
}

Monomial Monomial::lowered(std::size_t index) const
{
	assert(exponent(index) > 0);
	Monomial result = *this;
	--result.exps_[index];
	result.trim();
	return result;
}

Monomial operator*(Monomial const & a, Monomial const & b)
{
	Monomial const & longer = a.exps_.size() >= b.exps_.size() ? a : b;
	Monomial const & shorter = a.exps_.size() >= b.exps_.size() ? b : a;
	Monomial result = longer;
	for (std::size_t i = 0; i < shorter.exps_.size(); ++i)
		result.exps_[i] += shorter.exps_[i];
	result.degree_ = a.degree_ + b.degree_;
	return result;
}

int grlex_compare(Monomial const & a, Monomial const & b) noexcept
{
	if (a.degree() != b.degree())
		return a.degree() > b.degree() ? 1 : -1;
	std::size_t const width = std::max(a.width(), b.width());
	for (std::size_t i = 0; i < width; ++i)
	{
		auto const ea = a.exponent(i);
		auto const eb = b.exponent(i);
		if (ea != eb)
			return ea > eb ? 1 : -1;
	}
	return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace
{
bool term_greater(Term const & a, Term const & b)
{
	return grlex_compare(a.monomial, b.monomial) > 0;
}

// Merges two sorted term lists, b scaled by `sign`.
std::vector<Term> merge(std::span<Term const> a, std::span<Term const> b, int sign)
{
	std::vector<Term> out;
	out.reserve(a.size() + b.size());
	std::size_t i = 0;
	std::size_t j = 0;
	while (i < a.size() && j < b.size())
	{
		int const cmp = grlex_compare(a[i].monomial, b[j].monomial);
		if (cmp > 0)
			out.push_back(a[i++]);
		else if (cmp < 0)
		{
			out.push_back(b[j++]);
			if (sign < 0)
				out.back().coefficient = -out.back().coefficient;
		}
		else
		{
			Rational c = sign < 0 ? Rational(a[i].coefficient - b[j].coefficient)
								  : Rational(a[i].coefficient + b[j].coefficient);
			if (sgn(c) != 0)
				out.push_back({a[i].monomial, std::move(c)});
			++i;
			++j;
		}
	}
	for (; i < a.size(); ++i)
		out.push_back(a[i]);
	for (; j < b.size(); ++j)
	{
		out.push_back(b[j]);
		if (sign < 0)
			out.back().coefficient = -out.back().coefficient;
	}
	return out;
}

}  // namespace

Polynomial::Polynomial(Rational const & constant)
{
	if (sgn(constant) != 0)
		terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(std::size_t index)
{
	return monomial(Monomial::variable(index), Rational(1));
}

Polynomial Polynomial::monomial(Monomial m, Rational const & coefficient)
{
	Polynomial p;
	if (sgn(coefficient) != 0)
		p.terms_.push_back({std::move(m), coefficient});
	return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
	std::sort(terms.begin(), terms.end(), term_greater);
	std::vector<Term> out;
	out.reserve(terms.size());
	for (auto & t : terms)
	{
		if (!out.empty() && out.back().monomial == t.monomial)
			out.back().coefficient += t.coefficient;
		else
		{
			if (!out.empty() && sgn(out.back().coefficient) == 0)
				out.pop_back();
			out.push_back(std::move(t));
		}
	}
	if (!out.empty() && sgn(out.back().coefficient) == 0)
		out.pop_back();
	return Polynomial(std::move(out));
}

bool Polynomial::is_constant() const noexcept
{
	return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Polynomial::constant_term() const
{
	if (!terms_.empty() && terms_.back().monomial.is_one())
		return terms_.back().coefficient;
	return Rational(0);
}

Rational Polynomial::coefficient(Monomial const & m) const
{
	auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](Term const & t, Monomial const & key) {
		return grlex_compare(t.monomial, key) > 0;
	});
	if (it != terms_.end() && it->monomial == m)
		return it->coefficient;
	return Rational(0);
}

std::uint64_t Polynomial::total_degree() const noexcept
{
	return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::size_t Polynomial::width() const noexcept
{
	std::size_t w = 0;
	for (auto const & t : terms_)
		w = std::max(w, t.monomial.width());
	return w;
}

bool Polynomial::mentions(std::size_t index) const noexcept
{
	return std::any_of(terms_.begin(), terms_.end(), [index](Term const & t) { return t.monomial.exponent(index) > 0; });
}

Polynomial Polynomial::operator-() const
{
	Polynomial out = *this;
	for (auto & t : out.terms_)
		t.coefficient = -t.coefficient;
	return out;
}

Polynomial & Polynomial::operator+=(Polynomial const & other)
{
	if (other.is_zero())
		return *this;
	terms_ = merge(terms_, other.terms_, +1);
	return *this;
}

Polynomial & Polynomial::operator-=(Polynomial const & other)
{
	if (other.is_zero())
		return *this;
	terms_ = merge(terms_, other.terms_, -1);
	return *this;
}

Polynomial & Polynomial::operator*=(Polynomial const & other)
{
	*this = *this * other;
	return *this;
}

Polynomial & Polynomial::operator*=(Rational const & scale)
{
	if (sgn(scale) == 0)
		terms_.clear();
	else
		for (auto & t : terms_)
			t.coefficient *= scale;
	return *this;
}

Polynomial operator*(Polynomial const & a, Polynomial const & b)
{
	if (a.is_zero() || b.is_zero())
		return {};
	// Multiplying by a single term preserves the order, so no re-sort is needed.
	if (a.size() == 1 || b.size() == 1)
	{
		Polynomial const & single = a.size() == 1 ? a : b;
		Polynomial const & other = a.size() == 1 ? b : a;
		Term const & s = single.terms_.front();
		std::vector<Term> out;
		out.reserve(other.size());
		for (auto const & t : other.terms_)
			out.push_back({t.monomial * s.monomial, t.coefficient * s.coefficient});
		return Polynomial(std::move(out));
	}
	std::vector<Term> products;
	products.reserve(a.size() * b.size());
	for (auto const & ta : a.terms_)
		for (auto const & tb : b.terms_)
			products.push_back({ta.monomial * tb.monomial, ta.coefficient * tb.coefficient});
	return Polynomial::from_terms(std::move(products));
}

bool operator==(Polynomial const & a, Polynomial const & b)
{
	if (a.terms_.size() != b.terms_.size())
		return false;
	for (std::size_t i = 0; i < a.terms_.size(); ++i)
		if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coefficient != b.terms_[i].coefficient)
			return false;
	return true;
}

Polynomial Polynomial::pow(unsigned exponent) const
{
	Polynomial result(1);
	Polynomial base = *this;
	while (exponent > 0)
	{
		if (exponent & 1u)
			result *= base;
		exponent >>= 1u;
		if (exponent > 0)
			base = base * base;
	}
	return result;
}

Polynomial Polynomial::derivative(std::size_t index) const
{
	// Lowering the same symbol in every term keeps the relative order.
	std::vector<Term> out;
	for (auto const & t : terms_)
	{
		auto const e = t.monomial.exponent(index);
		if (e == 0)
			continue;
		out.push_back({t.monomial.lowered(index), t.coefficient * e});
	}
	return Polynomial(std::move(out));
}

Rational Polynomial::content() const
{
	if (terms_.empty())
		return Rational(1);
	mpz_class num_gcd = 0;
	mpz_class den_lcm = 1;
	for (auto const & t : terms_)
	{
		num_gcd = gcd(num_gcd, t.coefficient.get_num());
		den_lcm = lcm(den_lcm, t.coefficient.get_den());
	}
	Rational c(num_gcd, den_lcm);
	c.canonicalize();
	if (sgn(terms_.front().coefficient) < 0)
		c = -c;
	return c;
}

std::optional<Polynomial> Polynomial::exact_quotient(Polynomial const & divisor) const
{
	if (divisor.is_zero())
		throw DivisionByZero();
	if (is_zero())
		return Polynomial{};
	if (divisor.total_degree() > total_degree())
		return std::nullopt;
	Term const & lead = divisor.leading_term();
	Polynomial rest = *this;
	std::vector<Term> quotient;
	while (!rest.is_zero())
	{
		Term const & top = rest.leading_term();
		if (!lead.monomial.divides(top.monomial))
			return std::nullopt;
		Term q{top.monomial.quotient(lead.monomial), top.coefficient / lead.coefficient};
		rest -= divisor * Polynomial::monomial(q.monomial, q.coefficient);
		quotient.push_back(std::move(q));
	}
	// Quotient terms are produced in decreasing order.
	return Polynomial(std::move(quotient));
}

Polynomial Polynomial::remainder(std::span<Polynomial const> divisors) const
{
	Polynomial rest = *this;
	std::vector<Term> remainder;
	while (!rest.is_zero())
	{
		Term const top = rest.leading_term();
		bool reduced = false;
		for (auto const & g : divisors)
		{
			if (g.is_zero())
				continue;
			Term const & lead = g.leading_term();
			if (lead.monomial.divides(top.monomial))
			{
				rest -= g * Polynomial::monomial(top.monomial.quotient(lead.monomial), top.coefficient / lead.coefficient);
				reduced = true;
				break;
			}
		}
		if (!reduced)
		{
			remainder.push_back(top);
			rest.terms_.erase(rest.terms_.begin());
		}
	}
	return Polynomial(std::move(remainder));
}

Polynomial Polynomial::reindexed(std::span<std::size_t const> map) const
{
	std::vector<Term> out;
	out.reserve(terms_.size());
	for (auto const & t : terms_)
	{
		std::vector<std::uint32_t> exps;
		for (std::size_t i = 0; i < t.monomial.width(); ++i)
		{
			auto const e = t.monomial.exponent(i);
			if (e == 0)
				continue;
			if (i >= map.size())
				throw PreconditionViolated("reindex: symbol " + std::to_string(i) + " has no target");
			if (exps.size() <= map[i])
				exps.resize(map[i] + 1, 0);
			exps[map[i]] += e;
		}
		out.push_back({Monomial(std::move(exps)), t.coefficient});
	}
	return from_terms(std::move(out));
}

}  // namespace dirac
