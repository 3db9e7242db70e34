#include "dirac/expression_io.hpp"

#include <cctype>
#include <limits>

#include "dirac/errors.hpp"

namespace dirac
{
namespace
{
constexpr std::uint32_t max_exponent = 65535;

class Parser
{
public:
	Parser(std::string_view text, PhaseSpace const & ps) : text_(text), ps_(ps) {}

	RationalExpr parse()
	{
		RationalExpr e = expr();
		skip_space();
		if (pos_ != text_.size())
			fail({"operator", "end of input"});
		return e;
	}

private:
	RationalExpr expr()
	{
		RationalExpr acc = term();
		while (true)
		{
			skip_space();
			if (accept('+'))
				acc += term();
			else if (accept('-'))
				acc -= term();
			else
				return acc;
		}
	}

	RationalExpr term()
	{
		RationalExpr acc = factor();
		while (true)
		{
			skip_space();
			if (accept('*'))
				acc *= factor();
			else if (peek() == '/')
			{
				std::size_t const at = pos_++;
				RationalExpr rhs = factor();
				if (rhs.is_zero())
					throw SyntaxError(at, {"nonzero divisor"}, "division by zero");
				acc /= rhs;
			}
			else
				return acc;
		}
	}

	RationalExpr factor()
	{
		skip_space();
		if (accept('-'))
			return -factor();
		RationalExpr b = base();
		skip_space();
		if (accept('^'))
		{
			skip_space();
			std::size_t const at = pos_;
			if (!std::isdigit(peek_u()))
				fail({"integer exponent"});
			mpz_class const e = integer();
			if (e > max_exponent)
				throw SyntaxError(at, {"exponent <= " + std::to_string(max_exponent)}, e.get_str());
			if (b.is_zero() && e == 0)
				return RationalExpr(1);
			return pow(b, static_cast<int>(e.get_ui()));
		}
		return b;
	}

	RationalExpr base()
	{
		skip_space();
		char const c = peek();
		if (std::isdigit(static_cast<unsigned char>(c)))
			return number();
		if (std::isalpha(static_cast<unsigned char>(c)))
		{
			std::size_t const start = pos_;
			while (pos_ < text_.size() && (std::isalnum(peek_u()) || peek() == '_'))
				++pos_;
			std::string_view const name = text_.substr(start, pos_ - start);
			return RationalExpr::variable(ps_.index_of(name));
		}
		if (accept('('))
		{
			RationalExpr inner = expr();
			skip_space();
			if (!accept(')'))
				fail({"')'", "operator"});
			return inner;
		}
		fail({"number", "identifier", "'('", "'-'"});
	}

	// A literal rational: digits, optionally "/" digits with no intervening space.
	RationalExpr number()
	{
		std::size_t const start = pos_;
		mpz_class const num = integer();
		if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
		{
			++pos_;
			mpz_class const den = integer();
			if (den == 0)
				throw SyntaxError(start, {"nonzero denominator"}, "division by zero");
			Rational q(num, den);
			q.canonicalize();
			return RationalExpr(q);
		}
		return RationalExpr(Rational(num));
	}

	mpz_class integer()
	{
		std::size_t const start = pos_;
		while (pos_ < text_.size() && std::isdigit(peek_u()))
			++pos_;
		return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
	}

	void skip_space()
	{
		while (pos_ < text_.size() && std::isspace(peek_u()))
			++pos_;
	}

	bool accept(char c)
	{
		if (peek() != c)
			return false;
		++pos_;
		return true;
	}

	char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
	unsigned char peek_u() const { return static_cast<unsigned char>(peek()); }

	[[noreturn]] void fail(std::vector<std::string> expected) const
	{
		std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
		throw SyntaxError(pos_, std::move(expected), found);
	}

	std::string_view text_;
	PhaseSpace const & ps_;
	std::size_t pos_ = 0;
};

std::string print_monomial(Monomial const & m, PhaseSpace const & ps)
{
	std::string out;
	for (std::size_t i = 0; i < m.width(); ++i)
	{
		auto const e = m.exponent(i);
		if (e == 0)
			continue;
		if (!out.empty())
			out += '*';
		out += ps.name(i);
		if (e > 1)
			out += '^' + std::to_string(e);
	}
	return out;
}

std::size_t factor_count(Monomial const & m)
{
	std::size_t count = 0;
	for (std::size_t i = 0; i < m.width(); ++i)
		count += m.exponent(i) > 0 ? 1 : 0;
	return count;
}

}  // namespace

RationalExpr parse_expression(std::string_view text, PhaseSpace const & ps)
{
	return Parser(text, ps).parse();
}

std::string print_rational(Rational const & q)
{
	return q.get_str();
}

std::string print_polynomial(Polynomial const & p, PhaseSpace const & ps)
{
	if (p.is_zero())
		return "0";
	std::string out;
	bool first = true;
	for (auto const & t : p.terms())
	{
		bool const negative = sgn(t.coefficient) < 0;
		if (first)
			out += negative ? "-" : "";
		else
			out += negative ? " - " : " + ";
		first = false;

		Rational const magnitude = abs(t.coefficient);
		if (t.monomial.is_one())
			out += print_rational(magnitude);
		else if (magnitude == 1)
			out += print_monomial(t.monomial, ps);
		else
			out += print_rational(magnitude) + "*" + print_monomial(t.monomial, ps);
	}
	return out;
}

std::string print_expression(RationalExpr const & e, PhaseSpace const & ps)
{
	std::string num = print_polynomial(e.num(), ps);
	if (e.is_polynomial())
		return num;
	// a fractional coefficient would otherwise run into the division slash
	if (e.num().size() > 1 || e.num().leading_term().coefficient.get_den() != 1)
		num = "(" + num + ")";
	std::string den = print_polynomial(e.den(), ps);
	auto const & d = e.den();
	bool const bare = d.size() == 1 && d.leading_term().coefficient == 1 && factor_count(d.leading_term().monomial) == 1;
	if (!bare)
		den = "(" + den + ")";
	return num + "/" + den;
}

double evaluate(RationalExpr const & e, std::map<std::string, double> const & point, PhaseSpace const & ps)
{
	Eigen::VectorXd z(static_cast<Eigen::Index>(ps.symbol_count()));
	for (std::size_t s = 0; s < ps.symbol_count(); ++s)
	{
		auto it = point.find(ps.name(s));
		if (it == point.end())
			throw PreconditionViolated("evaluation point does not bind '" + ps.name(s) + "'");
		z(static_cast<Eigen::Index>(s)) = it->second;
	}
	for (auto const & [name, value] : point)
		(void)ps.index_of(name);
	return e.evaluate(z);
}

}  // namespace dirac
