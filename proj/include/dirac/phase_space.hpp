#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirac
{
/**
 * Flat phase space R^{2n} with coordinates x1..xn, momenta p1..pn and named
 * constant parameters. The pairing x_i <-> p_i is fixed.
 *
 * Symbols are indexed in monomial-order priority: x1..xn are 0..n-1, p1..pn are
 * n..2n-1, parameters follow in declaration order.
 */
class PhaseSpace
{
public:
	/// Throws PreconditionViolated if n == 0 or a parameter name is invalid or clashes.
	explicit PhaseSpace(std::size_t n, std::vector<std::string> parameters = {});

	std::size_t n() const noexcept { return n_; }
	std::vector<std::string> const & parameters() const noexcept { return parameters_; }

	std::size_t variable_count() const noexcept { return 2 * n_; }
	std::size_t symbol_count() const noexcept { return 2 * n_ + parameters_.size(); }

	/// 0-based pair index i -> symbol index of x_{i+1} / p_{i+1}.
	std::size_t x(std::size_t i) const noexcept { return i; }
	std::size_t p(std::size_t i) const noexcept { return n_ + i; }
	std::size_t parameter(std::size_t j) const noexcept { return 2 * n_ + j; }
	bool is_variable(std::size_t symbol) const noexcept { return symbol < 2 * n_; }

	std::string const & name(std::size_t symbol) const { return names_.at(symbol); }
	std::optional<std::size_t> find(std::string_view name) const;
	/// Like find, throwing UnknownSymbol.
	std::size_t index_of(std::string_view name) const;

	friend bool operator==(PhaseSpace const & a, PhaseSpace const & b)
	{
		return a.n_ == b.n_ && a.parameters_ == b.parameters_;
	}

private:
	std::size_t n_;
	std::vector<std::string> parameters_;
	std::vector<std::string> names_;
};

}  // namespace dirac
