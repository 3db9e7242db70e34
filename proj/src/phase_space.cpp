#include "dirac/phase_space.hpp"

#include <algorithm>
#include <cctype>

#include "dirac/errors.hpp"

namespace dirac
{
namespace
{
bool is_identifier(std::string const & s)
{
	if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
		return false;
	return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}
}  // namespace

PhaseSpace::PhaseSpace(std::size_t n, std::vector<std::string> parameters) : n_(n), parameters_(std::move(parameters))
{
	if (n_ == 0)
		throw PreconditionViolated("phase space needs at least one canonical pair");
	names_.reserve(symbol_count());
	for (std::size_t i = 1; i <= n_; ++i)
		names_.push_back("x" + std::to_string(i));
	for (std::size_t i = 1; i <= n_; ++i)
		names_.push_back("p" + std::to_string(i));
	for (auto const & param : parameters_)
	{
		if (!is_identifier(param))
			throw PreconditionViolated("invalid parameter name '" + param + "'");
		if (std::find(names_.begin(), names_.end(), param) != names_.end())
			throw PreconditionViolated("duplicate symbol name '" + param + "'");
		names_.push_back(param);
	}
}

std::optional<std::size_t> PhaseSpace::find(std::string_view name) const
{
	auto it = std::find(names_.begin(), names_.end(), name);
	if (it == names_.end())
		return std::nullopt;
	return static_cast<std::size_t>(it - names_.begin());
}

std::size_t PhaseSpace::index_of(std::string_view name) const
{
	if (auto idx = find(name))
		return *idx;
	throw UnknownSymbol(std::string(name));
}

}  // namespace dirac
