#include "dirac/errors.hpp"

namespace dirac
{
namespace
{
std::string describe(std::size_t offset, std::vector<std::string> const & expected, std::string const & found)
{
	std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
	for (std::size_t i = 0; i < expected.size(); ++i)
	{
		if (i > 0)
			msg += i + 1 == expected.size() ? " or " : ", ";
		msg += expected[i];
	}
	msg += ", found " + found;
	return msg;
}
}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string const & found)
	: Error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected))
{
}

UnknownSymbol::UnknownSymbol(std::string name) : Error("unknown symbol '" + name + "'"), name_(std::move(name)) {}

}  // namespace dirac
