#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac/constraint_analysis.hpp"
#include "dirac/errors.hpp"
#include "dirac/phase_space.hpp"
#include "dirac/rational_expr.hpp"

namespace dirac::cli
{
class IoError : public Error
{
public:
	using Error::Error;
};

class ValidationError : public Error
{
public:
	using Error::Error;
};

/// Expression syntax error located in a system file (1-based line and column).
class FileSyntaxError : public Error
{
public:
	FileSyntaxError(std::string const & file, std::size_t line, std::size_t column, std::string const & detail);

	std::size_t line() const noexcept { return line_; }
	std::size_t column() const noexcept { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

struct NamedExpr
{
	std::string name;
	RationalExpr expr;
};

/**
 * A parsed system file:
 *
 *     [system]        n = 3 / parameters = r / bind r = 1.0
 *     [constraints]   name = expr
 *     [hamiltonian]   name = expr          (at most one entry)
 *     [primaries]     name = expr
 *     [onshell]       use <constraint name>
 *     [sampler]       seed / points / tolerance / max_newton_iters / max_retries
 *
 * '#' starts a comment; sections may appear in any order.
 */
struct SystemSpec
{
	PhaseSpace ps{1};
	std::vector<NamedExpr> constraints;
	std::optional<NamedExpr> hamiltonian;
	std::vector<NamedExpr> primaries;
	std::vector<std::string> onshell;
	SamplerConfig sampler;
	/// "sha256:<hex>" of the raw file bytes.
	std::string digest;

	std::vector<RationalExpr> constraint_exprs() const;
	std::vector<Polynomial> onshell_rules() const;
};

SystemSpec parse_system(std::string_view text, std::string const & source = "<input>");
/// Throws IoError, FileSyntaxError, ValidationError.
SystemSpec load_system(std::filesystem::path const & path);

std::string sha256_hex(std::string_view bytes);

}  // namespace dirac::cli
