#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac
{
/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is a 0-based byte offset into the parsed text.
class SyntaxError : public Error
{
public:
	SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string const & found);

	std::size_t offset() const noexcept { return offset_; }
	std::vector<std::string> const & expected() const noexcept { return expected_; }

private:
	std::size_t offset_;
	std::vector<std::string> expected_;
};

class UnknownSymbol : public Error
{
public:
	explicit UnknownSymbol(std::string name);
	std::string const & name() const noexcept { return name_; }

private:
	std::string name_;
};

class DivisionByZero : public Error
{
public:
	DivisionByZero() : Error("division by zero") {}
};

class PoleAtPoint : public Error
{
public:
	PoleAtPoint() : Error("denominator vanishes at evaluation point") {}
};

class ZeroDenominatorOnShell : public Error
{
public:
	ZeroDenominatorOnShell() : Error("denominator reduces to zero modulo the constraints") {}
};

class SingularMatrix : public Error
{
public:
	explicit SingularMatrix(std::size_t column)
		: Error("matrix is singular: no nonzero pivot in column " + std::to_string(column)),
		  column_(column)
	{
	}
	std::size_t column() const noexcept { return column_; }

private:
	std::size_t column_;
};

class OddConstraintCount : public Error
{
public:
	explicit OddConstraintCount(std::size_t count)
		: Error("second-class constraints come in pairs, got " + std::to_string(count))
	{
	}
};

class TooManyConstraints : public Error
{
public:
	TooManyConstraints(std::size_t m, std::size_t n)
		: Error("m = " + std::to_string(m) + " constraint pairs exceed n = " + std::to_string(n))
	{
	}
};

/// The constraint matrix is not invertible, so the set is not second class.
class NotSecondClass : public Error
{
public:
	using Error::Error;
};

class NoOnShellPoint : public Error
{
public:
	using Error::Error;
};

class PreconditionViolated : public Error
{
public:
	using Error::Error;
};

class InvalidCounts : public Error
{
public:
	using Error::Error;
};

class NonPolynomialInput : public Error
{
public:
	using Error::Error;
};

class ReportNotClosed : public Error
{
public:
	ReportNotClosed() : Error("algebra report is not closed; no verdict can be drawn") {}
};

}  // namespace dirac
