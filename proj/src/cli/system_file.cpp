#include "dirac/cli/system_file.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "dirac/expression_io.hpp"

namespace dirac::cli
{
FileSyntaxError::FileSyntaxError(std::string const & file, std::size_t line, std::size_t column,
								 std::string const & detail)
	: Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + detail), line_(line), column_(column)
{
}

std::vector<RationalExpr> SystemSpec::constraint_exprs() const
{
	std::vector<RationalExpr> out;
	out.reserve(constraints.size());
	for (auto const & c : constraints)
		out.push_back(c.expr);
	return out;
}

std::vector<Polynomial> SystemSpec::onshell_rules() const
{
	std::vector<Polynomial> rules;
	for (auto const & name : onshell)
	{
		auto it = std::find_if(constraints.begin(), constraints.end(), [&](NamedExpr const & c) { return c.name == name; });
		rules.push_back(it->expr.num());
	}
	return rules;
}

std::string sha256_hex(std::string_view bytes)
{
	std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
	unsigned int length = 0;
	if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
		throw Error("sha256 digest failed");
	static constexpr char hex[] = "0123456789abcdef";
	std::string out;
	for (unsigned int i = 0; i < length; ++i)
	{
		out += hex[digest[i] >> 4];
		out += hex[digest[i] & 0xf];
	}
	return out;
}

namespace
{
struct Line
{
	std::size_t number;
	std::size_t indent;  // 0-based column of the first kept character
	std::string text;
};

std::string_view trim(std::string_view s)
{
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

bool is_identifier(std::string_view s)
{
	if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
		return false;
	return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class SystemParser
{
public:
	SystemParser(std::string_view text, std::string source) : source_(std::move(source)) { split(text); }

	SystemSpec parse()
	{
		if (!sections_.contains("system"))
			throw ValidationError(source_ + ": missing [system] section");
		SystemSpec spec;
		parse_system_section(spec);
		parse_named("constraints", spec, spec.constraints);
		parse_named("primaries", spec, spec.primaries);
		std::vector<NamedExpr> hamiltonian;
		parse_named("hamiltonian", spec, hamiltonian);
		if (hamiltonian.size() > 1)
			fail(sections_.at("hamiltonian")[1], "[hamiltonian] holds a single entry");
		if (!hamiltonian.empty())
			spec.hamiltonian = std::move(hamiltonian.front());
		parse_onshell(spec);
		parse_sampler(spec);
		return spec;
	}

private:
	void split(std::string_view text)
	{
		std::string current;
		std::size_t number = 0;
		std::size_t start = 0;
		while (start <= text.size())
		{
			std::size_t end = text.find('\n', start);
			if (end == std::string_view::npos)
				end = text.size();
			++number;
			std::string_view raw = text.substr(start, end - start);
			start = end + 1;
			if (auto hash = raw.find('#'); hash != std::string_view::npos)
				raw = raw.substr(0, hash);
			std::string_view const body = trim(raw);
			if (body.empty())
			{
				if (end == text.size())
					break;
				continue;
			}
			std::size_t const indent = static_cast<std::size_t>(body.data() - raw.data());
			if (body.front() == '[')
			{
				if (body.back() != ']')
					fail({number, indent, std::string(body)}, "unterminated section header");
				current = std::string(trim(body.substr(1, body.size() - 2)));
				static std::set<std::string> const known{"system",	 "constraints", "hamiltonian",
														 "primaries", "onshell",	 "sampler"};
				if (!known.contains(current))
					fail({number, indent, std::string(body)}, "unknown section [" + current + "]");
				if (sections_.contains(current))
					fail({number, indent, std::string(body)}, "duplicate section [" + current + "]");
				sections_[current];
			}
			else
			{
				if (current.empty())
					fail({number, indent, std::string(body)}, "entry outside of any section");
				sections_[current].push_back({number, indent, std::string(body)});
			}
			if (end == text.size())
				break;
		}
	}

	[[noreturn]] void fail(Line const & line, std::string const & detail) const
	{
		throw ValidationError(source_ + ":" + std::to_string(line.number) + ": " + detail);
	}

	std::vector<Line> const & section(std::string const & name) const
	{
		static std::vector<Line> const empty;
		auto it = sections_.find(name);
		return it == sections_.end() ? empty : it->second;
	}

	// Splits "key = value"; the value's column offset within the line is returned too.
	std::pair<std::string, std::size_t> key_value(Line const & line, std::string & key) const
	{
		auto eq = line.text.find('=');
		if (eq == std::string::npos)
			fail(line, "expected 'name = value'");
		key = std::string(trim(std::string_view(line.text).substr(0, eq)));
		std::string_view rest = std::string_view(line.text).substr(eq + 1);
		std::size_t lead = 0;
		while (lead < rest.size() && std::isspace(static_cast<unsigned char>(rest[lead])))
			++lead;
		std::string value(trim(rest));
		if (value.empty())
			fail(line, "missing value for '" + key + "'");
		return {value, line.indent + eq + 1 + lead};
	}

	template <typename T>
	T number(Line const & line, std::string const & value, std::string const & what) const
	{
		T out{};
		auto const * first = value.data();
		auto const * last = value.data() + value.size();
		auto [ptr, ec] = std::from_chars(first, last, out);
		if (ec != std::errc{} || ptr != last)
			fail(line, "invalid " + what + " '" + value + "'");
		return out;
	}

	void parse_system_section(SystemSpec & spec) const
	{
		std::optional<long> n;
		std::vector<std::string> parameters;
		std::vector<std::pair<Line, std::pair<std::string, double>>> bindings;
		for (auto const & line : section("system"))
		{
			if (line.text.rfind("bind", 0) == 0 && line.text.size() > 4 && std::isspace(static_cast<unsigned char>(line.text[4])))
			{
				Line rest = line;
				rest.text = line.text.substr(5);
				rest.indent += 5;
				std::string key;
				auto [value, col] = key_value(rest, key);
				bindings.push_back({line, {key, number<double>(line, value, "binding value")}});
				continue;
			}
			std::string key;
			auto [value, col] = key_value(line, key);
			if (key == "n")
			{
				n = number<long>(line, value, "pair count");
				if (*n < 1)
					fail(line, "n must be at least 1");
			}
			else if (key == "parameters")
			{
				std::string item;
				for (char c : value + ",")
				{
					if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
					{
						if (!item.empty())
						{
							if (!is_identifier(item))
								fail(line, "invalid parameter name '" + item + "'");
							parameters.push_back(item);
						}
						item.clear();
					}
					else
						item += c;
				}
			}
			else
				fail(line, "unknown [system] key '" + key + "'");
		}
		if (!n)
			throw ValidationError(source_ + ": [system] must declare n");
		try
		{
			spec.ps = PhaseSpace(static_cast<std::size_t>(*n), parameters);
		}
		catch (PreconditionViolated const & e)
		{
			throw ValidationError(source_ + ": " + e.what());
		}
		for (auto const & [line, binding] : bindings)
		{
			if (std::find(parameters.begin(), parameters.end(), binding.first) == parameters.end())
				fail(line, "binding for undeclared parameter '" + binding.first + "'");
			spec.sampler.bindings[binding.first] = binding.second;
		}
	}

	void parse_named(std::string const & name, SystemSpec const & spec, std::vector<NamedExpr> & out)
	{
		for (auto const & line : section(name))
		{
			std::string key;
			auto [value, col] = key_value(line, key);
			if (!is_identifier(key))
				fail(line, "invalid name '" + key + "'");
			if (auto const [it, fresh] = names_.emplace(key, name); !fresh)
				fail(line, "duplicate name '" + key + "' (already used in [" + it->second + "])");
			try
			{
				out.push_back({key, parse_expression(value, spec.ps)});
			}
			catch (SyntaxError const & e)
			{
				throw FileSyntaxError(source_, line.number, col + e.offset() + 1, e.what());
			}
			catch (UnknownSymbol const & e)
			{
				fail(line, "unbound symbol '" + e.name() + "' in " + key);
			}
		}
	}

	void parse_onshell(SystemSpec & spec) const
	{
		for (auto const & line : section("onshell"))
		{
			std::string_view text = line.text;
			if (text.rfind("use", 0) != 0 || text.size() < 4 || !std::isspace(static_cast<unsigned char>(text[3])))
				fail(line, "expected 'use <constraint name>'");
			std::string const name(trim(text.substr(3)));
			auto it = std::find_if(spec.constraints.begin(), spec.constraints.end(),
								   [&](NamedExpr const & c) { return c.name == name; });
			if (it == spec.constraints.end())
				fail(line, "on-shell rule '" + name + "' is not a declared constraint");
			if (!it->expr.is_polynomial())
				fail(line, "on-shell rule '" + name + "' must be a polynomial constraint");
			spec.onshell.push_back(name);
		}
	}

	void parse_sampler(SystemSpec & spec) const
	{
		for (auto const & line : section("sampler"))
		{
			std::string key;
			auto [value, col] = key_value(line, key);
			if (key == "seed")
				spec.sampler.seed = number<std::uint64_t>(line, value, "seed");
			else if (key == "points")
				spec.sampler.point_count = number<int>(line, value, "point count");
			else if (key == "tolerance")
				spec.sampler.tolerance = number<double>(line, value, "tolerance");
			else if (key == "max_newton_iters")
				spec.sampler.max_newton_iters = number<int>(line, value, "iteration limit");
			else if (key == "max_retries")
				spec.sampler.max_retries = number<int>(line, value, "retry limit");
			else
				fail(line, "unknown [sampler] key '" + key + "'");
		}
		try
		{
			spec.sampler.validate();
		}
		catch (PreconditionViolated const & e)
		{
			throw ValidationError(source_ + ": " + e.what());
		}
	}

	std::string source_;
	std::map<std::string, std::vector<Line>> sections_;
	// entry name -> section that declared it
	std::map<std::string, std::string> names_;
};

}  // namespace

SystemSpec parse_system(std::string_view text, std::string const & source)
{
	SystemSpec spec = SystemParser(text, source).parse();
	spec.digest = "sha256:" + sha256_hex(text);
	return spec;
}

SystemSpec load_system(std::filesystem::path const & path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot read " + path.string());
	std::ostringstream buffer;
	buffer << in.rdbuf();
	if (in.bad())
		throw IoError("error reading " + path.string());
	return parse_system(buffer.str(), path.string());
}

}  // namespace dirac::cli
