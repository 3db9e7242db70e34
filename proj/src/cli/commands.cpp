#include "dirac/cli/commands.hpp"

#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "dirac/algebra.hpp"
#include "dirac/cli/report.hpp"
#include "dirac/cli/system_file.hpp"
#include "dirac/expression_io.hpp"

#ifndef DIRAC_VERSION
#define DIRAC_VERSION "0.0.0"
#endif

namespace dirac::cli
{
std::string version()
{
	return DIRAC_VERSION;
}

namespace
{
struct Options
{
	std::string file;
	std::string format = "text";
	std::string mode;
	std::string f;
	std::string g;
	bool timings = false;
};

class UsageError : public Error
{
public:
	using Error::Error;
};

class Stopwatch
{
public:
	explicit Stopwatch(Report & report, bool enabled) : report_(report), enabled_(enabled) {}

	template <typename Fn>
	decltype(auto) stage(std::string const & name, Fn && fn)
	{
		auto const start = std::chrono::steady_clock::now();
		struct Record
		{
			Stopwatch & self;
			std::string const & name;
			std::chrono::steady_clock::time_point start;
			~Record()
			{
				if (self.enabled_)
				{
					std::chrono::duration<double, std::milli> const elapsed = std::chrono::steady_clock::now() - start;
					self.report_.timings_ms.emplace_back(name, elapsed.count());
				}
			}
		} record{*this, name, start};
		return fn();
	}

private:
	Report & report_;
	bool enabled_;
};

Format parse_format(std::string const & text)
{
	return text == "json" ? Format::json : Format::text;
}

Report base_report(SystemSpec const & spec)
{
	Report report;
	report.version = version();
	report.input_digest = spec.digest;
	report.ps = spec.ps;
	report.m = spec.constraints.size() / 2;
	return report;
}

BracketMode resolve_mode(Options const & opts, SystemSpec const & spec)
{
	if (opts.mode.empty())
		return spec.constraints.empty() ? BracketMode::poisson : BracketMode::dirac;
	return opts.mode == "dirac" ? BracketMode::dirac : BracketMode::poisson;
}

std::optional<DiracContext> context_for(SystemSpec const & spec)
{
	if (spec.constraints.empty())
		return std::nullopt;
	return make_context(spec.ps, spec.constraint_exprs());
}

DiracContext require_context(SystemSpec const & spec)
{
	if (spec.constraints.empty())
		throw NotSecondClass("dirac mode needs a [constraints] section");
	return make_context(spec.ps, spec.constraint_exprs());
}

RationalExpr parse_argument(std::string const & text, std::string const & which, PhaseSpace const & ps)
{
	try
	{
		return parse_expression(text, ps);
	}
	catch (Error const & e)
	{
		throw UsageError("--" + which + ": " + e.what());
	}
}

std::optional<PrimarySet> primaries_of(SystemSpec const & spec)
{
	if (spec.primaries.empty())
		return std::nullopt;
	std::vector<std::string> names;
	std::vector<RationalExpr> exprs;
	for (auto const & p : spec.primaries)
	{
		names.push_back(p.name);
		exprs.push_back(p.expr);
	}
	std::optional<RationalExpr> hamiltonian;
	if (spec.hamiltonian)
		hamiltonian = spec.hamiltonian->expr;
	return PrimarySet(std::move(names), std::move(exprs), std::move(hamiltonian));
}

void add_closure(Report & report, SystemSpec const & spec, PrimarySet const & primaries, BracketMode mode,
				 std::optional<DiracContext> const & ctx)
{
	auto const rules = spec.onshell_rules();
	if (mode == BracketMode::dirac)
	{
		if (!ctx)
			throw NotSecondClass("dirac mode needs a [constraints] section");
		report.closure = closure_analysis(primaries, *ctx, rules);
	}
	else
		report.closure = closure_analysis(primaries, spec.ps, rules);
	if (report.closure->closed())
		report.closure_verdict = finite_dim_obstruction(*report.closure);
}

Classification classify_or_throw(SystemSpec const & spec)
{
	Classification const cls = classify_constraints(spec.ps, spec.constraint_exprs(), spec.sampler);
	if (cls.verdict != ConstraintClass::second_class)
		throw NotSecondClass("constraints are not second class (symbolic determinant " +
							 std::string(cls.symbolic_det_nonzero ? "nonzero" : "identically zero") +
							 ", on-shell rank " + std::to_string(cls.on_shell_rank) + ")");
	return cls;
}

int cmd_analyze(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	Report report = base_report(spec);
	Stopwatch watch(report, opts.timings);
	auto const constraints = spec.constraint_exprs();

	report.classification = watch.stage("classify", [&] { return classify_or_throw(spec); });
	auto const ctx = watch.stage("context", [&] { return context_for(spec); });
	report.trace_identity = watch.stage("trace", [&] { return ctx ? trace_identity(*ctx) : trace_identity(spec.ps); });
	if (auto primaries = primaries_of(spec))
		watch.stage("closure", [&] { add_closure(report, spec, *primaries, resolve_mode(opts, spec), ctx); });
	report.verdict = watch.stage("verdict", [&] { return lemma_verdict(spec.ps, constraints, *report.classification); });

	out << emit_report(report, parse_format(opts.format));
	return exit_code::success;
}

int cmd_classify(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	Report report = base_report(spec);
	Stopwatch watch(report, opts.timings);
	report.classification =
		watch.stage("classify", [&] { return classify_constraints(spec.ps, spec.constraint_exprs(), spec.sampler); });
	out << emit_report(report, parse_format(opts.format));
	return exit_code::success;
}

int cmd_trace(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	Report report = base_report(spec);
	auto const ctx = context_for(spec);
	report.trace_identity = ctx ? trace_identity(*ctx) : trace_identity(spec.ps);
	out << emit_report(report, parse_format(opts.format));
	return exit_code::success;
}

int cmd_closure(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	auto const primaries = primaries_of(spec);
	if (!primaries)
		throw UsageError(opts.file + " declares no [primaries]");
	Report report = base_report(spec);
	Stopwatch watch(report, opts.timings);
	BracketMode const mode = resolve_mode(opts, spec);
	std::optional<DiracContext> ctx;
	if (mode == BracketMode::dirac)
		ctx = watch.stage("context", [&] { return require_context(spec); });
	watch.stage("closure", [&] { add_closure(report, spec, *primaries, mode, ctx); });
	out << emit_report(report, parse_format(opts.format));
	return exit_code::success;
}

int cmd_verdict(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	Report report = base_report(spec);
	report.classification = classify_or_throw(spec);
	report.verdict = lemma_verdict(spec.ps, spec.constraint_exprs(), *report.classification);
	out << emit_report(report, parse_format(opts.format));
	return exit_code::success;
}

int cmd_bracket(Options const & opts, std::ostream & out)
{
	SystemSpec const spec = load_system(opts.file);
	RationalExpr const f = parse_argument(opts.f, "f", spec.ps);
	RationalExpr const g = parse_argument(opts.g, "g", spec.ps);
	RationalExpr const value = resolve_mode(opts, spec) == BracketMode::dirac
								   ? dirac_bracket(f, g, require_context(spec))
								   : poisson_bracket(f, g, spec.ps);
	out << print_expression(value, spec.ps) << '\n';
	return exit_code::success;
}

}  // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
	CLI::App app{"Poisson and Dirac bracket analysis of constrained Hamiltonian systems", "dirac"};
	app.set_version_flag("--version", version());
	app.require_subcommand(1);
	Options opts;

	auto add_file = [&](CLI::App * cmd) { cmd->add_option("file", opts.file, "System definition file")->required(); };
	auto add_format = [&](CLI::App * cmd) {
		cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
	};
	auto add_mode = [&](CLI::App * cmd) {
		cmd->add_option("--mode", opts.mode, "Bracket (default: dirac when constraints are declared)")
			->check(CLI::IsMember({"poisson", "dirac"}));
	};
	auto add_timings = [&](CLI::App * cmd) {
		cmd->add_flag("--timings", opts.timings, "Record per-stage wall time in the report");
	};

	auto * analyze = app.add_subcommand("analyze", "Classification, trace identity, closure and verdict");
	add_file(analyze);
	add_format(analyze);
	add_mode(analyze);
	add_timings(analyze);

	auto * bracket = app.add_subcommand("bracket", "Print one Poisson or Dirac bracket");
	add_file(bracket);
	bracket->add_option("--f", opts.f, "Left argument")->required();
	bracket->add_option("--g", opts.g, "Right argument")->required();
	add_mode(bracket);

	auto * classify = app.add_subcommand("classify", "Classify the constraint set");
	add_file(classify);
	add_format(classify);
	add_timings(classify);

	auto * trace = app.add_subcommand("trace", "Evaluate sum_i {x_i, p_i} against n - m");
	add_file(trace);
	add_format(trace);

	auto * closure = app.add_subcommand("closure", "Structure constants and central charges of the primaries");
	add_file(closure);
	add_mode(closure);
	add_format(closure);
	add_timings(closure);

	auto * verdict = app.add_subcommand("verdict", "Finite-dimensionality verdict for the constrained system");
	add_file(verdict);
	add_format(verdict);

	try
	{
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	}
	catch (CLI::ParseError const & e)
	{
		int const code = app.exit(e, out, err);
		return code == 0 ? exit_code::success : exit_code::input_error;
	}

	try
	{
		if (*analyze)
			return cmd_analyze(opts, out);
		if (*bracket)
			return cmd_bracket(opts, out);
		if (*classify)
			return cmd_classify(opts, out);
		if (*trace)
			return cmd_trace(opts, out);
		if (*closure)
			return cmd_closure(opts, out);
		if (*verdict)
			return cmd_verdict(opts, out);
		return exit_code::input_error;
	}
	catch (UsageError const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::input_error;
	}
	catch (IoError const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::input_error;
	}
	catch (ValidationError const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::input_error;
	}
	catch (FileSyntaxError const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::input_error;
	}
	catch (PreconditionViolated const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::input_error;
	}
	catch (NotSecondClass const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::not_second_class;
	}
	catch (OddConstraintCount const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::not_second_class;
	}
	catch (TooManyConstraints const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::not_second_class;
	}
	catch (NoOnShellPoint const & e)
	{
		err << "error: sampling failed: " << e.what() << '\n';
		return exit_code::sampling_failure;
	}
	catch (NonPolynomialInput const & e)
	{
		err << "error: " << e.what() << "\nhint: list constraints under [onshell] (e.g. 'use chi1') so brackets "
									   "are reduced to polynomials before decomposition\n";
		return exit_code::non_polynomial;
	}
	catch (ZeroDenominatorOnShell const & e)
	{
		err << "error: " << e.what() << '\n';
		return exit_code::non_polynomial;
	}
	catch (std::exception const & e)
	{
		err << "internal error: " << e.what() << '\n';
		return exit_code::internal_error;
	}
}

}  // namespace dirac::cli
