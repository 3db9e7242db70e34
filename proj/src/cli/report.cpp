#include "dirac/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "dirac/expression_io.hpp"

namespace dirac::cli
{
namespace
{
using json = nlohmann::ordered_json;

json witness_json(std::optional<Witness> const & witness, PhaseSpace const & ps)
{
	if (!witness)
		return nullptr;
	json w;
	if (witness->kind == Witness::Kind::central_charge)
	{
		w["type"] = "central_charge";
		w["pair"] = json::array({witness->left, witness->right});
	}
	else
		w["type"] = "trace_identity";
	w["value"] = print_expression(witness->value, ps);
	return w;
}

json closure_json(AlgebraReport const & report, std::optional<Verdict> const & obstruction, PhaseSpace const & ps)
{
	std::size_t const k = report.size();
	json out;
	out["mode"] = std::string(to_string(report.mode()));
	out["names"] = report.names();
	out["closed"] = report.closed();
	json c = json::array();
	for (std::size_t a = 0; a < k; ++a)
	{
		json row = json::array();
		for (std::size_t b = 0; b < k; ++b)
		{
			json cell = json::array();
			for (std::size_t j = 0; j < k; ++j)
				cell.push_back(report.c(a, b, j).get_str());
			row.push_back(std::move(cell));
		}
		c.push_back(std::move(row));
	}
	out["c"] = std::move(c);
	json z = json::array();
	for (std::size_t a = 0; a < k; ++a)
	{
		json row = json::array();
		for (std::size_t b = 0; b < k; ++b)
			row.push_back(report.z(a, b).get_str());
		z.push_back(std::move(row));
	}
	out["z"] = std::move(z);
	if (report.has_hamiltonian())
	{
		json h;
		json coefficients = json::array();
		json constant = json::array();
		for (std::size_t a = 0; a < k; ++a)
		{
			json row = json::array();
			for (std::size_t b = 0; b < k; ++b)
				row.push_back(report.h(a, b).get_str());
			coefficients.push_back(std::move(row));
			constant.push_back(report.h_constant(a).get_str());
		}
		h["coefficients"] = std::move(coefficients);
		h["constant"] = std::move(constant);
		out["h"] = std::move(h);
	}
	else
		out["h"] = nullptr;
	json residuals = json::array();
	for (auto const & r : report.residuals())
		residuals.push_back({{"pair", json::array({r.left, r.right})}, {"residual", print_expression(r.remainder, ps)}});
	out["residuals"] = std::move(residuals);
	out["obstruction"] = obstruction ? to_json(*obstruction, ps) : json(nullptr);
	return out;
}

std::string format_ms(double ms)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3f", ms);
	return buf;
}

std::string join(std::vector<std::string> const & items, std::string const & sep)
{
	std::string out;
	for (std::size_t i = 0; i < items.size(); ++i)
		out += (i ? sep : "") + items[i];
	return out;
}

void verdict_text(std::ostringstream & out, std::string const & label, Verdict const & v, PhaseSpace const & ps)
{
	out << label << ": " << to_string(v.kind) << '\n';
	if (v.witness)
	{
		if (v.witness->kind == Witness::Kind::central_charge)
			out << "  witness: z(" << v.witness->left << ", " << v.witness->right
				<< ") = " << print_expression(v.witness->value, ps) << '\n';
		else
			out << "  witness: sum_i {x_i, p_i} = " << print_expression(v.witness->value, ps) << '\n';
	}
	out << "  explanation: " << v.explanation << '\n';
}

std::string linear_combination(std::vector<Rational> const & coeffs, Rational const & constant,
							   std::vector<std::string> const & names)
{
	std::string out;
	auto append = [&](Rational const & q, std::string const & what) {
		if (sgn(q) == 0)
			return;
		bool const negative = sgn(q) < 0;
		out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
		Rational const mag = abs(q);
		if (what.empty())
			out += mag.get_str();
		else
			out += (mag == 1 ? "" : mag.get_str() + "*") + what;
	};
	for (std::size_t j = 0; j < coeffs.size(); ++j)
		append(coeffs[j], names[j]);
	append(constant, "");
	return out.empty() ? "0" : out;
}

}  // namespace

json to_json(Verdict const & verdict, PhaseSpace const & ps)
{
	json out;
	out["kind"] = std::string(to_string(verdict.kind));
	out["witness"] = witness_json(verdict.witness, ps);
	out["explanation"] = verdict.explanation;
	return out;
}

json to_json(Report const & report)
{
	json out;
	out["version"] = report.version;
	out["input_digest"] = report.input_digest;
	out["system"] = {{"n", report.ps.n()}, {"m", report.m}, {"parameters", report.ps.parameters()}};
	if (auto const & c = report.classification)
	{
		out["classification"] = {{"verdict", std::string(to_string(c->verdict))},
								 {"symbolic_det_nonzero", c->symbolic_det_nonzero},
								 {"on_shell_rank", c->on_shell_rank},
								 {"dof_pairs", c->dof_pairs}};
	}
	if (auto const & t = report.trace_identity)
	{
		out["trace_identity"] = {
			{"value", print_expression(t->value, report.ps)}, {"expected", t->expected}, {"holds", t->holds}};
	}
	if (report.closure)
		out["closure"] = closure_json(*report.closure, report.closure_verdict, report.ps);
	if (report.verdict)
		out["verdict"] = to_json(*report.verdict, report.ps);
	json timings = json::object();
	for (auto const & [stage, ms] : report.timings_ms)
		timings[stage] = ms;
	out["timings_ms"] = std::move(timings);
	return out;
}

std::string emit_report(Report const & report, Format format)
{
	if (format == Format::json)
		return to_json(report).dump(2) + "\n";

	std::ostringstream out;
	auto const & ps = report.ps;
	out << "version: " << report.version << '\n';
	out << "input_digest: " << report.input_digest << '\n';
	out << "system: n = " << ps.n() << ", m = " << report.m;
	if (!ps.parameters().empty())
		out << ", parameters = " << join(ps.parameters(), ", ");
	out << '\n';

	if (auto const & c = report.classification)
	{
		out << "classification: " << to_string(c->verdict) << '\n';
		out << "  symbolic_det_nonzero: " << (c->symbolic_det_nonzero ? "true" : "false") << '\n';
		out << "  on_shell_rank: " << c->on_shell_rank << '\n';
		out << "  dof_pairs: " << c->dof_pairs << '\n';
	}
	if (auto const & t = report.trace_identity)
	{
		out << "trace_identity: " << (t->holds ? "holds" : "FAILS") << '\n';
		out << "  value: " << print_expression(t->value, ps) << '\n';
		out << "  expected: " << t->expected << '\n';
	}
	if (auto const & cl = report.closure)
	{
		auto const & names = cl->names();
		out << "closure (" << to_string(cl->mode()) << "): " << (cl->closed() ? "closed" : "not closed") << '\n';
		for (std::size_t a = 0; a < cl->size(); ++a)
		{
			for (std::size_t b = a + 1; b < cl->size(); ++b)
			{
				bool const failed = std::any_of(cl->residuals().begin(), cl->residuals().end(), [&](Residual const & r) {
					return r.left == names[a] && r.right == names[b];
				});
				if (failed)
					continue;
				std::vector<Rational> coeffs;
				for (std::size_t j = 0; j < cl->size(); ++j)
					coeffs.push_back(cl->c(a, b, j));
				out << "  {" << names[a] << ", " << names[b] << "} = " << linear_combination(coeffs, cl->z(a, b), names)
					<< '\n';
			}
		}
		if (cl->has_hamiltonian())
		{
			for (std::size_t a = 0; a < cl->size(); ++a)
			{
				bool const failed = std::any_of(cl->residuals().begin(), cl->residuals().end(), [&](Residual const & r) {
					return r.left == names[a] && r.right == "H";
				});
				if (failed)
					continue;
				std::vector<Rational> coeffs;
				for (std::size_t j = 0; j < cl->size(); ++j)
					coeffs.push_back(cl->h(a, j));
				out << "  {" << names[a] << ", H} = " << linear_combination(coeffs, cl->h_constant(a), names) << '\n';
			}
		}
		for (auto const & r : cl->residuals())
			out << "  residual {" << r.left << ", " << r.right << "}: " << print_expression(r.remainder, ps) << '\n';
		if (report.closure_verdict)
			verdict_text(out, "obstruction", *report.closure_verdict, ps);
	}
	if (report.verdict)
		verdict_text(out, "verdict", *report.verdict, ps);
	if (!report.timings_ms.empty())
	{
		out << "timings_ms:\n";
		for (auto const & [stage, ms] : report.timings_ms)
			out << "  " << stage << ": " << format_ms(ms) << '\n';
	}
	return out.str();
}

}  // namespace dirac::cli
