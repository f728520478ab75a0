// nilq: command-line front end for class-two nilpotent groups and q-maps.
//
// Exit status: 0 success, 1 negative verdict or failed check, 2 input error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nilq/catalog.hpp"
#include "nilq/classify.hpp"
#include "nilq/examples.hpp"
#include "nilq/maltsev.hpp"
#include "nilq/text_format.hpp"
#include "nilq/verify.hpp"

using namespace nilq;

namespace {

constexpr int kOk = 0, kNegative = 1, kInput = 2, kInternal = 3;

struct Context
{
	std::vector<std::string> files;
	Int max_order = 64;
	Definitions defs;

	void load()
	{
		for (auto const &path : files)
		{
			std::ifstream in(path);
			if (!in)
				fail(ErrorKind::InvalidArgument, "cannot read " + path);
			std::stringstream ss;
			ss << in.rdbuf();
			try
			{
				defs = parse_definitions(ss.str(), std::move(defs));
			}
			catch (Error const &e)
			{
				throw Error(e.kind(), path + ": " + strip(e.what()));
			}
		}
	}

	static std::string strip(std::string const &what) { return what.substr(what.find(": ") + 2); }

	Nil2Group group(std::string const &expr) const { return resolve_group(expr, defs); }

	void guard(Nil2Group const &g, std::string const &what) const
	{
		if (!g.is_finite())
			fail(ErrorKind::Unsupported, what + " needs finite groups");
		if (*g.order() > max_order)
			fail(ErrorKind::Unsupported, what + ": order " + std::to_string(*g.order()) + " exceeds --max-order " +
			                                 std::to_string(max_order));
	}
};

std::string order_text(Nil2Group const &g) { return g.is_finite() ? std::to_string(*g.order()) : "infinite"; }

std::string invariants(FGAbelian const &a) { return to_string(canonical_form(a).invariants.orders()); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_info(Context const &c, std::string const &name)
{
	Nil2Group g = c.group(name);
	std::cout << "group: " << name << "\n";
	std::cout << "order: " << order_text(g) << "\n";
	std::cout << "abelianization: " << invariants(g.A()) << "\n";
	std::cout << "commutator: " << invariants(g.B()) << "\n";
	auto z = nil2_center(g).order();
	std::cout << "center-order: " << (z ? std::to_string(*z) : "infinite") << "\n";
	std::cout << "exponent: " << (g.is_finite() ? std::to_string(g.exponent()) : "infinite") << "\n";
	std::cout << "abelian: " << yes_no(g.B().rank() == 0 || g.B().cardinality() == Int(1)) << "\n";
	QSplitResult q = is_qsplit(g);
	std::cout << "q-split: " << (q.structural ? "structural-" : "") << yes_no(q.qsplit) << "\n";
	return kOk;
}

void dump_generator_images(Nil2Group const &g, Nil2Group const &h, std::vector<size_t> const &map)
{
	for (size_t i = 0; i < g.rank(); ++i)
		std::cout << "witness: E" << i + 1 << " -> " << to_string(h.element_at(map[g.index_of(g.generator(i))]))
		          << "\n";
}

int cmd_iso(Context const &c, std::string const &gn, std::string const &hn, std::string const &category,
            bool witness)
{
	Nil2Group g = c.group(gn), h = c.group(hn);
	std::cout << "category: " << category << "\n";
	if (category == "nil")
	{
		c.guard(g, "group isomorphism search");
		c.guard(h, "group isomorphism search");
		auto iso = find_group_iso(g, h);
		std::cout << "path: group-iso-search " << (iso ? "YES" : "NO") << "\n";
		std::cout << "verdict: " << (iso ? "YES" : "NO") << "\n";
		if (iso && witness)
			dump_generator_images(g, h, *iso);
		return iso ? kOk : kNegative;
	}
	if (!g.is_finite() || !h.is_finite())
		fail(ErrorKind::Unsupported, "iso needs finite groups");
	NiqDecision d = niq_iso_decide(g, h, {witness, c.max_order});
	for (auto const &p : d.paths)
		std::cout << "path: " << p.path << " " << (p.isomorphic ? "YES" : "NO") << "\n";
	if (d.search && d.search->candidates == 0 && d.search->found())
		std::cout << "search: identity\n";
	else if (d.search)
		std::cout << "search: candidates=" << d.search->candidates << " bijective=" << d.search->bijective
		          << " inverse-rejected=" << d.search->inverse_rejected
		          << " direction=" << (d.search->reversed ? hn + "->" + gn : gn + "->" + hn) << "\n";
	std::cout << "verdict: " << (d.isomorphic ? "YES" : "NO") << "\n";
	if (witness && d.isomorphic)
	{
		if (d.forward && d.backward)
		{
			std::cout << format_qmap("forward", gn, hn, *d.forward);
			std::cout << format_qmap("backward", hn, gn, *d.backward);
		}
		else if (d.bolo_witness)
			std::cout << format_qmap("forward", gn, hn, bolo_witness_qmap(g, h, *d.bolo_witness));
	}
	return d.isomorphic ? kOk : kNegative;
}

int cmd_qsplit(Context const &c, std::string const &name, bool witness)
{
	Nil2Group g = c.group(name);
	QSplitResult q = is_qsplit(g);
	std::cout << "path: " << (q.structural ? "relations" : "section-search") << "\n";
	std::cout << "verdict: " << (q.qsplit ? "YES" : "NO") << "\n";
	if (witness && q.section)
		std::cout << format_qmap("section", detail::body_text(g.A(), FGAbelian(), {}, {}, "bil"), name, *q.section);
	return q.qsplit ? kOk : kNegative;
}

int cmd_similar(Context const &c, std::string const &gn, std::string const &hn)
{
	Nil2Group g = c.group(gn), h = c.group(hn);
	std::cout << gn << ": abelianization " << invariants(g.A()) << " commutator " << invariants(g.B()) << "\n";
	std::cout << hn << ": abelianization " << invariants(h.A()) << " commutator " << invariants(h.B()) << "\n";
	bool s = similar(g, h);
	std::cout << "verdict: " << (s ? "YES" : "NO") << "\n";
	return s ? kOk : kNegative;
}

int cmd_count(Context const &c, std::string const &gn, std::string const &hn)
{
	Nil2Group g = c.group(gn), h = c.group(hn);
	c.guard(h, "count");
	if (g == nil2_free(1))
	{
		// qw(Z, H) = { f_{a,b} : a ∈ H, b ∈ [H,H] }
		std::cout << "qmaps: " << *h.order() * *h.B().cardinality() << "\n";
		std::cout << "path: f_{a,b}\n";
		return kOk;
	}
	c.guard(g, "count");
	Int homs = 0;
	qmap_for_each(g, h, [&](QMap const &f) {
		homs += f.is_hom() ? 1 : 0;
		return true;
	});
	std::cout << "qmaps: " << qmap_count(g, h) << "\n";
	std::cout << "homomorphisms: " << homs << "\n";
	return kOk;
}

std::string read_qmap_arg(std::string const &arg)
{
	std::ifstream in(arg);
	if (in && arg.find('{') == std::string::npos)
	{
		std::stringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}
	return arg;
}

int cmd_check_qmap(Context const &c, std::string const &gn, std::string const &hn, std::string const &arg)
{
	Nil2Group g = c.group(gn), h = c.group(hn);
	std::optional<QMap> parsed = c.defs.qmap(arg);
	if (!parsed)
		try
		{
			parsed = parse_qmap_text(read_qmap_arg(arg), g, h, c.defs);
		}
		catch (Error const &e)
		{
			if (e.kind() != ErrorKind::NotAQMap)
				throw;
			std::cout << "valid: no\nreason: " << Context::strip(e.what()) << "\n";
			return kNegative;
		}
	QMap const &f = *parsed;
	if (!(f.source() == g) || !(f.target() == h))
		fail(ErrorKind::InvalidArgument, "qmap endpoints differ from " + gn + " -> " + hn);
	QMapValidation v = qmap_validate(f, g.is_finite() && *g.order() <= c.max_order * c.max_order);
	bool ok = !v.relation_failure && (!v.exhaustive || *v.exhaustive);
	std::cout << "valid: " << yes_no(ok) << "\n";
	if (v.relation_failure)
		std::cout << "reason: " << *v.relation_failure << "\n";
	if (v.exhaustive)
		std::cout << "definition-check: " << (*v.exhaustive ? "PASS" : "FAIL") << "\n";
	if (v.discrepancy)
		fail(ErrorKind::InvariantViolation, "relation check and definition check disagree");
	std::cout << "fab: " << to_string(f.fab().matrix()) << "\n";
	std::cout << "fcomm: " << to_string(f.fcomm().matrix()) << "\n";
	std::cout << "homomorphism: " << yes_no(f.is_hom()) << "\n";
	QMapBeta b = qmap_beta(f);
	std::cout << "beta: ker(fab)=" << invariants(b.kernel.group()) << " -> coker(fcomm)="
	          << invariants(b.image.quotient()) << " " << to_string(b.map.matrix()) << "\n";
	return ok ? kOk : kNegative;
}

int cmd_catalog(Context const &c)
{
	for (auto const &[name, g] : catalog())
		if (!g.is_finite() || *g.order() <= c.max_order)
			std::cout << name << " order=" << order_text(g) << " abelianization=" << invariants(g.A())
			          << " commutator=" << invariants(g.B()) << "\n";
	for (auto const &[name, g] : c.defs.groups)
		std::cout << name << " order=" << order_text(g) << " abelianization=" << invariants(g.A())
		          << " commutator=" << invariants(g.B()) << " (file)\n";
	return kOk;
}

int print_report(Report const &r)
{
	std::cout << r.str();
	std::cout << (r.ok() ? "PASS" : "FAIL") << " total checks=" << r.lines().size() << " failures=" << r.failures()
	          << "\n";
	return r.ok() ? kOk : kNegative;
}

int exit_for(ErrorKind k) { return k == ErrorKind::InvariantViolation ? kInternal : kInput; }

} // namespace

int main(int argc, char **argv)
{
	Context ctx;
	CLI::App app{"nilq: class-two nilpotent groups, q-maps and the category Niq"};
	app.require_subcommand(1);
	app.fallthrough();
	app.add_option("--file,-f", ctx.files, "group definition file (repeatable)")->check(CLI::ExistingFile);
	app.add_option("--max-order", ctx.max_order, "guard on search spaces")->check(CLI::PositiveNumber);

	std::string g, h, arg, category = "niq", suite = "all", example;
	bool witness = false;
	int status = kOk;
	std::function<int()> run;

	auto *info = app.add_subcommand("info", "order, invariants, center, exponent and q-split verdict");
	info->add_option("group", g, "name, builder or { ... } body")->required();
	info->callback([&] { run = [&] { return cmd_info(ctx, g); }; });

	auto *iso = app.add_subcommand("iso", "decide isomorphism in Nil or Niq");
	iso->add_option("G", g)->required();
	iso->add_option("H", h)->required();
	iso->add_option("--category", category)->check(CLI::IsMember({"nil", "niq"}));
	iso->add_flag("--witness", witness, "print a witness; for niq also cross-check by search");
	iso->callback([&] { run = [&] { return cmd_iso(ctx, g, h, category, witness); }; });

	auto *qs = app.add_subcommand("qsplit", "decide q-splitness");
	qs->add_option("group", g)->required();
	qs->add_flag("--witness", witness, "print the section");
	qs->callback([&] { run = [&] { return cmd_qsplit(ctx, g, witness); }; });

	auto *sim = app.add_subcommand("similar", "compare abelianizations and commutator subgroups");
	sim->add_option("G", g)->required();
	sim->add_option("H", h)->required();
	sim->callback([&] { run = [&] { return cmd_similar(ctx, g, h); }; });

	auto *cnt = app.add_subcommand("count", "count q-maps and homomorphisms G -> H");
	cnt->add_option("G", g)->required();
	cnt->add_option("H", h)->required();
	cnt->callback([&] { run = [&] { return cmd_count(ctx, g, h); }; });

	auto *chk = app.add_subcommand("check-qmap", "validate q-map data G -> H");
	chk->add_option("G", g)->required();
	chk->add_option("H", h)->required();
	chk->add_option("qmap", arg, "defined name, file, or qmap { ... } text")->required();
	chk->callback([&] { run = [&] { return cmd_check_qmap(ctx, g, h, arg); }; });

	auto *log = app.add_subcommand("lie-log", "the Lie ring of an odd-order group");
	log->add_option("group", g)->required();
	log->callback([&] {
		run = [&] {
			std::cout << format_lie("L", lie_log(ctx.group(g)));
			return kOk;
		};
	});

	auto *exp = app.add_subcommand("lie-exp", "the group of an odd-order Lie ring");
	exp->add_option("lie", arg, "defined name or { ... } body")->required();
	exp->callback([&] {
		run = [&] {
			std::cout << format_group("G", lie_exp(resolve_lie(arg, ctx.defs)));
			return kOk;
		};
	});

	auto *show = app.add_subcommand("show", "print a group in the definition format");
	show->add_option("group", g)->required();
	show->callback([&] {
		run = [&] {
			std::cout << format_group("G", ctx.group(g));
			return kOk;
		};
	});

	auto *cat = app.add_subcommand("catalog", "list catalog groups up to --max-order");
	cat->callback([&] { run = [&] { return cmd_catalog(ctx); }; });

	auto *self = app.add_subcommand("selftest", "run verification suites");
	self->add_option("suite,--suite", suite, "suite tag or all");
	self->callback([&] {
		run = [&] {
			std::vector<std::string> tags = suite_tags();
			if (suite != "all" && std::find(tags.begin(), tags.end(), suite) == tags.end())
				fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
			int s = print_report(run_suite(suite, {ctx.max_order}));
			return s == kOk ? kOk : kInternal;
		};
	});

	auto *ex = app.add_subcommand("example", "run a worked example");
	ex->add_option("name", example, "example name, all, or list")->required();
	ex->callback([&] {
		run = [&] {
			if (example == "list")
			{
				for (auto const &n : example_names())
					std::cout << n << "\n";
				return kOk;
			}
			return print_report(run_example(example, {ctx.max_order}));
		};
	});

	try
	{
		app.parse(argc, argv);
	}
	catch (CLI::ParseError const &e)
	{
		int code = app.exit(e);
		return code == 0 ? kOk : kInput;
	}
	try
	{
		ctx.load();
		status = run();
	}
	catch (Error const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_for(e.kind());
	}
	catch (std::exception const &e)
	{
		std::cerr << "internal error: " << e.what() << "\n";
		return kInternal;
	}
	std::cout.flush();
	return status;
}
