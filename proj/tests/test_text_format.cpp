#include <gtest/gtest.h>

#include "nilq/catalog.hpp"
#include "nilq/classify.hpp"
#include "nilq/text_format.hpp"
#include "oracles.hpp"

using namespace nilq;

namespace {

std::string table_text(GroupOracle const &o)
{
	std::string s = "oracle { table = [";
	for (size_t i = 0; i < o.size(); ++i)
	{
		s += i ? ",[" : "[";
		for (size_t j = 0; j < o.size(); ++j)
			s += (j ? "," : "") + std::to_string(o.add(i, j) + 1);
		s += "]";
	}
	return s + "]; }";
}

void expect_parse_error(std::string const &text, std::string const &needle)
{
	try
	{
		parse_definitions(text);
		ADD_FAILURE() << "accepted: " << text;
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::Parse) << e.what();
		EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
	}
}

} // namespace

TEST(TextFormat, QuaternionBody)
{
	Definitions d = parse_definitions(R"(
# the quaternion group
group Q { abelianization = [2,2]; commutator = [2]; carry = [[1],[1]]; bil[1][2] = [1]; }
)");
	ASSERT_EQ(d.groups.size(), 1u);
	EXPECT_EQ(d.groups[0].first, "Q");
	EXPECT_EQ(d.groups[0].second, catalog_q8());
	EXPECT_EQ(*d.group("Q"), catalog_q8());
	EXPECT_EQ(*d.group("D4"), catalog_d4());
	EXPECT_FALSE(d.group("nope").has_value());
}

TEST(TextFormat, RoundTripsCatalog)
{
	for (auto const &[name, g] : catalog())
	{
		std::string text = format_group("G", g);
		Definitions d = parse_definitions(text);
		ASSERT_EQ(d.groups.size(), 1u) << name;
		EXPECT_EQ(d.groups[0].second, g) << name << "\n" << text;
	}
}

TEST(TextFormat, Builders)
{
	Definitions d = parse_definitions(R"(
group M = semidirect(9,3,4)
group P = product(Q8, Z2);
group C = coproduct(Z2, Z2)
group F = free(2)
group N = product(M, coproduct(Z, free(1)))
)");
	Nil2Group m = *d.group("M");
	EXPECT_EQ(*m.order(), 27);
	EXPECT_FALSE(is_qsplit(m).qsplit);
	EXPECT_TRUE(find_group_iso(m, *catalog_lookup("Z9:Z3")).has_value());
	EXPECT_EQ(*d.group("P"), *catalog_lookup("Q8xZ2"));
	EXPECT_TRUE(find_group_iso(*d.group("C"), catalog_d4()).has_value());
	EXPECT_EQ(*d.group("F"), nil2_free(2));
	Nil2Group n = *d.group("N");
	EXPECT_FALSE(n.is_finite());
	EXPECT_EQ(n.A().rank(), 4u);
}

TEST(TextFormat, OracleTables)
{
	Definitions d = parse_definitions("group T = " + table_text(oracles::quaternion_table()) + "\n" +
	                                  "group U = " + table_text(oracles::dihedral_table()));
	EXPECT_TRUE(find_group_iso(*d.group("T"), catalog_q8()).has_value());
	EXPECT_TRUE(find_group_iso(*d.group("U"), catalog_d4()).has_value());
	EXPECT_FALSE(find_group_iso(*d.group("T"), *d.group("U")).has_value());
	Definitions l = parse_definitions("group V = oracle { labels = [e, a]; table = [[1,2],[2,1]]; }");
	EXPECT_EQ(*l.group("V")->order(), 2);
	// S3 is a group but not of class two
	std::string s3 = "group S = oracle { table = [[1,2,3,4,5,6],[2,3,1,6,4,5],[3,1,2,5,6,4],"
	                 "[4,5,6,1,2,3],[5,6,4,3,1,2],[6,4,5,2,3,1]]; }";
	EXPECT_THROW(parse_definitions(s3), Error);
}

TEST(TextFormat, LieAndQMap)
{
	Definitions d = parse_definitions(R"(
lie L { abelianization = [3,3]; commutator = [3]; bracket[1][2] = [1]; bracket[2][1] = [-1]; }
qmap id : Q8 -> Q8 { fab = [[1,0],[0,1]]; fcomm = [[1]]; }
qmap z : D4 -> Q8 { }
)");
	Nil2LieRing l = *d.lie("L");
	EXPECT_EQ(l.order(), 27);
	EXPECT_EQ(lie_log(lie_exp(l)), l);
	EXPECT_EQ(*d.qmap("id"), QMap::identity(catalog_q8()));
	EXPECT_EQ(*d.qmap("z"), QMap::zero(catalog_d4(), catalog_q8()));
	bool seen = false;
	for (QMap const &f : qmap_enumerate(catalog_q8(), catalog_q8()))
	{
		std::string text = format_qmap("s", "Q8", "Q8", f);
		if (text.find("gamma") == std::string::npos || text.find("delta") == std::string::npos)
			continue;
		QMap back = *parse_definitions(text).qmap("s");
		EXPECT_EQ(back, f) << text;
		EXPECT_TRUE(qmap_satisfies_definition(back));
		seen = true;
		break;
	}
	EXPECT_TRUE(seen);
	EXPECT_FALSE(d.qmap("L").has_value());
}

TEST(TextFormat, QMapRoundTrip)
{
	Nil2Group g = catalog_d4(), h = catalog_q8();
	auto fs = qmap_enumerate(g, h);
	for (size_t i = 0; i < fs.size(); i += 9)
	{
		std::string text = format_qmap("f", "D4", "Q8", fs[i]);
		EXPECT_EQ(*parse_definitions(text).qmap("f"), fs[i]) << text;
	}
	Nil2LieRing l = lie_log(*catalog_lookup("Z9:Z3"));
	EXPECT_EQ(*parse_definitions(format_lie("L", l)).lie("L"), l);
}

TEST(TextFormat, InvalidQMapIsNotAQMap)
{
	try
	{
		parse_definitions("\n\nqmap f : Z2 -> Q8 { fab = [[1],[0]]; }");
		ADD_FAILURE();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::NotAQMap);
		EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
	}
}

TEST(TextFormat, Errors)
{
	expect_parse_error("group A = free(1)\ngroup A = free(2)", "line 2: duplicate definition of 'A'");
	expect_parse_error("group A = free(1)\nlie A { abelianization = [3]; }", "line 2: duplicate");
	expect_parse_error("group A = Y", "line 1: unknown group 'Y'");
	expect_parse_error("group A {\n abelianization = [2,2];\n bil[3][1] = [1]; }", "line 3: index 3 out of range");
	expect_parse_error("group A { abelianization = [2] commutator = [] }", "expected ';' or '}'");
	expect_parse_error("group A { abelianization = [2]; $ }", "unexpected character '$'");
	expect_parse_error("group A { abelianization = [2,2]; commutator = [2];\n\n bil[1][2] = [1,0]; }",
	                   "line 3: expected 1 coordinates");
	expect_parse_error("group A { colour = [2]; }", "unknown field 'colour'");
	expect_parse_error("frobnicate A", "expected 'group', 'lie' or 'qmap'");
	expect_parse_error("group A { commutator = [2]; }", "missing 'abelianization'");
	expect_parse_error("group A = oracle { table = [[1,2],[1,2]]; }", "no identity");
	expect_parse_error("group A = oracle { table = [[1,3],[2,1]]; }", "out of range");
	expect_parse_error("group A = product(Q8 Z2)", "expected ','");
}

TEST(TextFormat, ConstructionErrorsKeepTheirKind)
{
	auto kind = [](std::string const &t) {
		try
		{
			parse_definitions(t);
		}
		catch (Error const &e)
		{
			return e.kind();
		}
		return ErrorKind::InvariantViolation;
	};
	EXPECT_EQ(kind("group A { abelianization = [2,2]; commutator = [3]; bil[1][2] = [1]; }"),
	          ErrorKind::InvalidCocycle);
	EXPECT_EQ(kind("group A { abelianization = [2,2]; commutator = [2]; }"), ErrorKind::CommutatorMismatch);
	EXPECT_EQ(kind("lie L { abelianization = [2]; }"), ErrorKind::NotUniquely2Divisible);
	EXPECT_EQ(kind("group A = semidirect(9,3,2)"), ErrorKind::NotAnAction);
}

TEST(TextFormat, ResolveInline)
{
	EXPECT_EQ(*resolve_group("semidirect(9,3,4)").order(), 27);
	EXPECT_EQ(resolve_group("free(2)"), nil2_free(2));
	EXPECT_EQ(resolve_group("Q8"), catalog_q8());
	EXPECT_EQ(resolve_group("{ abelianization = [2,2]; commutator = [2]; carry = [[1],[1]]; bil[1][2] = [1]; }"),
	          catalog_q8());
	Definitions d = parse_definitions("group K = product(Z3, Z3)");
	EXPECT_EQ(resolve_group("coproduct(K, Z2)", d), nil2_coproduct(*d.group("K"), catalog_abelian({2})));
	EXPECT_THROW(resolve_group("Q8 Q8"), Error);
	EXPECT_THROW(resolve_group(""), Error);
}

TEST(TextFormat, OracleProductLines)
{
	std::string z4 = "group C = oracle {\n labels = [e, a, b, c]\n id = e\n";
	char const *l = "eabc";
	for (int i = 0; i < 4; ++i)
		for (int j = 0; j < 4; ++j)
			z4 += std::string(" ") + l[i] + " * " + l[j] + " = " + l[(i + j) % 4] + "\n";
	Definitions d = parse_definitions(z4 + "}");
	EXPECT_TRUE(find_group_iso(*d.group("C"), catalog_abelian({4})).has_value());
	expect_parse_error("group C = oracle { labels = [e, a]; id = e; e * e = e; e * a = a; a * e = a }",
	                   "not total: missing a * a");
	expect_parse_error("group C = oracle { labels = [e, a]; e * e = e; e * e = a }", "given twice");
	expect_parse_error("group C = oracle { labels = [e, a]; e * x = e }", "unknown label 'x'");
	expect_parse_error("group C = oracle { labels = [e, e]; e * e = e }", "duplicate label");
}

TEST(TextFormat, AnonymousQMap)
{
	QMap f = parse_qmap_text("qmap { fab = [[1,0],[0,1]]; fcomm = [[1]]; }", catalog_q8(), catalog_q8());
	EXPECT_EQ(f, QMap::identity(catalog_q8()));
	Nil2Group z2 = catalog_abelian({2});
	QMap g = parse_qmap_text("qmap { fab = [[0],[1]]; gamma = [1] }", z2, catalog_d4());
	EXPECT_TRUE(qmap_satisfies_definition(g));
	EXPECT_EQ(g.eval(z2.generator(0)), catalog_d4().add(catalog_d4().generator(1),
	                                                      catalog_d4().central(catalog_d4().B().generator(0))));
	QMap n = parse_qmap_text("qmap z : D4 -> Q8 { }", z2, z2);
	EXPECT_EQ(n, QMap::zero(catalog_d4(), catalog_q8()));
	EXPECT_THROW(parse_definitions("qmap { }"), Error);
	EXPECT_THROW(parse_qmap_text("qmap { } qmap { }", z2, z2), Error);
	EXPECT_THROW(parse_qmap_text("group A = free(1)", z2, z2), Error);
}
