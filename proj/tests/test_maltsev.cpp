#include <gtest/gtest.h>

#include <set>

#include "nilq/catalog.hpp"
#include "nilq/classify.hpp"
#include "nilq/maltsev.hpp"
#include "nilq/oracle.hpp"
#include "oracles.hpp"

using namespace nilq;

namespace {

Nil2Group named(std::string const &n) { return *catalog_lookup(n); }

Nil2LieRing heis_lie(Int p)
{
	FGAbelian a = ab_make({p, p}), b = ab_make({p});
	BMatrix br(2, std::vector<AbElement>(2, b.zero()));
	br[0][1] = b.element({1});
	br[1][0] = b.element({-1});
	return lie_make(a, b, {}, br);
}

std::vector<std::pair<std::string, Nil2Group>> odd_catalog(Int max_order)
{
	std::vector<std::pair<std::string, Nil2Group>> out;
	for (auto &[n, g] : catalog_finite(max_order))
		if (*g.order() % 2 == 1)
			out.emplace_back(n, g);
	return out;
}

} // namespace

TEST(LieMake, HeisenbergAxioms)
{
	Nil2LieRing l = heis_lie(3);
	EXPECT_EQ(l.order(), 27);
	auto xs = l.elements();
	for (auto const &x : xs)
	{
		EXPECT_EQ(l.bracket(x, x), l.zero());
		for (auto const &y : xs)
		{
			EXPECT_EQ(l.add(x, y), l.add(y, x));
			EXPECT_EQ(l.bracket(x, y), l.neg(l.bracket(y, x)));
			for (auto const &z : xs)
			{
				EXPECT_EQ(l.add(l.add(x, y), z), l.add(x, l.add(y, z)));
				EXPECT_EQ(l.bracket(l.add(x, y), z), l.add(l.bracket(x, z), l.bracket(y, z)));
				// Jacobi; every term is zero in class two
				Nil2Element j = l.add(l.add(l.bracket(x, l.bracket(y, z)), l.bracket(y, l.bracket(z, x))),
				                      l.bracket(z, l.bracket(x, y)));
				EXPECT_EQ(j, l.zero());
				EXPECT_EQ(l.bracket(l.bracket(x, y), z), l.zero());
			}
		}
		EXPECT_EQ(l.add(x, l.neg(x)), l.zero());
		EXPECT_EQ(l.scale(l.half(x), 2), x);
	}
}

TEST(LieMake, Errors)
{
	FGAbelian b = ab_make({3});
	auto kind = [](auto &&fn) {
		try
		{
			fn();
		}
		catch (Error const &e)
		{
			return e.kind();
		}
		return ErrorKind::Parse;
	};
	EXPECT_EQ(kind([] { lie_make(ab_make({2}), FGAbelian(), {}, {}); }),
	          ErrorKind::NotUniquely2Divisible);
	EXPECT_EQ(kind([] { lie_make(ab_make({0}), FGAbelian(), {}, {}); }),
	          ErrorKind::NotUniquely2Divisible);
	EXPECT_EQ(kind([&] { lie_make(ab_make({3, 3}), b, {}, {}); }), ErrorKind::CommutatorMismatch);
	BMatrix sym(2, std::vector<AbElement>(2, b.zero()));
	sym[0][1] = sym[1][0] = b.element({1});
	EXPECT_EQ(kind([&] { lie_make(ab_make({3, 3}), b, {}, sym); }), ErrorKind::InvalidBracket);
	BMatrix tors(2, std::vector<AbElement>(2, ab_make({9}).zero()));
	tors[0][1] = ab_make({9}).element({1});
	tors[1][0] = ab_make({9}).element({-1});
	EXPECT_EQ(kind([&] { lie_make(ab_make({3, 3}), ab_make({9}), {}, tors); }),
	          ErrorKind::InvalidBracket);
	// abelian Lie ring with B = 0 is fine
	EXPECT_NO_THROW(lie_make(ab_make({3, 9}), FGAbelian(), {}, {}));
	EXPECT_THROW(lie_log(catalog_q8()), Error);
}

TEST(LieExp, HeisenbergModThree)
{
	Nil2LieRing l = heis_lie(3);
	Nil2Group g = lie_exp(l);
	EXPECT_EQ(*g.order(), 27);
	EXPECT_EQ(g.exponent(), 3);
	EXPECT_TRUE(find_group_iso(g, named("Z3vZ3")).has_value());
	EXPECT_TRUE(find_group_iso(g, named("Heis3")).has_value());
	EXPECT_FALSE(find_group_iso(g, named("Z9:Z3")).has_value());
}

TEST(LieExp, LawAndCommutatorAgainstFormula)
{
	// a ⊕ b = a + b + ½[a, b], evaluated with the Lie ring operations only
	for (auto const &[name, g] : odd_catalog(27))
	{
		Nil2LieRing l = lie_log(g);
		Nil2Group e = lie_exp(l);
		auto xs = l.elements();
		for (auto const &a : xs)
			for (auto const &b : xs)
			{
				Nil2Element want = l.add(l.add(a, b), l.half(l.bracket(a, b)));
				ASSERT_EQ(e.add(a, b), want) << name;
				ASSERT_EQ(e.commutator(a, b), l.bracket(a, b)) << name;
			}
	}
}

TEST(LieExp, AbelianIsIdentity)
{
	Nil2LieRing l = lie_make(ab_make({3, 9}), FGAbelian(), {}, {});
	Nil2Group g = lie_exp(l);
	EXPECT_TRUE(g.is_abelian());
	for (auto const &a : l.elements())
		for (auto const &b : l.elements())
			EXPECT_EQ(g.add(a, b), l.add(a, b));
}

TEST(LieLog, RoundTripsOnOddCatalog)
{
	for (auto const &[name, g] : odd_catalog(125))
	{
		Nil2LieRing l = lie_log(g);
		EXPECT_EQ(lie_log(lie_exp(l)), l) << name;
		// exp(log G) -> G, a ↦ lie_exp_element(G, a), is a group isomorphism
		Nil2Group e = lie_exp(l);
		std::set<size_t> image;
		for (auto const &a : l.elements())
		{
			image.insert(g.index_of(lie_exp_element(g, a)));
			EXPECT_EQ(lie_log_element(g, lie_exp_element(g, a)), a);
		}
		EXPECT_EQ(image.size(), static_cast<size_t>(*g.order())) << name;
		auto xs = l.elements();
		for (size_t i = 0; i < xs.size(); i += (xs.size() > 27 ? 7 : 1))
			for (auto const &b : xs)
				ASSERT_EQ(lie_exp_element(g, e.add(xs[i], b)),
				          g.add(lie_exp_element(g, xs[i]), lie_exp_element(g, b)))
				    << name;
	}
}

TEST(LieLog, AdditionFromGroupLaw)
{
	// a + b = a ⊕ b ⊕ ½[b, a] on the set of G
	for (auto const &[name, g] : odd_catalog(27))
	{
		Nil2LieRing l = lie_log(g);
		Int half = (*g.order() + 1) / 2;
		auto xs = nil2_enumerate(g);
		for (auto const &x : xs)
			for (auto const &y : xs)
			{
				Nil2Element viaG = g.add(g.add(x, y), g.multiple(g.commutator(y, x), half));
				Nil2Element viaL = lie_exp_element(g, l.add(lie_log_element(g, x), lie_log_element(g, y)));
				ASSERT_EQ(viaG, viaL) << name;
				ASSERT_EQ(lie_log_element(g, g.commutator(x, y)),
				          l.bracket(lie_log_element(g, x), lie_log_element(g, y)))
				    << name;
			}
	}
}

TEST(Decompose, Homomorphisms)
{
	Nil2Group h = named("Heis3");
	size_t seen = 0;
	for (auto const &f : qmap_enumerate(h, h))
	{
		if (!f.is_hom())
			continue;
		++seen;
		QMapDecomposition d = lie_qmap_decompose(f);
		for (auto const &row : d.h)
			for (auto const &x : row)
				EXPECT_TRUE(h.B().is_zero(x));
		for (auto const &z : nil2_enumerate(h))
			EXPECT_EQ(lie_exp_element(h, d.g.apply(lie_log_element(h, z))), f.eval(z));
	}
	EXPECT_GT(seen, 0u);
}

TEST(Decompose, PowerMaps)
{
	for (auto const &n : {"Heis3", "Z9:Z3"})
	{
		Nil2Group g = named(n);
		Nil2LieRing l = lie_log(g);
		for (Int k = -2; k <= 4; ++k)
		{
			QMapDecomposition d = lie_qmap_decompose(qmap_power(g, k));
			for (size_t i = 0; i < g.rank(); ++i)
				EXPECT_EQ(d.g.images[i], l.scale(l.generator(i), k));
			EXPECT_EQ(d.g.comm, AbHom::identity(g.B()).scaled(k));
			// multiples of one element agree on both sides, so h vanishes
			for (auto const &row : d.h)
				for (auto const &x : row)
					EXPECT_TRUE(g.B().is_zero(x));
		}
	}
}

TEST(Decompose, CrossEffectAndRoundTrip)
{
	for (auto const &[gn, hn] : std::vector<std::pair<std::string, std::string>>{
	         {"Heis3", "Heis3"}, {"Z9:Z3", "Heis3"}, {"Heis3", "Z9:Z3"}, {"Z3xZ3", "Heis3"}})
	{
		Nil2Group g = named(gn), h = named(hn);
		Nil2LieRing l = lie_log(g), m = lie_log(h);
		auto fs = qmap_enumerate(g, h);
		auto xs = l.elements();
		for (size_t i = 0; i < fs.size(); i += 97)
		{
			QMap const &f = fs[i];
			QMapDecomposition d = lie_qmap_decompose(f);
			auto F = [&](Nil2Element const &a) {
				return lie_log_element(h, f.eval(lie_exp_element(g, a)));
			};
			for (size_t r = 0; r < g.rank(); ++r)
				for (size_t s = 0; s < g.rank(); ++s)
					EXPECT_EQ(d.h[r][s], d.h[s][r]);
			for (auto const &a : xs)
			{
				ASSERT_EQ(d.eval(a), F(a)) << gn << "->" << hn << " #" << i;
				for (auto const &b : xs)
				{
					Nil2Element cross = m.sub(F(l.add(a, b)), m.add(F(a), F(b)));
					ASSERT_EQ(cross, m.central(d.quadratic(a.a, b.a)));
					ASSERT_EQ(d.g.apply(l.add(a, b)), m.add(d.g.apply(a), d.g.apply(b)));
				}
			}
			QMap back = lie_qmap_recompose(d);
			EXPECT_EQ(back, f);
			QMapDecomposition again = lie_qmap_decompose(back);
			EXPECT_EQ(again.g.images, d.g.images);
			EXPECT_EQ(again.g.comm, d.g.comm);
			EXPECT_EQ(again.h, d.h);
		}
	}
}

TEST(Decompose, ThreeCharacterizationsAgree)
{
	// (ii) q-maps of the groups, (iii) pairs (g, h), (i) q-maps of the Lie rings
	for (auto const &[gn, hn] : std::vector<std::pair<std::string, std::string>>{
	         {"Heis3", "Heis3"}, {"Heis3", "Z9:Z3"}, {"Z9:Z3", "Heis3"}, {"Z9:Z3", "Z9:Z3"}})
	{
		Nil2Group g = named(gn), h = named(hn);
		Nil2LieRing l = lie_log(g), m = lie_log(h);
		std::set<std::vector<size_t>> groups_side;
		for (auto const &f : qmap_enumerate(g, h))
			groups_side.insert(oracles::values(f));
		std::set<std::vector<size_t>> pairs_side;
		auto zs = nil2_enumerate(g);
		lie_for_each_linear(l, m, [&](LieLinearMap const &lin) {
			lie_for_each_symmetric(g.A(), h.B(), [&](BMatrix const &hm) {
				QMapDecomposition d{g, h, lin, hm};
				std::vector<size_t> t;
				for (auto const &z : zs)
					t.push_back(h.index_of(d.eval_group(z)));
				pairs_side.insert(std::move(t));
				return true;
			});
			return true;
		});
		EXPECT_EQ(groups_side, pairs_side) << gn << "->" << hn;

		// Lie-side q-map conditions, sampled over the common set
		auto xs = l.elements();
		std::vector<Nil2Element> comms;
		for (auto const &a : xs)
			if (l.A().is_zero(a.a))
				comms.push_back(a);
		size_t k = 0;
		for (auto const &t : groups_side)
		{
			if (k++ % 53)
				continue;
			auto F = [&](Nil2Element const &a) {
				return lie_log_element(h, h.element_at(t[g.index_of(lie_exp_element(g, a))]));
			};
			auto cross = [&](Nil2Element const &a, Nil2Element const &b) {
				return m.sub(F(l.add(a, b)), m.add(F(a), F(b)));
			};
			for (auto const &a : xs)
				for (auto const &b : xs)
				{
					Nil2Element c = cross(a, b);
					ASSERT_TRUE(m.A().is_zero(c.a));
					for (size_t s = 0; s < xs.size(); s += 5)
						ASSERT_EQ(cross(l.add(a, xs[s]), b), m.add(c, cross(xs[s], b)));
				}
			for (auto const &c : comms)
			{
				ASSERT_TRUE(m.A().is_zero(F(c).a));
				for (auto const &a : xs)
					ASSERT_EQ(F(l.add(a, c)), m.add(F(a), F(c)));
			}
		}
	}
}

TEST(Exp, FunctorialOnLinearMaps)
{
	// a linear map is additive for ⊕ iff it preserves the bracket
	Nil2LieRing l = heis_lie(3);
	Nil2Group e = lie_exp(l);
	auto xs = l.elements();
	size_t homs = 0, total = 0;
	lie_for_each_linear(l, l, [&](LieLinearMap const &g) {
		++total;
		bool lie_hom = true, group_hom = true;
		for (auto const &a : xs)
			for (auto const &b : xs)
			{
				lie_hom = lie_hom && g.apply(l.bracket(a, b)) == l.bracket(g.apply(a), g.apply(b));
				group_hom = group_hom && g.apply(e.add(a, b)) == e.add(g.apply(a), g.apply(b));
			}
		EXPECT_EQ(lie_hom, group_hom);
		homs += lie_hom;
		return true;
	});
	EXPECT_GT(homs, 0u);
	EXPECT_LT(homs, total);
}

TEST(Exp, LinearPartIsAFunctor)
{
	// q(f)(a) = 2f(a) - ½f(2a) respects composition; linear maps are fixed
	Nil2Group g = named("Heis3"), h = named("Z9:Z3");
	auto fs = qmap_enumerate(g, h);
	auto ks = qmap_enumerate(h, g);
	Nil2LieRing l = lie_log(g);
	for (size_t i = 0; i < fs.size(); i += 211)
		for (size_t j = 0; j < ks.size(); j += 173)
		{
			QMapDecomposition df = lie_qmap_decompose(fs[i]), dk = lie_qmap_decompose(ks[j]);
			QMapDecomposition dc = lie_qmap_decompose(qmap_compose(ks[j], fs[i]));
			for (auto const &a : l.elements())
				ASSERT_EQ(dc.g.apply(a), dk.g.apply(df.g.apply(a)));
			QMapDecomposition lin{g, h, df.g, BMatrix(g.rank(), std::vector<AbElement>(g.rank(), h.B().zero()))};
			QMapDecomposition dl = lie_qmap_decompose(lie_qmap_recompose(lin));
			EXPECT_EQ(dl.g.images, df.g.images);
			EXPECT_EQ(dl.g.comm, df.g.comm);
		}
}

TEST(Bolo, Examples)
{
	BoloResult same = bolo_decide(named("Heis3"), named("Heis3"));
	EXPECT_TRUE(same.isomorphic);
	BoloResult hm = bolo_decide(named("Z3vZ3"), named("Z9:Z3"));
	EXPECT_FALSE(hm.isomorphic);
	EXPECT_NE(hm.reason.find("underlying"), std::string::npos);
	EXPECT_EQ(lie_log(named("Z3vZ3")).underlying(), ab_make({3, 3, 3}));
	EXPECT_EQ(lie_log(named("Z9:Z3")).underlying(), ab_make({3, 9}));
	BoloResult p5 = bolo_decide(named("Heis5"), named("Z25:Z5"));
	EXPECT_FALSE(p5.isomorphic);
	EXPECT_THROW(bolo_decide(catalog_q8(), catalog_q8()), Error);
}

TEST(Bolo, AgreesWithWitnessSearchOnOrder27)
{
	std::vector<std::pair<std::string, Nil2Group>> g27;
	for (auto &[n, g] : odd_catalog(27))
		if (*g.order() == 27)
			g27.emplace_back(n, g);
	ASSERT_GE(g27.size(), 5u);
	for (auto const &[gn, g] : g27)
		for (auto const &[hn, h] : g27)
		{
			BoloResult b = bolo_decide(g, h);
			NiqWitnessSearch s = find_niq_iso_witness(g, h);
			EXPECT_EQ(b.isomorphic, s.found()) << gn << " " << hn;
			if (!b.witness)
				continue;
			// the witness is an isomorphism of logs matching commutator subgroups ...
			EXPECT_TRUE(b.witness->is_bijective());
			// ... and yields a q-map G -> H with q-map inverse
			QMap f = bolo_witness_qmap(g, h, *b.witness);
			EXPECT_TRUE(qmap_satisfies_definition(f));
			auto hs = nil2_enumerate(h);
			std::vector<long> inv(hs.size(), -1);
			for (auto const &z : nil2_enumerate(g))
				inv[h.index_of(f.eval(z))] = static_cast<long>(g.index_of(z));
			QMap back = QMap::from_function(h, g, [&](Nil2Element const &z) {
				return g.element_at(static_cast<size_t>(inv[h.index_of(z)]));
			});
			for (auto const &z : hs)
				EXPECT_EQ(f.eval(back.eval(z)), z);
		}
}
