#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "nilq/catalog.hpp"
#include "nilq/oracle.hpp"
#include "oracles.hpp"

using namespace nilq;

namespace {

size_t count_of_order(Nil2Group const &g, Int k)
{
	size_t c = 0;
	for (auto const &z : nil2_enumerate(g))
		c += g.element_order(z) == k;
	return c;
}

std::vector<Nil2Element> box(Nil2Group const &g, Int lo, Int hi)
{
	// small box of elements in a possibly infinite group
	std::vector<Nil2Element> out;
	std::vector<size_t> sizes;
	std::vector<Int> off;
	auto dims = [&](FGAbelian const &a) {
		for (Int d : a.orders())
		{
			sizes.push_back(static_cast<size_t>(d ? d : hi - lo + 1));
			off.push_back(d ? 0 : lo);
		}
	};
	dims(g.A());
	dims(g.B());
	detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		IntVec a, b;
		for (size_t i = 0; i < ix.size(); ++i)
			(i < g.rank() ? a : b).push_back(static_cast<Int>(ix[i]) + off[i]);
		out.push_back(g.element(a, b));
		return true;
	});
	return out;
}

} // namespace

TEST(Nil2Make, QuaternionEncoding)
{
	Nil2Group q8 = catalog_q8();
	EXPECT_EQ(*q8.order(), 8);
	EXPECT_EQ(count_of_order(q8, 2), 1u);
	EXPECT_EQ(count_of_order(q8, 4), 6u);
	EXPECT_TRUE(find_group_iso(table_of(q8), oracles::quaternion_table()).has_value());
}

TEST(Nil2Make, DihedralEncoding)
{
	Nil2Group d4 = catalog_d4();
	EXPECT_EQ(*d4.order(), 8);
	EXPECT_GE(count_of_order(d4, 2), 2u);
	EXPECT_TRUE(find_group_iso(table_of(d4), oracles::dihedral_table()).has_value());
	EXPECT_FALSE(find_group_iso(table_of(d4), oracles::quaternion_table()).has_value());
}

TEST(Nil2Make, HeisenbergMod3)
{
	Nil2Group h = catalog_heis(3);
	EXPECT_EQ(*h.order(), 27);
	EXPECT_EQ(h.exponent(), 3);
	EXPECT_TRUE(find_group_iso(table_of(h), oracles::heisenberg_table(3)).has_value());
}

TEST(Nil2Make, MetacyclicFromSemidirect)
{
	for (Int p : {3, 5})
	{
		GroupOracle o = nil2_semidirect(p * p, p, p + 1);
		Canonicalized c = nil2_canonicalize_finite(o);
		EXPECT_EQ(*c.group.order(), p * p * p);
		EXPECT_EQ(*c.group.B().cardinality(), p);
		EXPECT_TRUE(find_group_iso(table_of(catalog_metacyclic(p)), o).has_value()) << p;
		EXPECT_FALSE(find_group_iso(table_of(catalog_heis(p)), o).has_value()) << p;
	}
}

TEST(Nil2Make, Errors)
{
	FGAbelian a = ab_make({2, 2});
	FGAbelian b4 = ab_make({4});
	BMatrix bil(2, std::vector<AbElement>(2, b4.zero()));
	bil[0][1] = b4.element({1});
	try
	{
		nil2_make(a, b4, bil, {});
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::InvalidCocycle);
	}

	FGAbelian b2 = ab_make({2});
	try
	{
		nil2_make(a, b2, {}, {});
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::CommutatorMismatch);
		EXPECT_NE(std::string(e.what()).find("subgroup"), std::string::npos);
	}

	FGAbelian z2 = FGAbelian::free(2);
	FGAbelian bz = FGAbelian::free(1);
	BMatrix bz_bil(2, std::vector<AbElement>(2, bz.zero()));
	bz_bil[0][1] = bz.element({1});
	try
	{
		nil2_make(z2, bz, bz_bil, {bz.element({1}), bz.zero()});
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::InvalidCocycle);
	}
}

TEST(Nil2Arith, QuaternionCommutator)
{
	Nil2Group q8 = catalog_q8();
	Nil2Element tau = q8.generator(0), omega = q8.generator(1);
	EXPECT_EQ(q8.commutator(omega, tau), q8.element({0, 0}, {1}));
	EXPECT_EQ(q8.commutator(omega, tau), q8.multiple(tau, 2));
	EXPECT_EQ(q8.element_order(tau), 4);
	EXPECT_EQ(q8.element_order(omega), 4);
}

TEST(Nil2Arith, CommutatorMatchesDefinition)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		auto el = nil2_enumerate(g);
		for (auto const &x : el)
		{
			EXPECT_EQ(g.commutator(x, x), g.zero()) << name;
			for (auto const &y : el)
			{
				Nil2Element def = g.add(g.add(g.neg(x), g.neg(y)), g.add(x, y));
				ASSERT_EQ(g.commutator(x, y), def) << name;
			}
		}
	}
}

TEST(Nil2Arith, GroupAxiomsAndClassTwo)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		auto el = nil2_enumerate(g);
		for (auto const &x : el)
		{
			ASSERT_EQ(g.add(x, g.zero()), x);
			ASSERT_EQ(g.add(g.neg(x), x), g.zero());
			ASSERT_EQ(g.add(x, g.neg(x)), g.zero());
			for (auto const &y : el)
			{
				Nil2Element c = g.commutator(x, y);
				for (auto const &z : el)
				{
					ASSERT_EQ(g.add(g.add(x, y), z), g.add(x, g.add(y, z))) << name;
					ASSERT_EQ(g.commutator(c, z), g.zero()) << name;
				}
			}
		}
	}
}

TEST(Nil2Arith, CocycleIdentity)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		auto as = ab_enumerate(g.A());
		FGAbelian const &a = g.A(), &b = g.B();
		for (auto const &x : as)
			for (auto const &y : as)
				for (auto const &z : as)
				{
					auto l = b.add(g.cocycle(x, y), g.cocycle(a.add(x, y), z));
					auto r = b.add(g.cocycle(y, z), g.cocycle(x, a.add(y, z)));
					ASSERT_EQ(l, r) << name;
				}
	}
}

TEST(Nil2Arith, MultiplesByRepeatedAddition)
{
	for (auto const &[name, g] : catalog_finite(32))
		for (auto const &x : nil2_enumerate(g))
		{
			Nil2Element acc = g.zero();
			for (Int n = 0; n <= 6; ++n)
			{
				ASSERT_EQ(g.multiple(x, n), acc) << name;
				ASSERT_EQ(g.multiple(x, -n), g.neg(acc)) << name;
				acc = g.add(acc, x);
			}
		}
}

TEST(Nil2Arith, CommutatorIdentities)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		auto el = nil2_enumerate(g);
		for (auto const &a : el)
			for (auto const &b : el)
				for (Int n = -5; n <= 5; ++n)
				{
					Nil2Element lhs = g.add(g.multiple(a, n), g.multiple(b, n));
					Nil2Element rhs =
					    g.add(g.multiple(g.add(a, b), n), g.multiple(g.commutator(a, b), binom2(n)));
					ASSERT_EQ(lhs, rhs) << name << " n=" << n;
				}
	}
}

TEST(Nil2Arith, FreeRankTwoDoubling)
{
	Nil2Group f = nil2_free(2);
	Nil2Element x = f.generator(0), y = f.generator(1);
	Nil2Element lhs = f.add(f.multiple(x, 2), f.multiple(y, 2));
	Nil2Element rhs = f.add(f.multiple(f.add(x, y), 2), f.commutator(x, y));
	EXPECT_EQ(lhs, rhs);
	EXPECT_EQ(f.commutator(x, y), f.element({0, 0}, {1}));
	for (auto const &a : box(f, -2, 2))
		for (auto const &b : box(f, -1, 1))
			for (Int n = -3; n <= 3; ++n)
				ASSERT_EQ(f.add(f.multiple(a, n), f.multiple(b, n)),
				          f.add(f.multiple(f.add(a, b), n),
				                f.multiple(f.commutator(a, b), binom2(n))));
}

TEST(Nil2Center, MatchesExhaustiveCommutingTest)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		Nil2Center c = nil2_center(g);
		auto el = nil2_enumerate(g);
		Int count = 0;
		for (auto const &z : el)
		{
			bool central = true;
			for (auto const &w : el)
				central = central && g.add(z, w) == g.add(w, z);
			EXPECT_EQ(c.contains(z), central) << name;
			EXPECT_EQ(g.is_central(z), central) << name;
			count += central;
		}
		EXPECT_EQ(*c.order(), count) << name;
	}
	EXPECT_EQ(*nil2_center(catalog_q8()).order(), 2);
	EXPECT_EQ(*nil2_center(catalog_abelian({2, 4})).order(), 8);
}

TEST(Nil2Center, FreeRankTwo)
{
	Nil2Group f = nil2_free(2);
	Nil2Center c = nil2_center(f);
	EXPECT_TRUE(c.a_part.group().is_trivial());
	EXPECT_FALSE(c.order().has_value());
	for (auto const &z : box(f, -2, 2))
		EXPECT_EQ(c.contains(z), f.A().is_zero(z.a));
}

TEST(Nil2Product, Orders)
{
	Nil2Group p = nil2_product(catalog_q8(), catalog_abelian({2}));
	EXPECT_EQ(*p.order(), 16);
	Nil2Group dd = nil2_product(catalog_d4(), catalog_d4());
	EXPECT_EQ(*dd.order(), 64);
	EXPECT_EQ(dd.B(), ab_make({2, 2}));
	EXPECT_EQ(nil2_product(catalog_abelian({}), catalog_q8()), catalog_q8());
}

TEST(Nil2Product, ComponentwiseLaw)
{
	Nil2Group g1 = catalog_q8(), g2 = catalog_heis(3);
	Nil2Group p = nil2_product(g1, g2);
	auto e1 = nil2_enumerate(g1), e2 = nil2_enumerate(g2);
	auto pair = [&](Nil2Element const &x, Nil2Element const &y) {
		IntVec a = x.a.coords, b = x.b.coords;
		a.insert(a.end(), y.a.coords.begin(), y.a.coords.end());
		b.insert(b.end(), y.b.coords.begin(), y.b.coords.end());
		return p.element(a, b);
	};
	for (size_t i = 0; i < e1.size(); i += 3)
		for (size_t j = 0; j < e2.size(); j += 5)
			for (size_t k = 0; k < e1.size(); ++k)
				for (size_t l = 0; l < e2.size(); l += 4)
					ASSERT_EQ(p.add(pair(e1[i], e2[j]), pair(e1[k], e2[l])),
					          pair(g1.add(e1[i], e1[k]), g2.add(e2[j], e2[l])));
}

TEST(Nil2Coproduct, Z2vZ2IsDihedral)
{
	Nil2Group c = nil2_coproduct(catalog_abelian({2}), catalog_abelian({2}));
	EXPECT_EQ(*c.order(), 8);
	EXPECT_TRUE(find_group_iso(table_of(c), oracles::dihedral_table()).has_value());
	EXPECT_TRUE(find_group_iso(c, catalog_d4()).has_value());
}

TEST(Nil2Coproduct, TrivialFactor)
{
	EXPECT_EQ(nil2_coproduct(catalog_abelian({}), catalog_q8()), catalog_q8());
}

TEST(Nil2Coproduct, LawAndCommutatorFormula)
{
	// (ξ,g,h) + (ξ',g',h') = (ξ + ξ' - ĝ'⊗ĥ, g+g', h+h')
	// [(ξ,g,h),(ξ',g',h')] = (ĝ⊗ĥ' - ĝ'⊗ĥ, [g,g'], [h,h'])
	Nil2Group g1 = catalog_d4(), g2 = catalog_abelian({4});
	Coproduct c = nil2_coproduct_data(g1, g2);
	FGAbelian const &t = c.layout.group;
	auto tens = ab_enumerate(t);
	auto e1 = nil2_enumerate(g1), e2 = nil2_enumerate(g2);
	for (size_t s = 0; s < 40; ++s)
	{
		auto const &xi = tens[(s * 7) % tens.size()], &xi2 = tens[(s * 3 + 1) % tens.size()];
		auto const &g = e1[(s * 5) % e1.size()], &gp = e1[(s * 11 + 2) % e1.size()];
		auto const &h = e2[s % e2.size()], &hp = e2[(s * 13 + 3) % e2.size()];
		Nil2Element z = c.element(xi, g, h), w = c.element(xi2, gp, hp);
		Nil2Element expect = c.element(t.sub(t.add(xi, xi2), c.tensor(gp.a, h.a)), g1.add(g, gp),
		                               g2.add(h, hp));
		ASSERT_EQ(c.group.add(z, w), expect);
		Nil2Element comm = c.element(t.sub(c.tensor(g.a, hp.a), c.tensor(gp.a, h.a)),
		                             g1.commutator(g, gp), g2.commutator(h, hp));
		ASSERT_EQ(c.group.commutator(z, w), comm);
		ASSERT_EQ(c.xi_part(z), xi);
		ASSERT_EQ(c.left_part(z), g);
		ASSERT_EQ(c.right_part(z), h);
	}
}

TEST(Nil2Coproduct, UniversalProperty)
{
	// For homomorphisms u: G1 -> X and v: G2 -> X the formula
	// (ξ,g,h) ↦ [u,v](ξ) + u(g) + v(h) is the unique homomorphism extending both.
	Nil2Group g1 = catalog_abelian({2}), g2 = catalog_abelian({4}), x = catalog_q8();
	Coproduct c = nil2_coproduct_data(g1, g2);
	GroupOracle o1 = table_of(g1), o2 = table_of(g2), ox = table_of(x), oc = table_of(c.group);
	size_t pairs = 0;
	nilq::for_each_group_hom(o1, ox, [&](std::vector<size_t> const &u) {
		nilq::for_each_group_hom(o2, ox, [&](std::vector<size_t> const &v) {
			++pairs;
			auto ue = [&](Nil2Element const &g) { return x.element_at(u[g1.index_of(g)]); };
			auto ve = [&](Nil2Element const &h) { return x.element_at(v[g2.index_of(h)]); };
			auto phi = [&](Nil2Element const &z) {
				AbElement xi = c.xi_part(z);
				Nil2Element acc = x.zero();
				for (size_t i = 0; i < g1.rank(); ++i)
					for (size_t j = 0; j < g2.rank(); ++j)
					{
						long p = c.layout.position[c.layout.index(i, j)];
						if (p < 0)
							continue;
						Nil2Element cc = x.commutator(ue(g1.generator(i)), ve(g2.generator(j)));
						acc = x.add(acc, x.multiple(cc, xi[static_cast<size_t>(p)]));
					}
				return x.add(x.add(acc, ue(c.left_part(z))), ve(c.right_part(z)));
			};
			auto el = nil2_enumerate(c.group);
			for (auto const &z : el)
				for (auto const &w : el)
					EXPECT_EQ(phi(c.group.add(z, w)), x.add(phi(z), phi(w)));
			for (auto const &g : nil2_enumerate(g1))
				EXPECT_EQ(phi(c.inject_left(g)), ue(g));
			for (auto const &h : nil2_enumerate(g2))
				EXPECT_EQ(phi(c.inject_right(h)), ve(h));
			return true;
		});
		return true;
	});
	EXPECT_EQ(pairs, 4u * 4u);
	// uniqueness: the injected images generate the coproduct
	std::vector<size_t> gens;
	for (auto const &g : nil2_enumerate(g1))
		gens.push_back(c.group.index_of(c.inject_left(g)));
	for (auto const &h : nil2_enumerate(g2))
		gens.push_back(c.group.index_of(c.inject_right(h)));
	auto in = oc.closure(gens);
	EXPECT_EQ(std::count(in.begin(), in.end(), true), static_cast<long>(oc.size()));
}

TEST(Nil2Free, Ranks)
{
	EXPECT_TRUE(nil2_free(1).B().is_trivial());
	EXPECT_EQ(nil2_free(1).A(), FGAbelian::free(1));
	EXPECT_EQ(nil2_free(2).B(), FGAbelian::free(1));
	EXPECT_EQ(nil2_free(3).B(), FGAbelian::free(3));
	EXPECT_TRUE(ab_isomorphic(nil2_free(3).B(), ab_snf_invariants({}, 3)));
	EXPECT_EQ(nil2_free(0).order(), std::optional<Int>(1));
}

TEST(Nil2Free, CoproductOfIntegers)
{
	Nil2Group z = nil2_free(1);
	Nil2Group c = nil2_coproduct(z, z);
	EXPECT_EQ(c.B(), FGAbelian::free(1));
	// φ(x, u) = (x, u - x₁x₂) carries the free law to the coproduct law
	Nil2Group f = nil2_free(2);
	auto phi = [&](Nil2Element const &e) {
		return c.element(e.a.coords, {e.b[0] - e.a[0] * e.a[1]});
	};
	for (auto const &a : box(f, -3, 3))
		for (auto const &b : box(f, -2, 2))
			ASSERT_EQ(phi(f.add(a, b)), c.add(phi(a), phi(b)));
}

TEST(Nil2P2, IntegersLaw)
{
	P2Extension p(nil2_free(1));
	FGAbelian const &k = p.kernel();
	EXPECT_EQ(k, FGAbelian::free(1));
	Nil2Group const &z = p.base();
	for (Int a = -3; a <= 3; ++a)
		for (Int b = -3; b <= 3; ++b)
			for (Int c = -3; c <= 3; ++c)
				for (Int d = -3; d <= 3; ++d)
				{
					P2Extension::Element u{k.element({a}), z.element({b}, {})};
					P2Extension::Element v{k.element({c}), z.element({d}, {})};
					P2Extension::Element w{k.element({a + c - b * d}), z.element({b + d}, {})};
					ASSERT_EQ(p.add(u, v), w);
				}
}

TEST(Nil2P2, ProjectionSectionAndCrossEffect)
{
	for (auto const &[name, g] : catalog_finite(16))
	{
		P2Extension p(g);
		auto el = nil2_enumerate(g);
		for (auto const &x : el)
		{
			EXPECT_EQ(p.project(p.p2(x)), x) << name;
			for (auto const &y : el)
			{
				auto cr = p.add(p.neg(p.add(p.p2(x), p.p2(y))), p.p2(g.add(x, y)));
				ASSERT_EQ(cr, p.iota(p.tensor(x.a, y.a))) << name;
			}
		}
	}
	Nil2Group q8 = catalog_q8();
	P2Extension p(q8);
	Nil2Element tau = q8.generator(0), omega = q8.generator(1);
	auto cr = p.add(p.neg(p.add(p.p2(omega), p.p2(tau))), p.p2(q8.add(omega, tau)));
	EXPECT_FALSE(p.kernel().is_zero(cr.xi));
	EXPECT_EQ(cr.g, q8.zero());
}

TEST(Nil2P2, Exactness)
{
	P2Extension p(catalog_d4());
	auto all = p.enumerate();
	EXPECT_EQ(all.size(), 16u * 8u);
	size_t kernel = 0;
	for (auto const &u : all)
	{
		ASSERT_EQ(p.add(u, p.neg(u)), p.zero());
		kernel += p.project(u) == p.base().zero();
	}
	EXPECT_EQ(kernel, 16u);
}

TEST(Canonicalize, QuaternionTable)
{
	Canonicalized c = nil2_canonicalize_finite(oracles::quaternion_table());
	EXPECT_EQ(c.group.A(), ab_make({2, 2}));
	EXPECT_EQ(c.group.B(), ab_make({2}));
	EXPECT_EQ(count_of_order(c.group, 2), 1u);
	EXPECT_TRUE(find_group_iso(c.group, catalog_q8()).has_value());
}

TEST(Canonicalize, CyclicTable)
{
	Canonicalized c = nil2_canonicalize_finite(oracles::cyclic_table(4));
	EXPECT_EQ(c.group.A(), ab_make({4}));
	EXPECT_TRUE(c.group.B().is_trivial());
}

TEST(Canonicalize, HeisenbergTable)
{
	Canonicalized c = nil2_canonicalize_finite(oracles::heisenberg_table(3));
	EXPECT_TRUE(find_group_iso(c.group, catalog_heis(3)).has_value());
	EXPECT_TRUE(find_group_iso(c.group, nil2_coproduct(catalog_abelian({3}),
	                                                   catalog_abelian({3})))
	                .has_value());
}

TEST(Canonicalize, RoundTripOnCatalog)
{
	for (auto const &[name, g] : catalog_finite(32))
	{
		GroupOracle o = table_of(g);
		Canonicalized c = nil2_canonicalize_finite(o);
		EXPECT_EQ(*c.group.order(), *g.order()) << name;
		EXPECT_TRUE(ab_isomorphic(c.group.A(), g.A())) << name;
		EXPECT_TRUE(ab_isomorphic(c.group.B(), g.B())) << name;
		for (size_t x = 0; x < o.size(); ++x)
			for (size_t y = 0; y < o.size(); ++y)
				ASSERT_EQ(c.to_oracle[c.group.index_of(
				              c.group.add(c.group.element_at(c.from_oracle[x]),
				                          c.group.element_at(c.from_oracle[y])))],
				          o.add(x, y))
				    << name;
	}
}

TEST(Canonicalize, RejectsClassThree)
{
	// D8 of order 16 as permutations of an octagon has class three
	using P = std::array<int, 8>;
	auto comp = [](P const &a, P const &b) {
		P c{};
		for (size_t i = 0; i < 8; ++i)
			c[i] = a[static_cast<size_t>(b[i])];
		return c;
	};
	P rot{1, 2, 3, 4, 5, 6, 7, 0}, ref{0, 7, 6, 5, 4, 3, 2, 1}, id{0, 1, 2, 3, 4, 5, 6, 7};
	std::vector<P> e;
	P r = id;
	for (int k = 0; k < 8; ++k)
	{
		e.push_back(r);
		e.push_back(comp(r, ref));
		r = comp(r, rot);
	}
	GroupOracle o = oracles::table_from(e, id, comp);
	try
	{
		nil2_canonicalize_finite(o);
		FAIL();
	}
	catch (Error const &err)
	{
		EXPECT_EQ(err.kind(), ErrorKind::NotClassTwo);
	}
}

TEST(Oracle, RejectsNonGroup)
{
	try
	{
		GroupOracle::make({"a", "b"}, {{0, 1}, {1, 1}}, 0);
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::NotAGroup);
	}
}

TEST(Semidirect, Examples)
{
	GroupOracle o = nil2_semidirect(9, 3, 4);
	EXPECT_EQ(o.size(), 27u);
	EXPECT_EQ(*nil2_canonicalize_finite(o).group.B().cardinality(), 3);
	EXPECT_EQ(nil2_semidirect(25, 5, 6).size(), 125u);
	EXPECT_TRUE(find_group_iso(table_of(catalog_d4()), nil2_semidirect(4, 2, 3)).has_value());
}

TEST(Semidirect, Preconditions)
{
	try
	{
		nil2_semidirect(9, 3, 2);
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::NotAnAction);
	}
	try
	{
		nil2_semidirect(7, 3, 2);
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::NotClassTwo);
	}
}

TEST(Enumerate, Counts)
{
	EXPECT_EQ(nil2_enumerate(catalog_q8()).size(), 8u);
	EXPECT_EQ(nil2_enumerate(catalog_heis(3)).size(), 27u);
	EXPECT_EQ(nil2_enumerate(catalog_abelian({})).size(), 1u);
	try
	{
		nil2_enumerate(nil2_free(2));
		FAIL();
	}
	catch (Error const &e)
	{
		EXPECT_EQ(e.kind(), ErrorKind::UnsupportedEnumeration);
	}
	auto el = nil2_enumerate(catalog_d4());
	for (size_t i = 0; i < el.size(); ++i)
		EXPECT_EQ(catalog_d4().index_of(el[i]), i);
}
