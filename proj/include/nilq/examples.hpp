#pragma once

// Worked examples as self-checking reports, one per name.

#include <set>
#include <string>
#include <vector>

#include "nilq/catalog.hpp"
#include "nilq/classify.hpp"
#include "nilq/verify.hpp"

namespace nilq {

namespace detail {

/// P₂G: p₂ is quadratic with (x|y) = ι(x̂ ⊗ ŷ), and q = f_q ∘ p₂ with f_q a
/// homomorphism, for every q-map q : G -> H.
inline Report example_p2(std::string const &gn, std::string const &hn)
{
	Report rep;
	Nil2Group g = *catalog_lookup(gn), h = *catalog_lookup(hn);
	P2Extension p(g);
	auto ge = nil2_enumerate(g);
	Tally cr("example.p2-cross", gn);
	for (auto const &x : ge)
		for (auto const &y : ge)
		{
			auto c = p.add(p.neg(p.add(p.p2(x), p.p2(y))), p.p2(g.add(x, y)));
			cr.expect(c == p.iota(p.tensor(x.a, y.a)), [&] { return show(x) + "," + show(y); });
		}
	cr.into(rep);
	auto pe = p.enumerate();
	Tally fac("example.p2-factorization", gn + "," + hn);
	size_t step = stride_for(pe.size() * pe.size(), 4000);
	qmap_for_each(g, h, [&](QMap const &q) {
		P2Factorization f = qmap_p2_factorize(q);
		for (auto const &x : ge)
			fac.expect(f.apply(p.p2(x)) == q.eval(x), [&] { return q.str() + " at " + show(x); });
		for (size_t k = 0; k < pe.size() * pe.size(); k += step)
		{
			auto const &u = pe[k / pe.size()];
			auto const &v = pe[k % pe.size()];
			fac.expect(f.apply(p.add(u, v)) == h.add(f.apply(u), f.apply(v)),
			           [&] { return q.str() + " not additive"; });
		}
		return true;
	});
	fac.into(rep);
	return rep;
}

/// n·a has cross-effect -(n(n-1)/2)[a,b].
inline Report example_power()
{
	Report rep;
	for (std::string n : {"D4", "Q8", "Heis3", "Z9:Z3"})
	{
		Nil2Group g = *catalog_lookup(n);
		auto ge = nil2_enumerate(g);
		Tally t("example.power-map", n + " n=-3..4");
		for (Int k = -3; k <= 4; ++k)
		{
			QMap f = qmap_power(g, k);
			t.expect(qmap_satisfies_definition(f), [&] { return "n=" + std::to_string(k); });
			for (auto const &a : ge)
				for (auto const &b : ge)
					t.expect(f.cross(a, b) == g.multiple(g.commutator(a, b), -k * (k - 1) / 2),
					         [&] { return "n=" + std::to_string(k) + " at " + show(a) + "," + show(b); });
		}
		t.into(rep);
	}
	return rep;
}

/// + : G × G -> G has ((a,b)|(c,d)) = [c,b].
inline Report example_addition()
{
	Report rep;
	for (std::string n : {"D4", "Q8", "Heis3"})
	{
		Nil2Group g = *catalog_lookup(n);
		QMap plus = qmap_addition(g);
		auto ge = nil2_enumerate(g);
		Nil2Group gg = plus.source();
		QMap in1 = qmap_inclusion(g, g, 0), in2 = qmap_inclusion(g, g, 1);
		auto pair_element = [&](Nil2Element const &a, Nil2Element const &b) { return gg.add(in1.eval(a), in2.eval(b)); };
		Tally t("example.addition-map", n);
		t.expect(*gg.order() <= 64 ? qmap_satisfies_definition(plus) : !plus.relation_failure().has_value());
		size_t m = ge.size();
		size_t step = stride_for(m * m * m * m, 20000);
		for (size_t k = 0; k < m * m * m * m; k += step)
		{
			auto const &a = ge[k % m], &b = ge[k / m % m], &c = ge[k / m / m % m], &d = ge[k / m / m / m];
			t.expect(plus.cross(pair_element(a, b), pair_element(c, d)) == g.commutator(c, b),
			         [&] { return show(a) + "," + show(b) + "," + show(c) + "," + show(d); });
		}
		t.into(rep);
	}
	return rep;
}

/// qw(Z, G) = { f_{a,b} : b ∈ [G,G] }, with (n|m) = nm·b and
/// f_{a,b} + f_{a',b'} = f_{a+a', b+b'+[a,a']}.
inline Report example_maps_from_z()
{
	Report rep;
	for (std::string n : {"Q8", "D4", "Heis3"})
	{
		Nil2Group h = *catalog_lookup(n);
		auto he = nil2_enumerate(h);
		std::vector<Nil2Element> comm;
		for (auto const &b : ab_enumerate(h.B()))
			comm.push_back(h.central(b));
		Nil2Group z = nil2_free(1);
		auto at = [&](Int k) { return z.multiple(z.generator(0), k); };
		Tally t("example.maps-from-Z", n);
		for (auto const &a : he)
			for (auto const &b : comm)
			{
				QMap f = qmap_from_Z(h, a, b);
				for (Int k = -4; k <= 4; ++k)
				{
					Nil2Element want = h.add(h.multiple(a, k), h.multiple(b, k * (k - 1) / 2));
					t.expect(f.eval(at(k)) == want, [&] { return show(a) + "," + show(b) + " at " + std::to_string(k); });
					for (Int l = -4; l <= 4; ++l)
						t.expect(f.cross(at(k), at(l)) == h.multiple(b, k * l));
				}
			}
		t.into(rep);
		Tally s("example.maps-from-Z-sum", n);
		for (auto const &a : he)
			for (auto const &a2 : he)
				for (auto const &b : comm)
				{
					Nil2Element b2 = comm[(&b - comm.data() + 1) % comm.size()];
					QMap lhs = qmap_add(qmap_from_Z(h, a, b), qmap_from_Z(h, a2, b2));
					QMap rhs = qmap_from_Z(h, h.add(a, a2), h.add(h.add(b, b2), h.commutator(a, a2)));
					s.expect(lhs == rhs, [&] { return show(a) + "," + show(a2); });
				}
		s.into(rep);
		// all generator data on Z: f(1) and (1|1)_f are free, and each datum is some f_{a,b}
		Tally c("example.maps-from-Z-count", n + " expect |G|*|[G,G]|=" + std::to_string(he.size() * comm.size()));
		std::set<std::string> seen;
		for (auto const &a : he)
			for (auto const &b : comm)
			{
				QMap f = QMap::make(z, h, AbHom::from_images(z.A(), h.A(), {a.a}), AbHom::zero(z.B(), h.B()), {a.b},
				                    {{b.b}});
				c.expect(f == qmap_from_Z(h, f.eval(at(1)), f.cross(at(1), at(1))), [&] { return f.str(); });
				seen.insert(f.str());
			}
		c.expect(seen.size() == he.size() * comm.size(), [&] { return "count " + std::to_string(seen.size()); });
		c.into(rep);
	}
	// b central but outside [G,G] gives a quadratic map that is not a q-map
	Nil2Group h = *catalog_lookup("Q8xZ2");
	Nil2Element b = h.generator(h.rank() - 1);
	Tally r("example.maps-from-Z-needs-commutator", "Q8xZ2");
	bool rejected = false;
	try
	{
		qmap_from_Z(h, h.zero(), b);
	}
	catch (Error const &e)
	{
		rejected = e.kind() == ErrorKind::NotAQMap;
	}
	r.expect(rejected);
	r.into(rep);
	return rep;
}

/// δ = i₁ + i₂ : G -> G ∨ G with (x|y)_δ = [i₁(y), i₂(x)].
inline Report example_diagonal()
{
	Report rep;
	for (std::string n : {"Z2", "Z4", "Z3", "Z2xZ2", "D4"})
	{
		Nil2Group g = *catalog_lookup(n);
		Coproduct c = nil2_coproduct_data(g, g);
		QMap i1 = qmap_coproduct_injection(c, 0), i2 = qmap_coproduct_injection(c, 1);
		QMap delta = qmap_add(i1, i2);
		auto ge = nil2_enumerate(g);
		Tally t("example.diagonal", n);
		t.expect(qmap_satisfies_definition(delta));
		for (auto const &x : ge)
			for (auto const &y : ge)
				t.expect(delta.cross(x, y) == c.group.commutator(i1.eval(y), i2.eval(x)),
				         [&] { return show(x) + "," + show(y); });
		t.into(rep);
	}
	return rep;
}

/// f(l,m,n) = l[x,y] + mx + ny : Z³ -> Z ∨ Z is a bijective q-map whose
/// inverse has cross-effect (-m'n, 0, 0) and so is not a q-map.
inline Report example_bijective_non_iso(SuiteOptions const &o)
{
	Report rep;
	Nil2Group src = catalog_abelian({0, 0, 0}), dst = nil2_free(2);
	QMap f = QMap::make(src, dst, AbHom(src.A(), dst.A(), {{0, 1, 0}, {0, 0, 1}}), AbHom::zero(src.B(), dst.B()),
	                    {dst.B().element({1}), dst.B().zero(), dst.B().zero()},
	                    {{dst.B().zero(), dst.B().zero(), dst.B().zero()},
	                     {dst.B().zero(), dst.B().zero(), dst.B().zero()},
	                     {dst.B().zero(), dst.B().element({1}), dst.B().zero()}});
	Nil2Element x = dst.generator(0), y = dst.generator(1), xy = dst.commutator(x, y);
	auto pt = [&](Int l, Int m, Int n) { return Nil2Element{src.A().element({l, m, n}), src.B().zero()}; };
	auto image = [&](Int l, Int m, Int n) {
		return dst.add(dst.add(dst.multiple(xy, l), dst.multiple(x, m)), dst.multiple(y, n));
	};
	Tally t("example.bijection-values", "Z^3,ZvZ box 3");
	Tally c("example.bijection-cross", "Z^3,ZvZ box 2");
	Tally v("example.bijection-inverse-cross", "ZvZ,Z^3 box 2");
	bool nonzero = false;
	for (Int l = -3; l <= 3; ++l)
		for (Int m = -3; m <= 3; ++m)
			for (Int n = -3; n <= 3; ++n)
				t.expect(f.eval(pt(l, m, n)) == image(l, m, n),
				         [&] { return "(" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n) + ")"; });
	// f is bijective since every element of Z ∨ Z is l[x,y] + mx + ny for unique l, m, n
	auto inverse = [&](Nil2Element const &w) {
		Int m = w.a[0], n = w.a[1];
		Int l = w.b[0] - image(0, m, n).b[0];
		return pt(l, m, n);
	};
	for (Int l = -2; l <= 2; ++l)
		for (Int m = -2; m <= 2; ++m)
			for (Int n = -2; n <= 2; ++n)
				for (Int l2 = -2; l2 <= 2; ++l2)
					for (Int m2 = -2; m2 <= 2; ++m2)
						for (Int n2 = -2; n2 <= 2; ++n2)
						{
							c.expect(f.cross(pt(l, m, n), pt(l2, m2, n2)) == dst.multiple(xy, m2 * n));
							Nil2Element w = image(l, m, n), w2 = image(l2, m2, n2);
							c.expect(inverse(w) == pt(l, m, n));
							Nil2Element ci = src.sub(src.sub(inverse(dst.add(w, w2)), inverse(w2)), inverse(w));
							v.expect(ci == pt(-m2 * n, 0, 0));
							nonzero = nonzero || !(ci == src.zero());
						}
	t.into(rep);
	c.into(rep);
	v.into(rep);
	Tally q("example.bijection-inverse-not-qmap", "ZvZ,Z^3 [Z^3,Z^3]=0");
	q.expect(nonzero && src.B().rank() == 0);
	q.into(rep);
	rep.append(run_suite("negative", o));
	return rep;
}

/// D4 and Q8 are q-split, similar, isomorphic in Niq but not as groups.
inline Report example_d4_q8()
{
	Report rep;
	Nil2Group d4 = catalog_d4(), q8 = catalog_q8();
	Tally s("example.qsplit", "D4,Q8");
	for (auto const &g : {d4, q8})
	{
		QSplitResult r = is_qsplit(g);
		s.expect(r.qsplit && r.section.has_value());
		if (r.section)
		{
			s.expect(qmap_satisfies_definition(*r.section));
			for (auto const &a : ab_enumerate(g.A()))
				s.expect(r.section->eval({a, FGAbelian().zero()}).a == a);
		}
	}
	s.into(rep);
	// τ = E1, ω = E2 in Q8: both of order 4, 2τ = 2ω, [ω,τ] = 2τ
	Nil2Element tau = q8.generator(0), omega = q8.generator(1);
	Tally p("example.q8-presentation", "Q8");
	p.expect(q8.element_order(tau) == 4 && q8.element_order(omega) == 4);
	p.expect(q8.multiple(tau, 2) == q8.multiple(omega, 2));
	p.expect(q8.commutator(omega, tau) == q8.multiple(tau, 2));
	p.expect(q8.add(q8.add(omega, tau), q8.neg(omega)) == q8.neg(tau));
	p.into(rep);
	Tally sec("example.q8-section", "s(w)=w s(t)=t s(w+t)=w+t");
	Nil2Group a = Nil2Group::abelian(q8.A());
	bool ok = true;
	try
	{
		QMap f = QMap::from_function(a, q8, [&](Nil2Element const &z) {
			return q8.add(q8.multiple(omega, z.a[1]), q8.multiple(tau, z.a[0]));
		});
		ok = qmap_satisfies_definition(f);
		for (auto const &z : nil2_enumerate(a))
			ok = ok && f.eval(z).a == z.a;
	}
	catch (Error const &)
	{
		ok = false;
	}
	sec.expect(ok);
	sec.into(rep);
	Tally v("example.d4-q8-verdicts", "D4,Q8");
	v.expect(similar(d4, q8));
	v.expect(!find_group_iso(d4, q8).has_value(), [] { return std::string("group-isomorphic"); });
	v.expect(find_group_iso(d4, *catalog_lookup("Z2vZ2")).has_value(), [] { return std::string("D4 != Z2vZ2"); });
	NiqDecision d = niq_iso_decide(d4, q8, {true, 64});
	v.expect(d.isomorphic && d.forward && d.backward);
	if (d.forward && d.backward)
	{
		for (auto const &z : nil2_enumerate(d4))
			v.expect(d.backward->eval(d.forward->eval(z)) == z);
		for (auto const &z : nil2_enumerate(q8))
			v.expect(d.forward->eval(d.backward->eval(z)) == z);
	}
	v.into(rep);
	return rep;
}

/// Z/p² ⋊ Z/p (action by p+1) is similar to Z/p ∨ Z/p; isomorphic for p = 2,
/// for odd p of exponent p² against p, not q-split, not Niq-isomorphic.
inline Report example_metacyclic()
{
	Report rep;
	for (Int p : {2, 3, 5})
	{
		Nil2Group m = nil2_canonicalize_finite(nil2_semidirect(p * p, p, p + 1)).group;
		Nil2Group zp = catalog_abelian({p});
		Nil2Group c = nil2_coproduct(zp, zp);
		std::string inst = "p=" + std::to_string(p);
		Tally t("example.metacyclic", inst);
		t.expect(similar(m, c), [] { return std::string("not similar"); });
		if (p == 2)
		{
			t.expect(find_group_iso(m, c).has_value(), [] { return std::string("not isomorphic"); });
		}
		else
		{
			t.expect(m.exponent() == p * p && c.exponent() == p, [] { return std::string("exponents"); });
			t.expect(!is_qsplit(m).qsplit && !qsplit_criterion(m), [] { return std::string("q-split"); });
			t.expect(is_qsplit(c).qsplit, [] { return std::string("coproduct not q-split"); });
			t.expect(!niq_iso_decide(m, c).isomorphic, [] { return std::string("Niq-isomorphic"); });
		}
		t.into(rep);
	}
	return rep;
}

} // namespace detail

inline std::vector<std::string> example_names()
{
	return {"p2-universal", "power-map", "addition-map", "maps-from-Z",
	        "diagonal", "bijective-non-iso", "d4-q8", "metacyclic"};
}

/// Runs one worked example, or all of them for "all".
inline Report run_example(std::string const &name, SuiteOptions const &o = {})
{
	if (name == "all")
	{
		Report rep;
		for (auto const &n : example_names())
			rep.append(run_example(n, o));
		return rep;
	}
	if (name == "p2-universal")
	{
		Report rep = detail::example_p2("D4", "Q8");
		rep.append(detail::example_p2("Z4", "Heis3"));
		return rep;
	}
	if (name == "power-map")
		return detail::example_power();
	if (name == "addition-map")
		return detail::example_addition();
	if (name == "maps-from-Z")
		return detail::example_maps_from_z();
	if (name == "diagonal")
		return detail::example_diagonal();
	if (name == "bijective-non-iso")
		return detail::example_bijective_non_iso(o);
	if (name == "d4-q8")
		return detail::example_d4_q8();
	if (name == "metacyclic")
		return detail::example_metacyclic();
	fail(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

} // namespace nilq
