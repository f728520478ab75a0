#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nilq/catalog.hpp"
#include "nilq/classify.hpp"
#include "nilq/maltsev.hpp"
#include "nilq/oracle.hpp"
#include "nilq/report.hpp"

namespace nilq {

namespace detail {

inline std::uint64_t fnv1a(std::string const &s)
{
	std::uint64_t h = 1469598103934665603ull;
	for (unsigned char c : s)
		h = (h ^ c) * 1099511628211ull;
	return h;
}

/// Deterministic sample of qw(G, H): the zero map, the identity and the
/// inverse map when G = H, then maps with random generator data.
inline std::vector<QMap> qmap_sample(Nil2Group const &g, Nil2Group const &h, size_t count,
                                     std::uint64_t seed)
{
	std::vector<QMap> out{QMap::zero(g, h)};
	if (g == h)
	{
		out.push_back(QMap::identity(g));
		out.push_back(qmap_power(g, -1));
	}
	std::mt19937_64 rng(seed);
	auto pick = [&](auto const &v) -> auto const & { return v[rng() % v.size()]; };
	std::vector<std::vector<AbElement>> ta, tb;
	for (size_t i = 0; i < g.rank(); ++i)
		ta.push_back(ab_torsion_elements(h.A(), g.A().order(i)));
	for (size_t i = 0; i < g.B().rank(); ++i)
		tb.push_back(ab_torsion_elements(h.B(), g.B().order(i)));
	size_t r = g.rank();
	for (size_t attempt = 0; attempt < 40 * count && out.size() < count; ++attempt)
	{
		std::vector<AbElement> ia, ib;
		for (auto const &t : ta)
			ia.push_back(pick(t));
		for (auto const &t : tb)
			ib.push_back(pick(t));
		AbHom fab = AbHom::from_images(g.A(), h.A(), ia);
		AbHom fcomm = AbHom::from_images(g.B(), h.B(), ib);
		QMapBlocks b = qmap_blocks(g, h, fab, fcomm);
		bool empty = false;
		for (auto const &o : b.diag)
			empty = empty || o.empty();
		for (auto const &o : b.off)
			empty = empty || o.empty();
		if (empty)
			continue;
		std::vector<AbElement> gamma(r);
		BMatrix delta(r, std::vector<AbElement>(r));
		for (size_t i = 0; i < r; ++i)
		{
			auto const &[gm, dl] = pick(b.diag[i]);
			gamma[i] = gm;
			delta[i][i] = dl;
		}
		for (size_t p = 0; p < b.pairs.size(); ++p)
		{
			auto [i, j] = b.pairs[p];
			auto const &[dij, dji] = pick(b.off[p]);
			delta[i][j] = dij;
			delta[j][i] = dji;
		}
		out.push_back(QMap::make(g, h, fab, fcomm, gamma, delta));
	}
	return out;
}

inline std::vector<std::vector<size_t>> sum_table(Nil2Group const &g, std::vector<Nil2Element> const &el)
{
	std::vector<std::vector<size_t>> t(el.size(), std::vector<size_t>(el.size()));
	for (size_t x = 0; x < el.size(); ++x)
		for (size_t y = 0; y < el.size(); ++y)
			t[x][y] = g.index_of(g.add(el[x], el[y]));
	return t;
}

inline size_t stride_for(size_t n, size_t want) { return std::max<size_t>(1, n / std::max<size_t>(1, want)); }

inline std::string show(Nil2Element const &a) { return to_string(a); }

} // namespace detail

/// Class-two identities of a single group: [a,b] factors through Λ²(G_ab),
/// the commutator formula, centrality and na + nb = n(a+b) + C(n,2)[a,b].
inline Report verify_group_lemmas(NamedGroup const &ng)
{
	Report rep;
	Nil2Group const &g = ng.group;
	auto el = nil2_enumerate(g);
	auto sum = detail::sum_table(g, el);
	size_t n = el.size();
	std::vector<Nil2Element> comms;
	for (auto const &u : ab_enumerate(g.B()))
		comms.push_back(g.central(u));
	Tally t1("lemma.na+nb.i", ng.name), t2("lemma.na+nb.ii", ng.name), t3("lemma.na+nb.iii", ng.name),
	    t4("lemma.na+nb.iv", ng.name);
	for (size_t a = 0; a < n; ++a)
		for (size_t b = 0; b < n; ++b)
		{
			Nil2Element c = g.commutator(el[a], el[b]);
			auto at = [&] { return detail::show(el[a]) + "," + detail::show(el[b]); };
			t1.expect(g.A().is_zero(c.a) && (a != b || c == g.zero()), at);
			for (auto const &u : comms)
				t1.expect(g.commutator(g.add(el[a], u), el[b]) == c, at);
			for (size_t a2 = 0; a2 < n; ++a2)
			{
				t1.expect(g.commutator(el[sum[a][a2]], el[b]) ==
				              g.add(c, g.commutator(el[a2], el[b])),
				          at);
				t3.expect(g.add(c, el[a2]) == g.add(el[a2], c), at);
			}
			Nil2Element swapped = g.sub(g.sub(el[sum[a][b]], el[a]), el[b]);
			Nil2Element ours = g.add(g.add(g.neg(el[a]), g.neg(el[b])), el[sum[a][b]]);
			t2.expect(c == swapped && c == ours, at);
			for (Int k = -4; k <= 4; ++k)
			{
				Nil2Element lhs = g.add(g.multiple(el[a], k), g.multiple(el[b], k));
				Nil2Element rhs = g.add(g.multiple(el[sum[a][b]], k), g.multiple(c, binom2(k)));
				t4.expect(lhs == rhs, [&] { return at() + " n=" + std::to_string(k); });
			}
		}
	for (auto *t : {&t1, &t2, &t3, &t4})
		t->into(rep);
	return rep;
}

/// The six properties of weakly quadratic maps, evaluated on sampled q-maps
/// G -> H and exhaustively on elements.
inline Report verify_qmap_lemmas(NamedGroup const &ng, NamedGroup const &nh, size_t maps = 4)
{
	Report rep;
	Nil2Group const &g = ng.group, &h = nh.group;
	std::string inst = ng.name + "->" + nh.name;
	auto el = nil2_enumerate(g);
	auto sum = detail::sum_table(g, el);
	size_t n = el.size();
	size_t step = detail::stride_for(n, 8);
	std::vector<Nil2Element> comms;
	for (auto const &u : ab_enumerate(g.B()))
		comms.push_back(g.central(u));
	std::vector<Tally> t;
	for (auto const &p : {"i", "ii", "iii", "iv", "v", "vi"})
		t.emplace_back(std::string("lemma.qmap.") + p, inst);
	for (auto const &f : detail::qmap_sample(g, h, maps, detail::fnv1a(inst)))
	{
		std::vector<Nil2Element> fv;
		for (auto const &z : el)
			fv.push_back(f.eval(z));
		auto cross = [&](size_t a, size_t b) { return h.add(h.neg(h.add(fv[a], fv[b])), fv[sum[a][b]]); };
		t[1].expect(fv[g.index_of(g.zero())] == h.zero());
		for (size_t a = 0; a < n; ++a)
		{
			auto at = [&] { return f.str() + " at " + detail::show(el[a]); };
			t[2].expect(fv[g.index_of(g.neg(el[a]))] == h.add(h.neg(fv[a]), cross(a, a)), at);
			for (auto const &c : comms)
				t[3].expect(f.eval(g.add(el[a], c)) == h.add(fv[a], f.eval(c)), at);
			for (size_t b = 0; b < n; ++b)
			{
				Nil2Element x = cross(a, b);
				bool ok = h.A().is_zero(x.a) && x == f.cross(el[a], el[b]);
				for (size_t a2 = 0; a2 < n; a2 += step)
				{
					ok = ok && cross(sum[a][a2], b) == h.add(x, cross(a2, b));
					ok = ok && cross(b, sum[a][a2]) == h.add(cross(b, a), cross(b, a2));
				}
				t[0].expect(ok, at);
				Nil2Element fc = f.eval(g.commutator(el[a], el[b]));
				Nil2Element mid = h.add(h.neg(fv[sum[b][a]]), fv[sum[a][b]]);
				Nil2Element rhs = h.sub(h.add(h.commutator(fv[a], fv[b]), x), cross(b, a));
				t[4].expect(fc == mid && mid == rhs, at);
				for (size_t c = 0; c < n; c += step)
				{
					Nil2Element lhs = f.eval(g.commutator(el[a], g.commutator(el[b], el[c])));
					t[5].expect(lhs == h.commutator(fv[a], h.commutator(fv[b], fv[c])), at);
				}
			}
		}
	}
	for (auto const &x : t)
		x.into(rep);
	return rep;
}

/// qw(G, H) is closed under + and -, with the cross-effect formulas of sums
/// and negatives holding pointwise.
inline Report verify_qmap_algebra(NamedGroup const &ng, NamedGroup const &nh, size_t maps = 4)
{
	Report rep;
	Nil2Group const &g = ng.group, &h = nh.group;
	std::string inst = ng.name + "->" + nh.name;
	auto el = nil2_enumerate(g);
	Tally closure("qmap.closure", inst), pointwise("qmap.pointwise", inst), cross("qmap.cross-formulas", inst);
	auto fs = detail::qmap_sample(g, h, maps, detail::fnv1a(inst) + 1);
	for (auto const &f : fs)
		for (auto const &k : fs)
		{
			QMap s = qmap_add(f, k), nf = qmap_neg(f), d = qmap_sub(f, k);
			auto at = [&] { return f.str() + " , " + k.str(); };
			closure.expect(qmap_satisfies_definition(s) && qmap_satisfies_definition(nf) &&
			                   qmap_satisfies_definition(d),
			               at);
			for (auto const &a : el)
			{
				pointwise.expect(s.eval(a) == h.add(f.eval(a), k.eval(a)) &&
				                     nf.eval(a) == h.neg(f.eval(a)) &&
				                     d.eval(a) == h.sub(f.eval(a), k.eval(a)),
				                 at);
				for (auto const &b : el)
				{
					Nil2Element ws = h.add(h.add(f.cross(a, b), k.cross(a, b)), h.commutator(f.eval(b), k.eval(a)));
					Nil2Element wn = h.sub(h.commutator(f.eval(b), f.eval(a)), f.cross(a, b));
					cross.expect(s.cross(a, b) == ws && nf.cross(a, b) == wn, at);
				}
			}
		}
	for (auto *x : {&closure, &pointwise, &cross})
		x->into(rep);
	return rep;
}

/// Composites G1 -> G -> H: the cross-effect of fg and (f + f')g = fg + f'g.
inline Report verify_composition(NamedGroup const &ng1, NamedGroup const &ng, NamedGroup const &nh,
                                 size_t maps = 3)
{
	Report rep;
	Nil2Group const &g1 = ng1.group, &g = ng.group, &h = nh.group;
	std::string inst = ng1.name + "->" + ng.name + "->" + nh.name;
	auto el = nil2_enumerate(g1);
	Tally formula("qmap.composite-cross", inst), dist("qmap.left-distributivity", inst);
	auto gs = detail::qmap_sample(g1, g, maps, detail::fnv1a(inst) + 2);
	auto fs = detail::qmap_sample(g, h, maps, detail::fnv1a(inst) + 3);
	for (auto const &u : gs)
		for (auto const &f : fs)
		{
			QMap fu = qmap_compose(f, u);
			auto at = [&] { return f.str() + " o " + u.str(); };
			for (auto const &a : el)
			{
				bool ok = fu.eval(a) == f.eval(u.eval(a));
				for (auto const &b : el)
					ok = ok && fu.cross(a, b) == h.add(f.eval(u.cross(a, b)), f.cross(u.eval(a), u.eval(b)));
				formula.expect(ok, at);
			}
			for (auto const &f2 : fs)
			{
				QMap lhs = qmap_compose(qmap_add(f, f2), u);
				QMap rhs = qmap_add(fu, qmap_compose(f2, u));
				bool ok = lhs == rhs;
				for (auto const &a : el)
					ok = ok && lhs.eval(a) == h.add(f.eval(u.eval(a)), f2.eval(u.eval(a)));
				dist.expect(ok, at);
			}
		}
	formula.into(rep);
	dist.into(rep);
	return rep;
}

/// The formula (ξ,g,h) ↦ [u,v](ξ) + u(g) + v(h) extends every pair of
/// homomorphisms u: G1 -> X, v: G2 -> X, and the injections generate G1 ∨ G2.
inline Report verify_coproduct_universal(NamedGroup const &n1, NamedGroup const &n2, NamedGroup const &nx)
{
	Report rep;
	Nil2Group const &g1 = n1.group, &g2 = n2.group, &x = nx.group;
	std::string inst = n1.name + "v" + n2.name + "->" + nx.name;
	Coproduct c = nil2_coproduct_data(g1, g2);
	GroupOracle o1 = table_of(g1), o2 = table_of(g2), ox = table_of(x), oc = table_of(c.group);
	auto el = nil2_enumerate(c.group);
	size_t step = detail::stride_for(el.size(), 24);
	Tally ext("coproduct.universal", inst), gen("coproduct.generated", inst);
	for_each_group_hom(o1, ox, [&](std::vector<size_t> const &u) {
		for_each_group_hom(o2, ox, [&](std::vector<size_t> const &v) {
			auto ue = [&](Nil2Element const &a) { return x.element_at(u[g1.index_of(a)]); };
			auto ve = [&](Nil2Element const &b) { return x.element_at(v[g2.index_of(b)]); };
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
			bool ok = true;
			for (size_t a = 0; a < el.size(); ++a)
				for (size_t b = (a % step); b < el.size(); b += step)
					ok = ok && phi(c.group.add(el[a], el[b])) == x.add(phi(el[a]), phi(el[b]));
			for (auto const &a : nil2_enumerate(g1))
				ok = ok && phi(c.inject_left(a)) == ue(a);
			for (auto const &b : nil2_enumerate(g2))
				ok = ok && phi(c.inject_right(b)) == ve(b);
			ext.expect(ok);
			return true;
		});
		return true;
	});
	std::vector<size_t> gens;
	for (auto const &a : nil2_enumerate(g1))
		gens.push_back(c.group.index_of(c.inject_left(a)));
	for (auto const &b : nil2_enumerate(g2))
		gens.push_back(c.group.index_of(c.inject_right(b)));
	auto in = oc.closure(gens);
	gen.expect(std::count(in.begin(), in.end(), true) == static_cast<long>(oc.size()));
	ext.into(rep);
	gen.into(rep);
	return rep;
}

namespace detail {

inline Int det(IntMat const &m)
{
	size_t n = m.size();
	if (n == 0)
		return 1;
	Int out = 0;
	for (size_t j = 0; j < n; ++j)
	{
		IntMat minor;
		for (size_t i = 1; i < n; ++i)
		{
			IntVec row;
			for (size_t k = 0; k < n; ++k)
				if (k != j)
					row.push_back(m[i][k]);
			minor.push_back(row);
		}
		Int term = mul(m[0][j], det(minor));
		out = (j % 2) ? sub(out, term) : nilq::add(out, term);
	}
	return out;
}

} // namespace detail

/// 0 -> Λ²(G_ab) -> G -> G_ab -> 0 for the free nil₂-group of rank n.
inline Report verify_free_extension(size_t n)
{
	Report rep;
	Nil2Group g = nil2_free(n);
	std::string inst = "free(" + std::to_string(n) + ")";
	Tally t("coproduct.free-central-extension", inst);
	t.expect(g.A() == FGAbelian::free(n), [] { return std::string("abelianization"); });
	t.expect(g.B() == FGAbelian::free(n * (n - 1) / 2), [] { return std::string("kernel rank"); });
	// Λ²: e_i ∧ e_j ↦ [e_i, e_j] is unimodular
	IntMat m;
	for (size_t i = 0; i < n; ++i)
		for (size_t j = i + 1; j < n; ++j)
			m.push_back(g.commutator(g.generator(i), g.generator(j)).b.coords);
	Int d = detail::det(m);
	t.expect(d == 1 || d == -1, [&] { return "det " + std::to_string(d); });
	Nil2Group c = nil2_free(n ? 1 : 0);
	for (size_t k = 1; k < n; ++k)
		c = nil2_coproduct(c, nil2_free(1));
	t.expect(ab_isomorphic(c.A(), g.A()) && ab_isomorphic(c.B(), g.B()),
	         [] { return std::string("iterated coproduct of Z"); });
	std::vector<Nil2Element> box;
	IntVec lo(n, -2);
	std::vector<size_t> sizes(n + n * (n - 1) / 2, 4);
	detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		IntVec a, b;
		for (size_t i = 0; i < ix.size(); ++i)
			(i < n ? a : b).push_back(static_cast<Int>(ix[i]) - 2);
		box.push_back(g.element(a, b));
		return true;
	});
	size_t step = detail::stride_for(box.size(), 40);
	for (size_t i = 0; i < box.size(); i += step)
		for (size_t j = 0; j < box.size(); j += step)
		{
			Nil2Element x = box[i], y = box[j];
			Nil2Element cm = g.commutator(x, y);
			bool ok = g.A().is_zero(cm.a) && g.is_central(cm) &&
			          g.add(x, y).a == g.A().add(x.a, y.a) && g.add(x, cm) == g.add(cm, x);
			t.expect(ok, [&] { return detail::show(x) + "," + detail::show(y); });
		}
	t.into(rep);
	return rep;
}

/// exp and log are mutually inverse on G and commutators agree with brackets.
inline Report verify_maltsev_roundtrip(NamedGroup const &ng)
{
	Report rep;
	Nil2Group const &g = ng.group;
	Nil2LieRing l = lie_log(g);
	Nil2Group e = lie_exp(l);
	auto xs = l.elements();
	auto zs = nil2_enumerate(g);
	size_t step = detail::stride_for(xs.size(), 32);
	Tally data("maltsev.log-exp", ng.name), elems("maltsev.exp-log", ng.name),
	    brk("maltsev.commutator-bracket", ng.name);
	data.expect(lie_log(e) == l, [] { return std::string("log(exp(L)) differs from L"); });
	std::set<size_t> image;
	for (auto const &a : xs)
	{
		Nil2Element z = lie_exp_element(g, a);
		image.insert(g.index_of(z));
		elems.expect(lie_log_element(g, z) == a, [&] { return detail::show(a); });
	}
	for (auto const &z : zs)
		elems.expect(lie_exp_element(g, lie_log_element(g, z)) == z, [&] { return detail::show(z); });
	elems.expect(image.size() == zs.size(), [] { return std::string("not bijective"); });
	for (size_t i = 0; i < xs.size(); i += (xs.size() > 27 ? step : 1))
		for (auto const &b : xs)
		{
			Nil2Element const &a = xs[i];
			elems.expect(lie_exp_element(g, e.add(a, b)) ==
			                 g.add(lie_exp_element(g, a), lie_exp_element(g, b)),
			             [&] { return detail::show(a) + "," + detail::show(b); });
		}
	for (auto const &x : zs)
		for (auto const &y : zs)
		{
			Nil2Element lx = lie_log_element(g, x), ly = lie_log_element(g, y);
			brk.expect(lie_log_element(g, g.commutator(x, y)) == l.bracket(lx, ly) &&
			               e.commutator(lx, ly) == l.bracket(lx, ly),
			           [&] { return detail::show(x) + "," + detail::show(y); });
		}
	for (auto *x : {&data, &elems, &brk})
		x->into(rep);
	return rep;
}

/// The q-maps G -> H, the pairs (g, h) and the Lie-side q-maps describe the
/// same set of maps log G -> log H. Lie-side conditions are checked on every
/// `lie_stride`-th map.
inline Report verify_lie_characterizations(NamedGroup const &ng, NamedGroup const &nh, size_t lie_stride = 1)
{
	Report rep;
	Nil2Group const &g = ng.group, &h = nh.group;
	std::string inst = ng.name + "->" + nh.name;
	Nil2LieRing l = lie_log(g), m = lie_log(h);
	auto zs = nil2_enumerate(g);
	std::set<std::vector<size_t>> groups_side, pairs_side;
	qmap_for_each(g, h, [&](QMap const &f) {
		std::vector<size_t> t;
		for (auto const &z : zs)
			t.push_back(h.index_of(f.eval(z)));
		groups_side.insert(std::move(t));
		return true;
	});
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
	Tally same("maltsev.qmap-iff-decomposition", inst), lie("maltsev.qmap-from-lie-data", inst);
	same.expect(groups_side == pairs_side, [&] {
		return std::to_string(groups_side.size()) + " vs " + std::to_string(pairs_side.size());
	});
	auto xs = l.elements();
	std::vector<Nil2Element> comms;
	for (auto const &a : xs)
		if (l.A().is_zero(a.a))
			comms.push_back(a);
	std::vector<size_t> lidx(xs.size());
	for (size_t i = 0; i < xs.size(); ++i)
		lidx[i] = g.index_of(lie_exp_element(g, xs[i]));
	size_t k = 0;
	for (auto const &t : groups_side)
	{
		if (k++ % lie_stride)
			continue;
		std::vector<Nil2Element> F(xs.size());
		for (size_t i = 0; i < xs.size(); ++i)
			F[i] = lie_log_element(h, h.element_at(t[lidx[i]]));
		auto at = [&](Nil2Element const &a) { return l.index_of(a); };
		auto cross = [&](size_t a, size_t b) {
			return m.sub(F[at(l.add(xs[a], xs[b]))], m.add(F[a], F[b]));
		};
		bool ok = true;
		for (size_t a = 0; a < xs.size() && ok; ++a)
			for (size_t b = 0; b < xs.size() && ok; ++b)
			{
				Nil2Element c = cross(a, b);
				ok = m.A().is_zero(c.a) && c == cross(b, a);
				for (size_t s = 0; s < xs.size() && ok; s += 4)
					ok = cross(at(l.add(xs[a], xs[s])), b) == m.add(c, cross(s, b));
			}
		for (auto const &c : comms)
		{
			ok = ok && m.A().is_zero(F[at(c)].a);
			for (size_t a = 0; a < xs.size() && ok; ++a)
				ok = F[at(l.add(xs[a], c))] == m.add(F[a], F[at(c)]);
		}
		lie.expect(ok, [&] { return std::string("map #") + std::to_string(k - 1); });
	}
	same.into(rep);
	lie.into(rep);
	return rep;
}

/// bolo_decide against the exhaustive witness search; a positive linear
/// witness must yield a q-map with q-map inverse.
inline Report verify_bolo(NamedGroup const &ng, NamedGroup const &nh)
{
	Report rep;
	Nil2Group const &g = ng.group, &h = nh.group;
	Tally t("maltsev.bolo-vs-witness", ng.name + "," + nh.name);
	BoloResult b = bolo_decide(g, h);
	NiqWitnessSearch s = find_niq_iso_witness(g, h);
	t.expect(b.isomorphic == s.found(), [&] {
		return "bolo " + std::string(b.isomorphic ? "yes" : "no") + " witness " + (s.found() ? "yes" : "no");
	});
	if (b.witness)
	{
		QMap f = bolo_witness_qmap(g, h, *b.witness);
		auto hs = nil2_enumerate(h);
		std::vector<long> inv(hs.size(), -1);
		bool ok = b.witness->is_bijective() && qmap_satisfies_definition(f);
		for (auto const &z : nil2_enumerate(g))
			inv[h.index_of(f.eval(z))] = static_cast<long>(g.index_of(z));
		ok = ok && std::find(inv.begin(), inv.end(), -1) == inv.end();
		if (ok)
		{
			try
			{
				QMap back = QMap::from_function(h, g, [&](Nil2Element const &z) {
					return g.element_at(static_cast<size_t>(inv[h.index_of(z)]));
				});
				for (auto const &z : hs)
					ok = ok && f.eval(back.eval(z)) == z;
			}
			catch (Error const &)
			{
				ok = false;
			}
		}
		t.expect(ok, [] { return std::string("linear witness does not give a Niq-isomorphism"); });
	}
	t.into(rep);
	return rep;
}

/// Options shared by the suites.
struct SuiteOptions
{
	Int max_order = 64;
};

inline std::vector<std::string> suite_tags()
{
	return {"lemmas", "coproduct", "qmap", "classify", "linext", "maltsev", "negative"};
}

namespace detail {

inline std::vector<NamedGroup> named_finite(Int max_order)
{
	std::vector<NamedGroup> out;
	for (auto &[n, g] : catalog_finite(max_order))
		out.push_back({n, g});
	return out;
}

inline NamedGroup named_entry(std::string const &n) { return {n, *catalog_lookup(n)}; }

inline Report suite_lemmas(SuiteOptions const &o)
{
	Report rep;
	auto gs = named_finite(std::min<Int>(32, o.max_order));
	for (auto const &g : gs)
		rep.append(verify_group_lemmas(g));
	for (auto const &g : gs)
		for (auto const &h : gs)
			rep.append(verify_qmap_lemmas(g, h));
	return rep;
}

inline Report suite_coproduct(SuiteOptions const &o)
{
	Report rep;
	Nil2Group c = nil2_coproduct(catalog_abelian({2}), catalog_abelian({2}));
	Tally iso("coproduct.Z2vZ2-iso-D4", "Z2vZ2,D4");
	auto phi = find_group_iso(c, catalog_d4());
	iso.expect(phi.has_value(), [] { return std::string("no isomorphism"); });
	if (phi)
	{
		Nil2Group d = catalog_d4();
		auto el = nil2_enumerate(c);
		std::set<size_t> img(phi->begin(), phi->end());
		iso.expect(img.size() == el.size());
		for (auto const &x : el)
			for (auto const &y : el)
				iso.expect(d.element_at((*phi)[c.index_of(c.add(x, y))]) ==
				               d.add(d.element_at((*phi)[c.index_of(x)]), d.element_at((*phi)[c.index_of(y)])),
				           [&] { return show(x) + "," + show(y); });
	}
	iso.into(rep);
	std::vector<std::pair<std::string, std::string>> factors = {
	    {"Z2", "Z2"}, {"Z2", "Z4"}, {"Z2", "Z2xZ2"}, {"Z3", "Z3"}, {"Z4", "Z2"}};
	for (auto const &[a, b] : factors)
		for (auto const &x : named_finite(std::min<Int>(16, o.max_order)))
			rep.append(verify_coproduct_universal(named_entry(a), named_entry(b), x));
	for (size_t n = 1; n <= 3; ++n)
		rep.append(verify_free_extension(n));
	return rep;
}

inline Report suite_qmap(SuiteOptions const &o)
{
	Report rep;
	auto gs = named_finite(std::min<Int>(16, o.max_order));
	for (auto const &g : gs)
		for (auto const &h : gs)
			rep.append(verify_qmap_algebra(g, h));
	auto small = named_finite(std::min<Int>(8, o.max_order));
	for (auto const &g1 : small)
		for (auto const &g : small)
			for (auto const &h : small)
				rep.append(verify_composition(g1, g, h));
	return rep;
}

inline Report suite_classify(SuiteOptions const &o)
{
	Report rep;
	for (auto const &[n, expect] : std::vector<std::pair<std::string, bool>>{
	         {"D4", true}, {"Q8", true}, {"Z9:Z3", false}, {"Z25:Z5", false}})
	{
		Nil2Group g = *catalog_lookup(n);
		QSplitResult r = is_qsplit(g);
		Tally t("classify.qsplit", n);
		t.expect(r.qsplit == expect, [&] { return std::string("verdict ") + (r.qsplit ? "yes" : "no"); });
		if (r.section)
		{
			bool ok = qmap_satisfies_definition(*r.section);
			for (auto const &x : ab_enumerate(g.A()))
				ok = ok && r.section->eval({x, r.section->source().B().zero()}).a == x;
			t.expect(ok, [] { return std::string("section witness invalid"); });
		}
		t.expect(r.section.has_value() == expect);
		t.into(rep);
	}
	{
		Nil2Group d = catalog_d4(), q = catalog_q8();
		NiqDecision dq = niq_iso_decide(d, q, {true, o.max_order});
		Tally t("classify.niq-iso", "D4,Q8");
		t.expect(dq.isomorphic, [] { return std::string("verdict no"); });
		bool ok = dq.forward && dq.backward;
		if (ok)
		{
			for (auto const &z : nil2_enumerate(d))
				ok = ok && dq.backward->eval(dq.forward->eval(z)) == z;
			for (auto const &z : nil2_enumerate(q))
				ok = ok && dq.forward->eval(dq.backward->eval(z)) == z;
			ok = ok && qmap_satisfies_definition(*dq.forward) && qmap_satisfies_definition(*dq.backward);
		}
		t.expect(ok, [] { return std::string("witness not invertible"); });
		t.into(rep);
		NiqDecision hm = niq_iso_decide(*catalog_lookup("Z3vZ3"), *catalog_lookup("Z9:Z3"), {true, o.max_order});
		Tally u("classify.niq-iso", "Z3vZ3,Z9:Z3");
		u.expect(!hm.isomorphic, [] { return std::string("verdict yes"); });
		u.into(rep);
	}
	Tally agree("classify.paths-agree", "catalog<=27");
	auto gs = named_finite(std::min<Int>(27, o.max_order));
	for (auto const &g : gs)
		for (auto const &h : gs)
		{
			if (*g.group.order() != *h.group.order())
				continue;
			try
			{
				NiqDecision d = niq_iso_decide(g.group, h.group, {true, o.max_order});
				agree.expect(d.paths.size() >= 2 || g.name == h.name,
				             [&] { return g.name + "," + h.name + " single path"; });
			}
			catch (Error const &e)
			{
				agree.expect(false, [&] { return g.name + "," + h.name + " " + e.what(); });
			}
		}
	agree.into(rep);
	return rep;
}

inline Report suite_linext(SuiteOptions const &o)
{
	Report rep;
	auto gs = named_finite(std::min<Int>(8, o.max_order));
	for (auto lv : {ExtensionLevel::Nil, ExtensionLevel::NiqSim, ExtensionLevel::NiqApprox})
		for (auto const &g : gs)
			for (auto const &h : gs)
				rep.append(linear_extension_verify(lv, g, h, g, 400));
	return rep;
}

inline Report suite_maltsev(SuiteOptions const &o)
{
	Report rep;
	std::vector<NamedGroup> odd, odd27;
	for (auto const &g : named_finite(std::min<Int>(125, std::max<Int>(o.max_order, 125))))
		if (*g.group.order() % 2 == 1)
		{
			odd.push_back(g);
			if (*g.group.order() == 27)
				odd27.push_back(g);
		}
	for (auto const &g : odd)
		rep.append(verify_maltsev_roundtrip(g));
	// Z3vZ3 is isomorphic to Heis3
	std::vector<NamedGroup> nonab{named_entry("Heis3"), named_entry("Z9:Z3")};
	for (auto const &g : nonab)
		for (auto const &h : nonab)
			rep.append(verify_lie_characterizations(g, h, 61));
	for (auto const &g : odd27)
		for (auto const &h : odd27)
			rep.append(verify_bolo(g, h));
	return rep;
}

inline Report suite_negative(SuiteOptions const &)
{
	Report rep;
	Nil2Group a = *catalog_lookup("Z2^3"), c = *catalog_lookup("Z2vZ2");
	NiqWitnessSearch fw = directed_witness(a, c), bw = directed_witness(c, a);
	Tally t("negative.bijective-not-invertible", "Z2^3,Z2vZ2");
	t.expect(fw.bijective > 0, [] { return std::string("no bijective q-map"); });
	t.expect(fw.inverse_rejected == fw.bijective && !fw.found(),
	         [] { return std::string("some inverse is a q-map"); });
	t.into(rep);
	Tally u("negative.abelian-target-homs", "Z2vZ2,Z2^3");
	bool homs = true;
	qmap_for_each(c, a, [&](QMap const &f) {
		homs = homs && f.is_hom();
		return true;
	});
	u.expect(homs, [] { return std::string("non-homomorphism into abelian target"); });
	u.expect(bw.bijective == 0 && !find_group_iso(a, c).has_value());
	u.into(rep);
	Tally v("negative.niq-verdict", "Z2^3,Z2vZ2");
	v.expect(!find_niq_iso_witness(a, c).found() && !niq_iso_decide(a, c).isomorphic);
	v.into(rep);
	return rep;
}

} // namespace detail

/// Runs one named suite, or all of them for "all".
inline Report run_suite(std::string const &tag, SuiteOptions const &o = {})
{
	if (tag == "all")
	{
		Report rep;
		for (auto const &t : suite_tags())
			rep.append(run_suite(t, o));
		return rep;
	}
	if (tag == "lemmas")
		return detail::suite_lemmas(o);
	if (tag == "coproduct")
		return detail::suite_coproduct(o);
	if (tag == "qmap")
		return detail::suite_qmap(o);
	if (tag == "classify")
		return detail::suite_classify(o);
	if (tag == "linext")
		return detail::suite_linext(o);
	if (tag == "maltsev")
		return detail::suite_maltsev(o);
	if (tag == "negative")
		return detail::suite_negative(o);
	fail(ErrorKind::InvalidArgument, "unknown suite '" + tag + "'");
}

} // namespace nilq
