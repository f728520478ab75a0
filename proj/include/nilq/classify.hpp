#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nilq/maltsev.hpp"
#include "nilq/qmap_enumerate.hpp"
#include "nilq/report.hpp"

namespace nilq {

/// Isomorphic abelianizations and isomorphic commutator subgroups.
inline bool similar(Nil2Group const &g, Nil2Group const &h)
{
	return ab_isomorphic(g.A(), h.A()) && ab_isomorphic(g.B(), h.B());
}

struct QSplitResult
{
	bool qsplit = false;
	bool structural = false;     // decided from the relations alone (infinite groups)
	std::optional<QMap> section; // G_ab -> G with fab = id
};

/// Membership form of the section condition: for every generator of finite
/// order d, the element d·E_i = (0, T_i) must lie in d·B + C(d,2)·B[d].
inline bool qsplit_criterion(Nil2Group const &g)
{
	FGAbelian const &b = g.B();
	for (size_t i = 0; i < g.rank(); ++i)
	{
		Int d = g.A().order(i);
		if (d == 0)
			continue;
		std::vector<AbElement> gens;
		for (size_t k = 0; k < b.rank(); ++k)
		{
			gens.push_back(b.scale(b.generator(k), d));
			Int m = b.order(k);
			if (m > 0)
				gens.push_back(b.scale(b.generator(k), mul(m / gcd0(m, d), binom2(d))));
		}
		AbElement t = g.multiple(g.generator(i), d).b;
		if (!ab_subgroup_generated(b, gens).contains(t))
			return false;
	}
	return true;
}

/// is_qsplit.  Finite groups: search over section data with fab = id; the
/// blocks are independent, so the lexicographically first section takes the
/// first option of every block.  Infinite groups: qsplit_criterion.
inline QSplitResult is_qsplit(Nil2Group const &g)
{
	QSplitResult out;
	if (!g.is_finite())
	{
		out.structural = true;
		out.qsplit = qsplit_criterion(g);
		return out;
	}
	Nil2Group a = Nil2Group::abelian(g.A());
	AbHom id = AbHom::identity(g.A());
	AbHom zero = AbHom::zero(a.B(), g.B());
	detail::QMapBlocks blocks = detail::qmap_blocks(a, g, id, zero);
	for (auto const &o : blocks.diag)
		if (o.empty())
			return out;
	for (auto const &o : blocks.off)
		if (o.empty())
			return out;
	size_t r = g.rank();
	std::vector<AbElement> gamma(r);
	BMatrix delta(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
	{
		gamma[i] = blocks.diag[i][0].first;
		delta[i][i] = blocks.diag[i][0].second;
	}
	for (size_t p = 0; p < blocks.pairs.size(); ++p)
	{
		auto [i, j] = blocks.pairs[p];
		delta[i][j] = blocks.off[p][0].first;
		delta[j][i] = blocks.off[p][0].second;
	}
	out.qsplit = true;
	out.section = QMap::make(a, g, id, zero, gamma, delta);
	return out;
}

namespace detail {

/// Value table of a q-map on a finite source, by index_of on both sides.
inline std::vector<size_t> value_table(QMap const &f)
{
	std::vector<size_t> v;
	nil2_for_each_element(f.source(), [&](Nil2Element const &z) {
		v.push_back(f.target().index_of(f.eval(z)));
		return true;
	});
	return v;
}

inline AbElement tensor_element(TensorLayout const &t, AbElement const &x, AbElement const &y)
{
	IntVec c(t.group.rank(), 0);
	for (size_t i = 0; i < x.size(); ++i)
		for (size_t j = 0; j < y.size(); ++j)
		{
			long p = t.position[t.index(i, j)];
			if (p >= 0)
				c[static_cast<size_t>(p)] = nilq::add(c[static_cast<size_t>(p)], mul(x[i], y[j]));
		}
	return t.group.element(std::move(c));
}

} // namespace detail

/// Outcome of the exhaustive Niq-isomorphism witness search.
struct NiqWitnessSearch
{
	std::optional<QMap> forward, backward;
	Int candidates = 0;       // q-maps G -> H inspected
	Int bijective = 0;        // of which bijective
	Int inverse_rejected = 0; // bijective, but the inverse is not a q-map
	bool reversed = false;    // the counters refer to H -> G

	bool found() const { return forward.has_value(); }
};

namespace detail {

/// Scans q-maps G -> H only; the counters refer to that direction.
inline NiqWitnessSearch directed_witness(Nil2Group const &g, Nil2Group const &h)
{
	NiqWitnessSearch out;
	auto ge = nil2_enumerate(g);
	auto he = nil2_enumerate(h);
	size_t n = ge.size();
	qmap_for_each(g, h, [&](QMap const &f) {
		++out.candidates;
		std::vector<long> inv(n, -1);
		for (size_t x = 0; x < n; ++x)
		{
			size_t y = h.index_of(f.eval(ge[x]));
			if (inv[y] >= 0)
				return true;
			inv[y] = static_cast<long>(x);
		}
		++out.bijective;
		auto back = [&](Nil2Element const &z) { return ge[static_cast<size_t>(inv[h.index_of(z)])]; };
		try
		{
			QMap b = QMap::from_function(h, g, back);
			for (auto const &z : he)
				if (!(b.eval(z) == back(z)))
				{
					++out.inverse_rejected;
					return true;
				}
			out.forward = f;
			out.backward = b;
			return false;
		}
		catch (Error const &e)
		{
			if (e.kind() != ErrorKind::NotAQMap && e.kind() != ErrorKind::InvalidHomomorphism)
				throw;
		}
		++out.inverse_rejected;
		return true;
	});
	return out;
}

} // namespace detail

/// find_niq_iso_witness: the identity when G = H, otherwise the first
/// bijective q-map whose inverse is again a q-map. The search runs over
/// whichever of qw(G, H), qw(H, G) is smaller; `reversed` records H -> G.
inline NiqWitnessSearch find_niq_iso_witness(Nil2Group const &g, Nil2Group const &h)
{
	if (!g.is_finite() || !h.is_finite())
		fail(ErrorKind::Unsupported, "witness search needs finite groups");
	NiqWitnessSearch out;
	if (g == h)
	{
		out.forward = out.backward = QMap::identity(g);
		return out;
	}
	if (*g.order() != *h.order())
		return out;
	if (qmap_count(h, g) >= qmap_count(g, h))
		return detail::directed_witness(g, h);
	out = detail::directed_witness(h, g);
	std::swap(out.forward, out.backward);
	out.reversed = true;
	return out;
}

struct NiqPathVerdict
{
	std::string path; // "qsplit", "bolo" or "witness"
	bool isomorphic = false;
};

struct NiqDecision
{
	bool isomorphic = false;
	std::vector<NiqPathVerdict> paths; // in the order they ran; the first decides
	std::optional<QMap> forward, backward;
	std::optional<LieLinearMap> bolo_witness;
	std::optional<NiqWitnessSearch> search;
};

struct NiqOptions
{
	bool cross_check = false; // also run the witness search when a theorem applies
	Int max_order = 64;       // guard on the witness search
};

/// niq_iso_decide: both q-split → similarity; both of odd order → bolo;
/// otherwise the witness search.  Paths that ran must agree.
inline NiqDecision niq_iso_decide(Nil2Group const &g, Nil2Group const &h, NiqOptions const &opt = {})
{
	if (!g.is_finite() || !h.is_finite())
		fail(ErrorKind::Unsupported, "niq_iso_decide needs finite groups");
	NiqDecision out;
	if (is_qsplit(g).qsplit && is_qsplit(h).qsplit)
		out.paths.push_back({"qsplit", similar(g, h)});
	bool odd = *g.order() % 2 == 1 && *h.order() % 2 == 1;
	if (odd)
	{
		BoloResult b = bolo_decide(g, h);
		out.paths.push_back({"bolo", b.isomorphic});
		out.bolo_witness = b.witness;
	}
	if (out.paths.empty() || opt.cross_check)
	{
		if (std::max(*g.order(), *h.order()) > opt.max_order)
		{
			if (out.paths.empty())
				fail(ErrorKind::Unsupported, "witness search above the order guard " +
				                                 std::to_string(opt.max_order));
		}
		else
		{
			NiqWitnessSearch s = find_niq_iso_witness(g, h);
			out.paths.push_back({"witness", s.found()});
			out.forward = s.forward;
			out.backward = s.backward;
			out.search = std::move(s);
		}
	}
	out.isomorphic = out.paths.front().isomorphic;
	for (auto const &p : out.paths)
		if (p.isomorphic != out.isomorphic)
			fail(ErrorKind::InvariantViolation, "decision paths disagree: " +
			                                        out.paths.front().path + " vs " + p.path);
	return out;
}

struct SimEquivalence
{
	bool equivalent = false;
	std::optional<AbHom> alpha; // G_ab ⊗ G_ab -> [H,H] with g = f + α(x̂, x̂)
	std::string reason;
};

/// f ~ g: solves α(e_i⊗e_i) = γ_i, α(e_i⊗e_j) + α(e_j⊗e_i) = δ_ij for the
/// difference g - f, taking the first solution of every pair block.
inline SimEquivalence qmap_sim_equiv(QMap const &f, QMap const &g)
{
	if (!(f.source() == g.source()) || !(f.target() == g.target()))
		fail(ErrorKind::InvalidArgument, "qmap_sim_equiv: endpoints differ");
	SimEquivalence out;
	Nil2Group const &src = f.source(), &h = f.target();
	FGAbelian const &bh = h.B();
	if (!(f.fab() == g.fab()))
	{
		out.reason = "g - f is not valued in [H,H]";
		return out;
	}
	if (!(f.fcomm() == g.fcomm()))
	{
		out.reason = "f and g differ on [G,G]";
		return out;
	}
	QMap d = qmap_sub(g, f);
	size_t r = src.rank();
	TensorLayout lay = tensor_layout(src.A(), src.A());
	std::vector<AbElement> imgs(lay.group.rank(), bh.zero());
	auto put = [&](size_t i, size_t j, AbElement const &v) {
		long p = lay.position[lay.index(i, j)];
		if (p >= 0)
			imgs[static_cast<size_t>(p)] = v;
	};
	for (size_t i = 0; i < r; ++i)
	{
		Int di = src.A().order(i);
		AbElement gam = d.gamma()[i];
		if (!bh.is_zero(bh.scale(gam, di)) || !(d.delta(i, i) == bh.scale(gam, 2)))
		{
			out.reason = "no α matches the difference at generator " + std::to_string(i + 1);
			return out;
		}
		put(i, i, gam);
	}
	for (size_t i = 0; i < r; ++i)
		for (size_t j = i + 1; j < r; ++j)
		{
			Int e = gcd0(src.A().order(i), src.A().order(j));
			bool solved = false;
			for (auto const &t : ab_torsion_elements(bh, e))
			{
				AbElement u = bh.sub(d.delta(i, j), t);
				if (!bh.is_zero(bh.scale(u, e)))
					continue;
				put(i, j, t);
				put(j, i, u);
				solved = true;
				break;
			}
			if (!solved)
			{
				out.reason = "no α matches the difference at (" + std::to_string(i + 1) + "," +
				             std::to_string(j + 1) + ")";
				return out;
			}
		}
	AbHom alpha = AbHom::from_images(lay.group, bh, imgs);
	if (src.is_finite())
		nil2_for_each_element(src, [&](Nil2Element const &z) {
			Nil2Element want =
			    h.add(f.eval(z), h.central(alpha.apply(detail::tensor_element(lay, z.a, z.a))));
			if (!(g.eval(z) == want))
				fail(ErrorKind::InvariantViolation, "α does not reproduce g at " + to_string(z));
			return true;
		});
	out.equivalent = true;
	out.alpha = std::move(alpha);
	out.reason = "α found";
	return out;
}

/// f ≈ g: equal induced maps on abelianizations and on commutator subgroups.
inline bool qmap_approx_equiv(QMap const &f, QMap const &g)
{
	if (!(f.source() == g.source()) || !(f.target() == g.target()))
		fail(ErrorKind::InvalidArgument, "qmap_approx_equiv: endpoints differ");
	return f.fab() == g.fab() && f.fcomm() == g.fcomm();
}

struct NamedGroup
{
	std::string name;
	Nil2Group group;
};

enum class ExtensionLevel {
	Nil,       // D(G,H) = Hom(G_ab, [H,H]) on homomorphisms, quotient Nil~
	NiqSim,    // D~(G,H) on q-maps, quotient Niq~
	NiqApprox, // D≈(G,H) = qu(G_ab, [H,H]) on q-maps, quotient Niq≈
};

inline std::string to_string(ExtensionLevel l)
{
	switch (l)
	{
	case ExtensionLevel::Nil: return "nil";
	case ExtensionLevel::NiqSim: return "niq-sim";
	case ExtensionLevel::NiqApprox: return "niq-approx";
	}
	return "?";
}

namespace detail {

/// A central correction x ↦ t(x̂), stored as a table on G_ab.
using ActionTable = std::vector<AbElement>;

/// f + t, rebuilt from generator data.
inline QMap shifted(QMap const &f, ActionTable const &t)
{
	Nil2Group const &g = f.source(), &h = f.target();
	FGAbelian const &bh = h.B();
	size_t r = g.rank();
	auto at = [&](AbElement const &x) { return t[g.A().index_of(x)]; };
	std::vector<AbElement> gamma(r);
	BMatrix delta = f.delta();
	for (size_t i = 0; i < r; ++i)
	{
		AbElement ei = g.A().generator(i);
		gamma[i] = bh.add(f.gamma()[i], at(ei));
		for (size_t j = 0; j < r; ++j)
		{
			AbElement ej = g.A().generator(j);
			AbElement c = bh.sub(at(g.A().add(ei, ej)), bh.add(at(ei), at(ej)));
			delta[i][j] = bh.add(delta[i][j], c);
		}
	}
	return QMap::make(g, h, f.fab(), f.fcomm(), gamma, delta);
}

/// The acting group D(G, H) of a level, one table per element.
inline std::vector<ActionTable> action_tables(ExtensionLevel level, Nil2Group const &g,
                                              Nil2Group const &h)
{
	FGAbelian const &a = g.A(), &bh = h.B();
	auto xs = ab_enumerate(a);
	std::vector<ActionTable> out;
	if (level == ExtensionLevel::Nil)
	{
		for (auto const &k : ab_enumerate_homs(a, bh))
		{
			ActionTable t;
			for (auto const &x : xs)
				t.push_back(k.apply(x));
			out.push_back(std::move(t));
		}
		return out;
	}
	if (level == ExtensionLevel::NiqSim)
	{
		TensorLayout lay = tensor_layout(a, a);
		std::set<std::vector<AbElement>> seen;
		for (auto const &alpha : ab_enumerate_homs(lay.group, bh))
		{
			ActionTable t;
			for (auto const &x : xs)
				t.push_back(alpha.apply(tensor_element(lay, x, x)));
			if (seen.insert(t).second)
				out.push_back(std::move(t));
		}
		return out;
	}
	// quadratic maps G_ab -> [H,H], by filtering all functions
	auto bs = ab_enumerate(bh);
	std::vector<size_t> sizes(xs.size(), bs.size());
	std::vector<std::vector<size_t>> sum(xs.size(), std::vector<size_t>(xs.size()));
	for (size_t x = 0; x < xs.size(); ++x)
		for (size_t y = 0; y < xs.size(); ++y)
			sum[x][y] = a.index_of(a.add(xs[x], xs[y]));
	for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		if (!bh.is_zero(bs[ix[0]]))
			return true;
		auto cr = [&](size_t x, size_t y) {
			return bh.sub(bs[ix[sum[x][y]]], bh.add(bs[ix[x]], bs[ix[y]]));
		};
		for (size_t x = 0; x < xs.size(); ++x)
			for (size_t x2 = 0; x2 < xs.size(); ++x2)
				for (size_t y = 0; y < xs.size(); ++y)
					if (!(cr(sum[x][x2], y) == bh.add(cr(x, y), cr(x2, y))))
						return true;
		ActionTable t;
		for (size_t x = 0; x < xs.size(); ++x)
			t.push_back(bs[ix[x]]);
		out.push_back(std::move(t));
		return true;
	});
	return out;
}

inline std::vector<QMap> level_morphisms(ExtensionLevel level, Nil2Group const &g,
                                         Nil2Group const &h)
{
	std::vector<QMap> out;
	qmap_for_each(g, h, [&](QMap const &f) {
		if (level != ExtensionLevel::Nil || f.is_hom())
			out.push_back(f);
		return true;
	});
	return out;
}

/// Up to `cap` evenly strided indices below `total`.
inline std::vector<size_t> strided(size_t total, size_t cap)
{
	std::vector<size_t> out;
	if (total == 0)
		return out;
	size_t step = total <= cap ? 1 : (total + cap - 1) / cap;
	for (size_t t = 0; t < total; t += step)
		out.push_back(t);
	return out;
}

} // namespace detail

/// linear_extension_verify: action on fibers, transitivity, effectivity and
/// the distributivity law on composable triples K -> G -> H.
inline Report linear_extension_verify(ExtensionLevel level, NamedGroup const &g,
                                      NamedGroup const &h, NamedGroup const &k,
                                      size_t max_triples = 2000)
{
	Report rep;
	std::string lv = "linext." + to_string(level) + ".";
	std::string inst = g.name + "->" + h.name;
	Nil2Group const &G = g.group, &H = h.group;
	auto E = detail::level_morphisms(level, G, H);
	auto D = detail::action_tables(level, G, H);
	auto xs = nil2_enumerate(G);

	// fiber keys: (fab, fcomm) for Nil and Niq≈; ~-classes for Niq~
	std::vector<size_t> key(E.size());
	{
		std::map<std::pair<IntMat, IntMat>, std::vector<size_t>> by_ab;
		for (size_t i = 0; i < E.size(); ++i)
			by_ab[{E[i].fab().matrix(), E[i].fcomm().matrix()}].push_back(i);
		size_t next = 0;
		for (auto const &[_, members] : by_ab)
		{
			std::vector<size_t> reps;
			for (size_t i : members)
			{
				if (level != ExtensionLevel::NiqSim)
				{
					if (reps.empty())
						reps.push_back(i), key[i] = next++;
					else
						key[i] = key[reps[0]];
					continue;
				}
				bool placed = false;
				for (size_t rpi : reps)
					if (qmap_sim_equiv(E[rpi], E[i]).equivalent)
					{
						key[i] = key[rpi];
						placed = true;
						break;
					}
				if (!placed)
					reps.push_back(i), key[i] = next++;
			}
		}
	}
	std::map<std::vector<size_t>, size_t> index_of_table;
	std::vector<std::vector<size_t>> tables;
	for (size_t i = 0; i < E.size(); ++i)
	{
		tables.push_back(detail::value_table(E[i]));
		index_of_table.emplace(tables.back(), i);
	}

	Tally pointwise(lv + "action-pointwise", inst), fibers(lv + "action-preserves-fibers", inst),
	    transitive(lv + "transitive", inst), effective(lv + "effective", inst);
	// f + a is read off pointwise; rebuilding it from generator data is
	// checked on a strided sample
	std::vector<size_t> xa;
	for (auto const &z : xs)
		xa.push_back(G.A().index_of(z.a));
	std::set<size_t> rebuild;
	for (size_t t : detail::strided(E.size() * D.size(), max_triples))
		rebuild.insert(t);
	for (size_t i = 0; i < E.size(); ++i)
	{
		std::set<size_t> orbit;
		for (size_t a = 0; a < D.size(); ++a)
		{
			std::vector<size_t> fa(xs.size());
			for (size_t z = 0; z < xs.size(); ++z)
				fa[z] = H.index_of(H.add(H.element_at(tables[i][z]), H.central(D[a][xa[z]])));
			if (rebuild.count(i * D.size() + a))
			{
				bool pw = detail::value_table(detail::shifted(E[i], D[a])) == fa;
				pointwise.expect(pw, [&] { return "f#" + std::to_string(i) + " a#" + std::to_string(a); });
			}
			auto it = index_of_table.find(fa);
			bool in_fiber = it != index_of_table.end() && key[it->second] == key[i];
			fibers.expect(in_fiber, [&] { return "f#" + std::to_string(i) + " a#" + std::to_string(a); });
			if (it != index_of_table.end())
				orbit.insert(it->second);
		}
		std::set<size_t> fiber;
		for (size_t j = 0; j < E.size(); ++j)
			if (key[j] == key[i])
				fiber.insert(j);
		transitive.expect(orbit == fiber, [&] { return "f#" + std::to_string(i); });
		effective.expect(orbit.size() == D.size(), [&] { return "f#" + std::to_string(i); });
	}
	pointwise.into(rep);
	fibers.into(rep);
	transitive.into(rep);
	effective.into(rep);

	if (level == ExtensionLevel::NiqSim)
	{
		// ρ: D~ -> D≈ is injective and the ≈-fibers split into ~-classes of size |D~|
		auto Dq = detail::action_tables(ExtensionLevel::NiqApprox, G, H);
		std::set<detail::ActionTable> dq(Dq.begin(), Dq.end());
		Tally rho(lv + "rho-mono", inst), diagram(lv + "diagram", inst);
		for (auto const &t : D)
			rho.expect(dq.count(t) == 1);
		std::map<std::pair<IntMat, IntMat>, std::set<size_t>> classes;
		std::map<std::pair<IntMat, IntMat>, size_t> sizes;
		for (size_t i = 0; i < E.size(); ++i)
		{
			auto kk = std::make_pair(E[i].fab().matrix(), E[i].fcomm().matrix());
			classes[kk].insert(key[i]);
			++sizes[kk];
		}
		for (auto const &[kk, cl] : classes)
			diagram.expect(sizes[kk] == Dq.size() && cl.size() * D.size() == Dq.size());
		rho.into(rep);
		diagram.into(rep);
	}

	// distributivity: (α + a)(β + b) = αβ + P(α)_* b + P(β)^* a
	Nil2Group const &K = k.group;
	auto E2 = detail::level_morphisms(level, K, G);
	auto D2 = detail::action_tables(level, K, G);
	auto ks = nil2_enumerate(K);
	Tally dist(lv + "distributivity", k.name + "->" + g.name + "->" + h.name);
	size_t total = E.size() * D.size() * E2.size() * D2.size();
	for (size_t t : detail::strided(total, max_triples))
	{
		size_t x = t;
		size_t ib = x % D2.size();
		x /= D2.size();
		size_t ibeta = x % E2.size();
		x /= E2.size();
		size_t ia = x % D.size();
		size_t ialpha = x / D.size();
		QMap const &alpha = E[ialpha], &beta = E2[ibeta];
		QMap lhs = qmap_compose(detail::shifted(alpha, D[ia]), detail::shifted(beta, D2[ib]));
		QMap ab = qmap_compose(alpha, beta);
		bool ok = true;
		for (auto const &z : ks)
		{
			AbElement c = H.B().add(alpha.fcomm().apply(D2[ib][K.A().index_of(z.a)]),
			                        D[ia][G.A().index_of(beta.fab().apply(z.a))]);
			ok = ok && lhs.eval(z) == H.add(ab.eval(z), H.central(c));
		}
		dist.expect(ok, [&] { return "triple#" + std::to_string(t); });
	}
	dist.into(rep);
	return rep;
}

/// weak_coproduct_verify: f = f₁p₁ + f₂p₂ on X₁ × X₂ restricts to f_k along
/// the inclusions.
inline Report weak_coproduct_verify(NamedGroup const &x1, NamedGroup const &x2, NamedGroup const &z,
                                    size_t max_pairs = 2000)
{
	Report rep;
	auto F1 = qmap_enumerate(x1.group, z.group);
	auto F2 = qmap_enumerate(x2.group, z.group);
	QMap p1 = qmap_projection(x1.group, x2.group, 0), p2 = qmap_projection(x1.group, x2.group, 1);
	QMap i1 = qmap_inclusion(x1.group, x2.group, 0), i2 = qmap_inclusion(x1.group, x2.group, 1);
	Tally t("weakcoprod.restricts", x1.name + "," + x2.name + "->" + z.name);
	for (size_t s : detail::strided(F1.size() * F2.size(), max_pairs))
	{
		QMap const &f1 = F1[s / F2.size()], &f2 = F2[s % F2.size()];
		QMap f = qmap_add(qmap_compose(f1, p1), qmap_compose(f2, p2));
		bool ok = detail::value_table(qmap_compose(f, i1)) == detail::value_table(f1) &&
		          detail::value_table(qmap_compose(f, i2)) == detail::value_table(f2);
		t.expect(ok, [&] { return "pair#" + std::to_string(s); });
	}
	t.into(rep);
	return rep;
}

} // namespace nilq
