#pragma once

#include <functional>
#include <vector>

#include "nilq/qmap.hpp"

namespace nilq {

/// Optional restrictions on the search space of qmap_for_each.
struct QMapFilter
{
	std::function<bool(AbHom const &)> fab;   // keep fab when true
	std::function<bool(AbHom const &)> fcomm; // keep fcomm when true
};

namespace detail {

struct QMapBlocks
{
	std::vector<std::vector<std::pair<AbElement, AbElement>>> diag; // (gamma_i, delta_ii)
	std::vector<std::pair<size_t, size_t>> pairs;                   // i < j
	std::vector<std::vector<std::pair<AbElement, AbElement>>> off;  // (delta_ij, delta_ji)
};

/// Independent choices once fab and fcomm are fixed: for each generator the
/// pairs (gamma_i, delta_ii) passing the order relation, and for each i < j
/// the pairs (delta_ij, delta_ji) passing the commutator relation.
inline QMapBlocks qmap_blocks(Nil2Group const &g, Nil2Group const &h, AbHom const &fab,
                              AbHom const &fcomm)
{
	QMapBlocks out;
	size_t r = g.rank();
	FGAbelian const &bh = h.B();
	auto bh_elems = ab_enumerate(bh);
	for (size_t i = 0; i < r; ++i)
	{
		Int d = g.A().order(i);
		std::vector<std::pair<AbElement, AbElement>> opts;
		AbElement fa = fab.image_of_generator(i);
		Nil2Element target = h.central(fcomm.apply(g.multiple(g.generator(i), d).b));
		for (auto const &gam : bh_elems)
		{
			Nil2Element m = h.multiple(Nil2Element{fa, gam}, d);
			for (auto const &dl : ab_torsion_elements(bh, d))
				if (h.add(m, h.central(bh.scale(dl, binom2(d)))) == target)
					opts.emplace_back(gam, dl);
		}
		out.diag.push_back(std::move(opts));
	}
	for (size_t i = 0; i < r; ++i)
		for (size_t j = i + 1; j < r; ++j)
		{
			Int e = gcd0(g.A().order(i), g.A().order(j));
			AbElement c = h.commutator_form(fab.image_of_generator(i), fab.image_of_generator(j));
			AbElement lhs =
			    fcomm.apply(g.commutator_form(g.A().generator(i), g.A().generator(j)));
			std::vector<std::pair<AbElement, AbElement>> opts;
			for (auto const &dij : ab_torsion_elements(bh, e))
			{
				AbElement dji = bh.sub(bh.add(c, dij), lhs);
				if (bh.is_zero(bh.scale(dji, e)))
					opts.emplace_back(dij, dji);
			}
			out.pairs.emplace_back(i, j);
			out.off.push_back(std::move(opts));
		}
	return out;
}

} // namespace detail

/// qmap_enumerate: every q-map G -> H in a fixed order (fab, fcomm, then the
/// per-generator and per-pair blocks).  fn returns false to stop.
template <class Fn>
bool qmap_for_each(Nil2Group const &g, Nil2Group const &h, Fn &&fn, QMapFilter const &filter = {})
{
	if (!g.is_finite() || !h.is_finite())
		fail(ErrorKind::UnsupportedEnumeration, "qmap enumeration needs finite groups");
	size_t r = g.rank();
	auto fcomms = ab_enumerate_homs(g.B(), h.B());
	return ab_for_each_hom(g.A(), h.A(), [&](AbHom const &fab) {
		if (filter.fab && !filter.fab(fab))
			return true;
		for (auto const &fcomm : fcomms)
		{
			if (filter.fcomm && !filter.fcomm(fcomm))
				continue;
			detail::QMapBlocks b = detail::qmap_blocks(g, h, fab, fcomm);
			std::vector<size_t> sizes;
			for (auto const &o : b.diag)
				sizes.push_back(o.size());
			for (auto const &o : b.off)
				sizes.push_back(o.size());
			bool go = detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
				std::vector<AbElement> gamma(r);
				BMatrix delta(r, std::vector<AbElement>(r));
				for (size_t i = 0; i < r; ++i)
				{
					gamma[i] = b.diag[i][ix[i]].first;
					delta[i][i] = b.diag[i][ix[i]].second;
				}
				for (size_t p = 0; p < b.pairs.size(); ++p)
				{
					auto [i, j] = b.pairs[p];
					delta[i][j] = b.off[p][ix[r + p]].first;
					delta[j][i] = b.off[p][ix[r + p]].second;
				}
				return static_cast<bool>(fn(QMap::make(g, h, fab, fcomm, gamma, delta)));
			});
			if (!go)
				return false;
		}
		return true;
	});
}

inline std::vector<QMap> qmap_enumerate(Nil2Group const &g, Nil2Group const &h)
{
	std::vector<QMap> out;
	qmap_for_each(g, h, [&](QMap const &f) {
		out.push_back(f);
		return true;
	});
	return out;
}

/// |qw(G, H)| from the block sizes, without materializing the maps.
inline Int qmap_count(Nil2Group const &g, Nil2Group const &h)
{
	if (!g.is_finite() || !h.is_finite())
		fail(ErrorKind::UnsupportedEnumeration, "qmap counting needs finite groups");
	auto fcomms = ab_enumerate_homs(g.B(), h.B());
	Int total = 0;
	ab_for_each_hom(g.A(), h.A(), [&](AbHom const &fab) {
		for (auto const &fcomm : fcomms)
		{
			detail::QMapBlocks b = detail::qmap_blocks(g, h, fab, fcomm);
			Int n = 1;
			for (auto const &o : b.diag)
				n = mul(n, static_cast<Int>(o.size()));
			for (auto const &o : b.off)
				n = mul(n, static_cast<Int>(o.size()));
			total = add(total, n);
		}
		return true;
	});
	return total;
}

} // namespace nilq
