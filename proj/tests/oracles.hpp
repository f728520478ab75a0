#pragma once

// Independent reference constructions used as test oracles.  Nothing here
// goes through the cocycle encoding.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nilq/oracle.hpp"
#include "nilq/qmap.hpp"

namespace oracles {

using nilq::GroupOracle;
using nilq::Int;

/// Builds a table from an element list and a binary operation.
template <class T, class Op>
GroupOracle table_from(std::vector<T> const &elems, T const &id, Op op,
                       std::vector<std::string> labels = {})
{
	std::map<T, size_t> index;
	for (size_t i = 0; i < elems.size(); ++i)
		index.emplace(elems[i], i);
	std::vector<std::vector<size_t>> table(elems.size(), std::vector<size_t>(elems.size()));
	for (size_t i = 0; i < elems.size(); ++i)
		for (size_t j = 0; j < elems.size(); ++j)
			table[i][j] = index.at(op(elems[i], elems[j]));
	if (labels.empty())
		for (size_t i = 0; i < elems.size(); ++i)
			labels.push_back("g" + std::to_string(i));
	return GroupOracle::make(labels, table, index.at(id));
}

/// Quaternion units ±1, ±i, ±j, ±k under Hamilton's product.
inline GroupOracle quaternion_table()
{
	using Q = std::array<int, 4>;
	auto mulq = [](Q const &a, Q const &b) {
		return Q{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
		         a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
		         a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
		         a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
	};
	std::vector<Q> e;
	for (int k = 0; k < 4; ++k)
		for (int s : {1, -1})
		{
			Q q{0, 0, 0, 0};
			q[static_cast<size_t>(k)] = s;
			e.push_back(q);
		}
	return table_from(e, Q{1, 0, 0, 0}, mulq,
	                  {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Symmetries of a square as permutations of its vertices.
inline GroupOracle dihedral_table()
{
	using P = std::array<int, 4>;
	auto comp = [](P const &a, P const &b) {
		P c{};
		for (size_t i = 0; i < 4; ++i)
			c[i] = a[static_cast<size_t>(b[i])];
		return c;
	};
	P rot{1, 2, 3, 0}, ref{0, 3, 2, 1}, id{0, 1, 2, 3};
	std::vector<P> e;
	P r = id;
	for (int k = 0; k < 4; ++k)
	{
		e.push_back(r);
		e.push_back(comp(r, ref));
		r = comp(r, rot);
	}
	return table_from(e, id, comp);
}

/// Unitriangular 3x3 matrices over Z/p, stored as (a, b, c) for
/// [[1,a,c],[0,1,b],[0,0,1]].
inline GroupOracle heisenberg_table(Int p)
{
	using M = std::array<Int, 3>;
	auto mulm = [p](M const &x, M const &y) {
		return M{(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p};
	};
	std::vector<M> e;
	for (Int a = 0; a < p; ++a)
		for (Int b = 0; b < p; ++b)
			for (Int c = 0; c < p; ++c)
				e.push_back(M{a, b, c});
	return table_from(e, M{0, 0, 0}, mulm);
}

/// Cyclic group Z/n.
inline GroupOracle cyclic_table(Int n)
{
	std::vector<Int> e;
	for (Int a = 0; a < n; ++a)
		e.push_back(a);
	return table_from(e, Int{0}, [n](Int a, Int b) { return (a + b) % n; });
}

/// Brute-force q-map filter over all set maps G -> H, by backtracking
/// on the value table.  Returns the value tables (indexed by index_of on both
/// sides) of all maps whose cross-effect lies in [H,H] and is bilinear in
/// each argument.  `allowed(x, v)` restricts the value at x.
inline std::vector<std::vector<size_t>> brute_force_qmaps(
    nilq::Nil2Group const &g, nilq::Nil2Group const &h,
    std::function<bool(size_t, size_t)> const &allowed = {})
{
	using nilq::Nil2Element;
	auto ge = nilq::nil2_enumerate(g);
	auto he = nilq::nil2_enumerate(h);
	size_t n = ge.size(), m = he.size();
	std::vector<std::vector<size_t>> gs(n, std::vector<size_t>(n)), hs(m, std::vector<size_t>(m));
	std::vector<size_t> hneg(m);
	for (size_t x = 0; x < n; ++x)
		for (size_t y = 0; y < n; ++y)
			gs[x][y] = g.index_of(g.add(ge[x], ge[y]));
	for (size_t x = 0; x < m; ++x)
	{
		hneg[x] = h.index_of(h.neg(he[x]));
		for (size_t y = 0; y < m; ++y)
			hs[x][y] = h.index_of(h.add(he[x], he[y]));
	}
	std::vector<bool> central_comm(m);
	for (size_t x = 0; x < m; ++x)
		central_comm[x] = h.A().is_zero(he[x].a);

	// constraint lists keyed by the largest index they involve
	struct Pair
	{
		size_t x, y;
	};
	struct Tri
	{
		size_t x, x2, y;
		bool left;
	};
	std::vector<std::vector<Pair>> pairs(n);
	std::vector<std::vector<Tri>> tris(n);
	for (size_t x = 0; x < n; ++x)
		for (size_t y = 0; y < n; ++y)
			pairs[std::max({x, y, gs[x][y]})].push_back({x, y});
	for (size_t x = 0; x < n; ++x)
		for (size_t x2 = 0; x2 < n; ++x2)
			for (size_t y = 0; y < n; ++y)
			{
				size_t l = std::max({x, x2, y, gs[x][x2], gs[x][y], gs[x2][y], gs[gs[x][x2]][y]});
				tris[l].push_back({x, x2, y, true});
				size_t r = std::max({x, x2, y, gs[x][x2], gs[y][x], gs[y][x2], gs[y][gs[x][x2]]});
				tris[r].push_back({x, x2, y, false});
			}
	std::vector<size_t> f(n);
	auto cross = [&](size_t x, size_t y) { return hs[hneg[hs[f[x]][f[y]]]][f[gs[x][y]]]; };
	std::vector<std::vector<size_t>> out;
	auto rec = [&](auto &&self, size_t k) -> void {
		if (k == n)
		{
			out.push_back(f);
			return;
		}
		for (size_t v = 0; v < m; ++v)
		{
			if (allowed && !allowed(k, v))
				continue;
			f[k] = v;
			bool ok = true;
			for (auto const &p : pairs[k])
				if (!central_comm[cross(p.x, p.y)])
				{
					ok = false;
					break;
				}
			if (ok)
				for (auto const &t : tris[k])
				{
					size_t lhs, rhs;
					if (t.left)
					{
						lhs = cross(gs[t.x][t.x2], t.y);
						rhs = hs[cross(t.x, t.y)][cross(t.x2, t.y)];
					}
					else
					{
						lhs = cross(t.y, gs[t.x][t.x2]);
						rhs = hs[cross(t.y, t.x)][cross(t.y, t.x2)];
					}
					if (lhs != rhs)
					{
						ok = false;
						break;
					}
				}
			if (ok)
				self(self, k + 1);
		}
	};
	rec(rec, 0);
	return out;
}

/// Every quadratic section G_ab -> G of the projection, by brute force.
inline std::vector<std::vector<size_t>> brute_force_sections(nilq::Nil2Group const &g)
{
	nilq::Nil2Group a = nilq::Nil2Group::abelian(g.A());
	size_t nb = static_cast<size_t>(*g.B().cardinality());
	return brute_force_qmaps(a, g, [nb](size_t x, size_t v) { return v / nb == x; });
}

/// Value table of a QMap on a finite source.
inline std::vector<size_t> values(nilq::QMap const &f)
{
	std::vector<size_t> v;
	for (auto const &z : nilq::nil2_enumerate(f.source()))
		v.push_back(f.target().index_of(f.eval(z)));
	return v;
}

} // namespace oracles
