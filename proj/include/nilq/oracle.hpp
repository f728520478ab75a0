#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilq/nil2.hpp"

namespace nilq {

/// A finite group given by its multiplication table, written additively.
class GroupOracle
{
  public:
	GroupOracle() = default;

	/// Validates closure, identity, inverses and associativity.
	static GroupOracle make(std::vector<std::string> labels, std::vector<std::vector<size_t>> table,
	                        size_t identity)
	{
		GroupOracle o;
		size_t n = labels.size();
		if (n == 0)
			fail(ErrorKind::NotAGroup, "empty element list");
		if (table.size() != n || identity >= n)
			fail(ErrorKind::NotAGroup, "table is not total");
		for (auto const &row : table)
		{
			if (row.size() != n)
				fail(ErrorKind::NotAGroup, "table is not total");
			for (size_t c : row)
				if (c >= n)
					fail(ErrorKind::NotAGroup, "table entry out of range");
		}
		for (size_t a = 0; a < n; ++a)
			if (table[identity][a] != a || table[a][identity] != a)
				fail(ErrorKind::NotAGroup, labels[identity] + " is not an identity");
		o.inv_.assign(n, n);
		for (size_t a = 0; a < n; ++a)
		{
			for (size_t b = 0; b < n; ++b)
				if (table[a][b] == identity && table[b][a] == identity)
				{
					o.inv_[a] = b;
					break;
				}
			if (o.inv_[a] == n)
				fail(ErrorKind::NotAGroup, labels[a] + " has no inverse");
		}
		for (size_t a = 0; a < n; ++a)
			for (size_t b = 0; b < n; ++b)
				for (size_t c = 0; c < n; ++c)
					if (table[table[a][b]][c] != table[a][table[b][c]])
						fail(ErrorKind::NotAGroup, "associativity fails at (" + labels[a] + ", " +
						                               labels[b] + ", " + labels[c] + ")");
		o.labels_ = std::move(labels);
		o.table_ = std::move(table);
		o.id_ = identity;
		return o;
	}

	size_t size() const { return labels_.size(); }
	size_t identity() const { return id_; }
	std::string const &label(size_t a) const { return labels_[a]; }
	std::vector<std::string> const &labels() const { return labels_; }
	std::vector<std::vector<size_t>> const &table() const { return table_; }

	size_t add(size_t a, size_t b) const { return table_[a][b]; }
	size_t neg(size_t a) const { return inv_[a]; }

	size_t multiple(size_t a, Int n) const
	{
		size_t base = n < 0 ? neg(a) : a, acc = id_;
		for (Int k = n < 0 ? -n : n; k > 0; --k)
			acc = add(acc, base);
		return acc;
	}

	/// [a, b] = -a - b + a + b
	size_t commutator(size_t a, size_t b) const
	{
		return add(add(neg(a), neg(b)), add(a, b));
	}

	Int element_order(size_t a) const
	{
		Int k = 1;
		for (size_t x = a; x != id_; x = add(x, a))
			++k;
		return k;
	}

	bool is_abelian() const
	{
		for (size_t a = 0; a < size(); ++a)
			for (size_t b = 0; b < a; ++b)
				if (add(a, b) != add(b, a))
					return false;
		return true;
	}

	bool is_class_two() const
	{
		for (size_t a = 0; a < size(); ++a)
			for (size_t b = 0; b < size(); ++b)
			{
				size_t c = commutator(a, b);
				for (size_t z = 0; z < size(); ++z)
					if (add(c, z) != add(z, c))
						return false;
			}
		return true;
	}

	/// Subgroup generated by `gens` (closure under addition; finite).
	std::vector<bool> closure(std::vector<size_t> const &gens) const
	{
		std::vector<bool> in(size(), false);
		std::vector<size_t> stack{id_};
		in[id_] = true;
		while (!stack.empty())
		{
			size_t x = stack.back();
			stack.pop_back();
			for (size_t g : gens)
			{
				size_t y = add(x, g);
				if (!in[y])
				{
					in[y] = true;
					stack.push_back(y);
				}
			}
		}
		return in;
	}

	/// Greedy generating set in index order.
	std::vector<size_t> generators() const
	{
		std::vector<size_t> gens;
		std::vector<bool> in = closure(gens);
		for (size_t a = 0; a < size(); ++a)
			if (!in[a])
			{
				gens.push_back(a);
				in = closure(gens);
			}
		return gens;
	}

  private:
	std::vector<std::string> labels_;
	std::vector<std::vector<size_t>> table_;
	std::vector<size_t> inv_;
	size_t id_ = 0;
};

/// Multiplication table of a finite Nil2Group, indexed by Nil2Group::index_of.
inline GroupOracle table_of(Nil2Group const &g)
{
	auto elems = nil2_enumerate(g);
	std::vector<std::string> labels;
	std::vector<std::vector<size_t>> table(elems.size(), std::vector<size_t>(elems.size()));
	for (auto const &z : elems)
		labels.push_back(to_string(z));
	for (size_t i = 0; i < elems.size(); ++i)
		for (size_t j = 0; j < elems.size(); ++j)
			table[i][j] = g.index_of(g.add(elems[i], elems[j]));
	return GroupOracle::make(std::move(labels), std::move(table), g.index_of(g.zero()));
}

/// nil2_semidirect: Z/n ⋊ Z/m with (a,b)(a',b') = (a + k^b a', b + b').
inline GroupOracle nil2_semidirect(Int n, Int m, Int k)
{
	if (n < 1 || m < 1)
		fail(ErrorKind::InvalidArgument, "semidirect: orders must be positive");
	if (mul(n, m) > 1 << 16)
		fail(ErrorKind::Unsupported, "semidirect: table too large");
	Int kk = reduce(k, n);
	Int km = 1 % n;
	for (Int i = 0; i < m; ++i)
		km = reduce(mul(km, kk), n);
	if (km != 1 % n)
		fail(ErrorKind::NotAnAction, "k^m is not 1 mod n");
	if (reduce(mul(kk - 1, kk - 1), n) != 0)
		fail(ErrorKind::NotClassTwo, "(k-1)^2 is not 0 mod n");
	IntVec pw(static_cast<size_t>(m));
	pw[0] = 1 % n;
	for (Int i = 1; i < m; ++i)
		pw[static_cast<size_t>(i)] = reduce(mul(pw[static_cast<size_t>(i - 1)], kk), n);
	size_t sz = static_cast<size_t>(n * m);
	auto idx = [&](Int a, Int b) { return static_cast<size_t>(a * m + b); };
	std::vector<std::string> labels(sz);
	std::vector<std::vector<size_t>> table(sz, std::vector<size_t>(sz));
	for (Int a = 0; a < n; ++a)
		for (Int b = 0; b < m; ++b)
		{
			labels[idx(a, b)] = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
			for (Int a2 = 0; a2 < n; ++a2)
				for (Int b2 = 0; b2 < m; ++b2)
					table[idx(a, b)][idx(a2, b2)] =
					    idx(reduce(a + pw[static_cast<size_t>(b)] * a2, n), (b + b2) % m);
		}
	return GroupOracle::make(std::move(labels), std::move(table), idx(0, 0));
}

namespace detail {

/// Basis of a finite abelian group given by an addition table on the ids in
/// `elems` (closed under `op`, containing `zero`).
struct TableBasis
{
	IntVec orders;
	std::vector<size_t> gens;         // element ids of the basis
	std::map<size_t, IntVec> coords; // id -> coordinates in the basis
};

template <class Op>
TableBasis table_basis(std::vector<size_t> const &elems, size_t zero, Op op)
{
	// greedy generators with the span tracked by coefficient vectors
	std::vector<size_t> greedy;
	std::map<size_t, IntVec> span{{zero, IntVec{}}};
	IntMat rel;
	for (size_t x : elems)
	{
		if (span.count(x))
			continue;
		size_t s = greedy.size();
		greedy.push_back(x);
		for (auto &kv : span)
			kv.second.push_back(0);
		for (auto &row : rel)
			row.push_back(0);
		Int m = 1;
		size_t y = x;
		while (!span.count(y))
		{
			y = op(y, x);
			++m;
		}
		IntVec row = span.at(y);
		for (auto &c : row)
			c = -c;
		row[s] = m;
		rel.push_back(row);
		std::map<size_t, IntVec> next;
		for (auto const &[id, c] : span)
		{
			size_t z = id;
			for (Int k = 0; k < m; ++k)
			{
				IntVec cc = c;
				cc[s] = k;
				next.emplace(z, std::move(cc));
				z = op(z, x);
			}
		}
		span = std::move(next);
	}
	size_t n = greedy.size();
	Cokernel c = cokernel_of_relations(rel, n);
	TableBasis tb;
	tb.orders = c.group.orders();
	for (size_t s = 0; s < c.group.rank(); ++s)
	{
		size_t z = zero;
		for (size_t j = 0; j < n; ++j)
		{
			// nonnegative multiple of greedy[j]
			Int ord = 1;
			for (size_t w = greedy[j]; w != zero; w = op(w, greedy[j]))
				++ord;
			Int k = reduce(c.from_group[j][s], ord);
			for (Int t = 0; t < k; ++t)
				z = op(z, greedy[j]);
		}
		tb.gens.push_back(z);
	}
	for (auto const &[id, cf] : span)
	{
		IntVec v(c.group.rank(), 0);
		for (size_t s = 0; s < c.group.rank(); ++s)
		{
			for (size_t j = 0; j < n; ++j)
				v[s] = add(v[s], mul(c.to_group[s][j], cf[j]));
			v[s] = reduce(v[s], tb.orders[s]);
		}
		tb.coords.emplace(id, std::move(v));
	}
	return tb;
}

} // namespace detail

/// Result of canonicalizing a finite class-two group.
struct Canonicalized
{
	Nil2Group group;
	std::vector<size_t> to_oracle;   // group.index_of(z) -> oracle id
	std::vector<size_t> from_oracle; // oracle id -> group.index_of(z)
};

/// nil2_canonicalize_finite
inline Canonicalized nil2_canonicalize_finite(GroupOracle const &o)
{
	if (!o.is_class_two())
		fail(ErrorKind::NotClassTwo, "some commutator is not central");
	size_t n = o.size(), id = o.identity();

	std::vector<size_t> comms;
	for (size_t a = 0; a < n; ++a)
		for (size_t b = 0; b < n; ++b)
			comms.push_back(o.commutator(a, b));
	std::vector<bool> in_c = o.closure(comms);
	std::vector<size_t> celems;
	for (size_t a = 0; a < n; ++a)
		if (in_c[a])
			celems.push_back(a);

	// cosets of C, each represented by its least element
	std::vector<size_t> coset(n, n), reps;
	for (size_t a = 0; a < n; ++a)
		if (coset[a] == n)
		{
			for (size_t c : celems)
				coset[o.add(a, c)] = reps.size();
			reps.push_back(a);
		}
	std::vector<size_t> qids(reps.size());
	for (size_t q = 0; q < reps.size(); ++q)
		qids[q] = q;
	auto qop = [&](size_t p, size_t q) { return coset[o.add(reps[p], reps[q])]; };
	detail::TableBasis qb = detail::table_basis(qids, coset[id], qop);
	auto cop = [&](size_t x, size_t y) { return o.add(x, y); };
	detail::TableBasis cb = detail::table_basis(celems, id, cop);

	FGAbelian a = FGAbelian::make(qb.orders);
	FGAbelian b = FGAbelian::make(cb.orders);
	size_t r = a.rank();

	// lifts t_i of the basis of G/C; the greedy ids already lift via reps
	std::vector<size_t> t(r);
	for (size_t i = 0; i < r; ++i)
		t[i] = reps[qb.gens[i]];

	auto belem = [&](size_t c) { return b.element(cb.coords.at(c)); };
	BMatrix bil(r, std::vector<AbElement>(r, b.zero()));
	std::vector<AbElement> carry(r, b.zero());
	for (size_t i = 0; i < r; ++i)
	{
		for (size_t j = 0; j < i; ++j)
			bil[i][j] = belem(o.commutator(t[i], t[j]));
		carry[i] = belem(o.multiple(t[i], a.order(i)));
	}
	Canonicalized out;
	out.group = Nil2Group::make(a, b, bil, carry);
	Nil2Group const &g = out.group;

	// σ(x) + ι(u)
	std::vector<size_t> biota(static_cast<size_t>(*b.cardinality()));
	for (size_t c : celems)
		biota[b.index_of(belem(c))] = c;
	out.to_oracle.assign(n, n);
	out.from_oracle.assign(n, n);
	if (static_cast<size_t>(*g.order()) != n)
		fail(ErrorKind::InvalidArgument, "canonicalization lost elements");
	for (size_t k = 0; k < n; ++k)
	{
		Nil2Element z = g.element_at(k);
		size_t s = id;
		for (size_t i = 0; i < r; ++i)
			s = o.add(s, o.multiple(t[i], z.a[i]));
		s = o.add(s, biota[b.index_of(z.b)]);
		out.to_oracle[k] = s;
		out.from_oracle[s] = k;
	}
	for (size_t k = 0; k < n; ++k)
		if (out.from_oracle[k] == n)
			fail(ErrorKind::InvalidArgument, "canonicalization is not bijective");
	for (size_t x = 0; x < n; ++x)
		for (size_t y = 0; y < n; ++y)
		{
			Nil2Element s = g.add(g.element_at(x), g.element_at(y));
			if (out.to_oracle[g.index_of(s)] != o.add(out.to_oracle[x], out.to_oracle[y]))
				fail(ErrorKind::InvalidArgument, "canonicalization is not a homomorphism");
		}
	return out;
}

/// Extends an assignment on generators to a homomorphism by walking the
/// Cayley graph; absent when inconsistent.
inline std::optional<std::vector<size_t>> extend_hom(GroupOracle const &g, GroupOracle const &h,
                                                     std::vector<size_t> const &gens,
                                                     std::vector<size_t> const &imgs)
{
	size_t n = g.size();
	std::vector<size_t> phi(n, h.size());
	phi[g.identity()] = h.identity();
	std::vector<size_t> stack{g.identity()};
	while (!stack.empty())
	{
		size_t x = stack.back();
		stack.pop_back();
		for (size_t k = 0; k < gens.size(); ++k)
		{
			size_t y = g.add(x, gens[k]);
			size_t v = h.add(phi[x], imgs[k]);
			if (phi[y] == h.size())
			{
				phi[y] = v;
				stack.push_back(y);
			}
			else if (phi[y] != v)
				return std::nullopt;
		}
	}
	for (size_t x = 0; x < n; ++x)
	{
		if (phi[x] == h.size())
			return std::nullopt;
		for (size_t k = 0; k < gens.size(); ++k)
			if (phi[g.add(x, gens[k])] != h.add(phi[x], imgs[k]))
				return std::nullopt;
	}
	return phi;
}

/// Enumerates all homomorphisms G -> H as value tables.
template <class Fn> void for_each_group_hom(GroupOracle const &g, GroupOracle const &h, Fn &&fn)
{
	std::vector<size_t> gens = g.generators();
	std::vector<Int> ord;
	for (size_t x : gens)
		ord.push_back(g.element_order(x));
	std::vector<std::vector<size_t>> cand(gens.size());
	for (size_t k = 0; k < gens.size(); ++k)
		for (size_t y = 0; y < h.size(); ++y)
			if (ord[k] % h.element_order(y) == 0)
				cand[k].push_back(y);
	std::vector<size_t> sizes;
	for (auto const &c : cand)
		sizes.push_back(c.size());
	std::vector<size_t> imgs(gens.size());
	detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		for (size_t k = 0; k < gens.size(); ++k)
			imgs[k] = cand[k][ix[k]];
		if (auto phi = extend_hom(g, h, gens, imgs))
			return fn(*phi) != false;
		return true;
	});
}

/// A group isomorphism G -> H as a value table, when one exists.
inline std::optional<std::vector<size_t>> find_group_iso(GroupOracle const &g,
                                                         GroupOracle const &h)
{
	if (g.size() != h.size())
		return std::nullopt;
	std::vector<size_t> gens = g.generators();
	std::vector<std::vector<size_t>> cand(gens.size());
	for (size_t k = 0; k < gens.size(); ++k)
		for (size_t y = 0; y < h.size(); ++y)
			if (g.element_order(gens[k]) == h.element_order(y))
				cand[k].push_back(y);
	std::vector<size_t> sizes;
	for (auto const &c : cand)
		sizes.push_back(c.size());
	std::optional<std::vector<size_t>> found;
	std::vector<size_t> imgs(gens.size());
	detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		for (size_t k = 0; k < gens.size(); ++k)
			imgs[k] = cand[k][ix[k]];
		auto phi = extend_hom(g, h, gens, imgs);
		if (!phi)
			return true;
		std::vector<bool> hit(h.size(), false);
		for (size_t v : *phi)
			hit[v] = true;
		for (bool b : hit)
			if (!b)
				return true;
		found = std::move(phi);
		return false;
	});
	return found;
}

inline std::optional<std::vector<size_t>> find_group_iso(Nil2Group const &g, Nil2Group const &h)
{
	return find_group_iso(table_of(g), table_of(h));
}

} // namespace nilq
