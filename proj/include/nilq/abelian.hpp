#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nilq/error.hpp"
#include "nilq/integer.hpp"
#include "nilq/smith.hpp"

namespace nilq {

/// Element of a finitely generated abelian group, as coordinates against the
/// parent's cyclic generators.  Canonical form: 0 <= x_i < d_i when d_i > 0.
struct AbElement
{
	IntVec coords;

	AbElement() = default;
	explicit AbElement(IntVec c) : coords(std::move(c)) {}

	size_t size() const { return coords.size(); }
	Int operator[](size_t i) const { return coords[i]; }

	friend bool operator==(AbElement const &, AbElement const &) = default;
	friend auto operator<=>(AbElement const &, AbElement const &) = default;
};

inline std::string to_string(AbElement const &x) { return to_string(x.coords); }

inline std::ostream &operator<<(std::ostream &os, AbElement const &x) { return os << to_string(x); }

namespace detail {

/// Calls fn(index) for every index in the box prod [0, sizes[i]), last
/// coordinate fastest.  fn returns false to stop early; returns false iff
/// stopped.
template <class Fn> bool for_each_index(std::vector<size_t> const &sizes, Fn &&fn)
{
	for (auto s : sizes)
		if (s == 0)
			return true;
	std::vector<size_t> idx(sizes.size(), 0);
	for (;;)
	{
		if (!fn(std::as_const(idx)))
			return false;
		size_t k = sizes.size();
		for (;;)
		{
			if (k == 0)
				return true;
			--k;
			if (++idx[k] < sizes[k])
				break;
			idx[k] = 0;
		}
	}
}

} // namespace detail

/// Finitely generated abelian group ⊕ Z/d_i, with d_i = 0 meaning Z.
/// Generator orders are kept as given (minus trivial factors), not forced into
/// an invariant-factor chain.
class FGAbelian
{
  public:
	FGAbelian() = default;

	static FGAbelian make(IntVec const &orders)
	{
		FGAbelian g;
		for (Int d : orders)
		{
			if (d < 0)
				fail(ErrorKind::InvalidArgument,
				     "negative generator order " + std::to_string(d));
			if (d != 1)
				g.orders_.push_back(d);
		}
		return g;
	}

	static FGAbelian free(size_t n) { return make(IntVec(n, 0)); }

	IntVec const &orders() const { return orders_; }
	Int order(size_t i) const { return orders_[i]; }
	size_t rank() const { return orders_.size(); }
	bool is_trivial() const { return orders_.empty(); }

	bool is_finite() const
	{
		return std::all_of(orders_.begin(), orders_.end(),
		                   [](Int d) { return d > 0; });
	}

	/// Cardinality; nullopt when infinite.
	std::optional<Int> cardinality() const
	{
		if (!is_finite())
			return std::nullopt;
		Int n = 1;
		for (Int d : orders_)
			n = mul(n, d);
		return n;
	}

	/// lcm of the generator orders; 0 when infinite.
	Int exponent() const
	{
		Int e = 1;
		for (Int d : orders_)
			e = lcm0(e, d);
		return e;
	}

	AbElement zero() const { return AbElement(IntVec(rank(), 0)); }

	AbElement generator(size_t i) const
	{
		AbElement e = zero();
		e.coords.at(i) = 1;
		return e;
	}

	/// Canonicalizes an arbitrary coordinate vector.
	AbElement element(IntVec coords) const
	{
		if (coords.size() != rank())
			fail(ErrorKind::InvalidArgument,
			     "coordinate vector " + to_string(coords) + " has wrong length for " +
			         str());
		for (size_t i = 0; i < rank(); ++i)
			coords[i] = reduce(coords[i], orders_[i]);
		return AbElement(std::move(coords));
	}

	AbElement normalize(AbElement const &x) const { return element(x.coords); }

	bool contains(AbElement const &x) const
	{
		if (x.size() != rank())
			return false;
		for (size_t i = 0; i < rank(); ++i)
			if (orders_[i] > 0 && (x[i] < 0 || x[i] >= orders_[i]))
				return false;
		return true;
	}

	void check(AbElement const &x) const
	{
		if (!contains(x))
			fail(ErrorKind::InvalidArgument,
			     to_string(x) + " is not a canonical element of " + str());
	}

	AbElement add(AbElement const &x, AbElement const &y) const
	{
		check(x);
		check(y);
		IntVec r(rank());
		for (size_t i = 0; i < rank(); ++i)
			r[i] = reduce(nilq::add(x[i], y[i]), orders_[i]);
		return AbElement(std::move(r));
	}

	AbElement neg(AbElement const &x) const
	{
		check(x);
		IntVec r(rank());
		for (size_t i = 0; i < rank(); ++i)
			r[i] = reduce(nilq::neg(x[i]), orders_[i]);
		return AbElement(std::move(r));
	}

	AbElement sub(AbElement const &x, AbElement const &y) const
	{
		return add(x, neg(y));
	}

	AbElement scale(AbElement const &x, Int n) const
	{
		check(x);
		IntVec r(rank());
		for (size_t i = 0; i < rank(); ++i)
			r[i] = orders_[i] > 0 ? reduce(mul(reduce(n, orders_[i]), x[i]), orders_[i])
			                      : mul(n, x[i]);
		return AbElement(std::move(r));
	}

	bool is_zero(AbElement const &x) const
	{
		check(x);
		return std::all_of(x.coords.begin(), x.coords.end(),
		                   [](Int c) { return c == 0; });
	}

	/// Order of an element; 0 when infinite.
	Int element_order(AbElement const &x) const
	{
		check(x);
		Int o = 1;
		for (size_t i = 0; i < rank(); ++i)
		{
			if (x[i] == 0)
				continue;
			if (orders_[i] == 0)
				return 0;
			o = lcm0(o, orders_[i] / std::gcd(orders_[i], x[i]));
		}
		return o;
	}

	/// Direct sum A ⊕ A'; generators of A first.
	FGAbelian direct_sum(FGAbelian const &other) const
	{
		FGAbelian g = *this;
		g.orders_.insert(g.orders_.end(), other.orders_.begin(), other.orders_.end());
		return g;
	}

	/// Mixed-radix index of a canonical element (last coordinate fastest).
	size_t index_of(AbElement const &x) const
	{
		check(x);
		size_t idx = 0;
		for (size_t i = 0; i < rank(); ++i)
		{
			if (orders_[i] == 0)
				fail(ErrorKind::UnsupportedEnumeration, "infinite group " + str());
			idx = idx * static_cast<size_t>(orders_[i]) + static_cast<size_t>(x[i]);
		}
		return idx;
	}

	AbElement element_at(size_t idx) const
	{
		IntVec c(rank());
		for (size_t i = rank(); i-- > 0;)
		{
			if (orders_[i] == 0)
				fail(ErrorKind::UnsupportedEnumeration, "infinite group " + str());
			c[i] = static_cast<Int>(idx % static_cast<size_t>(orders_[i]));
			idx /= static_cast<size_t>(orders_[i]);
		}
		return AbElement(std::move(c));
	}

	std::string str() const { return to_string(orders_); }

	/// Human-readable form such as "Z + Z/3"; "0" for the trivial group.
	std::string describe() const
	{
		if (orders_.empty())
			return "0";
		std::string s;
		for (size_t i = 0; i < rank(); ++i)
		{
			if (i)
				s += " + ";
			s += orders_[i] == 0 ? "Z" : "Z/" + std::to_string(orders_[i]);
		}
		return s;
	}

	friend bool operator==(FGAbelian const &, FGAbelian const &) = default;

  private:
	IntVec orders_;
};

/// ab_make
inline FGAbelian ab_make(IntVec const &orders) { return FGAbelian::make(orders); }

/// Homomorphism between finitely generated abelian groups.  The matrix is
/// rank(target) x rank(source); column j is the image of source generator j.
class AbHom
{
  public:
	AbHom() = default;

	AbHom(FGAbelian source, FGAbelian target, IntMat matrix)
	    : src_(std::move(source)), dst_(std::move(target)), m_(std::move(matrix))
	{
		if (m_.size() != dst_.rank())
			fail(ErrorKind::InvalidArgument, "matrix row count does not match target rank");
		for (auto &row : m_)
			if (row.size() != src_.rank())
				fail(ErrorKind::InvalidArgument,
				     "matrix column count does not match source rank");
		for (size_t i = 0; i < dst_.rank(); ++i)
			for (size_t j = 0; j < src_.rank(); ++j)
				m_[i][j] = reduce(m_[i][j], dst_.order(i));
		for (size_t j = 0; j < src_.rank(); ++j)
		{
			Int d = src_.order(j);
			if (d == 0)
				continue;
			for (size_t i = 0; i < dst_.rank(); ++i)
				if (reduce(mul(d, m_[i][j]), dst_.order(i)) != 0)
					fail(ErrorKind::InvalidHomomorphism,
					     "generator " + std::to_string(j + 1) + " of order " +
					         std::to_string(d) + " maps to an element not killed by " +
					         std::to_string(d));
		}
	}

	/// Builds from images of the source generators.
	static AbHom from_images(FGAbelian const &source, FGAbelian const &target,
	                         std::vector<AbElement> const &images)
	{
		if (images.size() != source.rank())
			fail(ErrorKind::InvalidArgument, "wrong number of generator images");
		IntMat m(target.rank(), IntVec(source.rank(), 0));
		for (size_t j = 0; j < images.size(); ++j)
		{
			if (images[j].size() != target.rank())
				fail(ErrorKind::InvalidArgument, "generator image has wrong length");
			for (size_t i = 0; i < target.rank(); ++i)
				m[i][j] = images[j][i];
		}
		return AbHom(source, target, std::move(m));
	}

	static AbHom identity(FGAbelian const &a)
	{
		IntMat m(a.rank(), IntVec(a.rank(), 0));
		for (size_t i = 0; i < a.rank(); ++i)
			m[i][i] = 1;
		return AbHom(a, a, std::move(m));
	}

	static AbHom zero(FGAbelian const &a, FGAbelian const &b)
	{
		return AbHom(a, b, IntMat(b.rank(), IntVec(a.rank(), 0)));
	}

	FGAbelian const &source() const { return src_; }
	FGAbelian const &target() const { return dst_; }
	IntMat const &matrix() const { return m_; }

	AbElement image_of_generator(size_t j) const
	{
		IntVec c(dst_.rank());
		for (size_t i = 0; i < dst_.rank(); ++i)
			c[i] = m_[i][j];
		return AbElement(std::move(c));
	}

	AbElement apply(AbElement const &x) const
	{
		src_.check(x);
		IntVec c(dst_.rank(), 0);
		for (size_t i = 0; i < dst_.rank(); ++i)
		{
			Int s = 0;
			for (size_t j = 0; j < src_.rank(); ++j)
				s = add(s, mul(m_[i][j], x[j]));
			c[i] = reduce(s, dst_.order(i));
		}
		return AbElement(std::move(c));
	}

	/// this ∘ g
	AbHom compose(AbHom const &g) const
	{
		if (!(g.dst_ == src_))
			fail(ErrorKind::InvalidArgument, "composition shapes do not match");
		IntMat m(dst_.rank(), IntVec(g.src_.rank(), 0));
		for (size_t i = 0; i < dst_.rank(); ++i)
			for (size_t j = 0; j < g.src_.rank(); ++j)
			{
				Int s = 0;
				for (size_t k = 0; k < src_.rank(); ++k)
					s = add(s, mul(m_[i][k], g.m_[k][j]));
				m[i][j] = s;
			}
		return AbHom(g.src_, dst_, std::move(m));
	}

	AbHom plus(AbHom const &h) const
	{
		if (!(h.src_ == src_ && h.dst_ == dst_))
			fail(ErrorKind::InvalidArgument, "sum of homomorphisms with different endpoints");
		IntMat m = m_;
		for (size_t i = 0; i < m.size(); ++i)
			for (size_t j = 0; j < m[i].size(); ++j)
				m[i][j] = add(m[i][j], h.m_[i][j]);
		return AbHom(src_, dst_, std::move(m));
	}

	AbHom scaled(Int n) const
	{
		IntMat m = m_;
		for (auto &row : m)
			for (auto &x : row)
				x = mul(x, n);
		return AbHom(src_, dst_, std::move(m));
	}

	bool is_zero() const
	{
		for (auto const &row : m_)
			for (Int x : row)
				if (x != 0)
					return false;
		return true;
	}

	friend bool operator==(AbHom const &, AbHom const &) = default;

  private:
	FGAbelian src_, dst_;
	IntMat m_;
};

/// Relation rows d_i e_i of a group (one per finite generator).
inline IntMat relation_rows(FGAbelian const &a)
{
	IntMat rel;
	for (size_t i = 0; i < a.rank(); ++i)
		if (a.order(i) > 0)
		{
			IntVec row(a.rank(), 0);
			row[i] = a.order(i);
			rel.push_back(std::move(row));
		}
	return rel;
}

/// Z^n modulo the row lattice of `relations`, in invariant-factor form,
/// together with the coordinate change in both directions.
struct Cokernel
{
	FGAbelian group;
	IntMat to_group;   // group.rank() x n; column j is the image of e_j
	IntMat from_group; // n x group.rank(); column s lifts generator s to Z^n
};

inline Cokernel cokernel_of_relations(IntMat const &relations, size_t n)
{
	SmithForm sf = smith_normal_form(relations, n);
	Cokernel c;
	IntVec orders;
	std::vector<size_t> kept;
	for (size_t t = 0; t < n; ++t)
	{
		Int d = t < sf.rank() ? sf.diag[t] : 0;
		if (d == 1)
			continue;
		kept.push_back(t);
		orders.push_back(d);
	}
	c.group = FGAbelian::make(orders);
	c.to_group.assign(kept.size(), IntVec(n, 0));
	c.from_group.assign(n, IntVec(kept.size(), 0));
	for (size_t s = 0; s < kept.size(); ++s)
		for (size_t j = 0; j < n; ++j)
		{
			c.to_group[s][j] = reduce(sf.v[j][kept[s]], orders[s]);
			c.from_group[j][s] = sf.v_inv[kept[s]][j];
		}
	return c;
}

/// ab_snf_invariants: invariant factors of the cokernel of a relation matrix
/// on Z^n (rows are relations).
inline FGAbelian ab_snf_invariants(IntMat const &relations, size_t n)
{
	return cokernel_of_relations(relations, n).group;
}

/// Invariant-factor form of a group with explicit maps both ways.
struct CanonicalForm
{
	FGAbelian invariants;
	AbHom to_canonical;
	AbHom from_canonical;
};

inline CanonicalForm canonical_form(FGAbelian const &a)
{
	Cokernel c = cokernel_of_relations(relation_rows(a), a.rank());
	CanonicalForm f;
	f.invariants = c.group;
	f.to_canonical = AbHom(a, c.group, c.to_group);
	f.from_canonical = AbHom(c.group, a, c.from_group);
	return f;
}

/// ab_iso: an isomorphism pair (forward, backward) when the invariant factors
/// agree.
inline std::optional<std::pair<AbHom, AbHom>> ab_iso(FGAbelian const &a,
                                                     FGAbelian const &b)
{
	CanonicalForm ca = canonical_form(a), cb = canonical_form(b);
	if (!(ca.invariants == cb.invariants))
		return std::nullopt;
	AbHom fwd = cb.from_canonical.compose(ca.to_canonical);
	AbHom bwd = ca.from_canonical.compose(cb.to_canonical);
	return std::make_pair(fwd, bwd);
}

inline bool ab_isomorphic(FGAbelian const &a, FGAbelian const &b)
{
	return canonical_form(a).invariants == canonical_form(b).invariants;
}

namespace detail {

/// Rows of U beyond the rank: a basis of the left kernel of m.
inline IntMat left_kernel(IntMat const &m, size_t cols)
{
	SmithForm sf = smith_normal_form(m, cols);
	IntMat k;
	for (size_t i = sf.rank(); i < sf.rows; ++i)
		k.push_back(sf.u[i]);
	return k;
}

} // namespace detail

/// Subgroup of A generated by a list of elements, with membership and the
/// induced quotient.
class GeneratedSubgroup
{
  public:
	GeneratedSubgroup(FGAbelian parent, std::vector<AbElement> gens)
	    : parent_(std::move(parent)), gens_(std::move(gens))
	{
		size_t r = parent_.rank();
		for (auto const &g : gens_)
			parent_.check(g);
		for (auto const &g : gens_)
			stacked_.push_back(g.coords);
		for (auto const &row : relation_rows(parent_))
			stacked_.push_back(row);
		sf_ = smith_normal_form(stacked_, r);

		// Relations among the generators: left kernel of the stacked
		// matrix, projected to the generator coordinates.
		IntMat rel;
		for (size_t i = sf_.rank(); i < sf_.rows; ++i)
			rel.emplace_back(sf_.u[i].begin(), sf_.u[i].begin() + gens_.size());
		Cokernel c = cokernel_of_relations(rel, gens_.size());
		group_ = c.group;
		std::vector<AbElement> imgs;
		for (size_t s = 0; s < group_.rank(); ++s)
		{
			IntVec x(r, 0);
			for (size_t j = 0; j < gens_.size(); ++j)
				for (size_t i = 0; i < r; ++i)
					x[i] = add(x[i], mul(c.from_group[j][s], gens_[j][i]));
			imgs.push_back(parent_.element(x));
		}
		inclusion_ = AbHom::from_images(group_, parent_, imgs);
		Cokernel q = cokernel_of_relations(stacked_, r);
		quotient_ = q.group;
		projection_ = AbHom(parent_, quotient_, q.to_group);
	}

	FGAbelian const &parent() const { return parent_; }
	std::vector<AbElement> const &generators() const { return gens_; }
	/// The subgroup as an abstract group, with its inclusion into the parent.
	FGAbelian const &group() const { return group_; }
	AbHom const &inclusion() const { return inclusion_; }
	/// parent / subgroup
	FGAbelian const &quotient() const { return quotient_; }
	AbHom const &projection() const { return projection_; }

	/// Integer coefficients c with Σ c_j g_j = x, when x is a member.
	std::optional<IntVec> coefficients(AbElement const &x) const
	{
		parent_.check(x);
		size_t r = parent_.rank();
		IntVec y(r, 0); // y = x V
		for (size_t j = 0; j < r; ++j)
			for (size_t i = 0; i < r; ++i)
				y[j] = add(y[j], mul(x[i], sf_.v[i][j]));
		IntVec cp(sf_.rows, 0);
		for (size_t j = 0; j < r; ++j)
		{
			if (j < sf_.rank())
			{
				if (y[j] % sf_.diag[j] != 0)
					return std::nullopt;
				cp[j] = y[j] / sf_.diag[j];
			}
			else if (y[j] != 0)
				return std::nullopt;
		}
		IntVec c(sf_.rows, 0); // c = cp U
		for (size_t k = 0; k < sf_.rows; ++k)
			for (size_t j = 0; j < sf_.rank(); ++j)
				c[k] = add(c[k], mul(cp[j], sf_.u[j][k]));
		c.resize(gens_.size());
		return c;
	}

	bool contains(AbElement const &x) const { return coefficients(x).has_value(); }

	bool is_everything() const { return quotient_.is_trivial(); }

	/// Index [A : S]; nullopt when infinite.
	std::optional<Int> index() const { return quotient_.cardinality(); }

  private:
	FGAbelian parent_;
	std::vector<AbElement> gens_;
	IntMat stacked_;
	SmithForm sf_;
	FGAbelian group_, quotient_;
	AbHom inclusion_, projection_;
};

inline GeneratedSubgroup ab_subgroup_generated(FGAbelian const &a,
                                               std::vector<AbElement> const &elems)
{
	return GeneratedSubgroup(a, elems);
}

/// Kernel of a homomorphism, as a generated subgroup of its source.
inline GeneratedSubgroup ab_kernel(AbHom const &h)
{
	FGAbelian const &a = h.source();
	FGAbelian const &b = h.target();
	// x in ker iff x H^T + c D_B = 0 for some c
	IntMat stacked;
	for (size_t j = 0; j < a.rank(); ++j)
	{
		IntVec row(b.rank());
		for (size_t i = 0; i < b.rank(); ++i)
			row[i] = h.matrix()[i][j];
		stacked.push_back(std::move(row));
	}
	for (auto const &row : relation_rows(b))
		stacked.push_back(row);
	std::vector<AbElement> gens;
	for (auto const &k : detail::left_kernel(stacked, b.rank()))
		gens.push_back(a.element(IntVec(k.begin(), k.begin() + a.rank())));
	return GeneratedSubgroup(a, gens);
}

inline GeneratedSubgroup ab_image(AbHom const &h)
{
	std::vector<AbElement> gens;
	for (size_t j = 0; j < h.source().rank(); ++j)
		gens.push_back(h.image_of_generator(j));
	return GeneratedSubgroup(h.target(), gens);
}

// Multilinear constructions.  Generator indexing:
//   A ⊗ A'  : e_i ⊗ f_j at index i * rank(A') + j, order gcd(d_i, d'_j)
//   Λ²A     : e_i ∧ e_j (i < j) in lexicographic order, order gcd(d_i, d_j)
//   Sym²A   : e_i e_j (i <= j) in lexicographic order, order gcd(d_i, d_j)
//             for i < j and d_i for i = j

/// Pair-indexed view of A ⊗ A'.  `position[index(i, j)]` is the coordinate of
/// e_i ⊗ f_j in the normalized tensor group, or -1 when gcd(d_i, d'_j) = 1.
struct TensorLayout
{
	size_t left_rank = 0, right_rank = 0;
	IntVec pair_orders;
	std::vector<long> position;
	FGAbelian group;

	size_t index(size_t i, size_t j) const { return i * right_rank + j; }
};

inline TensorLayout tensor_layout(FGAbelian const &a, FGAbelian const &b)
{
	TensorLayout t;
	t.left_rank = a.rank();
	t.right_rank = b.rank();
	IntVec kept;
	for (Int d : a.orders())
		for (Int e : b.orders())
		{
			Int g = gcd0(d, e);
			t.pair_orders.push_back(g);
			if (g == 1)
				t.position.push_back(-1);
			else
			{
				t.position.push_back(static_cast<long>(kept.size()));
				kept.push_back(g);
			}
		}
	t.group = FGAbelian::make(kept);
	return t;
}

inline FGAbelian ab_tensor(FGAbelian const &a, FGAbelian const &b)
{
	return tensor_layout(a, b).group;
}

inline FGAbelian ab_exterior_sq(FGAbelian const &a)
{
	IntVec orders;
	for (size_t i = 0; i < a.rank(); ++i)
		for (size_t j = i + 1; j < a.rank(); ++j)
			orders.push_back(gcd0(a.order(i), a.order(j)));
	return FGAbelian::make(orders);
}

inline FGAbelian ab_sym_sq(FGAbelian const &a)
{
	IntVec orders;
	for (size_t i = 0; i < a.rank(); ++i)
		for (size_t j = i; j < a.rank(); ++j)
			orders.push_back(i == j ? a.order(i) : gcd0(a.order(i), a.order(j)));
	return FGAbelian::make(orders);
}

/// Calls fn(x) on every element in lexicographic order; fn returns false to
/// stop.
template <class Fn> bool ab_for_each_element(FGAbelian const &a, Fn &&fn)
{
	if (!a.is_finite())
		fail(ErrorKind::UnsupportedEnumeration, "cannot enumerate infinite group " + a.str());
	std::vector<size_t> sizes;
	for (Int d : a.orders())
		sizes.push_back(static_cast<size_t>(d));
	AbElement x = a.zero();
	return detail::for_each_index(sizes, [&](std::vector<size_t> const &idx) {
		for (size_t i = 0; i < idx.size(); ++i)
			x.coords[i] = static_cast<Int>(idx[i]);
		return fn(std::as_const(x));
	});
}

inline std::vector<AbElement> ab_enumerate(FGAbelian const &a)
{
	std::vector<AbElement> out;
	ab_for_each_element(a, [&](AbElement const &x) {
		out.push_back(x);
		return true;
	});
	return out;
}

/// Elements x with n·x = 0 (n > 0), in lexicographic order.  Finite even when
/// the group is not.
inline std::vector<AbElement> ab_torsion_elements(FGAbelian const &a, Int n)
{
	std::vector<size_t> sizes;
	IntVec step;
	for (Int d : a.orders())
	{
		if (d == 0)
		{
			sizes.push_back(1);
			step.push_back(0);
		}
		else
		{
			Int s = d / std::gcd(d, n);
			sizes.push_back(static_cast<size_t>(d / s));
			step.push_back(s);
		}
	}
	std::vector<AbElement> out;
	detail::for_each_index(sizes, [&](std::vector<size_t> const &idx) {
		IntVec c(idx.size());
		for (size_t i = 0; i < idx.size(); ++i)
			c[i] = static_cast<Int>(idx[i]) * step[i];
		out.emplace_back(std::move(c));
		return true;
	});
	return out;
}

/// All homomorphisms a -> b in lexicographic order of their columns.
template <class Fn> bool ab_for_each_hom(FGAbelian const &a, FGAbelian const &b, Fn &&fn)
{
	std::vector<std::vector<AbElement>> options;
	for (Int d : a.orders())
	{
		if (d == 0)
		{
			if (!b.is_finite())
				fail(ErrorKind::UnsupportedEnumeration,
				     "Hom(" + a.str() + ", " + b.str() + ") is infinite");
			options.push_back(ab_enumerate(b));
		}
		else
			options.push_back(ab_torsion_elements(b, d));
	}
	std::vector<size_t> sizes;
	for (auto const &o : options)
		sizes.push_back(o.size());
	std::vector<AbElement> imgs(a.rank());
	return detail::for_each_index(sizes, [&](std::vector<size_t> const &idx) {
		for (size_t j = 0; j < idx.size(); ++j)
			imgs[j] = options[j][idx[j]];
		return fn(AbHom::from_images(a, b, imgs));
	});
}

inline std::vector<AbHom> ab_enumerate_homs(FGAbelian const &a, FGAbelian const &b)
{
	std::vector<AbHom> out;
	ab_for_each_hom(a, b, [&](AbHom const &h) {
		out.push_back(h);
		return true;
	});
	return out;
}

} // namespace nilq
