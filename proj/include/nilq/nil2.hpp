#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilq/abelian.hpp"

namespace nilq {

/// Element (a, b) of a class-two group stored as A × B with a twisted law.
struct Nil2Element
{
	AbElement a; // abelianization coordinate
	AbElement b; // commutator-subgroup coordinate

	friend bool operator==(Nil2Element const &, Nil2Element const &) = default;
	friend auto operator<=>(Nil2Element const &, Nil2Element const &) = default;
};

inline std::string to_string(Nil2Element const &z)
{
	return "(" + to_string(z.a) + "," + to_string(z.b) + ")";
}

inline std::ostream &operator<<(std::ostream &os, Nil2Element const &z) { return os << to_string(z); }

using BMatrix = std::vector<std::vector<AbElement>>;

/// Σ x_i y_j m[i][j] evaluated in `out`.
inline AbElement bilinear_form(FGAbelian const &out, BMatrix const &m, AbElement const &x,
                               AbElement const &y)
{
	IntVec acc(out.rank(), 0);
	for (size_t i = 0; i < x.size(); ++i)
	{
		if (x[i] == 0)
			continue;
		for (size_t j = 0; j < y.size(); ++j)
		{
			Int c = mul(x[i], y[j]);
			if (c == 0)
				continue;
			for (size_t k = 0; k < out.rank(); ++k)
				acc[k] = add(acc[k], mul(c, m[i][j][k]));
		}
	}
	return out.element(std::move(acc));
}

/// A class-two nilpotent group presented as a central extension
///
///     0 -> B -> G -> A -> 0,   B = [G, G],
///
/// with cocycle
///
///     β(x, y) = Σ x̄_i ȳ_j bil[i][j] + Σ_{d_i > 0} ⌊(x̄_i + ȳ_i) / d_i⌋ carry_i
///
/// on canonical representatives.  The group law is
/// (x, u) + (y, v) = (x ⊞ y, u + v + β(x, y)).
class Nil2Group
{
  public:
	Nil2Group() = default;

	/// nil2_make: validates torsion compatibility of bil, carry sanity and that
	/// the antisymmetrized bil generates B.
	static Nil2Group make(FGAbelian a, FGAbelian b, BMatrix bil, std::vector<AbElement> carry)
	{
		Nil2Group g;
		size_t r = a.rank();
		if (bil.empty())
			bil.assign(r, std::vector<AbElement>(r, b.zero()));
		if (carry.empty())
			carry.assign(r, b.zero());
		if (bil.size() != r || carry.size() != r)
			fail(ErrorKind::InvalidArgument, "cocycle data does not match rank of A");
		for (size_t i = 0; i < r; ++i)
		{
			if (bil[i].size() != r)
				fail(ErrorKind::InvalidArgument, "bil must be square");
			for (size_t j = 0; j < r; ++j)
				bil[i][j] = b.normalize(bil[i][j]);
			carry[i] = b.normalize(carry[i]);
		}
		for (size_t i = 0; i < r; ++i)
			for (size_t j = 0; j < r; ++j)
				for (size_t k : {i, j})
				{
					Int d = a.order(k);
					if (d > 0 && !b.is_zero(b.scale(bil[i][j], d)))
						fail(ErrorKind::InvalidCocycle,
						     "bil[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
						         "] = " + to_string(bil[i][j]) + " is not killed by " +
						         std::to_string(d));
				}
		for (size_t i = 0; i < r; ++i)
			if (a.order(i) == 0 && !b.is_zero(carry[i]))
				fail(ErrorKind::InvalidCocycle,
				     "carry of infinite generator " + std::to_string(i + 1) + " must be zero");
		g.a_ = std::move(a);
		g.b_ = std::move(b);
		g.bil_ = std::move(bil);
		g.carry_ = std::move(carry);

		std::vector<AbElement> comms;
		for (size_t i = 0; i < r; ++i)
			for (size_t j = i + 1; j < r; ++j)
				comms.push_back(g.b_.sub(g.bil_[i][j], g.bil_[j][i]));
		auto gen = ab_subgroup_generated(g.b_, comms);
		if (!gen.is_everything())
			fail(ErrorKind::CommutatorMismatch,
			     "commutators generate only a subgroup " + gen.group().describe() + " of B = " +
			         g.b_.describe() + " (index " +
			         (gen.index() ? std::to_string(*gen.index()) : std::string("infinite")) +
			         ")");
		return g;
	}

	/// The abelian group A viewed as a class-two group with B = 0.
	static Nil2Group abelian(FGAbelian a) { return make(std::move(a), FGAbelian(), {}, {}); }

	FGAbelian const &A() const { return a_; }
	FGAbelian const &B() const { return b_; }
	BMatrix const &bil() const { return bil_; }
	AbElement const &bil(size_t i, size_t j) const { return bil_[i][j]; }
	std::vector<AbElement> const &carry() const { return carry_; }
	size_t rank() const { return a_.rank(); }

	bool is_abelian() const { return b_.is_trivial(); }
	bool is_finite() const { return a_.is_finite() && b_.is_finite(); }

	std::optional<Int> order() const
	{
		if (!is_finite())
			return std::nullopt;
		return mul(*a_.cardinality(), *b_.cardinality());
	}

	Nil2Element zero() const { return {a_.zero(), b_.zero()}; }

	/// The lift (e_i, 0) of the i-th abelianization generator.
	Nil2Element generator(size_t i) const { return {a_.generator(i), b_.zero()}; }

	Nil2Element central(AbElement const &b) const { return {a_.zero(), b_.normalize(b)}; }

	Nil2Element element(IntVec a, IntVec b) const
	{
		return {a_.element(std::move(a)), b_.element(std::move(b))};
	}

	bool contains(Nil2Element const &z) const { return a_.contains(z.a) && b_.contains(z.b); }

	void check(Nil2Element const &z) const
	{
		if (!contains(z))
			fail(ErrorKind::InvalidArgument, to_string(z) + " is not an element of this group");
	}

	/// Σ x̄_i ȳ_j m[i][j] for a B-valued matrix indexed by generators.
	AbElement bilinear(BMatrix const &m, AbElement const &x, AbElement const &y) const
	{
		return bilinear_form(b_, m, x, y);
	}

	/// The cocycle β(x, y).
	AbElement cocycle(AbElement const &x, AbElement const &y) const
	{
		IntVec acc = bilinear(bil_, x, y).coords;
		for (size_t i = 0; i < rank(); ++i)
		{
			Int d = a_.order(i);
			if (d == 0)
				continue;
			Int c = (x[i] + y[i]) / d;
			if (c == 0)
				continue;
			for (size_t k = 0; k < b_.rank(); ++k)
				acc[k] = nilq::add(acc[k], mul(c, carry_[i][k]));
		}
		return b_.element(std::move(acc));
	}

	/// Antisymmetrized pairing: the B-part of [(x,·), (y,·)].
	AbElement commutator_form(AbElement const &x, AbElement const &y) const
	{
		return b_.sub(bilinear(bil_, x, y), bilinear(bil_, y, x));
	}

	Nil2Element add(Nil2Element const &z, Nil2Element const &w) const
	{
		check(z);
		check(w);
		AbElement b = b_.add(b_.add(z.b, w.b), cocycle(z.a, w.a));
		return {a_.add(z.a, w.a), std::move(b)};
	}

	Nil2Element neg(Nil2Element const &z) const
	{
		check(z);
		AbElement na = a_.neg(z.a);
		AbElement b = b_.neg(b_.add(z.b, cocycle(z.a, na)));
		return {std::move(na), std::move(b)};
	}

	/// z - w := z + (-w)
	Nil2Element sub(Nil2Element const &z, Nil2Element const &w) const { return add(z, neg(w)); }

	/// [z, w] = -z - w + z + w
	Nil2Element commutator(Nil2Element const &z, Nil2Element const &w) const
	{
		check(z);
		check(w);
		return {a_.zero(), commutator_form(z.a, w.a)};
	}

	/// n·z (double-and-add; negative n via the inverse).
	Nil2Element multiple(Nil2Element const &z, Int n) const
	{
		check(z);
		Nil2Element base = n < 0 ? neg(z) : z;
		unsigned long long k = n < 0 ? 0ULL - static_cast<unsigned long long>(n)
		                             : static_cast<unsigned long long>(n);
		Nil2Element acc = zero();
		while (k)
		{
			if (k & 1ULL)
				acc = add(acc, base);
			k >>= 1;
			if (k)
				base = add(base, base);
		}
		return acc;
	}

	/// Order of an element; 0 when infinite.
	Int element_order(Nil2Element const &z) const
	{
		Int oa = a_.element_order(z.a);
		if (oa == 0)
			return 0;
		Nil2Element p = multiple(z, oa);
		Int ob = b_.element_order(p.b);
		return ob == 0 ? 0 : mul(oa, ob);
	}

	bool is_central(Nil2Element const &z) const
	{
		check(z);
		for (size_t j = 0; j < rank(); ++j)
			if (!b_.is_zero(commutator_form(z.a, a_.generator(j))))
				return false;
		return true;
	}

	/// Mixed-radix index (A-part most significant); finite groups only.
	size_t index_of(Nil2Element const &z) const
	{
		size_t nb = static_cast<size_t>(*b_.cardinality());
		return a_.index_of(z.a) * nb + b_.index_of(z.b);
	}

	Nil2Element element_at(size_t i) const
	{
		if (!is_finite())
			fail(ErrorKind::UnsupportedEnumeration, "infinite group");
		size_t nb = static_cast<size_t>(*b_.cardinality());
		return {a_.element_at(i / nb), b_.element_at(i % nb)};
	}

	/// Exponent of a finite group (lcm of element orders).
	Int exponent() const
	{
		if (!is_finite())
			return 0;
		Int e = 1;
		size_t n = static_cast<size_t>(*order());
		for (size_t i = 0; i < n; ++i)
			e = lcm0(e, element_order(element_at(i)));
		return e;
	}

	std::string str() const
	{
		std::string s = "A=" + a_.str() + " B=" + b_.str();
		for (size_t i = 0; i < rank(); ++i)
			for (size_t j = 0; j < rank(); ++j)
				if (!b_.is_zero(bil_[i][j]))
					s += " bil[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
					     "]=" + to_string(bil_[i][j]);
		bool any_carry = false;
		for (auto const &c : carry_)
			any_carry |= !b_.is_zero(c);
		if (any_carry)
		{
			s += " carry=[";
			for (size_t i = 0; i < rank(); ++i)
				s += (i ? "," : "") + to_string(carry_[i]);
			s += "]";
		}
		return s;
	}

	friend bool operator==(Nil2Group const &, Nil2Group const &) = default;

  private:
	FGAbelian a_, b_;
	BMatrix bil_;
	std::vector<AbElement> carry_;
};

inline Nil2Group nil2_make(FGAbelian a, FGAbelian b, BMatrix bil, std::vector<AbElement> carry)
{
	return Nil2Group::make(std::move(a), std::move(b), std::move(bil), std::move(carry));
}

/// nil2_enumerate
template <class Fn> bool nil2_for_each_element(Nil2Group const &g, Fn &&fn)
{
	if (!g.is_finite())
		fail(ErrorKind::UnsupportedEnumeration, "cannot enumerate an infinite group");
	size_t n = static_cast<size_t>(*g.order());
	for (size_t i = 0; i < n; ++i)
		if (!fn(g.element_at(i)))
			return false;
	return true;
}

inline std::vector<Nil2Element> nil2_enumerate(Nil2Group const &g)
{
	std::vector<Nil2Element> out;
	nil2_for_each_element(g, [&](Nil2Element const &z) {
		out.push_back(z);
		return true;
	});
	return out;
}

/// Center as {(x, u) : x ∈ K} where K ⊂ A is the kernel of the
/// antisymmetrized pairing x ↦ ([x, e_j])_j.
struct Nil2Center
{
	GeneratedSubgroup a_part;
	FGAbelian b_part;

	bool contains(Nil2Element const &z) const { return a_part.contains(z.a); }

	std::optional<Int> order() const
	{
		auto ka = a_part.group().cardinality();
		auto kb = b_part.cardinality();
		if (!ka || !kb)
			return std::nullopt;
		return mul(*ka, *kb);
	}
};

inline Nil2Center nil2_center(Nil2Group const &g)
{
	// x ↦ (commutator_form(x, e_j))_j as a map A -> B^r
	FGAbelian target;
	for (size_t j = 0; j < g.rank(); ++j)
		target = target.direct_sum(g.B());
	std::vector<AbElement> imgs;
	for (size_t i = 0; i < g.rank(); ++i)
	{
		IntVec c;
		for (size_t j = 0; j < g.rank(); ++j)
		{
			auto v = g.commutator_form(g.A().generator(i), g.A().generator(j));
			c.insert(c.end(), v.coords.begin(), v.coords.end());
		}
		imgs.emplace_back(std::move(c));
	}
	AbHom pairing = AbHom::from_images(g.A(), target, imgs);
	return {ab_kernel(pairing), g.B()};
}

namespace detail {

inline AbElement embed(AbElement const &x, size_t offset, size_t total)
{
	IntVec c(total, 0);
	for (size_t i = 0; i < x.size(); ++i)
		c[offset + i] = x[i];
	return AbElement(std::move(c));
}

inline AbElement slice(AbElement const &x, size_t offset, size_t len)
{
	return AbElement(IntVec(x.coords.begin() + static_cast<long>(offset),
	                        x.coords.begin() + static_cast<long>(offset + len)));
}

} // namespace detail

/// nil2_product: A = A1 ⊕ A2, B = B1 ⊕ B2, block-diagonal cocycle.
inline Nil2Group nil2_product(Nil2Group const &g1, Nil2Group const &g2)
{
	FGAbelian a = g1.A().direct_sum(g2.A());
	FGAbelian b = g1.B().direct_sum(g2.B());
	size_t r1 = g1.rank(), r = a.rank(), s1 = g1.B().rank();
	BMatrix bil(r, std::vector<AbElement>(r, b.zero()));
	std::vector<AbElement> carry(r, b.zero());
	for (size_t i = 0; i < r1; ++i)
	{
		for (size_t j = 0; j < r1; ++j)
			bil[i][j] = detail::embed(g1.bil(i, j), 0, b.rank());
		carry[i] = detail::embed(g1.carry()[i], 0, b.rank());
	}
	for (size_t i = 0; i < g2.rank(); ++i)
	{
		for (size_t j = 0; j < g2.rank(); ++j)
			bil[r1 + i][r1 + j] = detail::embed(g2.bil(i, j), s1, b.rank());
		carry[r1 + i] = detail::embed(g2.carry()[i], s1, b.rank());
	}
	return Nil2Group::make(a, b, bil, carry);
}

/// Coordinates of the coproduct G1 ∨ G2.  Its elements are triples (ξ, g, h)
/// with ξ ∈ G1_ab ⊗ G2_ab and law
///
///     (ξ, g, h) + (ξ', g', h') = (ξ + ξ' - ĝ' ⊗ ĥ, g + g', h + h');
///
/// stored as A = A1 ⊕ A2, B = B1 ⊕ B2 ⊕ (A1 ⊗ A2).
struct Coproduct
{
	Nil2Group group;
	Nil2Group left, right;
	TensorLayout layout;

	size_t tensor_offset() const { return left.B().rank() + right.B().rank(); }

	/// ξ given in the normalized tensor group's coordinates.
	Nil2Element element(AbElement const &xi, Nil2Element const &g, Nil2Element const &h) const
	{
		IntVec a = g.a.coords;
		a.insert(a.end(), h.a.coords.begin(), h.a.coords.end());
		IntVec b = g.b.coords;
		b.insert(b.end(), h.b.coords.begin(), h.b.coords.end());
		b.insert(b.end(), xi.coords.begin(), xi.coords.end());
		return group.element(std::move(a), std::move(b));
	}

	Nil2Element inject_left(Nil2Element const &g) const
	{
		return element(layout.group.zero(), g, right.zero());
	}

	Nil2Element inject_right(Nil2Element const &h) const
	{
		return element(layout.group.zero(), left.zero(), h);
	}

	AbElement xi_part(Nil2Element const &z) const
	{
		return detail::slice(z.b, tensor_offset(), layout.group.rank());
	}

	Nil2Element left_part(Nil2Element const &z) const
	{
		return {detail::slice(z.a, 0, left.rank()), detail::slice(z.b, 0, left.B().rank())};
	}

	Nil2Element right_part(Nil2Element const &z) const
	{
		return {detail::slice(z.a, left.rank(), right.rank()),
		        detail::slice(z.b, left.B().rank(), right.B().rank())};
	}

	/// x ⊗ y in the normalized tensor coordinates.
	AbElement tensor(AbElement const &x, AbElement const &y) const
	{
		IntVec c(layout.group.rank(), 0);
		for (size_t i = 0; i < x.size(); ++i)
			for (size_t j = 0; j < y.size(); ++j)
			{
				long p = layout.position[layout.index(i, j)];
				if (p >= 0)
					c[static_cast<size_t>(p)] = nilq::add(c[static_cast<size_t>(p)], mul(x[i], y[j]));
			}
		return layout.group.element(std::move(c));
	}
};

inline Coproduct nil2_coproduct_data(Nil2Group const &g1, Nil2Group const &g2)
{
	Coproduct c;
	c.left = g1;
	c.right = g2;
	c.layout = tensor_layout(g1.A(), g2.A());
	FGAbelian a = g1.A().direct_sum(g2.A());
	FGAbelian b = g1.B().direct_sum(g2.B()).direct_sum(c.layout.group);
	size_t r1 = g1.rank(), r = a.rank(), s1 = g1.B().rank(), s2 = g2.B().rank();
	BMatrix bil(r, std::vector<AbElement>(r, b.zero()));
	std::vector<AbElement> carry(r, b.zero());
	for (size_t i = 0; i < r1; ++i)
	{
		for (size_t j = 0; j < r1; ++j)
			bil[i][j] = detail::embed(g1.bil(i, j), 0, b.rank());
		carry[i] = detail::embed(g1.carry()[i], 0, b.rank());
	}
	for (size_t i = 0; i < g2.rank(); ++i)
	{
		for (size_t j = 0; j < g2.rank(); ++j)
			bil[r1 + i][r1 + j] = detail::embed(g2.bil(i, j), s1, b.rank());
		carry[r1 + i] = detail::embed(g2.carry()[i], s1, b.rank());
	}
	// cross term: (f_j in the first argument, e_i in the second) -> -(e_i ⊗ f_j)
	for (size_t i = 0; i < r1; ++i)
		for (size_t j = 0; j < g2.rank(); ++j)
		{
			long p = c.layout.position[c.layout.index(i, j)];
			if (p < 0)
				continue;
			IntVec v(b.rank(), 0);
			v[s1 + s2 + static_cast<size_t>(p)] = -1;
			bil[r1 + j][i] = b.element(v);
		}
	c.group = Nil2Group::make(a, b, bil, carry);
	return c;
}

inline Nil2Group nil2_coproduct(Nil2Group const &g1, Nil2Group const &g2)
{
	return nil2_coproduct_data(g1, g2).group;
}

/// Free class-two group of rank n: A = Z^n, B = Λ²(Z^n) with generators
/// e_i ∧ e_j (i < j) in lexicographic order, bil[i][j] = e_i ∧ e_j for i < j.
inline Nil2Group nil2_free(size_t n)
{
	FGAbelian a = FGAbelian::free(n);
	FGAbelian b = ab_exterior_sq(a);
	BMatrix bil(n, std::vector<AbElement>(n, b.zero()));
	size_t k = 0;
	for (size_t i = 0; i < n; ++i)
		for (size_t j = i + 1; j < n; ++j)
			bil[i][j] = b.generator(k++);
	return Nil2Group::make(a, b, bil, {});
}

/// The universal quadratic extension P₂G = (G_ab ⊗ G_ab) × G with law
/// (ξ, g) + (ξ', g') = (ξ + ξ' - ĝ ⊗ ĝ', g + g').
class P2Extension
{
  public:
	struct Element
	{
		AbElement xi;
		Nil2Element g;

		friend bool operator==(Element const &, Element const &) = default;
		friend auto operator<=>(Element const &, Element const &) = default;
	};

	explicit P2Extension(Nil2Group base)
	    : base_(std::move(base)), layout_(tensor_layout(base_.A(), base_.A()))
	{}

	Nil2Group const &base() const { return base_; }
	FGAbelian const &kernel() const { return layout_.group; }
	TensorLayout const &layout() const { return layout_; }

	Element zero() const { return {kernel().zero(), base_.zero()}; }

	AbElement tensor(AbElement const &x, AbElement const &y) const
	{
		IntVec c(kernel().rank(), 0);
		for (size_t i = 0; i < x.size(); ++i)
			for (size_t j = 0; j < y.size(); ++j)
			{
				long p = layout_.position[layout_.index(i, j)];
				if (p >= 0)
					c[static_cast<size_t>(p)] = nilq::add(c[static_cast<size_t>(p)], mul(x[i], y[j]));
			}
		return kernel().element(std::move(c));
	}

	Element add(Element const &u, Element const &v) const
	{
		AbElement xi = kernel().sub(kernel().add(u.xi, v.xi), tensor(u.g.a, v.g.a));
		return {std::move(xi), base_.add(u.g, v.g)};
	}

	Element neg(Element const &u) const
	{
		// -(ξ, g) = (-ξ - ĝ ⊗ ĝ, -g): solves (ξ,g) + (η,-g) = 0
		Nil2Element ng = base_.neg(u.g);
		AbElement xi = kernel().add(kernel().neg(u.xi), tensor(u.g.a, ng.a));
		return {std::move(xi), std::move(ng)};
	}

	/// p₂(g) = (0, g)
	Element p2(Nil2Element const &g) const { return {kernel().zero(), g}; }

	/// ι(ξ) = (ξ, 0)
	Element iota(AbElement const &xi) const { return {kernel().normalize(xi), base_.zero()}; }

	/// π(ξ, g) = g
	Nil2Element project(Element const &u) const { return u.g; }

	bool is_finite() const { return base_.is_finite() && kernel().is_finite(); }

	std::vector<Element> enumerate() const
	{
		std::vector<Element> out;
		for (auto const &xi : ab_enumerate(kernel()))
			for (auto const &g : nil2_enumerate(base_))
				out.push_back({xi, g});
		return out;
	}

  private:
	Nil2Group base_;
	TensorLayout layout_;
};

inline P2Extension nil2_p2(Nil2Group const &g) { return P2Extension(g); }

} // namespace nilq
