#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilq/qmap.hpp"

namespace nilq {

namespace detail {

inline bool odd_finite(FGAbelian const &a)
{
	if (!a.is_finite())
		return false;
	for (Int d : a.orders())
		if (d % 2 == 0)
			return false;
	return true;
}

/// Multiplier acting as 1/2 on a finite group of odd order n.
inline Int half_of(Int n) { return (n + 1) / 2; }

inline void require_odd(Nil2Group const &g, std::string const &what)
{
	if (!odd_finite(g.A()) || !odd_finite(g.B()))
		fail(ErrorKind::Unsupported, what + " needs a finite group of odd order, got " + g.str());
}

} // namespace detail

/// A class-two Lie ring over Z[1/2].  The underlying abelian group is the
/// extension of A by B with carry cocycle Σ ⌊(x̄_i + ȳ_i)/d_i⌋ carry_i, and
///     [(x, u), (y, v)] = (0, Σ x̄_i ȳ_j bracket[i][j]).
class Nil2LieRing
{
  public:
	Nil2LieRing() = default;

	/// lie_make
	static Nil2LieRing make(FGAbelian a, FGAbelian b, std::vector<AbElement> carry,
	                        BMatrix bracket)
	{
		if (!detail::odd_finite(a) || !detail::odd_finite(b))
			fail(ErrorKind::NotUniquely2Divisible,
			     "A = " + a.describe() + ", B = " + b.describe() + " must be finite of odd order");
		size_t r = a.rank();
		if (carry.empty())
			carry.assign(r, b.zero());
		if (bracket.empty())
			bracket.assign(r, std::vector<AbElement>(r, b.zero()));
		if (carry.size() != r || bracket.size() != r)
			fail(ErrorKind::InvalidArgument, "Lie data does not match the rank of A");
		for (size_t i = 0; i < r; ++i)
		{
			if (bracket[i].size() != r)
				fail(ErrorKind::InvalidArgument, "bracket must be square");
			carry[i] = b.normalize(carry[i]);
			for (auto &x : bracket[i])
				x = b.normalize(x);
		}
		auto at = [](size_t i, size_t j) {
			return "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
		};
		for (size_t i = 0; i < r; ++i)
			for (size_t j = 0; j < r; ++j)
			{
				if (!b.is_zero(b.add(bracket[i][j], bracket[j][i])))
					fail(ErrorKind::InvalidBracket, "bracket" + at(i, j) + " is not antisymmetric");
				for (size_t k : {i, j})
					if (!b.is_zero(b.scale(bracket[i][j], a.order(k))))
						fail(ErrorKind::InvalidBracket, "bracket" + at(i, j) + " is not killed by " +
						                                    std::to_string(a.order(k)));
			}
		std::vector<AbElement> gens;
		for (size_t i = 0; i < r; ++i)
			for (size_t j = i + 1; j < r; ++j)
				gens.push_back(bracket[i][j]);
		if (!ab_subgroup_generated(b, gens).is_everything())
			fail(ErrorKind::CommutatorMismatch, "the brackets do not generate B = " + b.describe());
		Nil2LieRing l;
		l.a_ = std::move(a);
		l.b_ = std::move(b);
		l.carry_ = std::move(carry);
		l.bracket_ = std::move(bracket);
		return l;
	}

	FGAbelian const &A() const { return a_; }
	FGAbelian const &B() const { return b_; }
	std::vector<AbElement> const &carry() const { return carry_; }
	BMatrix const &bracket() const { return bracket_; }
	size_t rank() const { return a_.rank(); }
	Int order() const { return mul(*a_.cardinality(), *b_.cardinality()); }

	Nil2Element zero() const { return {a_.zero(), b_.zero()}; }
	Nil2Element generator(size_t i) const { return {a_.generator(i), b_.zero()}; }
	Nil2Element central(AbElement const &c) const { return {a_.zero(), b_.normalize(c)}; }

	bool contains(Nil2Element const &z) const { return a_.contains(z.a) && b_.contains(z.b); }

	void check(Nil2Element const &z) const
	{
		if (!contains(z))
			fail(ErrorKind::InvalidArgument, to_string(z) + " is not an element of this Lie ring");
	}

	AbElement carry_part(AbElement const &x, AbElement const &y) const
	{
		IntVec acc(b_.rank(), 0);
		for (size_t i = 0; i < rank(); ++i)
		{
			Int q = (x[i] + y[i]) / a_.order(i);
			for (size_t k = 0; k < b_.rank(); ++k)
				acc[k] = nilq::add(acc[k], mul(q, carry_[i][k]));
		}
		return b_.element(std::move(acc));
	}

	Nil2Element add(Nil2Element const &z, Nil2Element const &w) const
	{
		check(z);
		check(w);
		return {a_.add(z.a, w.a), b_.add(b_.add(z.b, w.b), carry_part(z.a, w.a))};
	}

	Nil2Element neg(Nil2Element const &z) const
	{
		check(z);
		AbElement na = a_.neg(z.a);
		return {na, b_.neg(b_.add(z.b, carry_part(z.a, na)))};
	}

	Nil2Element sub(Nil2Element const &z, Nil2Element const &w) const { return add(z, neg(w)); }

	Nil2Element scale(Nil2Element const &z, Int n) const
	{
		Nil2Element base = n < 0 ? neg(z) : z, acc = zero();
		Int k = n < 0 ? -n : n;
		while (k)
		{
			if (k & 1)
				acc = add(acc, base);
			k >>= 1;
			if (k)
				base = add(base, base);
		}
		return acc;
	}

	/// The unique y with 2y = z.
	Nil2Element half(Nil2Element const &z) const { return scale(z, detail::half_of(order())); }

	Nil2Element bracket(Nil2Element const &z, Nil2Element const &w) const
	{
		check(z);
		check(w);
		return {a_.zero(), bilinear_form(b_, bracket_, z.a, w.a)};
	}

	size_t index_of(Nil2Element const &z) const
	{
		return a_.index_of(z.a) * static_cast<size_t>(*b_.cardinality()) + b_.index_of(z.b);
	}

	Nil2Element element_at(size_t i) const
	{
		size_t nb = static_cast<size_t>(*b_.cardinality());
		return {a_.element_at(i / nb), b_.element_at(i % nb)};
	}

	std::vector<Nil2Element> elements() const
	{
		std::vector<Nil2Element> out;
		for (size_t i = 0; i < static_cast<size_t>(order()); ++i)
			out.push_back(element_at(i));
		return out;
	}

	/// Invariant factors of the underlying abelian group.
	FGAbelian underlying() const
	{
		size_t r = rank(), s = b_.rank();
		IntMat rel;
		for (size_t i = 0; i < r; ++i)
		{
			IntVec row(r + s, 0);
			row[i] = a_.order(i);
			for (size_t k = 0; k < s; ++k)
				row[r + k] = -carry_[i][k];
			rel.push_back(std::move(row));
		}
		for (size_t k = 0; k < s; ++k)
		{
			IntVec row(r + s, 0);
			row[r + k] = b_.order(k);
			rel.push_back(std::move(row));
		}
		return ab_snf_invariants(rel, r + s);
	}

	std::string str() const
	{
		std::string s = "A=" + a_.str() + " B=" + b_.str();
		for (size_t i = 0; i < rank(); ++i)
			for (size_t j = 0; j < rank(); ++j)
				if (!b_.is_zero(bracket_[i][j]))
					s += " bracket[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
					     "]=" + to_string(bracket_[i][j]);
		bool any = false;
		for (auto const &c : carry_)
			any |= !b_.is_zero(c);
		if (any)
		{
			s += " carry=[";
			for (size_t i = 0; i < rank(); ++i)
				s += (i ? "," : "") + to_string(carry_[i]);
			s += "]";
		}
		return s;
	}

	friend bool operator==(Nil2LieRing const &, Nil2LieRing const &) = default;

  private:
	FGAbelian a_, b_;
	std::vector<AbElement> carry_;
	BMatrix bracket_;
};

inline Nil2LieRing lie_make(FGAbelian a, FGAbelian b, std::vector<AbElement> carry,
                            BMatrix bracket)
{
	return Nil2LieRing::make(std::move(a), std::move(b), std::move(carry), std::move(bracket));
}

/// exp(L): the same set with a ⊕ b = a + b + ½[a, b], i.e. bil = ½·bracket.
inline Nil2Group lie_exp(Nil2LieRing const &l)
{
	Int h = detail::half_of(*l.B().cardinality());
	size_t r = l.rank();
	BMatrix bil(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
			bil[i][j] = l.B().scale(l.bracket()[i][j], h);
	return nil2_make(l.A(), l.B(), bil, l.carry());
}

/// log(G): bracket = bil - bilᵀ with the carries kept.  The symmetric part of
/// bil is absorbed by the coordinate change of lie_log_element.
inline Nil2LieRing lie_log(Nil2Group const &g)
{
	detail::require_odd(g, "log");
	size_t r = g.rank();
	BMatrix br(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
			br[i][j] = g.B().sub(g.bil(i, j), g.bil(j, i));
	return lie_make(g.A(), g.B(), g.carry(), br);
}

namespace detail {

/// φ(x) = ½·Σ x̄_i x̄_j bil[i][j]
inline AbElement log_shift(Nil2Group const &g, AbElement const &x)
{
	return g.B().scale(bilinear_form(g.B(), g.bil(), x, x), half_of(*g.B().cardinality()));
}

} // namespace detail

/// G -> log(G), (x, u) ↦ (x, u - φ(x)).
inline Nil2Element lie_log_element(Nil2Group const &g, Nil2Element const &z)
{
	g.check(z);
	return {z.a, g.B().sub(z.b, detail::log_shift(g, z.a))};
}

/// log(G) -> G, inverse of lie_log_element.
inline Nil2Element lie_exp_element(Nil2Group const &g, Nil2Element const &a)
{
	return {a.a, g.B().add(a.b, detail::log_shift(g, a.a))};
}

/// A linear map L -> L' with g[L,L] ⊆ [L',L'], given on the generators E_i
/// and on B.
struct LieLinearMap
{
	Nil2LieRing source, target;
	std::vector<Nil2Element> images; // g(E_i)
	AbHom comm;                      // g restricted to [L,L] = B

	Nil2Element apply(Nil2Element const &a) const
	{
		source.check(a);
		Nil2Element acc = target.zero(), kappa = source.zero();
		for (size_t i = 0; i < source.rank(); ++i)
		{
			acc = target.add(acc, target.scale(images[i], a.a[i]));
			kappa = source.add(kappa, source.scale(source.generator(i), a.a[i]));
		}
		return target.add(acc, target.central(comm.apply(source.B().sub(a.b, kappa.b))));
	}

	bool is_bijective() const
	{
		if (source.order() != target.order())
			return false;
		std::set<size_t> seen;
		for (auto const &a : source.elements())
			if (!seen.insert(target.index_of(apply(a))).second)
				return false;
		return true;
	}
};

/// Every linear map L -> L' carrying [L,L] into [L',L'], from the
/// presentation d_i E_i = (0, carry_i).  fn returns false to stop.
template <class Fn>
bool lie_for_each_linear(Nil2LieRing const &l, Nil2LieRing const &m, Fn &&fn,
                         std::function<bool(AbHom const &)> const &comm_filter = {})
{
	auto targets = m.elements();
	size_t r = l.rank();
	for (auto const &comm : ab_enumerate_homs(l.B(), m.B()))
	{
		if (comm_filter && !comm_filter(comm))
			continue;
		std::vector<std::vector<Nil2Element>> opts(r);
		std::vector<size_t> sizes;
		for (size_t i = 0; i < r; ++i)
		{
			Nil2Element want = m.central(comm.apply(l.carry()[i]));
			for (auto const &c : targets)
				if (m.scale(c, l.A().order(i)) == want)
					opts[i].push_back(c);
			sizes.push_back(opts[i].size());
		}
		bool go = detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
			LieLinearMap g{l, m, {}, comm};
			for (size_t i = 0; i < r; ++i)
				g.images.push_back(opts[i][ix[i]]);
			return static_cast<bool>(fn(g));
		});
		if (!go)
			return false;
	}
	return true;
}

/// f(a) = g(a) + ½h(â, â) on the Lie side of a q-map between odd-order groups.
struct QMapDecomposition
{
	Nil2Group source_group, target_group;
	LieLinearMap g;
	BMatrix h; // h(e_i, e_j) in [L', L'], symmetric

	AbElement quadratic(AbElement const &x, AbElement const &y) const
	{
		return bilinear_form(g.target.B(), h, x, y);
	}

	/// The value on the Lie side.
	Nil2Element eval(Nil2Element const &a) const
	{
		Nil2LieRing const &m = g.target;
		AbElement q = m.B().scale(quadratic(a.a, a.a), detail::half_of(*m.B().cardinality()));
		return m.add(g.apply(a), m.central(q));
	}

	/// The value on the group side, G -> H.
	Nil2Element eval_group(Nil2Element const &z) const
	{
		return lie_exp_element(target_group, eval(lie_log_element(source_group, z)));
	}
};

/// lie_qmap_decompose: g(a) = 2f(a) - ½f(2a), h(â, b̂) = f(a+b) - f(a) - f(b),
/// computed in the Lie rings.
inline QMapDecomposition lie_qmap_decompose(QMap const &f)
{
	Nil2Group const &gs = f.source(), &hs = f.target();
	detail::require_odd(gs, "q-map decomposition");
	detail::require_odd(hs, "q-map decomposition");
	Nil2LieRing l = lie_log(gs), m = lie_log(hs);
	auto F = [&](Nil2Element const &a) {
		return lie_log_element(hs, f.eval(lie_exp_element(gs, a)));
	};
	auto lin = [&](Nil2Element const &a) {
		return m.sub(m.scale(F(a), 2), m.half(F(l.scale(a, 2))));
	};
	size_t r = l.rank();
	std::vector<Nil2Element> imgs;
	for (size_t i = 0; i < r; ++i)
		imgs.push_back(lin(l.generator(i)));
	std::vector<AbElement> comm_imgs;
	for (size_t k = 0; k < l.B().rank(); ++k)
	{
		Nil2Element v = lin(l.central(l.B().generator(k)));
		if (!m.A().is_zero(v.a))
			fail(ErrorKind::NotAQMap, "the linear part does not preserve [L,L]");
		comm_imgs.push_back(v.b);
	}
	BMatrix h(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
		{
			Nil2Element ei = l.generator(i), ej = l.generator(j);
			Nil2Element c = m.sub(F(l.add(ei, ej)), m.add(F(ei), F(ej)));
			if (!m.A().is_zero(c.a))
				fail(ErrorKind::NotAQMap, "the cross-effect leaves [L',L']");
			h[i][j] = c.b;
		}
	LieLinearMap g{l, m, std::move(imgs), AbHom::from_images(l.B(), m.B(), comm_imgs)};
	return {gs, hs, std::move(g), std::move(h)};
}

/// lie_qmap_recompose: the q-map G -> H with Lie-side values g(a) + ½h(â, â).
inline QMap lie_qmap_recompose(QMapDecomposition const &d)
{
	return QMap::from_function(d.source_group, d.target_group,
	                           [&](Nil2Element const &z) { return d.eval_group(z); });
}

/// Symmetric bilinear maps L_ab × L_ab -> B', as symmetric matrices.
template <class Fn> bool lie_for_each_symmetric(FGAbelian const &a, FGAbelian const &b, Fn &&fn)
{
	size_t r = a.rank();
	std::vector<std::pair<size_t, size_t>> slots;
	std::vector<std::vector<AbElement>> opts;
	std::vector<size_t> sizes;
	for (size_t i = 0; i < r; ++i)
		for (size_t j = i; j < r; ++j)
		{
			slots.emplace_back(i, j);
			opts.push_back(ab_torsion_elements(b, gcd0(a.order(i), a.order(j))));
			sizes.push_back(opts.back().size());
		}
	return detail::for_each_index(sizes, [&](std::vector<size_t> const &ix) {
		BMatrix h(r, std::vector<AbElement>(r, b.zero()));
		for (size_t s = 0; s < slots.size(); ++s)
		{
			auto [i, j] = slots[s];
			h[i][j] = h[j][i] = opts[s][ix[s]];
		}
		return static_cast<bool>(fn(h));
	});
}

/// Outcome of bolo_decide; the witness is an abelian-group isomorphism
/// log G -> log H with g[G,G] = [H,H].
struct BoloResult
{
	bool isomorphic = false;
	std::optional<LieLinearMap> witness;
	std::string reason;
};

inline BoloResult bolo_decide(Nil2Group const &g, Nil2Group const &h)
{
	detail::require_odd(g, "bolo_decide");
	detail::require_odd(h, "bolo_decide");
	Nil2LieRing l = lie_log(g), m = lie_log(h);
	BoloResult out;
	if (l.order() != m.order())
	{
		out.reason = "orders differ";
		return out;
	}
	if (!ab_isomorphic(l.B(), m.B()))
	{
		out.reason = "commutator subgroups " + l.B().describe() + " and " + m.B().describe() +
		             " differ";
		return out;
	}
	FGAbelian ul = l.underlying(), um = m.underlying();
	if (!ab_isomorphic(ul, um))
	{
		out.reason = "underlying abelian groups " + ul.describe() + " and " + um.describe() +
		             " differ";
		return out;
	}
	Int nb = *m.B().cardinality();
	auto comm_iso = [&](AbHom const &c) {
		return *c.source().cardinality() == nb && ab_kernel(c).group().is_trivial();
	};
	lie_for_each_linear(
	    l, m,
	    [&](LieLinearMap const &lin) {
		    if (!lin.is_bijective())
			    return true;
		    out.isomorphic = true;
		    out.witness = lin;
		    return false;
	    },
	    comm_iso);
	out.reason = out.isomorphic ? "isomorphism of logs found" : "no isomorphism of logs matches";
	return out;
}

/// The Niq-isomorphism G -> H carried by a bolo witness (h = 0).
inline QMap bolo_witness_qmap(Nil2Group const &g, Nil2Group const &h, LieLinearMap const &lin)
{
	size_t r = g.rank();
	QMapDecomposition d{g, h, lin, BMatrix(r, std::vector<AbElement>(r, h.B().zero()))};
	return lie_qmap_recompose(d);
}

} // namespace nilq
