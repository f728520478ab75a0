#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilq/nil2.hpp"

namespace nilq {

/// Outcome of checking q-map generator data.
struct QMapValidation
{
	std::optional<std::string> relation_failure; // first failing relation, if any
	std::optional<bool> exhaustive;              // definition-level verdict (finite sources)
	bool discrepancy = false;                    // relations and exhaustive check disagree

	/// The exhaustive verdict wins when it was computed.
	bool valid() const { return exhaustive ? *exhaustive : !relation_failure; }
};

/// A q-map G -> H stored by generator data:
///   f(E_i) = (fab(e_i), gamma_i),   E_i = (e_i, 0),
///   f((0, c)) = (0, fcomm(c)),       c ∈ [G,G],
///   (E_i | E_j)_f = (0, delta[i][j]).
class QMap
{
  public:
	QMap() = default;

	/// qmap_make: validates torsion, commutator and order relations.
	static QMap make(Nil2Group g, Nil2Group h, AbHom fab, AbHom fcomm,
	                 std::vector<AbElement> gamma, BMatrix delta)
	{
		QMap f = unchecked(std::move(g), std::move(h), std::move(fab), std::move(fcomm),
		                   std::move(gamma), std::move(delta));
		if (auto why = f.relation_failure())
			fail(ErrorKind::NotAQMap, *why);
		return f;
	}

	/// Builds without the relation checks (shape and torsion of fab/fcomm are
	/// still enforced).
	static QMap unchecked(Nil2Group g, Nil2Group h, AbHom fab, AbHom fcomm,
	                      std::vector<AbElement> gamma, BMatrix delta)
	{
		QMap f;
		size_t r = g.rank();
		if (!(fab.source() == g.A()) || !(fab.target() == h.A()))
			fail(ErrorKind::InvalidArgument, "fab has the wrong endpoints");
		if (!(fcomm.source() == g.B()) || !(fcomm.target() == h.B()))
			fail(ErrorKind::InvalidArgument, "fcomm has the wrong endpoints");
		if (gamma.empty())
			gamma.assign(r, h.B().zero());
		if (delta.empty())
			delta.assign(r, std::vector<AbElement>(r, h.B().zero()));
		if (gamma.size() != r || delta.size() != r)
			fail(ErrorKind::InvalidArgument, "gamma/delta do not match the source rank");
		for (size_t i = 0; i < r; ++i)
		{
			gamma[i] = h.B().normalize(gamma[i]);
			if (delta[i].size() != r)
				fail(ErrorKind::InvalidArgument, "delta must be square");
			for (auto &d : delta[i])
				d = h.B().normalize(d);
		}
		f.g_ = std::move(g);
		f.h_ = std::move(h);
		f.fab_ = std::move(fab);
		f.fcomm_ = std::move(fcomm);
		f.gamma_ = std::move(gamma);
		f.delta_ = std::move(delta);
		return f;
	}

	/// Reads generator data off a function that is known (or claimed) to be a
	/// q-map, then validates it.
	template <class Fn> static QMap from_function(Nil2Group const &g, Nil2Group const &h, Fn &&fn)
	{
		size_t r = g.rank();
		std::vector<AbElement> ab_imgs, gamma, comm_imgs;
		std::vector<Nil2Element> vals;
		for (size_t i = 0; i < r; ++i)
		{
			Nil2Element v = fn(g.generator(i));
			h.check(v);
			ab_imgs.push_back(v.a);
			gamma.push_back(v.b);
			vals.push_back(v);
		}
		for (size_t k = 0; k < g.B().rank(); ++k)
		{
			Nil2Element v = fn(g.central(g.B().generator(k)));
			if (!h.A().is_zero(v.a))
				fail(ErrorKind::NotAQMap, "a commutator is not sent into [H,H]");
			comm_imgs.push_back(v.b);
		}
		BMatrix delta(r, std::vector<AbElement>(r));
		for (size_t i = 0; i < r; ++i)
			for (size_t j = 0; j < r; ++j)
			{
				Nil2Element s = fn(g.add(g.generator(i), g.generator(j)));
				Nil2Element c = h.add(h.neg(h.add(vals[i], vals[j])), s);
				if (!h.A().is_zero(c.a))
					fail(ErrorKind::NotAQMap, "cross-effect (E" + std::to_string(i + 1) + "|E" +
					                              std::to_string(j + 1) + ") escapes [H,H]");
				delta[i][j] = c.b;
			}
		return make(g, h, AbHom::from_images(g.A(), h.A(), ab_imgs),
		            AbHom::from_images(g.B(), h.B(), comm_imgs), gamma, delta);
	}

	static QMap identity(Nil2Group const &g)
	{
		return make(g, g, AbHom::identity(g.A()), AbHom::identity(g.B()), {}, {});
	}

	static QMap zero(Nil2Group const &g, Nil2Group const &h)
	{
		return make(g, h, AbHom::zero(g.A(), h.A()), AbHom::zero(g.B(), h.B()), {}, {});
	}

	Nil2Group const &source() const { return g_; }
	Nil2Group const &target() const { return h_; }
	AbHom const &fab() const { return fab_; }
	AbHom const &fcomm() const { return fcomm_; }
	std::vector<AbElement> const &gamma() const { return gamma_; }
	BMatrix const &delta() const { return delta_; }
	AbElement const &delta(size_t i, size_t j) const { return delta_[i][j]; }

	/// Images of the generators E_i and the delta entries, 1-based.
	std::string str() const
	{
		std::string s;
		for (size_t i = 0; i < gamma_.size(); ++i)
			s += (i ? " " : "") + std::string("E") + std::to_string(i + 1) + "->" +
			     to_string(generator_image(i));
		for (size_t i = 0; i < delta_.size(); ++i)
			for (size_t j = 0; j < delta_.size(); ++j)
				if (!h_.B().is_zero(delta_[i][j]))
					s += " delta" + std::to_string(i + 1) + std::to_string(j + 1) + "=" +
					     to_string(delta_[i][j]);
		if (!g_.B().is_trivial())
			s += " fcomm=" + to_string(fcomm_.matrix());
		return s.empty() ? "trivial" : s;
	}

	/// f(E_i)
	Nil2Element generator_image(size_t i) const
	{
		return {fab_.image_of_generator(i), gamma_[i]};
	}

	/// The first violated relation, or nothing when all hold.
	std::optional<std::string> relation_failure() const
	{
		size_t r = g_.rank();
		FGAbelian const &bh = h_.B();
		auto pair = [](size_t i, size_t j) {
			return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
		};
		for (size_t i = 0; i < r; ++i)
			for (size_t j = 0; j < r; ++j)
				for (size_t k : {i, j})
				{
					Int d = g_.A().order(k);
					if (d > 0 && !bh.is_zero(bh.scale(delta_[i][j], d)))
						return "torsion relation fails at " + pair(i, j);
				}
		for (size_t i = 0; i < r; ++i)
			for (size_t j = i + 1; j < r; ++j)
			{
				AbElement lhs = fcomm_.apply(g_.commutator_form(g_.A().generator(i),
				                                                g_.A().generator(j)));
				AbElement rhs = h_.commutator(generator_image(i), generator_image(j)).b;
				rhs = bh.sub(bh.add(rhs, delta_[i][j]), delta_[j][i]);
				if (!(lhs == rhs))
					return "commutator relation fails at " + pair(i, j);
			}
		for (size_t i = 0; i < r; ++i)
		{
			Int d = g_.A().order(i);
			if (d == 0)
				continue;
			AbElement t = g_.multiple(g_.generator(i), d).b;
			Nil2Element lhs = h_.add(h_.multiple(generator_image(i), d),
			                         h_.central(bh.scale(delta_[i][i], binom2(d))));
			if (!(lhs == h_.central(fcomm_.apply(t))))
				return "order relation fails at generator " + std::to_string(i + 1);
		}
		return std::nullopt;
	}

	/// f(m E_i) = m f(E_i) + (m(m-1)/2) delta[i][i], any integer m.
	Nil2Element generator_multiple(size_t i, Int m) const
	{
		return h_.add(h_.multiple(generator_image(i), m),
		              h_.central(h_.B().scale(delta_[i][i], binom2(m))));
	}

	/// qmap_eval.  Expands z = Σ x̄_i E_i + (0, u - κ(x)) in ascending
	/// generator order (descending when asked).
	Nil2Element eval(Nil2Element const &z, bool descending = false) const
	{
		g_.check(z);
		size_t r = g_.rank();
		FGAbelian const &bh = h_.B();
		Nil2Element acc = h_.zero(), kappa = g_.zero();
		IntVec done(r, 0);
		for (size_t step = 0; step < r; ++step)
		{
			size_t i = descending ? r - 1 - step : step;
			Int m = z.a[i];
			if (m == 0)
				continue;
			AbElement cross = bh.zero();
			for (size_t k = 0; k < r; ++k)
				if (done[k] != 0)
					cross = bh.add(cross, bh.scale(delta_[k][i], mul(done[k], m)));
			acc = h_.add(h_.add(acc, generator_multiple(i, m)), h_.central(cross));
			kappa = g_.add(kappa, g_.multiple(g_.generator(i), m));
			done[i] = m;
		}
		AbElement rest = g_.B().sub(z.b, kappa.b);
		return h_.add(acc, h_.central(fcomm_.apply(rest)));
	}

	/// qmap_cross via the definition -(f(z) + f(w)) + f(z + w).
	Nil2Element cross(Nil2Element const &z, Nil2Element const &w) const
	{
		return h_.add(h_.neg(h_.add(eval(z), eval(w))), eval(g_.add(z, w)));
	}

	/// The same cross-effect through the bilinear formula Σ x̄_i ȳ_j delta[i][j].
	Nil2Element cross_formula(Nil2Element const &z, Nil2Element const &w) const
	{
		g_.check(z);
		g_.check(w);
		return h_.central(bilinear_form(h_.B(), delta_, z.a, w.a));
	}

	bool is_hom() const
	{
		for (auto const &row : delta_)
			for (auto const &d : row)
				if (!h_.B().is_zero(d))
					return false;
		return true;
	}

	friend bool operator==(QMap const &, QMap const &) = default;

  private:
	Nil2Group g_, h_;
	AbHom fab_, fcomm_;
	std::vector<AbElement> gamma_;
	BMatrix delta_;
};

/// Definition check on a finite source.  The evaluated function must
/// have cross-effects in [H,H] that are bilinear in each argument, and it
/// must reproduce the stored generator data.
inline bool qmap_satisfies_definition(QMap const &f)
{
	Nil2Group const &g = f.source(), &h = f.target();
	auto elems = nil2_enumerate(g);
	std::vector<Nil2Element> val;
	for (auto const &z : elems)
		val.push_back(f.eval(z));
	size_t n = elems.size();
	std::vector<std::vector<size_t>> sum(n, std::vector<size_t>(n));
	for (size_t x = 0; x < n; ++x)
		for (size_t y = 0; y < n; ++y)
			sum[x][y] = g.index_of(g.add(elems[x], elems[y]));
	std::vector<std::vector<AbElement>> cr(n, std::vector<AbElement>(n));
	for (size_t x = 0; x < n; ++x)
		for (size_t y = 0; y < n; ++y)
		{
			Nil2Element c = h.add(h.neg(h.add(val[x], val[y])), val[sum[x][y]]);
			if (!h.A().is_zero(c.a))
				return false;
			cr[x][y] = c.b;
		}
	FGAbelian const &bh = h.B();
	for (size_t x = 0; x < n; ++x)
		for (size_t x2 = 0; x2 < n; ++x2)
			for (size_t y = 0; y < n; ++y)
			{
				if (!(cr[sum[x][x2]][y] == bh.add(cr[x][y], cr[x2][y])))
					return false;
				if (!(cr[y][sum[x][x2]] == bh.add(cr[y][x], cr[y][x2])))
					return false;
			}
	for (size_t i = 0; i < g.rank(); ++i)
	{
		size_t ei = g.index_of(g.generator(i));
		if (!(val[ei] == f.generator_image(i)))
			return false;
		for (size_t j = 0; j < g.rank(); ++j)
			if (!(cr[ei][g.index_of(g.generator(j))] == f.delta(i, j)))
				return false;
	}
	for (size_t k = 0; k < g.B().rank(); ++k)
	{
		AbElement c = g.B().generator(k);
		if (!(val[g.index_of(g.central(c))] == h.central(f.fcomm().apply(c))))
			return false;
	}
	return true;
}

/// Relation check, optionally backed by the exhaustive definition-level check.
inline QMapValidation qmap_validate(QMap const &f, bool exhaustive)
{
	QMapValidation v;
	v.relation_failure = f.relation_failure();
	if (exhaustive && f.source().is_finite())
	{
		v.exhaustive = qmap_satisfies_definition(f);
		v.discrepancy = *v.exhaustive == v.relation_failure.has_value();
	}
	return v;
}

/// Pointwise sum (f + g)(z) = f(z) + g(z).
inline QMap qmap_add(QMap const &f, QMap const &g)
{
	if (!(f.source() == g.source()) || !(f.target() == g.target()))
		fail(ErrorKind::InvalidArgument, "qmap_add: endpoints differ");
	Nil2Group const &src = f.source(), &h = f.target();
	size_t r = src.rank();
	std::vector<AbElement> gamma;
	BMatrix delta(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		gamma.push_back(h.add(f.generator_image(i), g.generator_image(i)).b);
	// (a|b)_{f+g} = (a|b)_f + (a|b)_g + [f(b), g(a)]
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
		{
			AbElement c = h.commutator(f.generator_image(j), g.generator_image(i)).b;
			delta[i][j] = h.B().add(h.B().add(f.delta(i, j), g.delta(i, j)), c);
		}
	return QMap::make(src, h, f.fab().plus(g.fab()), f.fcomm().plus(g.fcomm()), gamma, delta);
}

/// Pointwise negation (-f)(z) = -f(z).
inline QMap qmap_neg(QMap const &f)
{
	Nil2Group const &src = f.source(), &h = f.target();
	size_t r = src.rank();
	std::vector<AbElement> gamma;
	BMatrix delta(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		gamma.push_back(h.neg(f.generator_image(i)).b);
	// (a|b)_{-f} = [f(b), f(a)] - (a|b)_f
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
		{
			AbElement c = h.commutator(f.generator_image(j), f.generator_image(i)).b;
			delta[i][j] = h.B().sub(c, f.delta(i, j));
		}
	return QMap::make(src, h, f.fab().scaled(-1), f.fcomm().scaled(-1), gamma, delta);
}

inline QMap qmap_sub(QMap const &f, QMap const &g) { return qmap_add(f, qmap_neg(g)); }

/// f ∘ g with (a|b)_{fg} = f((a|b)_g) + (g(a)|g(b))_f.
inline QMap qmap_compose(QMap const &f, QMap const &g)
{
	if (!(g.target() == f.source()))
		fail(ErrorKind::InvalidArgument, "qmap_compose: endpoints do not match");
	Nil2Group const &src = g.source(), &dst = f.target();
	size_t r = src.rank();
	std::vector<AbElement> gamma;
	BMatrix delta(r, std::vector<AbElement>(r));
	for (size_t i = 0; i < r; ++i)
		gamma.push_back(f.eval(g.generator_image(i)).b);
	for (size_t i = 0; i < r; ++i)
		for (size_t j = 0; j < r; ++j)
		{
			AbElement inner = f.fcomm().apply(g.delta(i, j));
			AbElement outer = bilinear_form(dst.B(), f.delta(), g.fab().image_of_generator(i),
			                                g.fab().image_of_generator(j));
			delta[i][j] = dst.B().add(inner, outer);
		}
	return QMap::make(src, dst, f.fab().compose(g.fab()), f.fcomm().compose(g.fcomm()), gamma,
	                  delta);
}

/// The n-th power map z ↦ n·z, with cross-effect -(n(n-1)/2)[a, b].
inline QMap qmap_power(Nil2Group const &g, Int n)
{
	return QMap::from_function(g, g, [&](Nil2Element const &z) { return g.multiple(z, n); });
}

/// The addition map G × G -> G, (a, b) ↦ a + b, with source nil2_product(G, G).
inline QMap qmap_addition(Nil2Group const &g)
{
	Nil2Group gg = nil2_product(g, g);
	size_t r = g.rank(), s = g.B().rank();
	return QMap::from_function(gg, g, [&](Nil2Element const &z) {
		Nil2Element a{detail::slice(z.a, 0, r), detail::slice(z.b, 0, s)};
		Nil2Element b{detail::slice(z.a, r, r), detail::slice(z.b, s, s)};
		return g.add(a, b);
	});
}

/// Projection G1 × G2 -> G_k (k = 0, 1).
inline QMap qmap_projection(Nil2Group const &g1, Nil2Group const &g2, int k)
{
	Nil2Group p = nil2_product(g1, g2);
	Nil2Group const &t = k == 0 ? g1 : g2;
	size_t ao = k == 0 ? 0 : g1.rank(), bo = k == 0 ? 0 : g1.B().rank();
	return QMap::from_function(p, t, [&](Nil2Element const &z) {
		return Nil2Element{detail::slice(z.a, ao, t.rank()), detail::slice(z.b, bo, t.B().rank())};
	});
}

/// Inclusion G_k -> G1 × G2 (k = 0, 1).
inline QMap qmap_inclusion(Nil2Group const &g1, Nil2Group const &g2, int k)
{
	Nil2Group p = nil2_product(g1, g2);
	Nil2Group const &s = k == 0 ? g1 : g2;
	size_t ao = k == 0 ? 0 : g1.rank(), bo = k == 0 ? 0 : g1.B().rank();
	return QMap::from_function(s, p, [&](Nil2Element const &z) {
		return Nil2Element{detail::embed(z.a, ao, p.rank()), detail::embed(z.b, bo, p.B().rank())};
	});
}

/// Canonical injection G_k -> G1 ∨ G2 (k = 0, 1).
inline QMap qmap_coproduct_injection(Coproduct const &c, int k)
{
	Nil2Group const &s = k == 0 ? c.left : c.right;
	return QMap::from_function(s, c.group, [&](Nil2Element const &z) {
		return k == 0 ? c.inject_left(z) : c.inject_right(z);
	});
}

/// qmap_from_Z: f_{a,b}(n) = n·a + (n(n-1)/2)·b on the source Z = nil2_free(1).
inline QMap qmap_from_Z(Nil2Group const &h, Nil2Element const &a, Nil2Element const &b)
{
	h.check(a);
	h.check(b);
	if (!h.A().is_zero(b.a))
		fail(ErrorKind::NotAQMap, "f_{a,b} needs b in [H,H]; got " + to_string(b));
	Nil2Group z = nil2_free(1);
	return QMap::make(z, h, AbHom::from_images(z.A(), h.A(), {a.a}), AbHom::zero(z.B(), h.B()),
	                  {a.b}, {{b.b}});
}

/// The q-map on a free source determined by f(x_i) = a_i, f([x_i,x_j]) = a_ij
/// and (x_i|x_j)_f = b_ij for i < j; diagonal cross-effects (x_i|x_i)_f are
/// taken from `diag` (zero when empty).
inline QMap qmap_from_free(Nil2Group const &h, std::vector<Nil2Element> const &a,
                           BMatrix const &aij, BMatrix const &bij,
                           std::vector<AbElement> const &diag = {})
{
	size_t n = a.size();
	Nil2Group g = nil2_free(n);
	FGAbelian const &bh = h.B();
	std::vector<AbElement> ab_imgs, gamma, comm_imgs;
	for (auto const &x : a)
	{
		h.check(x);
		ab_imgs.push_back(x.a);
		gamma.push_back(x.b);
	}
	BMatrix delta(n, std::vector<AbElement>(n, bh.zero()));
	for (size_t i = 0; i < n; ++i)
	{
		if (!diag.empty())
			delta[i][i] = bh.normalize(diag[i]);
		for (size_t j = i + 1; j < n; ++j)
		{
			comm_imgs.push_back(bh.normalize(aij[i][j]));
			delta[i][j] = bh.normalize(bij[i][j]);
			// fcomm([x_i,x_j]) = [f x_i, f x_j] + δ_ij - δ_ji
			AbElement c = h.commutator(a[i], a[j]).b;
			delta[j][i] = bh.sub(bh.add(c, delta[i][j]), aij[i][j]);
		}
	}
	return QMap::make(g, h, AbHom::from_images(g.A(), h.A(), ab_imgs),
	                  AbHom::from_images(g.B(), h.B(), comm_imgs), gamma, delta);
}

/// qmap_beta: Ker(fab) -> coker(fcomm), â ↦ f(a) mod f([G,G]).
struct QMapBeta
{
	QMap f;
	GeneratedSubgroup kernel; // Ker(fab) inside G_ab
	GeneratedSubgroup image;  // f([G,G]) inside [H,H]
	AbHom map;                // kernel.group() -> image.quotient()

	/// Direct evaluation of the defining formula at x ∈ Ker(fab).
	AbElement apply(AbElement const &x) const
	{
		if (!kernel.contains(x))
			fail(ErrorKind::InvalidArgument, to_string(x) + " is not in Ker(fab)");
		Nil2Element v = f.eval({x, f.source().B().zero()});
		return image.projection().apply(v.b);
	}
};

inline QMapBeta qmap_beta(QMap const &f)
{
	GeneratedSubgroup ker = ab_kernel(f.fab());
	GeneratedSubgroup img = ab_image(f.fcomm());
	std::vector<AbElement> imgs;
	for (size_t s = 0; s < ker.group().rank(); ++s)
	{
		AbElement x = ker.inclusion().image_of_generator(s);
		x = f.source().A().normalize(x);
		Nil2Element v = f.eval({x, f.source().B().zero()});
		imgs.push_back(img.projection().apply(v.b));
	}
	AbHom m = AbHom::from_images(ker.group(), img.quotient(), imgs);
	return {f, std::move(ker), std::move(img), std::move(m)};
}

/// The homomorphism P₂G -> H through which a q-map q factors:
/// f_q(ξ, g) = (-|-)_q(ξ) + q(g).
struct P2Factorization
{
	P2Extension ext;
	QMap q;
	AbHom cross; // G_ab ⊗ G_ab -> [H,H], e_i ⊗ e_j ↦ delta[i][j]

	Nil2Element apply(P2Extension::Element const &u) const
	{
		Nil2Group const &h = q.target();
		return h.add(h.central(cross.apply(u.xi)), q.eval(u.g));
	}
};

inline P2Factorization qmap_p2_factorize(QMap const &q)
{
	P2Extension ext(q.source());
	TensorLayout const &lay = ext.layout();
	std::vector<AbElement> imgs(lay.group.rank());
	for (size_t i = 0; i < lay.left_rank; ++i)
		for (size_t j = 0; j < lay.right_rank; ++j)
		{
			long p = lay.position[lay.index(i, j)];
			if (p >= 0)
				imgs[static_cast<size_t>(p)] = q.delta(i, j);
		}
	AbHom cross = AbHom::from_images(lay.group, q.target().B(), imgs);
	return {std::move(ext), q, std::move(cross)};
}

} // namespace nilq
