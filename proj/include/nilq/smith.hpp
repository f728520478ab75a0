#pragma once

#include <cstdlib>
#include <utility>

#include "nilq/integer.hpp"

namespace nilq {

/// Smith normal form U * M * V = D of an integer matrix, with U and V
/// unimodular.  `diag` holds the nonzero diagonal entries d_1 | d_2 | ... ;
/// entries beyond rank are zero.  `v_inv` is V^{-1}, kept so that callers can
/// translate between the original and the diagonal coordinates without a
/// second inversion.
struct SmithForm
{
	IntMat u, v, v_inv;
	IntVec diag; // size = rank
	size_t rows = 0, cols = 0;

	size_t rank() const { return diag.size(); }
};

namespace detail {

inline IntMat identity_matrix(size_t n)
{
	IntMat m(n, IntVec(n, 0));
	for (size_t i = 0; i < n; ++i)
		m[i][i] = 1;
	return m;
}

class SmithWorker
{
  public:
	explicit SmithWorker(IntMat a, size_t cols)
	    : a_(std::move(a)), m_(a_.size()), n_(cols)
	{
		u_ = identity_matrix(m_);
		v_ = identity_matrix(n_);
		vi_ = identity_matrix(n_);
	}

	SmithForm run()
	{
		size_t t = 0;
		while (t < m_ && t < n_)
		{
			if (!pivot_min(t))
				break;
			for (;;)
			{
				bool clean = true;
				for (size_t i = t + 1; i < m_; ++i)
				{
					if (a_[i][t] == 0)
						continue;
					Int q = floor_div(a_[i][t], a_[t][t]);
					row_addmul(i, t, neg(q));
					if (a_[i][t] != 0)
						clean = false;
				}
				for (size_t j = t + 1; j < n_; ++j)
				{
					if (a_[t][j] == 0)
						continue;
					Int q = floor_div(a_[t][j], a_[t][t]);
					col_addmul(j, t, neg(q));
					if (a_[t][j] != 0)
						clean = false;
				}
				if (!clean)
				{
					pivot_min(t);
					continue;
				}
				// divisibility of the remaining block
				bool divides = true;
				for (size_t i = t + 1; i < m_ && divides; ++i)
					for (size_t j = t + 1; j < n_; ++j)
						if (a_[i][j] % a_[t][t] != 0)
						{
							row_addmul(t, i, 1);
							divides = false;
							break;
						}
				if (divides)
					break;
			}
			if (a_[t][t] < 0)
			{
				for (size_t j = 0; j < m_; ++j)
					u_[t][j] = neg(u_[t][j]);
				for (size_t j = 0; j < n_; ++j)
					a_[t][j] = neg(a_[t][j]);
			}
			++t;
		}
		SmithForm f;
		f.rows = m_;
		f.cols = n_;
		for (size_t i = 0; i < t; ++i)
			f.diag.push_back(a_[i][i]);
		f.u = std::move(u_);
		f.v = std::move(v_);
		f.v_inv = std::move(vi_);
		return f;
	}

  private:
	// Moves the nonzero entry of least absolute value in the trailing block
	// to (t, t).  Returns false when the block is zero.
	bool pivot_min(size_t t)
	{
		size_t bi = m_, bj = n_;
		Int best = 0;
		for (size_t i = t; i < m_; ++i)
			for (size_t j = t; j < n_; ++j)
				if (a_[i][j] != 0 && (best == 0 || std::llabs(a_[i][j]) < best))
				{
					best = std::llabs(a_[i][j]);
					bi = i;
					bj = j;
				}
		if (best == 0)
			return false;
		row_swap(t, bi);
		col_swap(t, bj);
		return true;
	}

	void row_swap(size_t i, size_t j)
	{
		if (i == j)
			return;
		std::swap(a_[i], a_[j]);
		std::swap(u_[i], u_[j]);
	}

	void col_swap(size_t i, size_t j)
	{
		if (i == j)
			return;
		for (auto &r : a_)
			std::swap(r[i], r[j]);
		for (auto &r : v_)
			std::swap(r[i], r[j]);
		std::swap(vi_[i], vi_[j]);
	}

	// row_i += c * row_j
	void row_addmul(size_t i, size_t j, Int c)
	{
		for (size_t k = 0; k < n_; ++k)
			a_[i][k] = add(a_[i][k], mul(c, a_[j][k]));
		for (size_t k = 0; k < m_; ++k)
			u_[i][k] = add(u_[i][k], mul(c, u_[j][k]));
	}

	// col_i += c * col_j ; V <- V E, V^{-1} <- E^{-1} V^{-1}
	void col_addmul(size_t i, size_t j, Int c)
	{
		for (size_t k = 0; k < m_; ++k)
			a_[k][i] = add(a_[k][i], mul(c, a_[k][j]));
		for (size_t k = 0; k < n_; ++k)
			v_[k][i] = add(v_[k][i], mul(c, v_[k][j]));
		for (size_t k = 0; k < n_; ++k)
			vi_[j][k] = sub(vi_[j][k], mul(c, vi_[i][k]));
	}

	IntMat a_, u_, v_, vi_;
	size_t m_, n_;
};

} // namespace detail

/// `m` is rows x cols; `cols` is passed explicitly so that an empty
/// relation list on Z^cols is representable.
inline SmithForm smith_normal_form(IntMat const &m, size_t cols)
{
	for (auto const &row : m)
		if (row.size() != cols)
			fail(ErrorKind::InvalidArgument, "ragged matrix");
	return detail::SmithWorker(m, cols).run();
}

} // namespace nilq
