#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "nilq/error.hpp"

namespace nilq {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// Checked arithmetic: wrapping would silently break group laws.

inline Int add(Int a, Int b)
{
	Int r;
	if (__builtin_add_overflow(a, b, &r))
		fail(ErrorKind::Overflow, "integer addition overflow");
	return r;
}

inline Int sub(Int a, Int b)
{
	Int r;
	if (__builtin_sub_overflow(a, b, &r))
		fail(ErrorKind::Overflow, "integer subtraction overflow");
	return r;
}

inline Int mul(Int a, Int b)
{
	Int r;
	if (__builtin_mul_overflow(a, b, &r))
		fail(ErrorKind::Overflow, "integer multiplication overflow");
	return r;
}

inline Int neg(Int a) { return sub(0, a); }

/// Floor division, exact for negative numerators.
inline Int floor_div(Int a, Int d)
{
	Int q = a / d;
	if ((a % d != 0) && ((a < 0) != (d < 0)))
		--q;
	return q;
}

/// Canonical residue in [0, d) for d > 0; identity for d == 0.
inline Int reduce(Int a, Int d)
{
	if (d == 0)
		return a;
	Int r = a % d;
	return r < 0 ? r + d : r;
}

/// gcd with the convention gcd(0, d) = d, gcd(0, 0) = 0.
inline Int gcd0(Int a, Int b) { return std::gcd(a, b); }

inline Int lcm0(Int a, Int b)
{
	if (a == 0 || b == 0)
		return 0;
	return mul(a / std::gcd(a, b), b);
}

/// n(n-1)/2 for any integer n.
inline Int binom2(Int n)
{
	// one of n, n-1 is even
	if (n % 2 == 0)
		return mul(n / 2, sub(n, 1));
	return mul(n, sub(n, 1) / 2);
}

/// Inverse of a modulo m (m > 1, gcd(a, m) = 1).
inline Int inverse_mod(Int a, Int m)
{
	Int g = m, x = 0, x1 = 1, r = reduce(a, m);
	Int mm = m;
	while (r != 0)
	{
		Int q = g / r;
		Int t = g - q * r;
		g = r;
		r = t;
		t = x - q * x1;
		x = x1;
		x1 = t;
	}
	if (g != 1)
		fail(ErrorKind::InvalidArgument,
		     std::to_string(a) + " is not invertible mod " + std::to_string(m));
	return reduce(x, mm);
}

inline std::string to_string(IntVec const &v)
{
	std::string s = "[";
	for (size_t i = 0; i < v.size(); ++i)
	{
		if (i)
			s += ",";
		s += std::to_string(v[i]);
	}
	return s + "]";
}

inline std::string to_string(IntMat const &m)
{
	std::string s = "[";
	for (size_t i = 0; i < m.size(); ++i)
	{
		if (i)
			s += ",";
		s += to_string(m[i]);
	}
	return s + "]";
}

} // namespace nilq
