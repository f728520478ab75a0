#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilq/nil2.hpp"

namespace nilq {

/// A=[p,p], B=[p], bil[1][2] = 1, given carries.
inline Nil2Group heisenberg_type(Int p, Int c1, Int c2)
{
	FGAbelian a = ab_make({p, p}), b = ab_make({p});
	BMatrix bil(2, std::vector<AbElement>(2, b.zero()));
	bil[0][1] = b.element({1});
	return nil2_make(a, b, bil, {b.element({c1}), b.element({c2})});
}

inline Nil2Group catalog_d4() { return heisenberg_type(2, 1, 0); }
inline Nil2Group catalog_q8() { return heisenberg_type(2, 1, 1); }
inline Nil2Group catalog_heis(Int p) { return heisenberg_type(p, 0, 0); }

/// Z/p² ⋊ Z/p acting via multiplication by p + 1.
inline Nil2Group catalog_metacyclic(Int p) { return heisenberg_type(p, 1, 0); }

inline Nil2Group catalog_abelian(IntVec const &orders)
{
	return Nil2Group::abelian(ab_make(orders));
}

/// Named groups known to the CLI and the test suites.
inline std::vector<std::pair<std::string, Nil2Group>> catalog()
{
	return {
	    {"trivial", catalog_abelian({})},
	    {"Z2", catalog_abelian({2})},
	    {"Z3", catalog_abelian({3})},
	    {"Z4", catalog_abelian({4})},
	    {"Z8", catalog_abelian({8})},
	    {"Z2xZ2", catalog_abelian({2, 2})},
	    {"Z2xZ4", catalog_abelian({2, 4})},
	    {"Z2^3", catalog_abelian({2, 2, 2})},
	    {"Z9", catalog_abelian({9})},
	    {"Z3xZ3", catalog_abelian({3, 3})},
	    {"Z", nil2_free(1)},
	    {"D4", catalog_d4()},
	    {"Q8", catalog_q8()},
	    {"Heis3", catalog_heis(3)},
	    {"Heis5", catalog_heis(5)},
	    {"Z27", catalog_abelian({27})},
	    {"Z9xZ3", catalog_abelian({9, 3})},
	    {"Z3^3", catalog_abelian({3, 3, 3})},
	    {"Z3vZ3", nil2_coproduct(catalog_abelian({3}), catalog_abelian({3}))},
	    {"Z9:Z3", catalog_metacyclic(3)},
	    {"Z25:Z5", catalog_metacyclic(5)},
	    {"D4xZ2", nil2_product(catalog_d4(), catalog_abelian({2}))},
	    {"Q8xZ2", nil2_product(catalog_q8(), catalog_abelian({2}))},
	    {"Z2vZ2", nil2_coproduct(catalog_abelian({2}), catalog_abelian({2}))},
	    {"Z2vZ4", nil2_coproduct(catalog_abelian({2}), catalog_abelian({4}))},
	    {"D4xZ4", nil2_product(catalog_d4(), catalog_abelian({4}))},
	    {"Q8xZ4", nil2_product(catalog_q8(), catalog_abelian({4}))},
	    {"D4xZ2xZ2", nil2_product(catalog_d4(), catalog_abelian({2, 2}))},
	    {"Q8xQ8", nil2_product(catalog_q8(), catalog_q8())},
	};
}

inline std::optional<Nil2Group> catalog_lookup(std::string const &name)
{
	for (auto &[n, g] : catalog())
		if (n == name)
			return g;
	return std::nullopt;
}

/// Finite catalog entries of order at most `max_order`, in catalog order.
inline std::vector<std::pair<std::string, Nil2Group>> catalog_finite(Int max_order)
{
	std::vector<std::pair<std::string, Nil2Group>> out;
	for (auto &e : catalog())
		if (e.second.is_finite() && *e.second.order() <= max_order)
			out.push_back(std::move(e));
	return out;
}

} // namespace nilq
