#ifndef MUSPEC_TESTS_HELPERS_HPP
#define MUSPEC_TESTS_HELPERS_HPP

#include "muspec/mpnum.hpp"

#include <random>
#include <string>
#include <vector>

namespace th {

inline muspec::BigReal big (const std::string& s, muspec::Precision bits = 512) {
	return muspec::BigReal::from_string(s, bits);
}

// |a - b| <= 10^-digits * max(|b|, floor)
inline bool close (const muspec::BigReal& a, const muspec::BigReal& b, int digits) {
	return muspec::rel_close(a, b, muspec::ten_pow(-digits, std::max(a.precision(), b.precision())));
}

inline bool abs_close (const muspec::BigReal& a, const muspec::BigReal& b, int digits) {
	return muspec::abs(a - b) <= muspec::ten_pow(-digits, std::max(a.precision(), b.precision()));
}

inline muspec::RealMatrix random_symmetric (std::size_t m, std::mt19937_64& rng, muspec::Precision bits) {
	std::uniform_real_distribution<double> u(-1.0, 1.0);
	muspec::RealMatrix a(m, bits);
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = i; j < m; ++j) {
			const muspec::BigReal v(u(rng), bits);
			a(i, j) = v;
			a(j, i) = v;
		}
	a.mark_symmetric();
	return a;
}

} // namespace th

#endif
