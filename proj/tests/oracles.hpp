// Exact-arithmetic references used by the tests. Nothing here touches the
// library's numerics; inputs are integers or rationals.
#ifndef MUSPEC_TESTS_ORACLES_HPP
#define MUSPEC_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using QMatrix = std::vector<std::vector<mpq_class>>;
using Poly = std::vector<mpq_class>;   // coefficients, lowest degree first

// Laplace expansion along the first row.
inline mpq_class cofactor_det (const QMatrix& a) {
	const std::size_t n = a.size();
	if (n == 0) return 1;
	if (n == 1) return a[0][0];
	mpq_class sum = 0;
	for (std::size_t c = 0; c < n; ++c) {
		if (a[0][c] == 0) continue;
		QMatrix minor;
		for (std::size_t r = 1; r < n; ++r) {
			std::vector<mpq_class> row;
			for (std::size_t k = 0; k < n; ++k)
				if (k != c) row.push_back(a[r][k]);
			minor.push_back(std::move(row));
		}
		const mpq_class term = a[0][c] * cofactor_det(minor);
		if (c % 2) sum -= term;
		else sum += term;
	}
	return sum;
}

inline mpz_class cofactor_det (const std::vector<std::vector<mpz_class>>& a) {
	QMatrix q;
	for (const auto& row : a) {
		std::vector<mpq_class> r;
		for (const auto& v : row) r.emplace_back(v);
		q.push_back(std::move(r));
	}
	const mpq_class d = cofactor_det(q);
	return d.get_num();
}

inline Poly poly_mul (const Poly& a, const Poly& b) {
	Poly r(a.size() + b.size() - 1, 0);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j) r[i+j] += a[i] * b[j];
	return r;
}

inline void poly_add (Poly& a, const Poly& b) {
	if (a.size() < b.size()) a.resize(b.size(), 0);
	for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

inline void trim (Poly& p) {
	while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// det(x I - A) by Laplace expansion over polynomial entries. Fine for n <= 6.
inline Poly charpoly (const QMatrix& a) {
	const std::size_t n = a.size();
	std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? Poly{-a[i][j], 1} : Poly{-a[i][j]};
	auto rec = [](auto&& self, const std::vector<std::vector<Poly>>& x) -> Poly {
		const std::size_t k = x.size();
		if (k == 1) return x[0][0];
		Poly sum{0};
		for (std::size_t c = 0; c < k; ++c) {
			std::vector<std::vector<Poly>> minor;
			for (std::size_t r = 1; r < k; ++r) {
				std::vector<Poly> row;
				for (std::size_t q = 0; q < k; ++q)
					if (q != c) row.push_back(x[r][q]);
				minor.push_back(std::move(row));
			}
			Poly term = poly_mul(x[0][c], self(self, minor));
			if (c % 2)
				for (auto& t : term) t = -t;
			poly_add(sum, term);
		}
		return sum;
	};
	Poly p = rec(rec, m);
	trim(p);
	return p;
}

inline mpq_class eval (const Poly& p, const mpq_class& x) {
	mpq_class r = 0;
	for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
	return r;
}

inline Poly derivative (const Poly& p) {
	Poly d;
	for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
	if (d.empty()) d.push_back(0);
	return d;
}

// remainder of a / b
inline Poly poly_rem (Poly a, const Poly& b) {
	trim(a);
	while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
		const mpq_class f = a.back() / b.back();
		const std::size_t shift = a.size() - b.size();
		for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
		a.pop_back();
		trim(a);
		if (a.size() < b.size()) break;
	}
	return a;
}

inline std::vector<Poly> sturm (const Poly& p) {
	std::vector<Poly> s{p, derivative(p)};
	while (!(s.back().size() == 1 && s.back()[0] == 0) && s.back().size() > 1) {
		Poly r = poly_rem(s[s.size()-2], s.back());
		for (auto& c : r) c = -c;
		s.push_back(r);
	}
	return s;
}

inline int sign_changes (const std::vector<Poly>& s, const mpq_class& x) {
	int changes = 0, prev = 0;
	for (const auto& p : s) {
		const int sg = sgn(eval(p, x));
		if (sg == 0) continue;
		if (prev != 0 && sg != prev) ++changes;
		prev = sg;
	}
	return changes;
}

// Real roots of a squarefree polynomial, ascending, each bisected until the
// bracket is narrower than 10^-digits. Returned as decimal strings.
inline std::vector<std::string> real_roots (const Poly& p, int digits) {
	const auto s = sturm(p);
	mpq_class bound = 1;
	for (std::size_t i = 0; i + 1 < p.size(); ++i) bound += abs(p[i] / p.back());
	mpz_class ten_d;
	mpz_ui_pow_ui(ten_d.get_mpz_t(), 10, static_cast<unsigned long>(digits + 5));
	const mpq_class width(1, ten_d);

	std::vector<std::pair<mpq_class, mpq_class>> brackets;
	std::vector<std::pair<mpq_class, mpq_class>> todo{{-bound, bound}};
	while (!todo.empty()) {
		auto [lo, hi] = todo.back();
		todo.pop_back();
		const int count = sign_changes(s, lo) - sign_changes(s, hi);
		if (count == 0) continue;
		if (count == 1) {
			brackets.emplace_back(lo, hi);
			continue;
		}
		const mpq_class mid = (lo + hi) / 2;
		todo.emplace_back(lo, mid);
		todo.emplace_back(mid, hi);
	}
	std::vector<std::string> roots;
	std::vector<mpq_class> vals;
	for (auto [lo, hi] : brackets) {
		while (hi - lo > width) {
			const mpq_class mid = (lo + hi) / 2;
			if (sgn(eval(p, lo)) * sgn(eval(p, mid)) <= 0) hi = mid;
			else lo = mid;
		}
		vals.push_back((lo + hi) / 2);
	}
	std::sort(vals.begin(), vals.end());
	for (const auto& v : vals) {
		mpf_class f(v, 4 * static_cast<unsigned>(digits) + 64);
		mp_exp_t e;
		std::string mant = f.get_str(e, 10, static_cast<std::size_t>(digits));
		std::string sign;
		if (!mant.empty() && mant[0] == '-') {
			sign = "-";
			mant.erase(0, 1);
		}
		roots.push_back(sign + "0." + mant + "e" + std::to_string(e));
	}
	return roots;
}

} // namespace oracle

#endif
