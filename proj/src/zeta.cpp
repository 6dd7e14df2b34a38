#include "muspec/coeffs.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace muspec {

namespace {

// Exact B_0..B_n, grown on demand and shared between threads.
class BernoulliTable {
  public:
	mpq_class get (unsigned n) {
		std::lock_guard<std::mutex> lock(mutex_);
		while (values_.size() <= n) extend();
		return values_[n];
	}

  private:
	void extend () {
		const unsigned m = static_cast<unsigned>(values_.size());
		if (m == 0) {
			values_.emplace_back(1);
			return;
		}
		if (m > 1 && m % 2 == 1) {
			values_.emplace_back(0);
			return;
		}
		// B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
		mpq_class sum(0);
		mpz_class binom(1);
		for (unsigned j = 0; j < m; ++j) {
			if (j > 0) {
				binom *= (m + 2 - j);
				binom /= j;
			}
			if (values_[j] != 0) sum += mpq_class(binom) * values_[j];
		}
		mpq_class b = -sum / mpq_class(m + 1);
		b.canonicalize();
		values_.push_back(b);
	}

	std::mutex mutex_;
	std::vector<mpq_class> values_;
};

BernoulliTable& bernoulli_table () {
	static BernoulliTable table;
	return table;
}

BigReal from_mpq (const mpq_class& q, Precision prec) {
	BigReal r(prec);
	mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
	return r;
}

BigComplex round_to (const BigComplex& z, Precision prec) {
	return BigComplex(BigReal(z.re(), prec), BigReal(z.im(), prec));
}

long magnitude_bits (const BigComplex& s) {
	const double a = std::hypot(s.re().to_double(), s.im().to_double());
	return static_cast<long>(std::ceil(std::log2(2.0 + a)));
}

BigComplex zeta_euler_maclaurin (const BigComplex& s_in, Precision prec) {
	const double sabs = std::hypot(s_in.re().to_double(), s_in.im().to_double());
	const Precision wp = prec + 32 + 4*magnitude_bits(s_in);
	const BigComplex s = BigComplex(BigReal(s_in.re(), wp), BigReal(s_in.im(), wp));

	// K tail terms; N chosen so that (|s|+2K)/(2 pi N) <= 2^(-wp/(2K)).
	const unsigned K = std::max<unsigned>(4, static_cast<unsigned>(wp / 3));
	const double ratio = std::exp2(static_cast<double>(wp) / (2.0 * K));
	const unsigned long N = static_cast<unsigned long>(std::ceil((sabs + 2.0*K) / (2.0*M_PI) * ratio)) + 1;

	// n^-s for n <= N; composites from their smallest prime factor
	std::vector<unsigned long> spf(N + 1, 0);
	for (unsigned long i = 2; i <= N; ++i)
		if (spf[i] == 0)
			for (unsigned long j = i; j <= N; j += i)
				if (spf[j] == 0) spf[j] = i;
	std::vector<BigComplex> powers;
	powers.reserve(N + 1);
	powers.emplace_back(wp);
	powers.emplace_back(BigReal(1L, wp), BigReal(wp));
	for (unsigned long n = 2; n <= N; ++n) {
		if (spf[n] == n) powers.push_back(pow_neg(n, s));
		else powers.push_back(powers[spf[n]] * powers[n / spf[n]]);
	}
	BigComplex sum(wp);
	for (unsigned long n = 1; n < N; ++n) sum += powers[n];

	const BigComplex& n_pow = powers[N];      // N^-s
	const BigReal big_n(static_cast<long>(N), wp);
	const BigComplex one(BigReal(1L, wp), BigReal(wp));
	// N^(1-s)/(s-1) + N^-s/2
	sum += scale(n_pow, big_n) / (s - one);
	sum += scale(n_pow, BigReal(0.5, wp));

	// sum_k B_2k/(2k)! (s)_{2k-1} N^(-s-2k+1)
	BigComplex term = scale(s * n_pow, BigReal(1L, wp) / big_n);
	const BigReal inv_n2 = BigReal(1L, wp) / (big_n * big_n);
	const BigReal eps = BigReal::two_pow(-static_cast<long>(wp), wp);
	for (unsigned k = 1; k <= K; ++k) {
		const BigComplex contrib = scale(term, bernoulli_over_factorial(k, wp));
		sum += contrib;
		if (contrib.abs() <= eps * std::max(BigReal(1L, wp), sum.abs())) break;
		// (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
		BigComplex a = s, b = s;
		a.re() += BigReal(static_cast<long>(2*k - 1), wp);
		b.re() += BigReal(static_cast<long>(2*k), wp);
		term = scale(term * a * b, inv_n2);
	}
	return round_to(sum, prec);
}

// log Gamma(w) by Stirling's series; requires |w| large against the precision.
BigComplex log_gamma_stirling (const BigComplex& w, Precision wp) {
	const BigReal half(0.5, wp);
	BigComplex wm = w;
	wm.re() -= half;
	BigComplex result = wm * log(w) - w;
	result.re() += half * log(BigReal::pi(wp) * BigReal(2L, wp));

	const BigComplex inv_w = BigComplex(BigReal(1L, wp), BigReal(wp)) / w;
	const BigComplex inv_w2 = inv_w * inv_w;
	BigComplex power = inv_w;
	const BigReal eps = BigReal::two_pow(-static_cast<long>(wp), wp);
	for (unsigned k = 1; k < 4*wp; ++k) {
		// B_2k / (2k (2k-1)) w^(1-2k)
		BigReal coef = from_mpq(bernoulli_table().get(2*k), wp) / BigReal(static_cast<long>(2*k*(2*k - 1)), wp);
		BigComplex t = scale(power, coef);
		result += t;
		if (t.abs() <= eps * std::max(BigReal(1L, wp), result.abs())) break;
		power *= inv_w2;
	}
	return result;
}

} // namespace

BigReal bernoulli_over_factorial (unsigned k, Precision prec) {
	thread_local std::vector<std::pair<Precision, std::vector<BigReal>>> cache;
	auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == prec; });
	if (it == cache.end()) {
		cache.emplace_back(prec, std::vector<BigReal>{});
		it = std::prev(cache.end());
	}
	auto& values = it->second;
	while (values.size() < k) {
		const unsigned j = static_cast<unsigned>(values.size()) + 1;
		mpz_class fact;
		mpz_fac_ui(fact.get_mpz_t(), 2*j);
		values.push_back(from_mpq(bernoulli_table().get(2*j) / mpq_class(fact), prec));
	}
	return values[k - 1];
}

BigComplex gamma_complex (const BigComplex& z_in, Precision prec) {
	widen_exponent_range();
	const Precision wp = prec + 32 + 2*magnitude_bits(z_in);
	const BigComplex z = BigComplex(BigReal(z_in.re(), wp), BigReal(z_in.im(), wp));
	if (z.re() < BigReal(0.5, wp)) {
		// Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
		const BigComplex one(BigReal(1L, wp), BigReal(wp));
		const BigReal pi = BigReal::pi(wp);
		const BigComplex s = sin(scale(z, pi));
		if (s.abs().is_zero()) throw Error("gamma_complex: pole at non-positive integer");
		const BigComplex g = gamma_complex(one - z, wp);
		return round_to(BigComplex(pi, BigReal(wp)) / (s * g), prec);
	}
	// shift upward until |w| >= wp ln2 / (2 pi) + 2
	const double needed = static_cast<double>(wp) * std::log(2.0) / (2.0*M_PI) + 2.0;
	const double mag = std::hypot(z.re().to_double(), z.im().to_double());
	const long shift = mag >= needed ? 0 : static_cast<long>(std::ceil(needed - mag)) + 1;
	BigComplex w = z;
	BigComplex prod(BigReal(1L, wp), BigReal(wp));
	for (long j = 0; j < shift; ++j) {
		prod *= w;
		w.re() += BigReal(1L, wp);
	}
	return round_to(exp(log_gamma_stirling(w, wp)) / prod, prec);
}

BigComplex zeta_em (const BigComplex& s, Precision prec) {
	widen_exponent_range();
	if (s.im().is_zero() && s.re() == BigReal(1L, s.precision()))
		throw Error("zeta_em: pole at s = 1");
	if (s.re().sign() >= 0) return zeta_euler_maclaurin(s, prec);

	// zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
	const Precision wp = prec + 32 + 2*magnitude_bits(s);
	const BigComplex sw(BigReal(s.re(), wp), BigReal(s.im(), wp));
	const BigComplex one(BigReal(1L, wp), BigReal(wp));
	const BigComplex reflected = one - sw;
	const BigReal pi = BigReal::pi(wp);
	BigComplex factor = exp(scale(sw, log(BigReal(2L, wp))));
	factor *= exp(scale(sw - one, log(pi)));
	factor *= sin(scale(sw, pi * BigReal(0.5, wp)));
	factor *= gamma_complex(reflected, wp);
	return round_to(factor * zeta_euler_maclaurin(reflected, wp), prec);
}

} // namespace muspec
