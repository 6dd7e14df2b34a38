#include "muspec/mpnum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace muspec {

void widen_exponent_range () {
	thread_local bool done = false;
	if (done) return;
	mpfr_set_emin(mpfr_get_emin_min());
	mpfr_set_emax(mpfr_get_emax_max());
	done = true;
}

Precision digits_to_bits (int digits) {
	return static_cast<Precision>(std::ceil(digits * 3.3219280948873623)) + 1;
}

static Precision checked (Precision bits) {
	if (bits < BigReal::kMinPrecision || bits > MPFR_PREC_MAX)
		throw Error("BigReal precision must be at least 64 bits, got " + std::to_string(bits));
	return bits;
}

BigReal::BigReal (Precision bits) {
	mpfr_init2(value_, checked(bits));
	mpfr_set_zero(value_, 1);
}

BigReal::BigReal (double v, Precision bits) {
	mpfr_init2(value_, checked(bits));
	mpfr_set_d(value_, v, MPFR_RNDN);
}

BigReal::BigReal (long v, Precision bits) {
	mpfr_init2(value_, checked(bits));
	mpfr_set_si(value_, v, MPFR_RNDN);
}

BigReal::BigReal (const BigReal& other, Precision bits) {
	mpfr_init2(value_, checked(bits));
	mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal (const BigReal& other) {
	mpfr_init2(value_, other.precision());
	mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal (BigReal&& other) noexcept {
	// steal the limbs, leave other as a valid 64-bit zero
	value_[0] = other.value_[0];
	mpfr_init2(other.value_, kMinPrecision);
	mpfr_set_zero(other.value_, 1);
}

BigReal& BigReal::operator= (const BigReal& other) {
	if (this != &other) {
		mpfr_set_prec(value_, other.precision());
		mpfr_set(value_, other.value_, MPFR_RNDN);
	}
	return *this;
}

BigReal& BigReal::operator= (BigReal&& other) noexcept {
	if (this != &other) mpfr_swap(value_, other.value_);
	return *this;
}

BigReal::~BigReal () { mpfr_clear(value_); }

BigReal BigReal::from_string (const std::string& text, Precision bits) {
	BigReal r(bits);
	if (text.empty() || mpfr_set_str(r.value_, text.c_str(), 10, MPFR_RNDN) != 0)
		throw Error("not a decimal number: '" + text + "'");
	return r;
}

BigReal BigReal::pi (Precision bits) {
	BigReal r(bits);
	mpfr_const_pi(r.value_, MPFR_RNDN);
	return r;
}

BigReal BigReal::euler_gamma (Precision bits) {
	BigReal r(bits);
	mpfr_const_euler(r.value_, MPFR_RNDN);
	return r;
}

BigReal BigReal::two_pow (long e, Precision bits) {
	BigReal r(1L, bits);
	mpfr_mul_2si(r.value_, r.value_, e, MPFR_RNDN);
	return r;
}

void BigReal::set_precision (Precision bits) {
	mpfr_prec_round(value_, checked(bits), MPFR_RNDN);
}

std::string BigReal::to_string (std::size_t digits) const {
	if (mpfr_nan_p(value_)) return "nan";
	if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
	if (is_zero()) return "0";
	mpfr_exp_t e = 0;
	char* raw = mpfr_get_str(nullptr, &e, 10, digits, value_, MPFR_RNDN);
	std::string s(raw);
	mpfr_free_str(raw);
	std::string out;
	if (s[0] == '-') {
		out = "-";
		s.erase(0, 1);
	}
	while (s.size() > 1 && s.back() == '0') s.pop_back();
	out += s[0];
	if (s.size() > 1) {
		out += '.';
		out.append(s, 1, std::string::npos);
	}
	long e10 = static_cast<long>(e) - 1;
	out += 'e';
	out += (e10 < 0 ? '-' : '+');
	out += std::to_string(e10 < 0 ? -e10 : e10);
	return out;
}

BigReal& BigReal::operator+= (const BigReal& o) {
	if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
	mpfr_add(value_, value_, o.value_, MPFR_RNDN);
	return *this;
}

BigReal& BigReal::operator-= (const BigReal& o) {
	if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
	mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
	return *this;
}

BigReal& BigReal::operator*= (const BigReal& o) {
	if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
	mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
	return *this;
}

BigReal& BigReal::operator/= (const BigReal& o) {
	if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
	mpfr_div(value_, value_, o.value_, MPFR_RNDN);
	return *this;
}

static Precision wider (const BigReal& a, const BigReal& b) {
	return std::max(a.precision(), b.precision());
}

BigReal operator+ (const BigReal& a, const BigReal& b) {
	BigReal r(wider(a, b));
	mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
	return r;
}

BigReal operator- (const BigReal& a, const BigReal& b) {
	BigReal r(wider(a, b));
	mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
	return r;
}

BigReal operator* (const BigReal& a, const BigReal& b) {
	BigReal r(wider(a, b));
	mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
	return r;
}

BigReal operator/ (const BigReal& a, const BigReal& b) {
	BigReal r(wider(a, b));
	mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
	return r;
}

BigReal operator- (const BigReal& a) {
	BigReal r(a);
	mpfr_neg(r.value_, r.value_, MPFR_RNDN);
	return r;
}

std::partial_ordering operator<=> (const BigReal& a, const BigReal& b) {
	if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
	int c = mpfr_cmp(a.value_, b.value_);
	if (c < 0) return std::partial_ordering::less;
	if (c > 0) return std::partial_ordering::greater;
	return std::partial_ordering::equivalent;
}

BigReal abs (const BigReal& x) {
	BigReal r(x);
	mpfr_abs(r.get(), r.get(), MPFR_RNDN);
	return r;
}

BigReal sqrt (const BigReal& x) {
	BigReal r(x.precision());
	mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
	return r;
}

BigReal log (const BigReal& x) {
	BigReal r(x.precision());
	mpfr_log(r.get(), x.get(), MPFR_RNDN);
	return r;
}

BigReal exp (const BigReal& x) {
	BigReal r(x.precision());
	mpfr_exp(r.get(), x.get(), MPFR_RNDN);
	return r;
}

BigReal pow (const BigReal& x, long n) {
	BigReal r(x.precision());
	mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
	return r;
}

BigReal pow (const BigReal& x, const BigReal& y) {
	BigReal r(wider(x, y));
	mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
	return r;
}

BigReal ten_pow (long e, Precision bits) {
	BigReal r(bits);
	mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
	if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
	return r;
}

bool rel_close (const BigReal& a, const BigReal& b, const BigReal& tol) {
	if (a == b) return true;
	BigReal scale = std::max(abs(a), abs(b));
	return abs(a - b) <= tol * scale;
}

std::ostream& operator<< (std::ostream& out, const BigReal& x) {
	return out << x.to_string(static_cast<std::size_t>(std::max<std::streamsize>(out.precision(), 1)));
}

} // namespace muspec
