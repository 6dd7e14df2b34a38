#include "muspec/mpnum.hpp"

#include <algorithm>
#include <ostream>

namespace muspec {

BigComplex::BigComplex (const BigReal& re, const BigReal& im)
	: re_(re, std::max(re.precision(), im.precision())),
	  im_(im, std::max(re.precision(), im.precision())) {}

BigComplex& BigComplex::operator+= (const BigComplex& o) {
	re_ += o.re_;
	im_ += o.im_;
	return *this;
}

BigComplex& BigComplex::operator-= (const BigComplex& o) {
	re_ -= o.re_;
	im_ -= o.im_;
	return *this;
}

BigComplex& BigComplex::operator*= (const BigComplex& o) {
	const Precision p = std::max(precision(), o.precision());
	BigReal ac(p), bd(p), ad(p), bc(p);
	mpfr_mul(ac.get(), re_.get(), o.re_.get(), MPFR_RNDN);
	mpfr_mul(bd.get(), im_.get(), o.im_.get(), MPFR_RNDN);
	mpfr_mul(ad.get(), re_.get(), o.im_.get(), MPFR_RNDN);
	mpfr_mul(bc.get(), im_.get(), o.re_.get(), MPFR_RNDN);
	re_ = ac - bd;
	im_ = ad + bc;
	return *this;
}

BigComplex& BigComplex::operator/= (const BigComplex& o) {
	const Precision p = std::max(precision(), o.precision());
	BigReal den(p);
	mpfr_sqr(den.get(), o.re_.get(), MPFR_RNDN);
	mpfr_fma(den.get(), o.im_.get(), o.im_.get(), den.get(), MPFR_RNDN);
	if (den.is_zero()) throw Error("complex division by zero");
	BigComplex num = *this * o.conj();
	re_ = num.re_ / den;
	im_ = num.im_ / den;
	return *this;
}

BigReal BigComplex::abs () const {
	BigReal r(precision());
	mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
	return r;
}

BigComplex scale (const BigComplex& z, const BigReal& f) {
	return BigComplex(z.re() * f, z.im() * f);
}

BigComplex exp (const BigComplex& z) {
	const Precision p = z.precision();
	BigReal mag = exp(z.re());
	BigReal s(p), c(p);
	mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
	return BigComplex(mag * c, mag * s);
}

BigComplex log (const BigComplex& z) {
	const Precision p = z.precision();
	BigReal arg(p);
	mpfr_atan2(arg.get(), z.im().get(), z.re().get(), MPFR_RNDN);
	return BigComplex(log(z.abs()), arg);
}

BigComplex sin (const BigComplex& z) {
	// sin(x+iy) = sin x cosh y + i cos x sinh y
	const Precision p = z.precision();
	BigReal s(p), c(p), sh(p), ch(p);
	mpfr_sin_cos(s.get(), c.get(), z.re().get(), MPFR_RNDN);
	mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), MPFR_RNDN);
	return BigComplex(s * ch, c * sh);
}

BigComplex pow_neg (unsigned long n, const BigComplex& s) {
	const Precision p = s.precision();
	BigReal ln(p);
	mpfr_log_ui(ln.get(), n, MPFR_RNDN);
	// n^-s = exp(-s ln n)
	return exp(BigComplex(-(s.re() * ln), -(s.im() * ln)));
}

BigComplex unit_root (const BigReal& phi) {
	BigReal s(phi.precision()), c(phi.precision());
	mpfr_sin_cos(s.get(), c.get(), phi.get(), MPFR_RNDN);
	return BigComplex(c, s);
}

std::ostream& operator<< (std::ostream& out, const BigComplex& z) {
	return out << "(" << z.re() << ", " << z.im() << ")";
}

} // namespace muspec
