#include "muspec/mpnum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace muspec {

RealMatrix::RealMatrix (std::size_t dim, Precision bits) : dim_(dim), bits_(bits) {
	if (dim == 0) throw Error("matrix dimension must be at least 1");
	data_.reserve(dim*dim);
	for (std::size_t i = 0; i < dim*dim; ++i) data_.emplace_back(bits);
}

void RealMatrix::mark_symmetric () {
	for (std::size_t i = 0; i < dim_; ++i)
		for (std::size_t j = i+1; j < dim_; ++j)
			if (!((*this)(i, j) == (*this)(j, i)))
				throw Error("matrix is not symmetric at (" + std::to_string(i+1) + "," + std::to_string(j+1) + ")");
	symmetric_ = true;
}

BigReal RealMatrix::trace () const {
	BigReal t(bits_);
	for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
	return t;
}

BigReal RealMatrix::frobenius_norm () const {
	BigReal s(bits_ + 32);
	for (const auto& v : data_) mpfr_fma(s.get(), v.get(), v.get(), s.get(), MPFR_RNDN);
	return BigReal(sqrt(s), bits_);
}

RealMatrix RealMatrix::symmetric_permutation (const std::vector<std::size_t>& perm) const {
	RealMatrix r(dim_, bits_);
	for (std::size_t i = 0; i < dim_; ++i)
		for (std::size_t j = 0; j < dim_; ++j)
			r(i, j) = (*this)(perm.at(i), perm.at(j));
	if (symmetric_) r.symmetric_ = true;
	return r;
}

RealMatrix RealMatrix::permute_rows (const std::vector<std::size_t>& perm) const {
	RealMatrix r(dim_, bits_);
	for (std::size_t i = 0; i < dim_; ++i)
		for (std::size_t j = 0; j < dim_; ++j)
			r(i, j) = (*this)(perm.at(i), j);
	return r;
}

RealMatrix RealMatrix::identity (std::size_t dim, Precision bits) {
	RealMatrix r(dim, bits);
	for (std::size_t i = 0; i < dim; ++i) r(i, i) = BigReal(1L, bits);
	r.symmetric_ = true;
	return r;
}

RealMatrix RealMatrix::from_doubles (std::size_t dim, const std::vector<double>& values, Precision bits) {
	if (values.size() != dim*dim) throw Error("from_doubles: expected " + std::to_string(dim*dim) + " values");
	RealMatrix r(dim, bits);
	for (std::size_t i = 0; i < dim*dim; ++i) r.data_[i] = BigReal(values[i], bits);
	return r;
}

Precision guarded_precision (Precision prec, std::size_t dim) {
	const Precision log2m = dim <= 1 ? 0 : static_cast<Precision>(std::bit_width(dim - 1));
	return prec + 32 + 2*log2m;
}

BigReal det_lu (const RealMatrix& a, Precision prec) {
	widen_exponent_range();
	if (prec < BigReal::kMinPrecision) throw Error("det_lu: precision below 64 bits");
	const std::size_t n = a.dim();
	const Precision wp = guarded_precision(prec, n);

	std::vector<BigReal> w;
	w.reserve(n*n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) w.emplace_back(a(i, j), wp);
	auto at = [&](std::size_t i, std::size_t j) -> BigReal& { return w[i*n+j]; };

	BigReal det(1L, wp);
	BigReal factor(wp);
	mpfr_clear_flags();
	for (std::size_t k = 0; k < n; ++k) {
		std::size_t piv = k;
		for (std::size_t i = k+1; i < n; ++i)
			if (mpfr_cmpabs(at(i, k).get(), at(piv, k).get()) > 0) piv = i;
		if (at(piv, k).is_zero()) return BigReal(prec);
		if (piv != k) {
			for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(piv, j));
			mpfr_neg(det.get(), det.get(), MPFR_RNDN);
		}
		mpfr_mul(det.get(), det.get(), at(k, k).get(), MPFR_RNDN);
		for (std::size_t i = k+1; i < n; ++i) {
			if (at(i, k).is_zero()) continue;
			mpfr_div(factor.get(), at(i, k).get(), at(k, k).get(), MPFR_RNDN);
			mpfr_neg(factor.get(), factor.get(), MPFR_RNDN);
			for (std::size_t j = k+1; j < n; ++j)
				mpfr_fma(at(i, j).get(), factor.get(), at(k, j).get(), at(i, j).get(), MPFR_RNDN);
		}
		if (mpfr_overflow_p() || mpfr_underflow_p() || !det.is_finite()) {
			mpfr_clear_flags();
			throw RangeError("det_lu: exponent range exceeded at row " + std::to_string(k+1), k+1);
		}
	}
	return BigReal(det, prec);
}

namespace {

// Frobenius norm of the strict off-diagonal part of a symmetric matrix.
void offdiag_norm (const std::vector<BigReal>& w, std::size_t n, BigReal& out) {
	mpfr_set_zero(out.get(), 1);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i+1; j < n; ++j)
			mpfr_fma(out.get(), w[i*n+j].get(), w[i*n+j].get(), out.get(), MPFR_RNDN);
	mpfr_mul_2ui(out.get(), out.get(), 1, MPFR_RNDN);
	mpfr_sqrt(out.get(), out.get(), MPFR_RNDN);
}

} // namespace

EigenResult sym_eigenvalues (const RealMatrix& a, Precision prec, const BigReal& tol, int max_sweeps) {
	widen_exponent_range();
	if (!a.symmetric()) throw Error("sym_eigenvalues: matrix is not flagged symmetric");
	if (tol.sign() <= 0) throw Error("sym_eigenvalues: tolerance must be positive");
	const std::size_t n = a.dim();
	const Precision wp = guarded_precision(prec, n);

	std::vector<BigReal> w;
	w.reserve(n*n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) w.emplace_back(a(i, j), wp);
	auto at = [&](std::size_t i, std::size_t j) -> mpfr_ptr { return w[i*n+j].get(); };

	const BigReal norm = BigReal(a.frobenius_norm(), wp);
	const BigReal bound = norm * BigReal(tol, wp);
	const BigReal one(1L, wp);
	BigReal off(wp), theta(wp), t(wp), c(wp), s(wp), tau(wp), h(wp), g(wp), hh(wp), tmp(wp);

	EigenResult result;
	for (int sweep = 0;; ++sweep) {
		offdiag_norm(w, n, off);
		if (off <= bound) {
			result.sweeps = sweep;
			break;
		}
		if (sweep >= max_sweeps) {
			const double residual = norm.is_zero() ? 0.0 : (off / norm).to_double();
			std::ostringstream msg;
			msg << "sym_eigenvalues: no convergence after " << max_sweeps << " sweeps, relative off-diagonal residual " << residual;
			throw ConvergenceError(msg.str(), residual);
		}
		for (std::size_t p = 0; p + 1 < n; ++p) {
			for (std::size_t q = p+1; q < n; ++q) {
				mpfr_ptr apq = at(p, q);
				if (mpfr_zero_p(apq)) continue;
				mpfr_ptr app = at(p, p);
				mpfr_ptr aqq = at(q, q);
				// drop entries negligible against both diagonal entries at working precision
				if (!mpfr_zero_p(app) && !mpfr_zero_p(aqq)) {
					const long floor_exp = std::min(mpfr_get_exp(app), mpfr_get_exp(aqq)) - static_cast<long>(wp) - 2;
					if (mpfr_get_exp(apq) < floor_exp) {
						mpfr_set_zero(apq, 1);
						mpfr_set_zero(at(q, p), 1);
						continue;
					}
				}
				// theta = (aqq - app) / (2 apq), t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
				mpfr_sub(theta.get(), aqq, app, MPFR_RNDN);
				mpfr_div(theta.get(), theta.get(), apq, MPFR_RNDN);
				mpfr_div_2ui(theta.get(), theta.get(), 1, MPFR_RNDN);
				mpfr_hypot(tmp.get(), theta.get(), one.get(), MPFR_RNDN);
				mpfr_abs(t.get(), theta.get(), MPFR_RNDN);
				mpfr_add(t.get(), t.get(), tmp.get(), MPFR_RNDN);
				mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
				if (theta.sign() < 0) mpfr_neg(t.get(), t.get(), MPFR_RNDN);
				// c = 1/sqrt(t^2+1), s = t c, tau = s/(1+c)
				mpfr_hypot(c.get(), t.get(), one.get(), MPFR_RNDN);
				mpfr_ui_div(c.get(), 1, c.get(), MPFR_RNDN);
				mpfr_mul(s.get(), t.get(), c.get(), MPFR_RNDN);
				mpfr_add_ui(tau.get(), c.get(), 1, MPFR_RNDN);
				mpfr_div(tau.get(), s.get(), tau.get(), MPFR_RNDN);
				mpfr_mul(h.get(), t.get(), apq, MPFR_RNDN);
				mpfr_sub(app, app, h.get(), MPFR_RNDN);
				mpfr_add(aqq, aqq, h.get(), MPFR_RNDN);
				mpfr_set_zero(apq, 1);
				mpfr_set_zero(at(q, p), 1);
				for (std::size_t r = 0; r < n; ++r) {
					if (r == p || r == q) continue;
					mpfr_ptr arp = at(r, p);
					mpfr_ptr arq = at(r, q);
					mpfr_set(g.get(), arp, MPFR_RNDN);
					mpfr_set(hh.get(), arq, MPFR_RNDN);
					// arp = g - s (hh + g tau)
					mpfr_fma(tmp.get(), g.get(), tau.get(), hh.get(), MPFR_RNDN);
					mpfr_mul(tmp.get(), tmp.get(), s.get(), MPFR_RNDN);
					mpfr_sub(arp, g.get(), tmp.get(), MPFR_RNDN);
					// arq = hh + s (g - hh tau)
					mpfr_mul(tmp.get(), hh.get(), tau.get(), MPFR_RNDN);
					mpfr_sub(tmp.get(), g.get(), tmp.get(), MPFR_RNDN);
					mpfr_fma(arq, s.get(), tmp.get(), hh.get(), MPFR_RNDN);
					mpfr_set(at(p, r), arp, MPFR_RNDN);
					mpfr_set(at(q, r), arq, MPFR_RNDN);
				}
			}
		}
	}

	result.eigenvalues.reserve(n);
	for (std::size_t i = 0; i < n; ++i) result.eigenvalues.emplace_back(w[i*n+i], prec);
	std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
		[](const BigReal& x, const BigReal& y) { return mpfr_less_p(x.get(), y.get()); });
	result.precision_used = prec;
	result.offdiag_residual = norm.is_zero() ? BigReal(prec) : BigReal(off / norm, prec);
	return result;
}

namespace {

// Resolution limit of a run at `bits`: ||A||_F * 2^-(bits - slack).
BigReal noise_floor (const BigReal& norm, Precision bits, std::size_t n) {
	const long slack = 8 + static_cast<long>(std::bit_width(n));
	return norm * BigReal::two_pow(-(static_cast<long>(bits) - slack), norm.precision());
}

} // namespace

EigenResult adaptive_solve (const RealMatrix& a, int target_digits, const AdaptiveOptions& opts) {
	widen_exponent_range();
	if (!a.symmetric()) throw Error("adaptive_solve: matrix is not flagged symmetric");
	if (target_digits < 10) throw Error("adaptive_solve: target_digits must be at least 10");
	const std::size_t n = a.dim();

	const BigReal norm = a.frobenius_norm();
	if (norm.is_zero()) {
		EigenResult zero;
		for (std::size_t i = 0; i < n; ++i) zero.eigenvalues.emplace_back(opts.start_bits);
		zero.precision_used = opts.start_bits;
		zero.offdiag_residual = BigReal(opts.start_bits);
		return zero;
	}

	auto run = [&](Precision bits) {
		return sym_eigenvalues(a, bits, BigReal::two_pow(-static_cast<long>(bits), bits), opts.max_sweeps);
	};

	Precision bits = opts.start_bits;
	EigenResult prev = run(bits);
	std::vector<BigReal> older;
	for (;;) {
		const Precision next_bits = bits * 2;
		if (next_bits > opts.cap_bits) {
			throw PrecisionCapError("adaptive_solve: no agreement to " + std::to_string(target_digits) +
				" digits below the precision cap of " + std::to_string(opts.cap_bits) + " bits",
				std::move(older), std::move(prev.eigenvalues));
		}
		EigenResult cur = run(next_bits);
		const Precision cmp_bits = next_bits;
		const BigReal digits_tol = ten_pow(-target_digits, cmp_bits);
		const BigReal floor_prev = noise_floor(BigReal(norm, cmp_bits), bits, n);
		const BigReal floor_cur = noise_floor(BigReal(norm, cmp_bits), next_bits, n);

		bool agree = true;
		std::vector<bool> is_zero(n, false);
		for (std::size_t i = 0; i < n && agree; ++i) {
			const BigReal& x = prev.eigenvalues[i];
			const BigReal& y = cur.eigenvalues[i];
			if (x == y) continue;
			const BigReal ax = abs(x), ay = abs(y);
			if (opts.allow_zero && ax <= floor_prev && ay <= floor_cur) {
				is_zero[i] = true;
				continue;
			}
			const BigReal diff = abs(x - y);
			if (opts.allow_zero && std::max(ax, ay) < digits_tol) {
				agree = diff <= digits_tol;
				continue;
			}
			agree = diff <= digits_tol * std::max(ax, ay);
		}
		if (agree) {
			for (std::size_t i = 0; i < n; ++i)
				if (is_zero[i]) cur.eigenvalues[i] = BigReal(next_bits);
			std::sort(cur.eigenvalues.begin(), cur.eigenvalues.end(),
				[](const BigReal& x, const BigReal& y) { return mpfr_less_p(x.get(), y.get()); });
			return cur;
		}
		older = std::move(prev.eigenvalues);
		prev = std::move(cur);
		bits = next_bits;
	}
}

} // namespace muspec
