#include "muspec/hankel.hpp"

namespace muspec {

namespace {

void check_spec (const CoeffStream& stream, int l, int m) {
	if (l < 1) throw Error("Hankel index l must be at least 1, got " + std::to_string(l));
	if (m < 1) throw Error("Hankel size m must be at least 1, got " + std::to_string(m));
	if (stream.max_index < l + m - 1)
		throw Error("stream " + stream.spec.name + " lacks theta_" + std::to_string(l + m - 1) +
			" needed for M_{" + std::to_string(l) + "," + std::to_string(m) + "} (max index " +
			std::to_string(stream.max_index) + ")");
}

Precision matrix_bits (const CoeffStream& stream) {
	return std::max<Precision>(stream.precision_bits, BigReal::kMinPrecision);
}

} // namespace

int sign_prefactor (int m) {
	if (m < 1) throw Error("sign_prefactor: m must be at least 1");
	const long e = (static_cast<long>(m) + 1) * (m + 2) / 2;
	return e % 2 == 0 ? -1 : 1;
}

RealMatrix unsigned_hankel_core (const CoeffStream& stream, int l, int m) {
	check_spec(stream, l, m);
	RealMatrix h(static_cast<std::size_t>(m), matrix_bits(stream));
	for (int i = 1; i <= m; ++i)
		for (int j = 1; j <= m; ++j)
			h(i-1, j-1) = theta(stream, l + m + 1 - i - j);
	h.mark_symmetric();
	return h;
}

SignedHankel build_M (const CoeffStream& stream, int l, int m) {
	RealMatrix h = unsigned_hankel_core(stream, l, m);
	const int sign = sign_prefactor(m);
	if (sign < 0)
		for (int i = 0; i < m; ++i)
			for (int j = 0; j < m; ++j)
				mpfr_neg(h(i, j).get(), h(i, j).get(), MPFR_RNDN);
	h.mark_symmetric();
	return SignedHankel{HankelSpec{l, m}, sign, std::move(h)};
}

RealMatrix raw_toeplitz (const CoeffStream& stream, int l, int m) {
	check_spec(stream, l, m);
	RealMatrix t(static_cast<std::size_t>(m), matrix_bits(stream));
	for (int i = 1; i <= m; ++i)
		for (int j = 1; j <= m; ++j)
			t(i-1, j-1) = theta(stream, l + j - i);
	return t;
}

DetRelationReport det_relation_check (const CoeffStream& stream, int l, int m, Precision prec) {
	DetRelationReport r;
	r.l = l;
	r.m = m;
	r.permutation_sign = ((static_cast<long>(m) * (m - 1) / 2) % 2 == 0) ? 1 : -1;
	r.det_hankel = det_lu(unsigned_hankel_core(stream, l, m), prec);
	r.det_toeplitz = det_lu(raw_toeplitz(stream, l, m), prec);
	const BigReal expected = r.permutation_sign > 0 ? r.det_toeplitz : -r.det_toeplitz;
	const BigReal diff = abs(r.det_hankel - expected);
	const BigReal scale = std::max(abs(r.det_hankel), abs(expected));
	r.relative_error = scale.is_zero() ? BigReal(prec) : diff / scale;
	r.passed = diff.is_zero() || r.relative_error <= ten_pow(-30, prec);
	return r;
}

} // namespace muspec
