#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "muspec/hankel.hpp"

#include <cstdio>

using namespace muspec;

namespace {

CoeffStream random_stream (int n, std::mt19937_64& rng) {
	std::uniform_real_distribution<double> u(-1.0, 1.0);
	std::vector<std::string> vals;
	for (int k = 0; k <= n; ++k) {
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.17g", u(rng));
		vals.emplace_back(buf);
	}
	return generate(FunctionSpec::user_moments(vals), n, 256);
}

mpq_class inv_factorial (int k) {
	mpz_class f = 1;
	for (int i = 2; i <= k; ++i) f *= i;
	return mpq_class(1, f);
}

}

TEST_SUITE("hankel") {

TEST_CASE("sign prefactor") {
	CHECK(sign_prefactor(1) == 1);
	CHECK(sign_prefactor(2) == -1);
	CHECK(sign_prefactor(3) == -1);
	CHECK(sign_prefactor(4) == 1);
	for (int m = 1; m <= 40; ++m) CHECK(sign_prefactor(m + 4) == sign_prefactor(m));
	CHECK_THROWS_AS(sign_prefactor(0), Error);
}

TEST_CASE("build_M small cases") {
	const CoeffStream e = generate(FunctionSpec::exponential(), 8, 256);
	const SignedHankel m11 = build_M(e, 1, 1);
	CHECK(m11.matrix.dim() == 1);
	CHECK(m11.matrix(0, 0) == theta(e, 1));

	const CoeffStream g = generate(FunctionSpec::geometric("1"), 8, 256);
	const SignedHankel m12 = build_M(g, 1, 2);
	for (std::size_t i = 0; i < 2; ++i)
		for (std::size_t j = 0; j < 2; ++j) CHECK(m12.matrix(i, j) == BigReal(-1L, 256));

	const SignedHankel m23 = build_M(e, 2, 3);
	CHECK(m23.sign == -1);
	CHECK(m23.matrix(0, 0) == -theta(e, 4));
	CHECK(m23.matrix(2, 2) == -theta(e, 0));
	CHECK(m23.matrix(0, 2) == -theta(e, 2));
	CHECK(m23.matrix(2, 0) == -theta(e, 2));
}

TEST_CASE("indices below zero read as zero") {
	const CoeffStream g = generate(FunctionSpec::geometric("1"), 8, 256);
	const SignedHankel m = build_M(g, 1, 4);
	// theta_{1+4+1-4-4} = theta_{-2}
	CHECK(m.matrix(3, 3).is_zero());
	CHECK(m.matrix(2, 3).is_zero());
	CHECK(m.matrix(2, 2) == BigReal(static_cast<long>(sign_prefactor(4)), 256));
}

TEST_CASE("build_M errors") {
	const CoeffStream g = generate(FunctionSpec::geometric("1"), 3, 256);
	CHECK_THROWS_WITH_AS(build_M(g, 2, 3), doctest::Contains("theta_4"), Error);
	CHECK_THROWS_AS(build_M(g, 0, 2), Error);
	CHECK_THROWS_AS(build_M(g, 1, 0), Error);
}

TEST_CASE("raw Toeplitz core") {
	const CoeffStream g = generate(FunctionSpec::geometric("1"), 8, 256);
	const RealMatrix t = raw_toeplitz(g, 1, 2);
	for (std::size_t i = 0; i < 2; ++i)
		for (std::size_t j = 0; j < 2; ++j) CHECK(t(i, j) == BigReal(1L, 256));

	const CoeffStream e = generate(FunctionSpec::exponential(), 8, 256);
	const RealMatrix te = raw_toeplitz(e, 1, 2);
	CHECK(te(0, 0) == BigReal(1L, 256));
	CHECK(te(0, 1) == BigReal::from_string("0.5", 256));
	CHECK(te(1, 0) == BigReal(1L, 256));
	CHECK(te(1, 1) == BigReal(1L, 256));

	const RealMatrix core = unsigned_hankel_core(e, 3, 4);
	const RealMatrix toe = raw_toeplitz(e, 3, 4);
	for (std::size_t i = 0; i < 4; ++i)
		for (std::size_t j = 0; j < 4; ++j) CHECK(toe(i, 3 - j) == core(i, j));
}

TEST_CASE("permutation-sign relation") {
	const CoeffStream e = generate(FunctionSpec::exponential(), 12, 256);
	CHECK(det_relation_check(e, 1, 1, 256).passed);
	std::mt19937_64 rng(5);
	const CoeffStream r = random_stream(6, rng);
	const auto rep = det_relation_check(r, 2, 2, 256);
	CHECK(rep.passed);
	CHECK(rep.permutation_sign == -1);
	CHECK(th::close(rep.det_hankel, -rep.det_toeplitz, 60));

	const auto r5 = det_relation_check(e, 1, 5, 256);
	CHECK(r5.passed);
	// cofactor oracle over exact rationals: theta_{l+m+1-i-j} = 1/(7-i-j)!
	oracle::QMatrix q(5, std::vector<mpq_class>(5));
	for (int i = 1; i <= 5; ++i)
		for (int j = 1; j <= 5; ++j) {
			const int k = 7 - i - j;
			q[static_cast<std::size_t>(i-1)][static_cast<std::size_t>(j-1)] = k < 0 ? mpq_class(0) : inv_factorial(k);
		}
	const mpq_class d = oracle::cofactor_det(q);
	BigReal exact(512);
	mpfr_set_q(exact.get(), d.get_mpq_t(), MPFR_RNDN);
	CHECK(th::close(r5.det_hankel, exact, 30));
}

TEST_CASE("property: symmetry, Hankel structure, scalar law") {
	std::mt19937_64 rng(99);
	for (int trial = 0; trial < 12; ++trial) {
		const int l = 1 + trial % 3;
		const int m = 1 + trial % 7;
		const CoeffStream s = random_stream(l + m, rng);
		const SignedHankel M = build_M(s, l, m);
		const RealMatrix core = unsigned_hankel_core(s, l, m);
		for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i)
			for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
				CHECK(M.matrix(i, j) == M.matrix(j, i));
				if (i + 1 < static_cast<std::size_t>(m) && j > 0) CHECK(M.matrix(i, j) == M.matrix(i + 1, j - 1));
			}
		const BigReal dm = det_lu(M.matrix, 256);
		const BigReal dc = det_lu(core, 256);
		const BigReal expect = (M.sign < 0 && m % 2) ? -dc : dc;
		CHECK(th::close(dm, expect, 60));
	}
}

}
