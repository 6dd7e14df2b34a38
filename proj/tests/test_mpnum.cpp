#include "doctest.h"
#include "helpers.hpp"

#include "muspec/mpnum.hpp"

using namespace muspec;

TEST_SUITE("mpnum") {

TEST_CASE("precision floor") {
	CHECK_THROWS_AS(BigReal(32), Error);
	CHECK_NOTHROW(BigReal(64));
	BigReal x(1L, 128);
	CHECK_THROWS_AS(x.set_precision(10), Error);
}

TEST_CASE("decimal formatting") {
	CHECK(BigReal(0L, 128).to_string(10) == "0");
	CHECK(BigReal(-2L, 128).to_string(10) == "-2e+0");
	CHECK(th::big("1.5e-40", 256).to_string(10) == "1.5e-40");
	CHECK(th::big("12345.678", 256).to_string(5) == "1.2346e+4");
}

TEST_CASE("round trip through decimal strings") {
	for (const char* s : {"3.14159265358979323846264338327950288419716939937510", "-7.25e-300", "1e+400"}) {
		const BigReal x = th::big(s, 320);
		const BigReal y = BigReal::from_string(x.to_string(), 320);
		CHECK(x == y);
	}
	CHECK_THROWS_AS(BigReal::from_string("abc", 128), Error);
}

TEST_CASE("mixed precision takes the wider operand") {
	const BigReal a(1L, 128), b(3L, 512);
	CHECK((a / b).precision() == 512);
}

TEST_CASE("rel_close") {
	CHECK(rel_close(th::big("1.0000000001"), th::big("1"), ten_pow(-9, 128)));
	CHECK_FALSE(rel_close(th::big("1.0000000001"), th::big("1"), ten_pow(-11, 128)));
	CHECK(rel_close(BigReal(0L, 128), BigReal(0L, 128), ten_pow(-30, 128)));
}

TEST_CASE("complex helpers") {
	const Precision p = 256;
	const BigComplex i(BigReal(p), BigReal(1L, p));
	const BigComplex one(BigReal(1L, p), BigReal(p));
	CHECK(th::close((i * i).re(), BigReal(-1L, p), 70));
	// e^{i pi} = -1
	const BigComplex e = exp(scale(i, BigReal::pi(p)));
	CHECK(th::close(e.re(), BigReal(-1L, p), 70));
	CHECK(abs(e.im()) < ten_pow(-70, p));
	// 4^{-1/2} = 1/2
	const BigComplex half(BigReal::from_string("0.5", p), BigReal(p));
	CHECK(th::close(pow_neg(4, half).re(), BigReal::from_string("0.5", p), 70));
	CHECK(th::close(log(one + one).re(), log(BigReal(2L, p)), 70));
}

}
