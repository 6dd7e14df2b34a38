#ifndef MUSPEC_HANKEL_HPP
#define MUSPEC_HANKEL_HPP

#include "muspec/coeffs.hpp"
#include "muspec/mpnum.hpp"

namespace muspec {

struct HankelSpec {
	int l = 1;
	int m = 1;
};

/// The m x m matrix M_{l,m}(f): sign * theta_{l+m+1-i-j} (1-based i, j).
/// `matrix` already includes the sign; `sign` is kept for bookkeeping.
struct SignedHankel {
	HankelSpec spec;
	int sign = 1;
	RealMatrix matrix;
};

/// -(-1)^((m+1)(m+2)/2); period 4 in m: +1, -1, -1, +1.
int sign_prefactor (int m);

SignedHankel build_M (const CoeffStream& stream, int l, int m);

/// theta_{l+m+1-i-j}, the Hankel core of M without the sign.
RealMatrix unsigned_hankel_core (const CoeffStream& stream, int l, int m);

/// theta_{l+j-i}: the column reversal of the unsigned Hankel core.
RealMatrix raw_toeplitz (const CoeffStream& stream, int l, int m);

struct DetRelationReport {
	int l = 0;
	int m = 0;
	int permutation_sign = 1;   // (-1)^(m(m-1)/2)
	BigReal det_hankel;
	BigReal det_toeplitz;
	BigReal relative_error;
	bool passed = false;
};

/// Checks det(H) = (-1)^(m(m-1)/2) det(T) to relative 1e-30.
DetRelationReport det_relation_check (const CoeffStream& stream, int l, int m, Precision prec);

} // namespace muspec

#endif // MUSPEC_HANKEL_HPP
