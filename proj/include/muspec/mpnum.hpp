#ifndef MUSPEC_MPNUM_HPP
#define MUSPEC_MPNUM_HPP

#include <mpfr.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace muspec {

using Precision = mpfr_prec_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// Exponent overflow/underflow during elimination; carries the row reached.
class RangeError : public Error {
  public:
	RangeError (const std::string& what, std::size_t row) : Error(what), row_(row) {}
	std::size_t row () const { return row_; }
  private:
	std::size_t row_;
};

class ConvergenceError : public Error {
  public:
	ConvergenceError (const std::string& what, double residual) : Error(what), residual_(residual) {}
	double residual () const { return residual_; }
  private:
	double residual_;
};

/// Arbitrary-precision real number backed by an mpfr_t.
///
/// Every value carries its own precision. Binary operators produce a result
/// at the larger of the two operand precisions, rounded to nearest.
class BigReal {
  public:
	static constexpr Precision kMinPrecision = 64;

	explicit BigReal (Precision bits = kMinPrecision);
	BigReal (double v, Precision bits);
	BigReal (long v, Precision bits);
	BigReal (int v, Precision bits) : BigReal(static_cast<long>(v), bits) {}
	/// Same value rounded to a different precision.
	BigReal (const BigReal& other, Precision bits);

	BigReal (const BigReal& other);
	BigReal (BigReal&& other) noexcept;
	BigReal& operator= (const BigReal& other);
	BigReal& operator= (BigReal&& other) noexcept;
	~BigReal ();

	/// Parses a decimal string ("1.5", "-2.5e-40"); throws Error on garbage.
	static BigReal from_string (const std::string& text, Precision bits);
	static BigReal pi (Precision bits);
	static BigReal euler_gamma (Precision bits);
	static BigReal two_pow (long e, Precision bits);

	Precision precision () const { return mpfr_get_prec(value_); }
	/// Rounds the stored value to a new precision in place.
	void set_precision (Precision bits);

	mpfr_ptr get () { return value_; }
	mpfr_srcptr get () const { return value_; }

	int sign () const { return mpfr_sgn(value_); }
	bool is_zero () const { return mpfr_zero_p(value_) != 0; }
	bool is_finite () const { return mpfr_number_p(value_) != 0; }
	double to_double () const { return mpfr_get_d(value_, MPFR_RNDN); }
	/// Binary exponent e with 0.5 <= |x|/2^e < 1; meaningless for zero.
	long exponent () const { return mpfr_get_exp(value_); }

	/// Scientific decimal with the given significant digits; 0 means
	/// enough digits to round-trip exactly at this precision.
	std::string to_string (std::size_t digits = 0) const;

	BigReal& operator+= (const BigReal& o);
	BigReal& operator-= (const BigReal& o);
	BigReal& operator*= (const BigReal& o);
	BigReal& operator/= (const BigReal& o);

	friend BigReal operator+ (const BigReal& a, const BigReal& b);
	friend BigReal operator- (const BigReal& a, const BigReal& b);
	friend BigReal operator* (const BigReal& a, const BigReal& b);
	friend BigReal operator/ (const BigReal& a, const BigReal& b);
	friend BigReal operator- (const BigReal& a);

	friend bool operator== (const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
	friend std::partial_ordering operator<=> (const BigReal& a, const BigReal& b);

  private:
	mpfr_t value_;
};

BigReal abs (const BigReal& x);
BigReal sqrt (const BigReal& x);
BigReal log (const BigReal& x);
BigReal exp (const BigReal& x);
BigReal pow (const BigReal& x, long n);
BigReal pow (const BigReal& x, const BigReal& y);
/// |a - b| <= tol * max(|a|, |b|); two zeros compare equal.
bool rel_close (const BigReal& a, const BigReal& b, const BigReal& tol);
BigReal ten_pow (long e, Precision bits);

std::ostream& operator<< (std::ostream& out, const BigReal& x);

/// Widest exponent range MPFR allows, applied to the calling thread.
/// Library entry points call this; it is cheap after the first call.
void widen_exponent_range ();

Precision digits_to_bits (int digits);

class BigComplex {
  public:
	explicit BigComplex (Precision bits = BigReal::kMinPrecision) : re_(bits), im_(bits) {}
	BigComplex (const BigReal& re, const BigReal& im);
	BigComplex (double re, double im, Precision bits) : re_(re, bits), im_(im, bits) {}

	const BigReal& re () const { return re_; }
	const BigReal& im () const { return im_; }
	BigReal& re () { return re_; }
	BigReal& im () { return im_; }
	Precision precision () const { return re_.precision(); }
	bool is_real () const { return im_.is_zero(); }

	BigComplex& operator+= (const BigComplex& o);
	BigComplex& operator-= (const BigComplex& o);
	BigComplex& operator*= (const BigComplex& o);
	BigComplex& operator/= (const BigComplex& o);

	friend BigComplex operator+ (BigComplex a, const BigComplex& b) { return a += b; }
	friend BigComplex operator- (BigComplex a, const BigComplex& b) { return a -= b; }
	friend BigComplex operator* (BigComplex a, const BigComplex& b) { return a *= b; }
	friend BigComplex operator/ (BigComplex a, const BigComplex& b) { return a /= b; }
	friend BigComplex operator- (const BigComplex& a) { return BigComplex(-a.re_, -a.im_); }
	friend bool operator== (const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

	BigComplex conj () const { return BigComplex(re_, -im_); }
	BigReal abs () const;

  private:
	BigReal re_;
	BigReal im_;
};

BigComplex scale (const BigComplex& z, const BigReal& f);
BigComplex exp (const BigComplex& z);
/// Principal branch.
BigComplex log (const BigComplex& z);
BigComplex sin (const BigComplex& z);
/// n^(-s) for a positive integer base.
BigComplex pow_neg (unsigned long n, const BigComplex& s);
/// e^(i*phi)
BigComplex unit_root (const BigReal& phi);

std::ostream& operator<< (std::ostream& out, const BigComplex& z);

/// Dense square matrix of BigReal stored row-major; indices are 0-based.
class RealMatrix {
  public:
	RealMatrix (std::size_t dim, Precision bits);

	std::size_t dim () const { return dim_; }
	Precision precision () const { return bits_; }
	bool symmetric () const { return symmetric_; }
	/// Sets the symmetric flag; throws Error if the entries are not
	/// bit-for-bit symmetric.
	void mark_symmetric ();

	BigReal& operator() (std::size_t i, std::size_t j) { return data_[i*dim_+j]; }
	const BigReal& operator() (std::size_t i, std::size_t j) const { return data_[i*dim_+j]; }

	BigReal trace () const;
	BigReal frobenius_norm () const;

	/// Rows/columns reordered: result(i,j) = this(perm[i], perm[j]).
	RealMatrix symmetric_permutation (const std::vector<std::size_t>& perm) const;
	/// result(i,j) = this(perm[i], j)
	RealMatrix permute_rows (const std::vector<std::size_t>& perm) const;

	static RealMatrix identity (std::size_t dim, Precision bits);
	/// Row-major list of doubles; must have dim*dim entries.
	static RealMatrix from_doubles (std::size_t dim, const std::vector<double>& values, Precision bits);

  private:
	std::size_t dim_;
	Precision bits_;
	bool symmetric_ = false;
	std::vector<BigReal> data_;
};

struct EigenResult {
	std::vector<BigReal> eigenvalues;   // ascending
	Precision precision_used = 0;
	BigReal offdiag_residual;           // ||offdiag||_F / ||A||_F at exit
	int sweeps = 0;
};

/// Working precision for an m x m problem requested at prec bits.
Precision guarded_precision (Precision prec, std::size_t dim);

/// Determinant via partial-pivoting LU at guarded precision, rounded to prec.
BigReal det_lu (const RealMatrix& a, Precision prec);

/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
/// Stops when ||offdiag||_F <= tol * ||A||_F.
EigenResult sym_eigenvalues (const RealMatrix& a, Precision prec, const BigReal& tol, int max_sweeps = 64);

struct AdaptiveOptions {
	Precision start_bits = 256;
	Precision cap_bits = 8192;
	/// Eigenvalues below the noise floor of both compared runs are reported
	/// as exact zeros. When false every eigenvalue must agree to relative
	/// digits, so tiny eigenvalues force precision escalation.
	bool allow_zero = true;
	int max_sweeps = 64;
};

class PrecisionCapError : public Error {
  public:
	PrecisionCapError (const std::string& what, std::vector<BigReal> previous, std::vector<BigReal> last)
		: Error(what), previous_(std::move(previous)), last_(std::move(last)) {}
	const std::vector<BigReal>& previous () const { return previous_; }
	const std::vector<BigReal>& last () const { return last_; }
  private:
	std::vector<BigReal> previous_;
	std::vector<BigReal> last_;
};

/// Runs sym_eigenvalues at doubling precision until two successive runs
/// agree on every eigenvalue to target_digits.
EigenResult adaptive_solve (const RealMatrix& a, int target_digits, const AdaptiveOptions& opts = {});

} // namespace muspec

#endif // MUSPEC_MPNUM_HPP
