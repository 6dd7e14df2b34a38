#ifndef MUSPEC_COEFFS_HPP
#define MUSPEC_COEFFS_HPP

#include "muspec/mpnum.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace muspec {

// ---------------------------------------------------------------------------
// Special functions

/// Riemann zeta by Euler-Maclaurin summation, absolute error <= 2^-prec for
/// moderate |s|. Re(s) < 0 goes through the functional equation.
BigComplex zeta_em (const BigComplex& s, Precision prec);

/// Gamma(z) for complex z away from the poles (Stirling series after an
/// upward shift, reflection for Re z < 1/2).
BigComplex gamma_complex (const BigComplex& z, Precision prec);

/// B_{2k} / (2k)! for k >= 1, exact rationals rounded to `prec`.
BigReal bernoulli_over_factorial (unsigned k, Precision prec);

// ---------------------------------------------------------------------------
// Function specifications

enum class FunctionKind { builtin, analytic };

enum class BuiltinFamily { geometric, exponential, rational2, catalan, user_moments };

/// What a coefficient stream is the Taylor expansion of.
///
/// Builtin families carry their parameters as decimal strings so the spec
/// hashes identically regardless of the precision it is later evaluated at.
struct FunctionSpec {
	std::string name;
	FunctionKind kind = FunctionKind::builtin;

	BuiltinFamily family = BuiltinFamily::geometric;
	std::vector<std::string> params;

	std::string generator_id;
	std::string s0_re = "0";
	std::string s0_im = "0";
	std::string pole_removal;
	std::string ring_radius = "1";
	/// Set by configuration files once the zeta-star definition is supplied
	/// by the user; the shipped default is a labelled placeholder.
	bool transcribed = false;

	/// Stable textual form; the cache key is its SHA-256.
	std::string canonical () const;
	std::string hash () const;
	bool placeholder () const { return kind == FunctionKind::analytic && generator_id == "zeta-star" && !transcribed; }

	nlohmann::json to_json () const;
	static FunctionSpec from_json (const nlohmann::json& j);

	/// CLI syntax: "geometric:R", "exponential", "rational2:A,B", "catalan",
	/// "moments:x0,x1,...", "zeta-star", "analytic:GEN[:r=R][:s0=X][:pole=TAG]",
	/// or "@file.json".
	static FunctionSpec parse (const std::string& text);

	static FunctionSpec geometric (const std::string& ratio);
	static FunctionSpec exponential ();
	static FunctionSpec rational2 (const std::string& a, const std::string& b);
	static FunctionSpec catalan ();
	static FunctionSpec user_moments (const std::vector<std::string>& values);
	static FunctionSpec analytic (const std::string& generator, const std::string& radius,
	                              const std::string& pole_removal = "", const std::string& s0 = "0");
	/// The shipped zeta-star provider: (s-1) zeta(s) expanded at 0 on the unit ring.
	static FunctionSpec zeta_star_default ();
};

/// Taylor coefficients theta_0..theta_N of a FunctionSpec.
struct CoeffStream {
	FunctionSpec spec;
	int max_index = -1;
	std::vector<BigReal> values;
	Precision precision_bits = 0;
	std::string provenance;
	/// max |f| on the quadrature ring for analytic streams, zero for builtins;
	/// sets the absolute error scale error_scale * r^-k of theta_k.
	BigReal error_scale;
};

/// Raised on a mismatch between cached/earlier coefficients and a regeneration.
class CacheCorruptionError : public Error {
  public:
	using Error::Error;
};

CoeffStream generate (const FunctionSpec& spec, int max_index, Precision prec);

/// theta_k; exactly zero for k < 0, error for k beyond the stream.
BigReal theta (const CoeffStream& stream, int k);

/// Absolute tolerance to which theta_k is reproducible at this precision.
BigReal agreement_tolerance (const CoeffStream& stream, int k);

class CoeffCache;

/// Regenerates at the larger size/precision and re-verifies the old entries.
CoeffStream extend (const CoeffStream& stream, int new_max_index, Precision prec, CoeffCache* cache = nullptr);

/// On-disk coefficient cache: one JSON-lines file per (spec hash, precision)
/// plus a sidecar JSON with the spec and metadata.
class CoeffCache {
  public:
	explicit CoeffCache (std::filesystem::path dir);

	const std::filesystem::path& dir () const { return dir_; }
	std::filesystem::path data_path (const FunctionSpec& spec, Precision bits) const;
	std::filesystem::path sidecar_path (const FunctionSpec& spec, Precision bits) const;

	std::optional<CoeffStream> load (const FunctionSpec& spec, Precision bits) const;
	void store (const CoeffStream& stream) const;
	/// Cached stream when it already covers max_index, otherwise generated
	/// (or extended from a shorter cached stream) and written back.
	CoeffStream load_or_generate (const FunctionSpec& spec, int max_index, Precision bits);

	/// $MUSPEC_CACHE_DIR or ./muspec-cache
	static std::filesystem::path default_dir ();

  private:
	std::filesystem::path dir_;
};

} // namespace muspec

#endif // MUSPEC_COEFFS_HPP
