#include "muspec/coeffs.hpp"
#include "muspec/hashing.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace muspec {

namespace {

const char* family_name (BuiltinFamily f) {
	switch (f) {
		case BuiltinFamily::geometric: return "geometric";
		case BuiltinFamily::exponential: return "exponential";
		case BuiltinFamily::rational2: return "rational2";
		case BuiltinFamily::catalan: return "catalan";
		case BuiltinFamily::user_moments: return "moments";
	}
	return "?";
}

BuiltinFamily family_from_name (const std::string& s) {
	if (s == "geometric") return BuiltinFamily::geometric;
	if (s == "exponential") return BuiltinFamily::exponential;
	if (s == "rational2") return BuiltinFamily::rational2;
	if (s == "catalan") return BuiltinFamily::catalan;
	if (s == "moments" || s == "user-moments") return BuiltinFamily::user_moments;
	throw Error("unknown builtin family '" + s + "'");
}

std::vector<std::string> split (const std::string& s, char sep) {
	std::vector<std::string> out;
	std::string cur;
	std::istringstream in(s);
	while (std::getline(in, cur, sep)) out.push_back(cur);
	if (!s.empty() && s.back() == sep) out.emplace_back();
	return out;
}

// Rejects non-numeric parameters early so bad specs never reach the cache.
void check_decimal (const std::string& s) {
	(void)BigReal::from_string(s, 64);
}

// An analytic generator: f(s) at working precision plus the radius of the
// largest disc around s0 on which f is analytic (infinity for entire f).
struct Generator {
	std::function<BigComplex (const BigComplex&, Precision)> eval;
	std::function<double (const BigComplex& s0)> radius;
	bool real_on_real_axis = true;
};

double distance_to_one (const BigComplex& s0) {
	return std::hypot(s0.re().to_double() - 1.0, s0.im().to_double());
}

BigComplex complex_one (Precision p) { return BigComplex(BigReal(1L, p), BigReal(p)); }

Generator zeta_star_generator (const std::string& pole_removal) {
	const double inf = std::numeric_limits<double>::infinity();
	if (pole_removal.empty() || pole_removal == "(s-1)*zeta(s)") {
		return {[](const BigComplex& s, Precision p) {
			const BigComplex sm1 = s - complex_one(p);
			if (sm1.abs().is_zero()) return complex_one(p);
			return sm1 * zeta_em(s, p);
		}, [inf](const BigComplex&) { return inf; }};
	}
	if (pole_removal == "zeta(s)-1/(s-1)") {
		return {[](const BigComplex& s, Precision p) {
			const BigComplex sm1 = s - complex_one(p);
			// removable point: the limit is Euler's constant
			if (sm1.abs().is_zero()) return BigComplex(BigReal::euler_gamma(p), BigReal(p));
			return zeta_em(s, p) - complex_one(p) / sm1;
		}, [inf](const BigComplex&) { return inf; }};
	}
	if (pole_removal == "xi(s)") {
		// xi(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s)
		return {[](const BigComplex& s, Precision p) {
			const BigComplex half_s = scale(s, BigReal(0.5, p));
			BigComplex r = scale(s * (s - complex_one(p)), BigReal(0.5, p));
			r *= exp(scale(-half_s, log(BigReal::pi(p))));
			r *= gamma_complex(half_s, p);
			return r * zeta_em(s, p);
		}, [inf](const BigComplex&) { return inf; }};
	}
	if (pole_removal == "none") {
		return {[](const BigComplex& s, Precision p) { return zeta_em(s, p); }, distance_to_one};
	}
	throw Error("unknown pole_removal expression '" + pole_removal + "'");
}

Generator find_generator (const FunctionSpec& spec) {
	const double inf = std::numeric_limits<double>::infinity();
	if (spec.generator_id == "zeta-star") return zeta_star_generator(spec.pole_removal);
	if (spec.generator_id == "one-over-one-minus-z") {
		return {[](const BigComplex& z, Precision p) { return complex_one(p) / (complex_one(p) - z); }, distance_to_one};
	}
	if (spec.generator_id == "exp") {
		return {[](const BigComplex& z, Precision) { return exp(z); }, [inf](const BigComplex&) { return inf; }};
	}
	throw Error("unknown generator_id '" + spec.generator_id + "'");
}

std::vector<BigReal> builtin_values (const FunctionSpec& spec, int n, Precision prec) {
	std::vector<BigReal> v;
	v.reserve(static_cast<std::size_t>(n) + 1);
	const auto& p = spec.params;
	switch (spec.family) {
		case BuiltinFamily::geometric: {
			const BigReal r = BigReal::from_string(p.at(0), prec + 64);
			for (int k = 0; k <= n; ++k) v.emplace_back(pow(r, static_cast<long>(k)), prec);
			break;
		}
		case BuiltinFamily::exponential: {
			BigReal fact(1L, prec + 64);
			for (int k = 0; k <= n; ++k) {
				if (k > 0) mpfr_mul_ui(fact.get(), fact.get(), static_cast<unsigned long>(k), MPFR_RNDN);
				BigReal x(prec);
				mpfr_ui_div(x.get(), 1, fact.get(), MPFR_RNDN);
				v.push_back(std::move(x));
			}
			break;
		}
		case BuiltinFamily::rational2: {
			const Precision wp = prec + 64;
			const BigReal a = BigReal::from_string(p.at(0), wp);
			const BigReal b = BigReal::from_string(p.at(1), wp);
			for (int k = 0; k <= n; ++k) {
				if (a == b) v.emplace_back(BigReal(static_cast<long>(k + 1), wp) * pow(a, static_cast<long>(k)), prec);
				else v.emplace_back((pow(a, static_cast<long>(k + 1)) - pow(b, static_cast<long>(k + 1))) / (a - b), prec);
			}
			break;
		}
		case BuiltinFamily::catalan: {
			for (int k = 0; k <= n; ++k) {
				mpz_class c;
				mpz_bin_uiui(c.get_mpz_t(), 2*static_cast<unsigned long>(k), static_cast<unsigned long>(k));
				c /= (k + 1);
				BigReal x(prec);
				mpfr_set_z(x.get(), c.get_mpz_t(), MPFR_RNDN);
				v.push_back(std::move(x));
			}
			break;
		}
		case BuiltinFamily::user_moments: {
			if (n >= static_cast<int>(p.size()))
				throw Error("moments: only " + std::to_string(p.size()) + " values supplied, index " + std::to_string(n) + " requested");
			for (int k = 0; k <= n; ++k) v.push_back(BigReal::from_string(p[static_cast<std::size_t>(k)], prec));
			break;
		}
	}
	return v;
}

// Cauchy coefficients by the trapezoidal rule on |s - s0| = r with nq nodes,
// using every (stride)-th entry of the sampled values f_j.
std::vector<BigComplex> ring_coefficients (const std::vector<BigComplex>& samples, std::size_t stride,
                                           const std::vector<BigComplex>& roots, int n, const BigReal& r, Precision wp) {
	const std::size_t total = samples.size();
	const std::size_t nq = total / stride;
	std::vector<BigComplex> out;
	out.reserve(static_cast<std::size_t>(n) + 1);
	BigReal r_pow(1L, wp);
	const BigReal inv_nq = BigReal(1L, wp) / BigReal(static_cast<long>(nq), wp);
	BigReal t1(wp), t2(wp);
	for (int k = 0; k <= n; ++k) {
		BigComplex acc(wp);
		for (std::size_t j = 0; j < nq; ++j) {
			// exp(-2 pi i j k / nq) is roots[total - (j k stride mod total)]
			const std::size_t idx = (j * static_cast<std::size_t>(k) * stride) % total;
			const BigComplex& w = roots[idx == 0 ? 0 : total - idx];
			const BigComplex& f = samples[j * stride];
			mpfr_mul(t1.get(), f.re().get(), w.re().get(), MPFR_RNDN);
			mpfr_mul(t2.get(), f.im().get(), w.im().get(), MPFR_RNDN);
			mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
			mpfr_add(acc.re().get(), acc.re().get(), t1.get(), MPFR_RNDN);
			mpfr_mul(t1.get(), f.re().get(), w.im().get(), MPFR_RNDN);
			mpfr_mul(t2.get(), f.im().get(), w.re().get(), MPFR_RNDN);
			mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
			mpfr_add(acc.im().get(), acc.im().get(), t1.get(), MPFR_RNDN);
		}
		out.push_back(scale(acc, inv_nq / r_pow));
		r_pow *= r;
	}
	return out;
}

CoeffStream generate_analytic (const FunctionSpec& spec, int n, Precision prec) {
	const Generator gen = find_generator(spec);
	const Precision wp = prec + 64;
	const BigComplex s0(BigReal::from_string(spec.s0_re, wp), BigReal::from_string(spec.s0_im, wp));
	const BigReal r = BigReal::from_string(spec.ring_radius, wp);
	if (r.sign() <= 0) throw Error("ring_radius must be positive");
	const double disc = gen.radius(s0);
	if (!(r.to_double() < disc))
		throw Error("ring_radius " + spec.ring_radius + " is not inside the analyticity disc (radius " + std::to_string(disc) + ") of " + spec.generator_id);

	const bool mirror = gen.real_on_real_axis && s0.im().is_zero();
	const BigReal two_pi = BigReal::pi(wp) * BigReal(2L, wp);
	const BigReal tol_factor = BigReal::two_pow(-static_cast<long>(prec / 2), wp);

	std::size_t nq = 8 * (static_cast<std::size_t>(n) + 1);
	constexpr int kMaxDoublings = 6;
	for (int attempt = 0; attempt <= kMaxDoublings; ++attempt) {
		// sample on 2 nq nodes; the nq-node rule uses the even ones
		const std::size_t total = 2 * nq;
		std::vector<BigComplex> roots;
		roots.reserve(total);
		for (std::size_t j = 0; j < total; ++j)
			roots.push_back(unit_root(two_pi * BigReal(static_cast<long>(j), wp) / BigReal(static_cast<long>(total), wp)));
		std::vector<BigComplex> samples(total, BigComplex(wp));
		const std::size_t half = total / 2;
		for (std::size_t j = 0; j < total; ++j) {
			if (mirror && j > half) {
				samples[j] = samples[total - j].conj();
				continue;
			}
			samples[j] = gen.eval(s0 + scale(roots[j], r), wp);
		}
		BigReal max_abs(wp);
		for (const auto& f : samples) max_abs = std::max(max_abs, f.abs());

		const auto coarse = ring_coefficients(samples, 2, roots, n, r, wp);
		const auto fine = ring_coefficients(samples, 1, roots, n, r, wp);
		int failing = -1;
		BigReal r_pow(1L, wp);
		for (int k = 0; k <= n && failing < 0; ++k) {
			const BigReal diff = (coarse[static_cast<std::size_t>(k)] - fine[static_cast<std::size_t>(k)]).abs();
			if (diff * r_pow > tol_factor * max_abs) failing = k;
			r_pow *= r;
		}
		if (failing < 0) {
			CoeffStream out;
			out.spec = spec;
			out.max_index = n;
			out.precision_bits = prec;
			out.error_scale = BigReal(max_abs, prec);
			for (const auto& c : fine) out.values.emplace_back(c.re(), prec);
			std::ostringstream prov;
			prov << "analytic: generator=" << spec.generator_id;
			if (!spec.pole_removal.empty()) prov << " pole_removal=" << spec.pole_removal;
			prov << " s0=" << spec.s0_re << (spec.s0_im == "0" ? "" : "+i*" + spec.s0_im)
			     << " r=" << spec.ring_radius << " nodes=" << total
			     << " validated against " << nq << " nodes to " << prec / 2 << " bits";
			if (spec.placeholder())
				prov << "; PLACEHOLDER zeta-star definition, not the intended expansion";
			out.provenance = prov.str();
			return out;
		}
		if (attempt == kMaxDoublings)
			throw Error("quadrature did not converge for " + spec.name + ": theta_" + std::to_string(failing) +
				" still disagrees after " + std::to_string(kMaxDoublings) + " node doublings");
		nq *= 2;
	}
	throw Error("unreachable");
}

} // namespace

// ---------------------------------------------------------------------------

std::string FunctionSpec::canonical () const {
	std::ostringstream s;
	if (kind == FunctionKind::builtin) {
		s << "builtin;" << family_name(family) << ";";
		for (std::size_t i = 0; i < params.size(); ++i) s << (i ? "," : "") << params[i];
	} else {
		s << "analytic;" << generator_id << ";s0=" << s0_re << "," << s0_im << ";pole=" << pole_removal
		  << ";r=" << ring_radius << ";transcribed=" << (transcribed ? 1 : 0);
	}
	return s.str();
}

std::string FunctionSpec::hash () const { return sha256_hex(canonical()); }

nlohmann::json FunctionSpec::to_json () const {
	nlohmann::json j;
	j["name"] = name;
	if (kind == FunctionKind::builtin) {
		j["kind"] = "builtin";
		j["family"] = family_name(family);
		j["params"] = params;
	} else {
		j["kind"] = "analytic";
		j["generator_id"] = generator_id;
		j["expansion_point"] = {{"re", s0_re}, {"im", s0_im}};
		j["pole_removal"] = pole_removal;
		j["ring_radius"] = ring_radius;
		j["transcribed"] = transcribed;
	}
	return j;
}

FunctionSpec FunctionSpec::from_json (const nlohmann::json& j) {
	FunctionSpec s;
	const std::string kind = j.at("kind").get<std::string>();
	if (kind == "builtin") {
		s.kind = FunctionKind::builtin;
		s.family = family_from_name(j.at("family").get<std::string>());
		s.params = j.value("params", std::vector<std::string>{});
		for (const auto& p : s.params) check_decimal(p);
	} else if (kind == "analytic") {
		s.kind = FunctionKind::analytic;
		s.generator_id = j.at("generator_id").get<std::string>();
		if (j.contains("expansion_point")) {
			s.s0_re = j["expansion_point"].value("re", std::string("0"));
			s.s0_im = j["expansion_point"].value("im", std::string("0"));
		}
		s.pole_removal = j.value("pole_removal", std::string());
		s.ring_radius = j.value("ring_radius", std::string("1"));
		s.transcribed = j.value("transcribed", false);
		check_decimal(s.s0_re);
		check_decimal(s.s0_im);
		check_decimal(s.ring_radius);
		(void)find_generator(s);
	} else {
		throw Error("unknown function kind '" + kind + "'");
	}
	s.name = j.value("name", s.generator_id.empty() ? std::string(family_name(s.family)) : s.generator_id);
	return s;
}

FunctionSpec FunctionSpec::geometric (const std::string& ratio) {
	check_decimal(ratio);
	FunctionSpec s;
	s.name = "geometric:" + ratio;
	s.family = BuiltinFamily::geometric;
	s.params = {ratio};
	return s;
}

FunctionSpec FunctionSpec::exponential () {
	FunctionSpec s;
	s.name = "exponential";
	s.family = BuiltinFamily::exponential;
	return s;
}

FunctionSpec FunctionSpec::rational2 (const std::string& a, const std::string& b) {
	check_decimal(a);
	check_decimal(b);
	FunctionSpec s;
	s.name = "rational2:" + a + "," + b;
	s.family = BuiltinFamily::rational2;
	s.params = {a, b};
	return s;
}

FunctionSpec FunctionSpec::catalan () {
	FunctionSpec s;
	s.name = "catalan";
	s.family = BuiltinFamily::catalan;
	return s;
}

FunctionSpec FunctionSpec::user_moments (const std::vector<std::string>& values) {
	if (values.empty()) throw Error("moments: at least one value required");
	for (const auto& v : values) check_decimal(v);
	FunctionSpec s;
	s.name = "moments";
	s.family = BuiltinFamily::user_moments;
	s.params = values;
	return s;
}

FunctionSpec FunctionSpec::analytic (const std::string& generator, const std::string& radius,
                                     const std::string& pole_removal, const std::string& s0) {
	check_decimal(radius);
	check_decimal(s0);
	FunctionSpec s;
	s.name = generator;
	s.kind = FunctionKind::analytic;
	s.generator_id = generator;
	s.ring_radius = radius;
	s.pole_removal = pole_removal;
	s.s0_re = s0;
	(void)find_generator(s);
	return s;
}

FunctionSpec FunctionSpec::zeta_star_default () {
	return analytic("zeta-star", "1", "(s-1)*zeta(s)", "0");
}

FunctionSpec FunctionSpec::parse (const std::string& text) {
	if (text.empty()) throw Error("empty function spec");
	if (text[0] == '@') return from_json(nlohmann::json::parse(read_file(text.substr(1))));
	const auto colon = text.find(':');
	const std::string head = text.substr(0, colon);
	const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
	if (head == "geometric") return geometric(rest.empty() ? "1" : rest);
	if (head == "exponential") return exponential();
	if (head == "catalan") return catalan();
	if (head == "rational2") {
		const auto ab = split(rest, ',');
		if (ab.size() != 2) throw Error("rational2 expects two parameters: rational2:A,B");
		return rational2(ab[0], ab[1]);
	}
	if (head == "moments" || head == "user-moments") return user_moments(split(rest, ','));
	if (head == "zeta-star" && rest.empty()) return zeta_star_default();
	if (head == "analytic" || head == "zeta-star") {
		auto parts = split(rest, ':');
		std::string gen = head == "zeta-star" ? "zeta-star" : "";
		std::string r = "1", s0 = "0", pole = head == "zeta-star" ? "(s-1)*zeta(s)" : "";
		for (const auto& part : parts) {
			if (part.rfind("r=", 0) == 0) r = part.substr(2);
			else if (part.rfind("s0=", 0) == 0) s0 = part.substr(3);
			else if (part.rfind("pole=", 0) == 0) pole = part.substr(5);
			else if (gen.empty()) gen = part;
			else throw Error("unrecognised analytic option '" + part + "'");
		}
		if (gen.empty()) throw Error("analytic spec needs a generator id");
		return analytic(gen, r, pole, s0);
	}
	throw Error("unknown function '" + text + "'");
}

// ---------------------------------------------------------------------------

CoeffStream generate (const FunctionSpec& spec, int max_index, Precision prec) {
	widen_exponent_range();
	if (max_index < 0) throw Error("generate: max_index must be non-negative");
	if (prec < BigReal::kMinPrecision) throw Error("generate: precision below 64 bits");
	if (spec.kind == FunctionKind::analytic) return generate_analytic(spec, max_index, prec);

	CoeffStream out;
	out.spec = spec;
	out.max_index = max_index;
	out.precision_bits = prec;
	out.values = builtin_values(spec, max_index, prec);
	out.error_scale = BigReal(prec);
	out.provenance = std::string("builtin closed form: ") + family_name(spec.family);
	if (!spec.params.empty()) {
		out.provenance += "(";
		for (std::size_t i = 0; i < spec.params.size() && i < 8; ++i) out.provenance += (i ? "," : "") + spec.params[i];
		out.provenance += spec.params.size() > 8 ? ",...)" : ")";
	}
	return out;
}

BigReal theta (const CoeffStream& stream, int k) {
	if (k < 0) return BigReal(std::max<Precision>(stream.precision_bits, BigReal::kMinPrecision));
	if (k > stream.max_index)
		throw Error("theta_" + std::to_string(k) + " is beyond the stream (max index " + std::to_string(stream.max_index) +
			"); extend the stream first");
	return stream.values[static_cast<std::size_t>(k)];
}

BigReal agreement_tolerance (const CoeffStream& stream, int k) {
	const Precision p = stream.precision_bits;
	if (stream.spec.kind == FunctionKind::builtin)
		return abs(theta(stream, k)) * BigReal::two_pow(-(static_cast<long>(p) - 2), p);
	const BigReal r = BigReal::from_string(stream.spec.ring_radius, p);
	return stream.error_scale / pow(r, static_cast<long>(k)) * BigReal::two_pow(-static_cast<long>(p / 2), p);
}

CoeffStream extend (const CoeffStream& stream, int new_max_index, Precision prec, CoeffCache* cache) {
	if (new_max_index <= stream.max_index && prec <= stream.precision_bits)
		throw Error("extend: nothing to do, request does not exceed the stream");
	const int n = std::max(new_max_index, stream.max_index);
	const Precision bits = std::max(prec, stream.precision_bits);
	CoeffStream fresh = cache ? cache->load_or_generate(stream.spec, n, bits) : generate(stream.spec, n, bits);
	for (int k = 0; k <= stream.max_index; ++k) {
		const BigReal diff = abs(theta(fresh, k) - theta(stream, k));
		const BigReal tol = std::max(agreement_tolerance(stream, k), agreement_tolerance(fresh, k));
		if (diff > tol)
			throw CacheCorruptionError("extend: theta_" + std::to_string(k) + " of " + stream.spec.name +
				" changed by " + diff.to_string(6) + " (tolerance " + tol.to_string(6) + ")");
	}
	return fresh;
}

} // namespace muspec
