#include "muspec/coeffs.hpp"
#include "muspec/hashing.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace muspec {

CoeffCache::CoeffCache (fs::path dir) : dir_(std::move(dir)) {}

fs::path CoeffCache::default_dir () {
	if (const char* env = std::getenv("MUSPEC_CACHE_DIR"); env && *env) return fs::path(env);
	return fs::path("muspec-cache");
}

fs::path CoeffCache::data_path (const FunctionSpec& spec, Precision bits) const {
	return dir_ / (spec.hash() + "-" + std::to_string(bits) + ".jsonl");
}

fs::path CoeffCache::sidecar_path (const FunctionSpec& spec, Precision bits) const {
	return dir_ / (spec.hash() + "-" + std::to_string(bits) + ".json");
}

std::optional<CoeffStream> CoeffCache::load (const FunctionSpec& spec, Precision bits) const {
	const fs::path data = data_path(spec, bits);
	const fs::path side = sidecar_path(spec, bits);
	if (!fs::exists(data) || !fs::exists(side)) return std::nullopt;

	const nlohmann::json meta = nlohmann::json::parse(read_file(side));
	if (meta.at("spec_hash").get<std::string>() != spec.hash())
		throw CacheCorruptionError("cache sidecar " + side.string() + " records a different spec hash");
	if (meta.at("bits").get<long>() != bits)
		throw CacheCorruptionError("cache sidecar " + side.string() + " records a different precision");

	CoeffStream s;
	s.spec = spec;
	s.precision_bits = bits;
	s.max_index = meta.at("max_index").get<int>();
	s.provenance = meta.value("provenance", std::string());
	s.error_scale = BigReal::from_string(meta.at("error_scale").get<std::string>(), bits);

	std::istringstream in(read_file(data));
	std::string line;
	int expected = 0;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		const nlohmann::json rec = nlohmann::json::parse(line);
		if (rec.at("k").get<int>() != expected || rec.at("bits").get<long>() != bits)
			throw CacheCorruptionError("cache file " + data.string() + " has an out-of-sequence record at k=" + std::to_string(expected));
		s.values.push_back(BigReal::from_string(rec.at("v").get<std::string>(), bits));
		++expected;
	}
	if (expected != s.max_index + 1)
		throw CacheCorruptionError("cache file " + data.string() + " holds " + std::to_string(expected) +
			" records, sidecar promises " + std::to_string(s.max_index + 1));
	return s;
}

void CoeffCache::store (const CoeffStream& stream) const {
	std::ostringstream out;
	for (int k = 0; k <= stream.max_index; ++k) {
		nlohmann::json rec;
		rec["k"] = k;
		rec["v"] = stream.values[static_cast<std::size_t>(k)].to_string();
		rec["bits"] = stream.precision_bits;
		out << rec.dump() << "\n";
	}
	nlohmann::json meta;
	meta["spec_hash"] = stream.spec.hash();
	meta["spec"] = stream.spec.to_json();
	meta["bits"] = stream.precision_bits;
	meta["max_index"] = stream.max_index;
	meta["error_scale"] = stream.error_scale.to_string();
	meta["provenance"] = stream.provenance;
	// data first: a reader only trusts the data file through the sidecar count
	write_file_atomic(data_path(stream.spec, stream.precision_bits), out.str());
	write_file_atomic(sidecar_path(stream.spec, stream.precision_bits), meta.dump(2) + "\n");
}

CoeffStream CoeffCache::load_or_generate (const FunctionSpec& spec, int max_index, Precision bits) {
	std::optional<CoeffStream> cached = load(spec, bits);
	if (cached && cached->max_index >= max_index) return std::move(*cached);
	CoeffStream fresh = cached ? extend(*cached, max_index, bits, nullptr) : generate(spec, max_index, bits);
	store(fresh);
	return fresh;
}

} // namespace muspec
