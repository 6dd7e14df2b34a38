#include "muspec/hashing.hpp"
#include "muspec/mpnum.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace muspec {

std::string sha256_hex (std::string_view data) {
	std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
	unsigned char digest[EVP_MAX_MD_SIZE];
	unsigned int len = 0;
	if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
	    EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
	    EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
		throw Error("sha256: digest failed");
	static const char* hex = "0123456789abcdef";
	std::string out;
	out.reserve(2*len);
	for (unsigned int i = 0; i < len; ++i) {
		out += hex[digest[i] >> 4];
		out += hex[digest[i] & 15];
	}
	return out;
}

std::string read_file (const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot open " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string sha256_file (const std::filesystem::path& path) {
	return sha256_hex(read_file(path));
}

void write_file_atomic (const std::filesystem::path& path, std::string_view contents) {
	static std::atomic<unsigned long> counter{0};
	if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
	std::ostringstream tmpname;
	tmpname << path.filename().string() << ".tmp." << ::getpid() << "."
	        << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
	const auto tmp = path.parent_path() / tmpname.str();
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out) throw Error("cannot write " + tmp.string());
		out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
		if (!out) throw Error("short write to " + tmp.string());
	}
	std::error_code ec;
	std::filesystem::rename(tmp, path, ec);
	if (ec) {
		std::filesystem::remove(tmp);
		throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
	}
}

} // namespace muspec
