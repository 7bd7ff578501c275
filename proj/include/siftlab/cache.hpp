#pragma once

// Prime-table cache file:
//   magic "SFPG" | version u32 LE (= 1) | limit u64 LE |
//   payload ceil((limit+1)/8) bytes, bit j of byte i = primality of 8i + j |
//   crc32 u32 LE of the payload (IEEE polynomial).

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "siftlab/prime_table.hpp"

namespace siftlab {

enum class CacheStatus { ok, io_error, bad_magic, bad_version, bad_crc, short_payload };

class CacheError : public std::runtime_error {
public:
    CacheError(CacheStatus s, const std::string& what) : std::runtime_error(what), status_(s) {}
    CacheStatus status() const { return status_; }

private:
    CacheStatus status_;
};

inline u32 crc32_ieee(const u8* data, size_t len, u32 crc = 0) {
    static const std::array<u32, 256> table = [] {
        std::array<u32, 256> t{};
        for (u32 i = 0; i < 256; ++i) {
            u32 c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    crc = ~crc;
    for (size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
    return ~crc;
}

namespace detail {

constexpr char kCacheMagic[4] = {'S', 'F', 'P', 'G'};
constexpr u32 kCacheVersion = 1;

inline void put_le32(std::vector<u8>& out, u32 v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<u8>(v >> (8 * i)));
}

inline void put_le64(std::vector<u8>& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<u8>(v >> (8 * i)));
}

inline u32 get_le32(const u8* p) {
    u32 v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

inline u64 get_le64(const u8* p) {
    u64 v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace detail

inline std::vector<u8> cache_payload(const PrimeTable& table) {
    u64 n_bytes = (table.limit() + 1 + 7) / 8;
    std::vector<u8> payload(n_bytes, 0);
    const auto& words = table.words();
    for (u64 i = 0; i < n_bytes; ++i)
        payload[i] = static_cast<u8>(words[i >> 3] >> (8 * (i & 7)));
    return payload;
}

inline void save_cache(const PrimeTable& table, const std::string& path) {
    std::vector<u8> out;
    out.insert(out.end(), detail::kCacheMagic, detail::kCacheMagic + 4);
    detail::put_le32(out, detail::kCacheVersion);
    detail::put_le64(out, table.limit());
    std::vector<u8> payload = cache_payload(table);
    u32 crc = crc32_ieee(payload.data(), payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
    detail::put_le32(out, crc);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw CacheError(CacheStatus::io_error, "save_cache: cannot open " + path);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw CacheError(CacheStatus::io_error, "save_cache: short write to " + path);
}

inline PrimeTable load_cache(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CacheError(CacheStatus::io_error, "load_cache: cannot open " + path);
    std::vector<u8> raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    if (raw.size() < 16 || std::memcmp(raw.data(), detail::kCacheMagic, 4) != 0)
        throw CacheError(CacheStatus::bad_magic, "load_cache: bad magic");
    u32 version = detail::get_le32(raw.data() + 4);
    if (version != detail::kCacheVersion)
        throw CacheError(CacheStatus::bad_version, "load_cache: unsupported version");
    u64 limit = detail::get_le64(raw.data() + 8);
    u64 n_bytes = (limit + 1 + 7) / 8;
    if (raw.size() < 16 + n_bytes + 4)
        throw CacheError(CacheStatus::short_payload, "load_cache: short payload");

    const u8* payload = raw.data() + 16;
    u32 stored_crc = detail::get_le32(payload + n_bytes);
    u32 crc = crc32_ieee(payload, n_bytes);
    if (crc != stored_crc) throw CacheError(CacheStatus::bad_crc, "load_cache: crc mismatch");

    std::vector<u64> words((limit + 64) >> 6, 0);
    for (u64 i = 0; i < n_bytes; ++i)
        words[i >> 3] |= static_cast<u64>(payload[i]) << (8 * (i & 7));
    // mask bits above limit
    unsigned top = static_cast<unsigned>((limit + 1) & 63);
    if (top) words.back() &= (u64(1) << top) - 1;
    return PrimeTable::from_bits(limit, std::move(words));
}

} // namespace siftlab
