#include "hexns/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "hexns/error.hpp"

namespace hexns {

namespace {

constexpr unsigned char kMagic[5] = {'H', 'E', 'X', 'N', 'S'};
constexpr unsigned char kVersion = 1;
constexpr std::size_t kHeader = 6 + 4 + 6 * 8;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

}  // namespace

std::vector<unsigned char> encode_checkpoint(const FlowState& s) {
    std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
    out.reserve(kHeader + 8 * s.omega.size());
    out.push_back(kVersion);
    put_u32(out, static_cast<std::uint32_t>(s.omega.n));
    put_f64(out, s.omega.box);
    put_f64(out, s.time);
    put_f64(out, s.dissipation_accum);
    put_f64(out, s.flux.a);
    put_f64(out, s.flux.b);
    put_f64(out, s.flux.d);
    for (double v : s.omega.values) put_f64(out, v);
    return out;
}

FlowState decode_checkpoint(const std::vector<unsigned char>& bytes) {
    using K = CheckpointError::Kind;
    const std::size_t head = std::min<std::size_t>(bytes.size(), 5);
    if (head == 0 || std::memcmp(bytes.data(), kMagic, head) != 0)
        throw CheckpointError(K::Magic, "not a checkpoint: bad magic bytes");
    if (bytes.size() < 6) throw CheckpointError(K::Truncated, "checkpoint truncated in header");
    if (bytes[5] != kVersion)
        throw CheckpointError(K::Version, "unsupported checkpoint version " + std::to_string(bytes[5]));
    if (bytes.size() < kHeader) throw CheckpointError(K::Truncated, "checkpoint truncated in header");
    const unsigned char* p = bytes.data() + 6;
    const std::uint32_t n = get_u32(p);
    p += 4;
    if (n < 4 || n > 65536 || (n & (n - 1)) != 0)
        throw CheckpointError(K::Magic, "checkpoint grid size is not a power of 2");
    const double box = get_f64(p);
    const std::size_t expected = kHeader + 8ull * n * n;
    if (bytes.size() < expected) throw CheckpointError(K::Truncated, "checkpoint truncated in field data");
    if (bytes.size() > expected) throw CheckpointError(K::Trailing, "checkpoint has trailing bytes");
    FlowState s;
    s.omega = GridScalarField(static_cast<int>(n), box);
    s.time = get_f64(p + 8);
    s.dissipation_accum = get_f64(p + 16);
    s.flux.a = get_f64(p + 24);
    s.flux.b = get_f64(p + 32);
    s.flux.d = get_f64(p + 40);
    p += 48;
    for (auto& v : s.omega.values) {
        v = get_f64(p);
        p += 8;
    }
    const FlowState fresh = initial_state(s.omega);
    s.flux.da = fresh.flux.da;
    s.flux.db = fresh.flux.db;
    s.flux.dd = fresh.flux.dd;
    return s;
}

void write_checkpoint(const FlowState& s, const std::string& path) {
    const auto bytes = encode_checkpoint(s);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw CheckpointError(CheckpointError::Kind::Io, "cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw CheckpointError(CheckpointError::Kind::Io, "write failed for " + path);
}

FlowState read_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CheckpointError(CheckpointError::Kind::Io, "cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

}  // namespace hexns
