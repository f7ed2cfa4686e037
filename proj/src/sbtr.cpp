#include "jacaranda/sbtr.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>

namespace jacaranda {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'S', 'B', 'T', 'R'};
constexpr std::size_t kHeaderSize = 9;

std::size_t payload_size(int depth) { return (((std::size_t{1} << depth) - 1) + 7) / 8; }

}  // namespace

std::vector<std::uint8_t> pack_bits(const TreePrefix& t) {
    std::vector<std::uint8_t> out(payload_size(t.depth()), 0);
    for (std::size_t i = 0; i < t.node_count(); ++i)
        if (t.at(i)) out[i >> 3] |= static_cast<std::uint8_t>(0x80U >> (i & 7));
    return out;
}

TreePrefix unpack_bits(int depth, std::span<const std::uint8_t> payload) {
    if (depth < 0 || depth > 40) throw FormatError("depth " + std::to_string(depth) + " out of range");
    if (payload.size() != payload_size(depth))
        throw FormatError("payload has " + std::to_string(payload.size()) + " bytes, expected " +
                          std::to_string(payload_size(depth)));
    TreePrefix t(depth);
    const std::size_t n = t.node_count();
    for (std::size_t i = 0; i < n; ++i)
        if (payload[i >> 3] & (0x80U >> (i & 7))) t.set(i, 1);
    const std::size_t used = n & 7;
    if (used != 0 && (payload.back() & (0xFFU >> used)) != 0)
        throw FormatError("nonzero padding bits");
    return t;
}

std::vector<std::uint8_t> encode_sbtr(const TreePrefix& t) {
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    out.push_back(kSbtrVersion);
    const auto d = static_cast<std::uint32_t>(t.depth());
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((d >> (8 * i)) & 0xFFU));
    const auto payload = pack_bits(t);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

TreePrefix decode_sbtr(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) throw FormatError("SBTR file truncated");
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw FormatError("bad SBTR magic");
    if (bytes[4] != kSbtrVersion)
        throw FormatError("unsupported SBTR version " + std::to_string(bytes[4]));
    std::uint32_t depth = 0;
    for (int i = 0; i < 4; ++i) depth |= static_cast<std::uint32_t>(bytes[5 + static_cast<std::size_t>(i)]) << (8 * i);
    if (depth > 40) throw FormatError("SBTR depth " + std::to_string(depth) + " out of range");
    return unpack_bits(static_cast<int>(depth), bytes.subspan(kHeaderSize));
}

void write_sbtr(const std::filesystem::path& path, const TreePrefix& t) {
    const auto bytes = encode_sbtr(t);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

TreePrefix read_sbtr(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_sbtr(bytes);
}

std::string patch_to_hex(const TreePrefix& t) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s = std::to_string(t.depth()) + ":";
    for (std::uint8_t byte : pack_bits(t)) {
        s.push_back(kDigits[byte >> 4]);
        s.push_back(kDigits[byte & 0xF]);
    }
    return s;
}

TreePrefix patch_from_hex(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw FormatError("patch encoding needs '<depth>:<hex>'");
    int depth = 0;
    try {
        depth = std::stoi(std::string(text.substr(0, colon)));
    } catch (const std::exception&) {
        throw FormatError("bad patch depth in '" + std::string(text) + "'");
    }
    const auto hex = text.substr(colon + 1);
    if (hex.size() % 2 != 0) throw FormatError("odd hex length");
    auto nibble = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw FormatError("bad hex digit");
    };
    std::vector<std::uint8_t> payload;
    payload.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        payload.push_back(static_cast<std::uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    return unpack_bits(depth, payload);
}

}  // namespace jacaranda
