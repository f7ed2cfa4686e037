#pragma once

#include "jacaranda/tree_prefix.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacaranda {

// SBTR tree cache layout:
//   "SBTR" | version u8 = 1 | depth u32 little-endian |
//   ceil((2^depth - 1) / 8) bytes of level-order bits, MSB first, zero padded.

inline constexpr std::uint8_t kSbtrVersion = 1;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Level-order bits packed MSB first (the SBTR payload).
std::vector<std::uint8_t> pack_bits(const TreePrefix& t);
TreePrefix unpack_bits(int depth, std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_sbtr(const TreePrefix& t);
TreePrefix decode_sbtr(std::span<const std::uint8_t> bytes);

void write_sbtr(const std::filesystem::path& path, const TreePrefix& t);
TreePrefix read_sbtr(const std::filesystem::path& path);

/// Compact text form "<depth>:<hex payload>" used in JSON documents.
std::string patch_to_hex(const TreePrefix& t);
TreePrefix patch_from_hex(std::string_view text);

}  // namespace jacaranda
