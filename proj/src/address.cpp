#include "jacaranda/address.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacaranda {

Address Address::parse(std::string_view word) {
    if (word == "e") return {};
    std::vector<Letter> letters;
    letters.reserve(word.size());
    for (char c : word) {
        if (c == 'a')
            letters.push_back(Letter::a);
        else if (c == 'b')
            letters.push_back(Letter::b);
        else
            throw std::invalid_argument("address letter must be 'a' or 'b', got '" +
                                        std::string(1, c) + "'");
    }
    return Address(std::move(letters));
}

Address Address::from_index(int length, std::uint64_t index) {
    if (length < 0 || length > 63) throw std::invalid_argument("address length out of range");
    std::vector<Letter> letters(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        letters[static_cast<std::size_t>(i)] = (index & 1U) ? Letter::b : Letter::a;
        index >>= 1;
    }
    return Address(std::move(letters));
}

Address Address::repeat(Letter l, int count) {
    return Address(std::vector<Letter>(static_cast<std::size_t>(count), l));
}

std::uint64_t Address::level_index() const {
    if (letters_.size() > 63) throw std::out_of_range("address too long for index arithmetic");
    std::uint64_t idx = 0;
    for (Letter l : letters_) idx = (idx << 1) | static_cast<std::uint64_t>(l);
    return idx;
}

std::uint64_t Address::node_index() const {
    return ((std::uint64_t{1} << letters_.size()) - 1) + level_index();
}

Address Address::prefix(int count) const {
    if (count < 0 || count > length()) throw std::out_of_range("prefix length");
    return Address(std::vector<Letter>(letters_.begin(), letters_.begin() + count));
}

Address Address::suffix(int count) const {
    if (count < 0 || count > length()) throw std::out_of_range("suffix length");
    return Address(std::vector<Letter>(letters_.end() - count, letters_.end()));
}

Address Address::rotate_left() const {
    Address out = *this;
    if (!out.letters_.empty())
        std::rotate(out.letters_.begin(), out.letters_.begin() + 1, out.letters_.end());
    return out;
}

std::string Address::to_string() const {
    if (letters_.empty()) return "e";
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(to_char(l));
    return s;
}

Address operator+(const Address& u, const Address& v) {
    Address out = u;
    out.letters_.insert(out.letters_.end(), v.letters_.begin(), v.letters_.end());
    return out;
}

std::strong_ordering operator<=>(const Address& u, const Address& v) {
    if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) return c;
    for (std::size_t i = 0; i < u.letters_.size(); ++i)
        if (auto c = u.letters_[i] <=> v.letters_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::vector<Address> words_of_length(int length) {
    std::vector<Address> out;
    const std::uint64_t count = std::uint64_t{1} << length;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(Address::from_index(length, i));
    return out;
}

}  // namespace jacaranda
