#pragma once

// Index arithmetic for the discrete semigroups carrying the convolution
// algebras: (N0, +), the free commutative monoid of finitely supported
// multi-indices, and the free monoid of words over the positive integers.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace gradalg {

enum class SemigroupKind { Nat, MultiIndex, Word };

inline std::string_view to_string(SemigroupKind k) {
  switch (k) {
  case SemigroupKind::Nat:
    return "nat";
  case SemigroupKind::MultiIndex:
    return "multi-index";
  case SemigroupKind::Word:
    return "word";
  }
  return "?";
}

/// A non-negative integer under addition.
struct Nat {
  std::uint64_t n = 0;
  friend auto operator<=>(const Nat&, const Nat&) = default;
};

/// A finitely supported map generator -> positive exponent.
///
/// Stored as (generator, exponent) pairs sorted by generator with no zero
/// exponents; the empty map is the identity.
class MultiIndex {
public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;

  /// Builds from arbitrary (generator, exponent) pairs: merges duplicates and
  /// drops zero exponents. Generators must be positive.
  explicit MultiIndex(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    for (const auto& [gen, exp] : entries) {
      if (gen == 0) {
        throw ParseError("multi-index generators are positive integers");
      }
      if (exp == 0) {
        continue;
      }
      if (!entries_.empty() && entries_.back().first == gen) {
        entries_.back().second += exp;
      } else {
        entries_.emplace_back(gen, exp);
      }
    }
  }

  MultiIndex(std::initializer_list<Entry> entries) : MultiIndex(std::vector<Entry>(entries)) {}

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  [[nodiscard]] std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (const auto& e : entries_) {
      d += e.second;
    }
    return d;
  }

  [[nodiscard]] std::uint32_t exponent(std::uint32_t gen) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{gen, 0});
    return (it != entries_.end() && it->first == gen) ? it->second : 0;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
  friend MultiIndex add(const MultiIndex& a, const MultiIndex& b);
  struct Trusted {};
  MultiIndex(Trusted, std::vector<Entry> sorted) : entries_(std::move(sorted)) {}

  std::vector<Entry> entries_;
};

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  std::vector<MultiIndex::Entry> out;
  out.reserve(a.entries_.size() + b.entries_.size());
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() || j != b.entries_.end()) {
    if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.entries_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return MultiIndex(MultiIndex::Trusted{}, std::move(out));
}

/// A finite sequence of positive integers under concatenation.
struct Word {
  std::vector<std::uint32_t> letters;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// A point of one of the three discrete semigroups.
class SemigroupIndex {
public:
  using Storage = std::variant<Nat, MultiIndex, Word>;

  SemigroupIndex() = default;
  SemigroupIndex(Nat n) : v_(n) {}
  SemigroupIndex(MultiIndex m) : v_(std::move(m)) {}
  SemigroupIndex(Word w) : v_(std::move(w)) {}

  static SemigroupIndex nat(std::uint64_t n) { return Nat{n}; }
  static SemigroupIndex multi(std::initializer_list<MultiIndex::Entry> e) { return MultiIndex(e); }
  static SemigroupIndex word(std::vector<std::uint32_t> letters) { return Word{std::move(letters)}; }
  static SemigroupIndex identity(SemigroupKind k) {
    switch (k) {
    case SemigroupKind::Nat:
      return Nat{0};
    case SemigroupKind::MultiIndex:
      return MultiIndex{};
    case SemigroupKind::Word:
      return Word{};
    }
    return {};
  }

  [[nodiscard]] SemigroupKind kind() const noexcept { return static_cast<SemigroupKind>(v_.index()); }
  [[nodiscard]] const Storage& storage() const noexcept { return v_; }

  template <class T>
  [[nodiscard]] const T& as() const {
    return std::get<T>(v_);
  }

  [[nodiscard]] bool is_identity() const noexcept {
    return std::visit(
        [](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Nat>) {
            return x.n == 0;
          } else if constexpr (std::is_same_v<T, MultiIndex>) {
            return x.empty();
          } else {
            return x.letters.empty();
          }
        },
        v_);
  }

  /// Nat value, multi-index degree, or word length.
  [[nodiscard]] std::uint64_t size() const noexcept {
    return std::visit(
        [](const auto& x) -> std::uint64_t {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Nat>) {
            return x.n;
          } else if constexpr (std::is_same_v<T, MultiIndex>) {
            return x.degree();
          } else {
            return x.letters.size();
          }
        },
        v_);
  }

  friend auto operator<=>(const SemigroupIndex&, const SemigroupIndex&) = default;
  friend bool operator==(const SemigroupIndex&, const SemigroupIndex&) = default;

private:
  Storage v_;
};

/// The semigroup operation: addition, componentwise addition or concatenation.
inline SemigroupIndex compose(const SemigroupIndex& x, const SemigroupIndex& y) {
  if (x.kind() != y.kind()) {
    throw VariantMismatch("compose: cannot combine " + std::string(to_string(x.kind())) + " with " +
                          std::string(to_string(y.kind())));
  }
  switch (x.kind()) {
  case SemigroupKind::Nat:
    return Nat{x.as<Nat>().n + y.as<Nat>().n};
  case SemigroupKind::MultiIndex:
    return add(x.as<MultiIndex>(), y.as<MultiIndex>());
  case SemigroupKind::Word: {
    Word w = x.as<Word>();
    const auto& tail = y.as<Word>().letters;
    w.letters.insert(w.letters.end(), tail.begin(), tail.end());
    return w;
  }
  }
  return {};
}

namespace detail {

inline void sub_multi_indices(const std::vector<MultiIndex::Entry>& alpha, std::size_t pos,
                              std::vector<MultiIndex::Entry>& left, std::vector<MultiIndex::Entry>& right,
                              std::vector<std::pair<SemigroupIndex, SemigroupIndex>>& out) {
  if (pos == alpha.size()) {
    out.emplace_back(MultiIndex(left), MultiIndex(right));
    return;
  }
  const auto [gen, exp] = alpha[pos];
  for (std::uint32_t k = 0; k <= exp; ++k) {
    left.emplace_back(gen, k);
    right.emplace_back(gen, exp - k);
    sub_multi_indices(alpha, pos + 1, left, right, out);
    left.pop_back();
    right.pop_back();
  }
}

} // namespace detail

/// All pairs (y, z) with compose(y, z) == x, sorted by the left factor.
inline std::vector<std::pair<SemigroupIndex, SemigroupIndex>> decompositions(const SemigroupIndex& x) {
  std::vector<std::pair<SemigroupIndex, SemigroupIndex>> out;
  switch (x.kind()) {
  case SemigroupKind::Nat: {
    const auto n = x.as<Nat>().n;
    out.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
      out.emplace_back(Nat{k}, Nat{n - k});
    }
    break;
  }
  case SemigroupKind::MultiIndex: {
    std::vector<MultiIndex::Entry> left;
    std::vector<MultiIndex::Entry> right;
    detail::sub_multi_indices(x.as<MultiIndex>().entries(), 0, left, right, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    break;
  }
  case SemigroupKind::Word: {
    const auto& w = x.as<Word>().letters;
    out.reserve(w.size() + 1);
    for (std::size_t k = 0; k <= w.size(); ++k) {
      out.emplace_back(Word{{w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)}},
                       Word{{w.begin() + static_cast<std::ptrdiff_t>(k), w.end()}});
    }
    break;
  }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: n:5, m:{1^2,2^1}, w:[1,2,1]

inline std::string to_string(const SemigroupIndex& x) {
  std::string s;
  switch (x.kind()) {
  case SemigroupKind::Nat:
    s = "n:" + std::to_string(x.as<Nat>().n);
    break;
  case SemigroupKind::MultiIndex: {
    s = "m:{";
    bool first = true;
    for (const auto& [g, e] : x.as<MultiIndex>().entries()) {
      if (!first) {
        s += ',';
      }
      first = false;
      s += std::to_string(g) + '^' + std::to_string(e);
    }
    s += '}';
    break;
  }
  case SemigroupKind::Word: {
    s = "w:[";
    bool first = true;
    for (auto l : x.as<Word>().letters) {
      if (!first) {
        s += ',';
      }
      first = false;
      s += std::to_string(l);
    }
    s += ']';
    break;
  }
  }
  return s;
}

namespace detail {

inline std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 19) {
    throw ParseError("bad integer in index '" + std::string(whole) + "'");
  }
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw ParseError("bad integer in index '" + std::string(whole) + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  if (s.empty()) {
    return parts;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

} // namespace detail

/// Inverse of to_string; throws ParseError on malformed input.
inline SemigroupIndex parse_index(std::string_view text) {
  if (text.size() < 2 || text[1] != ':') {
    throw ParseError("malformed index '" + std::string(text) + "'");
  }
  const std::string_view body = text.substr(2);
  switch (text[0]) {
  case 'n':
    return Nat{detail::parse_uint(body, text)};
  case 'm': {
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
      throw ParseError("malformed multi-index '" + std::string(text) + "'");
    }
    std::vector<MultiIndex::Entry> entries;
    std::uint32_t last = 0;
    for (auto part : detail::split(body.substr(1, body.size() - 2), ',')) {
      const auto caret = part.find('^');
      if (caret == std::string_view::npos) {
        throw ParseError("malformed multi-index entry in '" + std::string(text) + "'");
      }
      const auto g = detail::parse_uint(part.substr(0, caret), text);
      const auto e = detail::parse_uint(part.substr(caret + 1), text);
      if (g == 0 || e == 0 || g > UINT32_MAX || e > UINT32_MAX || g <= last) {
        throw ParseError("non-canonical multi-index '" + std::string(text) + "'");
      }
      last = static_cast<std::uint32_t>(g);
      entries.emplace_back(static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(e));
    }
    return MultiIndex(std::move(entries));
  }
  case 'w': {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw ParseError("malformed word '" + std::string(text) + "'");
    }
    Word w;
    for (auto part : detail::split(body.substr(1, body.size() - 2), ',')) {
      const auto l = detail::parse_uint(part, text);
      if (l == 0 || l > UINT32_MAX) {
        throw ParseError("word letters are positive integers: '" + std::string(text) + "'");
      }
      w.letters.push_back(static_cast<std::uint32_t>(l));
    }
    return w;
  }
  default:
    throw ParseError("unknown index kind in '" + std::string(text) + "'");
  }
}

// ---------------------------------------------------------------------------
// Exhaustive enumerations of small indices (used as test scopes and as the
// sampling pool for random elements). Output order is ascending.

inline std::vector<SemigroupIndex> enumerate_nat(std::uint64_t max_n) {
  std::vector<SemigroupIndex> out;
  out.reserve(max_n + 1);
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    out.emplace_back(Nat{n});
  }
  return out;
}

/// All multi-indices of total degree <= max_degree over generators 1..max_gen.
inline std::vector<SemigroupIndex> enumerate_multi_indices(std::uint32_t max_degree, std::uint32_t max_gen) {
  std::vector<SemigroupIndex> out;
  std::vector<std::uint32_t> exps(max_gen, 0);
  auto rec = [&](auto&& self, std::uint32_t gen, std::uint32_t budget) -> void {
    if (gen == max_gen) {
      std::vector<MultiIndex::Entry> e;
      for (std::uint32_t g = 0; g < max_gen; ++g) {
        if (exps[g] != 0) {
          e.emplace_back(g + 1, exps[g]);
        }
      }
      out.emplace_back(MultiIndex(std::move(e)));
      return;
    }
    for (std::uint32_t k = 0; k <= budget; ++k) {
      exps[gen] = k;
      self(self, gen + 1, budget - k);
    }
    exps[gen] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end());
  return out;
}

/// All words of length <= max_len over letters 1..max_letter.
inline std::vector<SemigroupIndex> enumerate_words(std::uint32_t max_len, std::uint32_t max_letter) {
  std::vector<SemigroupIndex> out;
  std::vector<std::vector<std::uint32_t>> layer{{}};
  for (std::uint32_t len = 0; len <= max_len; ++len) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto& w : layer) {
      if (len < max_len) {
        for (std::uint32_t l = 1; l <= max_letter; ++l) {
          auto v = w;
          v.push_back(l);
          next.push_back(std::move(v));
        }
      }
      out.emplace_back(Word{std::move(w)});
    }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace gradalg
