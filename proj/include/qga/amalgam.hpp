#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qga/error.hpp"
#include "qga/quasigroup.hpp"
#include "qga/term.hpp"

namespace qga {

/// Factors A_1..A_k amalgamated over a common base B. Factor index 0 denotes B
/// itself; leaves naming an image of B are always stored as base leaves, which
/// makes A_i and A_j meet exactly in B.
class AmalgamConfig {
 public:
  AmalgamConfig(FiniteQuasigroup base, std::vector<FiniteQuasigroup> factors,
                std::vector<std::vector<std::size_t>> embeddings)
      : base_(std::move(base)), factors_(std::move(factors)), embeddings_(std::move(embeddings)) {
    if (factors_.empty()) throw invalid_input("an amalgam needs at least one factor");
    if (embeddings_.size() != factors_.size())
      throw invalid_input("expected one embedding per factor");
    std::set<std::string> names{base_.name()};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (!names.insert(factors_[i].name()).second)
        throw invalid_input("duplicate algebra name '" + factors_[i].name() + "'");
      const auto& e = embeddings_[i];
      if (e.size() != base_.size() || !is_injective(e) || !is_homomorphism(base_, factors_[i], e))
        throw invalid_input("embedding of " + base_.name() + " into " + factors_[i].name() +
                            " is not an injective homomorphism");
      std::vector<std::size_t> back(factors_[i].size(), npos);
      for (std::size_t b = 0; b < e.size(); ++b) back[e[b]] = b;
      base_preimage_.push_back(std::move(back));
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const FiniteQuasigroup& base() const noexcept { return base_; }
  std::size_t factor_count() const noexcept { return factors_.size(); }

  // 1-based, matching leaf factor indices.
  const FiniteQuasigroup& factor(std::size_t i) const { return factors_.at(i - 1); }
  const std::vector<std::size_t>& embedding(std::size_t i) const { return embeddings_.at(i - 1); }
  const std::vector<FiniteQuasigroup>& factors() const noexcept { return factors_; }
  const std::vector<std::vector<std::size_t>>& embeddings() const noexcept { return embeddings_; }

  Embedding embedding_of(std::size_t i) const { return Embedding{base_, factor(i), embedding(i)}; }

  // Algebra behind a leaf factor index; 0 is the base.
  const FiniteQuasigroup& algebra(std::size_t f) const { return f == 0 ? base_ : factor(f); }

  // Base element that `a` of factor i is the image of, if any.
  std::optional<std::size_t> base_preimage(std::size_t i, std::size_t a) const {
    const std::size_t b = base_preimage_.at(i - 1).at(a);
    if (b == npos) return std::nullopt;
    return b;
  }

  bool is_private(std::size_t i, std::size_t a) const { return !base_preimage(i, a).has_value(); }

  /// Maps a (factor, element) pair to the canonical leaf. Throws on bad indices.
  Leaf canonical(Leaf l) const {
    if (l.factor > factors_.size())
      throw invalid_input("leaf factor " + std::to_string(l.factor) + " out of range");
    if (l.element >= algebra(l.factor).size())
      throw invalid_input("leaf element " + std::to_string(l.element) + " out of range");
    if (l.factor == 0) return l;
    if (auto b = base_preimage(l.factor, l.element))
      return Leaf{0, static_cast<std::uint32_t>(*b)};
    return l;
  }

  Leaf leaf(std::size_t factor, std::size_t element) const {
    return canonical(Leaf{static_cast<std::uint32_t>(factor), static_cast<std::uint32_t>(element)});
  }

  bool is_canonical(Leaf l) const {
    if (l.factor > factors_.size() || l.element >= algebra(l.factor).size()) return false;
    return l.factor == 0 || is_private(l.factor, l.element);
  }

  // Index of a canonical leaf inside A_i (base leaves lie in every factor).
  std::optional<std::size_t> element_in(Leaf l, std::size_t i) const {
    if (l.factor == 0) return i == 0 ? l.element : embedding(i)[l.element];
    if (l.factor == i) return l.element;
    return std::nullopt;
  }

  /// Kind-(i) evaluation: defined when both leaves lie in one common factor.
  std::optional<Leaf> evaluate(Op op, Leaf a, Leaf b) const {
    if (a.factor != 0 && b.factor != 0 && a.factor != b.factor) return std::nullopt;
    const std::size_t f = a.factor != 0 ? a.factor : b.factor;
    const auto x = element_in(a, f);
    const auto y = element_in(b, f);
    return leaf(f, algebra(f).apply(op, *x, *y));
  }

  /// Every canonical leaf: base elements first, then private elements per factor.
  std::vector<Leaf> leaves() const {
    std::vector<Leaf> out;
    for (std::size_t b = 0; b < base_.size(); ++b) out.push_back(leaf(0, b));
    for (std::size_t i = 1; i <= factors_.size(); ++i) {
      auto p = private_leaves(i);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  std::vector<Leaf> private_leaves(std::size_t i) const {
    std::vector<Leaf> out;
    for (std::size_t a = 0; a < factor(i).size(); ++a)
      if (is_private(i, a)) out.push_back(leaf(i, a));
    return out;
  }

  /// Throws invalid_input if some leaf is out of range or not canonical.
  void validate(const Term& t) const {
    for (Leaf l : leaves_of(t))
      if (!is_canonical(l))
        throw invalid_input("malformed leaf (" + std::to_string(l.factor) + "," +
                            std::to_string(l.element) + ")");
  }

  std::optional<Leaf> resolve_leaf(std::string_view factor_name, std::string_view element) const {
    for (std::size_t f = 0; f <= factors_.size(); ++f) {
      const auto& a = algebra(f);
      if (a.name() != factor_name) continue;
      if (auto e = a.index_of(element)) return leaf(f, *e);
      return std::nullopt;
    }
    return std::nullopt;
  }

  std::string leaf_name(Leaf l) const {
    const auto& a = algebra(l.factor);
    return a.name() + "." + a.element_name(l.element);
  }

  Term parse(std::string_view text) const { return parse_term(text, *this); }
  std::string format(const Term& t) const { return format_term(t, *this); }

 private:
  FiniteQuasigroup base_;
  std::vector<FiniteQuasigroup> factors_;
  std::vector<std::vector<std::size_t>> embeddings_;
  std::vector<std::vector<std::size_t>> base_preimage_;
};

}  // namespace qga
