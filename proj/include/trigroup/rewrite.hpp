#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigroup {

/// Letter of a free word over an abstract alphabet with formal inverses.
struct FreeLetter {
  std::uint32_t gen = 0;
  bool inverse = false;
  bool operator==(const FreeLetter& o) const { return gen == o.gen && inverse == o.inverse; }
};

using FreeWord = std::vector<FreeLetter>;

/// 'a'..'z' are generators 0..25, 'A'..'Z' their inverses.
FreeWord word_from_string(const std::string& s);
std::string word_to_string(const FreeWord& w);

FreeWord free_reduce(FreeWord w);
FreeWord invert_word(const FreeWord& w);

/// A relation lhs = rhs between free words.
struct Relator {
  FreeWord lhs;
  FreeWord rhs;
};

/// One elementary derivation move.
struct DerivationStep {
  enum class Kind { Replace, InsertPair, RemovePair };
  Kind kind = Kind::Replace;
  std::size_t pos = 0;
  // Replace: substitute one side of relators[relator] by the other at
  // pos; reversed swaps the sides, inverted uses the inverses of both
  // sides. The result is freely reduced.
  std::size_t relator = 0;
  bool reversed = false;
  bool inverted = false;
  // InsertPair: insert letter, letter^{-1} at pos (no reduction).
  FreeLetter letter{};

  static DerivationStep replace(std::size_t pos, std::size_t relator, bool reversed = false,
                                bool inverted = false) {
    DerivationStep s;
    s.kind = Kind::Replace;
    s.pos = pos;
    s.relator = relator;
    s.reversed = reversed;
    s.inverted = inverted;
    return s;
  }
  static DerivationStep insert_pair(std::size_t pos, FreeLetter l) {
    DerivationStep s;
    s.kind = Kind::InsertPair;
    s.pos = pos;
    s.letter = l;
    return s;
  }
  static DerivationStep remove_pair(std::size_t pos) {
    DerivationStep s;
    s.kind = Kind::RemovePair;
    s.pos = pos;
    return s;
  }
};

class StepDoesNotApply : public std::runtime_error {
public:
  StepDoesNotApply(std::size_t index, const std::string& what)
      : std::runtime_error("step " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// Applies the steps to `from` in order; throws StepDoesNotApply with
/// the failing index and subword.
FreeWord apply_derivation(const std::vector<Relator>& relators,
                          const std::vector<DerivationStep>& steps, FreeWord from);

/// True iff the steps transform `from` into `to`.
bool derivation_check(const std::vector<Relator>& relators,
                      const std::vector<DerivationStep>& steps, const FreeWord& from,
                      const FreeWord& to);

} // namespace trigroup
