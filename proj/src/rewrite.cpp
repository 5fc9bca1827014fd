#include "trigroup/rewrite.hpp"

#include <algorithm>

namespace trigroup {

FreeWord word_from_string(const std::string& s) {
  FreeWord w;
  for (char c : s) {
    if (c == ' ') continue;
    if (c >= 'a' && c <= 'z')
      w.push_back({static_cast<std::uint32_t>(c - 'a'), false});
    else if (c >= 'A' && c <= 'Z')
      w.push_back({static_cast<std::uint32_t>(c - 'A'), true});
    else
      throw std::invalid_argument("bad letter in word: " + std::string(1, c));
  }
  return w;
}

std::string word_to_string(const FreeWord& w) {
  std::string s;
  for (const auto& l : w)
    s += static_cast<char>((l.inverse ? 'A' : 'a') + l.gen);
  return s;
}

FreeWord free_reduce(FreeWord w) {
  FreeWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().inverse != l.inverse)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

FreeWord invert_word(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, !it->inverse});
  return out;
}

FreeWord apply_derivation(const std::vector<Relator>& relators,
                          const std::vector<DerivationStep>& steps, FreeWord w) {
  for (std::size_t idx = 0; idx < steps.size(); ++idx) {
    const DerivationStep& s = steps[idx];
    switch (s.kind) {
      case DerivationStep::Kind::Replace: {
        if (s.relator >= relators.size())
          throw StepDoesNotApply(idx, "no relator " + std::to_string(s.relator));
        FreeWord pat = s.reversed ? relators[s.relator].rhs : relators[s.relator].lhs;
        FreeWord rep = s.reversed ? relators[s.relator].lhs : relators[s.relator].rhs;
        if (s.inverted) {
          pat = invert_word(pat);
          rep = invert_word(rep);
        }
        if (s.pos + pat.size() > w.size())
          throw StepDoesNotApply(idx, "pattern '" + word_to_string(pat) +
                                          "' does not fit at position " + std::to_string(s.pos));
        if (!std::equal(pat.begin(), pat.end(), w.begin() + s.pos)) {
          FreeWord found(w.begin() + s.pos,
                         w.begin() + std::min(w.size(), s.pos + pat.size()));
          throw StepDoesNotApply(idx, "expected '" + word_to_string(pat) + "' at position " +
                                          std::to_string(s.pos) + ", found '" +
                                          word_to_string(found) + "'");
        }
        FreeWord next(w.begin(), w.begin() + s.pos);
        next.insert(next.end(), rep.begin(), rep.end());
        next.insert(next.end(), w.begin() + s.pos + pat.size(), w.end());
        w = free_reduce(std::move(next));
        break;
      }
      case DerivationStep::Kind::InsertPair: {
        if (s.pos > w.size())
          throw StepDoesNotApply(idx, "insert position out of range");
        FreeWord next(w.begin(), w.begin() + s.pos);
        next.push_back(s.letter);
        next.push_back({s.letter.gen, !s.letter.inverse});
        next.insert(next.end(), w.begin() + s.pos, w.end());
        w = std::move(next);
        break;
      }
      case DerivationStep::Kind::RemovePair: {
        if (s.pos + 2 > w.size() || w[s.pos].gen != w[s.pos + 1].gen ||
            w[s.pos].inverse == w[s.pos + 1].inverse) {
          FreeWord found(w.begin() + std::min(s.pos, w.size()),
                         w.begin() + std::min(s.pos + 2, w.size()));
          throw StepDoesNotApply(idx, "no cancelling pair at position " +
                                          std::to_string(s.pos) + ", found '" +
                                          word_to_string(found) + "'");
        }
        w.erase(w.begin() + s.pos, w.begin() + s.pos + 2);
        break;
      }
    }
  }
  return w;
}

bool derivation_check(const std::vector<Relator>& relators,
                      const std::vector<DerivationStep>& steps, const FreeWord& from,
                      const FreeWord& to) {
  return apply_derivation(relators, steps, from) == to;
}

} // namespace trigroup
