#include "trigroup/rewrite.hpp"

#include <doctest.h>

using namespace trigroup;

TEST_CASE("word utilities") {
  FreeWord w = word_from_string("baB");
  CHECK(word_to_string(w) == "baB");
  CHECK(word_to_string(invert_word(w)) == "bAB");
  CHECK(word_to_string(free_reduce(word_from_string("aAbBc"))) == "c");
  CHECK(free_reduce(word_from_string("abBA")).empty());
}

TEST_CASE("conjugation identity moves through the three displayed words") {
  std::vector<Relator> rels{
      {word_from_string("Bab"), word_from_string("aa")}, // b^-1 a b = a^2
      {word_from_string("Cac"), word_from_string("aa")}, // c^-1 a c = a^2
      {word_from_string("bc"), word_from_string("cb")},  // b c = c b
  };
  FreeWord w0 = word_from_string("baB");
  FreeWord w1 = word_from_string("bcaaCB");
  FreeWord w2 = word_from_string("cbaaBC");
  FreeWord w3 = word_from_string("caC");

  // step one: a -> c a^2 c^-1 via two insertions and relator 2
  std::vector<DerivationStep> s1{
      DerivationStep::insert_pair(1, {2, false}),  // b [c C] a B
      DerivationStep::insert_pair(4, {2, false}),  // b c C a [c C] B
      DerivationStep::replace(2, 1),               // C a c -> a a
  };
  CHECK(derivation_check(rels, s1, w0, w1));

  // step two: move b past c on both sides via relator 3
  std::vector<DerivationStep> s2{
      DerivationStep::replace(0, 2),                // bc -> cb
      DerivationStep::replace(4, 2, false, true),   // CB -> BC (inverted sides)
  };
  CHECK(derivation_check(rels, s2, w1, w2));

  // step three: a a -> b^-1 a b, free reduction collapses to c a C
  std::vector<DerivationStep> s3{
      DerivationStep::replace(2, 0, true), // aa -> Bab
  };
  CHECK(derivation_check(rels, s3, w2, w3));

  // the whole chain in one run
  std::vector<DerivationStep> all;
  for (const auto& group : {s1, s2, s3}) all.insert(all.end(), group.begin(), group.end());
  CHECK(derivation_check(rels, all, w0, w3));
}

TEST_CASE("empty derivation") {
  CHECK(derivation_check({}, {}, word_from_string("ab"), word_from_string("ab")));
  CHECK(!derivation_check({}, {}, word_from_string("ab"), word_from_string("ba")));
}

TEST_CASE("misplaced step reports the mismatch") {
  std::vector<Relator> rels{{word_from_string("bc"), word_from_string("cb")}};
  FreeWord w = word_from_string("abc");
  std::vector<DerivationStep> steps{DerivationStep::replace(0, 0)};
  try {
    apply_derivation(rels, steps, w);
    FAIL("expected StepDoesNotApply");
  } catch (const StepDoesNotApply& e) {
    CHECK(e.index() == 0);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  // correct position applies
  CHECK(derivation_check(rels, {DerivationStep::replace(1, 0)}, w,
                         word_from_string("acb")));
}

TEST_CASE("remove pair is explicit and checked") {
  FreeWord w = word_from_string("aAb");
  CHECK(derivation_check({}, {DerivationStep::remove_pair(0)}, w, word_from_string("b")));
  CHECK_THROWS_AS(apply_derivation({}, {DerivationStep::remove_pair(1)}, w),
                  StepDoesNotApply);
}

TEST_CASE("insert then cancel returns to the start") {
  FreeWord w = word_from_string("ab");
  std::vector<DerivationStep> steps{DerivationStep::insert_pair(1, {3, true}),
                                    DerivationStep::remove_pair(1)};
  CHECK(derivation_check({}, steps, w, w));
}
