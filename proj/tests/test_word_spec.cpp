#include <gtest/gtest.h>

#include "mifs/error.hpp"
#include "mifs/word_spec.hpp"

using namespace mifs;

namespace {

AlphabetPtr example() { return Alphabet::create({"1", "2", "3"}, {"4"}); }

std::string letters(const FiniteWord& word) {
  std::string out;
  for (Letter l : word.letters()) out += word.alphabet()->label(l);
  return out;
}

Sigma0Word as_sigma0(const ParsedWord& p) { return std::get<Sigma0Word>(std::get<SigmaWord>(p)); }

}  // namespace

TEST(WordSpec, FiniteWords) {
  auto a = example();
  const auto p = parse_word_spec("1.2.3", a);
  ASSERT_TRUE(std::holds_alternative<FiniteWord>(p));
  EXPECT_EQ(letters(std::get<FiniteWord>(p)), "123");
  EXPECT_TRUE(std::get<FiniteWord>(parse_word_spec("", a)).empty());
}

TEST(WordSpec, SingleBlockSigma0) {
  auto a = example();
  const auto s = as_sigma0(parse_word_spec("4.1.2.(4)^w", a));
  EXPECT_EQ(letters(s.beta0()), "412");
  ASSERT_EQ(s.blocks().size(), 1u);
  EXPECT_TRUE(s.blocks()[0].beta.empty());
  EXPECT_EQ(s.blocks()[0].gamma, AddressStream::periodic(FiniteWord(a), FiniteWord(a, {"4"})));
}

TEST(WordSpec, TrailingBeta) {
  auto a = example();
  const auto s = as_sigma0(parse_word_spec("1.2.(4)^w.3.1", a));
  EXPECT_EQ(letters(s.beta0()), "12");
  EXPECT_EQ(letters(s.blocks()[0].beta), "31");
}

TEST(WordSpec, JRunsAreAbsorbedIntoTheBlock) {
  auto a = example();
  const auto s = as_sigma0(parse_word_spec("1.4.4.(4)^w", a));
  EXPECT_EQ(letters(s.beta0()), "1");
  EXPECT_EQ(letters(s.blocks()[0].gamma.head()), "44");
  EXPECT_EQ(render(SigmaWord(s)), "1.4.4.(4)^w");
}

TEST(WordSpec, StructureErrors) {
  auto a = example();
  EXPECT_THROW(parse_word_spec("(4)^w.4.(4)^w", a), StructureError);
  EXPECT_THROW(parse_word_spec("(4)^w.4", a), StructureError);
  EXPECT_THROW(parse_word_spec("(4)^w.(1)^w", a), StructureError);
}

TEST(WordSpec, SyntaxErrorsReportPosition) {
  auto a = example();
  try {
    parse_word_spec("1.2.(4", a);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  try {
    parse_word_spec("1.7", a);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    parse_word_spec("(1.2)^w.3", a);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
  EXPECT_THROW(parse_word_spec("1..2", a), SyntaxError);
  EXPECT_THROW(parse_word_spec("rand:sigma2:1", a), SyntaxError);
  EXPECT_THROW(parse_word_spec("rand:sigma1:x", a), SyntaxError);
  EXPECT_THROW(parse_word_spec("()^w", a), SyntaxError);
}

TEST(WordSpec, Sigma1Forms) {
  auto a = example();
  const auto p = parse_sigma_word("1.4.3.4.(1.2)^w", a);
  ASSERT_TRUE(std::holds_alternative<Sigma1Word>(p));
  EXPECT_EQ(letters(prefix(std::get<Sigma1Word>(p).stream(), 10)), "1434121212");
  const auto r = parse_sigma_word("rand:sigma1:42", a);
  EXPECT_EQ(r, random_sigma_word(a, SigmaKind::Sigma1, 42));
  EXPECT_EQ(render(r), "rand:sigma1:42");
  EXPECT_THROW(parse_sigma_word("1.2", a), StructureError);
}

TEST(WordSpec, RandomJTail) {
  auto a = example();
  const auto p = parse_sigma_word("3.rand:jtail:9", a);
  ASSERT_TRUE(std::holds_alternative<Sigma0Word>(p));
  EXPECT_EQ(render(p), "3.rand:jtail:9");
}

TEST(WordSpec, RoundTrip) {
  auto a = example();
  for (const char* text : {"(4)^w", "3.2.1.(4)^w", "(4)^w.1.2.3", "1.2.(4)^w.3.1", "1.(4.4)^w.2.3.(4)^w",
                           "1.4.3.4.(1.2)^w", "rand:sigma1:7", "2.rand:jtail:3.1", "1.2.3"})
    EXPECT_EQ(render(parse_word_spec(text, a)), text);
}

TEST(WordSpec, MultiCharacterLabels) {
  auto a = Alphabet::create({"left", "right"}, {"slide"});
  const auto p = parse_sigma_word("left.(slide)^w.right", a);
  EXPECT_EQ(render(p), "left.(slide)^w.right");
}
