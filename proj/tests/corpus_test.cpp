#include <gtest/gtest.h>

#include "chunkpunct/corpus.hpp"
#include "test_support.hpp"

namespace chunkpunct {
namespace {

using testing::kSampleOriginal;

TEST(CleanText, SampleSentence) {
  const auto sentences = clean_text(kSampleOriginal);
  ASSERT_EQ(sentences.size(), 1u);
  const std::vector<std::string> words{"The", "bill", "does", "not", "become", "law", "unless", "houses",
                                       "of", "Congress", "vote", "to", "override", "the", "veto"};
  EXPECT_EQ(sentences[0].words, words);
  std::vector<PunctLabel> puncts(15, PunctLabel::None);
  puncts[5] = PunctLabel::Comma;
  puncts[14] = PunctLabel::FullStop;
  EXPECT_EQ(sentences[0].puncts, puncts);
}

TEST(CleanText, EmptyInput) {
  EXPECT_TRUE(clean_text("").empty());
  EXPECT_TRUE(clean_text("  \n\t ").empty());
  EXPECT_TRUE(clean_text("123 456 !!! ;;").empty());
}

TEST(CleanText, SymbolsAndDigitsGolden) {
  // "Price:" -> Price; "$5.99!!" has no letters and its '.' sits between
  // digits, so it vanishes without a mark; "Really?" ends the sentence.
  const auto sentences = clean_text("Price: $5.99!! Really?");
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].words, (std::vector<std::string>{"Price", "Really"}));
  EXPECT_EQ(sentences[0].puncts, (std::vector<PunctLabel>{PunctLabel::None, PunctLabel::Question}));
}

TEST(CleanText, ApostrophesAndHyphensAreDeleted) {
  const auto s = clean_text("I don't like well-known rock'n'roll.");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"I", "dont", "like", "wellknown", "rocknroll"}));
  EXPECT_EQ(s[0].puncts.back(), PunctLabel::FullStop);
}

TEST(CleanText, PunctuationAttachesToPreviousWord) {
  const auto s = clean_text("laptop , mobile");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"laptop", "mobile"}));
  EXPECT_EQ(s[0].puncts[0], PunctLabel::Comma);
}

TEST(CleanText, MarkOnDroppedWordMovesLeft) {
  const auto s = clean_text("costs 5, or 7. Fine");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"costs", "or"}));
  EXPECT_EQ(s[0].puncts, (std::vector<PunctLabel>{PunctLabel::Comma, PunctLabel::FullStop}));
  EXPECT_EQ(s[1].words, (std::vector<std::string>{"Fine"}));
}

TEST(CleanText, LeadingPunctuationIsDropped) {
  const auto s = clean_text(", . ? hello");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"hello"}));
  EXPECT_EQ(s[0].puncts[0], PunctLabel::None);
}

TEST(CleanText, SentenceBoundaries) {
  const auto s = clean_text("Why? Why? Stop! Now, go.");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"Why"}));
  EXPECT_EQ(s[1].words, (std::vector<std::string>{"Why"}));
  // '!' is not a sentence boundary
  EXPECT_EQ(s[2].words, (std::vector<std::string>{"Stop", "Now", "go"}));
  EXPECT_EQ(s[2].puncts, (std::vector<PunctLabel>{PunctLabel::None, PunctLabel::Comma, PunctLabel::FullStop}));
}

TEST(CleanText, StrongestMarkWins) {
  const auto s = clean_text("Really?!. Yes,. no");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].puncts[0], PunctLabel::Question);
  EXPECT_EQ(s[1].puncts[0], PunctLabel::FullStop);
}

TEST(CleanText, AbbreviationDotsCollapse) {
  const auto s = clean_text("the U.S.A. is big");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"the", "USA"}));
  EXPECT_EQ(s[0].puncts[1], PunctLabel::FullStop);
}

TEST(CleanText, UnicodeLettersKeptUnlessAsciiOnly) {
  const auto s = clean_text("Élan café, naïve.");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].words, (std::vector<std::string>{"Élan", "café", "naïve"}));
  EXPECT_EQ(to_asr_input(s[0]), (std::vector<std::string>{"élan", "café", "naïve"}));
  EXPECT_EQ(to_sequence(s[0])[0].case_label, CaseLabel::Upper);

  const auto a = clean_text("Élan café, naïve.", CleanOptions{true});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].words, (std::vector<std::string>{"lan", "caf", "nave"}));
}

TEST(CleanText, IsIdempotent) {
  testing::Random rng(11);
  const std::vector<std::string> pieces{"Hello", "world", ",", ".", "?", "!", "don't", "5.99", "U.S.",
                                        "x-ray", ";", "New", "York", "\n", "  ", "Ok?", "(a)", "é"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    const auto n = rng.uniform(0, 30);
    for (std::size_t i = 0; i < n; ++i) {
      raw += pieces[rng.uniform(0, pieces.size() - 1)];
      if (rng.uniform(0, 2)) raw += ' ';
    }
    const auto once = clean_text(raw);
    const auto twice = clean_text(render_sentences(once));
    EXPECT_EQ(once, twice) << raw;
    for (const auto& s : once) {
      EXPECT_FALSE(s.words.empty());
      EXPECT_EQ(s.words.size(), s.puncts.size());
    }
  }
}

TEST(CleanText, AsciiOnlyInputAlphabet) {
  const auto s = clean_text("Ça va? 3 O'Neil-Smith said: \"no\"; ok.", CleanOptions{true});
  for (const auto& sentence : s) {
    for (const auto& w : to_asr_input(sentence)) {
      for (char c : w) EXPECT_TRUE(c >= 'a' && c <= 'z') << w;
    }
  }
}

TEST(ToAsrInput, Lowercases) {
  const auto s = clean_text(kSampleOriginal);
  EXPECT_EQ(join(to_asr_input(s[0])), testing::kSampleInput);
  EXPECT_EQ(to_asr_input(CleanSentence{{"a"}, {PunctLabel::None}}), std::vector<std::string>{"a"});
  EXPECT_EQ(to_asr_input(CleanSentence{{"McDonald"}, {PunctLabel::None}}),
            std::vector<std::string>{"mcdonald"});
}

TEST(MakePairs, SamplePlain) {
  const auto pairs = make_pairs(clean_text(kSampleOriginal), ChunkConfig::with_default_overlap(10));
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].input, testing::kSampleInputChunk1);
  EXPECT_EQ(pairs[0].target, testing::kSamplePlainChunk1);
  EXPECT_EQ(pairs[1].input, testing::kSampleInputChunk2);
  EXPECT_EQ(pairs[1].target, testing::kSamplePlainChunk2);
}

TEST(MakePairs, SampleEncoded) {
  const auto pairs =
      make_pairs(clean_text(kSampleOriginal), ChunkConfig::with_default_overlap(10), LineFormat::Encoded);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].target, testing::kSampleEncodedChunk1);
  EXPECT_EQ(pairs[1].target, testing::kSampleEncodedChunk2);
}

TEST(MakePairs, ShortSentenceIsOneChunk) {
  const auto pairs = make_pairs(clean_text("Hello there, friend."), ChunkConfig::with_default_overlap(10));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].input, "hello there friend");
  EXPECT_EQ(pairs[0].target, "Hello there, friend.");
}

TEST(MakePairs, InputsAlignWithTargets) {
  const auto sentences = clean_text(
      "First sentence here, with words. Second one? Third sentence is a bit longer, it has "
      "commas, and ends. Fourth.");
  for (std::size_t k = 2; k < 12; ++k) {
    for (std::size_t v = 0; v < k; ++v) {
      for (const auto& p : make_pairs(sentences, ChunkConfig{k, v})) {
        std::vector<std::string> stripped;
        for (const auto& t : parse_plain(p.target)) stripped.push_back(t.word);
        EXPECT_EQ(join(stripped), p.input);
      }
    }
  }
}

TEST(Stats, SampleCounts) {
  const auto st = stats(clean_text(kSampleOriginal));
  EXPECT_EQ(st.upper, 2u);
  EXPECT_EQ(st.lower, 13u);
  EXPECT_EQ(st.comma, 1u);
  EXPECT_EQ(st.full_stop, 1u);
  EXPECT_EQ(st.question, 0u);
  EXPECT_EQ(st.none, 13u);
}

TEST(Stats, EmptyAndQuestions) {
  EXPECT_EQ(stats(std::vector<CleanSentence>{}), CorpusStats{});
  const auto st = stats(clean_text("Why? Why?"));
  EXPECT_EQ(st.upper, 2u);
  EXPECT_EQ(st.question, 2u);
  EXPECT_EQ(st.lower + st.full_stop + st.comma + st.none, 0u);
}

TEST(Stats, CaseTotalEqualsPunctTotal) {
  testing::Random rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::string raw;
    for (std::size_t i = 0, n = rng.uniform(1, 40); i < n; ++i) {
      auto w = rng.word();
      if (rng.uniform(0, 3) == 0) w[0] = static_cast<char>(w[0] - 32);
      raw += w;
      const auto mark = rng.uniform(0, 8);
      if (mark == 0) raw += '.';
      if (mark == 1) raw += ',';
      if (mark == 2) raw += '?';
      raw += ' ';
    }
    const auto sentences = clean_text(raw);
    const auto st = stats(sentences);
    std::size_t words = 0;
    for (const auto& s : sentences) words += s.words.size();
    EXPECT_EQ(st.upper + st.lower, words);
    EXPECT_EQ(st.full_stop + st.comma + st.question + st.none, words);
  }
}

}  // namespace
}  // namespace chunkpunct
