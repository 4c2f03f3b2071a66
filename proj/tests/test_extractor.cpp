#include <doctest.h>

#include <algorithm>

#include "cru/extractor.hpp"
#include "test_support.hpp"

using namespace cru;
using cru::testing::small_registry;
using cru::testing::tokens;

TEST_CASE("extract_spans anchored span stops before the command tail") {
  auto reg = small_registry();
  auto spans = extract_spans(
      tokens("lufthansa eight three kilo descend three thousand feet"), reg);
  REQUIRE_FALSE(spans.empty());
  CHECK(spans[0].start == 0);
  CHECK(spans[0].end == 4);
  CHECK(spans[0].kind == VariantKind::Full);
  CHECK(spans[0].tokens == tokens("lufthansa eight three kilo"));
}

TEST_CASE("extract_spans returns nothing on plain speech") {
  auto reg = small_registry();
  CHECK(extract_spans(tokens("good morning"), reg).empty());
}

TEST_CASE("extract_spans overlapping hypotheses") {
  auto reg = small_registry();
  auto spans = extract_spans(tokens("ryanair eight three kilo"), reg);
  Span full{0, 4, VariantKind::Full, tokens("ryanair eight three kilo")};
  Span bare{1, 4, VariantKind::NoIdentifier, tokens("eight three kilo")};
  CHECK(std::find(spans.begin(), spans.end(), full) != spans.end());
  CHECK(std::find(spans.begin(), spans.end(), bare) != spans.end());
  // ordering: start ascending, then length descending
  for (std::size_t i = 1; i < spans.size(); ++i) {
    CHECK((spans[i - 1].start < spans[i].start ||
           (spans[i - 1].start == spans[i].start &&
            spans[i - 1].length() >= spans[i].length())));
  }
}

TEST_CASE("extract_spans invariants") {
  auto reg = small_registry();
  SpokenForm transcript =
      tokens("speedbird two zero x-ray contact tower one one eight decimal five");
  auto spans = extract_spans(transcript, reg);
  for (const auto& s : spans) {
    CHECK(s.start < s.end);
    CHECK(s.end <= transcript.size());
    SpokenForm slice(transcript.begin() + static_cast<long>(s.start),
                     transcript.begin() + static_cast<long>(s.end));
    CHECK(s.tokens == slice);
  }
}

TEST_CASE("vanilla_recognize on the canonical sample") {
  auto reg = small_registry();
  CHECK(vanilla_recognize(
            tokens("lufthansa eight three kilo descend three thousand feet"), reg) ==
        parse_icao("DLH83K"));
}

TEST_CASE("vanilla_recognize returns the wrong-but-valid call-sign after a deletion") {
  // "five" of RYR853K was deleted upstream; context-free recognition can only
  // see RYR83K.
  auto reg = small_registry();
  CHECK(vanilla_recognize(tokens("ryanair eight three kilo descend flight level one two zero"),
                          reg) == parse_icao("RYR83K"));
}

TEST_CASE("vanilla_recognize null cases") {
  auto reg = small_registry();
  CHECK_FALSE(vanilla_recognize(tokens("contact tower"), reg).has_value());
  CHECK_FALSE(vanilla_recognize({}, reg).has_value());
  // identifier alone carries no number, bare run too short
  CHECK_FALSE(vanilla_recognize(tokens("roger seven"), reg).has_value());
}

TEST_CASE("anchored spans beat bare number runs") {
  auto reg = small_registry();
  // bare run "one two zero" appears before the anchored call-sign
  CHECK(vanilla_recognize(tokens("climbing one two zero lufthansa eight three kilo"), reg) ==
        parse_icao("DLH83K"));
}

TEST_CASE("spelled designator spans are recognized") {
  auto reg = small_registry();
  CHECK(vanilla_recognize(tokens("dlh seven two kilo cleared for takeoff"), reg) ==
        parse_icao("DLH72K"));
}

TEST_CASE("number cap prevents swallowing the command tail") {
  auto reg = small_registry();
  // a digit run after a full 4-char number must not be absorbed
  CHECK(vanilla_recognize(tokens("lufthansa one two three four five six"), reg) ==
        parse_icao("DLH1234"));
}

TEST_CASE("completeness over invertible variants with a command tail") {
  auto reg = cru::testing::data_registry();
  std::vector<VariantKind> kinds = {VariantKind::Full, VariantKind::GroupedNumber,
                                    VariantKind::SpelledDesignator};
  SpokenForm tail = tokens("cleared to land runway two seven right");
  std::mt19937_64 rng(99);
  auto designators = reg.designators();
  int checked = 0;
  for (std::size_t i = 0; i < designators.size(); i += 3) {
    IcaoCallsign cs{designators[i], cru::testing::random_number(rng)};
    for (const auto& variant : expand_to_spoken(cs, reg, kinds)) {
      SpokenForm transcript = variant.tokens;
      transcript.insert(transcript.end(), tail.begin(), tail.end());
      auto got = vanilla_recognize(transcript, reg);
      REQUIRE_MESSAGE(got.has_value(), cs.canonical());
      CHECK(*got == cs);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("determinism") {
  auto reg = small_registry();
  SpokenForm t = tokens("ryanair niner five three kilo climb flight level three one zero");
  CHECK(extract_spans(t, reg) == extract_spans(t, reg));
  CHECK(vanilla_recognize(t, reg) == vanilla_recognize(t, reg));
}
