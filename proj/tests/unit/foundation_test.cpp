// Copyright 2026 The disinfox-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "disinfox/countries.hpp"
#include "disinfox/crypto.hpp"
#include "disinfox/text.hpp"
#include "disinfox/timestamp.hpp"

namespace disinfox {
namespace {

using namespace std::chrono;

// ---- Timestamp ---------------------------------------------------------------

TEST(TimestampTest, EpochFormatsWithSixFractionDigits) {
  EXPECT_EQ(Timestamp::epoch().to_string(), "1970-01-01T00:00:00.000000Z");
}

TEST(TimestampTest, ParsesZeroToSixFractionDigits) {
  const auto expected = Timestamp::from_micros(1'648'771'200'123'000);  // 2022-04-01T00:00:00.123Z
  EXPECT_EQ(Timestamp::parse("2022-04-01T00:00:00.123Z"), expected);
  EXPECT_EQ(Timestamp::parse("2022-04-01T00:00:00.123000Z"), expected);
  EXPECT_EQ(Timestamp::parse("2022-04-01T00:00:00Z"), Timestamp::from_micros(1'648'771'200'000'000));
  EXPECT_EQ(Timestamp::parse("2022-04-01T00:00:00.000001Z"), Timestamp::from_micros(1'648'771'200'000'001));
}

TEST(TimestampTest, AppliesOffsetsIncludingDecodedPlus) {
  const auto utc = Timestamp::parse("2022-04-01T00:00:00Z");
  EXPECT_EQ(Timestamp::parse("2022-04-01T02:00:00+02:00"), utc);
  EXPECT_EQ(Timestamp::parse("2022-04-01T02:00:00 02:00"), utc);
  EXPECT_EQ(Timestamp::parse("2022-03-31T19:00:00-05:00"), utc);
}

TEST(TimestampTest, RejectsMalformedInput) {
  for (const char* bad : {"", "2022-04-01", "2022-04-01T00:00:00", "2022-04-01T00:00:00.Z",
                          "2022-04-01T00:00:00.1234567Z", "2022-13-01T00:00:00Z", "2022-02-30T00:00:00Z",
                          "2022-04-01T24:00:00Z", "yesterday", "2022-04-01T00:00:00Zjunk"}) {
    EXPECT_FALSE(Timestamp::parse(bad).has_value()) << bad;
  }
}

TEST(TimestampTest, RoundTripsRandomInstants) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-2'000'000'000'000'000, 4'000'000'000'000'000);
  for (int i = 0; i < 1000; ++i) {
    const auto t = Timestamp::from_micros(dist(rng));
    const auto text = t.to_string();
    ASSERT_EQ(text.size(), 27u) << text;
    ASSERT_EQ(Timestamp::parse(text), t) << text;
  }
}

TEST(TimestampTest, DateMapsToMidnightUtc) {
  const auto t = Timestamp::from_date(year{2022} / April / 1);
  EXPECT_EQ(t.to_string(), "2022-04-01T00:00:00.000000Z");
  EXPECT_EQ(t.date(), year{2022} / April / 1);
  EXPECT_EQ(t.next_tick().micros(), t.micros() + 1);
}

TEST(TimestampTest, StrictDateParsing) {
  EXPECT_EQ(parse_date("2022-04-01"), year{2022} / April / 1);
  EXPECT_FALSE(parse_date("2022-4-1"));
  EXPECT_FALSE(parse_date("2022-04-01T00:00:00Z"));
  EXPECT_FALSE(parse_date("April 1, 2022"));
  EXPECT_EQ(format_date(year{2014} / January / 9), "2014-01-09");
}

// ---- text ---------------------------------------------------------------------------

TEST(TextTest, SquashAndNormalize) {
  EXPECT_EQ(text::squash("  Bucha \t massacre\n at  Ukraine "), "Bucha massacre at Ukraine");
  EXPECT_EQ(text::normalize_key("  RUSSIA  Federation"), "russia federation");
  EXPECT_EQ(text::trim("\r\n x \t"), "x");
}

TEST(TextTest, SplitKeepsEmptyFields) {
  EXPECT_EQ(text::split("a;;b", ';'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(text::split("", ';').size(), 1u);
}

TEST(TextTest, Utf8Validation) {
  EXPECT_TRUE(text::is_valid_utf8("Україна"));
  EXPECT_FALSE(text::is_valid_utf8("\xC3\x28"));
  EXPECT_FALSE(text::is_valid_utf8("\xED\xA0\x80"));  // surrogate
  EXPECT_FALSE(text::is_valid_utf8("\xC0\xAF"));      // overlong
  EXPECT_EQ(text::utf8_length("Україна"), 7u);
}

TEST(TextTest, ExcerptCutsAtWordBoundary) {
  EXPECT_EQ(text::excerpt("short text", 280), "short text");
  EXPECT_EQ(text::excerpt("alpha beta gamma", 12), "alpha beta…");
  EXPECT_EQ(text::excerpt("alpha beta gamma", 10), "alpha beta…");
  const std::string cyrillic = "Україна Україна Україна";
  EXPECT_EQ(text::excerpt(cyrillic, 10), "Україна…");
}

TEST(TextTest, ExcerptNeverExceedsLimitPlusMarker) {
  std::mt19937 rng(3);
  const std::string words[] = {"a", "disinformation", "campaign", "targets", "", "Україна"};
  for (int i = 0; i < 300; ++i) {
    std::string s;
    for (int w = 0; w < 120; ++w) s += words[rng() % 6] + " ";
    const auto out = text::excerpt(s, 280);
    EXPECT_LE(text::utf8_length(out), 281u);
    EXPECT_TRUE(text::is_valid_utf8(out));
  }
}

TEST(TextTest, CaseInsensitiveHelpers) {
  EXPECT_TRUE(text::iequals("Bucha", "bUCHA"));
  EXPECT_FALSE(text::iequals("Bucha", "Buch"));
  EXPECT_TRUE(text::icontains("Bucha massacre at Ukraine", "BUCHA"));
  EXPECT_TRUE(text::icontains("anything", ""));
  EXPECT_FALSE(text::icontains("Bucha", "kyiv"));
}

// ---- crypto ---------------------------------------------------------------------------

TEST(CryptoTest, Sha256KnownVector) {
  // FIPS 180-2 "abc" test vector.
  EXPECT_EQ(crypto::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CryptoTest, UuidV5MatchesReferenceImplementation) {
  // Reference values from Python's uuid.uuid5.
  crypto::Uuid dns{};
  ASSERT_TRUE(crypto::parse_uuid("6ba7b810-9dad-11d1-80b4-00c04fd430c8", dns));
  EXPECT_EQ(crypto::format_uuid(crypto::uuid_v5(dns, "www.example.com")), "2ed6657d-e927-568b-95e1-2665a8aea6a2");
}

TEST(CryptoTest, UuidV4HasVersionAndVariantBits) {
  for (int i = 0; i < 50; ++i) {
    const auto text = crypto::format_uuid(crypto::uuid_v4());
    ASSERT_EQ(text.size(), 36u);
    EXPECT_EQ(text[14], '4');
    EXPECT_NE(std::string("89ab").find(text[19]), std::string::npos);
  }
}

TEST(CryptoTest, UuidParseRejectsGarbage) {
  crypto::Uuid u{};
  EXPECT_FALSE(crypto::parse_uuid("not-a-uuid", u));
  EXPECT_FALSE(crypto::parse_uuid("6ba7b810-9dad-11d1-80b4-00c04fd430c", u));
  EXPECT_FALSE(crypto::parse_uuid("6ba7b810x9dad-11d1-80b4-00c04fd430c8", u));
}

TEST(CryptoTest, PasswordHashVerifies) {
  const crypto::ScryptParams cheap{1u << 10, 8, 1};
  const auto digest = crypto::hash_password("correct horse", cheap);
  EXPECT_TRUE(digest.starts_with("scrypt$"));
  EXPECT_EQ(digest.find("correct horse"), std::string::npos);
  EXPECT_TRUE(crypto::verify_password("correct horse", digest));
  EXPECT_FALSE(crypto::verify_password("correct horsE", digest));
  EXPECT_FALSE(crypto::verify_password("correct horse", "scrypt$garbage"));
  EXPECT_NE(digest, crypto::hash_password("correct horse", cheap)) << "salt must differ";
}

TEST(CryptoTest, ConstantTimeEqual) {
  EXPECT_TRUE(crypto::constant_time_equal("abc", "abc"));
  EXPECT_FALSE(crypto::constant_time_equal("abc", "abd"));
  EXPECT_FALSE(crypto::constant_time_equal("abc", "abcd"));
}

// ---- countries --------------------------------------------------------------------------

TEST(CountriesTest, ResolvesNamesCodesAndAliases) {
  ASSERT_NE(find_country("Ukraine"), nullptr);
  EXPECT_EQ(find_country("ukraine")->alpha2, "UA");
  EXPECT_EQ(find_country(" UA ")->name, "Ukraine");
  EXPECT_EQ(find_country("Russian Federation")->alpha2, "RU");
  EXPECT_EQ(find_country("USA")->alpha2, "US");
  EXPECT_EQ(find_country("Atlantis"), nullptr);
}

TEST(CountriesTest, TableIsSelfConsistent) {
  const auto all = all_countries();
  EXPECT_EQ(all.size(), 249u);  // ISO 3166-1 officially assigned alpha-2 codes
  std::set<std::string_view> codes;
  for (const auto& c : all) {
    EXPECT_TRUE(codes.insert(c.alpha2).second) << c.alpha2;
    const auto* by_name = find_country(c.name);
    ASSERT_NE(by_name, nullptr) << c.name;
    EXPECT_EQ(by_name->alpha2, c.alpha2) << c.name;
  }
}

}  // namespace
}  // namespace disinfox
