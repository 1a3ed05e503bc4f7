// Copyright 2026 The Learnability Authors. All Rights Reserved.
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "learnability/concepts.hpp"
#include "learnability/error.hpp"
#include "test_util.hpp"

using namespace learnability;

namespace {

Concept parse(const std::string& text, const EmbeddingStore* vocab = nullptr) {
  std::istringstream in(text);
  return parse_concept(in, "family", "inline", vocab);
}

EmbeddingStore small_store(std::vector<std::string> words) {
  std::vector<double> values(words.size(), 1.0);
  return EmbeddingStore("small", 1, std::move(words), values);
}

}  // namespace

TEST_CASE("one word per line") {
  const auto c = parse("mom\nbrother\ncousin\n");
  CHECK(c.words == std::vector<std::string>{"mom", "brother", "cousin"});
  CHECK(c.raw_entries == 3);
}

TEST_CASE("case folding deduplicates") {
  const auto c = parse("Happy\nhappy\n");
  CHECK(c.words == std::vector<std::string>{"happy"});
  CHECK(c.raw_entries == 2);
}

TEST_CASE("comments, blanks and surrounding whitespace are ignored") {
  const auto c = parse("# kin\n\n  aunt \r\n\tuncle\n#niece\n");
  CHECK(c.words == std::vector<std::string>{"aunt", "uncle"});
}

TEST_CASE("empty lists are input errors") {
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("# only a comment\n\n"), InputError);
  testutil::TempDir dir;
  const auto path = testutil::write_file(dir / "empty.txt", "");
  CHECK_THROWS_AS(load_concept(path, "empty"), InputError);
  CHECK_THROWS_AS(load_concept(dir / "missing.txt", "missing"), InputError);
}

TEST_CASE("wildcards need a vocabulary") {
  try {
    parse("happ*\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("--expand-wildcards") != std::string::npos);
  }
}

TEST_CASE("wildcards expand by prefix") {
  const auto store = small_store({"happy", "happen", "hat", "happiness", "sad"});
  const auto c = parse("happ*\nsad\nhappy\n", &store);
  CHECK(c.words == std::vector<std::string>{"happen", "happiness", "happy", "sad"});
  CHECK(c.expanded_wildcards == 1);
  CHECK_THROWS_AS(parse("h*p*\n", &store), ParseError);
  CHECK_THROWS_AS(parse("*\n", &store), ParseError);
  CHECK_THROWS_AS(parse("zz*\n", &store), InputError);  // expands to nothing
}

TEST_CASE("resolve partitions the list") {
  const auto store = small_store({"a", "b", "c", "d", "e", "f"});
  const auto c = parse("a\nzz\nb\nc\nyy\nd\n");
  const auto r = resolve(c, store);
  CHECK(r.in_vocab == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(r.dropped == std::vector<std::string>{"zz", "yy"});
  CHECK(r.size() + r.dropped.size() == c.words.size());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(store.word(r.indices[i]) == r.in_vocab[i]);
}

TEST_CASE("resolve rejects lists that end up too small") {
  const auto store = small_store({"a", "b", "c", "d"});
  try {
    resolve(parse("q\nr\ns\n"), store);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("too small") != std::string::npos);
  }
  CHECK_THROWS_AS(resolve(parse("a\nb\nc\nzz\n"), store), InputError);
}

TEST_CASE("random_concept sizes and determinism") {
  const auto store = small_store(synthetic_vocabulary(1000));
  const std::vector<std::string> none;
  const auto r = random_concept(store, 400, none, 7);
  CHECK(r.size() == 400);
  CHECK(std::set(r.indices.begin(), r.indices.end()).size() == 400);
  CHECK(random_concept(store, 400, none, 7).indices == r.indices);
  CHECK(random_concept(store, 400, none, 8).indices != r.indices);

  const auto all = random_concept(store, store.size(), none, 3);
  CHECK(std::set(all.in_vocab.begin(), all.in_vocab.end()).size() == store.size());

  CHECK_THROWS_AS(random_concept(store, 3, none, 1), InvalidArgument);
  CHECK_THROWS_AS(random_concept(store, 1001, none, 1), InvalidArgument);
}

TEST_CASE("random lists avoid excluded words") {
  const auto store = small_store(synthetic_vocabulary(30));
  std::vector<std::string> exclude;
  for (std::size_t i = 0; i < 20; ++i) exclude.push_back(store.word(i));
  exclude.push_back("not-in-vocab");
  const auto r = random_concept(store, 10, exclude, 11);
  std::set<std::size_t> got(r.indices.begin(), r.indices.end());
  CHECK(got.size() == 10);
  CHECK(*got.begin() == 20);
  CHECK_THROWS_AS(random_concept(store, 11, exclude, 11), InvalidArgument);
}

TEST_CASE("sample_vocabulary is uniform over the complement") {
  const auto store = small_store(synthetic_vocabulary(50));
  const std::vector<std::string> exclude{store.word(0), store.word(1)};
  const std::size_t draws = 10000;
  const std::size_t size = 5;
  std::vector<double> hits(store.size(), 0.0);
  for (std::uint64_t seed = 0; seed < draws; ++seed) {
    for (auto idx : sample_vocabulary(store, size, exclude, seed)) hits[idx] += 1.0;
  }
  CHECK(hits[0] == 0.0);
  CHECK(hits[1] == 0.0);
  const double p = static_cast<double>(size) / 48.0;
  const double mean = draws * p;
  const double sd = std::sqrt(draws * p * (1.0 - p));
  for (std::size_t i = 2; i < store.size(); ++i) CHECK(std::abs(hits[i] - mean) <= 4.0 * sd);
}
