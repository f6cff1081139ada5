/*
 * Copyright 2026 The genplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace genplan::ltl {

/// Finite set of letter symbols. Exactly one letter holds at each position of
/// a word, so letters are not propositions.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  const std::string& name(int letter) const { return letters_.at(letter); }
  const std::vector<std::string>& letters() const { return letters_; }
  std::optional<int> find(const std::string& letter) const;
  /// Throws UnknownLetter.
  int index(const std::string& letter) const;
  bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, int> index_;
};

/// Ultimately periodic word: letters[0..n) where position n-1 is followed by
/// position loop_start. The loop is never empty.
struct Word {
  std::vector<int> letters;
  std::size_t loop_start = 0;

  std::size_t size() const { return letters.size(); }
  std::size_t next(std::size_t pos) const { return pos + 1 < letters.size() ? pos + 1 : loop_start; }
  bool operator==(const Word&) const = default;
};

/// Throws AlphabetMismatch when the word is malformed or uses a letter
/// outside the alphabet.
void check_word(const Word& w, const Alphabet& sigma);

enum class Op { True, False, Letter, Not, And, Or, Implies, Next, Until, Release, Eventually, Always };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string letter;  // Op::Letter only
  NodePtr lhs;
  NodePtr rhs;
};

/// Immutable LTL formula over letter symbols.
class Formula {
 public:
  Formula();  // true
  explicit Formula(NodePtr node) : node_(std::move(node)) {}

  static Formula truth();
  static Formula falsity();
  static Formula letter(std::string name);
  static Formula any_of(const std::vector<std::string>& letters);  // disjunction, false if empty

  Formula operator!() const;
  friend Formula operator&&(const Formula& a, const Formula& b);
  friend Formula operator||(const Formula& a, const Formula& b);
  Formula implies(const Formula& rhs) const;
  Formula next() const;
  Formula until(const Formula& rhs) const;
  Formula release(const Formula& rhs) const;
  Formula eventually() const;
  Formula always() const;

  Op op() const { return node_->op; }
  const Node& node() const { return *node_; }
  const NodePtr& ptr() const { return node_; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  /// Node count of the syntax tree.
  std::size_t size() const;
  std::size_t depth() const;
  std::vector<std::string> letters() const;  // sorted, unique
  /// Fully parenthesized text that parse() maps back to an equal formula.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  NodePtr node_;
};

/// Text syntax: true false identifiers "quoted letters" ! X F G & | -> U R ( ).
/// Precedence from tightest: unary, U/R (right assoc), &, |, -> (right assoc).
/// Letters that collide with keywords (X, F, G, U, R, true, false) must be
/// quoted. Throws ParseError with a position, or UnknownLetter when an
/// alphabet is given and a letter is outside it.
Formula parse(const std::string& text, const Alphabet* sigma = nullptr);

/// Throws UnknownLetter if the formula uses a letter outside sigma.
void check_letters(const Formula& f, const Alphabet& sigma);

/// Rewrites into true/false/letter/!letter/&/|/X/U/R with negation only on letters.
Formula negation_normal_form(const Formula& f);

/// Decides whether the ultimately periodic word satisfies f.
bool eval_lasso(const Formula& f, const Word& w, const Alphabet& sigma);

/// eval_lasso with the formula compiled once, for evaluating many words.
class LassoEvaluator {
 public:
  LassoEvaluator(const Formula& f, const Alphabet& sigma);  // throws UnknownLetter
  bool operator()(const Word& w);  // does not validate w

  // Incremental use: the truth of every subformula at one position. Values at
  // the start of a pure cycle come from cycle_values; prepend extends them by
  // one prefix letter.
  std::vector<char> cycle_values(const std::vector<int>& cycle);
  void prepend(int letter, const std::vector<char>& next, std::vector<char>& out) const;
  static bool root(const std::vector<char>& values) { return values.back(); }

 private:
  struct Step {
    Op op;
    int letter = -1;
    int lhs = -1;
    int rhs = -1;
  };
  std::vector<Step> steps_;  // children before parents; the root is last
  std::vector<std::vector<char>> values_;
};

}  // namespace genplan::ltl
