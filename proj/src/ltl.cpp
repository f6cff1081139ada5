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

#include "genplan/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "genplan/error.hpp"

namespace genplan::ltl {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!index_.emplace(letters_[i], static_cast<int>(i)).second)
      throw Error(Errc::InvalidInput, "duplicate letter '" + letters_[i] + "'");
  }
}

std::optional<int> Alphabet::find(const std::string& letter) const {
  auto it = index_.find(letter);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::index(const std::string& letter) const {
  auto i = find(letter);
  if (!i) throw Error(Errc::UnknownLetter, "letter '" + letter + "' is not in the alphabet");
  return *i;
}

void check_word(const Word& w, const Alphabet& sigma) {
  if (w.letters.empty() || w.loop_start >= w.letters.size())
    throw Error(Errc::AlphabetMismatch, "word has an empty loop");
  for (int l : w.letters) {
    if (l < 0 || static_cast<std::size_t>(l) >= sigma.size())
      throw Error(Errc::AlphabetMismatch, "symbol " + std::to_string(l) + " is outside the alphabet");
  }
}

namespace {

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{op, {}, std::move(lhs), std::move(rhs)});
}

bool is_keyword(const std::string& s) {
  return s == "X" || s == "F" || s == "G" || s == "U" || s == "R" || s == "true" || s == "false";
}

bool is_plain_identifier(const std::string& s) {
  if (s.empty() || is_keyword(s)) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void print(const Node& n, std::ostream& os) {
  switch (n.op) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Letter:
      if (is_plain_identifier(n.letter)) {
        os << n.letter;
      } else {
        os << '"';
        for (char c : n.letter) {
          if (c == '"' || c == '\\') os << '\\';
          os << c;
        }
        os << '"';
      }
      return;
    case Op::Not: os << "!"; print(*n.lhs, os); return;
    case Op::Next: os << "X "; print(*n.lhs, os); return;
    case Op::Eventually: os << "F "; print(*n.lhs, os); return;
    case Op::Always: os << "G "; print(*n.lhs, os); return;
    default: break;
  }
  const char* sym = n.op == Op::And       ? " & "
                    : n.op == Op::Or      ? " | "
                    : n.op == Op::Implies ? " -> "
                    : n.op == Op::Until   ? " U "
                                          : " R ";
  os << '(';
  print(*n.lhs, os);
  os << sym;
  print(*n.rhs, os);
  os << ')';
}

bool equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.op != b.op || a.letter != b.letter) return false;
  if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !equal(*a.rhs, *b.rhs)) return false;
  return true;
}

}  // namespace

Formula::Formula() : node_(make(Op::True)) {}

Formula Formula::truth() { return Formula(make(Op::True)); }
Formula Formula::falsity() { return Formula(make(Op::False)); }
Formula Formula::letter(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Letter, std::move(name), nullptr, nullptr}));
}
Formula Formula::any_of(const std::vector<std::string>& letters) {
  if (letters.empty()) return falsity();
  Formula f = letter(letters.front());
  for (std::size_t i = 1; i < letters.size(); ++i) f = f || letter(letters[i]);
  return f;
}

Formula Formula::operator!() const { return Formula(make(Op::Not, node_)); }
Formula operator&&(const Formula& a, const Formula& b) { return Formula(make(Op::And, a.node_, b.node_)); }
Formula operator||(const Formula& a, const Formula& b) { return Formula(make(Op::Or, a.node_, b.node_)); }
Formula Formula::implies(const Formula& rhs) const { return Formula(make(Op::Implies, node_, rhs.node_)); }
Formula Formula::next() const { return Formula(make(Op::Next, node_)); }
Formula Formula::until(const Formula& rhs) const { return Formula(make(Op::Until, node_, rhs.node_)); }
Formula Formula::release(const Formula& rhs) const { return Formula(make(Op::Release, node_, rhs.node_)); }
Formula Formula::eventually() const { return Formula(make(Op::Eventually, node_)); }
Formula Formula::always() const { return Formula(make(Op::Always, node_)); }

std::size_t Formula::size() const {
  std::function<std::size_t(const Node&)> count = [&](const Node& n) -> std::size_t {
    return 1 + (n.lhs ? count(*n.lhs) : 0) + (n.rhs ? count(*n.rhs) : 0);
  };
  return count(*node_);
}

std::size_t Formula::depth() const {
  std::function<std::size_t(const Node&)> d = [&](const Node& n) -> std::size_t {
    std::size_t sub = 0;
    if (n.lhs) sub = d(*n.lhs);
    if (n.rhs) sub = std::max(sub, d(*n.rhs));
    return 1 + sub;
  };
  return d(*node_) - 1;
}

std::vector<std::string> Formula::letters() const {
  std::set<std::string> out;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.op == Op::Letter) out.insert(n.letter);
    if (n.lhs) walk(*n.lhs);
    if (n.rhs) walk(*n.rhs);
  };
  walk(*node_);
  return {out.begin(), out.end()};
}

std::string Formula::to_string() const {
  std::ostringstream os;
  print(*node_, os);
  return os.str();
}

bool operator==(const Formula& a, const Formula& b) { return equal(*a.node_, *b.node_); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { End, LParen, RParen, Not, And, Or, Implies, Next, Eventually, Always, Until, Release, True, False, Ident };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) { lex(); }

  Formula parse_all() {
    Formula f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
    throw Error(Errc::ParseError, msg + " at position " + std::to_string(pos));
  }

  void lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      auto push = [&](Tok k, std::size_t len) {
        tokens_.push_back({k, text_.substr(start, len), start});
        i += len;
      };
      if (c == '(') push(Tok::LParen, 1);
      else if (c == ')') push(Tok::RParen, 1);
      else if (c == '!') push(Tok::Not, 1);
      else if (c == '&') push(Tok::And, text_.compare(i, 2, "&&") == 0 ? 2 : 1);
      else if (c == '|') push(Tok::Or, text_.compare(i, 2, "||") == 0 ? 2 : 1);
      else if (c == '-' && i + 1 < text_.size() && text_[i + 1] == '>') push(Tok::Implies, 2);
      else if (c == '"') {
        std::string name;
        ++i;
        bool closed = false;
        while (i < text_.size()) {
          if (text_[i] == '\\' && i + 1 < text_.size()) {
            name += text_[i + 1];
            i += 2;
          } else if (text_[i] == '"') {
            ++i;
            closed = true;
            break;
          } else {
            name += text_[i++];
          }
        }
        if (!closed) fail("unterminated quoted letter", start);
        tokens_.push_back({Tok::Ident, name, start});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        std::string word = text_.substr(i, j - i);
        Tok k = Tok::Ident;
        if (word == "X") k = Tok::Next;
        else if (word == "F") k = Tok::Eventually;
        else if (word == "G") k = Tok::Always;
        else if (word == "U") k = Tok::Until;
        else if (word == "R") k = Tok::Release;
        else if (word == "true") k = Tok::True;
        else if (word == "false") k = Tok::False;
        push(k, j - i);
      } else {
        fail(std::string("unexpected character '") + c + "'", i);
      }
    }
    tokens_.push_back({Tok::End, "<end>", text_.size()});
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      take();
      return lhs.implies(parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      f = f || parse_and();
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_binary_temporal();
    while (peek().kind == Tok::And) {
      take();
      f = f && parse_binary_temporal();
    }
    return f;
  }

  Formula parse_binary_temporal() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::Until) {
      take();
      return lhs.until(parse_binary_temporal());
    }
    if (peek().kind == Tok::Release) {
      take();
      return lhs.release(parse_binary_temporal());
    }
    return lhs;
  }

  Formula parse_unary() {
    Token t = take();
    switch (t.kind) {
      case Tok::Not: return !parse_unary();
      case Tok::Next: return parse_unary().next();
      case Tok::Eventually: return parse_unary().eventually();
      case Tok::Always: return parse_unary().always();
      case Tok::True: return Formula::truth();
      case Tok::False: return Formula::falsity();
      case Tok::Ident: return Formula::letter(t.text);
      case Tok::LParen: {
        Formula f = parse_implies();
        if (peek().kind != Tok::RParen) fail("expected ')'", peek().pos);
        take();
        return f;
      }
      default: fail("unexpected '" + t.text + "'", t.pos);
    }
  }

  const std::string& text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text, const Alphabet* sigma) {
  Formula f = Parser(text).parse_all();
  if (sigma) check_letters(f, *sigma);
  return f;
}

void check_letters(const Formula& f, const Alphabet& sigma) {
  for (const auto& l : f.letters()) {
    if (!sigma.find(l)) throw Error(Errc::UnknownLetter, "letter '" + l + "' is not in the alphabet");
  }
}

// ---------------------------------------------------------------------------

Formula negation_normal_form(const Formula& f) {
  std::function<Formula(const Formula&, bool)> nnf = [&](const Formula& g, bool neg) -> Formula {
    switch (g.op()) {
      case Op::True: return neg ? Formula::falsity() : Formula::truth();
      case Op::False: return neg ? Formula::truth() : Formula::falsity();
      case Op::Letter: return neg ? !g : g;
      case Op::Not: return nnf(g.lhs(), !neg);
      case Op::And: return neg ? (nnf(g.lhs(), true) || nnf(g.rhs(), true)) : (nnf(g.lhs(), false) && nnf(g.rhs(), false));
      case Op::Or: return neg ? (nnf(g.lhs(), true) && nnf(g.rhs(), true)) : (nnf(g.lhs(), false) || nnf(g.rhs(), false));
      case Op::Implies:
        return neg ? (nnf(g.lhs(), false) && nnf(g.rhs(), true)) : (nnf(g.lhs(), true) || nnf(g.rhs(), false));
      case Op::Next: return nnf(g.lhs(), neg).next();
      case Op::Until: return neg ? nnf(g.lhs(), true).release(nnf(g.rhs(), true)) : nnf(g.lhs(), false).until(nnf(g.rhs(), false));
      case Op::Release: return neg ? nnf(g.lhs(), true).until(nnf(g.rhs(), true)) : nnf(g.lhs(), false).release(nnf(g.rhs(), false));
      case Op::Eventually: return neg ? Formula::falsity().release(nnf(g.lhs(), true)) : Formula::truth().until(nnf(g.lhs(), false));
      case Op::Always: return neg ? Formula::truth().until(nnf(g.lhs(), true)) : Formula::falsity().release(nnf(g.lhs(), false));
    }
    return g;
  };
  return nnf(f, false);
}

// ---------------------------------------------------------------------------
// Lasso semantics: one truth vector per subformula, U and R as fixpoints
// around the loop.

bool eval_lasso(const Formula& f, const Word& w, const Alphabet& sigma) {
  check_word(w, sigma);
  check_letters(f, sigma);
  return LassoEvaluator(f, sigma)(w);
}

LassoEvaluator::LassoEvaluator(const Formula& f, const Alphabet& sigma) {
  check_letters(f, sigma);
  std::unordered_map<const Node*, int> index;
  std::function<int(const Node&)> compile = [&](const Node& node) -> int {
    if (auto it = index.find(&node); it != index.end()) return it->second;
    Step step{node.op};
    if (node.op == Op::Letter) step.letter = sigma.index(node.letter);
    if (node.lhs) step.lhs = compile(*node.lhs);
    if (node.rhs) step.rhs = compile(*node.rhs);
    steps_.push_back(step);
    return index[&node] = static_cast<int>(steps_.size()) - 1;
  };
  compile(f.node());
  values_.resize(steps_.size());
}

bool LassoEvaluator::operator()(const Word& w) {
  const std::size_t n = w.size();
  // Until is the least and release the greatest fixpoint of the local
  // unfolding. One backward sweep of the cycle seeded with the extremal value
  // fixes the loop start, a second one the rest of the cycle, and a last one
  // the prefix.
  const std::size_t loop = w.loop_start;
  auto fixpoint = [&](std::vector<char>& v, const std::vector<char>* a, const std::vector<char>& b, bool until) {
    auto update = [&](std::size_t k, char next) {
      v[k] = until ? (b[k] || ((a ? (*a)[k] : 1) && next)) : (b[k] && ((a ? (*a)[k] : 0) || next));
    };
    char wrap = until ? 0 : 1;
    for (int pass = 0; pass < 2; ++pass) {
      update(n - 1, wrap);
      for (std::size_t k = n - 1; k-- > loop;) update(k, v[k + 1]);
      wrap = v[loop];
    }
    for (std::size_t k = loop; k-- > 0;) update(k, v[k + 1]);
  };
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    std::vector<char>& v = values_[i];
    v.assign(n, 0);  // every case below writes all positions except False
    const std::vector<char>* a = st.lhs >= 0 ? &values_[st.lhs] : nullptr;
    const std::vector<char>* b = st.rhs >= 0 ? &values_[st.rhs] : nullptr;
    switch (st.op) {
      case Op::True: std::fill(v.begin(), v.end(), 1); break;
      case Op::False: break;
      case Op::Letter:
        for (std::size_t k = 0; k < n; ++k) v[k] = w.letters[k] == st.letter;
        break;
      case Op::Not:
        for (std::size_t k = 0; k < n; ++k) v[k] = !(*a)[k];
        break;
      case Op::And:
        for (std::size_t k = 0; k < n; ++k) v[k] = (*a)[k] && (*b)[k];
        break;
      case Op::Or:
        for (std::size_t k = 0; k < n; ++k) v[k] = (*a)[k] || (*b)[k];
        break;
      case Op::Implies:
        for (std::size_t k = 0; k < n; ++k) v[k] = !(*a)[k] || (*b)[k];
        break;
      case Op::Next:
        for (std::size_t k = 0; k < n; ++k) v[k] = (*a)[w.next(k)];
        break;
      case Op::Until: fixpoint(v, a, *b, true); break;
      case Op::Release: fixpoint(v, a, *b, false); break;
      case Op::Eventually: fixpoint(v, nullptr, *a, true); break;
      case Op::Always: fixpoint(v, nullptr, *a, false); break;
    }
  }
  return values_.back()[0];
}

std::vector<char> LassoEvaluator::cycle_values(const std::vector<int>& cycle) {
  (*this)(Word{cycle, 0});
  std::vector<char> out(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) out[i] = values_[i][0];
  return out;
}

void LassoEvaluator::prepend(int letter, const std::vector<char>& next, std::vector<char>& out) const {
  out.resize(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    const char a = st.lhs >= 0 ? out[st.lhs] : 0;
    const char b = st.rhs >= 0 ? out[st.rhs] : 0;
    char v = 0;
    switch (st.op) {
      case Op::True: v = 1; break;
      case Op::False: v = 0; break;
      case Op::Letter: v = letter == st.letter; break;
      case Op::Not: v = !a; break;
      case Op::And: v = a && b; break;
      case Op::Or: v = a || b; break;
      case Op::Implies: v = !a || b; break;
      case Op::Next: v = next[st.lhs]; break;
      case Op::Until: v = b || (a && next[i]); break;
      case Op::Release: v = b && (a || next[i]); break;
      case Op::Eventually: v = a || next[i]; break;
      case Op::Always: v = a && next[i]; break;
    }
    out[i] = v;
  }
}

}  // namespace genplan::ltl
