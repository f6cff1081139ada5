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

#include "genplan/nba.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "genplan/graph.hpp"

namespace genplan::ltl {

std::size_t Nba::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : delta)
    for (const auto& succ : row) n += succ.size();
  return n;
}

namespace {

enum class Kind { True, False, Pos, Neg, And, Or, Next, Until, Release };

struct Sub {
  Kind kind;
  int letter = -1;
  int lhs = -1;
  int rhs = -1;
  bool operator<(const Sub& o) const {
    return std::tie(kind, letter, lhs, rhs) < std::tie(o.kind, o.letter, o.lhs, o.rhs);
  }
};

// Hash-consed closure of an NNF formula.
class Closure {
 public:
  Closure(const Formula& nnf, const Alphabet& sigma) : sigma_(sigma) { root_ = intern(nnf); }

  int root() const { return root_; }
  const Sub& operator[](int id) const { return subs_[id]; }
  std::size_t size() const { return subs_.size(); }

 private:
  int add(Sub s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<int>(subs_.size()));
    if (inserted) subs_.push_back(s);
    return it->second;
  }

  int intern(const Formula& f) {
    switch (f.op()) {
      case Op::True: return add({Kind::True});
      case Op::False: return add({Kind::False});
      case Op::Letter: return add({Kind::Pos, sigma_.index(f.node().letter)});
      case Op::Not: return add({Kind::Neg, sigma_.index(f.lhs().node().letter)});
      case Op::And: return add({Kind::And, -1, intern(f.lhs()), intern(f.rhs())});
      case Op::Or: return add({Kind::Or, -1, intern(f.lhs()), intern(f.rhs())});
      case Op::Next: return add({Kind::Next, -1, intern(f.lhs())});
      case Op::Until: return add({Kind::Until, -1, intern(f.lhs()), intern(f.rhs())});
      case Op::Release: return add({Kind::Release, -1, intern(f.lhs()), intern(f.rhs())});
      default: throw Error(Errc::InvalidInput, "formula is not in negation normal form");
    }
  }

  const Alphabet& sigma_;
  std::vector<Sub> subs_;
  std::map<Sub, int> ids_;
  int root_;
};

using IdSet = std::set<int>;

struct TableauNode {
  IdSet incoming;  // -1 marks the initial pseudo-node
  IdSet todo;
  IdSet old;
  IdSet next;
};

class Tableau {
 public:
  Tableau(const Closure& cl, std::size_t n_letters, std::size_t budget)
      : cl_(cl), n_letters_(n_letters), budget_(budget) {}

  void run() {
    TableauNode start;
    start.incoming = {-1};
    start.todo = {cl_.root()};
    expand(std::move(start));
  }

  struct Done {
    IdSet incoming;
    IdSet old;
    IdSet next;
    std::vector<char> letters;
  };
  const std::vector<Done>& nodes() const { return done_; }

 private:
  // Letters compatible with the literals in `old`; empty vector if none.
  std::vector<char> letters_of(const IdSet& old) const {
    std::vector<char> ok(n_letters_, 1);
    for (int id : old) {
      const Sub& s = cl_[id];
      if (s.kind == Kind::Pos) {
        for (std::size_t l = 0; l < n_letters_; ++l)
          if (static_cast<int>(l) != s.letter) ok[l] = 0;
      } else if (s.kind == Kind::Neg) {
        ok[s.letter] = 0;
      }
    }
    return ok;
  }

  static void add_todo(TableauNode& n, int id) {
    if (!n.old.count(id)) n.todo.insert(id);
  }

  void expand(TableauNode n) {
    // Explicit work list; each entry is a node still to be expanded.
    std::vector<TableauNode> work;
    work.push_back(std::move(n));
    while (!work.empty()) {
      TableauNode cur = std::move(work.back());
      work.pop_back();
      if (cur.todo.empty()) {
        auto key = std::make_pair(cur.old, cur.next);
        auto it = index_.find(key);
        if (it != index_.end()) {
          done_[it->second].incoming.insert(cur.incoming.begin(), cur.incoming.end());
          continue;
        }
        if (done_.size() >= budget_) throw Error(Errc::SizeBudgetExceeded, "tableau exceeds the size budget");
        const int id = static_cast<int>(done_.size());
        index_.emplace(key, id);
        done_.push_back({cur.incoming, cur.old, cur.next, letters_of(cur.old)});
        TableauNode succ;
        succ.incoming = {id};
        succ.todo = cur.next;
        work.push_back(std::move(succ));
        continue;
      }
      const int eta = *cur.todo.begin();
      cur.todo.erase(cur.todo.begin());
      if (cur.old.count(eta)) {
        work.push_back(std::move(cur));
        continue;
      }
      const Sub& s = cl_[eta];
      switch (s.kind) {
        case Kind::False: break;  // contradiction: drop
        case Kind::True:
        case Kind::Pos:
        case Kind::Neg: {
          cur.old.insert(eta);
          auto letters = letters_of(cur.old);
          if (std::find(letters.begin(), letters.end(), 1) != letters.end()) work.push_back(std::move(cur));
          break;
        }
        case Kind::And:
          cur.old.insert(eta);
          add_todo(cur, s.lhs);
          add_todo(cur, s.rhs);
          work.push_back(std::move(cur));
          break;
        case Kind::Next:
          cur.old.insert(eta);
          cur.next.insert(s.lhs);
          work.push_back(std::move(cur));
          break;
        case Kind::Or:
        case Kind::Until:
        case Kind::Release: {
          cur.old.insert(eta);
          TableauNode a = cur;
          TableauNode b = std::move(cur);
          if (s.kind == Kind::Or) {
            add_todo(a, s.lhs);
            add_todo(b, s.rhs);
          } else if (s.kind == Kind::Until) {
            add_todo(a, s.lhs);
            a.next.insert(eta);
            add_todo(b, s.rhs);
          } else {
            add_todo(a, s.rhs);
            a.next.insert(eta);
            add_todo(b, s.lhs);
            add_todo(b, s.rhs);
          }
          work.push_back(std::move(b));
          work.push_back(std::move(a));
          break;
        }
      }
    }
  }

  const Closure& cl_;
  std::size_t n_letters_;
  std::size_t budget_;
  std::vector<Done> done_;
  std::map<std::pair<IdSet, IdSet>, int> index_;
};

}  // namespace

Nba ltl_to_nba(const Formula& f, const Alphabet& sigma, std::size_t budget) {
  check_letters(f, sigma);
  Closure cl(negation_normal_form(f), sigma);
  Tableau tab(cl, sigma.size(), budget);
  tab.run();
  const auto& nodes = tab.nodes();
  const int n = static_cast<int>(nodes.size());
  const std::size_t n_letters = sigma.size();

  std::vector<int> untils;
  for (std::size_t id = 0; id < cl.size(); ++id)
    if (cl[static_cast<int>(id)].kind == Kind::Until) untils.push_back(static_cast<int>(id));
  const int k = static_cast<int>(untils.size());

  // in_set[j][q]: tableau node q belongs to the j-th acceptance set.
  std::vector<std::vector<char>> in_set(k, std::vector<char>(n, 0));
  for (int j = 0; j < k; ++j) {
    const Sub& u = cl[untils[j]];
    for (int q = 0; q < n; ++q)
      in_set[j][q] = !nodes[q].old.count(untils[j]) || nodes[q].old.count(u.rhs);
  }
  std::vector<std::vector<int>> succ(n);
  std::vector<int> initial_nodes;
  for (int q = 0; q < n; ++q) {
    for (int p : nodes[q].incoming) {
      if (p == -1) initial_nodes.push_back(q);
      else succ[p].push_back(q);
    }
  }

  // Degeneralize: level k marks completion of a round over all sets and is
  // the only accepting level; it behaves like level 0 for its successors.
  Nba out;
  out.alphabet = sigma;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  auto get = [&](int q, int level) {
    auto [it, inserted] = ids.emplace(std::make_pair(q, level), static_cast<int>(states.size()));
    if (inserted) {
      if (states.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "NBA exceeds the size budget");
      states.emplace_back(q, level);
      out.delta.emplace_back(n_letters);
      out.accepting.push_back(k == 0 || level == k);
    }
    return it->second;
  };
  for (int q : initial_nodes) out.initial.push_back(get(q, 0));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [q, level] = states[i];
    int j = level == k ? 0 : level;
    while (j < k && in_set[j][q]) ++j;
    std::vector<int> targets;
    for (int r : succ[q]) targets.push_back(get(r, j));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::size_t l = 0; l < n_letters; ++l)
      if (nodes[q].letters[l]) out.delta[i][l] = targets;
  }
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  return reduce(out);
}

Nba reduce(const Nba& a) {
  const int n = static_cast<int>(a.num_states());
  const std::size_t n_letters = a.alphabet.size();
  graph::Adjacency adj(n);
  for (int q = 0; q < n; ++q) {
    for (const auto& row : a.delta[q]) adj[q].insert(adj[q].end(), row.begin(), row.end());
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  auto reach = graph::reachable(adj, a.initial);
  // Keep states that can reach an accepting cycle.
  auto scc = graph::strongly_connected_components(adj, reach);
  std::vector<int> good_roots;
  for (int q = 0; q < n; ++q)
    if (reach[q] && a.accepting[q] && graph::on_cycle(adj, scc, q)) good_roots.push_back(q);
  graph::Adjacency rev(n);
  for (int q = 0; q < n; ++q)
    for (int r : adj[q]) rev[r].push_back(q);
  auto useful = graph::reachable(rev, good_roots, reach);

  // Bisimulation quotient over useful states.
  std::vector<int> block(n, -1);
  for (int q = 0; q < n; ++q)
    if (useful[q]) block[q] = a.accepting[q] ? 1 : 0;
  int n_blocks = 0;
  for (;;) {
    std::map<std::pair<int, std::vector<std::vector<int>>>, int> sig_ids;
    std::vector<int> next(n, -1);
    for (int q = 0; q < n; ++q) {
      if (!useful[q]) continue;
      std::vector<std::vector<int>> sig(n_letters);
      for (std::size_t l = 0; l < n_letters; ++l) {
        for (int r : a.delta[q][l])
          if (useful[r]) sig[l].push_back(block[r]);
        std::sort(sig[l].begin(), sig[l].end());
        sig[l].erase(std::unique(sig[l].begin(), sig[l].end()), sig[l].end());
      }
      auto key = std::make_pair(block[q], std::move(sig));
      auto [it, inserted] = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size()));
      next[q] = it->second;
    }
    const int count = static_cast<int>(sig_ids.size());
    block = std::move(next);
    if (count == n_blocks) break;
    n_blocks = count;
  }
  // Renumber blocks in order of first appearance from the initial states (BFS).
  Nba out;
  out.alphabet = a.alphabet;
  std::vector<int> rep_of_block(n_blocks, -1), new_id(n_blocks, -1);
  for (int q = 0; q < n; ++q)
    if (block[q] >= 0 && rep_of_block[block[q]] == -1) rep_of_block[block[q]] = q;
  std::vector<int> order;
  auto visit = [&](int b) {
    if (new_id[b] == -1) {
      new_id[b] = static_cast<int>(order.size());
      order.push_back(b);
    }
    return new_id[b];
  };
  for (int q : a.initial)
    if (block[q] >= 0) out.initial.push_back(visit(block[q]));
  for (std::size_t i = 0; i < order.size(); ++i) {
    int q = rep_of_block[order[i]];
    out.delta.emplace_back(n_letters);
    out.accepting.push_back(a.accepting[q]);
    for (std::size_t l = 0; l < n_letters; ++l) {
      std::vector<int> t;
      for (int r : a.delta[q][l])
        if (block[r] >= 0) t.push_back(visit(block[r]));
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      out.delta[i][l] = std::move(t);
    }
  }
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  return out;
}

bool nba_accepts(const Nba& a, const Word& w) {
  check_word(w, a.alphabet);
  const int n = static_cast<int>(a.num_states());
  const int len = static_cast<int>(w.size());
  auto id = [&](int q, int pos) { return q * len + pos; };
  graph::Adjacency adj(static_cast<std::size_t>(n) * len);
  for (int q = 0; q < n; ++q)
    for (int pos = 0; pos < len; ++pos)
      for (int r : a.delta[q][w.letters[pos]]) adj[id(q, pos)].push_back(id(r, static_cast<int>(w.next(pos))));
  std::vector<int> sources;
  for (int q : a.initial) sources.push_back(id(q, 0));
  auto reach = graph::reachable(adj, sources);
  auto scc = graph::strongly_connected_components(adj, reach);
  for (int q = 0; q < n; ++q) {
    if (!a.accepting[q]) continue;
    for (int pos = 0; pos < len; ++pos)
      if (reach[id(q, pos)] && graph::on_cycle(adj, scc, id(q, pos))) return true;
  }
  return false;
}

}  // namespace genplan::ltl
