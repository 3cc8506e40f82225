#include "hypcells/fsa.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hypcells/error.hpp"
#include "hypcells/presentation.hpp"

namespace hypcells {

namespace {

constexpr std::string_view kEpsilonName = "@";

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

void require_same_alphabet(const Fsa& a, const Fsa& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "automata over different alphabets");
}

void close_epsilon(const Fsa& a, std::vector<Fsa::State>& set) {
  std::vector<Fsa::State> stack(set.begin(), set.end());
  while (!stack.empty()) {
    const Fsa::State q = stack.back();
    stack.pop_back();
    for (Fsa::State t : a.epsilons(q)) {
      if (std::find(set.begin(), set.end(), t) == set.end()) {
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

Fsa subset_construction(const Fsa& a, std::size_t cap) {
  Fsa out(a.alphabet(), 0);
  std::unordered_map<std::vector<Fsa::State>, Fsa::State, VectorHash> index;
  std::vector<std::vector<Fsa::State>> sets;
  std::vector<Fsa::State> start{a.initial()};
  close_epsilon(a, start);

  auto intern = [&](std::vector<Fsa::State> set) {
    const auto it = index.find(set);
    if (it != index.end()) return it->second;
    if (sets.size() >= cap) {
      throw Error(ErrorCode::StateBlowup, "determinization exceeds state cap " + std::to_string(cap));
    }
    bool acc = false;
    for (auto q : set) acc = acc || a.accepting(q);
    const Fsa::State id = out.add_state(acc);
    index.emplace(set, id);
    sets.push_back(std::move(set));
    return id;
  };

  out.set_initial(intern(std::move(start)));
  std::vector<Fsa::Edge> moves;
  for (Fsa::State d = 0; d < sets.size(); ++d) {
    moves.clear();
    for (auto q : sets[d]) moves.insert(moves.end(), a.edges(q).begin(), a.edges(q).end());
    std::sort(moves.begin(), moves.end());
    for (std::size_t i = 0; i < moves.size();) {
      const Fsa::Symbol sym = moves[i].symbol;
      std::vector<Fsa::State> target;
      for (; i < moves.size() && moves[i].symbol == sym; ++i) {
        if (target.empty() || target.back() != moves[i].target) target.push_back(moves[i].target);
      }
      close_epsilon(a, target);
      const Fsa::State t = intern(std::move(target));
      out.add_edge(d, sym, t);
    }
  }
  return out;
}

// Keep states that can reach an accepting state (plus the initial state).
std::vector<char> live_states(const Fsa& a) {
  std::vector<std::vector<Fsa::State>> rev(a.state_count());
  for (Fsa::State q = 0; q < a.state_count(); ++q) {
    for (const auto& e : a.edges(q)) rev[e.target].push_back(q);
    for (auto t : a.epsilons(q)) rev[t].push_back(q);
  }
  std::vector<char> live(a.state_count(), 0);
  std::vector<Fsa::State> stack;
  for (Fsa::State q = 0; q < a.state_count(); ++q) {
    if (a.accepting(q)) {
      live[q] = 1;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (auto p : rev[q]) {
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return live;
}

// Moore refinement of a deterministic automaton whose states are all live
// (the initial state aside). Missing edges go to an implicit sink.
std::vector<std::uint32_t> refine(const Fsa& d, const std::vector<char>& live) {
  const std::size_t n = d.state_count();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = d.accepting(static_cast<Fsa::State>(q)) ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig;
    for (std::size_t q = 0; q < n; ++q) {
      sig.clear();
      sig.push_back(cls[q]);
      for (const auto& e : d.edges(static_cast<Fsa::State>(q))) {
        if (!live[e.target]) continue;
        sig.push_back(e.symbol);
        sig.push_back(cls[e.target]);
      }
      next[q] = sig_index.emplace(sig, static_cast<std::uint32_t>(sig_index.size())).first->second;
    }
    const std::size_t new_count = sig_index.size();
    cls = std::move(next);
    if (new_count == count) break;
    count = new_count;
  }
  return cls;
}

}  // namespace

std::uint32_t Alphabet::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(ErrorCode::AlphabetMismatch, "unknown symbol '" + std::string(name) + "'");
  return static_cast<std::uint32_t>(it - names.begin());
}

Alphabet generator_alphabet(const Presentation& p) {
  Alphabet a;
  for (std::size_t s = 0; s < p.rank(); ++s) a.names.emplace_back(1, p.symbol(static_cast<Generator>(s)));
  return a;
}

Alphabet pair_alphabet(const Presentation& p) {
  const std::size_t n = p.rank();
  auto name = [&](std::size_t i) { return i == n ? std::string("_") : std::string(1, p.symbol(static_cast<Generator>(i))); };
  Alphabet a;
  for (std::size_t x = 0; x <= n; ++x) {
    for (std::size_t y = 0; y <= n; ++y) {
      if (x == n && y == n) continue;
      a.names.push_back(name(x) + "," + name(y));
    }
  }
  return a;
}

Fsa::Fsa(Alphabet alphabet, std::size_t states)
    : alphabet_(std::move(alphabet)), edges_(states), eps_(states), accept_(states, 0) {}

std::size_t Fsa::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  for (const auto& e : eps_) n += e.size();
  return n;
}

Fsa::State Fsa::add_state(bool accepting) {
  edges_.emplace_back();
  eps_.emplace_back();
  accept_.push_back(accepting ? 1 : 0);
  return static_cast<State>(edges_.size() - 1);
}

void Fsa::add_edge(State from, Symbol symbol, State to) {
  auto& list = edges_[from];
  const Edge e{symbol, to};
  const auto it = std::lower_bound(list.begin(), list.end(), e);
  if (it == list.end() || *it != e) list.insert(it, e);
}

void Fsa::add_epsilon(State from, State to) {
  auto& list = eps_[from];
  const auto it = std::lower_bound(list.begin(), list.end(), to);
  if (it == list.end() || *it != to) list.insert(it, to);
}

Fsa::State Fsa::next(State q, Symbol a) const {
  const auto& list = edges_[q];
  const auto it = std::lower_bound(list.begin(), list.end(), Edge{a, 0});
  return it != list.end() && it->symbol == a ? it->target : kNone;
}

bool Fsa::is_deterministic() const {
  for (std::size_t q = 0; q < edges_.size(); ++q) {
    if (!eps_[q].empty()) return false;
    for (std::size_t i = 1; i < edges_[q].size(); ++i) {
      if (edges_[q][i].symbol == edges_[q][i - 1].symbol) return false;
    }
  }
  return true;
}

bool Fsa::is_trim() const {
  const std::vector<char> live = live_states(*this);
  std::vector<char> seen(state_count(), 0);
  std::vector<State> stack{initial_};
  seen[initial_] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    auto visit = [&](State t) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    };
    for (const auto& e : edges_[q]) visit(e.target);
    for (auto t : eps_[q]) visit(t);
  }
  for (State q = 0; q < state_count(); ++q) {
    if (q == initial_) continue;
    if (!seen[q] || !live[q]) return false;
  }
  return true;
}

bool Fsa::accepts(const std::vector<Symbol>& word) const {
  if (state_count() == 0) return false;
  std::vector<State> current{initial_};
  close_epsilon(*this, current);
  for (Symbol a : word) {
    std::vector<State> next;
    for (State q : current) {
      const auto& list = edges_[q];
      for (auto it = std::lower_bound(list.begin(), list.end(), Edge{a, 0}); it != list.end() && it->symbol == a; ++it) {
        if (std::find(next.begin(), next.end(), it->target) == next.end()) next.push_back(it->target);
      }
    }
    close_epsilon(*this, next);
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return accepting(q); });
}

std::vector<Fsa::Symbol> Fsa::symbols_of(const std::vector<std::string>& names) const {
  std::vector<Symbol> out;
  for (const auto& n : names) out.push_back(alphabet_.index_of(n));
  return out;
}

void Fsa::write(std::ostream& out) const {
  out << "states " << state_count() << " alphabet";
  for (const auto& n : alphabet_.names) out << ' ' << n;
  out << " initial " << initial_ << '\n';
  for (State q = 0; q < state_count(); ++q) {
    for (const auto& e : edges_[q]) out << q << ' ' << alphabet_.names[e.symbol] << ' ' << e.target << '\n';
    for (auto t : eps_[q]) out << q << ' ' << kEpsilonName << ' ' << t << '\n';
  }
  out << "accept";
  for (State q = 0; q < state_count(); ++q) {
    if (accept_[q]) out << ' ' << q;
  }
  out << '\n';
}

Fsa Fsa::read(std::istream& in) {
  auto corrupt = [](const std::string& what) { return Error(ErrorCode::CorruptCache, "automaton file: " + what); };
  std::string line;
  if (!std::getline(in, line)) throw corrupt("missing header");
  std::istringstream header(line);
  std::string word;
  std::size_t states = 0;
  if (!(header >> word) || word != "states" || !(header >> states) || !(header >> word) || word != "alphabet") {
    throw corrupt("bad header");
  }
  Alphabet alphabet;
  State initial = 0;
  for (;;) {
    if (!(header >> word)) throw corrupt("header lacks initial state");
    if (word == "initial") break;
    alphabet.names.push_back(word);
  }
  if (!(header >> initial) || (states > 0 && initial >= states)) throw corrupt("bad initial state");
  Fsa a(std::move(alphabet), states);
  a.initial_ = initial;
  bool accept_seen = false;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    if (first == "accept") {
      State q;
      while (row >> q) {
        if (q >= states) throw corrupt("accepting state out of range");
        a.accept_[q] = 1;
      }
      accept_seen = true;
      continue;
    }
    std::string sym;
    State to = 0;
    State from = 0;
    try {
      from = static_cast<State>(std::stoul(first));
    } catch (const std::exception&) {
      throw corrupt("bad line '" + line + "'");
    }
    if (!(row >> sym >> to) || from >= states || to >= states) throw corrupt("bad transition '" + line + "'");
    if (sym == kEpsilonName) a.add_epsilon(from, to);
    else a.add_edge(from, a.alphabet_.index_of(sym), to);
  }
  if (!accept_seen) throw corrupt("missing accept line");
  return a;
}

void Fsa::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  write(out);
  if (!out) throw Error(ErrorCode::CorruptCache, "cannot write " + path.string());
}

Fsa Fsa::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::CorruptCache, "cannot read " + path.string());
  try {
    return read(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

Fsa determinize_minimize(const Fsa& input, std::size_t state_cap) {
  if (input.state_count() == 0) {
    Fsa empty(input.alphabet(), 1);
    return empty;
  }
  const Fsa d = subset_construction(input, state_cap);
  const std::vector<char> live = live_states(d);
  if (!live[d.initial()]) return Fsa(input.alphabet(), 1);

  // Restrict to live states reachable from the initial state.
  std::vector<char> keep(d.state_count(), 0);
  std::vector<Fsa::State> stack{d.initial()};
  keep[d.initial()] = 1;
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (const auto& e : d.edges(q)) {
      if (live[e.target] && !keep[e.target]) {
        keep[e.target] = 1;
        stack.push_back(e.target);
      }
    }
  }
  const std::vector<std::uint32_t> cls = refine(d, keep);

  // BFS renumbering by symbol order gives a canonical numbering.
  Fsa out(input.alphabet(), 0);
  std::vector<Fsa::State> rep;  // one original state per class, by new number
  std::unordered_map<std::uint32_t, Fsa::State> class_number;
  auto visit = [&](Fsa::State q) {
    const auto [it, fresh] = class_number.emplace(cls[q], static_cast<Fsa::State>(rep.size()));
    if (fresh) {
      rep.push_back(q);
      out.add_state(d.accepting(q));
    }
    return it->second;
  };
  out.set_initial(visit(d.initial()));
  for (std::size_t i = 0; i < rep.size(); ++i) {
    for (const auto& e : d.edges(rep[i])) {
      if (!keep[e.target]) continue;
      out.add_edge(static_cast<Fsa::State>(i), e.symbol, visit(e.target));
    }
  }
  return out;
}

bool are_equivalent(const Fsa& a, const Fsa& b) {
  require_same_alphabet(a, b);
  return determinize_minimize(a) == determinize_minimize(b);
}

Fsa combine(BoolOp op, const Fsa& a_in, const Fsa& b_in) {
  require_same_alphabet(a_in, b_in);
  const Fsa a = a_in.is_deterministic() ? a_in : determinize_minimize(a_in);
  const Fsa b = b_in.is_deterministic() ? b_in : determinize_minimize(b_in);
  constexpr Fsa::State none = Fsa::kNone;
  auto accepts = [&](Fsa::State qa, Fsa::State qb) {
    const bool x = qa != none && a.accepting(qa);
    const bool y = qb != none && b.accepting(qb);
    switch (op) {
      case BoolOp::Union: return x || y;
      case BoolOp::Intersection: return x && y;
      case BoolOp::Difference: return x && !y;
    }
    return false;
  };
  Fsa out(a.alphabet(), 0);
  std::unordered_map<std::uint64_t, Fsa::State> index;
  std::vector<std::pair<Fsa::State, Fsa::State>> pairs;
  auto intern = [&](Fsa::State qa, Fsa::State qb) {
    const std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
    const auto [it, fresh] = index.emplace(key, static_cast<Fsa::State>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(qa, qb);
      out.add_state(accepts(qa, qb));
    }
    return it->second;
  };
  out.set_initial(intern(a.state_count() ? a.initial() : none, b.state_count() ? b.initial() : none));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [qa, qb] = pairs[i];
    static const std::vector<Fsa::Edge> kNoEdges;
    const auto& ea = qa == none ? kNoEdges : a.edges(qa);
    const auto& eb = qb == none ? kNoEdges : b.edges(qb);
    std::size_t x = 0, y = 0;
    while (x < ea.size() || y < eb.size()) {
      Fsa::Symbol sym;
      Fsa::State ta = none, tb = none;
      if (y == eb.size() || (x < ea.size() && ea[x].symbol < eb[y].symbol)) {
        sym = ea[x].symbol;
        ta = ea[x++].target;
      } else if (x == ea.size() || eb[y].symbol < ea[x].symbol) {
        sym = eb[y].symbol;
        tb = eb[y++].target;
      } else {
        sym = ea[x].symbol;
        ta = ea[x++].target;
        tb = eb[y++].target;
      }
      if (op == BoolOp::Intersection && (ta == none || tb == none)) continue;
      if (op == BoolOp::Difference && ta == none) continue;
      out.add_edge(static_cast<Fsa::State>(i), sym, intern(ta, tb));
    }
  }
  return determinize_minimize(out);
}

Fsa reversed(const Fsa& a) {
  Fsa out(a.alphabet(), a.state_count() + 1);
  const auto start = static_cast<Fsa::State>(a.state_count());
  out.set_initial(start);
  for (Fsa::State q = 0; q < a.state_count(); ++q) {
    for (const auto& e : a.edges(q)) out.add_edge(e.target, e.symbol, q);
    for (auto t : a.epsilons(q)) out.add_epsilon(t, q);
    if (a.accepting(q)) out.add_epsilon(start, q);
  }
  if (a.state_count()) out.set_accepting(a.initial());
  return out;
}

bool is_empty(const Fsa& a) {
  if (a.state_count() == 0) return true;
  return !live_states(a)[a.initial()];
}

Analysis analyze(const Fsa& input, std::size_t max_length) {
  const Fsa a = input.is_deterministic() ? input : determinize_minimize(input);
  Analysis out;
  out.is_empty = is_empty(a);
  out.counts.assign(max_length + 1, 0);
  if (a.state_count() == 0) return out;
  std::vector<mpz_class> current(a.state_count(), 0), next(a.state_count(), 0);
  current[a.initial()] = 1;
  for (std::size_t len = 0; len <= max_length; ++len) {
    for (Fsa::State q = 0; q < a.state_count(); ++q) {
      if (a.accepting(q)) out.counts[len] += current[q];
    }
    if (len == max_length) break;
    std::fill(next.begin(), next.end(), 0);
    for (Fsa::State q = 0; q < a.state_count(); ++q) {
      if (current[q] == 0) continue;
      for (const auto& e : a.edges(q)) next[e.target] += current[q];
    }
    std::swap(current, next);
  }
  return out;
}

}  // namespace hypcells
