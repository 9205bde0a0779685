#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "magnus/rational.hpp"

namespace magnus {

/**
 * Group word AST.  Grammar accepted by parse():
 *
 *   word   := factor*
 *   factor := atom ('^' int)?
 *   atom   := name | '(' word ')' | '[' word ',' word ']'
 *   name   := letter (letter | digit | '_')*
 *   int    := '-'? digit+
 *
 * Whitespace is ignored; juxtaposition multiplies; the empty word is the
 * identity.  Commutator([a,b]) denotes a^-1 b^-1 a b.
 *
 * Canonical shape: Product nodes have >= 2 factors (parse never produces
 * empty or singleton products), so parse(print(w)) == w for every parsed w.
 */
struct Word {
  enum class Kind { Identity, Generator, Product, Power, Commutator };

  Kind kind = Kind::Identity;
  std::string name;           // Generator
  std::vector<Word> args;     // Product: factors; Power: {base}; Commutator: {a, b}
  BigInt exponent;            // Power

  // Factories and comparisons are defined below the class; Word must be a
  // complete type before std::vector<Word> members are used.
  static Word identity();
  static Word generator(std::string n);
  static Word product(std::vector<Word> factors);
  static Word power(Word base, BigInt e);
  static Word commutator(Word a, Word b);

  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }
};

inline Word Word::identity() { return Word{}; }

inline Word Word::generator(std::string n) {
  Word w;
  w.kind = Kind::Generator;
  w.name = std::move(n);
  return w;
}

inline Word Word::product(std::vector<Word> factors) {
  if (factors.empty()) return identity();
  if (factors.size() == 1) return std::move(factors[0]);
  Word w;
  w.kind = Kind::Product;
  w.args = std::move(factors);
  return w;
}

inline Word Word::power(Word base, BigInt e) {
  Word w;
  w.kind = Kind::Power;
  w.args.push_back(std::move(base));
  w.exponent = std::move(e);
  return w;
}

inline Word Word::commutator(Word a, Word b) {
  Word w;
  w.kind = Kind::Commutator;
  w.args.push_back(std::move(a));
  w.args.push_back(std::move(b));
  return w;
}

inline bool Word::operator==(const Word& o) const {
  return kind == o.kind && name == o.name && exponent == o.exponent && args == o.args;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, size_t offset)
      : std::runtime_error(std::move(msg) + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

Word parse(const std::string& text);
std::string print(const Word& w);

// All generator names appearing in the word (sorted, unique).
std::vector<std::string> generator_names(const Word& w);

// One word per line; '#' starts a comment; blank lines skipped.
struct CorpusEntry {
  size_t line_no;
  std::string text;
  Word word;
};
std::vector<CorpusEntry> read_corpus(std::istream& in);

/**
 * Evaluate a word in any group given by an operations context.  Ops must
 * provide:  Element type, identity(), mul(a,b), inv(a).
 * Power uses square-and-multiply; Commutator(a,b) = a^-1 b^-1 a b.
 * Unbound generator names raise std::invalid_argument.
 */
template <class Ops>
typename Ops::Element evaluate(const Word& w,
                               const std::map<std::string, typename Ops::Element>& env,
                               const Ops& ops) {
  using E = typename Ops::Element;
  switch (w.kind) {
    case Word::Kind::Identity:
      return ops.identity();
    case Word::Kind::Generator: {
      auto it = env.find(w.name);
      if (it == env.end()) throw std::invalid_argument("unbound generator: " + w.name);
      return it->second;
    }
    case Word::Kind::Product: {
      E acc = ops.identity();
      for (const Word& f : w.args) acc = ops.mul(acc, evaluate(f, env, ops));
      return acc;
    }
    case Word::Kind::Power: {
      E base = evaluate(w.args[0], env, ops);
      BigInt e = w.exponent;
      if (e < 0) {
        base = ops.inv(base);
        e = -e;
      }
      E acc = ops.identity();
      while (e > 0) {
        if ((e & 1) != 0) acc = ops.mul(acc, base);
        e >>= 1;
        if (e > 0) base = ops.mul(base, base);
      }
      return acc;
    }
    case Word::Kind::Commutator: {
      E a = evaluate(w.args[0], env, ops);
      E b = evaluate(w.args[1], env, ops);
      return ops.mul(ops.mul(ops.inv(a), ops.inv(b)), ops.mul(a, b));
    }
  }
  throw std::logic_error("unreachable word kind");
}

}  // namespace magnus
