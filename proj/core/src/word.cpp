#include "magnus/word.hpp"

#include <cctype>
#include <set>

namespace magnus {

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek_is(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  }

  static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool atom_ahead() {
    skip();
    if (i >= s.size()) return false;
    char c = s[i];
    return name_start(c) || c == '(' || c == '[';
  }

  Word parse_word() {
    std::vector<Word> factors;
    while (atom_ahead()) factors.push_back(parse_factor());
    return Word::product(std::move(factors));
  }

  Word parse_factor() {
    Word a = parse_atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      return Word::power(std::move(a), parse_int());
    }
    return a;
  }

  Word parse_atom() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    char c = s[i];
    if (name_start(c)) {
      size_t start = i;
      while (i < s.size() && name_char(s[i])) ++i;
      return Word::generator(s.substr(start, i - start));
    }
    if (c == '(') {
      ++i;
      Word w = parse_word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++i;
      Word a = parse_word();
      expect(',');
      Word b = parse_word();
      expect(']');
      return Word::commutator(std::move(a), std::move(b));
    }
    throw ParseError("expected generator name, '(' or '['", i);
  }

  BigInt parse_int() {
    skip();
    size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError("expected integer exponent", i);
    return BigInt(s.substr(start, i - start));
  }
};

// factor-level rendering: usable wherever the grammar expects a factor
std::string print_factor(const Word& w);

// atom-level rendering: power bases must parse as a single atom
std::string print_atom(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Generator:
      return w.name;
    case Word::Kind::Commutator:
      return "[" + print(w.args[0]) + "," + print(w.args[1]) + "]";
    default:
      return "(" + print(w) + ")";
  }
}

std::string print_factor(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Identity:
      return "()";
    case Word::Kind::Generator:
      return w.name;
    case Word::Kind::Power:
      return print_atom(w.args[0]) + "^" + w.exponent.str();
    case Word::Kind::Commutator:
      return print_atom(w);
    case Word::Kind::Product:
      return "(" + print(w) + ")";
  }
  throw std::logic_error("unreachable word kind");
}

void collect_names(const Word& w, std::set<std::string>& out) {
  if (w.kind == Word::Kind::Generator) out.insert(w.name);
  for (const Word& a : w.args) collect_names(a, out);
}

}  // namespace

Word parse(const std::string& text) {
  Parser p{text};
  Word w = p.parse_word();
  p.skip();
  if (p.i < text.size()) throw ParseError("unexpected character", p.i);
  return w;
}

std::string print(const Word& w) {
  if (w.kind == Word::Kind::Identity) return "";
  if (w.kind == Word::Kind::Product) {
    // Names lex by maximal munch, so a generator directly followed by a
    // letter would fuse into one name; separate those factors with a space.
    std::string s;
    for (size_t k = 0; k < w.args.size(); ++k) {
      std::string f = print_factor(w.args[k]);
      if (k > 0 && w.args[k - 1].kind == Word::Kind::Generator &&
          Parser::name_start(f[0]))
        s += ' ';
      s += f;
    }
    return s;
  }
  return print_factor(w);
}

std::vector<std::string> generator_names(const Word& w) {
  std::set<std::string> names;
  collect_names(w, names);
  return std::vector<std::string>(names.begin(), names.end());
}

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = line;
    if (auto pos = text.find('#'); pos != std::string::npos) text.resize(pos);
    size_t a = 0, b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    text = text.substr(a, b - a);
    if (text.empty()) continue;
    try {
      out.push_back({line_no, text, parse(text)});
    } catch (const ParseError& e) {
      throw std::runtime_error("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace magnus
