#include "nomlang/regex.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace nomlang {

struct Regex::Node {
  RegexKind kind = RegexKind::kZero;
  std::uint32_t atom = 0;  // name or letter id
  Regex a;
  Regex b;
};

Regex::Regex() : node_(nullptr) {}

Regex Regex::one() {
  static const auto node = std::make_shared<const Node>(Node{RegexKind::kOne, 0, {}, {}});
  return Regex(node);
}

Regex Regex::zero() { return Regex(); }

Regex Regex::name(Name n) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kName, n.id(), {}, {}}));
}

Regex Regex::letter(Letter s) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kLetter, s.id(), {}, {}}));
}

Regex Regex::sum(Regex a, Regex b) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kSum, 0, std::move(a), std::move(b)}));
}

Regex Regex::cat(Regex a, Regex b) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kCat, 0, std::move(a), std::move(b)}));
}

Regex Regex::binder(Name n, Regex body) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kBinder, n.id(), std::move(body), {}}));
}

Regex Regex::star(Regex body) {
  return Regex(std::make_shared<const Node>(Node{RegexKind::kStar, 0, std::move(body), {}}));
}

// A null node stands for 0 so that default-constructed children cost nothing.
RegexKind Regex::kind() const { return node_ ? node_->kind : RegexKind::kZero; }
Name Regex::name() const { return Name::from_id(node_ ? node_->atom : 0); }
Letter Regex::letter() const { return Letter::from_id(node_ ? node_->atom : 0); }

const Regex& Regex::left() const {
  static const Regex zero;
  return node_ ? node_->a : zero;
}

const Regex& Regex::right() const {
  static const Regex zero;
  return node_ ? node_->b : zero;
}

std::size_t Regex::size() const {
  switch (kind()) {
    case RegexKind::kSum:
    case RegexKind::kCat: return 1 + left().size() + right().size();
    case RegexKind::kBinder:
    case RegexKind::kStar: return 1 + body().size();
    default: return 1;
  }
}

std::size_t Regex::depth() const {
  switch (kind()) {
    case RegexKind::kSum:
    case RegexKind::kCat: return 1 + std::max(left().depth(), right().depth());
    case RegexKind::kBinder:
    case RegexKind::kStar: return 1 + body().depth();
    default: return 0;
  }
}

bool operator==(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case RegexKind::kOne:
    case RegexKind::kZero: return true;
    case RegexKind::kName:
    case RegexKind::kLetter: return a.node_->atom == b.node_->atom;
    case RegexKind::kSum:
    case RegexKind::kCat: return a.left() == b.left() && a.right() == b.right();
    case RegexKind::kBinder: return a.name() == b.name() && a.body() == b.body();
    case RegexKind::kStar: return a.body() == b.body();
  }
  return false;
}

namespace {

class RegexParser {
 public:
  RegexParser(detail::Lexer& lex, const Alphabet& alphabet) : lex_(lex), alphabet_(alphabet) {}

  Regex sum() {
    Regex e = cat();
    while (lex_.accept('+')) e = Regex::sum(e, cat());
    return e;
  }

 private:
  bool at_atom() {
    char c = lex_.peek();
    return c == '1' || c == '0' || c == '#' || c == '(' || c == '<' || lex_.at_identifier();
  }

  Regex cat() {
    Regex e = post();
    while (at_atom()) e = Regex::cat(e, post());
    return e;
  }

  Regex post() {
    Regex e = atom();
    while (lex_.accept('*')) e = Regex::star(e);
    return e;
  }

  Regex atom() {
    if (lex_.accept('1')) return Regex::one();
    if (lex_.accept('0')) return Regex::zero();
    if (lex_.accept('#')) return Regex::name(Name::intern(lex_.identifier()));
    if (lex_.accept('(')) {
      Regex e = sum();
      lex_.expect(')');
      return e;
    }
    if (lex_.accept('<')) {
      lex_.expect('#');
      Name n = Name::intern(lex_.identifier());
      lex_.expect('.');
      Regex e = sum();
      lex_.expect('>');
      return Regex::binder(n, e);
    }
    if (lex_.at_identifier()) {
      std::size_t at = lex_.position();
      std::string label = lex_.identifier();
      Letter s = Letter::intern(label);
      if (!alphabet_.contains(s)) throw SyntaxError("undeclared letter '" + label + "'", at);
      return Regex::letter(s);
    }
    if (lex_.at_end()) lex_.fail("unexpected end of expression");
    lex_.fail(std::string("unexpected character '") + lex_.peek() + "'");
  }

  detail::Lexer& lex_;
  const Alphabet& alphabet_;
};

Regex parse_body(detail::Lexer& lex, const Alphabet& alphabet) {
  RegexParser parser(lex, alphabet);
  Regex e = parser.sum();
  if (!lex.at_end()) lex.fail(std::string("unexpected character '") + lex.peek() + "'");
  return e;
}

// Binding strength: sum 0, cat 1, star 2, atoms 3.
int precedence(const Regex& e) {
  switch (e.kind()) {
    case RegexKind::kSum: return 0;
    case RegexKind::kCat: return 1;
    case RegexKind::kStar: return 2;
    default: return 3;
  }
}

std::string render(const Regex& e, int context) {
  std::string out;
  switch (e.kind()) {
    case RegexKind::kOne: out = "1"; break;
    case RegexKind::kZero: out = "0"; break;
    case RegexKind::kName: out = "#" + e.name().label(); break;
    case RegexKind::kLetter: out = e.letter().label(); break;
    case RegexKind::kSum: out = render(e.left(), 0) + " + " + render(e.right(), 1); break;
    case RegexKind::kCat: out = render(e.left(), 1) + " " + render(e.right(), 2); break;
    case RegexKind::kBinder:
      out = "<#" + e.name().label() + ". " + render(e.body(), 0) + " >";
      break;
    case RegexKind::kStar: out = render(e.body(), 3) + "*"; break;
  }
  return precedence(e) < context ? "(" + out + ")" : out;
}

void collect_free(const Regex& e, std::vector<Name>& bound, NameSet& out) {
  switch (e.kind()) {
    case RegexKind::kName:
      if (std::find(bound.begin(), bound.end(), e.name()) == bound.end()) out.insert(e.name());
      break;
    case RegexKind::kSum:
    case RegexKind::kCat:
      collect_free(e.left(), bound, out);
      collect_free(e.right(), bound, out);
      break;
    case RegexKind::kBinder:
      bound.push_back(e.name());
      collect_free(e.body(), bound, out);
      bound.pop_back();
      break;
    case RegexKind::kStar:
      collect_free(e.body(), bound, out);
      break;
    default:
      break;
  }
}

void collect_letters(const Regex& e, std::set<Letter>& out) {
  switch (e.kind()) {
    case RegexKind::kLetter: out.insert(e.letter()); break;
    case RegexKind::kSum:
    case RegexKind::kCat:
      collect_letters(e.left(), out);
      collect_letters(e.right(), out);
      break;
    case RegexKind::kBinder:
    case RegexKind::kStar: collect_letters(e.body(), out); break;
    default: break;
  }
}

}  // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet) {
  detail::Lexer lex(text);
  return parse_body(lex, alphabet);
}

NreFile parse_nre(std::string_view text) {
  detail::Lexer lex(text);
  NreFile file;
  // A leading `letters` keyword opens the alphabet header.
  if (lex.at_identifier()) {
    detail::Lexer probe = lex;
    if (probe.identifier() == "letters") {
      lex = probe;
      while (!lex.accept(';')) {
        if (lex.at_end()) lex.fail("unterminated letters declaration");
        file.alphabet.add(Letter::intern(lex.identifier()));
      }
    }
  }
  file.expr = parse_body(lex, file.alphabet);
  return file;
}

std::string to_string(const Regex& e) { return render(e, 0); }

std::string to_nre(const NreFile& file) {
  std::string out;
  if (!file.alphabet.empty()) {
    out = "letters";
    for (Letter s : file.alphabet.letters()) out += " " + s.label();
    out += ";\n";
  }
  return out + to_string(file.expr) + "\n";
}

NameSet free_names(const Regex& e) {
  std::vector<Name> bound;
  NameSet out;
  collect_free(e, bound, out);
  return out;
}

std::set<Letter> letters_of(const Regex& e) {
  std::set<Letter> out;
  collect_letters(e, out);
  return out;
}

Regex permute(const Permutation& pi, const Regex& e) {
  switch (e.kind()) {
    case RegexKind::kName: return Regex::name(pi(e.name()));
    case RegexKind::kSum: return Regex::sum(permute(pi, e.left()), permute(pi, e.right()));
    case RegexKind::kCat: return Regex::cat(permute(pi, e.left()), permute(pi, e.right()));
    case RegexKind::kBinder: return Regex::binder(pi(e.name()), permute(pi, e.body()));
    case RegexKind::kStar: return Regex::star(permute(pi, e.body()));
    default: return e;
  }
}

}  // namespace nomlang
