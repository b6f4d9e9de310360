#include "nomlang/word_syntax.hpp"

#include <stdexcept>

#include "lexer.hpp"

namespace nomlang {

MWord parse_word(std::string_view text) {
  detail::Lexer lex(text);
  TokenStream toks;
  std::size_t depth = 0;
  while (!lex.at_end()) {
    if (lex.accept('^')) continue;
    if (lex.accept('<')) {
      lex.expect('#');
      toks.push_back(Tok::open(Name::intern(lex.identifier())));
      lex.expect('.');
      ++depth;
    } else if (lex.peek() == '>') {
      if (depth == 0) lex.fail("unmatched '>'");
      lex.accept('>');
      toks.push_back(Tok::close());
      --depth;
    } else if (lex.accept('#')) {
      toks.push_back(Tok::name(Name::intern(lex.identifier())));
    } else if (lex.at_identifier()) {
      toks.push_back(Tok::letter(Letter::intern(lex.identifier())));
    } else {
      lex.fail(std::string("unexpected character '") + lex.peek() + "'");
    }
  }
  if (depth != 0) lex.fail("unclosed binder");
  return MWord::from_tokens(std::move(toks));
}

std::string format_tokens(const TokenStream& t) {
  if (t.empty()) return "^";
  std::string out;
  for (const Tok& tok : t) {
    if (!out.empty()) out += ' ';
    switch (tok.kind) {
      case TokKind::kName: out += '#' + tok.as_name().label(); break;
      case TokKind::kLetter: out += tok.as_letter().label(); break;
      case TokKind::kOpen: out += "<#" + tok.as_name().label() + '.'; break;
      case TokKind::kClose: out += '>'; break;
    }
  }
  return out;
}

std::string format(const MWord& w) { return format_tokens(w.tokens()); }
std::string format(const GWord& w) { return format(embed_gm(w)); }

std::string format(const LWord& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.prefix().size(); ++i) {
    if (i) out += ' ';
    out += '#' + w.prefix()[i].label();
  }
  return out + "] " + format_tokens(w.body());
}

std::string format(const SWord& w) {
  std::string out = "{";
  bool first = true;
  for (Name n : w.bound()) {
    if (!first) out += ' ';
    first = false;
    out += '#' + n.label();
  }
  return out + "} " + format_tokens(w.body());
}

std::string format(const Word& w) {
  return std::visit([](const auto& x) { return format(x); }, w);
}

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::kM: return "M";
    case Sort::kG: return "G";
    case Sort::kL: return "L";
    case Sort::kS: return "S";
  }
  return "?";
}

Sort parse_sort(std::string_view text) {
  if (text == "M" || text == "m") return Sort::kM;
  if (text == "G" || text == "g") return Sort::kG;
  if (text == "L" || text == "l") return Sort::kL;
  if (text == "S" || text == "s") return Sort::kS;
  throw std::invalid_argument("unknown sort '" + std::string(text) + "'");
}

}  // namespace nomlang
