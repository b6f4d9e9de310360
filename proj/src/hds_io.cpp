#include "nomlang/hds_io.hpp"

#include <map>
#include <sstream>

#include "lexer.hpp"

namespace nomlang {
namespace {

enum class Section { kNone, kStates, kTrans };

struct PendingTransition {
  std::string src;
  Label label;
  NameMap sigma;
  std::string dst;
  std::size_t offset;
};

Label parse_label(detail::Lexer& lex) {
  if (lex.accept('#')) return Label::name(Name::intern(lex.identifier()));
  std::string word = lex.identifier();
  if (word == "eps") return Label::eps();
  if (word == "push") return Label::push();
  if (word == "pop") return Label::pop();
  if (word == "open") return Label::open();
  if (word == "close") return Label::close();
  return Label::letter(Letter::intern(word));
}

NameMap parse_map(detail::Lexer& lex) {
  NameMap m;
  if (!lex.accept('[')) return m;
  if (lex.accept(']')) return m;
  do {
    Name x = Name::intern(lex.identifier());
    lex.expect('>');
    if (m.contains(x)) lex.fail("duplicate entry for " + x.label());
    if (lex.accept('*')) {
      m.set(x, Image::star());
    } else {
      lex.accept('#');
      m.set(x, Image::of(Name::intern(lex.identifier())));
    }
  } while (lex.accept(','));
  lex.expect(']');
  return m;
}

void expect_arrow(detail::Lexer& lex, const char* arrow) {
  for (const char* c = arrow; *c; ++c) lex.expect(*c);
}

}  // namespace

Hds parse_hds(std::string_view text) {
  Hds h;
  Section section = Section::kNone;
  std::map<std::string, StateId> ids;
  std::vector<PendingTransition> pending;
  std::string initial;
  std::size_t initial_offset = 0;
  std::vector<std::pair<std::string, std::size_t>> finals;
  std::vector<std::pair<std::string, std::string>> eta;

  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(offset, end - offset);
    std::size_t line_offset = offset;
    offset = end + 1;

    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      continue;  // name labels only appear after `--`
    }
    detail::Lexer lex(raw);
    try {
      std::string head = lex.identifier();
      if (head == "states" && lex.at_end()) {
        section = Section::kStates;
      } else if (head == "trans" && lex.at_end()) {
        section = Section::kTrans;
      } else if (head == "initial" && lex.at_identifier()) {
        section = Section::kNone;
        initial_offset = line_offset;
        initial = lex.identifier();
        while (!lex.at_end()) {
          std::string x = lex.identifier();
          lex.expect('=');
          lex.expect('#');
          eta.emplace_back(x, lex.identifier());
        }
      } else if (head == "finals") {
        section = Section::kNone;
        while (!lex.at_end()) finals.emplace_back(lex.identifier(), line_offset + lex.position());
      } else if (head == "policy") {
        section = Section::kNone;
        std::string p = lex.identifier();
        if (p == "relaxed") {
          h.policy = InjectivityPolicy::kRelaxed;
        } else if (p == "strict") {
          h.policy = InjectivityPolicy::kStrict;
        } else {
          lex.fail("unknown policy '" + p + "'");
        }
        if (!lex.at_end()) lex.fail("trailing text");
      } else if (section == Section::kStates) {
        lex.expect(':');
        if (ids.count(head)) lex.fail("duplicate state '" + head + "'");
        NameSet locals;
        while (!lex.at_end()) locals.insert(Name::intern(lex.identifier()));
        ids[head] = h.add_state(head, std::move(locals));
      } else if (section == Section::kTrans) {
        PendingTransition t;
        t.src = head;
        t.offset = line_offset;
        expect_arrow(lex, "--");
        t.label = parse_label(lex);
        t.sigma = parse_map(lex);
        expect_arrow(lex, "-->");
        t.dst = lex.identifier();
        if (!lex.at_end()) lex.fail("trailing text");
        pending.push_back(std::move(t));
      } else {
        throw SyntaxError("unexpected line starting with '" + head + "'", 0);
      }
    } catch (const SyntaxError& e) {
      // Positions from the line scanner are relative to the line.
      std::string msg = e.what();
      throw SyntaxError(msg.substr(0, msg.rfind(" at position")), line_offset + e.position());
    }
  }

  auto lookup = [&](const std::string& id, std::size_t at) {
    auto it = ids.find(id);
    if (it == ids.end()) throw SyntaxError("unknown state '" + id + "'", at);
    return it->second;
  };
  if (h.states.empty()) throw SyntaxError("no states declared", 0);
  if (initial.empty()) throw SyntaxError("missing initial state", text.size());
  h.initial = lookup(initial, initial_offset);
  for (const auto& [x, n] : eta) h.eta.set(Name::intern(x), Image::of(Name::intern(n)));
  for (const auto& [id, at] : finals) h.finals.insert(lookup(id, at));
  for (auto& t : pending) {
    h.add_transition(lookup(t.src, t.offset), t.label, lookup(t.dst, t.offset), std::move(t.sigma));
  }
  return h;
}

std::string write_hds(const Hds& h) {
  std::ostringstream out;
  if (h.policy == InjectivityPolicy::kRelaxed) out << "policy relaxed\n";
  out << "states\n";
  for (const State& s : h.states) {
    out << "  " << s.id << ":";
    for (Name x : s.locals) out << ' ' << x.label();
    out << '\n';
  }
  out << "initial " << h.states.at(h.initial).id;
  for (const auto& [x, v] : h.eta.entries()) out << ' ' << x.label() << "=#" << v.name().label();
  out << "\nfinals";
  for (StateId f : h.finals) out << ' ' << h.states.at(f).id;
  out << "\ntrans\n";
  for (const State& s : h.states) {
    for (const Transition& t : s.out) {
      out << "  " << s.id << " --" << format(t.label);
      if (!t.sigma.empty()) {
        out << '[';
        bool first = true;
        for (const auto& [x, v] : t.sigma.entries()) {
          if (!first) out << ", ";
          first = false;
          out << x.label() << '>';
          if (v.is_star()) {
            out << '*';
          } else {
            out << (t.label.kind == LabelKind::kPush ? "#" : "") << v.name().label();
          }
        }
        out << ']';
      }
      out << "--> " << h.states.at(t.target).id << '\n';
    }
  }
  return out.str();
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string record_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Hds& h) {
  std::ostringstream out;
  out << "digraph hds {\n  rankdir=LR;\n  node [shape=Mrecord];\n";
  for (std::size_t i = 0; i < h.states.size(); ++i) {
    const State& s = h.states[i];
    std::string label = "{" + record_escape(s.id);
    if (!s.locals.empty()) {
      label += "|{";
      bool first = true;
      for (Name x : s.locals) {
        if (!first) label += "|";
        first = false;
        label += "<" + x.label() + ">" + record_escape(x.label());
      }
      label += "}";
    }
    label += "}";
    out << "  " << dot_quote(s.id) << " [label=" << dot_quote(label);
    if (h.finals.count(static_cast<StateId>(i))) out << ", peripheries=2";
    if (i == h.initial) {
      out << ", style=bold, xlabel=" << dot_quote("start");
      std::string eta;
      for (const auto& [x, v] : h.eta.entries()) {
        eta += (eta.empty() ? "" : " ") + x.label() + "=#" + v.name().label();
      }
      if (!eta.empty()) out << ", tooltip=" << dot_quote(eta);
    }
    out << "];\n";
  }
  for (const State& s : h.states) {
    for (const Transition& t : s.out) {
      const State& d = h.states.at(t.target);
      // Maps to local names of the source become dashed edges; the rest (star,
      // push images, closers reading the frame below) go into the label.
      bool drawn = t.label.kind != LabelKind::kPush && !t.label.is_closer();
      std::string extra;
      for (const auto& [x, v] : t.sigma.entries()) {
        if (drawn && !v.is_star() && s.locals.count(v.name())) continue;
        if (!extra.empty()) extra += ", ";
        extra += x.label() + ">" + (v.is_star() ? std::string("*") : "#" + v.name().label());
      }
      std::string label = format(t.label);
      if (!extra.empty()) label += " [" + extra + "]";
      out << "  " << dot_quote(s.id) << " -> " << dot_quote(d.id) << " [label="
          << dot_quote(label) << "];\n";
      if (!drawn) continue;
      for (const auto& [x, v] : t.sigma.entries()) {
        if (v.is_star() || !s.locals.count(v.name())) continue;
        out << "  " << dot_quote(d.id) << ":" << dot_quote(x.label()) << " -> "
            << dot_quote(s.id) << ":" << dot_quote(v.name().label())
            << " [style=dashed, arrowhead=open, constraint=false];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace nomlang
