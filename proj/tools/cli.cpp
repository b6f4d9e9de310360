#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nomlang/compiler.hpp"
#include "nomlang/enumerate.hpp"
#include "nomlang/hds_io.hpp"
#include "nomlang/oracle.hpp"
#include "nomlang/word_syntax.hpp"

namespace nomlang::cli {
namespace {

// Bad input files and arguments; reported with exit status kUsage.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path);
}

std::string locate(const std::string& path, const std::string& text, const SyntaxError& e) {
  std::size_t pos = std::min(e.position(), text.size());
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
  std::size_t bol = text.rfind('\n', pos == 0 ? 0 : pos - 1);
  std::size_t col = pos - (bol == std::string::npos || pos == 0 ? 0 : bol + 1) + 1;
  std::string msg = e.what();
  msg = msg.substr(0, msg.rfind(" at position"));
  return path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

bool is_hds_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".hds") == 0;
}

NreFile load_nre(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_nre(text);
  } catch (const SyntaxError& e) {
    throw InputError(locate(path, text, e));
  }
}

StarLoop parse_star(const std::string& s) {
  if (s == "threaded") return StarLoop::kThreaded;
  if (s == "push") return StarLoop::kPush;
  throw InputError("--star must be threaded or push");
}

// A `.hds` file, or a `.nre` file compiled on the fly.
Hds load_automaton(const std::string& path, StarLoop star) {
  if (!is_hds_path(path)) return compile(load_nre(path).expr, {star});
  std::string text = read_file(path);
  try {
    return parse_hds(text);
  } catch (const SyntaxError& e) {
    throw InputError(locate(path, text, e));
  }
}

// Either a count ("3": the given names padded with fresh ones) or a list of
// names separated by commas or spaces, with optional '#'.
NameSet parse_pool(const std::string& spec, const NameSet& given) {
  bool count = !spec.empty() && std::all_of(spec.begin(), spec.end(),
                                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (count) {
    std::size_t k = std::stoul(spec);
    NameSet pool = given;
    for (std::size_t i = 1; pool.size() < k; ++i) pool.insert(Name::intern("p" + std::to_string(i)));
    return pool;
  }
  NameSet pool;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string w;
    while (words >> w) {
      if (w[0] == '#') w.erase(0, 1);
      if (!is_identifier(w)) throw InputError("bad pool name '" + w + "'");
      pool.insert(Name::intern(w));
    }
  }
  return pool;
}

NameSet eta_names(const Hds& h) {
  NameSet out;
  for (const auto& [x, v] : h.eta.entries()) out.insert(v.name());
  return out;
}

template <class W>
void print_sorted(std::ostream& out, const std::set<W>& words,
                  std::size_t (*len)(const W&), std::string (*fmt)(const W&)) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  for (const W& w : words) lines.emplace_back(len(w), fmt(w));
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l.second << '\n';
}

std::size_t word_len(const Word& w) { return token_length(w); }
std::string word_fmt(const Word& w) { return format(w); }
std::size_t plain_len(const PlainWord& w) { return w.size(); }
std::string plain_fmt(const PlainWord& w) { return format_tokens(w); }

bool within(const NameSet& names, const NameSet& pool) {
  return std::all_of(names.begin(), names.end(), [&](Name n) { return pool.count(n) != 0; });
}

// --- subcommands ------------------------------------------------------------

struct Args {
  std::string input;
  std::string output;
  std::string word;
  std::string star = "threaded";
  std::string pool;
  std::string sort = "M";
  std::string against;
  std::size_t fuel = AcceptOptions{}.max_configs;
  std::size_t bound = 8;
  std::size_t random = 0;
  std::size_t depth = 4;
  std::uint64_t seed = 0;
  bool trace = false;
  bool plain = false;
};

int cmd_compile(const Args& a, std::ostream& out, std::ostream& err) {
  Hds h = compile(load_nre(a.input).expr, {parse_star(a.star)});
  std::string counts = std::to_string(h.states.size()) + " states, " +
                       std::to_string(h.transition_count()) + " transitions";
  if (a.output.empty()) {
    out << write_hds(h);
    err << counts << '\n';
  } else {
    write_file(a.output, write_hds(h));
    out << "wrote " << a.output << ": " << counts << '\n';
  }
  return kOk;
}

int cmd_accept(const Args& a, std::ostream& out) {
  Hds h = load_automaton(a.input, parse_star(a.star));
  MWord w;
  try {
    w = parse_word(a.word);
  } catch (const SyntaxError& e) {
    throw InputError(locate("word", a.word, e));
  }
  AcceptOptions opts;
  opts.max_configs = a.fuel;
  opts.trace = a.trace;
  AcceptResult r = accepts(h, w.tokens(), opts);
  switch (r.verdict) {
    case Verdict::kAccept:
      out << "ACCEPT\n";
      for (const TraceStep& s : r.trace) {
        out << "  " << (s.via ? format(*s.via) : std::string("start")) << "\t"
            << h.states[s.config.state].id << " | "
            << (s.config.rest.empty() ? std::string("^") : format_tokens(s.config.rest)) << " | "
            << format(s.config.stack) << '\n';
      }
      return kOk;
    case Verdict::kReject:
      out << "REJECT\n";
      return kFail;
    case Verdict::kBudgetExhausted:
      out << "BUDGET EXHAUSTED after " << r.explored << " configurations\n";
      return kBudget;
  }
  return kFail;
}

int cmd_enumerate(const Args& a, std::ostream& out) {
  Sort sort;
  try {
    sort = parse_sort(a.sort);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::set<Word> words;
  NameSet pool;
  bool restricted = !a.pool.empty();
  if (is_hds_path(a.input)) {
    if (sort != Sort::kM) throw InputError("automata enumerate m-words only");
    Hds h = load_automaton(a.input, StarLoop::kThreaded);
    pool = restricted ? parse_pool(a.pool, eta_names(h)) : eta_names(h);
    restricted = true;
    for (const MWord& w : language_slice(h, a.bound, pool)) words.insert(alpha_canonical(w));
  } else {
    Regex e = load_nre(a.input).expr;
    if (restricted) pool = parse_pool(a.pool, free_names(e));
    for (const Word& w : enumerate(e, sort, a.bound).words) {
      if (!restricted || within(support(w), pool)) words.insert(w);
    }
  }
  if (a.plain) {
    std::set<MWord> ms;
    NameSet needed = pool;
    for (const Word& w : words) {
      ms.insert(to_mword(w));
      if (!restricted) {
        NameSet s = support(w);
        needed.insert(s.begin(), s.end());
      }
    }
    print_sorted(out, plain_words_bounded(ms, needed), &plain_len, &plain_fmt);
  } else {
    print_sorted(out, words, &word_len, &word_fmt);
  }
  return kOk;
}

int cmd_check(const Args& a, std::ostream& out) {
  StarLoop star = parse_star(a.star);
  if (a.random > 0) {
    RegexGenOptions gen;
    gen.max_depth = a.depth;
    for (const char* n : {"n", "m", "l"}) gen.names.push_back(Name::intern(n));
    for (const char* s : {"a", "b"}) gen.letters.push_back(Letter::intern(s));
    NameSet pool(gen.names.begin(), gen.names.end());
    Rng rng(a.seed);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < a.random; ++i) {
      Regex e = random_regex(rng, gen);
      EquivalenceReport r = check_equivalence(e, compile(e, {star}), a.bound, pool, a.seed);
      if (r.pass()) {
        ++passed;
        out << "PASS " << r.subject << '\n';
      } else {
        out << r.to_text();
      }
    }
    out << passed << "/" << a.random << " passed, seed " << a.seed << ", bound " << a.bound << '\n';
    return passed == a.random ? kOk : kFail;
  }
  if (a.input.empty()) throw InputError("check needs an input file or --random");
  Regex e = load_nre(a.input).expr;
  Hds h = a.against.empty() ? compile(e, {star}) : load_automaton(a.against, star);
  NameSet pool = parse_pool(a.pool.empty() ? "3" : a.pool, free_names(e));
  if (!within(free_names(e), pool)) throw InputError("pool misses a free name of the expression");
  EquivalenceReport r = check_equivalence(e, h, a.bound, pool, a.seed);
  out << r.to_text();
  return r.pass() ? kOk : kFail;
}

int cmd_dot(const Args& a, std::ostream& out) {
  out << to_dot(load_automaton(a.input, parse_star(a.star)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nominal regular expressions and history-dependent automata with stack", "nomlang"};
  app.require_subcommand(1);
  Args a;

  auto* compile_cmd = app.add_subcommand("compile", "compile a .nre file to a .hds automaton");
  compile_cmd->add_option("input", a.input, ".nre file")->required();
  compile_cmd->add_option("-o,--output", a.output, "output .hds file (default: standard output)");
  compile_cmd->add_option("--star", a.star, "star construction: threaded or push");

  auto* accept_cmd = app.add_subcommand("accept", "run an automaton on a word");
  accept_cmd->add_option("automaton", a.input, ".hds (or .nre) file")->required();
  accept_cmd->add_option("word", a.word, "word, e.g. '#m <#n. #m #n >'")->required();
  accept_cmd->add_option("--fuel", a.fuel, "maximum number of configurations");
  accept_cmd->add_flag("--trace", a.trace, "print an accepting run");
  accept_cmd->add_option("--star", a.star, "star construction for .nre input");

  auto* enum_cmd = app.add_subcommand("enumerate", "list a bounded slice of a language");
  enum_cmd->add_option("input", a.input, ".nre or .hds file")->required();
  enum_cmd->add_option("--bound", a.bound, "maximum token length")->required();
  enum_cmd->add_option("--pool", a.pool, "name count or list of names for free names");
  enum_cmd->add_option("--sort", a.sort, "word sort: M, G, L or S");
  enum_cmd->add_flag("--plain", a.plain, "project to plain words over the pool");

  auto* check_cmd = app.add_subcommand("check", "compare regex and automaton slices");
  check_cmd->add_option("input", a.input, ".nre file");
  check_cmd->add_option("--bound", a.bound, "maximum token length");
  check_cmd->add_option("--pool", a.pool, "name count or list of names (default 3)");
  check_cmd->add_option("--seed", a.seed, "random seed");
  check_cmd->add_option("--random", a.random, "check this many random expressions");
  check_cmd->add_option("--depth", a.depth, "depth of random expressions");
  check_cmd->add_option("--against", a.against, "automaton to check instead of the compilation");
  check_cmd->add_option("--star", a.star, "star construction: threaded or push");

  auto* dot_cmd = app.add_subcommand("dot", "export an automaton as Graphviz DOT");
  dot_cmd->add_option("automaton", a.input, ".hds (or .nre) file")->required();
  dot_cmd->add_option("--star", a.star, "star construction for .nre input");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compile_cmd->parsed()) return cmd_compile(a, out, err);
    if (accept_cmd->parsed()) return cmd_accept(a, out);
    if (enum_cmd->parsed()) return cmd_enumerate(a, out);
    if (check_cmd->parsed()) return cmd_check(a, out);
    if (dot_cmd->parsed()) return cmd_dot(a, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace nomlang::cli
