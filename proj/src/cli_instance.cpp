#include "etw/cli/instance.hpp"

#include "etw/domains/alpha_c.hpp"
#include "etw/kernel/library.hpp"
#include "etw/numberings/ceset.hpp"
#include "etw/trees/sigma_t.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace etw::cli {

namespace {

struct Tok {
  std::string text;
  bool is(std::string_view s) const { return text == s; }
};

std::string strip_comment(std::string_view line) {
  auto p = line.find('#');
  return std::string(p == std::string_view::npos ? line : line.substr(0, p));
}

std::vector<Tok> tokenize(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::string_view("{}()=").find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c)});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
             std::string_view("{}()=").find(s[j]) == std::string_view::npos)
        ++j;
      out.push_back({std::string(s.substr(i, j - i))});
      i = j;
    }
  }
  return out;
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; });
}

// Cursor over the tokens of one statement.
class Cursor {
 public:
  Cursor(std::vector<Tok> toks, std::size_t line) : toks_(std::move(toks)), line_(line) {}

  bool done() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string none;
    return done() ? none : toks_[pos_].text;
  }
  std::string next(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }
  void expect(std::string_view s) {
    auto t = next(std::string(s).c_str());
    if (t != s) fail("expected '" + std::string(s) + "', got '" + t + "'");
  }
  std::uint64_t number(const char* what) {
    auto t = next(what);
    if (!is_number(t)) fail(std::string("expected ") + what + ", got '" + t + "'");
    try {
      return std::stoull(t);
    } catch (const std::out_of_range&) {
      fail("number out of range: " + t);
    }
  }
  Nat big_number(const char* what) {
    auto t = next(what);
    if (!is_number(t)) fail(std::string("expected ") + what + ", got '" + t + "'");
    return nat_from_string(t);
  }
  FinSet set() {
    expect("{");
    FinSet f;
    while (peek() != "}") f.insert(number("set element"));
    expect("}");
    return f;
  }
  trees::FiniteSeq seq() {
    expect("(");
    trees::FiniteSeq x;
    while (peek() != ")") x.push_back(number("sequence entry"));
    expect(")");
    return x;
  }
  void end() {
    if (!done()) fail("unexpected '" + peek() + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }
  std::size_t line() const { return line_; }

 private:
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

struct RawLine {
  std::size_t no;
  std::string raw;
  std::string text;  // comment stripped
};

struct PendingRef {
  std::size_t line;
  std::string kind;  // program, tree, domain, space, family
  std::string name;
};

// Which declared names a scenario target refers to, by position.
std::vector<std::string> target_refs(const std::string& kind) {
  if (kind == "space-from-tree") return {"tree"};
  if (kind == "space-from-domain") return {"domain"};
  if (kind == "we") return {"program"};
  if (kind == "sigma-t") return {"tree", "program"};
  if (kind == "alpha-c") return {"domain"};
  if (kind == "rice-shapiro") return {"space"};
  if (kind == "wn" || kind == "product") return {"family"};
  if (kind == "scenario") return {"scenario"};
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t no = 1, start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      lines_.push_back({no, std::string(raw), strip_comment(raw)});
      if (nl == std::string_view::npos) break;
      start = nl + 1;
      ++no;
    }
  }

  InstanceFile run() {
    while (i_ < lines_.size()) {
      const auto& l = lines_[i_];
      auto toks = tokenize(l.text);
      if (toks.empty()) {
        ++i_;
        continue;
      }
      statement(std::move(toks), l.no);
    }
    resolve();
    return std::move(inst_);
  }

 private:
  void statement(std::vector<Tok> toks, std::size_t no) {
    Cursor c(toks, no);
    const auto kw = c.next("block keyword");
    static const std::vector<std::string> kws{"program", "tree", "family", "domain", "space", "scenario"};
    if (std::find(kws.begin(), kws.end(), kw) == kws.end()) c.fail("unknown block keyword '" + kw + "'");
    const auto name = c.next("name");
    if (!is_identifier(name)) c.fail("bad name '" + name + "'");
    if (inst_.has(name)) c.fail("duplicate name '" + name + "'");
    const auto sep = c.next("'=' or '{'");
    if (sep != "=" && sep != "{") c.fail("expected '=' or '{' after the name");

    // A trailing '{' opens a multi-line body closed by a line holding '}'.
    bool multiline = sep == "{" && c.done();
    std::vector<RawLine> body;
    ++i_;
    if (multiline) {
      bool closed = false;
      while (i_ < lines_.size()) {
        auto t = tokenize(lines_[i_].text);
        ++i_;
        if (t.size() == 1 && t[0].is("}")) {
          closed = true;
          break;
        }
        body.push_back(lines_[i_ - 1]);
      }
      if (!closed) c.fail("block '" + name + "' is not closed");
    }

    if (kw == "program") program(name, c, sep, body);
    else if (kw == "tree") tree(name, c, sep, body);
    else if (kw == "family") family(name, c, sep);
    else if (kw == "domain") domain(name, c, sep, body);
    else if (kw == "space") space(name, c, sep);
    else scenario(name, c, sep);
  }

  void program(const std::string& name, Cursor& c, const std::string& sep, const std::vector<RawLine>& body) {
    if (sep == "{") {
      if (!c.done()) c.fail("program bodies start on the next line");
      std::string text;
      for (const auto& l : body) text += l.raw + "\n";
      auto first = body.empty() ? c.line() + 1 : body.front().no;
      inst_.programs.emplace(name, kernel::encode_program(kernel::parse_program(text, first)));
      return;
    }
    const auto what = c.next("program form");
    kernel::ProgramIndex p;
    if (what == "identity") {
      p = kernel::lib::identity();
    } else if (what == "loop") {
      p = kernel::lib::loop();
    } else if (what == "constant") {
      p = kernel::lib::constant(c.big_number("constant"));
    } else if (what == "finite") {
      p = numberings::CeSet::finite(c.set()).index();
    } else if (what == "codes") {
      FinSet f;
      while (!c.done()) {
        auto code = trees::delta_code(c.seq());
        if (!code) c.fail("sequence code too large");
        f.insert(*code);
      }
      p = numberings::CeSet::finite(f).index();
    } else if (what == "index") {
      p = kernel::ProgramIndex{c.big_number("program index")};
    } else {
      c.fail("unknown program form '" + what + "'");
    }
    c.end();
    inst_.programs.emplace(name, std::move(p));
  }

  void tree(const std::string& name, Cursor& c, const std::string& sep, const std::vector<RawLine>& body) {
    if (sep == "=") {
      auto what = c.next("tree form");
      if (what != "inseparable") c.fail("unknown tree form '" + what + "'");
      if (c.done()) {
        inst_.trees.emplace(name, trees::Tree::inseparable());
        return;
      }
      auto depth = c.number("depth");
      auto alphabet = c.number("alphabet");
      c.end();
      inst_.trees.emplace(name, trees::inseparable_tree().truncate(depth, alphabet));
      return;
    }
    std::set<trees::FiniteSeq> vs;
    auto read = [&](Cursor& cur, bool closing) {
      while (!cur.done()) {
        if (closing && cur.peek() == "}") {
          cur.next("}");
          cur.end();
          return;
        }
        vs.insert(cur.seq());
      }
      if (closing) cur.fail("expected '}'");
    };
    if (!c.done()) {
      read(c, true);
    } else {
      for (const auto& l : body) {
        Cursor lc(tokenize(l.text), l.no);
        read(lc, false);
      }
    }
    try {
      inst_.trees.emplace(name, trees::Tree::explicit_tree(std::move(vs)));
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }
  }

  void family(const std::string& name, Cursor& c, const std::string& sep) {
    if (sep != "=") c.fail("expected '='");
    FamilyDecl f;
    f.kind = c.next("family form");
    if (f.kind == "subsets" || f.kind == "singleton") {
      f.set = c.set();
    } else if (f.kind == "s_t") {
      f.ref = c.next("tree name");
      refs_.push_back({c.line(), "tree", f.ref});
    } else if (f.kind == "continuous") {
      f.ref = c.next("domain name");
      refs_.push_back({c.line(), "domain", f.ref});
    } else {
      c.fail("unknown family form '" + f.kind + "'");
    }
    c.end();
    inst_.families.emplace(name, std::move(f));
  }

  void domain(const std::string& name, Cursor& c, const std::string& sep, const std::vector<RawLine>& body) {
    if (sep != "{" || !c.done()) c.fail("domain blocks take a body on the following lines");
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::size_t>> leq;  // element names, line
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& l : body) {
      Cursor lc(tokenize(l.text), l.no);
      if (lc.done()) continue;
      auto what = lc.next("domain statement");
      if (what == "elements") {
        while (!lc.done()) {
          auto e = lc.next("element");
          if (std::find(names.begin(), names.end(), e) != names.end()) lc.fail("duplicate element '" + e + "'");
          names.push_back(e);
        }
      } else if (what == "leq") {
        auto index = [&](const std::string& e) {
          auto it = std::find(names.begin(), names.end(), e);
          if (it == names.end()) lc.fail("unknown element '" + e + "'");
          return static_cast<std::size_t>(it - names.begin());
        };
        auto a = index(lc.next("element"));
        auto b = index(lc.next("element"));
        lc.end();
        pairs.emplace_back(a, b);
      } else {
        lc.fail("unknown domain statement '" + what + "'");
      }
    }
    if (names.empty()) c.fail("domain '" + name + "' has no elements");
    try {
      inst_.domains.emplace(name, domains::Domain::explicit_domain(names, pairs));
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }
  }

  void space(const std::string& name, Cursor& c, const std::string& sep) {
    if (sep != "=") c.fail("expected '='");
    SpaceDecl s;
    s.kind = c.next("space form");
    if (s.kind != "tree" && s.kind != "domain") c.fail("unknown space form '" + s.kind + "'");
    s.ref = c.next("name");
    c.end();
    refs_.push_back({c.line(), s.kind, s.ref});
    inst_.spaces.emplace(name, std::move(s));
  }

  void scenario(const std::string& name, Cursor& c, const std::string& sep) {
    if (sep != "=") c.fail("expected '='");
    ScenarioDecl s;
    s.verb = c.next("verb");
    static const std::vector<std::string> verbs{"construct", "enumerate", "verify", "demo"};
    if (std::find(verbs.begin(), verbs.end(), s.verb) == verbs.end()) c.fail("unknown verb '" + s.verb + "'");
    while (!c.done()) {
      auto t = c.next("target");
      if (t == "budget") s.budget = c.number("budget");
      else if (t == "stages") s.stages = c.number("stages");
      else if (t == "bound") s.bound = c.number("bound");
      else s.target.push_back(t);
    }
    if (s.target.empty()) c.fail("scenario needs a target");
    auto kinds = target_refs(s.target[0]);
    for (std::size_t i = 0; i < kinds.size() && i + 1 < s.target.size(); ++i)
      refs_.push_back({c.line(), kinds[i], s.target[i + 1]});
    inst_.scenarios.emplace(name, std::move(s));
  }

  void resolve() {
    for (const auto& r : refs_) {
      bool ok = (r.kind == "tree" && inst_.trees.contains(r.name)) ||
                (r.kind == "domain" && inst_.domains.contains(r.name)) ||
                (r.kind == "program" && inst_.programs.contains(r.name)) ||
                (r.kind == "space" && inst_.spaces.contains(r.name)) ||
                (r.kind == "family" && inst_.families.contains(r.name)) ||
                (r.kind == "scenario" && inst_.scenarios.contains(r.name));
      if (!ok) throw ParseError(r.line, "unresolved " + r.kind + " '" + r.name + "'");
    }
  }

  std::vector<RawLine> lines_;
  std::size_t i_ = 0;
  std::vector<PendingRef> refs_;
  InstanceFile inst_;
};

std::string set_text(const FinSet& f) {
  std::string s = "{";
  for (auto x : f) s += (s.size() > 1 ? " " : "") + std::to_string(x);
  return s + "}";
}

}  // namespace

bool InstanceFile::empty() const {
  return programs.empty() && trees.empty() && families.empty() && domains.empty() && spaces.empty() &&
         scenarios.empty();
}

bool InstanceFile::has(const std::string& n) const {
  return programs.contains(n) || trees.contains(n) || families.contains(n) || domains.contains(n) ||
         spaces.contains(n) || scenarios.contains(n);
}

std::string InstanceFile::canonical() const {
  std::ostringstream o;
  for (const auto& [n, p] : programs) o << "program " << n << " " << p.code << "\n";
  for (const auto& [n, t] : trees) o << "tree " << n << " " << t.code() << "\n";
  for (const auto& [n, f] : families) o << "family " << n << " " << f.kind << " " << set_text(f.set) << " " << f.ref << "\n";
  for (const auto& [n, d] : domains) {
    o << "domain " << n;
    for (const auto& e : d.names()) o << " " << e;
    o << " " << d.code() << "\n";
  }
  for (const auto& [n, s] : spaces) o << "space " << n << " " << s.kind << " " << s.ref << "\n";
  for (const auto& [n, s] : scenarios) {
    o << "scenario " << n << " " << s.verb;
    for (const auto& t : s.target) o << " " << t;
    auto opt = [&](const char* k, const std::optional<std::uint64_t>& v) {
      if (v) o << " " << k << " " << *v;
    };
    opt("budget", s.budget);
    opt("stages", s.stages);
    opt("bound", s.bound);
    o << "\n";
  }
  return o.str();
}

std::string InstanceFile::digest() const {
  const auto text = canonical();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {
template <class M>
const auto& lookup(const M& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw std::out_of_range(std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}
}  // namespace

const kernel::ProgramIndex& InstanceFile::program(const std::string& n) const { return lookup(programs, n, "program"); }
const trees::Tree& InstanceFile::tree(const std::string& n) const { return lookup(trees, n, "tree"); }
const domains::Domain& InstanceFile::domain(const std::string& n) const { return lookup(domains, n, "domain"); }
const SpaceDecl& InstanceFile::space(const std::string& n) const { return lookup(spaces, n, "space"); }
const ScenarioDecl& InstanceFile::scenario(const std::string& n) const { return lookup(scenarios, n, "scenario"); }

numberings::WnFamily InstanceFile::family(const std::string& n) const {
  const auto& f = lookup(families, n, "family");
  if (f.kind == "subsets") return numberings::subsets_family(f.set);
  if (f.kind == "singleton") return numberings::singleton_family(f.set);
  if (f.kind == "s_t") return trees::s_T_family(tree(f.ref));
  return domains::continuous_family(domain(f.ref));
}

InstanceFile parse_instance(std::string_view text) { return Parser(text).run(); }

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace etw::cli
