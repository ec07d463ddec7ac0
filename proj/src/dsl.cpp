#include "cdga/dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "cdga/error.hpp"

namespace cdga {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
}

struct Term {
  Rational coefficient{1};
  std::vector<std::string> names;
  std::vector<std::size_t> columns;  // 1-based column of each name
};

// A cursor over one line. Columns are 1-based; `offset` shifts them when the
// text is a slice of a longer line.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line, std::size_t offset) : text_(text), line_(line), offset_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return offset_ + pos_ + 1; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) error(std::string("expected ") + what);
  }
  [[noreturn]] void error(const std::string& message) {
    skip_space();
    fail(line_, column(), message);
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier(bool allow_dash = false) {
    if (!ident_start(peek())) error("expected an identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (ident_char(text_[pos_]) || (allow_dash && text_[pos_] == '-'))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string digits() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected a number");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    const std::size_t col = column();
    std::string s = digits();
    if (s.size() > 6) fail(line_, col, "integer out of range");
    return std::stoi(s);
  }
  std::string rest() {
    skip_space();
    return std::string(text_.substr(pos_));
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::vector<Term> parse_terms(Cursor& cur) {
  std::vector<Term> terms;
  bool first = true;
  while (true) {
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else if (!cur.accept('+') && !first) cur.error("expected '+' or '-'");
    first = false;

    Term t;
    const char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = cur.digits();
      if (cur.accept('/')) {
        std::string den = cur.digits();
        if (mpz_class(den) == 0) cur.error("zero denominator");
        num += "/" + den;
      }
      t.coefficient = parse_rational(num);
      if (cur.accept('*')) {
        t.columns.push_back(cur.column());
        t.names.push_back(cur.identifier());
      }
    } else if (Cursor::ident_start(c)) {
      t.columns.push_back(cur.column());
      t.names.push_back(cur.identifier());
    } else {
      cur.error("expected a term");
    }
    while (!t.names.empty() && cur.accept('*')) {
      t.columns.push_back(cur.column());
      t.names.push_back(cur.identifier());
    }
    if (negative) t.coefficient = -t.coefficient;
    terms.push_back(std::move(t));
    if (cur.at_end()) break;
  }
  return terms;
}

Element resolve(const std::vector<Term>& terms, const GeneratorSet& gens, std::size_t line) {
  Element out;
  for (const auto& t : terms) {
    Element term = Element::scalar(t.coefficient);
    for (std::size_t k = 0; k < t.names.size(); ++k) {
      auto idx = gens.index_of(t.names[k]);
      if (!idx)
        throw Error(ErrorCode::UnknownGenerator, "line " + std::to_string(line) + ", column " +
                                                     std::to_string(t.columns[k]) + ": unknown generator '" +
                                                     t.names[k] + "'");
      term = multiply(term, Element::generator(*idx), gens);
    }
    out += term;
  }
  return out;
}

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

}  // namespace

AlgebraFile parse(std::string_view source) {
  AlgebraFile file;
  bool seen_algebra = false;
  std::set<std::string> gen_names, d_names;
  struct Pending {
    std::vector<Term> terms;
    std::size_t line;
  };
  std::vector<Pending> polys;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    ++line_no;
    const std::string line = strip_comment(source.substr(start, end - start));
    start = end + 1;
    Cursor cur(line, line_no, 0);
    if (cur.at_end()) {
      if (end == source.size()) break;
      continue;
    }
    const std::size_t keyword_col = cur.column();
    const std::string keyword = cur.identifier();
    if (keyword == "algebra") {
      if (seen_algebra) fail(line_no, keyword_col, "duplicate 'algebra' line");
      if (!file.gens.empty() || !file.differentials.empty() || file.omega)
        fail(line_no, keyword_col, "'algebra' must come first");
      seen_algebra = true;
      file.name = cur.identifier(true);
      while (!cur.at_end()) {
        const std::size_t col = cur.column();
        const std::string opt = cur.identifier();
        if (opt == "dim" && !file.dim) file.dim = cur.integer();
        else if (opt == "through" && !file.through) file.through = cur.integer();
        else if (opt == "minimal" && !file.minimal) file.minimal = true;
        else fail(line_no, col, "unexpected '" + opt + "'");
      }
      if (file.dim && *file.dim < 1) fail(line_no, keyword_col, "dimension must be positive");
    } else if (keyword == "gen") {
      const std::size_t col = cur.column();
      std::string name = cur.identifier();
      cur.expect(':', "':'");
      const bool negative = cur.accept('-');
      const int degree = cur.integer();
      if (!cur.at_end()) cur.error("unexpected text after the degree");
      if (!gen_names.insert(name).second)
        throw Error(ErrorCode::DuplicateGenerator,
                    "line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": generator '" + name +
                        "' declared twice");
      file.gens.push_back({name, negative ? -degree : degree});
    } else if (keyword == "d") {
      const std::size_t col = cur.column();
      std::string name = cur.identifier();
      cur.expect('=', "'='");
      if (!d_names.insert(name).second) fail(line_no, col, "second differential for '" + name + "'");
      cur.skip_space();
      const std::size_t poly_col = cur.column();
      std::string text = cur.rest();
      Cursor poly(text, line_no, poly_col - 1);
      polys.push_back({parse_terms(poly), line_no});
      file.differentials.emplace_back(name, text);
    } else if (keyword == "omega") {
      if (file.omega) fail(line_no, keyword_col, "duplicate 'omega' line");
      cur.expect('=', "'='");
      cur.skip_space();
      const std::size_t poly_col = cur.column();
      std::string text = cur.rest();
      Cursor poly(text, line_no, poly_col - 1);
      polys.push_back({parse_terms(poly), line_no});
      file.omega = text;
    } else {
      fail(line_no, keyword_col, "unknown keyword '" + keyword + "'");
    }
    if (end == source.size()) break;
  }
  for (const auto& p : polys)
    for (const auto& t : p.terms)
      for (std::size_t k = 0; k < t.names.size(); ++k)
        if (!gen_names.count(t.names[k]))
          throw Error(ErrorCode::UnknownGenerator, "line " + std::to_string(p.line) + ", column " +
                                                       std::to_string(t.columns[k]) + ": unknown generator '" +
                                                       t.names[k] + "'");
  for (const auto& [name, text] : file.differentials)
    if (!gen_names.count(name))
      throw Error(ErrorCode::UnknownGenerator, "differential of undeclared generator '" + name + "'");
  return file;
}

Element parse_polynomial(std::string_view text, const GeneratorSet& gens) {
  Cursor cur(text, 1, 0);
  if (cur.at_end()) cur.error("empty polynomial");
  return resolve(parse_terms(cur), gens, 1);
}

FreeCDGA to_algebra(const AlgebraFile& file) {
  GeneratorSet gens(file.gens);
  std::vector<Element> diff(gens.size());
  for (const auto& [name, text] : file.differentials) {
    auto idx = gens.index_of(name);
    if (!idx) throw Error(ErrorCode::UnknownGenerator, "differential of undeclared generator '" + name + "'");
    diff[*idx] = parse_polynomial(text, gens);
  }
  FreeCDGAOptions opt;
  opt.formal_dim = file.dim;
  opt.complete_through = file.through;
  opt.minimal = file.minimal;
  if (file.omega) opt.omega = parse_polynomial(*file.omega, gens);
  return FreeCDGA(file.name, std::move(gens), std::move(diff), std::move(opt));
}

FreeCDGA parse_algebra(std::string_view source) { return to_algebra(parse(source)); }

std::string emit(const FreeCDGA& a) {
  std::ostringstream out;
  out << "algebra " << a.name();
  if (a.formal_dim()) out << " dim " << *a.formal_dim();
  if (a.claims_minimal()) out << " minimal";
  if (a.complete_through()) out << " through " << *a.complete_through();
  out << "\n";
  const auto& gens = a.generators();
  for (const auto& g : gens) out << "gen " << g.name << " : " << g.degree << "\n";
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!a.differentials()[i].is_zero()) out << "d " << gens.name(i) << " = " << to_string(a.differentials()[i], gens) << "\n";
  if (a.omega()) out << "omega = " << to_string(*a.omega(), gens) << "\n";
  return out.str();
}

}  // namespace cdga
