#pragma once

// Text formats: .qo (quasi-orders), .mat (matrices), .gmap (transitive
// maps) and .cmap (canonical map specs). Indices are 1-based on disk.

#include <smakit/maps.hpp>
#include <smakit/quasi_order.hpp>
#include <smakit/sma.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smakit {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct SourceLine {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string text;
};

/// Splits into whitespace-separated tokens, skipping blank and `#` lines.
inline std::vector<SourceLine> tokenize(const std::string& text) {
  std::vector<SourceLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front()[0] == '#') continue;
    out.push_back({number, std::move(tokens), line});
  }
  return out;
}

inline std::size_t parse_count(const SourceLine& l, const std::string& tok, std::size_t lo, std::size_t hi) {
  std::size_t value = 0;
  if (tok.empty() || tok.size() > 9) throw FormatError(l.number, "expected an integer, got '" + tok + "'");
  for (char c : tok) {
    if (c < '0' || c > '9') throw FormatError(l.number, "expected an integer, got '" + tok + "'");
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  if (value < lo || value > hi)
    throw FormatError(l.number, "value " + tok + " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  return value;
}

inline Scalar parse_scalar_at(const SourceLine& l, const std::string& tok, const FieldDescriptor& f) {
  try {
    return parse_scalar(tok, f);
  } catch (const std::exception& e) {
    throw FormatError(l.number, e.what());
  }
}

struct Header {
  std::size_t n;
  FieldDescriptor field;
};

/// `n <int> field <tag>`
inline Header parse_header(const SourceLine& l) {
  if (l.tokens.size() != 4 || l.tokens[0] != "n" || l.tokens[2] != "field")
    throw FormatError(l.number, "expected 'n <int> field <Q|Qi|F<p>>'");
  const std::size_t n = parse_count(l, l.tokens[1], 1, 64);
  try {
    return {n, FieldDescriptor::parse(l.tokens[3])};
  } catch (const std::exception& e) {
    throw FormatError(l.number, e.what());
  }
}

inline std::string header_line(std::size_t n, const FieldDescriptor& f) {
  return "n " + std::to_string(n) + " field " + f.tag() + "\n";
}

}  // namespace detail

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// With close = false the relation must already be a quasi-order (the
/// diagonal included); with close = true its closure is taken.
inline QuasiOrder parse_quasi_order(const std::string& text, bool close = false) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw FormatError(0, "empty quasi-order file");
  const auto& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "n") throw FormatError(head.number, "expected 'n <int>'");
  const std::size_t n = detail::parse_count(head, head.tokens[1], 1, 64);
  PairSet pairs;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.tokens.size() != 2) throw FormatError(l.number, "expected '<i> <j>'");
    const Index i = detail::parse_count(l, l.tokens[0], 1, n) - 1;
    const Index j = detail::parse_count(l, l.tokens[1], 1, n) - 1;
    pairs.insert({i, j});
  }
  if (close) return QuasiOrder::closure(n, pairs);
  try {
    return QuasiOrder::validate(n, pairs);
  } catch (const QuasiOrderError& e) {
    throw FormatError(0, e.what());
  }
}

inline std::string format_quasi_order(const QuasiOrder& q) {
  std::string out = "n " + std::to_string(q.size()) + "\n";
  for (const auto& [i, j] : q.pairs()) out += std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
  return out;
}

inline Matrix parse_matrix(const std::string& text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw FormatError(0, "empty matrix file");
  const auto [n, field] = detail::parse_header(lines.front());
  if (lines.size() != n + 1) throw FormatError(lines.back().number, "expected " + std::to_string(n) + " matrix rows");
  Matrix m(n, field);
  for (Index i = 0; i < n; ++i) {
    const auto& l = lines[i + 1];
    if (l.tokens.size() != n) throw FormatError(l.number, "expected " + std::to_string(n) + " entries");
    for (Index j = 0; j < n; ++j) m.set(i, j, detail::parse_scalar_at(l, l.tokens[j], field));
  }
  return m;
}

inline std::string format_matrix(const Matrix& m) { return detail::header_line(m.size(), m.field()) + m.to_string(); }

/// Lines `<i> <j> <scalar>` must cover rho^x exactly; the diagonal is 1.
inline TransitiveMap parse_transitive_map(const std::string& text, const QuasiOrder& order) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw FormatError(0, "empty transitive-map file");
  const auto [n, field] = detail::parse_header(lines.front());
  if (n != order.size()) throw FormatError(lines.front().number, "size does not match the quasi-order");
  std::map<IndexPair, Scalar> values;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.tokens.size() != 3) throw FormatError(l.number, "expected '<i> <j> <scalar>'");
    const IndexPair p{detail::parse_count(l, l.tokens[0], 1, n) - 1, detail::parse_count(l, l.tokens[1], 1, n) - 1};
    if (p.first == p.second || !order.contains(p)) throw FormatError(l.number, format_pair(p) + " is not in rho^x");
    if (!values.emplace(p, detail::parse_scalar_at(l, l.tokens[2], field)).second)
      throw FormatError(l.number, "duplicate pair " + format_pair(p));
  }
  for (const auto& p : order.strict_part())
    if (!values.count(p)) throw FormatError(0, "missing value for " + format_pair(p));
  return TransitiveMap::from_strict_values(order, field, std::move(values));
}

inline std::string format_transitive_map(const TransitiveMap& g) {
  std::string out = detail::header_line(g.order().size(), g.field());
  for (const auto& p : g.order().strict_part())
    out += std::to_string(p.first + 1) + " " + std::to_string(p.second + 1) + " " + g(p.first, p.second).to_string() + "\n";
  return out;
}

/// Canonical map spec file:
///
///   n <int> field <tag>
///   mode: <mul|jordan|njordan>
///   T:
///   <n rows>
///   g:
///   <i> <j> <scalar>        (covering rho^x)
///   classes:
///   <members> omega <id|conj|cube> dagger <id|t>
inline CanonicalMapSpec parse_canonical_spec(const std::string& text, const QuasiOrder& order) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw FormatError(0, "empty canonical map file");
  const auto [n, field] = detail::parse_header(lines.front());
  if (n != order.size()) throw FormatError(lines.front().number, "size does not match the quasi-order");
  const Sma algebra(order, field);
  const auto& part = algebra.classes();

  std::optional<ProductKind> mode;
  std::vector<const detail::SourceLine*> t_rows, g_lines, class_lines;
  std::vector<const detail::SourceLine*>* section = nullptr;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const std::string& first = l.tokens.front();
    if (first == "mode:") {
      if (l.tokens.size() != 2) throw FormatError(l.number, "expected 'mode: <mul|jordan|njordan>'");
      try {
        mode = parse_mode(l.tokens[1]);
      } catch (const std::exception& e) {
        throw FormatError(l.number, e.what());
      }
      section = nullptr;
    } else if (first == "T:" || first == "g:" || first == "classes:") {
      if (l.tokens.size() != 1) throw FormatError(l.number, "section header must stand alone");
      section = first == "T:" ? &t_rows : first == "g:" ? &g_lines : &class_lines;
      if (!section->empty()) throw FormatError(l.number, "duplicate section " + first);
    } else {
      if (!section) throw FormatError(l.number, "content outside a section");
      section->push_back(&l);
    }
  }
  if (!mode) throw FormatError(0, "missing 'mode:' line");
  if (t_rows.size() != n) throw FormatError(0, "section T: needs " + std::to_string(n) + " rows");

  Matrix t(n, field);
  for (Index i = 0; i < n; ++i) {
    const auto& l = *t_rows[i];
    if (l.tokens.size() != n) throw FormatError(l.number, "expected " + std::to_string(n) + " entries");
    for (Index j = 0; j < n; ++j) t.set(i, j, detail::parse_scalar_at(l, l.tokens[j], field));
  }

  std::string g_text = detail::header_line(n, field);
  for (const auto* l : g_lines) g_text += l->text + "\n";
  // Line numbers inside g: refer to the synthesized text, so re-anchor errors.
  std::optional<TransitiveMap> g;
  try {
    g = parse_transitive_map(g_text, order);
  } catch (const FormatError& e) {
    const std::size_t idx = e.line() >= 2 ? e.line() - 2 : 0;
    throw FormatError(e.line() && idx < g_lines.size() ? g_lines[idx]->number : 0,
                      std::string("in section g: ") + e.what());
  }

  std::vector<std::optional<ClassAction>> actions(part.classes.size());
  for (const auto* lp : class_lines) {
    const auto& l = *lp;
    const auto& tok = l.tokens;
    if (tok.size() < 5 || tok[tok.size() - 4] != "omega" || tok[tok.size() - 2] != "dagger")
      throw FormatError(l.number, "expected '<members> omega <id|conj|cube> dagger <id|t>'");
    IndexSet members;
    for (std::size_t k = 0; k + 4 < tok.size(); ++k) members.push_back(detail::parse_count(l, tok[k], 1, n) - 1);
    std::sort(members.begin(), members.end());
    std::size_t c = 0;
    while (c < part.classes.size() && part.classes[c] != members) ++c;
    if (c == part.classes.size()) throw FormatError(l.number, format_index_set(members) + " is not a central class");
    if (actions[c]) throw FormatError(l.number, "class listed twice");
    try {
      actions[c] = ClassAction{ScalarMap(ScalarMap::parse_kind(tok[tok.size() - 3]), field), parse_dagger(tok.back())};
    } catch (const std::exception& e) {
      throw FormatError(l.number, e.what());
    }
  }
  std::vector<ClassAction> per_class;
  for (std::size_t c = 0; c < actions.size(); ++c) {
    if (!actions[c]) throw FormatError(0, "no entry for central class " + format_index_set(part.classes[c]));
    per_class.push_back(*actions[c]);
  }
  try {
    bool any_cube = false;
    for (const auto& a : per_class) any_cube = any_cube || !a.omega.is_ring_endomorphism();
    return CanonicalMapSpec(algebra, std::move(t), std::move(*g), std::move(per_class), *mode, any_cube);
  } catch (const std::invalid_argument& e) {
    throw FormatError(0, e.what());
  }
}

inline std::string format_canonical_spec(const CanonicalMapSpec& s) {
  const std::size_t n = s.algebra().size();
  std::string out = detail::header_line(n, s.algebra().field());
  out += "mode: " + mode_name(s.mode()) + "\n";
  out += "T:\n" + s.t().to_string();
  out += "g:\n";
  for (const auto& p : s.algebra().order().strict_part())
    out += std::to_string(p.first + 1) + " " + std::to_string(p.second + 1) + " " + s.g()(p.first, p.second).to_string() + "\n";
  out += "classes:\n";
  const auto& part = s.algebra().classes();
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    for (Index i : part.classes[c]) out += std::to_string(i + 1) + " ";
    out += "omega " + s.per_class()[c].omega.name() + " dagger " + dagger_name(s.per_class()[c].dagger) + "\n";
  }
  return out;
}

}  // namespace smakit
