#pragma once
/**
 * Line-oriented text formats for categories, functors and diagrams, a
 * workspace resolving names and derived-category expressions, and JSON
 * renderings of results.
 *
 *   category V              functor f : C -> D        diagram A on fact(E)
 *   objects a b c           obj 0 |-> 0               rank e = 2
 *   mor alpha : a -> c      mor u |-> v               mat e|id_1@e = [1 0; 0 1]
 *   comp g f = h
 *
 * `#` starts a comment. Category expressions: NAME, op(X), prod(X,Y), fact(X).
 */

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "catcohom/criteria.hpp"
#include "catcohom/diagram.hpp"
#include "catcohom/fincat.hpp"
#include "catcohom/homology.hpp"

namespace catcohom {

namespace text {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::string raw;
  std::vector<Token> tokens;
};

inline std::vector<Line> lex(std::string_view source) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    std::string raw(source.substr(pos, end - pos));
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, raw, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

[[noreturn]] inline void syntax_error(const std::string& origin, std::size_t line, std::size_t column,
                                      const std::string& message) {
  throw Error(ErrorKind::Syntax,
              origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

inline void expect_count(const std::string& origin, const Line& l, std::size_t n, const char* usage) {
  if (l.tokens.size() != n) {
    const std::size_t col = l.tokens.size() > n ? l.tokens[n].column : l.raw.size() + 1;
    syntax_error(origin, l.number, col, std::string("expected `") + usage + "`");
  }
}

inline void expect_word(const std::string& origin, const Line& l, std::size_t i, const char* word, const char* usage) {
  if (l.tokens.size() <= i || l.tokens[i].text != word)
    syntax_error(origin, l.number, l.tokens.size() > i ? l.tokens[i].column : l.raw.size() + 1,
                 std::string("expected `") + usage + "`");
}

/// Matrix literal `[a b; c d]`; `[]` is the empty matrix.
inline IntMatrix parse_matrix(const std::string& origin, std::size_t line, std::size_t column, std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string_view::npos || s[a] != '[' || s[b] != ']')
    syntax_error(origin, line, column, "matrix must be written as [r11 r12; r21 r22]");
  const std::string_view body = s.substr(a + 1, b - a - 1);
  std::vector<std::vector<Integer>> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = body.find(';', start);
    const std::string_view row = body.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    std::istringstream in{std::string(row)};
    std::vector<Integer> entries;
    std::string tok;
    while (in >> tok) {
      Integer v;
      if (v.set_str(tok, 10) != 0)
        syntax_error(origin, line, column + a + 1 + start, "bad integer '" + tok + "' in matrix");
      entries.push_back(v);
    }
    rows.push_back(std::move(entries));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (rows.size() == 1 && rows[0].empty()) return IntMatrix();
  const std::size_t cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) syntax_error(origin, line, column, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace text

// ---------------------------------------------------------------------------
// Raw parsed blocks

struct FunctorText {
  std::string name, source, target;
  std::vector<std::pair<std::string, std::string>> objects;
  std::vector<std::pair<std::string, std::string>> morphisms;
  std::string origin;
};

struct DiagramText {
  std::string name, base_expr;
  std::vector<std::pair<std::string, std::size_t>> ranks;
  std::vector<std::pair<std::string, IntMatrix>> matrices;
  std::string origin;
};

struct ParsedFile {
  std::vector<RawCategory> categories;
  std::vector<FunctorText> functors;
  std::vector<DiagramText> diagrams;
};

inline ParsedFile parse_blocks(std::string_view source, const std::string& origin = "<input>") {
  using namespace text;
  ParsedFile out;
  enum class Kind { None, Category, Functor, Diagram } kind = Kind::None;
  for (const Line& l : lex(source)) {
    const std::string& head = l.tokens[0].text;
    if (head == "category") {
      expect_count(origin, l, 2, "category <name>");
      out.categories.push_back(RawCategory{l.tokens[1].text, {}, {}, {}});
      kind = Kind::Category;
    } else if (head == "functor") {
      expect_count(origin, l, 6, "functor <name> : <source> -> <target>");
      expect_word(origin, l, 2, ":", "functor <name> : <source> -> <target>");
      expect_word(origin, l, 4, "->", "functor <name> : <source> -> <target>");
      out.functors.push_back(FunctorText{l.tokens[1].text, l.tokens[3].text, l.tokens[5].text, {}, {}, origin});
      kind = Kind::Functor;
    } else if (head == "diagram") {
      if (l.tokens.size() < 4) syntax_error(origin, l.number, l.raw.size() + 1, "expected `diagram <name> on <category-expr>`");
      expect_word(origin, l, 2, "on", "diagram <name> on <category-expr>");
      std::string expr;
      for (std::size_t i = 3; i < l.tokens.size(); ++i) expr += l.tokens[i].text;
      out.diagrams.push_back(DiagramText{l.tokens[1].text, expr, {}, {}, origin});
      kind = Kind::Diagram;
    } else if (kind == Kind::Category && head == "objects") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) out.categories.back().objects.push_back(l.tokens[i].text);
    } else if (kind == Kind::Category && head == "mor") {
      expect_count(origin, l, 6, "mor <name> : <dom> -> <cod>");
      expect_word(origin, l, 2, ":", "mor <name> : <dom> -> <cod>");
      expect_word(origin, l, 4, "->", "mor <name> : <dom> -> <cod>");
      out.categories.back().morphisms.push_back({l.tokens[1].text, l.tokens[3].text, l.tokens[5].text});
    } else if (kind == Kind::Category && head == "comp") {
      expect_count(origin, l, 5, "comp <g> <f> = <h>");
      expect_word(origin, l, 3, "=", "comp <g> <f> = <h>");
      out.categories.back().composites.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[4].text});
    } else if (kind == Kind::Functor && (head == "obj" || head == "mor")) {
      expect_count(origin, l, 4, "obj|mor <source> |-> <target>");
      expect_word(origin, l, 2, "|->", "obj|mor <source> |-> <target>");
      auto& list = head == "obj" ? out.functors.back().objects : out.functors.back().morphisms;
      list.emplace_back(l.tokens[1].text, l.tokens[3].text);
    } else if (kind == Kind::Diagram && head == "rank") {
      expect_count(origin, l, 4, "rank <object> = <k>");
      expect_word(origin, l, 2, "=", "rank <object> = <k>");
      const std::string& v = l.tokens[3].text;
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 9)
        syntax_error(origin, l.number, l.tokens[3].column, "rank must be a nonnegative integer");
      out.diagrams.back().ranks.emplace_back(l.tokens[1].text, std::stoul(v));
    } else if (kind == Kind::Diagram && head == "mat") {
      if (l.tokens.size() < 4) syntax_error(origin, l.number, l.raw.size() + 1, "expected `mat <morphism> = [..]`");
      expect_word(origin, l, 2, "=", "mat <morphism> = [..]");
      const std::size_t col = l.tokens[3].column;
      out.diagrams.back().matrices.emplace_back(l.tokens[1].text,
                                                parse_matrix(origin, l.number, col, std::string_view(l.raw).substr(col - 1)));
    } else {
      syntax_error(origin, l.number, l.tokens[0].column, "unexpected '" + head + "'");
    }
  }
  return out;
}

inline FinCat parse_category(std::string_view source, const std::string& origin = "<input>") {
  ParsedFile p = parse_blocks(source, origin);
  if (p.categories.size() != 1 || !p.functors.empty() || !p.diagrams.empty())
    throw Error(ErrorKind::Syntax, origin + ": expected exactly one category block");
  return validate(p.categories[0]);
}

// ---------------------------------------------------------------------------
// Printing

inline std::string print_category(const FinCat& C) {
  std::ostringstream out;
  out << "category " << C.name() << "\n";
  out << "objects";
  for (const auto& o : C.objects()) out << ' ' << o;
  out << "\n";
  for (MorId f = 0; f < C.num_morphisms(); ++f)
    if (!C.is_identity(f))
      out << "mor " << C.morphism_name(f) << " : " << C.object_name(C.dom(f)) << " -> " << C.object_name(C.cod(f)) << "\n";
  for (MorId g = 0; g < C.num_morphisms(); ++g) {
    if (C.is_identity(g)) continue;
    for (MorId f = 0; f < C.num_morphisms(); ++f) {
      if (C.is_identity(f) || !C.composable(g, f)) continue;
      out << "comp " << C.morphism_name(g) << ' ' << C.morphism_name(f) << " = " << C.morphism_name(C.compose(g, f))
          << "\n";
    }
  }
  return out.str();
}

inline std::string print_functor(const FunctorMap& F) {
  std::ostringstream out;
  out << "functor " << F.name << " : " << F.source->name() << " -> " << F.target->name() << "\n";
  for (ObjId a = 0; a < F.source->num_objects(); ++a)
    out << "obj " << F.source->object_name(a) << " |-> " << F.target->object_name(F.obj(a)) << "\n";
  for (MorId m = 0; m < F.source->num_morphisms(); ++m)
    if (!F.source->is_identity(m))
      out << "mor " << F.source->morphism_name(m) << " |-> " << F.target->morphism_name(F.mor(m)) << "\n";
  return out.str();
}

inline std::string print_diagram(const Diagram& G) {
  std::ostringstream out;
  const FinCat& C = *G.base;
  out << "diagram " << G.name << " on " << C.name() << "\n";
  for (ObjId a = 0; a < C.num_objects(); ++a)
    if (G.rank[a] > 0) out << "rank " << C.object_name(a) << " = " << G.rank[a] << "\n";
  for (MorId m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m) && G.rank[C.dom(m)] > 0 && G.rank[C.cod(m)] > 0)
      out << "mat " << C.morphism_name(m) << " = " << G.action[m].to_string() << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Workspace

class Workspace {
 public:
  /// Directories searched for `<name>.cat` when a category is not loaded yet.
  void add_search_dir(std::filesystem::path dir) {
    if (std::find(search_.begin(), search_.end(), dir) == search_.end()) search_.push_back(std::move(dir));
  }

  void add_category(CatPtr C) { categories_[C->name()] = std::move(C); }
  void add_functor(FunctorMap F) { functors_[F.name] = std::move(F); }
  void add_diagram(Diagram G) { diagrams_[G.name] = std::move(G); }

  /// Loads every block of a source text; returns the names defined, in order.
  struct Loaded {
    std::vector<std::string> categories, functors, diagrams;
  };

  Loaded load_text(std::string_view source, const std::string& origin, const std::filesystem::path& dir = {}) {
    if (!dir.empty()) add_search_dir(dir);
    ParsedFile p = parse_blocks(source, origin);
    Loaded out;
    for (const auto& raw : p.categories) {
      add_category(share(validate(raw)));
      out.categories.push_back(raw.name);
    }
    for (const auto& f : p.functors) {
      add_functor(build_functor(f));
      out.functors.push_back(f.name);
    }
    for (const auto& d : p.diagrams) {
      add_diagram(build_diagram(d));
      out.diagrams.push_back(d.name);
    }
    return out;
  }

  Loaded load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_text(ss.str(), path.string(), path.parent_path().empty() ? "." : path.parent_path());
  }

  /// Resolves NAME, op(X), prod(X,Y), fact(X); derived categories are cached by expression.
  CatPtr category(const std::string& expr) {
    const std::string e = strip(expr);
    if (auto it = categories_.find(e); it != categories_.end()) return it->second;
    const auto open = e.find('(');
    if (open == std::string::npos || e.back() != ')') {
      if (try_load_category(e)) return categories_.at(e);
      throw Error(ErrorKind::UnknownName, "unknown category '" + e + "'");
    }
    const std::string head = e.substr(0, open);
    const auto args = split_args(e.substr(open + 1, e.size() - open - 2));
    CatPtr result;
    if (head == "op" && args.size() == 1) {
      result = share(opposite(*category(args[0])));
    } else if (head == "fact" && args.size() == 1) {
      result = factorization_of(args[0]).category;
    } else if (head == "prod" && args.size() == 2) {
      result = share(product(category(args[0]), category(args[1])));
    } else {
      throw Error(ErrorKind::Syntax, "bad category expression '" + e + "'");
    }
    categories_[result->name()] = result;
    categories_[e] = result;
    return result;
  }

  const Factorization& factorization_of(const std::string& expr) {
    CatPtr C = category(expr);
    auto it = factorizations_.find(C->name());
    if (it == factorizations_.end()) {
      Factorization F = factorization(C);
      categories_[F.category->name()] = F.category;
      it = factorizations_.emplace(C->name(), std::move(F)).first;
    }
    return it->second;
  }

  const FunctorMap& functor(const std::string& name) const {
    auto it = functors_.find(name);
    if (it == functors_.end()) throw Error(ErrorKind::UnknownName, "unknown functor '" + name + "'");
    return it->second;
  }
  const Diagram& diagram(const std::string& name) const {
    auto it = diagrams_.find(name);
    if (it == diagrams_.end()) throw Error(ErrorKind::UnknownName, "unknown diagram '" + name + "'");
    return it->second;
  }

 private:
  static std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  }

  static std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }

  bool try_load_category(const std::string& name) {
    for (const auto& dir : search_) {
      const auto path = dir / (name + ".cat");
      if (std::filesystem::exists(path)) {
        load_file(path);
        if (categories_.count(name)) return true;
      }
    }
    return false;
  }

  FunctorMap build_functor(const FunctorText& t) {
    CatPtr C = category(t.source), D = category(t.target);
    std::vector<ObjId> obj(C->num_objects(), kNone);
    std::vector<MorId> mor(C->num_morphisms(), kNone);
    for (const auto& [a, b] : t.objects) obj[C->object(a)] = D->object(b);
    for (ObjId a = 0; a < C->num_objects(); ++a) {
      if (obj[a] == kNone)
        throw Error(ErrorKind::NotFunctorial, t.name + ": no image for object '" + C->object_name(a) + "'");
      mor[C->identity(a)] = D->identity(obj[a]);
    }
    for (const auto& [u, v] : t.morphisms) mor[C->morphism_id(u)] = D->morphism_id(v);
    for (MorId m = 0; m < C->num_morphisms(); ++m)
      if (mor[m] == kNone)
        throw Error(ErrorKind::NotFunctorial, t.name + ": no image for morphism '" + C->morphism_name(m) + "'");
    return make_functor(t.name, C, D, std::move(obj), std::move(mor));
  }

  Diagram build_diagram(const DiagramText& t) {
    CatPtr C = category(t.base_expr);
    std::vector<std::size_t> rank(C->num_objects(), 0);
    for (const auto& [o, r] : t.ranks) rank[C->object(o)] = r;
    std::vector<std::optional<IntMatrix>> given(C->num_morphisms());
    for (const auto& [m, M] : t.matrices) given[C->morphism_id(m)] = M;
    std::vector<IntMatrix> action;
    for (MorId m = 0; m < C->num_morphisms(); ++m) {
      const std::size_t r = rank[C->cod(m)], c = rank[C->dom(m)];
      if (given[m]) {
        IntMatrix M = *given[m];
        if (M.rows() == 0 && M.cols() == 0) M = IntMatrix(r, c);
        if (M.rows() != r || M.cols() != c)
          throw Error(ErrorKind::ShapeMismatch, t.origin + ": matrix of '" + C->morphism_name(m) + "' should be " +
                                                    std::to_string(r) + "x" + std::to_string(c));
        action.push_back(std::move(M));
      } else if (C->is_identity(m)) {
        action.push_back(IntMatrix::identity(r));
      } else if (r == 0 || c == 0) {
        action.push_back(IntMatrix(r, c));
      } else {
        throw Error(ErrorKind::ShapeMismatch, t.origin + ": no matrix given for '" + C->morphism_name(m) + "'");
      }
    }
    return make_diagram(t.name, C, std::move(rank), std::move(action));
  }

  std::vector<std::filesystem::path> search_;
  std::map<std::string, CatPtr> categories_;
  std::map<std::string, Factorization> factorizations_;
  std::map<std::string, FunctorMap> functors_;
  std::map<std::string, Diagram> diagrams_;
};

inline FunctorMap parse_functor(std::string_view source, Workspace& ws, const std::string& origin = "<input>") {
  auto loaded = ws.load_text(source, origin);
  if (loaded.functors.size() != 1) throw Error(ErrorKind::Syntax, origin + ": expected exactly one functor block");
  return ws.functor(loaded.functors[0]);
}

inline Diagram parse_diagram(std::string_view source, Workspace& ws, const std::string& origin = "<input>") {
  auto loaded = ws.load_text(source, origin);
  if (loaded.diagrams.size() != 1) throw Error(ErrorKind::Syntax, origin + ": expected exactly one diagram block");
  return ws.diagram(loaded.diagrams[0]);
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

inline Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Json group_json(const AbGroup& g, std::optional<int> degree = std::nullopt) {
  Json j = Json::object();
  if (degree) j["degree"] = *degree;
  j["betti"] = g.betti;
  Json t = Json::array();
  for (const auto& x : g.torsion) t.push_back(integer_json(x));
  j["torsion"] = t;
  return j;
}

inline Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Json group_hom_json(const GroupHom& h) {
  Json j = Json::object();
  j["source"] = group_json(h.source);
  j["target"] = group_json(h.target);
  j["matrix"] = matrix_json(h.matrix);
  j["is_iso"] = h.is_iso;
  j["is_mono"] = h.is_mono;
  j["is_epi"] = h.is_epi;
  return j;
}

inline Json report_json(const CriterionReport& r) {
  Json j = Json::object();
  j["criterion"] = r.criterion;
  j["level"] = r.level;
  if (r.simplex_bound) j["simplex_bound"] = *r.simplex_bound;
  j["verdict"] = r.pass() ? "pass" : "fail";
  if (r.simplex_bound && r.pass()) j["note"] = "pass up to simplex bound " + std::to_string(*r.simplex_bound);
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    Json e = Json::object();
    e["anchor"] = x.anchor;
    e["reason"] = to_string(x.reason);
    if (x.degree) e["degree"] = *x.degree;
    w.push_back(e);
  }
  j["witnesses"] = w;
  Json a = Json::array();
  for (const auto& g : r.groups) {
    Json e = Json::object();
    e["anchor"] = g.anchor;
    Json gs = Json::array();
    for (std::size_t n = 0; n < g.groups.size(); ++n) gs.push_back(g.groups[n].to_string());
    e["groups"] = gs;
    a.push_back(e);
  }
  j["anchors"] = a;
  return j;
}

}  // namespace catcohom
