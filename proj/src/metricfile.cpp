#include "symred/metricfile.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace symred {

MetricFileError::MetricFileError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

// Minimal TOML reader: tables, dotted table names, strings, numbers, booleans
// and (nested, multi-line) arrays. Enough for the files this project writes.
struct Value {
  std::variant<std::string, double, bool, std::vector<Value>> v;
  int line = 0;
};

struct Table {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, Value>> entries;

  const Value* get(const std::string& k) const {
    for (const auto& [key, v] : entries)
      if (key == k) return &v;
    return nullptr;
  }
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  std::vector<Table> run() {
    std::vector<Table> out;
    out.push_back({"", 1, {}});
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++i_;
        Table t{bare_key(), line_, {}};
        expect(']');
        end_of_line();
        for (const auto& o : out)
          if (o.name == t.name) fail("duplicate table [" + t.name + "]");
        out.push_back(std::move(t));
        continue;
      }
      const int at = line_;
      std::string k = bare_key();
      skip_ws();
      expect('=');
      skip_ws();
      Value v = value();
      v.line = at;
      if (out.back().get(k)) throw MetricFileError(at, "duplicate key '" + k + "'");
      end_of_line();
      out.back().entries.emplace_back(std::move(k), std::move(v));
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  [[noreturn]] void fail(const std::string& m) const { throw MetricFileError(line_, m); }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++i_;
  }
  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++i_;
  }
  void newline() {
    ++i_;
    ++line_;
  }
  void skip_blank_lines() {
    while (true) {
      skip_ws();
      skip_comment();
      if (peek() != '\n') return;
      newline();
    }
  }
  // Inside arrays newlines and comments are whitespace.
  void skip_array_space() {
    while (true) {
      skip_ws();
      skip_comment();
      if (peek() != '\n') return;
      newline();
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "'");
    newline();
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  std::string bare_key() {
    skip_ws();
    const std::size_t b = i_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-' || peek() == '.'))
      ++i_;
    if (i_ == b) fail("expected a key");
    std::string k = s_.substr(b, i_ - b);
    skip_ws();
    return k;
  }

  Value value() {
    const char c = peek();
    if (c == '"') return {string()};
    if (c == '[') return {array()};
    if (s_.compare(i_, 4, "true") == 0) {
      i_ += 4;
      return {true};
    }
    if (s_.compare(i_, 5, "false") == 0) {
      i_ += 5;
      return {false};
    }
    std::size_t e = i_;
    while (e < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[e])) ||
                             std::string_view("+-.eE_").find(s_[e]) != std::string_view::npos))
      ++e;
    std::string num = s_.substr(i_, e - i_);
    std::erase(num, '_');
    double d = 0;
    const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
    if (num.empty() || ec != std::errc() || p != num.data() + num.size())
      fail("expected a value");
    i_ = e;
    return {d};
  }

  std::string string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = s_[i_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (eof()) fail("unterminated string");
        c = s_[i_++];
        switch (c) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"':
          case '\\': out += c; break;
          default: fail(std::string("unknown escape \\") + c);
        }
      } else {
        out += c;
      }
    }
  }

  std::vector<Value> array() {
    const int open = line_;
    expect('[');
    std::vector<Value> out;
    while (true) {
      skip_array_space();
      if (eof()) throw MetricFileError(open, "array is never closed");
      if (peek() == ']') {
        ++i_;
        return out;
      }
      const int at = line_;
      Value v = value();
      v.line = at;
      out.push_back(std::move(v));
      skip_array_space();
      if (eof()) throw MetricFileError(open, "array is never closed");
      if (peek() == ',') {
        ++i_;
        continue;
      }
      if (peek() != ']') fail("expected ',' or ']' in array");
    }
  }
};

// Typed access with line-tagged errors.
const std::string& as_string(const Value& v, const std::string& what) {
  if (auto* s = std::get_if<std::string>(&v.v)) return *s;
  throw MetricFileError(v.line, what + " must be a string");
}
double as_number(const Value& v, const std::string& what) {
  if (auto* d = std::get_if<double>(&v.v)) return *d;
  throw MetricFileError(v.line, what + " must be a number");
}
bool as_bool(const Value& v, const std::string& what) {
  if (auto* b = std::get_if<bool>(&v.v)) return *b;
  throw MetricFileError(v.line, what + " must be true or false");
}
const std::vector<Value>& as_array(const Value& v, const std::string& what) {
  if (auto* a = std::get_if<std::vector<Value>>(&v.v)) return *a;
  throw MetricFileError(v.line, what + " must be an array");
}
std::vector<std::string> as_strings(const Value& v, const std::string& what) {
  std::vector<std::string> out;
  for (const auto& x : as_array(v, what)) out.push_back(as_string(x, what + " entries"));
  return out;
}

const Value& need(const Table& t, const std::string& k) {
  if (const Value* v = t.get(k)) return *v;
  throw MetricFileError(t.line, "[" + t.name + "] needs '" + k + "'");
}

void allow_keys(const Table& t, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : t.entries) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw MetricFileError(v.line, "unknown key '" + k + "' in [" + t.name + "]");
  }
}

Expr expression(const Value& v, const std::string& what, const std::set<std::string>& allowed) {
  const std::string& text = as_string(v, what);
  Expr e;
  try {
    e = parse_expr(text);
  } catch (const std::exception& ex) {
    throw MetricFileError(v.line, what + ": " + ex.what());
  }
  for (const auto& s : free_symbols(e))
    if (!allowed.count(s))
      throw MetricFileError(v.line, what + ": unknown symbol '" + s + "'");
  return e;
}

CollineationKind kind_from(const Value& v) {
  const std::string& s = as_string(v, "class");
  for (auto k : {CollineationKind::KV, CollineationKind::HV, CollineationKind::CKV})
    if (s == kind_name(k)) return k;
  throw MetricFileError(v.line, "class must be KV, HV or CKV");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string string_array(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + quote(xs[i]);
  return out + "]";
}

std::string expr_array(const std::vector<Expr>& xs) {
  std::vector<std::string> s;
  for (const auto& x : xs) s.push_back(print_expr(x));
  return string_array(s);
}

std::string number(double d) {
  std::ostringstream os;
  os << d;
  std::string s = os.str();
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

CaseStudy parse_metric_file(const std::string& text) {
  const std::vector<Table> tables = Reader(text).run();
  if (!tables.front().entries.empty())
    throw MetricFileError(tables.front().entries.front().second.line,
                          "keys before the first table");
  const Table* space = nullptr;
  const Table* box = nullptr;
  const Table* metric = nullptr;
  for (const auto& t : tables) {
    if (t.name == "space") space = &t;
    if (t.name == "box") box = &t;
    if (t.name == "metric") metric = &t;
    if (!t.name.empty() && t.name != "space" && t.name != "box" && t.name != "metric" &&
        !t.name.starts_with("vector.") && !t.name.starts_with("reduce."))
      throw MetricFileError(t.line, "unknown table [" + t.name + "]");
  }
  if (!space) throw MetricFileError(0, "missing [space]");
  allow_keys(*space, {"name", "title", "coords"});
  if (!metric) throw MetricFileError(0, "missing [metric]");

  CaseStudy c;
  c.heat_checked = false;
  c.table_complete = false;
  c.name = as_string(need(*space, "name"), "name");
  if (const Value* t = space->get("title")) c.title = as_string(*t, "title");
  const Value& cv = need(*space, "coords");
  const auto coords = as_strings(cv, "coords");
  if (coords.empty()) throw MetricFileError(cv.line, "coords is empty");
  const std::set<std::string> allowed(coords.begin(), coords.end());
  if (allowed.size() != coords.size()) throw MetricFileError(cv.line, "repeated coordinate");
  c.metric.chart.coords = coords;
  const std::size_t n = coords.size();

  if (box)
    for (const auto& [k, v] : box->entries) {
      if (!allowed.count(k)) throw MetricFileError(v.line, "box for unknown coordinate " + k);
      const auto& a = as_array(v, "box entry");
      if (a.size() != 2) throw MetricFileError(v.line, "box entry needs [lo, hi]");
      const double lo = as_number(a[0], "box bound"), hi = as_number(a[1], "box bound");
      if (!(lo < hi)) throw MetricFileError(v.line, "box needs lo < hi");
      c.metric.chart.box[k] = {lo, hi};
    }

  allow_keys(*metric, {"rows", "diag"});
  const Value* rows = metric->get("rows");
  const Value* dg = metric->get("diag");
  if (!rows == !dg) throw MetricFileError(metric->line, "[metric] needs exactly one of rows, diag");
  if (dg) {
    const auto& d = as_array(*dg, "diag");
    if (d.size() != n) throw MetricFileError(dg->line, "diag length differs from coords");
    c.metric.g.assign(n, std::vector<Expr>(n, Expr(0)));
    for (std::size_t i = 0; i < n; ++i) c.metric.g[i][i] = expression(d[i], "diag", allowed);
  } else {
    const auto& r = as_array(*rows, "rows");
    if (r.size() != n) throw MetricFileError(rows->line, "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
    for (const auto& row : r) {
      const auto& cells = as_array(row, "row");
      if (cells.size() != n) throw MetricFileError(row.line, "row length differs from coords");
      c.metric.g.emplace_back();
      for (const auto& cell : cells) c.metric.g.back().push_back(expression(cell, "entry", allowed));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(normalize(c.metric.g[i][j] - c.metric.g[j][i])).is_zero())
          throw MetricFileError(r[i].line, "matrix is not symmetric at (" + coords[i] + ", " +
                                               coords[j] + ")");
  }
  try {
    SampleConfig cfg;
    cfg.box = c.metric.chart.box;
    c.metric.validate(cfg);
  } catch (const std::exception& e) {
    throw MetricFileError(metric->line, e.what());
  }

  std::set<std::string> heat_names;
  for (const auto& t : tables) {
    if (!t.name.starts_with("vector.")) continue;
    allow_keys(t, {"components", "class", "psi", "gradient", "heat", "grad"});
    DeclaredVector d;
    d.name = t.name.substr(7);
    const Value& comp = need(t, "components");
    const auto& xs = as_array(comp, "components");
    if (xs.size() != n) throw MetricFileError(comp.line, "components length differs from coords");
    for (const auto& x : xs) d.v.xi.push_back(expression(x, "component", allowed));
    d.checked = t.get("class") != nullptr;
    if (d.checked) d.kind = kind_from(*t.get("class"));
    if (const Value* p = t.get("psi")) d.psi = expression(*p, "psi", allowed);
    if (const Value* g = t.get("gradient")) d.gradient = as_bool(*g, "gradient") ? Tri::Yes : Tri::No;
    d.heat_name = t.get("heat") ? as_string(*t.get("heat"), "heat") : d.name;
    if (const Value* g = t.get("grad")) d.grad_name = as_string(*g, "grad");
    if (d.heat_name == "X_t" || d.heat_name == "X_u" || !heat_names.insert(d.heat_name).second)
      throw MetricFileError(t.line, "heat name " + d.heat_name + " is reserved or repeated");
    c.vectors.push_back(std::move(d));
  }

  for (const auto& t : tables) {
    if (!t.name.starts_with("reduce.")) continue;
    allow_keys(t, {"names", "degree", "kernels"});
    ReductionTarget r;
    r.by = t.name.substr(7);
    r.checked = false;
    if (const Value* v = t.get("names")) {
      r.names = as_strings(*v, "names");
      if (r.names.size() != n) throw MetricFileError(v->line, "names length differs from coords");
    }
    if (const Value* v = t.get("degree")) {
      const double d = as_number(*v, "degree");
      if (d < 0 || d > 6 || d != static_cast<int>(d))
        throw MetricFileError(v->line, "degree must be an integer in [0, 6]");
      r.search.degree = static_cast<int>(d);
    }
    if (const Value* v = t.get("kernels")) {
      std::set<std::string> names(r.names.begin(), r.names.end());
      r.search.kernels.clear();
      for (const auto& k : as_array(*v, "kernels"))
        r.search.kernels.push_back(expression(k, "kernel", names));
    }
    c.reductions.push_back(std::move(r));
  }
  return c;
}

CaseStudy load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricFileError(0, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_metric_file(ss.str());
}

std::string write_metric_file(const CaseStudy& c) {
  std::ostringstream os;
  os << "[space]\nname = " << quote(c.name) << "\n";
  if (!c.title.empty()) os << "title = " << quote(c.title) << "\n";
  os << "coords = " << string_array(c.metric.chart.coords) << "\n";
  if (!c.metric.chart.box.empty()) {
    os << "\n[box]\n";
    for (const auto& coord : c.metric.chart.coords) {
      const auto it = c.metric.chart.box.find(coord);
      if (it != c.metric.chart.box.end())
        os << coord << " = [" << number(it->second.lo) << ", " << number(it->second.hi) << "]\n";
    }
  }
  os << "\n[metric]\nrows = [\n";
  for (const auto& row : c.metric.g) os << "  " << expr_array(row) << ",\n";
  os << "]\n";
  for (const auto& d : c.vectors) {
    os << "\n[vector." << d.name << "]\n";
    os << "components = " << expr_array(d.v.xi) << "\n";
    if (d.checked) {
      os << "class = " << quote(kind_name(d.kind)) << "\n";
      os << "psi = " << quote(print_expr(d.psi)) << "\n";
      os << "gradient = " << (d.gradient == Tri::Yes ? "true" : "false") << "\n";
    }
    if (d.heat_name != d.name) os << "heat = " << quote(d.heat_name) << "\n";
    if (!d.grad_name.empty()) os << "grad = " << quote(d.grad_name) << "\n";
  }
  for (const auto& r : c.reductions) {
    os << "\n[reduce." << r.by << "]\n";
    if (!r.names.empty()) os << "names = " << string_array(r.names) << "\n";
    os << "degree = " << r.search.degree << "\n";
    os << "kernels = " << expr_array(r.search.kernels) << "\n";
  }
  return os.str();
}

}  // namespace symred
