#include "dist235/model.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dist235/errors.hpp"
#include "dist235/parser.hpp"

namespace dist235 {

using json = nlohmann::json;

ModelError::ModelError(const std::string& message, std::string pointer, std::size_t position, std::size_t line,
                       std::size_t column)
    : ParseError(message + " at " + (pointer.empty() ? std::string("/") : pointer) + ", line " + std::to_string(line) +
                     ", column " + std::to_string(column),
                 position),
      pointer_(std::move(pointer)),
      line_(line),
      column_(column) {}

namespace {

// Byte offsets of values are recovered by rescanning the text along a JSON pointer; the
// document has already been accepted by the json parser, so the scanner can be lenient.
class Locator {
 public:
  explicit Locator(std::string_view text) : t_(text) {}

  std::size_t find(const json::json_pointer& ptr) const {
    std::vector<std::string> tokens;
    for (json::json_pointer p = ptr; !p.empty(); p = p.parent_pointer()) tokens.insert(tokens.begin(), p.back());
    std::size_t pos = skip_ws(0);
    for (const auto& tok : tokens) {
      std::size_t next = child(pos, tok);
      if (next == std::string_view::npos) break;
      pos = next;
    }
    return pos;
  }

  std::pair<std::size_t, std::size_t> line_column(std::size_t pos) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < t_.size(); ++i) {
      if (t_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

 private:
  std::size_t skip_ws(std::size_t i) const {
    while (i < t_.size() && (t_[i] == ' ' || t_[i] == '\n' || t_[i] == '\r' || t_[i] == '\t')) ++i;
    return i;
  }

  std::size_t skip_string(std::size_t i) const {
    for (++i; i < t_.size(); ++i) {
      if (t_[i] == '\\') ++i;
      else if (t_[i] == '"') return i + 1;
    }
    return i;
  }

  std::size_t skip_value(std::size_t i) const {
    if (i >= t_.size()) return i;
    if (t_[i] == '"') return skip_string(i);
    if (t_[i] == '{' || t_[i] == '[') {
      int depth = 0;
      for (; i < t_.size(); ++i) {
        char c = t_[i];
        if (c == '"') {
          i = skip_string(i) - 1;
        } else if (c == '{' || c == '[') {
          ++depth;
        } else if (c == '}' || c == ']') {
          if (--depth == 0) return i + 1;
        }
      }
      return i;
    }
    while (i < t_.size() && t_[i] != ',' && t_[i] != '}' && t_[i] != ']' && t_[i] != ' ' && t_[i] != '\n') ++i;
    return i;
  }

  std::size_t child(std::size_t pos, const std::string& token) const {
    if (pos >= t_.size()) return std::string_view::npos;
    if (t_[pos] == '[') {
      std::size_t want = std::stoul(token), k = 0;
      std::size_t i = skip_ws(pos + 1);
      while (i < t_.size() && t_[i] != ']') {
        if (k == want) return i;
        i = skip_ws(skip_value(i));
        if (i < t_.size() && t_[i] == ',') i = skip_ws(i + 1);
        ++k;
      }
      return std::string_view::npos;
    }
    if (t_[pos] == '{') {
      std::size_t i = skip_ws(pos + 1);
      while (i < t_.size() && t_[i] == '"') {
        std::size_t end = skip_string(i);
        std::string_view key = t_.substr(i + 1, end - i - 2);
        i = skip_ws(end);
        if (i < t_.size() && t_[i] == ':') i = skip_ws(i + 1);
        if (key == token) return i;
        i = skip_ws(skip_value(i));
        if (i < t_.size() && t_[i] == ',') i = skip_ws(i + 1);
      }
    }
    return std::string_view::npos;
  }

  std::string_view t_;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text), loc_(text) {
    try {
      doc_ = json::parse(text);
    } catch (const json::parse_error& e) {
      std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
      auto [line, col] = loc_.line_column(pos);
      std::string what = e.what();
      if (auto k = what.find("syntax error"); k != std::string::npos) what = what.substr(k);
      throw ModelError("invalid JSON: " + what, "", pos, line, col);
    }
  }

  const json& doc() const { return doc_; }

  [[noreturn]] void fail(const json::json_pointer& ptr, const std::string& message, std::size_t inner = 0) const {
    std::size_t pos = loc_.find(ptr);
    if (inner > 0 || (pos < text_.size() && text_[pos] == '"')) pos += 1 + inner;
    auto [line, col] = loc_.line_column(pos);
    throw ModelError(message, ptr.to_string(), pos, line, col);
  }

  const json& at(const json::json_pointer& ptr) const { return doc_.at(ptr); }

  void expect_object(const json::json_pointer& ptr, std::initializer_list<std::string_view> allowed) const {
    const json& v = at(ptr);
    if (!v.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, _] : v.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(ptr / key, "unknown key \"" + key + "\"");
    }
  }

  const json& array(const json::json_pointer& ptr, std::size_t size = 0) const {
    const json& v = at(ptr);
    if (!v.is_array()) fail(ptr, "expected an array");
    if (size && v.size() != size) fail(ptr, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
    return v;
  }

  std::string string(const json::json_pointer& ptr) const {
    const json& v = at(ptr);
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
  }

  Rational rational(const json::json_pointer& ptr) const {
    const json& v = at(ptr);
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (!v.is_string()) fail(ptr, "expected a rational as a string such as \"-3/2\" or an integer");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(ptr, "malformed rational", e.position());
    } catch (const Error& e) {
      fail(ptr, e.what());
    }
  }

  int integer(const json::json_pointer& ptr, int lo, int hi) const {
    const json& v = at(ptr);
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    long long k = v.get<long long>();
    if (k < lo || k > hi) fail(ptr, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(k);
  }

  RationalFunction expression(const json::json_pointer& ptr, const std::vector<std::string>& names) const {
    std::string s = string(ptr);
    try {
      return parse_expression(s, names);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (auto k = msg.rfind(" (at position"); k != std::string::npos) msg.resize(k);
      fail(ptr, msg, e.position());
    } catch (const Error& e) {
      fail(ptr, e.what());
    }
  }

  std::vector<Rational> tuple(const json::json_pointer& ptr, std::size_t n) const {
    array(ptr, n);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rational(ptr / i));
    return out;
  }

 private:
  std::string_view text_;
  Locator loc_;
  json doc_;
};

const std::vector<std::string> kMongeCoordinates{"x", "y", "p", "q", "z"};

std::vector<std::string> coordinates(const Reader& r, const json::json_pointer& ptr) {
  if (!r.doc().contains(ptr)) return kMongeCoordinates;
  r.array(ptr, 5);
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 5; ++i) {
    std::string s = r.string(ptr / i);
    bool ident = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
    for (char c : s) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ident) r.fail(ptr / i, "coordinate names must be identifiers");
    if (!seen.insert(s).second) r.fail(ptr / i, "duplicate coordinate \"" + s + "\"");
    names.push_back(s);
  }
  return names;
}

std::string fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::array<OneForm, 5> read_forms5(const Reader& r, const json::json_pointer& ptr, const std::vector<std::string>& names) {
  r.array(ptr, 5);
  std::array<OneForm, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    r.array(ptr / i, 5);
    std::vector<RationalFunction> c;
    for (std::size_t j = 0; j < 5; ++j) c.push_back(r.expression(ptr / i / j, names));
    out[i] = OneForm(std::move(c));
  }
  return out;
}

CoframeDocument read_coframe(const Reader& r, const json::json_pointer& root, bool top_level,
                             const std::vector<std::string>* model_coordinates) {
  r.expect_object(root, {"schema", "title", "coordinates", "monge", "omega", "omega_bar", "points", "description"});
  const json& obj = r.at(root);
  if (top_level || obj.contains("schema")) {
    if (!obj.contains("schema")) r.fail(root, "missing \"schema\"");
    if (r.string(root / "schema") != kCoframeSchema)
      r.fail(root / "schema", "unsupported schema, expected \"" + std::string(kCoframeSchema) + "\"");
  }
  for (const char* key : {"omega", "omega_bar"})
    if (!obj.contains(key)) r.fail(root, std::string("missing \"") + key + "\"");

  CoframeDocument d;
  if (obj.contains("title")) d.title = r.string(root / "title");
  d.coordinates = coordinates(r, root / "coordinates");
  if (model_coordinates && d.coordinates != *model_coordinates)
    r.fail(root / "coordinates", "coframe coordinates differ from the model's");
  if (obj.contains("monge")) d.monge = r.string(root / "monge");
  d.coframe.omega = read_forms5(r, root / "omega", d.coordinates);
  const json::json_pointer bar = root / "omega_bar";
  r.array(bar, 7);
  for (std::size_t i = 0; i < 7; ++i) {
    r.array(bar / i, 5);
    std::vector<RationalFunction> c;
    for (std::size_t j = 0; j < 5; ++j) c.push_back(r.expression(bar / i / j, d.coordinates));
    d.coframe.bar[i] = OneForm(std::move(c));
  }
  if (obj.contains("points")) {
    const json& pts = r.array(root / "points");
    for (std::size_t i = 0; i < pts.size(); ++i) d.points.push_back(r.tuple(root / "points" / i, 5));
  }
  return d;
}

std::string field_text(const VectorField& v, const std::vector<std::string>& names) {
  std::string s = "[";
  for (std::size_t j = 0; j < v.dim(); ++j) s += (j ? ", " : "") + to_string(v[j], names);
  return s + "]";
}

}  // namespace

CoframeDocument parse_coframe(std::string_view text) {
  Reader r(text);
  return read_coframe(r, json::json_pointer(), true, nullptr);
}

CoframeDocument load_coframe(const std::filesystem::path& path) { return parse_coframe(read_file(path)); }

ModelSpec parse_model(std::string_view text, const std::filesystem::path& base) {
  Reader r(text);
  const json::json_pointer root;
  r.expect_object(root, {"schema", "name", "description", "coordinates", "monge", "fields", "points", "coframe", "orders"});
  const json& doc = r.doc();
  if (!doc.contains("schema")) r.fail(root, "missing \"schema\"");
  if (r.string(root / "schema") != kModelSchema)
    r.fail(root / "schema", "unsupported schema, expected \"" + std::string(kModelSchema) + "\"");

  ModelSpec m;
  std::string canonical = doc.dump();
  if (doc.contains("name")) m.name = r.string(root / "name");
  m.coordinates = coordinates(r, root / "coordinates");

  bool has_monge = doc.contains("monge"), has_fields = doc.contains("fields");
  if (has_monge == has_fields) r.fail(root, "exactly one of \"monge\" and \"fields\" is required");
  if (has_monge) {
    m.monge = r.string(root / "monge");
    auto x = monge_distribution(r.expression(root / "monge", m.coordinates));
    m.x1 = x[0];
    m.x2 = x[1];
  } else {
    const json::json_pointer f = root / "fields";
    r.expect_object(f, {"X1", "X2"});
    for (const char* key : {"X1", "X2"})
      if (!r.at(f).contains(key)) r.fail(f, std::string("missing \"") + key + "\"");
    for (int k = 0; k < 2; ++k) {
      const json::json_pointer v = f / (k == 0 ? "X1" : "X2");
      r.array(v, 5);
      std::vector<RationalFunction> c;
      for (std::size_t j = 0; j < 5; ++j) c.push_back(r.expression(v / j, m.coordinates));
      (k == 0 ? m.x1 : m.x2) = VectorField(std::move(c));
    }
  }
  m.field_text = {field_text(m.x1, m.coordinates), field_text(m.x2, m.coordinates)};

  if (!doc.contains("points")) r.fail(root, "missing \"points\"");
  const json& pts = r.array(root / "points");
  if (pts.empty()) r.fail(root / "points", "at least one working point is required");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const json::json_pointer p = root / "points" / i;
    WorkingPoint w;
    if (pts[i].is_array()) {
      w.q = r.tuple(p, 5);
    } else {
      r.expect_object(p, {"q", "u"});
      if (!pts[i].contains("q")) r.fail(p, "missing \"q\"");
      w.q = r.tuple(p / "q", 5);
      if (pts[i].contains("u")) {
        const json& us = r.array(p / "u");
        if (us.empty()) r.fail(p / "u", "expected at least one (u4, u5) pair");
        for (std::size_t k = 0; k < us.size(); ++k) {
          auto pair = r.tuple(p / "u" / k, 2);
          if (is_zero(pair[0]) && is_zero(pair[1])) r.fail(p / "u" / k, "(u4, u5) must be nonzero");
          w.u.push_back({pair[0], pair[1]});
        }
      }
    }
    if (w.u.empty()) w.u = {{Rational(0), Rational(1)}, {Rational(1), Rational(1)}};
    m.points.push_back(std::move(w));
  }

  if (doc.contains("orders")) {
    const json::json_pointer o = root / "orders";
    r.expect_object(o, {"t", "tau"});
    if (r.at(o).contains("t")) m.orders.t_order = r.integer(o / "t", 1, 64);
    if (r.at(o).contains("tau")) m.orders.tau_order = r.integer(o / "tau", 1, 64);
  }

  if (doc.contains("coframe")) {
    const json::json_pointer c = root / "coframe";
    if (r.at(c).is_string()) {
      std::filesystem::path path = r.string(c);
      if (path.is_relative()) path = base / path;
      std::string body;
      try {
        body = read_file(path);
      } catch (const ParseError& e) {
        r.fail(c, e.what());
      }
      try {
        Reader inner(body);
        m.coframe = read_coframe(inner, json::json_pointer(), true, &m.coordinates);
      } catch (const ModelError& e) {
        r.fail(c, std::string("in ") + path.string() + ": " + e.what());
      }
      canonical += json::parse(body).dump();
    } else {
      m.coframe = read_coframe(r, c, false, &m.coordinates);
    }
    for (int i = 0; i < 3; ++i)
      for (const VectorField* v : {&m.x1, &m.x2})
        if (!m.coframe->coframe.omega[i](*v).is_zero())
          r.fail(c, "omega_" + std::to_string(i + 1) + " does not annihilate the distribution");
  }
  m.fingerprint = fnv1a64(canonical);
  return m;
}

ModelSpec load_model(const std::filesystem::path& path) { return parse_model(read_file(path), path.parent_path()); }

}  // namespace dist235
