#include "symcoh/spec_file.hpp"

#include <fmt/core.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace symcoh {

namespace {

using json = nlohmann::json;

/// Line of the first occurrence of "key" in the text, or 0.
std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

[[noreturn]] void fail(const std::string& text, const std::string& key, const std::string& field,
                       const std::string& what) {
  const std::size_t line = line_of_key(text, key);
  if (line == 0) throw SpecError(fmt::format("field {}: {}", field, what));
  throw SpecError(fmt::format("line {}, field {}: {}", line, field, what));
}

Rational coefficient(const json& v, const std::string& text, const std::string& key, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(text, key, field, e.what());
    }
  }
  fail(text, key, field, "coefficient must be an integer or a \"p/q\" string");
}

int index(const json& v, const std::string& text, const std::string& key, const std::string& field) {
  if (!v.is_number_integer()) fail(text, key, field, "expected an integer index");
  return v.get<int>();
}

std::vector<long long> counts(const json& v, const std::string& text, const std::string& key) {
  if (!v.is_array()) fail(text, key, key, "expected an array of non-negative integers");
  std::vector<long long> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || v[i].get<long long>() < 0)
      fail(text, key, fmt::format("{}[{}]", key, i), "expected a non-negative integer");
    out.push_back(v[i].get<long long>());
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.find('-') != std::string::npos)
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  const mpz_class dz(den[0] == '+' ? den.substr(1) : den);
  if (dz == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  Rational r(mpz_class(num[0] == '+' ? num.substr(1) : num), dz);
  r.canonicalize();
  return r;
}

SpecFile parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw SpecError(fmt::format("line {}: malformed JSON ({})", line, e.what()));
  }
  if (!doc.is_object()) throw SpecError("line 1: spec must be a JSON object");

  SpecFile out;
  out.digest = fnv1a64(text);
  out.name = doc.value("name", std::string("unnamed"));

  if (doc.contains("morse")) out.morse = counts(doc["morse"], text, "morse");
  if (doc.contains("torsion")) out.torsion = counts(doc["torsion"], text, "torsion");
  if (doc.contains("table")) {
    const json& t = doc["table"];
    if (!t.is_object() || !t.contains("b") || !t.contains("h"))
      fail(text, "table", "table", "expected an object with arrays \"b\" and \"h\"");
    out.table = ExplicitTable{counts(t["b"], text, "b"), counts(t["h"], text, "h")};
    if (out.table->b.size() != out.table->h.size()) fail(text, "table", "table", "b and h differ in length");
  }
  if (doc.contains("example2")) {
    const json& e = doc["example2"];
    if (!e.is_object() || !e.contains("q") || !e.contains("p") || !e["q"].is_number_integer() ||
        !e["p"].is_number_integer())
      fail(text, "example2", "example2", "expected an object with integers \"q\" and \"p\"");
    out.example2 = FamilyParams{e["q"].get<long long>(), e["p"].get<long long>()};
  }

  const bool has_algebra = doc.contains("dim") || doc.contains("d") || doc.contains("omega");
  if (!has_algebra) {
    if (!out.table && !out.example2) throw SpecError("field dim: missing (no algebra, table or example2 given)");
    return out;
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) fail(text, "dim", "dim", "missing or not an integer");
  if (!doc.contains("omega")) throw SpecError("field omega: missing");
  const int dim = doc["dim"].get<int>();
  if (dim < 2 || dim % 2 != 0 || dim > kMaxBaseDimension)
    fail(text, "dim", "dim", fmt::format("must be even and in [2, {}], got {}", kMaxBaseDimension, dim));

  std::vector<StructureConstant> structure;
  const json d = doc.value("d", json::array());
  if (!d.is_array()) fail(text, "d", "d", "expected an array of [k, [i, j], c]");
  for (std::size_t e = 0; e < d.size(); ++e) {
    const std::string field = fmt::format("d[{}]", e);
    const json& t = d[e];
    if (!t.is_array() || t.size() != 3 || !t[1].is_array() || t[1].size() != 2)
      fail(text, "d", field, "expected [k, [i, j], c]");
    structure.push_back({index(t[0], text, "d", field), index(t[1][0], text, "d", field),
                         index(t[1][1], text, "d", field), coefficient(t[2], text, "d", field)});
  }

  std::vector<std::pair<std::pair<int, int>, Rational>> omega;
  const json& w = doc["omega"];
  if (!w.is_array()) fail(text, "omega", "omega", "expected an array of [[i, j], c]");
  for (std::size_t e = 0; e < w.size(); ++e) {
    const std::string field = fmt::format("omega[{}]", e);
    const json& t = w[e];
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2)
      fail(text, "omega", field, "expected [[i, j], c]");
    const int i = index(t[0][0], text, "omega", field);
    const int j = index(t[0][1], text, "omega", field);
    if (i < 1 || j < 1 || i > dim || j > dim || i == j) fail(text, "omega", field, "index out of range");
    omega.push_back({{i, j}, coefficient(t[1], text, "omega", field)});
  }

  std::optional<SymplecticData> sd;
  try {
    sd.emplace(SymplecticData::from_pairs(dim / 2, omega));
  } catch (const std::invalid_argument& e) {
    fail(text, "omega", "omega", e.what());
  }
  try {
    out.algebra.emplace(out.name, dim, structure, *sd);
  } catch (const SpecError& e) {
    fail(text, "d", "d", e.what());
  }
  if (out.morse && out.morse->size() != static_cast<std::size_t>(dim + 1))
    fail(text, "morse", "morse", fmt::format("expected {} entries (m_0..m_{})", dim + 1, dim));
  if (out.torsion && out.torsion->size() != static_cast<std::size_t>(dim + 1))
    fail(text, "torsion", "torsion", fmt::format("expected {} entries", dim + 1));
  return out;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

}  // namespace symcoh
