#include "caymin/group.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "caymin/errors.hpp"

namespace caymin {

namespace {

std::atomic<int> g_next_model_id{0};

using Vec = std::vector<long long>;       // free abelian
using Word = std::vector<int>;            // free: +i generator i, -i inverse
using Syllables = std::vector<std::pair<int, int>>;  // free product

// ---- finite multiplication tables ------------------------------------------

struct Table {
  int n = 0;
  std::vector<int> mul;  // n*n, row-major
  int e = 0;
  std::vector<int> inv;

  int at(int a, int b) const { return mul[a * n + b]; }
};

Table validate_table(const std::vector<std::vector<int>>& rows,
                     bool check_associativity = true) {
  Table t;
  t.n = static_cast<int>(rows.size());
  if (t.n < 1) throw ParseError("multiplication table must be nonempty");
  if (t.n > 256) throw ParseError("multiplication tables are capped at 256 elements");
  t.mul.resize(t.n * t.n);
  for (int i = 0; i < t.n; ++i) {
    if (static_cast<int>(rows[i].size()) != t.n)
      throw ParseError("multiplication table is not square");
    for (int j = 0; j < t.n; ++j) {
      int v = rows[i][j];
      if (v < 0 || v >= t.n) throw ParseError("table entry out of range");
      t.mul[i * t.n + j] = v;
    }
  }
  // Latin square: rows and columns are permutations.
  for (int i = 0; i < t.n; ++i) {
    std::vector<char> seen_row(t.n, 0), seen_col(t.n, 0);
    for (int j = 0; j < t.n; ++j) {
      if (seen_row[t.at(i, j)]++) throw ParseError("table row is not a permutation");
      if (seen_col[t.at(j, i)]++) throw ParseError("table column is not a permutation");
    }
  }
  int e = -1;
  for (int c = 0; c < t.n; ++c) {
    bool ok = true;
    for (int x = 0; x < t.n && ok; ++x)
      ok = t.at(c, x) == x && t.at(x, c) == x;
    if (ok) {
      e = c;
      break;
    }
  }
  if (e < 0) throw ParseError("table has no two-sided identity");
  t.e = e;
  t.inv.assign(t.n, -1);
  for (int a = 0; a < t.n; ++a) {
    for (int b = 0; b < t.n; ++b)
      if (t.at(a, b) == e && t.at(b, a) == e) {
        t.inv[a] = b;
        break;
      }
    if (t.inv[a] < 0) throw ParseError("table element without a two-sided inverse");
  }
  if (check_associativity) {
    for (int a = 0; a < t.n; ++a)
      for (int b = 0; b < t.n; ++b)
        for (int c = 0; c < t.n; ++c)
          if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
            throw ParseError("table is not associative");
  }
  return t;
}

Table cyclic_table(int n) {
  if (n < 1) throw ParseError("cyclic group order must be positive");
  if (n > 256) throw ParseError("cyclic tables are capped at 256 elements");
  Table t;
  t.n = n;
  t.e = 0;
  t.mul.resize(n * n);
  t.inv.resize(n);
  for (int i = 0; i < n; ++i) {
    t.inv[i] = (n - i) % n;
    for (int j = 0; j < n; ++j) t.mul[i * n + j] = (i + j) % n;
  }
  return t;
}

// ---- small parsing helpers --------------------------------------------------

long long parse_int(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  size_t digits = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits) throw ParseError("expected integer in '" + s + "'");
  return std::stoll(s.substr(start, pos - start));
}

Vec parse_vector(const std::string& s, int rank) {
  std::string w = s;
  Vec out;
  if (!w.empty() && w.front() == '(') {
    if (w.back() != ')') throw ParseError("unterminated vector '" + s + "'");
    w = w.substr(1, w.size() - 2);
    size_t pos = 0;
    while (true) {
      out.push_back(parse_int(w, pos));
      if (pos == w.size()) break;
      if (w[pos] != ',') throw ParseError("expected ',' in vector '" + s + "'");
      ++pos;
    }
  } else if (w.size() >= 2 && (w[0] == 'e' || (w[0] == '-' && w[1] == 'e'))) {
    bool neg = w[0] == '-';
    size_t pos = neg ? 2 : 1;
    long long idx = parse_int(w, pos);
    if (pos != w.size() || idx < 1 || idx > rank)
      throw ParseError("bad unit vector '" + s + "'");
    out.assign(rank, 0);
    out[idx - 1] = neg ? -1 : 1;
    return out;
  } else if (rank == 1) {
    size_t pos = 0;
    out.push_back(parse_int(w, pos));
    if (pos != w.size()) throw ParseError("bad integer '" + s + "'");
  } else {
    throw ParseError("expected vector like (1,-2) but got '" + s + "'");
  }
  if (static_cast<int>(out.size()) != rank)
    throw ParseError("vector '" + s + "' has wrong rank");
  return out;
}

std::string render_vector(const Vec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

void append_reduced(Word& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

Word parse_free_word(const std::string& s, int rank) {
  Word w;
  if (s == "1" || s == "e" || s.empty()) return w;
  size_t pos = 0;
  while (pos < s.size()) {
    char c = s[pos];
    int letter;
    if (c >= 'a' && c < 'a' + rank)
      letter = c - 'a' + 1;
    else if (c >= 'A' && c < 'A' + rank)
      letter = -(c - 'A' + 1);
    else
      throw ParseError("bad letter '" + std::string(1, c) + "' in word '" + s + "'");
    ++pos;
    long long exp = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      exp = parse_int(s, pos);
    } else if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '-')) {
      // "a2" means a^2 in a free group
      exp = parse_int(s, pos);
    }
    if (exp < 0) {
      letter = -letter;
      exp = -exp;
    }
    for (long long k = 0; k < exp; ++k) append_reduced(w, letter);
  }
  return w;
}

std::string render_free_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int letter : w)
    out += letter > 0 ? static_cast<char>('a' + letter - 1)
                      : static_cast<char>('A' - letter - 1);
  return out;
}

// Alternating normal form: merge adjacent syllables of the same factor, drop
// identity syllables, repeat at the seam.
void append_syllable(Syllables& w, const std::vector<Table>& factors, int f, int x) {
  if (x == factors[f].e) return;
  while (!w.empty() && w.back().first == f) {
    x = factors[f].at(w.back().second, x);
    w.pop_back();
    if (x == factors[f].e) return;
  }
  w.emplace_back(f, x);
}

Syllables parse_product_word(const std::string& s, const std::vector<Table>& factors) {
  Syllables w;
  if (s == "1" || s == "e" || s.empty()) return w;
  int k = static_cast<int>(factors.size());
  size_t pos = 0;
  while (pos < s.size()) {
    char c = s[pos];
    bool inverse = false;
    int f;
    if (c >= 'a' && c < 'a' + k)
      f = c - 'a';
    else if (c >= 'A' && c < 'A' + k) {
      f = c - 'A';
      inverse = true;
    } else {
      throw ParseError("bad factor letter '" + std::string(1, c) + "' in '" + s + "'");
    }
    ++pos;
    int x;
    if (pos < s.size() && s[pos] == '^') {
      // power of the factor's element 1
      ++pos;
      long long exp = parse_int(s, pos);
      if (factors[f].n < 2) throw ParseError("factor has no non-identity element");
      int base = exp < 0 ? factors[f].inv[1] : 1;
      x = factors[f].e;
      for (long long i = 0, a = exp < 0 ? -exp : exp; i < a; ++i)
        x = factors[f].at(x, base);
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      // explicit element index
      long long idx = parse_int(s, pos);
      if (idx < 0 || idx >= factors[f].n)
        throw ParseError("element index out of range in '" + s + "'");
      x = static_cast<int>(idx);
    } else {
      if (factors[f].n < 2) throw ParseError("factor has no non-identity element");
      x = 1;
    }
    if (inverse) x = factors[f].inv[x];
    append_syllable(w, factors, f, x);
  }
  return w;
}

std::string render_product_word(const Syllables& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto [f, x] : w) {
    out += static_cast<char>('a' + f);
    out += std::to_string(x);
  }
  return out;
}

}  // namespace

// ---- GroupModel -------------------------------------------------------------

struct GroupModel::Impl {
  Table table;                 // FiniteTable
  int rank = 0;                // FreeAbelian / Free
  std::vector<Table> factors;  // FreeProduct
  std::vector<std::string> default_keys;
  std::string descr;
};

GroupModel::GroupModel() : impl_(new Impl), kind_(Kind::FiniteTable), id_(g_next_model_id++) {}
GroupModel::~GroupModel() = default;

std::shared_ptr<const GroupModel> GroupModel::finite_table(
    std::vector<std::vector<int>> table) {
  auto m = std::shared_ptr<GroupModel>(new GroupModel());
  m->kind_ = Kind::FiniteTable;
  m->impl_->table = validate_table(table);
  for (int x = 0; x < m->impl_->table.n; ++x)
    if (x != m->impl_->table.e) m->impl_->default_keys.push_back(std::to_string(x));
  m->impl_->descr = "table:" + std::to_string(m->impl_->table.n);
  return m;
}

std::shared_ptr<const GroupModel> GroupModel::cyclic(int n) {
  auto m = std::shared_ptr<GroupModel>(new GroupModel());
  m->kind_ = Kind::FiniteTable;
  m->impl_->table = cyclic_table(n);
  if (n > 1) m->impl_->default_keys.push_back("1");
  m->impl_->descr = "cyclic:" + std::to_string(n);
  return m;
}

std::shared_ptr<const GroupModel> GroupModel::free_abelian(int rank) {
  if (rank < 1) throw ParseError("free abelian rank must be positive");
  auto m = std::shared_ptr<GroupModel>(new GroupModel());
  m->kind_ = Kind::FreeAbelian;
  m->impl_->rank = rank;
  for (int i = 1; i <= rank; ++i) m->impl_->default_keys.push_back("e" + std::to_string(i));
  m->impl_->descr = "z^" + std::to_string(rank);
  return m;
}

std::shared_ptr<const GroupModel> GroupModel::free_group(int rank) {
  if (rank < 1 || rank > 26) throw ParseError("free rank must be in 1..26");
  auto m = std::shared_ptr<GroupModel>(new GroupModel());
  m->kind_ = Kind::Free;
  m->impl_->rank = rank;
  for (int i = 0; i < rank; ++i)
    m->impl_->default_keys.push_back(std::string(1, static_cast<char>('a' + i)));
  m->impl_->descr = "free:" + std::to_string(rank);
  return m;
}

std::shared_ptr<const GroupModel> GroupModel::free_product(
    std::vector<std::vector<std::vector<int>>> factor_tables) {
  if (factor_tables.size() < 2) throw ParseError("free product needs at least 2 factors");
  if (factor_tables.size() > 26) throw ParseError("free products are capped at 26 factors");
  auto m = std::shared_ptr<GroupModel>(new GroupModel());
  m->kind_ = Kind::FreeProduct;
  std::string descr = "freeprod(";
  for (size_t f = 0; f < factor_tables.size(); ++f) {
    Table t = validate_table(factor_tables[f]);
    if (t.n < 2) throw ParseError("free product factors must be nontrivial");
    for (int x = 0; x < t.n; ++x)
      if (x != t.e)
        m->impl_->default_keys.push_back(std::string(1, static_cast<char>('a' + f)) +
                                         std::to_string(x));
    if (f) descr += ',';
    descr += std::to_string(t.n);
    m->impl_->factors.push_back(std::move(t));
  }
  m->impl_->descr = descr + ")";
  return m;
}

std::optional<std::int64_t> GroupModel::order() const {
  if (kind_ == Kind::FiniteTable) return impl_->table.n;
  return std::nullopt;
}

std::string GroupModel::describe() const { return impl_->descr; }

Element GroupModel::identity() const {
  switch (kind_) {
    case Kind::FiniteTable:
      return {std::to_string(impl_->table.e), id_};
    case Kind::FreeAbelian:
      return {render_vector(Vec(impl_->rank, 0)), id_};
    default:
      return {"1", id_};
  }
}

Element GroupModel::element(const std::string& key) const { return parse_word(key); }

Element GroupModel::parse_word(const std::string& word) const {
  switch (kind_) {
    case Kind::FiniteTable: {
      if (word == "e") return identity();
      size_t pos = 0;
      long long idx = parse_int(word, pos);
      if (pos != word.size() || idx < 0 || idx >= impl_->table.n)
        throw ParseError("element index '" + word + "' out of range");
      return {std::to_string(idx), id_};
    }
    case Kind::FreeAbelian:
      return {render_vector(parse_vector(word, impl_->rank)), id_};
    case Kind::Free:
      return {render_free_word(parse_free_word(word, impl_->rank)), id_};
    case Kind::FreeProduct:
      return {render_product_word(parse_product_word(word, impl_->factors)), id_};
  }
  throw Error("unreachable");
}

Element GroupModel::mul(const Element& a, const Element& b) const {
  switch (kind_) {
    case Kind::FiniteTable: {
      int x = std::stoi(a.key), y = std::stoi(b.key);
      return {std::to_string(impl_->table.at(x, y)), id_};
    }
    case Kind::FreeAbelian: {
      Vec va = parse_vector(a.key, impl_->rank), vb = parse_vector(b.key, impl_->rank);
      for (int i = 0; i < impl_->rank; ++i) va[i] += vb[i];
      return {render_vector(va), id_};
    }
    case Kind::Free: {
      Word wa = parse_free_word(a.key, impl_->rank);
      for (int letter : parse_free_word(b.key, impl_->rank)) append_reduced(wa, letter);
      return {render_free_word(wa), id_};
    }
    case Kind::FreeProduct: {
      Syllables wa = parse_product_word(a.key, impl_->factors);
      for (auto [f, x] : parse_product_word(b.key, impl_->factors))
        append_syllable(wa, impl_->factors, f, x);
      return {render_product_word(wa), id_};
    }
  }
  throw Error("unreachable");
}

Element GroupModel::inv(const Element& a) const {
  switch (kind_) {
    case Kind::FiniteTable:
      return {std::to_string(impl_->table.inv[std::stoi(a.key)]), id_};
    case Kind::FreeAbelian: {
      Vec v = parse_vector(a.key, impl_->rank);
      for (auto& c : v) c = -c;
      return {render_vector(v), id_};
    }
    case Kind::Free: {
      Word w = parse_free_word(a.key, impl_->rank);
      Word out;
      for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
      return {render_free_word(out), id_};
    }
    case Kind::FreeProduct: {
      Syllables w = parse_product_word(a.key, impl_->factors);
      Syllables out;
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.emplace_back(it->first, impl_->factors[it->first].inv[it->second]);
      return {render_product_word(out), id_};
    }
  }
  throw Error("unreachable");
}

std::vector<Element> GroupModel::default_generators() const {
  std::vector<Element> out;
  for (const auto& key : impl_->default_keys) out.push_back(parse_word(key));
  return out;
}

Element mul(const GroupModel& model, const Element& a, const Element& b) {
  if (a.model_id != model.id() || b.model_id != model.id())
    throw ModelMismatchError("element does not belong to model " + model.describe());
  return model.mul(a, b);
}

Element inv(const GroupModel& model, const Element& a) {
  if (a.model_id != model.id())
    throw ModelMismatchError("element does not belong to model " + model.describe());
  return model.inv(a);
}

// ---- generating sets --------------------------------------------------------

bool GenSet::contains(const GroupModel&, const Element& e) const {
  return std::binary_search(
      elements.begin(), elements.end(), e,
      [](const Element& a, const Element& b) { return a.key < b.key; });
}

GenSet gen_set_from_elements(const GroupModel& model, std::vector<Element> elements,
                             std::vector<std::string> source_words) {
  const std::string id_key = model.identity().key;
  std::vector<Element> all;
  for (const auto& e : elements) {
    if (e.model_id != model.id())
      throw ModelMismatchError("generator does not belong to model " + model.describe());
    if (e.key == id_key) continue;
    all.push_back(e);
    all.push_back(model.inv(e));
  }
  std::sort(all.begin(), all.end(),
            [](const Element& a, const Element& b) { return a.key < b.key; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  GenSet out;
  out.elements = std::move(all);
  out.source_words = std::move(source_words);
  return out;
}

GenSet make_gen_set(const GroupModel& model, const std::vector<std::string>& words) {
  std::vector<Element> elements;
  for (const auto& w : words) elements.push_back(model.parse_word(w));
  return gen_set_from_elements(model, std::move(elements), words);
}

GenSet power_union(const GroupModel& model, const GenSet& s, int k) {
  if (k < 1) throw ParseError("power_union exponent must be >= 1");
  for (const auto& e : s.elements)
    if (e.model_id != model.id())
      throw ModelMismatchError("generating set does not belong to model");
  const std::string id_key = model.identity().key;
  std::vector<Element> acc;
  std::map<std::string, Element> level;
  level.emplace(id_key, model.identity());
  for (int step = 0; step < k; ++step) {
    std::map<std::string, Element> next;
    for (const auto& [key, g] : level)
      for (const auto& gen : s.elements) {
        Element p = model.mul(g, gen);
        next.emplace(p.key, p);
      }
    for (const auto& [key, g] : next)
      if (key != id_key) acc.push_back(g);
    level = std::move(next);
  }
  return gen_set_from_elements(model, std::move(acc), s.source_words);
}

GeneratesVerdict generates_check(const GroupModel& model, const GenSet& s, int radius) {
  if (radius < 1) throw ParseError("generates_check radius must be >= 1");
  if (s.elements.empty()) return GeneratesVerdict::Unknown;
  std::unordered_set<std::string> seen;
  std::deque<Element> queue;
  Element e = model.identity();
  seen.insert(e.key);
  queue.push_back(e);
  if (model.kind() == GroupModel::Kind::FiniteTable) {
    while (!queue.empty()) {
      Element g = queue.front();
      queue.pop_front();
      for (const auto& gen : s.elements) {
        Element h = model.mul(g, gen);
        if (seen.insert(h.key).second) queue.push_back(h);
      }
    }
    return static_cast<std::int64_t>(seen.size()) == *model.order()
               ? GeneratesVerdict::Generates
               : GeneratesVerdict::Unknown;
  }
  std::set<std::string> wanted;
  for (const auto& d : model.default_generators()) wanted.insert(d.key);
  wanted.erase(model.identity().key);
  int depth = 0;
  while (depth < radius && !wanted.empty()) {
    ++depth;
    std::deque<Element> next;
    while (!queue.empty()) {
      Element g = queue.front();
      queue.pop_front();
      for (const auto& gen : s.elements) {
        Element h = model.mul(g, gen);
        if (seen.insert(h.key).second) {
          wanted.erase(h.key);
          next.push_back(h);
        }
      }
    }
    queue = std::move(next);
  }
  return wanted.empty() ? GeneratesVerdict::GeneratesAtLeastDefaults
                        : GeneratesVerdict::Unknown;
}

const char* to_string(GeneratesVerdict v) {
  switch (v) {
    case GeneratesVerdict::Generates:
      return "generates";
    case GeneratesVerdict::GeneratesAtLeastDefaults:
      return "generates-at-least-defaults";
    default:
      return "unknown";
  }
}

}  // namespace caymin
