#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace caymin {

// A group element in canonical form. Two elements of the same model are equal
// iff their keys are identical. Canonical keys:
//   finite table   decimal index into the table, e.g. "3"
//   free abelian   integer vector, e.g. "(1,-2)"; identity "(0,0)"
//   free           freely reduced word, lowercase generators a..z and
//                  uppercase inverses, e.g. "abA"; identity "1"
//   free product   alternating syllables "<factor letter><element index>",
//                  e.g. "a1b1a1"; identity "1"
struct Element {
  std::string key;
  int model_id = -1;

  friend bool operator==(const Element& a, const Element& b) {
    return a.model_id == b.model_id && a.key == b.key;
  }
  friend bool operator<(const Element& a, const Element& b) {
    if (a.model_id != b.model_id) return a.model_id < b.model_id;
    return a.key < b.key;
  }
};

// A group with a solvable word problem. Immutable after construction; all
// operations are pure and safe to call concurrently.
class GroupModel {
 public:
  enum class Kind { FiniteTable, FreeAbelian, Free, FreeProduct };

  static std::shared_ptr<const GroupModel> finite_table(
      std::vector<std::vector<int>> table);
  static std::shared_ptr<const GroupModel> cyclic(int n);
  static std::shared_ptr<const GroupModel> free_abelian(int rank);
  static std::shared_ptr<const GroupModel> free_group(int rank);
  // Factors are finite multiplication tables (each validated like
  // finite_table). Factor k is written with the letter 'a' + k.
  static std::shared_ptr<const GroupModel> free_product(
      std::vector<std::vector<std::vector<int>>> factor_tables);

  Kind kind() const { return kind_; }
  int id() const { return id_; }
  // Group order for finite-table models, nullopt otherwise.
  std::optional<std::int64_t> order() const;
  std::string describe() const;

  Element identity() const;
  Element element(const std::string& canonical_key) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;

  // Parses a user-supplied expression over the default generators:
  //   finite table   an element index, e.g. "3"
  //   free abelian   "(1,-2)", unit shorthands "e1" / "-e2", or a bare
  //                  integer for rank 1
  //   free           words like "ab^-2C" (uppercase = inverse)
  //   free product   words like "ab^2a"; the letter of factor k raised to
  //                  power p means the p-th table power of that factor's
  //                  element 1
  Element parse_word(const std::string& word) const;

  std::vector<Element> default_generators() const;

  // Model internals, used by parse/canonicalize helpers.
  ~GroupModel();

 private:
  GroupModel();
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Kind kind_;
  int id_;

  friend struct GroupModelAccess;
};

// Checked wrappers enforcing element ownership.
Element mul(const GroupModel& model, const Element& a, const Element& b);
Element inv(const GroupModel& model, const Element& a);

// A symmetrized generating set: closed under inversion, identity excluded,
// deduplicated, sorted by canonical key.
struct GenSet {
  std::vector<Element> elements;
  std::vector<std::string> source_words;

  bool contains(const GroupModel& model, const Element& e) const;
};

GenSet make_gen_set(const GroupModel& model,
                    const std::vector<std::string>& words);
GenSet gen_set_from_elements(const GroupModel& model,
                             std::vector<Element> elements,
                             std::vector<std::string> source_words = {});

// The set (S u S^2 u ... u S^k) minus the identity, symmetrized and
// deduplicated.
GenSet power_union(const GroupModel& model, const GenSet& s, int k);

enum class GeneratesVerdict { Generates, GeneratesAtLeastDefaults, Unknown };

// Finite-table models: Generates iff BFS closure over S reaches the whole
// group. Infinite models: GeneratesAtLeastDefaults iff every default
// generator is an S-word of length <= radius, else Unknown.
GeneratesVerdict generates_check(const GroupModel& model, const GenSet& s,
                                 int radius);

const char* to_string(GeneratesVerdict v);

}  // namespace caymin
