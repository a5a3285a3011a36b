#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mutdense/source_model.hpp"

namespace mutdense {

enum class Family { Traditional, NullType };

inline constexpr Family kAllFamilies[] = {Family::Traditional,
                                          Family::NullType};

// JSON spelling: "traditional" / "nullType".
std::string_view to_string(Family family);

struct MutationOperator {
  std::string id;
  Family family;
  std::string description;
};

// The full catalog, traditional operators first.
const std::vector<MutationOperator>& operator_catalog();

std::vector<MutationOperator> list_operators(Family family);

const MutationOperator* find_operator(std::string_view id);

struct Mutant {
  std::string operator_id;
  Family family = Family::Traditional;
  std::string unit_path;
  int line = 0;
  int column = 0;
  ByteRange bytes;
  std::string original;
  std::string replacement;
  // Set for insertion-style mutants (NIV): `replacement` followed by ';' is
  // inserted at this byte offset instead of overwriting `bytes`.
  std::optional<std::size_t> insertion_offset;

  friend bool operator==(const Mutant&, const Mutant&) = default;
};

// The enabled fault model. Enabled ids must belong to the chosen families.
class OperatorSet {
 public:
  // Every operator in both families.
  OperatorSet();
  // Throws std::invalid_argument when `families` is empty or an id is
  // unknown or outside the families.
  explicit OperatorSet(std::set<Family> families,
                       std::optional<std::set<std::string>> enabled_ids = {});

  const std::set<Family>& families() const { return families_; }
  const std::set<std::string>& enabled_ids() const { return enabled_ids_; }
  bool enables(std::string_view id) const;

  std::vector<MutationOperator> operators() const;

 private:
  std::set<Family> families_;
  std::set<std::string> enabled_ids_;
};

std::vector<Mutant> find_mutation_sites(const SourceUnit& unit,
                                        const std::vector<BodySpan>& spans,
                                        const OperatorSet& set);

// Throws SourceError(SiteMismatch) when the mutant does not match the text.
std::string apply_mutant(const SourceUnit& unit, const Mutant& mutant);

}  // namespace mutdense
