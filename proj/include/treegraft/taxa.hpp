#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treegraft {

using TaxonId = std::uint32_t;
inline constexpr TaxonId kNoTaxon = 0xffffffffu;

// Accepted leaf labels: nonempty runs of [A-Za-z0-9_.-].
bool valid_taxon_label(std::string_view text);

// Interns leaf labels to dense integer ids. All trees that take part in one
// comparison or refinement share a single table, so leaf sets and clusters
// can be handled as plain id sets.
class TaxonTable {
 public:
  // Returns the id for `label`, adding it if unseen.
  TaxonId intern(std::string_view label);

  // Returns the id for `label` or kNoTaxon if it was never interned.
  TaxonId find(std::string_view label) const;

  const std::string& label(TaxonId id) const { return labels_[id]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(labels_.size()); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, TaxonId> index_;
};

}  // namespace treegraft
